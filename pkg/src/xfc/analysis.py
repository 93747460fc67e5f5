"""Per-matrix t-set quantities and the inequality audit.

Given a matrix and parameters (t, ell, lam), this module tabulates which
t-sets appear as sum-t columns, how many sum-(t+1) columns sit over each
t-set, and the derived "typical" t-sets, then audits every counting
inequality and identity the quantities are expected to satisfy.  Audits
never reject their input: a matrix violating the standing hypotheses
(column sums within {t..m-ell}, sum-t columns unrepeated) gets a failed
verdict with a witness instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from .bounds import pigeonhole_terms
from .matrix import BinMatrix, mask_of, rows_of


def tsets_colex(m: int, t: int):
    """All t-subsets of [m] in colexicographic order."""
    return sorted(combinations(range(1, m + 1), t), key=lambda s: tuple(reversed(s)))


@dataclass(frozen=True)
class TsetTable:
    m: int
    t: int
    lam: int
    mu: dict[tuple[int, ...], int]
    d: dict[tuple[int, ...], int]

    def is_missing(self, s) -> bool:
        return self.mu[tuple(sorted(s))] == 0

    def is_typical(self, s) -> bool:
        s = tuple(sorted(s))
        return self.mu[s] == 1 and self.d[s] == self.lam

    def missing_tsets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(s for s in tsets_colex(self.m, self.t) if self.mu[s] == 0)

    def typical_tsets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(s for s in tsets_colex(self.m, self.t) if self.is_typical(s))


def tset_table(A: BinMatrix, t: int, lam: int) -> TsetTable:
    """Tabulate, for every t-set S: whether S appears as a sum-t column
    (mu) and how many sum-(t+1) columns contain S, multiplicity counted
    (d)."""
    if not 0 <= t <= A.m:
        raise ValueError(f"t={t} outside 0..{A.m}")
    mu = {s: 0 for s in combinations(range(1, A.m + 1), t)}
    d = {s: 0 for s in mu}
    for c in A.cols:
        k = c.bit_count()
        if k == t:
            mu[rows_of(c)] = 1
        elif k == t + 1:
            for s in combinations(rows_of(c), t):
                d[s] += 1
    return TsetTable(A.m, t, lam, mu, d)


@dataclass(frozen=True)
class AuditCheck:
    name: str
    passed: bool
    witness: dict | None = None
    detail: str = ""


@dataclass(frozen=True)
class AnalysisReport:
    m: int
    t: int
    ell: int
    lam: int
    profile: tuple[int, int, int]
    n_missing: int
    n_typical: int
    checks: tuple[AuditCheck, ...]
    per_row_counts: dict[int, int]
    row_set: dict | None = None
    ratios: dict[str, float] = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> AuditCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _per_row_counts(A: BinMatrix, t: int) -> dict[int, int]:
    """a^r: sum-(t+1) columns having a 1 in row r, for every row."""
    out = {r: 0 for r in range(1, A.m + 1)}
    for c in A.cols:
        if c.bit_count() == t + 1:
            for r in rows_of(c):
                out[r] += 1
    return out


def w_z_sets(A: BinMatrix, t: int, lam: int, rows_r) -> tuple[tuple, tuple]:
    """Split the typical t-sets by the sum-(t+1) columns meeting a row set.

    First element: t-sets S with some x such that S + x is a sum-(t+1)
    column carrying a 1 somewhere in rows_r.  Second: typical t-sets not
    of that kind.  Both in colexicographic order.
    """
    rows_r = sorted(set(rows_r))
    if any(r < 1 or r > A.m for r in rows_r):
        raise ValueError(f"rows outside 1..{A.m}")
    rmask = mask_of(rows_r)
    touched: set[tuple[int, ...]] = set()
    for c in A.cols:
        if c.bit_count() == t + 1 and c & rmask:
            touched.update(combinations(rows_of(c), t))
    table = tset_table(A, t, lam)
    w = tuple(s for s in tsets_colex(A.m, t) if s in touched)
    z = tuple(s for s in tsets_colex(A.m, t) if table.is_typical(s) and s not in touched)
    return w, z


def lemma_audit(A: BinMatrix, t: int, ell: int, lam: int, rows_r=None) -> AnalysisReport:
    """Audit every counting inequality/identity on a concrete matrix.

    Checks (each with a concrete witness on failure):
      column_sum_band     all column sums within {t .. m-ell}
      low_sum_unrepeated  sum-t columns pairwise distinct
      degree_cap          d(S) + mu(S) <= lam+1 for every t-set S
      support_pigeonhole  weighted profile count within capacity
      tset_partition      a_t = C(m,t) - #missing t-sets
      incidence_sum       sum of d(S) = (t+1) * a_{t+1}
      per_row_cap         a^r <= (lam+1)/t * C(m-1, t-1) for every row
      zero_count_floor    every column has at least lam+ell zeros
      row_set_cap         (only with rows_r) a^R <= |R| * per-row cap
    """
    if not 1 <= t <= A.m:
        raise ValueError(f"t={t} outside 1..{A.m}")
    prof = A.column_profile(t)
    table = tset_table(A, t, lam)
    per_row = _per_row_counts(A, t)
    checks: list[AuditCheck] = []

    bad = next(
        (j for j, c in enumerate(A.cols) if not t <= c.bit_count() <= A.m - ell), None
    )
    checks.append(
        AuditCheck(
            "column_sum_band",
            bad is None,
            None if bad is None else {"column_index": bad, "sum": A.cols[bad].bit_count()},
            f"column sums within {{{t}..{A.m - ell}}}",
        )
    )

    seen: dict[int, int] = {}
    repeat = None
    for j, c in enumerate(A.cols):
        if c.bit_count() == t:
            if c in seen:
                repeat = {"column_index": j, "first_index": seen[c], "rows": rows_of(c)}
                break
            seen[c] = j
    checks.append(AuditCheck("low_sum_unrepeated", repeat is None, repeat, "sum-t columns distinct"))

    viol = next(
        (s for s in tsets_colex(A.m, t) if table.d[s] + table.mu[s] > lam + 1), None
    )
    checks.append(
        AuditCheck(
            "degree_cap",
            viol is None,
            None if viol is None else {"tset": viol, "d": table.d[viol], "mu": table.mu[viol]},
            f"d(S) + mu(S) <= {lam + 1}",
        )
    )

    ph = pigeonhole_terms(t, ell, lam, A.m, (prof.a_t, prof.a_t1, prof.a_higher))
    checks.append(
        AuditCheck(
            "support_pigeonhole",
            ph.holds,
            None if ph.holds else {"lhs": ph.lhs, "rhs": ph.rhs},
            f"weighted profile {ph.lhs} <= capacity {ph.rhs}",
        )
    )

    n_missing = sum(1 for s in table.mu.values() if s == 0)
    part_ok = prof.a_t == comb(A.m, t) - n_missing
    checks.append(
        AuditCheck(
            "tset_partition",
            part_ok,
            None if part_ok else {"a_t": prof.a_t, "missing": n_missing, "total": comb(A.m, t)},
            "a_t = C(m,t) - #missing",
        )
    )

    dsum = sum(table.d.values())
    inc_ok = dsum == (t + 1) * prof.a_t1
    checks.append(
        AuditCheck(
            "incidence_sum",
            inc_ok,
            None if inc_ok else {"sum_d": dsum, "a_t1": prof.a_t1},
            "sum d(S) = (t+1) a_{t+1}",
        )
    )

    row_cap = Fraction(lam + 1, t) * comb(A.m - 1, t - 1)
    bad_row = next((r for r in per_row if per_row[r] > row_cap), None)
    checks.append(
        AuditCheck(
            "per_row_cap",
            bad_row is None,
            None
            if bad_row is None
            else {"row": bad_row, "count": per_row[bad_row], "cap": f"{row_cap}"},
            f"per-row sum-(t+1) count <= {row_cap}",
        )
    )

    need_zeros = lam + ell
    bad = next((j for j, c in enumerate(A.cols) if A.m - c.bit_count() < need_zeros), None)
    checks.append(
        AuditCheck(
            "zero_count_floor",
            bad is None,
            None
            if bad is None
            else {"column_index": bad, "zeros": A.m - A.cols[bad].bit_count(), "need": need_zeros},
            f"every column has >= {need_zeros} zeros",
        )
    )

    row_set = None
    if rows_r is not None:
        rows_r = sorted(set(rows_r))
        rmask = mask_of(rows_r)
        a_r = sum(1 for c in A.cols if c.bit_count() == t + 1 and c & rmask)
        cap = len(rows_r) * row_cap
        w, z = w_z_sets(A, t, lam, rows_r)
        note = ""
        if len(rows_r) >= lam + ell:
            note = f"|R| = {len(rows_r)} >= lam + ell = {lam + ell}: outside the intended regime"
        row_set = {
            "rows": tuple(rows_r),
            "count": a_r,
            "w_size": len(w),
            "z_size": len(z),
            "note": note,
        }
        checks.append(
            AuditCheck(
                "row_set_cap",
                a_r <= cap,
                None if a_r <= cap else {"rows": tuple(rows_r), "count": a_r, "cap": f"{cap}"},
                f"sum-(t+1) columns meeting R <= {cap}",
            )
        )

    n_typical = sum(1 for s in table.mu if table.is_typical(s))
    scale = float(A.m ** (t - 1))
    ratios = {
        "missing_over_m_pow": n_missing / scale,
        "higher_over_m_pow": prof.a_higher / scale,
        "typical_deficit_over_m_pow": (comb(A.m, t) - n_typical) / scale,
    }
    return AnalysisReport(
        m=A.m,
        t=t,
        ell=ell,
        lam=lam,
        profile=(prof.a_t, prof.a_t1, prof.a_higher),
        n_missing=n_missing,
        n_typical=n_typical,
        checks=tuple(checks),
        per_row_counts=per_row,
        row_set=row_set,
        ratios=ratios,
    )


def typical_clique(A: BinMatrix, t: int, lam: int, k: int):
    """Lexicographically least k-subset B of [m] all of whose t-subsets are
    typical, or None.

    Exact search: rows whose typical-degree cannot support membership are
    peeled off first, then a lexicographic depth-first extension checks
    only the t-subsets completed by each new row.
    """
    if k > A.m:
        raise ValueError(f"k={k} exceeds row count {A.m}")
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k < t:
        return tuple(range(1, k + 1))  # no t-subsets to satisfy
    table = tset_table(A, t, lam)
    typical = {s for s in table.mu if table.is_typical(s)}
    if t == 0:
        return tuple(range(1, k + 1)) if () in typical else None

    # peel rows that cannot lie in any solution: each member of B needs
    # C(k-1, t-1) typical t-sets through it within B
    alive = set(range(1, A.m + 1))
    need = comb(k - 1, t - 1)
    changed = True
    while changed:
        changed = False
        deg = {r: 0 for r in alive}
        for s in typical:
            if all(p in alive for p in s):
                for p in s:
                    deg[p] += 1
        drop = {r for r in alive if deg[r] < need}
        if drop:
            alive -= drop
            changed = True
    rows = sorted(alive)
    if len(rows) < k:
        return None

    chosen: list[int] = []

    def extend(i: int) -> bool:
        if len(chosen) == k:
            return True
        for j in range(i, len(rows)):
            if len(rows) - j < k - len(chosen):
                return False
            r = rows[j]
            if all(
                tuple(sorted(sub + (r,))) in typical
                for sub in combinations(chosen, t - 1)
            ):
                chosen.append(r)
                if extend(j + 1):
                    return True
                chosen.pop()
        return False

    return tuple(chosen) if extend(0) else None
