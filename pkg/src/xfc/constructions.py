"""Generators for the explicit extremal matrix constructions.

Every generator is fail-closed: before returning, it re-checks its own
claims (column count against the exact bound, pattern avoidance via the
containment decision procedure, simplicity where claimed) and raises
ConstructionError if any claim does not hold for the requested
parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .bounds import bound_1100, exceeder_gap, genl_bound, q10_lower, q10_upper
from .designs import Design, lambda_fold, sts, verify_design
from .matrix import BinMatrix, Block, contains_config, mask_of


class ConstructionError(ValueError):
    """A construction's own size/avoidance claim failed for the requested
    parameters."""


@dataclass(frozen=True)
class LayerSpec:
    m: int
    sums: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "sums", frozenset(self.sums))
        if any(s < 0 or s > self.m for s in self.sums):
            raise ValueError(f"sums must lie in 0..{self.m}")


def complete_layer(m: int, s: int) -> BinMatrix:
    """All C(m, s) distinct columns of sum s, in lexicographic order of
    their 1-position sets."""
    if not 0 <= s <= m:
        raise ValueError(f"sum {s} outside 0..{m}")
    return BinMatrix(m, tuple(mask_of(c) for c in combinations(range(1, m + 1), s)))


def layer_range(spec: LayerSpec) -> BinMatrix:
    """Concatenation of complete layers over the given sums, ascending."""
    out = BinMatrix(spec.m)
    for s in sorted(spec.sums):
        out = out.concat(complete_layer(spec.m, s))
    return out


def _check_avoids(A: BinMatrix, forbidden: Block, what: str) -> None:
    if contains_config(forbidden, A):
        raise ConstructionError(
            f"{what}: built matrix contains the forbidden "
            f"{forbidden.q} x (ones={forbidden.t}, zeros={forbidden.ell}) block"
        )


def genl_equality_construction(t: int, ell: int, lam: int, m: int, design: Design) -> BinMatrix:
    """All columns of sums 0..t and m-ell+1..m once each, plus the
    incidence of a t-(m, t+1, lam) design.  Hits the genl bound exactly
    and avoids lam+2 copies of the t-ones/ell-zeros column."""
    if not t > ell >= 0:
        raise ValueError("need t > ell >= 0")
    if (design.m, design.k, design.t, design.lam) != (m, t + 1, t, lam):
        raise ConstructionError(
            f"design parameters {(design.m, design.k, design.t, design.lam)} "
            f"do not match required ({m}, {t + 1}, {t}, {lam})"
        )
    check = verify_design(design.blocks, m, t + 1, t, lam)
    if not check.ok:
        raise ConstructionError(f"design failed verification, witness {check.witness}")
    A = layer_range(LayerSpec(m, frozenset(range(t + 1))))
    A = A.concat(design.incidence())
    A = A.concat(layer_range(LayerSpec(m, frozenset(range(m - ell + 1, m + 1)))))
    want = genl_bound(t, ell, lam, m).exact
    if A.ncols != want:
        raise ConstructionError(f"column count {A.ncols} != bound {want}")
    _check_avoids(A, Block(lam + 2, t, ell), "genl equality construction")
    return A


def exceeder_construction(t: int, ell: int, lam: int) -> BinMatrix:
    """On m = lam+t+ell rows: all columns of sums 0..t+1 and m-ell+1..m.

    Avoids lam+2 copies of the t-ones/ell-zeros column yet exceeds the
    genl bound by exceeder_gap(t, ell, lam); only possible because m is
    small."""
    if not t > ell >= 1:
        raise ValueError("need t > ell >= 1")
    if lam < 1:
        raise ValueError("need lam >= 1")
    m = lam + t + ell
    A = layer_range(LayerSpec(m, frozenset(range(t + 2)) | frozenset(range(m - ell + 1, m + 1))))
    gap = A.ncols - genl_bound(t, ell, lam, m).exact
    want = exceeder_gap(t, ell, lam).exact
    if gap != want:
        raise ConstructionError(f"gap {gap} != stated {want}")
    _check_avoids(A, Block(lam + 2, t, ell), "exceeder construction")
    return A


def _near_regular_edges(m: int, d: int) -> list[tuple[int, int]]:
    """Edge list of a d-regular graph on vertices 1..m, or, when m*d is
    odd, one with a single vertex of degree d-1.

    Circulant with differences 1..d//2; odd d adds the m/2 chord (m even)
    or a matching leaving the last vertex short (m odd).
    """
    if d < 0 or d > m - 1:
        raise ConstructionError(f"no graph on {m} vertices with degree {d}")
    edges: set[tuple[int, int]] = set()

    def add(u: int, v: int) -> None:
        edges.add((min(u, v), max(u, v)))

    for delta in range(1, d // 2 + 1):
        for v in range(m):
            add(v + 1, (v + delta) % m + 1)
    if d % 2 == 1:
        if m % 2 == 0:
            for v in range(m // 2):
                add(v + 1, v + m // 2 + 1)
        else:
            # pair j with j + (m-1)/2 over 1..m-1; vertex m keeps degree d-1
            half = (m - 1) // 2
            if half <= d // 2:
                raise ConstructionError(f"no near-regular realization for m={m}, d={d}")
            for j in range(half):
                add(j + 1, j + half + 1)
    degs = [0] * (m + 1)
    for u, v in edges:
        degs[u] += 1
        degs[v] += 1
    short = [v for v in range(1, m + 1) if degs[v] != d]
    if m * d % 2 == 0:
        assert not short, f"degree sequence broken: {degs[1:]}"
    else:
        assert short == [m] and degs[m] == d - 1, f"degree sequence broken: {degs[1:]}"
    return sorted(edges)


def q10_construction(q: int, m: int) -> BinMatrix:
    """[zero column | singletons | graph edge incidence | co-singletons |
    ones column] avoiding q copies of the one-1-over-one-0 column.

    The graph is (q-3)-regular when m(q-3) is even, else near-regular with
    one vertex of degree q-4.  Exactly floor((q+1)m/2) + 2 columns.  At
    m = 2, and at m = 3 with a nonempty graph, the layer sums collide, so
    the simplicity claim is unsatisfiable and the builder raises.
    """
    if q < 3:
        raise ValueError("need q >= 3")
    if m < q - 2:
        raise ValueError(f"need m >= q - 2 = {q - 2} for degree q - 3")
    edges = _near_regular_edges(m, q - 3)
    H = BinMatrix(m, tuple(mask_of(e) for e in edges))
    A = complete_layer(m, 0).concat(complete_layer(m, 1)).concat(H)
    A = A.concat(complete_layer(m, m - 1)).concat(complete_layer(m, m))
    try:
        want = q10_lower(q, m).floor_int
    except ValueError as e:
        raise ConstructionError(f"count bound undefined at m={m}: {e}") from None
    if A.ncols != want:
        raise ConstructionError(f"column count {A.ncols} != bound {want}")
    if not A.is_simple():
        raise ConstructionError(
            f"q10 construction is not simple at (q={q}, m={m}): layer sums collide for m <= 3"
        )
    _check_avoids(A, Block(q, 1, 1), "q10 construction")
    return A


def small_m_pigeonhole_witness(q: int) -> BinMatrix:
    """On m = q-1 rows, the concatenation of the sum-0,1,2 layers with the
    co-singleton and ones layers; meets the q10 pigeonhole upper bound at
    m = q-1 exactly (as a column multiset) and avoids q copies of the
    one-1-over-one-0 column.

    For q = 3 the upper bound is undefined at m = 2 (its slack term
    divides by m - 2) and the multiset has 7 columns, so the size claim
    cannot be checked and this raises.
    """
    if q < 3:
        raise ValueError("need q >= 3")
    m = q - 1
    try:
        want = q10_upper(q, m).floor_int
    except ValueError as e:
        raise ConstructionError(f"pigeonhole upper bound undefined at m={m}: {e}") from None
    A = complete_layer(m, 0).concat(complete_layer(m, 1)).concat(complete_layer(m, 2))
    A = A.concat(complete_layer(m, m - 1)).concat(complete_layer(m, m))
    if A.ncols != want:
        raise ConstructionError(f"column count {A.ncols} != upper bound {want}")
    _check_avoids(A, Block(q, 1, 1), "small-m pigeonhole witness")
    return A


def split_1100_construction(m: int, a: int, b: int) -> BinMatrix:
    """All columns of sums 0, 1, 2, m-2, m-1, m once each; sum-3 columns
    the blocks of a 2-(m, 3, a) design; sum-(m-3) columns the complements
    of the blocks of a 2-(m, 3, b) design.

    Avoids a+b+3 copies of the two-ones-over-two-zeros column and has
    exactly 2 + 2m + (2 + (a+b)/3) C(m, 2) columns.  The equality
    characterization this realizes needs both a and b positive; a or b
    equal to 0 still builds but sits outside it.  For a or b above 1 the
    design layers repeat blocks, so the result is no longer simple.
    """
    if a < 0 or b < 0 or a + b < 1:
        raise ValueError("need a, b >= 0 with a + b >= 1")
    base = sts(m)  # validates the residue classes
    lam = a + b
    A = layer_range(LayerSpec(m, frozenset({0, 1, 2})))
    if a:
        A = A.concat(lambda_fold(base, a).incidence())
    if b:
        co = lambda_fold(base, b).incidence().complement()
        A = A.concat(co)
    A = A.concat(layer_range(LayerSpec(m, frozenset({m - 2, m - 1, m}))))
    want = bound_1100(lam, m).exact
    if A.ncols != want:
        raise ConstructionError(f"column count {A.ncols} != bound {want}")
    if a <= 1 and b <= 1 and not A.is_simple():
        raise ConstructionError("split 1100 construction unexpectedly non-simple")
    _check_avoids(A, Block(lam + 3, 2, 2), "split 1100 construction")
    return A
