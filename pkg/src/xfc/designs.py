"""t-design representation, verification, divisibility checks and small
generators.

Designs are multisets of k-subsets of [m].  Verification is the coverage
count itself (every t-subset in exactly lam blocks); the generators below
run it at build time, so a returned design is always verified.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .matrix import BinMatrix, mask_of


class DesignFormatError(ValueError):
    """Malformed design text.  Carries the 1-based offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Design:
    m: int
    k: int
    t: int
    lam: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "blocks", tuple(tuple(sorted(b)) for b in self.blocks)
        )
        for b in self.blocks:
            if len(b) != self.k or len(set(b)) != self.k:
                raise ValueError(f"block {b} is not a {self.k}-subset")
            if b and (b[0] < 1 or b[-1] > self.m):
                raise ValueError(f"block {b} has points outside 1..{self.m}")

    @property
    def nblocks(self) -> int:
        return len(self.blocks)

    def is_simple(self) -> bool:
        return len(set(self.blocks)) == len(self.blocks)

    def incidence(self) -> BinMatrix:
        """Point-block incidence matrix, one column per block in order."""
        return BinMatrix(self.m, tuple(mask_of(b) for b in self.blocks))


@dataclass(frozen=True)
class DesignCheck:
    ok: bool
    witness: tuple[tuple[int, ...], int] | None = None  # (t-set, coverage count)


def verify_design(blocks, m: int, k: int, t: int, lam: int) -> DesignCheck:
    """Exact coverage check: every t-subset of [m] in exactly lam blocks,
    multiplicity counted.  On failure the witness is the first under- or
    over-covered t-set in combination order.

    Structural problems (wrong block size, point out of range) raise.
    """
    if not 0 <= t <= k <= m:
        raise ValueError("need 0 <= t <= k <= m")
    if lam < 0:
        raise ValueError("lam must be nonnegative")
    blocks = [tuple(sorted(b)) for b in blocks]
    for b in blocks:
        if len(b) != k or len(set(b)) != k:
            raise ValueError(f"block {b} is not a {k}-subset")
        if b and (b[0] < 1 or b[-1] > m):
            raise ValueError(f"block {b} has points outside 1..{m}")
    cover: Counter = Counter()
    for b in blocks:
        for s in combinations(b, t):
            cover[s] += 1
    for s in combinations(range(1, m + 1), t):
        if cover[s] != lam:
            return DesignCheck(False, (s, cover[s]))
    # coverage exact => double counting fixes the block count
    assert len(blocks) * comb(k, t) == lam * comb(m, t)
    return DesignCheck(True)


@dataclass(frozen=True)
class DivisibilityCheck:
    per_index: dict[int, bool]
    indices: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return all(self.per_index.values())


def divisibility_check(t: int, k: int, lam: int, m: int, *, strict_range: bool = False) -> DivisibilityCheck:
    """Necessary conditions C(k-i, t-i) | lam * C(m-i, t-i).

    Default index range is i = 0..t-1 (the full standard conditions; i=0 is
    what makes the Steiner residue classes mod 6 emerge).  With
    strict_range=True only i = 1..t-1 is checked.
    """
    if not 0 <= t <= k <= m:
        raise ValueError("need 0 <= t <= k <= m")
    start = 1 if strict_range else 0
    indices = tuple(range(start, t))
    per = {i: (lam * comb(m - i, t - i)) % comb(k - i, t - i) == 0 for i in indices}
    return DivisibilityCheck(per, indices)


def lambda_fold(d: Design, c: int) -> Design:
    """Repeat every block c times: a t-(m, k, c*lam) design, non-simple for
    c > 1."""
    if c < 1:
        raise ValueError("fold factor must be >= 1")
    return Design(d.m, d.k, d.t, c * d.lam, d.blocks * c)


def complement_blocks(d: Design) -> Design:
    """Replace each block by its set complement in [m]; block size m-k.

    Only the structural exchange is performed; the complement's own
    coverage index (carried over by the standard counting identity) is
    not re-verified here.
    """
    pts = set(range(1, d.m + 1))
    blocks = tuple(tuple(sorted(pts - set(b))) for b in d.blocks)
    num = d.lam * comb(d.m - d.t, d.k)
    den = comb(d.m - d.t, d.k - d.t)
    new_lam, rem = divmod(num, den) if den else (0, 0)
    if rem:
        raise ValueError("complement index is non-integral; input is not a verified design")
    return Design(d.m, d.m - d.k, d.t, new_lam, blocks)


def _bose_triples(n: int) -> list[tuple[int, int, int]]:
    """Triple system on 6n+3 points from Z_{2n+1} x {0,1,2} with the
    idempotent commutative quasigroup x*y = (x+y)(n+1) mod 2n+1."""
    mod = 2 * n + 1

    def pt(x: int, lvl: int) -> int:
        return 3 * x + lvl + 1

    def op(x: int, y: int) -> int:
        return (x + y) * (n + 1) % mod

    triples = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(mod)]
    for x in range(mod):
        for y in range(x + 1, mod):
            for lvl in range(3):
                triples.append((pt(x, lvl), pt(y, lvl), pt(op(x, y), (lvl + 1) % 3)))
    return triples


def _skolem_triples(n: int) -> list[tuple[int, int, int]]:
    """Triple system on 6n+1 points from Z_{2n} x {0,1,2} plus one extra
    point, using a half-idempotent commutative quasigroup on Z_{2n}."""
    mod = 2 * n
    inf = 6 * n + 1

    def pt(x: int, lvl: int) -> int:
        return 3 * x + lvl + 1

    # relabel Z_{2n} addition so the first n diagonal entries are fixed:
    # h(2i) = i, h(2i+1) = n+i
    h = [0] * mod
    for i in range(n):
        h[2 * i] = i
        h[2 * i + 1] = n + i

    def op(x: int, y: int) -> int:
        return h[(x + y) % mod]

    triples = [(pt(i, 0), pt(i, 1), pt(i, 2)) for i in range(n)]
    for i in range(n):
        for lvl in range(3):
            triples.append((inf, pt(n + i, lvl), pt(i, (lvl + 1) % 3)))
    for x in range(mod):
        for y in range(x + 1, mod):
            for lvl in range(3):
                triples.append((pt(x, lvl), pt(y, lvl), pt(op(x, y), (lvl + 1) % 3)))
    return triples


def sts(m: int) -> Design:
    """A verified Steiner triple system: 2-(m, 3, 1) with m(m-1)/6 blocks.

    Exists exactly for m congruent to 1 or 3 mod 6; built by quasigroup
    constructions over Z_{2n+1} (m = 6n+3) or Z_{2n} plus a point
    (m = 6n+1), then checked.
    """
    if m < 7 or m % 6 not in (1, 3):
        raise ValueError(f"no Steiner triple system on {m} points (need m = 1, 3 mod 6, m >= 7)")
    if m % 6 == 3:
        triples = _bose_triples((m - 3) // 6)
    else:
        triples = _skolem_triples((m - 1) // 6)
    d = Design(m, 3, 2, 1, tuple(triples))
    check = verify_design(d.blocks, m, 3, 2, 1)
    if not check.ok:
        raise AssertionError(f"generated triple system failed verification: {check.witness}")
    if not d.is_simple():
        raise AssertionError("generated triple system has a repeated block")
    return d


def write_design(d: Design) -> str:
    """Design text format: 'm k t lambda b' then b sorted block lines."""
    lines = [f"{d.m} {d.k} {d.t} {d.lam} {d.nblocks}"]
    for b in d.blocks:
        lines.append(" ".join(str(p) for p in b))
    return "\n".join(lines) + "\n"


def read_design(text: str) -> Design:
    lines = text.splitlines()
    if not lines:
        raise DesignFormatError(1, "empty input, expected header 'm k t lambda b'")
    head = lines[0].split()
    if len(head) != 5:
        raise DesignFormatError(1, f"expected 'm k t lambda b', got {lines[0]!r}")
    try:
        m, k, t, lam, b = (int(x) for x in head)
    except ValueError:
        raise DesignFormatError(1, f"non-integer header fields in {lines[0]!r}") from None
    if len(lines) < b + 1:
        raise DesignFormatError(len(lines) + 1, f"expected {b} block lines, got {len(lines) - 1}")
    blocks = []
    for i in range(b):
        parts = lines[i + 1].split()
        try:
            pts = tuple(int(p) for p in parts)
        except ValueError:
            raise DesignFormatError(i + 2, f"non-integer point in {lines[i + 1]!r}") from None
        if len(pts) != k:
            raise DesignFormatError(i + 2, f"expected {k} points, got {len(pts)}")
        if tuple(sorted(pts)) != pts:
            raise DesignFormatError(i + 2, "block points must be sorted ascending")
        blocks.append(pts)
    for extra in range(b + 1, len(lines)):
        if lines[extra].strip():
            raise DesignFormatError(extra + 1, "trailing non-empty line")
    try:
        return Design(m, k, t, lam, tuple(blocks))
    except ValueError as e:
        raise DesignFormatError(2, str(e)) from None
