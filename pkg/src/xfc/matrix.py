"""Core (0,1)-matrix values and configuration containment.

A matrix is an ordered multiset of columns over rows 1..m.  Each column is
stored as a packed bitmask (bit i-1 set <=> the column has a 1 in row i),
so support tests against a row split cost two AND operations regardless
of m.  All values are immutable; every operation returns fresh objects.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb


class MatrixFormatError(ValueError):
    """Malformed matrix text.  Carries the 1-based offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def mask_of(rows) -> int:
    """Pack 1-based row positions into a column bitmask."""
    m = 0
    for r in rows:
        m |= 1 << (r - 1)
    return m


def rows_of(mask: int) -> tuple[int, ...]:
    """Unpack a column bitmask into ascending 1-based row positions."""
    out = []
    r = 1
    while mask:
        if mask & 1:
            out.append(r)
        mask >>= 1
        r += 1
    return tuple(out)


@dataclass(frozen=True)
class BinMatrix:
    """An m-rowed (0,1)-matrix as an ordered multiset of column bitmasks.

    ``m`` may be 0 only for degenerate patterns (a configuration with no
    rows); real inputs always have m >= 1.
    """

    m: int
    cols: tuple[int, ...] = ()

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("row count must be nonnegative")
        object.__setattr__(self, "cols", tuple(self.cols))
        limit = 1 << self.m
        for j, c in enumerate(self.cols):
            if not 0 <= c < limit:
                raise ValueError(f"column {j} has 1-positions outside 1..{self.m}")

    @classmethod
    def from_columns(cls, m: int, columns) -> "BinMatrix":
        """Build from an iterable of 1-position collections (1-based rows)."""
        return cls(m, tuple(mask_of(c) for c in columns))

    @property
    def ncols(self) -> int:
        return len(self.cols)

    def column_sums(self) -> tuple[int, ...]:
        return tuple(c.bit_count() for c in self.cols)

    def column_sets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(rows_of(c) for c in self.cols)

    def is_simple(self) -> bool:
        """True iff no column repeats (the matrix encodes a set system)."""
        return len(set(self.cols)) == len(self.cols)

    def complement(self) -> "BinMatrix":
        """Flip every entry; a column of sum s becomes one of sum m-s."""
        full = (1 << self.m) - 1
        return BinMatrix(self.m, tuple(full ^ c for c in self.cols))

    def concat(self, other: "BinMatrix") -> "BinMatrix":
        """Column-multiset union [self | other]; row counts must agree."""
        if self.m != other.m:
            raise ValueError(f"row-count mismatch: {self.m} vs {other.m}")
        return BinMatrix(self.m, self.cols + other.cols)

    def restrict_rows(self, rows) -> "BinMatrix":
        """Keep all columns, restricted to the given rows (ascending order)."""
        rows = sorted(set(rows))
        if rows and not (1 <= rows[0] and rows[-1] <= self.m):
            raise ValueError(f"rows outside 1..{self.m}")
        cols = []
        for c in self.cols:
            out = 0
            for i, r in enumerate(rows):
                if c >> (r - 1) & 1:
                    out |= 1 << i
            cols.append(out)
        return BinMatrix(len(rows), tuple(cols))

    def restrict_sums(self, sums) -> "BinMatrix":
        """Keep only columns whose sum lies in ``sums`` (order preserved)."""
        allowed = set(sums)
        return BinMatrix(self.m, tuple(c for c in self.cols if c.bit_count() in allowed))

    def column_profile(self, t: int) -> "ColumnProfile":
        """Counts a_t, a_{t+1}, a_{>=t+2} and the full sum histogram."""
        hist = [0] * (self.m + 1)
        for c in self.cols:
            hist[c.bit_count()] += 1
        a_t = hist[t] if 0 <= t <= self.m else 0
        a_t1 = hist[t + 1] if 0 <= t + 1 <= self.m else 0
        a_higher = sum(hist[s] for s in range(t + 2, self.m + 1))
        return ColumnProfile(a_t, a_t1, a_higher, tuple(hist))

    def to_text(self) -> str:
        """Render in the matrix text format (see read_matrix)."""
        lines = [f"{self.m} {self.ncols}"]
        for r in range(self.m):
            lines.append("".join("1" if c >> r & 1 else "0" for c in self.cols))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ColumnProfile:
    a_t: int
    a_t1: int
    a_higher: int
    histogram: tuple[int, ...]


@dataclass(frozen=True)
class RowSplit:
    """A disjoint (ones-rows, zeros-rows) pair of row subsets."""

    ones: tuple[int, ...]
    zeros: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ones", tuple(sorted(self.ones)))
        object.__setattr__(self, "zeros", tuple(sorted(self.zeros)))
        if set(self.ones) & set(self.zeros):
            raise ValueError("ones-rows and zeros-rows must be disjoint")

    def valid_for(self, m: int) -> bool:
        pts = self.ones + self.zeros
        return all(1 <= r <= m for r in pts)


@dataclass(frozen=True)
class Block:
    """The (t+ell) x q pattern of q identical columns: t ones over ell zeros."""

    q: int
    t: int
    ell: int

    def __post_init__(self):
        if self.q < 0 or self.t < 0 or self.ell < 0:
            raise ValueError("Block parameters must be nonnegative")

    @property
    def nrows(self) -> int:
        return self.t + self.ell

    def pattern(self) -> BinMatrix:
        """Expand to the equivalent general (0,1)-pattern."""
        col = (1 << self.t) - 1
        return BinMatrix(self.nrows, (col,) * self.q)


@dataclass(frozen=True)
class General:
    """An arbitrary (0,1)-pattern regarded up to row and column permutation."""

    pattern: BinMatrix


Configuration = Block | General


def block_support_count(A: BinMatrix, split: RowSplit) -> int:
    """Columns of A (with multiplicity) that are all-1 on the ones-rows and
    all-0 on the zeros-rows of the split."""
    if not split.valid_for(A.m):
        raise ValueError(f"split rows outside 1..{A.m}")
    tmask = mask_of(split.ones)
    lmask = mask_of(split.zeros)
    return sum(1 for c in A.cols if c & tmask == tmask and c & lmask == 0)


def max_block_multiplicity(A: BinMatrix, t: int, ell: int) -> tuple[int, RowSplit]:
    """Maximum of block_support_count over all (t, ell) row splits, with the
    lexicographically least maximizing split.  Requires t + ell <= m."""
    if t < 0 or ell < 0:
        raise ValueError("t and ell must be nonnegative")
    if t + ell > A.m:
        raise ValueError(f"t + ell = {t + ell} exceeds row count {A.m}")
    rows = range(1, A.m + 1)
    best = -1
    best_split = None
    for ones in combinations(rows, t):
        tmask = mask_of(ones)
        sup = [c for c in A.cols if c & tmask == tmask]
        rest = [r for r in rows if not (tmask >> (r - 1) & 1)]
        for zeros in combinations(rest, ell):
            lmask = mask_of(zeros)
            cnt = sum(1 for c in sup if c & lmask == 0)
            if cnt > best:
                best = cnt
                best_split = RowSplit(ones, zeros)
    return best, best_split


def contains_config(config: Configuration, A: BinMatrix) -> bool:
    """True iff some submatrix of A is a row and column permutation of the
    configuration.  A pattern wider or taller than A is never contained;
    patterns with zero columns (or zero multiplicity) are contained
    vacuously."""
    if isinstance(config, Block):
        return _contains_block(config.q, config.t, config.ell, A)
    return _contains_general(config.pattern, A)


def _contains_block(q: int, t: int, ell: int, A: BinMatrix) -> bool:
    if q == 0:
        return True
    if t + ell > A.m or A.ncols < q:
        return False
    if t == 0 and ell == 0:
        return A.ncols >= q
    rows = range(1, A.m + 1)
    for ones in combinations(rows, t):
        tmask = mask_of(ones)
        sup = [c for c in A.cols if c & tmask == tmask]
        if len(sup) < q:
            continue
        if ell == 0:
            return True
        rest = [r for r in rows if not (tmask >> (r - 1) & 1)]
        if ell == 1:
            # one pass: q columns share a zero row iff some row outside the
            # ones-set carries at most len(sup) - q ones among the support
            ones_at = [0] * (A.m + 1)
            for c in sup:
                for r in rows_of(c):
                    ones_at[r] += 1
            if any(len(sup) - ones_at[r] >= q for r in rest):
                return True
        else:
            for zeros in combinations(rest, ell):
                lmask = mask_of(zeros)
                if sum(1 for c in sup if c & lmask == 0) >= q:
                    return True
    return False


def _contains_general(P: BinMatrix, A: BinMatrix) -> bool:
    """Depth-first assignment of P's columns to distinct columns of A.

    Pruning is by column-sum compatibility plus a row-signature multiset
    check: P's rows can be injected into A's rows consistently with a
    partial column assignment iff, for every 0/1 signature over the
    assigned columns, P has at most as many rows with that signature as A
    does.  At full depth that check is exact.
    """
    k = P.ncols
    if k == 0:
        return True
    if P.m == 0:
        return A.ncols >= k
    if P.m > A.m or k > A.ncols:
        return False

    fcols = sorted(P.cols, key=lambda c: (-c.bit_count(), c))
    fsum = [c.bit_count() for c in fcols]
    asum = [c.bit_count() for c in A.cols]
    chosen: list[int] = []
    used = [False] * A.ncols

    def signatures_ok() -> bool:
        fsig = Counter(
            tuple(fc >> i & 1 for fc in fcols[: len(chosen)]) for i in range(P.m)
        )
        asig = Counter(
            tuple(A.cols[idx] >> x & 1 for idx in chosen) for x in range(A.m)
        )
        return all(asig[s] >= n for s, n in fsig.items())

    def assign(j: int) -> bool:
        if j == k:
            return True
        lo = chosen[-1] + 1 if j > 0 and fcols[j] == fcols[j - 1] else 0
        for idx in range(lo, A.ncols):
            if used[idx]:
                continue
            if asum[idx] < fsum[j] or A.m - asum[idx] < P.m - fsum[j]:
                continue
            used[idx] = True
            chosen.append(idx)
            if signatures_ok() and assign(j + 1):
                return True
            chosen.pop()
            used[idx] = False
        return False

    return assign(0)


def support_count_total(A: BinMatrix, t: int, ell: int) -> int:
    """Sum of block_support_count over all (t, ell) splits, computed
    column-wise: a column of sum s pays C(s, t) * C(m - s, ell)."""
    return sum(comb(c.bit_count(), t) * comb(A.m - c.bit_count(), ell) for c in A.cols)


def write_matrix(A: BinMatrix) -> str:
    return A.to_text()


def read_matrix(text: str) -> BinMatrix:
    """Parse the matrix text format.

    First line "m n"; then m lines of exactly n characters from {0,1};
    column j is read down line positions j.  Round-trips with to_text().
    """
    lines = text.splitlines()
    if not lines:
        raise MatrixFormatError(1, "empty input, expected header 'm n'")
    head = lines[0].split()
    if len(head) != 2:
        raise MatrixFormatError(1, f"expected header 'm n', got {lines[0]!r}")
    try:
        m, n = int(head[0]), int(head[1])
    except ValueError:
        raise MatrixFormatError(1, f"non-integer header fields in {lines[0]!r}") from None
    if m < 0 or n < 0:
        raise MatrixFormatError(1, "m and n must be nonnegative")
    if len(lines) < m + 1:
        raise MatrixFormatError(len(lines) + 1, f"expected {m} row lines, got {len(lines) - 1}")
    cols = [0] * n
    for r in range(m):
        row = lines[r + 1]
        if len(row) != n:
            raise MatrixFormatError(r + 2, f"expected {n} characters, got {len(row)}")
        for j, ch in enumerate(row):
            if ch == "1":
                cols[j] |= 1 << r
            elif ch != "0":
                raise MatrixFormatError(r + 2, f"invalid character {ch!r}")
    for extra in range(m + 1, len(lines)):
        if lines[extra].strip():
            raise MatrixFormatError(extra + 1, "trailing non-empty line")
    return BinMatrix(m, tuple(cols))
