"""Exact extremal search: maximum column count avoiding a block pattern.

The kernel branches over candidate columns in a fixed order (sum
ascending, then 1-positions lexicographic), maintaining the support count
of every (ones-rows, zeros-rows) split incrementally.  A multiset never
contains q copies of the t-ones/ell-zeros column over some split iff all
split counts stay at most q-1, so feasibility is a handful of array
lookups per candidate.  Pruning combines the per-split residual budgets
into a fractional covering bound: a column of sum s consumes
C(s,t) * C(m-s,ell) units of the summed residual capacity, so at most
floor(budget / min remaining weight) more columns fit.

Symmetry is broken by only appending candidates at or after the last
added index, which enumerates each column multiset exactly once.  The
exhaustive oracle below shares none of this machinery: it enumerates all
subsets of the candidate columns and decides containment through the
general pattern backtracker.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from .matrix import BinMatrix, Block, Configuration, General, contains_config, mask_of

POLICIES = ("simple", "free", "paper")


@dataclass(frozen=True)
class SearchProblem:
    m: int
    config: Configuration
    sums: frozenset[int] | None = None  # None: all column sums 0..m
    policy: str = "simple"
    node_budget: int | None = None

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("need m >= 1")
        if self.policy not in POLICIES:
            raise ValueError(f"policy must be one of {POLICIES}")
        if self.sums is not None:
            object.__setattr__(self, "sums", frozenset(self.sums))
            if any(s < 0 or s > self.m for s in self.sums):
                raise ValueError(f"sums outside 0..{self.m}")
        if self.policy == "paper" and not isinstance(self.config, Block):
            raise ValueError("the paper repeat policy needs a block configuration")

    def allowed_sums(self) -> tuple[int, ...]:
        return tuple(sorted(self.sums)) if self.sums is not None else tuple(range(self.m + 1))

    def unrepeatable_sums(self) -> frozenset[int]:
        """Sums at which a column may appear at most once."""
        if self.policy == "simple":
            return frozenset(range(self.m + 1))
        if self.policy == "free":
            return frozenset()
        t, ell = self.config.t, self.config.ell
        low = set(range(t + 1))
        high = set(range(self.m - ell + 1, self.m + 1))
        return frozenset(low | high)


@dataclass
class SearchResult:
    optimum: int
    witness: BinMatrix
    nodes: int
    proof_of_optimality: bool


def verify_witness(p: SearchProblem, A: BinMatrix) -> bool:
    """Independent replay of the problem constraints on a candidate."""
    if A.m != p.m:
        return False
    allowed = set(p.allowed_sums())
    if any(s not in allowed for s in A.column_sums()):
        return False
    unrep = p.unrepeatable_sums()
    seen = set()
    for c in A.cols:
        if c in seen and c.bit_count() in unrep:
            return False
        seen.add(c)
    return not contains_config(p.config, A)


def _candidates(m: int, sums) -> list[int]:
    out = []
    for s in sums:
        for pts in combinations(range(1, m + 1), s):
            out.append(mask_of(pts))
    return out


class _Kernel:
    """Shared state for one branch-and-bound run."""

    def __init__(self, p: SearchProblem):
        cfg = p.config
        if not isinstance(cfg, Block):
            raise TypeError("the fast kernel needs a block configuration")
        if cfg.q == 0:
            raise ValueError("every matrix contains the empty pattern; no maximum exists")
        self.p = p
        self.m = p.m
        self.q, self.t, self.ell = cfg.q, cfg.t, cfg.ell
        self.cap = cfg.q - 1
        unrep = p.unrepeatable_sums()

        rows = range(1, p.m + 1)
        split_index: dict[tuple[int, int], int] = {}
        for ones in combinations(rows, self.t):
            tmask = mask_of(ones)
            for zeros in combinations([r for r in rows if r not in set(ones)], self.ell):
                split_index[(tmask, mask_of(zeros))] = len(split_index)
        self.nsplits = len(split_index)

        cand = sorted(
            _candidates(p.m, p.allowed_sums()),
            key=lambda c: (c.bit_count(), tuple(i for i in range(p.m) if c >> i & 1)),
        )
        self.free_cols: list[int] = []  # hit no split: always addable once each
        cols, hits, repeatable = [], [], []
        for c in cand:
            s = c.bit_count()
            idxs = []
            for ones in combinations([r for r in rows if c >> (r - 1) & 1], self.t):
                for zeros in combinations([r for r in rows if not c >> (r - 1) & 1], self.ell):
                    idxs.append(split_index[(mask_of(ones), mask_of(zeros))])
            if not idxs:
                if s not in unrep:
                    raise ValueError(
                        f"unbounded: repeatable sum-{s} columns never meet the pattern"
                    )
                self.free_cols.append(c)
                continue
            cols.append(c)
            hits.append(tuple(idxs))
            repeatable.append(s not in unrep)
        self.cols = cols
        self.hits = hits
        self.repeatable = repeatable
        self.weights = [len(h) for h in hits]
        # min weight over candidates at or after each index, for the bound
        self.suffix_min = [0] * (len(cols) + 1)
        running = None
        for i in range(len(cols) - 1, -1, -1):
            running = self.weights[i] if running is None else min(running, self.weights[i])
            self.suffix_min[i] = running

    def greedy(self) -> list[int]:
        """First-fit incumbent in candidate order."""
        counts = [0] * self.nsplits
        sol: list[int] = []
        for i, hit in enumerate(self.hits):
            while all(counts[s] < self.cap for s in hit):
                for s in hit:
                    counts[s] += 1
                sol.append(i)
                if not self.repeatable[i]:
                    break
        return sol

    def solve(self, first_indices=None, incumbent: int = -1, node_budget: int | None = None):
        """DFS from the root (or restricted to given first branches).

        Returns (best_n, best_sol or None, nodes, exhausted).  best_sol is
        None when no solution beat the incumbent.
        """
        counts = [0] * self.nsplits
        budget = self.cap * self.nsplits
        best_n = incumbent
        best_sol: list[int] | None = None
        nodes = 0
        exhausted = False
        cur: list[int] = []
        cols, hits, weights = self.cols, self.hits, self.weights
        suffix_min, cap = self.suffix_min, self.cap

        def dfs(start: int) -> None:
            nonlocal best_n, best_sol, nodes, exhausted, budget
            nodes += 1
            if node_budget is not None and nodes > node_budget:
                exhausted = True
                return
            if len(cur) > best_n:
                best_n = len(cur)
                best_sol = cur.copy()
            for i in range(start, len(cols)):
                if len(cur) + budget // suffix_min[i] <= best_n:
                    break  # suffix_min only grows with i: no later branch helps
                hit = hits[i]
                if any(counts[s] >= cap for s in hit):
                    continue
                for s in hit:
                    counts[s] += 1
                budget -= weights[i]
                cur.append(i)
                dfs(i if self.repeatable[i] else i + 1)
                cur.pop()
                budget += weights[i]
                for s in hit:
                    counts[s] -= 1
                if exhausted:
                    return

        if first_indices is None:
            dfs(0)
        else:
            nodes += 1  # the shared root
            for i in first_indices:
                hit = hits[i]
                if any(counts[s] >= cap for s in hit):
                    continue
                for s in hit:
                    counts[s] += 1
                budget -= weights[i]
                cur.append(i)
                dfs(i if self.repeatable[i] else i + 1)
                cur.pop()
                budget += weights[i]
                for s in hit:
                    counts[s] -= 1
                if exhausted:
                    break
        return best_n, best_sol, nodes, exhausted


def _solve_chunk(p: SearchProblem, first_indices: list[int], incumbent: int):
    kernel = _Kernel(p)
    return kernel.solve(first_indices=first_indices, incumbent=incumbent,
                        node_budget=p.node_budget), first_indices[0]


def exact_max(p: SearchProblem, workers: int = 1) -> SearchResult:
    """Maximum column count over matrices satisfying the problem, with a
    witness.  Optimality is proven unless the node budget runs out.

    With workers > 1 the first-branch subtrees are distributed over
    processes; the optimum is identical, the witness may differ from the
    single-worker run.
    """
    if isinstance(p.config, General):
        return _exact_max_general(p)
    kernel = _Kernel(p)
    base = kernel.free_cols  # never conflict; include them all once
    greedy_sol = kernel.greedy()

    if workers <= 1 or len(kernel.cols) < 2:
        best_n, best_sol, nodes, exhausted = kernel.solve(incumbent=len(greedy_sol) - 1,
                                                          node_budget=p.node_budget)
        if best_sol is None:
            best_n, best_sol = len(greedy_sol), greedy_sol
    else:
        chunks: list[list[int]] = [[] for _ in range(workers)]
        for i in range(len(kernel.cols)):
            chunks[i % workers].append(i)
        best_n, best_sol = len(greedy_sol), greedy_sol
        best_first = len(kernel.cols)
        nodes, exhausted = 0, False
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_solve_chunk, p, chunk, len(greedy_sol) - 1)
                for chunk in chunks
                if chunk
            ]
            for fut in futures:
                (n, sol, nd, ex), first = fut.result()
                nodes += nd
                exhausted = exhausted or ex
                if sol is not None and (n > best_n or (n == best_n and first < best_first)):
                    best_n, best_sol, best_first = n, sol, first
        nodes += 1

    witness = BinMatrix(p.m, tuple(base) + tuple(kernel.cols[i] for i in best_sol))
    assert verify_witness(p, witness)
    return SearchResult(
        optimum=best_n + len(base),
        witness=witness,
        nodes=nodes,
        proof_of_optimality=not exhausted,
    )


def _exact_max_general(p: SearchProblem) -> SearchResult:
    """Slow path for general patterns: branch over candidates and test
    containment on every extension.  Tiny instances only."""
    if p.policy != "simple":
        raise ValueError("general-pattern search supports only the simple policy")
    cand = _candidates(p.m, p.allowed_sums())
    if len(cand) > 24:
        raise ValueError(f"{len(cand)} candidate columns is beyond the general-pattern search")
    pattern = p.config
    best: list[int] = []
    cur: list[int] = []
    nodes = 0
    exhausted = False

    def dfs(start: int) -> None:
        nonlocal best, nodes, exhausted
        nodes += 1
        if p.node_budget is not None and nodes > p.node_budget:
            exhausted = True
            return
        if len(cur) > len(best):
            best = cur.copy()
        if len(cur) + (len(cand) - start) <= len(best):
            return
        for i in range(start, len(cand)):
            cur.append(cand[i])
            if not contains_config(pattern, BinMatrix(p.m, tuple(cur))):
                dfs(i + 1)
            cur.pop()
            if exhausted:
                return

    dfs(0)
    witness = BinMatrix(p.m, tuple(best))
    return SearchResult(len(best), witness, nodes, not exhausted)


def exhaustive_oracle(p: SearchProblem) -> SearchResult:
    """Brute-force optimum by enumerating every subset of the candidate
    columns; validation-only.  Requires the simple policy and at most 24
    candidates.  Containment goes through the general pattern backtracker,
    not the split-count kernel."""
    if p.policy != "simple":
        raise ValueError("the oracle only handles the simple policy")
    cand = _candidates(p.m, p.allowed_sums())
    if len(cand) > 24:
        raise ValueError(f"{len(cand)} candidate columns exceeds the oracle cap of 24")
    pattern = p.config.pattern() if isinstance(p.config, Block) else p.config.pattern
    if pattern.ncols == 0:
        raise ValueError("every matrix contains the empty pattern; no maximum exists")
    best_n = -1
    best_cols: tuple[int, ...] = ()
    checked = 0
    for pick in range(1 << len(cand)):
        n = pick.bit_count()
        if n <= best_n:
            continue
        cols = tuple(cand[i] for i in range(len(cand)) if pick >> i & 1)
        checked += 1
        if not contains_config(General(pattern), BinMatrix(p.m, cols)):
            best_n, best_cols = n, cols
    return SearchResult(best_n, BinMatrix(p.m, best_cols), checked, True)
