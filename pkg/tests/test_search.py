"""Branch-and-bound search, the exhaustive oracle, witness checks."""

import pytest

from xfc.bounds import design_tplus1_bound, designconfig_bound, genl_bound
from xfc.constructions import exceeder_construction, q10_construction
from xfc.designs import verify_design
from xfc.matrix import BinMatrix, Block, General
from xfc.search import SearchProblem, exact_max, exhaustive_oracle, verify_witness


def test_two_rows_examples():
    r = exact_max(SearchProblem(2, Block(2, 1, 0)))
    assert r.optimum == 3 and r.proof_of_optimality
    assert verify_witness(SearchProblem(2, Block(2, 1, 0)), r.witness)
    assert exact_max(SearchProblem(2, Block(2, 1, 1))).optimum == 4


def test_oracle_matches_two_rows():
    assert exhaustive_oracle(SearchProblem(2, Block(2, 1, 0))).optimum == 3
    assert exhaustive_oracle(SearchProblem(2, Block(2, 1, 1))).optimum == 4


def test_regression_three_rows():
    # frozen after first oracle computation
    p = SearchProblem(3, Block(2, 1, 1))
    assert exhaustive_oracle(p).optimum == 5
    assert exact_max(p).optimum == 5


def test_pattern_wider_than_rows_is_vacuous():
    # the pattern cannot fit: every subset of the 2 columns is admissible
    p = SearchProblem(1, Block(2, 1, 1))
    assert exhaustive_oracle(p).optimum == 2
    assert exact_max(p).optimum == 2


def test_design_extraction_instance():
    p = SearchProblem(7, Block(2, 2, 1), sums=frozenset({3}), policy="free")
    r = exact_max(p)
    assert r.optimum == 7 and r.proof_of_optimality
    assert r.optimum == design_tplus1_bound(2, 1, 1, 7).exact
    blocks = [s for s in r.witness.column_sets() if len(s) == 3]
    assert verify_design(blocks, 7, 3, 2, 1).ok


def test_sum_restricted_instance_obeys_design_bound():
    # columns of one fixed sum avoiding lam+1 full t-blocks
    p = SearchProblem(6, Block(2, 2, 0), sums=frozenset({3}), policy="free")
    r = exact_max(p)
    assert r.optimum <= designconfig_bound(2, 3, 1, 6).exact
    assert r.proof_of_optimality


def test_constructions_are_feasible_witnesses():
    q10 = q10_construction(5, 10)
    assert verify_witness(SearchProblem(10, Block(5, 1, 1)), q10)
    exc = exceeder_construction(2, 1, 1)
    assert verify_witness(SearchProblem(4, Block(3, 2, 1)), exc)


def test_constructions_lower_bound_the_optimum():
    # at m=4 the exceeder saturates the whole cube, so the optimum is 16
    exc = exceeder_construction(2, 1, 1)
    r = exact_max(SearchProblem(4, Block(3, 2, 1)))
    assert exc.ncols <= r.optimum == 16
    wit = exact_max(SearchProblem(4, Block(5, 1, 1)))
    assert wit.optimum == 16  # the q=5 small-m witness is also optimal here


def test_witness_rejection_paths():
    p = SearchProblem(3, Block(2, 1, 1), sums=frozenset({0, 1}))
    assert not verify_witness(p, BinMatrix(4, ()))  # wrong row count
    assert not verify_witness(p, BinMatrix.from_columns(3, [(1, 2)]))  # sum outside range
    dup = BinMatrix.from_columns(3, [(1,), (1,)])
    assert not verify_witness(p, dup)  # repeat under the simple policy
    containing = BinMatrix.from_columns(3, [(1,), (1, 2)])
    q = SearchProblem(3, Block(1, 1, 1))
    assert not verify_witness(q, containing)


def test_oracle_agreement_sweep_small():
    for m in (1, 2, 3):
        for q in (1, 2, 3):
            for t in range(m + 1):
                for ell in range(m - t + 1):
                    p = SearchProblem(m, Block(q, t, ell))
                    assert exact_max(p).optimum == exhaustive_oracle(p).optimum, (m, q, t, ell)


def test_oracle_agreement_sum_restricted_m4():
    # wider rows than the main sweep; sum restrictions keep the oracle in range
    for sums in (frozenset({1, 2}), frozenset({2, 3}), frozenset({0, 2, 4}), frozenset({1, 3})):
        for q in (1, 2, 3, 4):
            for t in range(4):
                for ell in range(4 - t):
                    if t == 0 and ell == 0:
                        continue
                    p = SearchProblem(4, Block(q, t, ell), sums=sums)
                    assert exact_max(p).optimum == exhaustive_oracle(p).optimum, (sums, q, t, ell)


def test_repeat_policy_small_m_probe():
    # exact proof-of-optimality values; all three sit above the asymptotic
    # bound (14, 61/3, 28), which is the whole point of the small-m regime
    expected = {4: 16, 5: 22, 6: 29}
    for m, want in expected.items():
        r = exact_max(SearchProblem(m, Block(3, 2, 1), policy="paper"))
        assert r.proof_of_optimality
        assert r.optimum == want
        assert r.optimum > genl_bound(2, 1, 1, m).exact


def test_free_policy_unbounded_detection():
    with pytest.raises(ValueError, match="unbounded"):
        exact_max(SearchProblem(4, Block(3, 2, 1), policy="free"))


def test_empty_pattern_has_no_maximum():
    with pytest.raises(ValueError):
        exact_max(SearchProblem(3, Block(0, 1, 1)))
    with pytest.raises(ValueError):
        exhaustive_oracle(SearchProblem(3, Block(0, 1, 1)))


def test_paper_policy_repeats_only_middle_sums():
    p = SearchProblem(7, Block(3, 2, 1), policy="paper")
    assert p.unrepeatable_sums() == frozenset({0, 1, 2, 7})
    r = exact_max(p)
    assert r.proof_of_optimality
    assert verify_witness(p, r.witness)


def test_node_budget_gives_best_effort():
    p = SearchProblem(7, Block(2, 2, 1), sums=frozenset({3}), policy="free", node_budget=10)
    r = exact_max(p)
    assert not r.proof_of_optimality
    assert r.optimum >= 1
    assert verify_witness(SearchProblem(7, Block(2, 2, 1), sums=frozenset({3}), policy="free"), r.witness)


def test_workers_agree_on_optimum():
    p = SearchProblem(6, Block(2, 2, 1), sums=frozenset({3, 4}), policy="free")
    single = exact_max(p, workers=1)
    double = exact_max(p, workers=2)
    assert single.optimum == double.optimum
    assert single.proof_of_optimality and double.proof_of_optimality
    assert verify_witness(p, double.witness)


def test_general_pattern_search_tiny():
    pattern = General(BinMatrix.from_columns(2, [(1,), (2,)]))
    p = SearchProblem(3, pattern)
    r = exact_max(p)
    assert r.optimum == exhaustive_oracle(p).optimum == 4  # a chain plus the complement chain top
    assert r.proof_of_optimality


def test_general_pattern_rejects_nonsimple_policy():
    pattern = General(BinMatrix.from_columns(2, [(1,), (2,)]))
    with pytest.raises(ValueError):
        exact_max(SearchProblem(3, pattern, policy="free"))


def test_oracle_caps_candidates():
    with pytest.raises(ValueError):
        exhaustive_oracle(SearchProblem(5, Block(2, 1, 1)))  # 32 candidates > 24
