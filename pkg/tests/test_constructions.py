"""Construction generators and their self-verified claims."""

from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from xfc.bounds import genl_bound, pigeonhole_terms, q10_lower, q10_upper
from xfc.constructions import (
    ConstructionError,
    LayerSpec,
    complete_layer,
    exceeder_construction,
    genl_equality_construction,
    layer_range,
    q10_construction,
    small_m_pigeonhole_witness,
    split_1100_construction,
)
from xfc.designs import lambda_fold, sts
from xfc.matrix import Block, RowSplit, block_support_count, contains_config


def test_complete_layer_counts_and_order():
    L = complete_layer(4, 2)
    assert L.ncols == 6
    assert L.column_sets() == tuple(combinations(range(1, 5), 2))
    assert complete_layer(5, 0).cols == (0,)
    assert complete_layer(5, 5).cols == ((1 << 5) - 1,)
    with pytest.raises(ValueError):
        complete_layer(4, 5)


def test_layer_range():
    assert layer_range(LayerSpec(2, frozenset({0, 1, 2}))).ncols == 4
    assert layer_range(LayerSpec(4, frozenset(range(5)))).ncols == 16
    assert layer_range(LayerSpec(7, frozenset({0, 1, 2, 7}))).ncols == 30


def test_genl_equality_m7():
    A = genl_equality_construction(2, 1, 1, 7, sts(7))
    assert A.ncols == 37 == genl_bound(2, 1, 1, 7).exact
    assert A.is_simple()
    assert not contains_config(Block(3, 2, 1), A)


def test_genl_equality_m9():
    A = genl_equality_construction(2, 1, 1, 9, sts(9))
    assert A.ncols == genl_bound(2, 1, 1, 9).exact == 59


def test_genl_equality_rejects_wrong_design():
    with pytest.raises(ConstructionError):
        genl_equality_construction(2, 1, 1, 9, sts(7))
    broken = sts(7)
    bad = type(broken)(7, 3, 2, 1, broken.blocks[1:] + (broken.blocks[1],))
    with pytest.raises(ConstructionError):
        genl_equality_construction(2, 1, 1, 7, bad)


def test_genl_equality_with_folded_design():
    A = genl_equality_construction(2, 1, 2, 7, lambda_fold(sts(7), 2))
    assert A.ncols == genl_bound(2, 1, 2, 7).exact
    assert not contains_config(Block(4, 2, 1), A)


def test_exceeder_small_case():
    A = exceeder_construction(2, 1, 1)
    assert A.m == 4 and A.ncols == 16
    assert not contains_config(Block(3, 2, 1), A)
    assert A.ncols - genl_bound(2, 1, 1, 4).exact == 2
    # every split supports exactly 2 columns here
    for T in combinations(range(1, 5), 2):
        for L in combinations([r for r in range(1, 5) if r not in T], 1):
            assert block_support_count(A, RowSplit(T, L)) == 2


def test_exceeder_non_integral_gap_parameters():
    A = exceeder_construction(3, 1, 1)
    assert A.m == 5 and A.ncols == 32
    assert A.ncols - genl_bound(3, 1, 1, 5).exact == Fraction(5, 2)


def test_exceeder_parameter_validation():
    with pytest.raises(ValueError):
        exceeder_construction(1, 1, 1)
    with pytest.raises(ValueError):
        exceeder_construction(2, 0, 1)


@pytest.mark.parametrize("q,m,ncols", [(3, 11, 24), (5, 10, 32), (4, 7, 19)])
def test_q10_examples(q, m, ncols):
    A = q10_construction(q, m)
    assert A.ncols == ncols == q10_lower(q, m).floor_int
    assert A.is_simple()
    assert not contains_config(Block(q, 1, 1), A)


def test_q10_matches_lower_bound_across_range():
    for q in (3, 4, 5, 6):
        for m in range(max(4, q - 1), 31, 5):
            A = q10_construction(q, m)
            assert A.ncols == q10_lower(q, m).floor_int
            assert A.is_simple()


def test_q10_degenerate_rows_raise():
    # with 2 or 3 rows the required layers collide, so the simplicity
    # claim is unsatisfiable (and at m=2 the count bound is undefined)
    with pytest.raises(ConstructionError):
        q10_construction(3, 2)
    with pytest.raises(ConstructionError):
        q10_construction(4, 3)
    with pytest.raises(ValueError):
        q10_construction(6, 3)  # degree 3 needs at least 4 vertices


def test_small_m_witness():
    W = small_m_pigeonhole_witness(5)
    assert W.m == 4 and W.ncols == 16
    assert W.ncols == q10_upper(5, 4).floor_int
    assert not contains_config(Block(5, 1, 1), W)
    W4 = small_m_pigeonhole_witness(4)
    assert W4.ncols == q10_upper(4, 3).floor_int == 11
    assert not contains_config(Block(4, 1, 1), W4)


def test_small_m_witness_q3_is_undefined():
    # the upper bound's slack term divides by m-2 = 0
    with pytest.raises(ConstructionError):
        small_m_pigeonhole_witness(3)


def test_split_1100():
    A = split_1100_construction(7, 1, 1)
    assert A.ncols == 72
    assert A.is_simple()
    assert not contains_config(Block(5, 2, 2), A)


def test_split_1100_complement_exchanges_designs():
    A = split_1100_construction(7, 1, 1)
    B = split_1100_construction(7, 1, 1)
    assert sorted(A.complement().cols) == sorted(B.cols)
    C = split_1100_construction(9, 1, 2)
    D = split_1100_construction(9, 2, 1)
    assert sorted(C.complement().cols) == sorted(D.cols)


def test_split_1100_unbalanced_folds_are_not_simple():
    C = split_1100_construction(9, 1, 2)
    assert not C.is_simple()  # the b=2 layer repeats complements
    assert not contains_config(Block(6, 2, 2), C)


def test_split_1100_validation():
    with pytest.raises(ValueError):
        split_1100_construction(8, 1, 1)  # 8 is not 1 or 3 mod 6
    with pytest.raises(ValueError):
        split_1100_construction(7, 0, 0)


def test_pigeonhole_holds_on_every_construction():
    # the weighted-profile inequality presumes t > ell and column sums in
    # {t..m-ell}; check it on the band restriction of those constructions
    cases = [
        (genl_equality_construction(2, 1, 1, 7, sts(7)), 2, 1, 1),
        (genl_equality_construction(2, 1, 1, 9, sts(9)), 2, 1, 1),
        (genl_equality_construction(2, 1, 2, 7, lambda_fold(sts(7), 2)), 2, 1, 2),
        (exceeder_construction(2, 1, 1), 2, 1, 1),
        (exceeder_construction(3, 1, 1), 3, 1, 1),
    ]
    for A, t, ell, lam in cases:
        R = A.restrict_sums(range(t, A.m - ell + 1))
        prof = R.column_profile(t)
        assert pigeonhole_terms(t, ell, lam, A.m, (prof.a_t, prof.a_t1, prof.a_higher)).holds


def test_support_pigeonhole_for_equal_rows_families():
    # t = ell families sit outside the weighted inequality's hypotheses;
    # the raw support count against per-split capacity is the valid form
    from xfc.matrix import support_count_total

    cases = [
        (q10_construction(5, 10), 1, 1, 5),
        (q10_construction(4, 9), 1, 1, 4),
        (split_1100_construction(7, 1, 1), 2, 2, 5),
    ]
    for A, t, ell, q in cases:
        nsplits = comb(A.m, t) * comb(A.m - t, ell)
        assert support_count_total(A, t, ell) <= nsplits * (q - 1)
