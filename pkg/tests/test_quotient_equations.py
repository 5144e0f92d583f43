"""Tests for the exact hyperelliptic equations of the quotients S/K."""
import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from humbert.errors import HumbertDomainError
from humbert.projective_line import INF, MobiusMap, cross_ratio, orbit_key
from humbert.quotient_equations import (
    BranchSet,
    EvenCover,
    HyperellipticEquation,
    QuarticNormalizer,
    Shape,
    equal_up_to_scaling,
    full_rank_quotient_curve,
    pair_cover,
    pair_quotient_curve,
    preimage_square,
    quartic_factor,
    scaling_between,
    single_omission_curve,
    square_over,
    tower_quartic_curve,
    triple_normalizer,
    triple_quotient_curve,
    verify_cover_consistency,
)


def quadratics(*values):
    return HyperellipticEquation(Shape.EVEN_QUADRATICS, tuple(F(v) for v in values))


def test_branch_set_validation():
    with pytest.raises(HumbertDomainError):
        BranchSet.from_lambdas([F(2)])
    with pytest.raises(HumbertDomainError):
        BranchSet.from_lambdas([F(2), F(2)])
    with pytest.raises(HumbertDomainError):
        BranchSet.from_lambdas([F(1), F(3)])
    with pytest.raises(HumbertDomainError):
        BranchSet((F(0), INF, F(1), F(2), F(3)))


def test_branch_set_indexing(branch23):
    assert branch23.n == 4
    assert branch23.value(1) is INF
    assert branch23.value(5) == 3
    assert branch23.remaining((1, 2)) == (F(1), F(2), F(3))
    with pytest.raises(HumbertDomainError):
        branch23.value(6)


def test_equation_validation():
    with pytest.raises(HumbertDomainError):
        quadratics(1, 1)
    with pytest.raises(HumbertDomainError):
        quadratics(0, 1)
    with pytest.raises(HumbertDomainError):
        HyperellipticEquation(Shape.EVEN_QUARTICS_MU, (F(1), F(2)))


def test_branch_count_and_genus():
    assert quadratics(1, 2, 3).genus == 2
    roots = HyperellipticEquation(Shape.ROOT_LIST, (F(0), F(1), F(2)))
    assert roots.branch_count == 4
    assert roots.genus == 1
    quartics = HyperellipticEquation(Shape.EVEN_QUARTICS_W, (F(-1), F(-2)))
    assert quartics.branch_count == 8
    assert quartics.genus == 3


def test_pair_cover_normal_forms():
    assert pair_cover(F(2), F(3)).post.same_map(MobiusMap(2, 3, 1, 1))
    assert pair_cover(INF, F(0)).post.same_map(MobiusMap.identity())
    assert pair_cover(F(0), F(1)).post.same_map(MobiusMap(0, 1, 1, 1))
    assert pair_cover(INF, F(2))(F(1)) == 3
    with pytest.raises(HumbertDomainError):
        pair_cover(F(2), F(2))


@pytest.mark.parametrize("b1, b2", list(itertools.combinations([INF, F(0), F(1), F(2), F(3)], 2)))
def test_pair_cover_critical_values(b1, b2):
    cover = pair_cover(b1, b2)
    assert {cover(INF), cover(F(0))} == {b1, b2}


def test_preimage_square():
    cover = pair_cover(F(2), F(3))
    assert preimage_square(cover, INF) == -1
    assert preimage_square(cover, F(0)) == F(-3, 2)
    assert preimage_square(pair_cover(INF, F(0)), F(2)) == 2
    with pytest.raises(HumbertDomainError, match="critical value"):
        preimage_square(cover, F(2))


def test_pair_quotient_examples(branch23):
    c10 = pair_quotient_curve(branch23, (4, 5))
    assert sorted(c10.constants) == [F(-2), F(-3, 2), F(-1)]
    assert c10.genus == 2
    assert str(c10) == "y^2 = (x^2+1)(x^2+3/2)(x^2+2)"

    c1 = pair_quotient_curve(branch23, (1, 2))
    assert c1.constants == (F(1), F(2), F(3))

    c8 = pair_quotient_curve(branch23, (3, 4))
    assert sorted(c8.constants) == [F(-2), F(-1), F(-1, 2)]


def test_pair_quotient_is_symmetric_in_the_pair(branch23):
    assert pair_quotient_curve(branch23, (5, 4)) == pair_quotient_curve(branch23, (4, 5))
    with pytest.raises(HumbertDomainError):
        pair_quotient_curve(branch23, (4, 4))


def test_triple_normalizer():
    assert triple_normalizer(INF, F(0), F(1)).same_map(MobiusMap.identity())
    T = triple_normalizer(F(1), F(2), F(3))
    assert (T(F(1)), T(F(2)), T(F(3))) == (INF, 0, 1)
    assert T.same_map(MobiusMap(2, -4, 1, -1))
    assert triple_normalizer(INF, F(0), F(2)).same_map(MobiusMap(1, 0, 0, 2))
    with pytest.raises(HumbertDomainError):
        triple_normalizer(F(1), F(1), F(2))


def test_triple_quotient_examples(branch23):
    q1 = triple_quotient_curve(branch23, (1, 2, 3))
    assert q1.constants == (F(2), F(3))
    assert q1.factors_text() == ["(x^4-6x^2+1)", "(x^4-10x^2+1)"]
    assert q1.genus == 3

    q4 = triple_quotient_curve(branch23, (1, 2, 4))
    assert sorted(q4.constants) == [F(1, 2), F(3, 2)]
    assert "(x^4+1)" in q4.factors_text()

    q8 = triple_quotient_curve(branch23, (3, 4, 5))
    assert sorted(q8.constants) == [F(2), F(4)]


def test_triple_order_moves_mu_within_orbit(branch23):
    reference = sorted(orbit_key(mu) for mu in triple_quotient_curve(branch23, (3, 4, 5)).constants)
    for order in itertools.permutations((3, 4, 5)):
        eq = triple_quotient_curve(branch23, order, keep_order=True)
        assert sorted(orbit_key(mu) for mu in eq.constants) == reference
        assert verify_cover_consistency(eq)


def test_tower_examples(branch23):
    assert sorted(tower_quartic_curve(branch23, (4, 5), 3).constants) == [F(-3, 2), F(-1)]
    assert sorted(tower_quartic_curve(branch23, (4, 5), 1).constants) == [F(-2), F(-3, 2)]
    assert sorted(tower_quartic_curve(branch23, (4, 5), 2).constants) == [F(-2), F(-1)]
    with pytest.raises(HumbertDomainError):
        tower_quartic_curve(branch23, (4, 5), 4)


def test_full_rank_curve():
    eq = full_rank_quotient_curve(BranchSet.from_lambdas([F(2), F(3), F(5)]))
    assert eq.constants == (F(0), F(1), F(2), F(3), F(5))
    assert eq.genus == 2
    assert full_rank_quotient_curve(BranchSet.from_lambdas([F(v) for v in (2, 3, 5, 7, 11)])).genus == 3
    with pytest.raises(HumbertDomainError):
        full_rank_quotient_curve(BranchSet.from_lambdas([F(2), F(3)]))


def test_single_omission_curves(branch23):
    assert single_omission_curve(branch23, 5).constants == (F(0), F(1), F(2))
    assert single_omission_curve(branch23, 4).constants == (F(0), F(1), F(3))
    assert single_omission_curve(branch23, 1).constants == (F(0), F(1), F(4, 3))
    assert all(single_omission_curve(branch23, p).genus == 1 for p in branch23.indices)
    with pytest.raises(HumbertDomainError):
        single_omission_curve(BranchSet.from_lambdas([F(2), F(3), F(5)]), 1)


def test_cover_consistency_detects_broken_factor(branch23):
    c10 = pair_quotient_curve(branch23, (4, 5))
    assert verify_cover_consistency(c10)
    broken = HyperellipticEquation(Shape.EVEN_QUADRATICS, (F(-1), F(-3, 2), F(-5, 2)), c10.cover, c10.expected)
    assert not verify_cover_consistency(broken)

    tower = tower_quartic_curve(branch23, (4, 5), 3)
    assert tower.cover == EvenCover(MobiusMap(2, 3, 1, 1), 4)
    assert verify_cover_consistency(tower, expected=[INF, F(0)])


def test_cover_consistency_rejects_wrong_cover_kind(branch23):
    c10 = pair_quotient_curve(branch23, (4, 5))
    with pytest.raises(HumbertDomainError):
        verify_cover_consistency(c10, cover=MobiusMap.identity())


def test_scaling():
    assert equal_up_to_scaling(quadratics(-1, F(-3, 2), -2), quadratics(1, F(3, 2), 2)) == -1
    assert equal_up_to_scaling(quadratics(1, 2, 3), quadratics(1, 2, 4)) is None
    assert scaling_between([F(2), F(4)], [F(1), F(2)]) == F(1, 2)
    assert equal_up_to_scaling(quadratics(1, 2, 3), quadratics(2, 4, 6)) == 2
    assert equal_up_to_scaling(quadratics(2, 4, 6), quadratics(1, 2, 3)) == F(1, 2)
    with pytest.raises(HumbertDomainError):
        equal_up_to_scaling(quadratics(1, 2), HyperellipticEquation(Shape.EVEN_QUARTICS_W, (F(1), F(2))))


@given(st.lists(st.fractions(max_denominator=20).filter(bool), min_size=1, max_size=5, unique=True),
       st.fractions(max_denominator=20).filter(bool))
def test_scaling_is_reflexive_and_symmetric(values, sigma):
    eq = quadratics(*values)
    scaled = quadratics(*(sigma * v for v in values))
    assert equal_up_to_scaling(eq, eq) == 1
    assert equal_up_to_scaling(eq, scaled) is not None
    back = equal_up_to_scaling(scaled, eq)
    assert back is not None
    assert sorted(back * c for c in scaled.constants) == sorted(eq.constants)


lambdas = st.fractions(min_value=-12, max_value=12, max_denominator=12).filter(lambda q: q not in (0, 1))


@settings(max_examples=20, deadline=None)
@given(st.data())
def test_every_family_is_cover_consistent(data):
    n = data.draw(st.integers(min_value=4, max_value=9))
    branch = BranchSet.from_lambdas(data.draw(st.lists(lambdas, min_size=n - 2, max_size=n - 2, unique=True)))
    equations = [pair_quotient_curve(branch, p) for p in itertools.combinations(branch.indices, 2)]
    equations += [triple_quotient_curve(branch, t) for t in itertools.combinations(branch.indices, 3)]
    equations += [
        tower_quartic_curve(branch, p, r)
        for p in itertools.combinations(branch.indices, 2)
        for r in branch.indices
        if r not in p
    ]
    if n % 2:
        equations.append(full_rank_quotient_curve(branch))
    else:
        equations += [single_omission_curve(branch, p) for p in branch.indices]

    assert len(equations) > 0
    for eq in equations:
        assert verify_cover_consistency(eq)
        assert eq.branch_count == 2 * eq.genus + 2


nonzero = st.fractions(min_value=-20, max_value=20, max_denominator=20).filter(bool)


def evaluate(coefficients, z):
    return sum(c * z ** (len(coefficients) - 1 - k) for k, c in enumerate(coefficients))


def test_square_over():
    assert square_over(F(2), F(3), INF) == -1
    assert square_over(F(2), F(3), F(0)) == F(-3, 2)
    assert square_over(F(2), F(3), F(1)) == -2
    assert square_over(INF, F(0), F(2)) == 2
    with pytest.raises(HumbertDomainError, match="critical value"):
        square_over(F(2), F(3), F(3))


@given(st.lists(lambdas, min_size=2, max_size=2, unique=True), nonzero)
def test_square_over_inverts_the_pair_cover(values, z):
    cover = pair_cover(*values)
    b1, b2 = cover.critical_values
    assert square_over(b1, b2, cover(z)) == z ** 2


@given(st.lists(st.fractions(max_denominator=15), min_size=4, max_size=4, unique=True))
def test_cross_ratio_matches_the_triple_normalizer(values):
    z, b1, b2, b3 = values
    assert cross_ratio(z, b1, b2, b3) == triple_normalizer(b1, b2, b3)(z)
    assert cross_ratio(INF, b1, b2, b3) == triple_normalizer(b1, b2, b3)(INF)


def test_quartic_cover(branch23):
    q1 = triple_quotient_curve(branch23, (1, 2, 3))
    assert q1.cover(F(2)) == F(25, 16)
    assert q1.cover(F(1)) == 1
    assert q1.cover.normalized_triple == (INF, 0, 1)
    assert quartic_factor(F(2)) == (1, 0, -6, 0, 1)
    assert q1.cover.fiber_polynomial(F(2)) == quartic_factor(F(2))


@given(nonzero)
def test_quartic_factor_roots_lie_over_their_branch_value(z):
    cover = triple_quotient_curve(BranchSet.from_lambdas([F(2), F(3)]), (3, 4, 5)).cover
    assert cover.normalized_triple == (F(1), F(2), F(3))
    mu = cross_ratio(cover(z), *cover.normalized_triple)
    assert evaluate(quartic_factor(mu), z) == 0


def test_cover_consistency_detects_a_wrong_normalizer(branch23):
    q1 = triple_quotient_curve(branch23, (1, 2, 3))
    assert verify_cover_consistency(q1)
    assert not verify_cover_consistency(q1, cover=QuarticNormalizer(triple_normalizer(F(0), INF, F(1))))
    assert not verify_cover_consistency(q1, expected=[F(2), F(5)])

    single = single_omission_curve(branch23, 1)
    assert verify_cover_consistency(single)
    broken = HyperellipticEquation(Shape.ROOT_LIST, (F(0), F(1), F(5, 3)), single.cover, single.expected)
    assert not verify_cover_consistency(broken)


def test_pair_consistency_rejects_critical_branch_values(branch23):
    c10 = pair_quotient_curve(branch23, (4, 5))
    assert not verify_cover_consistency(c10, expected=[INF, F(0), F(2)])
