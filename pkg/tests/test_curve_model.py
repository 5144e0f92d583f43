"""Tests for the numeric projective model of the Humbert curve."""
from fractions import Fraction as F

import pytest

from humbert.curve_model import (
    PRECISION_ENV,
    CurveSystem,
    PrecisionContext,
    ProjectivePoint,
    apply_automorphism,
    fixed_locus,
    project,
    residual,
    sample_fiber,
    sampled_genus,
)
from humbert.errors import HumbertDomainError
from humbert.moduli_action import ParameterTuple
from humbert.projective_line import INF

C23 = CurveSystem(ParameterTuple((F(2), F(3))))
C235 = CurveSystem(ParameterTuple((F(2), F(3), F(5))))


def exact_point(prec):
    """[1 : 2i : sqrt 3 : sqrt 2 : 1] on C(2, 3)."""
    ctx = prec.ctx
    return ProjectivePoint((ctx.mpc(1), ctx.mpc(0, 2), ctx.mpc(ctx.sqrt(3)), ctx.mpc(ctx.sqrt(2)), ctx.mpc(1)))


def nearest(points, target):
    return min(pt.distance(target) for pt in points)


def test_precision_from_env(monkeypatch):
    monkeypatch.setenv(PRECISION_ENV, "256")
    assert PrecisionContext.from_env().bits == 256
    monkeypatch.setenv(PRECISION_ENV, "32")
    with pytest.raises(HumbertDomainError):
        PrecisionContext.from_env()
    monkeypatch.setenv(PRECISION_ENV, "lots")
    with pytest.raises(HumbertDomainError):
        PrecisionContext.from_env()
    monkeypatch.delenv(PRECISION_ENV)
    assert PrecisionContext.from_env().bits == 128


def test_tolerance_default(prec):
    assert prec.tolerance == prec.ctx.mpf(2) ** -64


def test_residual_of_exact_point(prec):
    assert residual(C23, exact_point(prec), prec) <= prec.tolerance


def test_residual_detects_perturbation(prec):
    coords = list(exact_point(prec).coords)
    coords[2] += prec.ctx.mpf("1e-3")
    assert residual(C23, ProjectivePoint(tuple(coords)), prec) > prec.tolerance


def test_residual_of_fixed_point_of_a4(prec):
    ctx = prec.ctx
    pt = ProjectivePoint((ctx.mpc(1), ctx.sqrt(ctx.mpc(-2)), ctx.sqrt(ctx.mpc(1)), ctx.mpc(0), ctx.sqrt(ctx.mpc(-1))))
    assert residual(C23, pt, prec) <= prec.tolerance
    assert abs(project(pt) - 2) <= prec.tolerance


def test_residual_rejects_wrong_dimension(prec):
    with pytest.raises(HumbertDomainError):
        residual(C235, exact_point(prec), prec)


def test_apply_automorphism(prec):
    pt = exact_point(prec)
    flipped = apply_automorphism(pt, 3)
    assert residual(C23, flipped, prec) <= prec.tolerance
    assert flipped.distance(ProjectivePoint.normalized(pt.coords)) > 1

    twice = apply_automorphism(apply_automorphism(pt, 1), 1)
    assert twice.distance(ProjectivePoint.normalized(pt.coords)) <= prec.tolerance

    last = list(pt.coords)
    last[4] = -last[4]
    assert apply_automorphism(pt, 5).distance(ProjectivePoint.normalized(last)) <= prec.tolerance

    with pytest.raises(HumbertDomainError):
        apply_automorphism(pt, 6)


def test_project(prec):
    assert abs(project(exact_point(prec)) - 4) <= prec.tolerance
    ctx = prec.ctx
    at_infinity = ProjectivePoint((ctx.mpc(0), ctx.mpc(1), ctx.mpc(0, 1), ctx.mpc(0, 1), ctx.mpc(0, 1)))
    assert project(at_infinity) is INF


def test_regular_fiber_contains_exact_point(prec):
    fiber = sample_fiber(C23, F(4), prec)
    assert len(fiber) == 16
    assert nearest(fiber, ProjectivePoint.normalized(exact_point(prec).coords)) <= prec.tolerance
    assert len({pt.key() for pt in fiber}) == 16


@pytest.mark.parametrize("z, vanishing", [(F(2), 3), (F(0), 1), (F(1), 2), (F(3), 4)])
def test_branch_fibers(prec, z, vanishing):
    fiber = sample_fiber(C23, z, prec)
    assert len(fiber) == 8
    assert all(abs(pt.coords[vanishing]) <= prec.tolerance for pt in fiber)


def test_fiber_over_infinity(prec):
    fiber = sample_fiber(C23, INF, prec)
    assert len(fiber) == 8
    assert all(project(pt) is INF for pt in fiber)


def test_projection_is_invariant(prec):
    for pt in sample_fiber(C235, F(-1, 3), prec):
        z = project(pt)
        for j in range(1, 7):
            assert abs(project(apply_automorphism(pt, j)) - z) <= prec.tolerance


def test_fixed_locus(prec):
    for j in range(1, 6):
        locus = fixed_locus(C23, j, prec)
        assert len(locus) == 8
        assert all(abs(pt.coords[j - 1]) <= prec.tolerance for pt in locus)
    with pytest.raises(HumbertDomainError):
        fixed_locus(C23, 0, prec)


def test_sample_fiber_rejects_non_numbers(prec):
    with pytest.raises(HumbertDomainError):
        sample_fiber(C23, "4", prec)


@pytest.mark.parametrize("system, genus", [(C23, 5), (C235, 17)])
def test_sampled_genus(prec, system, genus):
    assert sampled_genus(system, prec) == genus
