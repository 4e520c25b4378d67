import dataclasses
import json
from fractions import Fraction

import numpy as np
import pytest
import sympy

from tzitzeica.catalog import (
    calabi,
    classical_bowl,
    implicit_surface,
    new_hypersurface,
    unit_sphere,
    vrancken_surfaces,
)
from tzitzeica.errors import AllPointsDegenerate, DomainError, SamplingError
from tzitzeica.field import parse_field
from tzitzeica.kernel import Orientation, tzitzeica_invariant
from tzitzeica.verifier import (
    condition_residual,
    degree_balance,
    ode_residual,
    solve_exponent,
    tz_closed_form,
    verify_constancy,
)

T = parse_field("x1")


def test_verify_new_hypersurface():
    report = verify_constancy(new_hypersurface(2), 1000, 42, Orientation.PAPER, 1e-8)
    assert report.passed
    assert not report.skipped
    assert abs(abs(report.mean) - 4 / 27) <= 1e-9
    assert report.mean < 0
    assert report.expected == Fraction(-4, 27)


def test_verify_sphere():
    report = verify_constancy(unit_sphere(3), 100, 7)
    assert report.passed
    assert report.mean == pytest.approx(1, abs=1e-12)


def test_verify_detects_non_constant_invariant():
    f = parse_field("x3 - x1^2 - x2^4")
    a = tzitzeica_invariant(f, [1, 0, 1]).tzitzeica
    b = tzitzeica_invariant(f, [0, 1, 1]).tzitzeica
    assert a != pytest.approx(b)
    report = verify_constancy(implicit_surface(f), 200, 1)
    assert not report.passed
    assert len(report.values) + len(report.skipped) == 200


def test_verify_opposite_orientation_flips_expected():
    report = verify_constancy(calabi(3), 100, 0, Orientation.OPPOSITE)
    assert report.expected == Fraction(1, 256)
    assert report.passed
    report = verify_constancy(calabi(2), 100, 0, "opposite")
    assert report.expected == Fraction(1, 27)


def test_verify_wrong_expectation_fails():
    spec = dataclasses.replace(classical_bowl(), expected_invariant=Fraction(4, 27))
    report = verify_constancy(spec, 50, 0)
    assert not report.passed
    assert report.max_abs_deviation < 1e-12


def test_verify_requires_two_samples():
    with pytest.raises(ValueError):
        verify_constancy(unit_sphere(2), 1)


def test_verify_all_degenerate():
    # every sample of a cone has its tangent plane through the origin
    cone = implicit_surface(parse_field("x1^2 + x2^2 - x3^2"))
    with pytest.raises(AllPointsDegenerate):
        verify_constancy(cone, 10, 0)


def test_report_deterministic_across_workers():
    spec = vrancken_surfaces()[0]
    a = verify_constancy(spec, 300, 99, workers=1)
    b = verify_constancy(spec, 300, 99, workers=4)
    assert a.to_json() == b.to_json()
    assert a.to_csv() == b.to_csv()
    assert a.mean == b.mean
    assert np.array_equal(a.invariants, b.invariants)


def test_report_serialization():
    report = verify_constancy(new_hypersurface(2), 5, 3)
    doc = json.loads(report.to_json())
    assert list(doc) == [
        "name", "n", "orientation", "seed", "count", "mean",
        "maxAbsDeviation", "expected", "pass", "skipped",
    ]
    assert doc["expected"] == "-4/27"
    assert doc["pass"] is True and doc["skipped"] == []
    lines = report.to_csv().splitlines()
    assert lines[0] == "x1,x2,x3,K,d,Tz"
    assert len(lines) == 6
    assert float(lines[1].split(",")[-1]) == pytest.approx(-4 / 27, rel=1e-12)


def test_skipped_points_are_reported():
    base = unit_sphere(2)

    def flaky(seed, index):
        if index % 2:
            raise SamplingError("odd index")
        return base.sample(seed, index)

    report = verify_constancy(dataclasses.replace(base, sampler=flaky), 20, 0)
    assert report.passed
    assert [s.index for s in report.skipped] == list(range(1, 20, 2))
    assert len(report.values) == 10
    assert report.to_dict()["skipped"][0] == {"index": 1, "reason": "SamplingError: odd index"}


# -- condition residual --------------------------------------------------------


def test_condition_residual_examples():
    f = parse_field("x3^2*(x1^2 + x2^2)^2 - 1")
    # 192 + (-4/27) * 6^4 == 0
    assert condition_residual(f, [1, 0, 1], Fraction(-4, 27)) <= 1e-10
    sphere = unit_sphere(2).field
    assert condition_residual(sphere, [0, 0, 1], Fraction(1)) <= 1e-15
    assert condition_residual(sphere, [0, 0, 1], Fraction(2)) > 0.1


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_condition_residual_equivalent_to_invariant(n):
    spec = new_hypersurface(n)
    for i in range(100):
        p = spec.sample(42, i)
        tz = tzitzeica_invariant(spec.field, p).tzitzeica
        assert condition_residual(spec.field, p, tz) <= 1e-9
        assert condition_residual(spec.field, p, spec.expected_invariant) <= 1e-9


# -- ODE ----------------------------------------------------------------------


def test_ode_residual_examples():
    assert ode_residual(2, T**-2, 1.5, Fraction(4, 27)) <= 1e-10
    assert ode_residual(3, T**-3, 0.7, Fraction(-27, 256)) <= 1e-10
    # f = t^2: f' = 2, f'' = 2, t f' - f = 1, so residual terms are 4 and 4/27
    r = ode_residual(2, T**2, 1.0, Fraction(4, 27))
    assert r == pytest.approx((4 + 4 / 27) / 4, rel=1e-14)


def test_ode_residual_domain():
    with pytest.raises(DomainError):
        ode_residual(2, T**-2, 0.0, Fraction(4, 27))
    with pytest.raises(DomainError):
        ode_residual(2, parse_field("sqrt(x1 - 1)"), 0.5, Fraction(1))


@pytest.mark.parametrize("n", range(1, 7))
def test_ode_residual_vanishes_for_power_profile(n):
    for t in np.arange(0.5, 5.01, 0.5):
        assert ode_residual(n, T ** (-n), float(t), tz_closed_form(n)) <= 1e-9


def test_ode_rejects_printed_constant_with_wrong_sign():
    assert ode_residual(2, T**-2, 1.5, Fraction(-4, 27)) > 0.5


# -- exponent and constant ---------------------------------------------------


def test_solve_exponent_examples():
    assert solve_exponent(2) == -2
    assert solve_exponent(1) == -1
    assert solve_exponent(50) == -50


@pytest.mark.parametrize("n", range(1, 51))
def test_solve_exponent_against_sympy(n):
    a = sympy.Symbol("a")
    lhs = a - 2 + (a - 1) * (n - 1)
    rhs = n - 1 + a * (n + 2)
    (root,) = sympy.solve(sympy.Eq(lhs, rhs), a)
    assert solve_exponent(n) == Fraction(int(root.p), int(root.q))
    f_lhs, f_rhs = degree_balance(n)
    assert f_lhs(solve_exponent(n)) == f_rhs(solve_exponent(n))


def test_solve_exponent_rejects_bad_n():
    with pytest.raises(ValueError):
        solve_exponent(0)


def test_tz_closed_form_examples():
    assert tz_closed_form(2) == Fraction(4, 27)
    assert tz_closed_form(3) == Fraction(-27, 256)
    assert tz_closed_form(1) == Fraction(-1, 4)
    big = tz_closed_form(200)
    assert big.denominator == 201**201
    with pytest.raises(ValueError):
        tz_closed_form(0)
    with pytest.raises(ValueError):
        tz_closed_form(201)


@pytest.mark.parametrize("n", range(1, 7))
def test_closed_form_magnitude_matches_geometry(n):
    spec = new_hypersurface(n)
    assert abs(spec.expected_invariant) == abs(tz_closed_form(n))
