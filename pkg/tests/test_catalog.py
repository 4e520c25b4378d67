import math
from fractions import Fraction

import numpy as np
import pytest

from tzitzeica.catalog import (
    ChartParams,
    calabi,
    catalog_entries,
    classical_bowl,
    get_surface,
    implicit_surface,
    new_hypersurface,
    profile_field,
    rotation_chart,
    unit_sphere,
    vrancken_surfaces,
)
from tzitzeica.errors import DomainError
from tzitzeica.field import evaluate, parse_field, to_text
from tzitzeica.kernel import tzitzeica_invariant
from tzitzeica.streams import stream


def test_new_hypersurface_fields():
    assert new_hypersurface(2).field == parse_field("x3^2*(x1^2 + x2^2)^2 - 1")
    assert new_hypersurface(1).field == parse_field("x2^2*(x1^2)^1 - 1")
    spec = new_hypersurface(2)
    assert evaluate(spec.field, [1, 0, 1]) == 0
    assert evaluate(spec.field, [0, 2, 0.25]) == 0
    # n = 1 is the hyperbola branch x2 = 1/x1
    assert evaluate(new_hypersurface(1).field, [4.0, 0.25]) == 0


def test_n_out_of_range():
    for bad in (0, 17, 2.5):
        with pytest.raises(ValueError):
            new_hypersurface(bad)
        with pytest.raises(ValueError):
            calabi(bad)
        with pytest.raises(ValueError):
            unit_sphere(bad)


def test_new_hypersurface_expected_values():
    assert new_hypersurface(2).expected_invariant == Fraction(-4, 27)
    assert new_hypersurface(3).expected_invariant == Fraction(-27, 256)
    assert new_hypersurface(1).expected_invariant == Fraction(-1, 4)


def test_bowl():
    spec = classical_bowl()
    assert spec.field == parse_field("x3*(x1^2 + x2^2) - 1")
    assert evaluate(spec.field, [1, 0, 1]) == 0
    assert evaluate(spec.field, [0, 0.5, 4]) == 0
    assert tzitzeica_invariant(spec.field, [1, 0, 1]).tzitzeica == pytest.approx(-4 / 27, rel=1e-12)


def test_calabi_examples():
    spec = calabi(2)
    assert tzitzeica_invariant(spec.field, [1, 1, 1]).tzitzeica == pytest.approx(1 / 27, rel=1e-12)
    assert evaluate(spec.field, [2, 0.5, 1]) == 0
    assert tzitzeica_invariant(calabi(3).field, [1, 1, 1, 1]).tzitzeica == pytest.approx(-1 / 256, rel=1e-12)
    assert calabi(3).expected_invariant == Fraction(-1, 256)


def test_sphere_examples():
    spec = unit_sphere(2)
    for p in ([0, 0, 1], [1, 0, 0]):
        assert tzitzeica_invariant(spec.field, p).tzitzeica == 1
    for i in range(50):
        assert tzitzeica_invariant(spec.field, spec.sample(9, i)).tzitzeica == pytest.approx(1, abs=1e-12)


def test_vrancken_points_on_surface():
    a, b = vrancken_surfaces()
    assert (a.n, b.n) == (3, 4)
    assert a.expected_invariant is None and b.expected_invariant is None
    assert evaluate(a.field, [1, math.sqrt(2), 1, 0]) == pytest.approx(0, abs=1e-14)
    assert evaluate(b.field, [1, math.sqrt(2), 0, 0, 1]) == pytest.approx(0, abs=1e-14)


def test_vrancken_samplers_stay_on_one_sheet():
    for spec in vrancken_surfaces():
        for i in range(200):
            p = spec.sample(0, i)
            q = p[1] ** 2 - float(p[2:] @ p[2:])
            assert q > 0.25
            assert p[0] > 0 and p[1] > 0


ALL = catalog_entries(range(1, 7)) + [new_hypersurface(3, branch=-1)]


@pytest.mark.parametrize("spec", ALL, ids=lambda s: f"{s.name}-{s.n}")
def test_samplers_land_on_surface(spec):
    for i in range(1000):
        p = spec.sample(123, i)
        assert p.shape == (spec.n + 1,)
        assert abs(evaluate(spec.field, p)) <= 1e-9


@pytest.mark.parametrize("spec", ALL, ids=lambda s: f"{s.name}-{s.n}")
def test_samplers_are_deterministic(spec):
    for i in (0, 1, 57):
        assert np.array_equal(spec.sample(8, i), spec.sample(8, i))
    assert not np.array_equal(spec.sample(8, 0), spec.sample(8, 1))
    assert not np.array_equal(spec.sample(8, 0), spec.sample(9, 0))


def test_negative_branch():
    spec = new_hypersurface(2, branch=-1)
    p = spec.sample(0, 0)
    assert p[-1] < 0
    with pytest.raises(ValueError):
        new_hypersurface(2, branch=0)


def test_new_hypersurface_radius_range():
    spec = new_hypersurface(4)
    radii = [np.linalg.norm(spec.sample(1, i)[:4]) for i in range(500)]
    assert 0.3 <= min(radii) and max(radii) <= 3.0


def test_stream_independent_of_order():
    a = [stream(5, i).random() for i in range(10)]
    b = [stream(5, i).random() for i in reversed(range(10))][::-1]
    assert a == b
    stream(-1, 0).random()
    with pytest.raises(ValueError):
        stream(0, -1)


# -- rotation chart -----------------------------------------------------------

T = parse_field("x1")


def test_rotation_chart_examples():
    np.testing.assert_allclose(rotation_chart(ChartParams((0, 1), T**-2)), [0, -1, 1])
    np.testing.assert_allclose(rotation_chart(ChartParams((1, 1), T**-2)), [1, 0, 1])
    np.testing.assert_allclose(rotation_chart(ChartParams((0, 0, 2), T**-3)), [0, 0, -2, 1 / 8])


def test_rotation_chart_rejects_nonpositive_radius():
    with pytest.raises(DomainError):
        ChartParams((1.0, 0.0), T**-2)
    with pytest.raises(DomainError):
        ChartParams((1.0, -2.0), T**-2)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_rotation_chart_radius_identity(n):
    # x1^2 + ... + xn^2 = un^2
    rng = np.random.default_rng(n)
    for _ in range(100):
        u = np.append(rng.uniform(-3, 3, n - 1), rng.uniform(0.1, 4))
        p = rotation_chart(ChartParams(tuple(u), T ** (-n)))
        assert float(p[:n] @ p[:n]) == pytest.approx(u[-1] ** 2, rel=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_chart_image_lies_on_profile_field(n):
    field = profile_field(n, T ** (-n))
    rng = np.random.default_rng(100 + n)
    for _ in range(100):
        u = np.append(rng.uniform(-3, 3, n - 1), rng.uniform(0.3, 3))
        p = rotation_chart(ChartParams(tuple(u), T ** (-n)))
        assert abs(evaluate(field, p)) <= 1e-12 * max(1.0, abs(p[-1]))


def test_profile_field_examples():
    assert to_text(profile_field(2, T**-2)) == "(x1^2 + x2^2)^-1 - x3"
    assert to_text(profile_field(2, T**2)) == "x1^2 + x2^2 - x3"
    assert evaluate(profile_field(2, T**-2), [1, 0, 1]) == 0
    # odd powers keep the square root
    assert "sqrt" in to_text(profile_field(2, T**-3))
    assert evaluate(profile_field(2, T**-3), [0, 2, 1 / 8]) == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_profile_and_new_hypersurface_share_zero_set(n):
    graph = profile_field(n, T ** (-n))
    spec = new_hypersurface(n)
    for i in range(200):
        assert abs(evaluate(graph, spec.sample(4, i))) <= 1e-9
    rng = np.random.default_rng(n)
    for _ in range(200):
        u = np.append(rng.uniform(-3, 3, n - 1), rng.uniform(0.3, 3))
        p = rotation_chart(ChartParams(tuple(u), T ** (-n)))
        assert abs(evaluate(spec.field, p)) <= 1e-9


def test_profile_field_invariant_has_opposite_sign_for_odd_n():
    # F = f(r) - x_(n+1) has the gradient of the other defining function reversed
    for n in (1, 2, 3):
        graph = profile_field(n, T ** (-n))
        p = new_hypersurface(n).sample(0, 0)
        tz = tzitzeica_invariant(graph, p).tzitzeica
        assert tz == pytest.approx((-1) ** n * float(new_hypersurface(n).expected_invariant), rel=1e-10)


def test_implicit_surface_newton_sampler():
    spec = implicit_surface(parse_field("x3 - x1^2 - x2^4"))
    assert spec.n == 2
    for i in range(50):
        assert abs(evaluate(spec.field, spec.sample(1, i))) <= 1e-12
    assert np.array_equal(spec.sample(1, 3), spec.sample(1, 3))


def test_get_surface_and_listing():
    assert get_surface("tzitzeica", 3).n == 3
    assert get_surface("Bowl").name == "bowl"
    assert get_surface("vrancken4").n == 4
    with pytest.raises(KeyError):
        get_surface("torus")
    listing = [s.to_dict() for s in catalog_entries((2,))]
    names = [d["name"] for d in listing]
    assert names == ["tzitzeica", "calabi", "sphere", "bowl", "vrancken3", "vrancken4"]
    assert listing[0] == {
        "name": "tzitzeica",
        "n": 2,
        "field": "x3^2*(x1^2 + x2^2)^2 - 1",
        "expected": "-4/27",
    }
    assert listing[-1]["expected"] is None
