import json
import math

import pytest

import lagcob


@pytest.fixture(scope="module")
def surface():
    return lagcob.build_surface(2, 100.0)


def test_surface_shape(surface):
    assert surface.genus == 2
    assert surface.num_sides == 8
    with pytest.raises(ValueError):
        lagcob.build_surface(1, 1.0)


def test_lickorish_classes(surface):
    a, b = lagcob.alpha(surface, 1), lagcob.beta(surface, 1)
    assert lagcob.homology_class(a) == [1, 0, 0, 0]
    assert lagcob.homology_class(b) == [0, 1, 0, 0]
    assert lagcob.is_unobstructed(a)
    assert len(lagcob.intersections(a, b)) == 1
    assert lagcob.floer_rank(a, b) == 1


def test_class_is_odd_under_reversal(surface):
    c = lagcob.from_word("a1b1A2", surface)
    k, r = lagcob.class_of(c), lagcob.class_of(c.reversed())
    assert math.isclose(k["hol"], -r["hol"], abs_tol=1e-9)
    assert [x + y for x, y in zip(k["h"], r["h"])] == [0, 0, 0, 0]


def test_json_round_trip(surface):
    c = lagcob.kinked("a1", surface)
    back = lagcob.Curve.from_json(c.to_json())
    assert back.to_json() == c.to_json()
    assert not lagcob.is_unobstructed(back)


def test_surgery_and_twist(surface):
    a, b = lagcob.alpha(surface, 1), lagcob.beta(surface, 1)
    s = lagcob.surgery(a, b, 0)
    assert lagcob.homology_class(s) == [1, 1, 0, 0]
    t = lagcob.dehn_twist(a, b)
    assert lagcob.homology_class(t) == [-1, 1, 0, 0]
    with pytest.raises(IndexError):
        lagcob.surgery(a, b, 3)


def test_push_off(surface):
    a = lagcob.alpha(surface, 1)
    p = lagcob.push_off(a, 2.0)
    assert math.isclose(lagcob.holonomy(p) - lagcob.holonomy(a), 2.0, abs_tol=1e-6)


def test_floer_complex_json(surface):
    fc = lagcob.floer_complex(lagcob.alpha(surface, 1), lagcob.beta(surface, 1))
    assert len(fc["generators"]) == 1
    json.dumps(fc)


def test_suite_and_render(surface):
    r = lagcob.run_suite("mcg", 2, 7)
    assert r["pass"]
    svg = lagcob.render_svg([lagcob.alpha(surface, 1), lagcob.beta(surface, 1)])
    assert svg.startswith("<?xml")
    assert "mcg" in lagcob.suite_names()
