"""Fans: cone predicates, star subdivision, JSON round trip, star surfaces."""

import random
from fractions import Fraction

import pytest

from toricdc.exactmath import content, determinant, primitive
from toricdc.fan import (
    Cone,
    Fan,
    fan_from_json,
    germ_fan,
    secondary_ray,
    star_subdivide,
    star_surface,
)
from toricdc.germs import parse_germ

UNIT_CONE = Cone(((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def test_cone_validation():
    with pytest.raises(ValueError):
        Cone(((2, 0, 0), (0, 1, 0), (0, 0, 1)))
    with pytest.raises(ValueError):
        Cone(((1, 0, 0), (0, 1, 0)))
    with pytest.raises(ValueError):
        Cone(((1, 0, 0), (0, 1, 0), (1, 1, 0)))


def test_cone_contains_and_det():
    assert UNIT_CONE.contains((1, 1, 1))
    assert UNIT_CONE.contains((0, 0, 1))
    assert not UNIT_CONE.contains((-1, 0, 0))
    assert UNIT_CONE.det() == 1
    assert Cone(((1, 0, 0), (0, 1, 0), (1, 2, 3))).det() == 3
    square = Cone(((0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1)))
    assert square.contains((1, 1, 2))
    assert not square.contains((2, 0, 1))
    with pytest.raises(ValueError):
        square.det()


def test_star_subdivide_interior():
    fan = star_subdivide(germ_fan(parse_germ("smooth")), (1, 1, 2))
    assert len(fan.cones) == 3
    assert sorted(c.det() for c in fan.cones) == [1, 1, 2]
    assert (1, 1, 2) in fan.rays()


def test_star_subdivide_facet_point():
    fan = star_subdivide(Fan((Cone(((1, 0, 0), (0, 1, 0), (1, 2, 3))),)), (1, 3, 3))
    got = sorted(sorted(c.generators) for c in fan.cones)
    assert got == [
        [(0, 1, 0), (1, 0, 0), (1, 3, 3)],
        [(1, 0, 0), (1, 2, 3), (1, 3, 3)],
    ]


def test_star_subdivide_determinant_law():
    # child multiplicity = barycentric coefficient of the omitted generator
    rng = random.Random(99)
    for _ in range(40):
        while True:
            vs = [tuple(rng.randint(0, 4) for _ in range(3)) for _ in range(3)]
            if all(any(v) for v in vs):
                gens = [primitive(v) for v in vs]
                if determinant([list(g) for g in gens]) != 0:
                    break
        cone = Cone(tuple(gens))
        coeffs = tuple(rng.randint(1, 3) for _ in range(3))
        w = tuple(
            sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(3)
        )
        g = content(w)
        fan = star_subdivide(Fan((cone,)), w)
        dets = sorted(c.det() * g for c in fan.cones)
        assert dets == sorted(c * cone.det() for c in coeffs)


def test_star_subdivide_noop_and_errors():
    fan = germ_fan(parse_germ("smooth"))
    assert star_subdivide(fan, (0, 1, 0)) is fan
    assert star_subdivide(fan, (0, 3, 0)) is fan
    with pytest.raises(ValueError):
        star_subdivide(fan, (-1, 1, 1))


def test_fan_json_round_trip():
    fan = star_subdivide(germ_fan(parse_germ("odp")), (1, 2, 3))
    text = fan.to_json()
    back = fan_from_json(text)
    assert back.rays() == fan.rays()
    assert back.to_json() == text
    with pytest.raises(ValueError):
        fan_from_json('{"rank": 2, "cones": []}')


def test_star_surface_weighted_blowup():
    fan = star_subdivide(germ_fan(parse_germ("smooth")), (6, 10, 15))
    s = star_surface(fan, (6, 10, 15))
    assert s.center == (6, 10, 15)
    assert s.boundary_curve_count == 3
    assert s.source_rays == ((0, 0, 1), (0, 1, 0), (1, 0, 0))
    assert s.edge_indices == (2, 3, 5)
    assert s.rays == ((-1, 2), (0, -1), (1, -1))
    assert s.adjacent_determinants() == (1, 1, 1)
    # projection kills the center and preserves primitivity bookkeeping
    assert s.project(s.center) == (0, 0)
    for src, ray, d in zip(s.source_rays, s.rays, s.edge_indices):
        assert s.project(src) == tuple(d * x for x in ray)


def test_star_surface_quadric():
    fan = star_subdivide(germ_fan(parse_germ("odp")), (1, 2, 3))
    assert len(fan.cones) == 4
    s = star_surface(fan, (1, 2, 3))
    assert s.boundary_curve_count == 4
    assert s.source_rays == ((0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1))
    assert s.edge_indices == (1, 2, 1, 1)
    assert s.adjacent_determinants() == (1, 1, 1, 1)


def test_star_surface_errors():
    fan = germ_fan(parse_germ("smooth"))
    with pytest.raises(ValueError):
        star_surface(fan, (1, 1, 1))


def test_secondary_ray():
    assert secondary_ray((1, 2, 3), (0, 1, 0)) == (1, 3, 3)
