"""Germ models: parsing, lattices, dual pairings, blow-up weight validation."""

from fractions import Fraction

import pytest

from toricdc.exactmath import content, dot
from toricdc.germs import (
    GermSpec,
    ambient_to_lattice,
    blowup_ray,
    cone_rays,
    exponent_dim,
    exponent_weights,
    germ_label,
    index,
    k_weight,
    lattice_to_ambient,
    odp_dual_generators,
    parse_germ,
)


def test_parse_round_trip():
    for text in ("smooth", "odp", "cyclic:7,2", "cyclic:5,3"):
        spec = parse_germ(text)
        assert germ_label(spec) == text
    assert parse_germ(" smooth ") == GermSpec("smooth")


@pytest.mark.parametrize(
    "text",
    ["cyclic:7", "cyclic:a,b", "weird", "cyclic:4,2", "cyclic:5,5", "cyclic:1,1"],
)
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_germ(text)


def test_spec_validation():
    with pytest.raises(ValueError):
        GermSpec("smooth", 2, 0)
    with pytest.raises(ValueError):
        GermSpec("cyclic", 7, 0)
    with pytest.raises(ValueError):
        GermSpec("torus")


def test_index_and_dims():
    assert index(parse_germ("smooth")) == 1
    assert index(parse_germ("odp")) == 1
    assert index(parse_germ("cyclic:7,2")) == 7
    assert exponent_dim(parse_germ("smooth")) == 3
    assert exponent_dim(parse_germ("odp")) == 4


def test_cyclic_lattice_round_trip():
    spec = parse_germ("cyclic:7,2")
    rays = cone_rays(spec)
    for i, ray in enumerate(rays):
        assert content(ray) == 1
        amb = lattice_to_ambient(spec, ray)
        assert amb == tuple(Fraction(int(i == j)) for j in range(3))
        assert ambient_to_lattice(spec, amb) == ray
    # the distinguished deep point (1, r-q, q)/r is a lattice point
    deep_amb = (Fraction(1, 7), Fraction(5, 7), Fraction(2, 7))
    c = ambient_to_lattice(spec, deep_amb)
    assert lattice_to_ambient(spec, c) == deep_amb
    assert k_weight(spec, c) == Fraction(8, 7)
    assert exponent_weights(spec, c) == deep_amb


def test_cyclic_non_lattice_point_rejected():
    spec = parse_germ("cyclic:7,2")
    with pytest.raises(ValueError):
        ambient_to_lattice(spec, (Fraction(1, 7), Fraction(1, 7), Fraction(1, 7)))
    with pytest.raises(ValueError):
        ambient_to_lattice(parse_germ("smooth"), (Fraction(1, 2), 0, 0))


def test_smooth_weights_are_identity():
    spec = parse_germ("smooth")
    assert exponent_weights(spec, (2, 3, 4)) == (2, 3, 4)
    assert k_weight(spec, (1, 1, 1)) == 3
    assert cone_rays(spec) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_odp_duals_and_pairings():
    spec = parse_germ("odp")
    duals = odp_dual_generators()
    m1, m2, m3, m4 = duals
    assert tuple(a + b for a, b in zip(m1, m2)) == tuple(a + b for a, b in zip(m3, m4))
    for m in duals:
        for ray in cone_rays(spec):
            assert dot(m, ray) >= 0
    ray = blowup_ray(spec, (1, 2, 2, 1))
    assert ray == (1, 2, 3)
    assert exponent_weights(spec, ray) == (1, 2, 2, 1)
    assert k_weight(spec, ray) == 3


def test_blowup_ray_validation():
    smooth = parse_germ("smooth")
    assert blowup_ray(smooth, (6, 10, 15)) == (6, 10, 15)
    with pytest.raises(ValueError):
        blowup_ray(smooth, (2, 4, 6))
    with pytest.raises(ValueError):
        blowup_ray(smooth, (1, 2))
    with pytest.raises(ValueError):
        blowup_ray(smooth, (0, 1, 1))

    odp = parse_germ("odp")
    with pytest.raises(ValueError):
        blowup_ray(odp, (1, 2, 3, 4))
    with pytest.raises(ValueError):
        blowup_ray(odp, (2, 2, 2, 2))
    with pytest.raises(ValueError):
        blowup_ray(odp, (1, 1, 1))


def test_blowup_ray_cyclic():
    spec = parse_germ("cyclic:7,2")
    ray = blowup_ray(spec, (Fraction(1, 7), Fraction(5, 7), Fraction(2, 7)))
    assert content(ray) == 1
    assert lattice_to_ambient(spec, ray) == (
        Fraction(1, 7),
        Fraction(5, 7),
        Fraction(2, 7),
    )
    with pytest.raises(ValueError):
        blowup_ray(spec, (Fraction(1, 7), Fraction(1, 7), Fraction(1, 7)))
    with pytest.raises(ValueError):
        blowup_ray(spec, (2, 2, 2))
