"""Exceptional surface intersection theory: both marked-curve routes agree."""

from fractions import Fraction

import pytest

from toricdc.classifier import enumerate_types, parse_type
from toricdc.discrepancy import weight_multiplicity
from toricdc.germs import exponent_weights, parse_germ
from toricdc.surface import (
    adjunction_degree,
    build_star_model,
    gamma_tilde_sq_star,
    gamma_tilde_sq_wpp,
    weights_decomposition,
    wpp_ample,
    wpp_intersection,
    wpp_nef,
)

SMOOTH = parse_germ("smooth")


def test_weights_decomposition_frozen():
    assert weights_decomposition((6, 10, 15)) == (1, 1, 1, 5, 3, 2)
    assert weights_decomposition((3, 4, 6)) == (1, 2, 1, 2, 3, 1)
    assert weights_decomposition((4, 6, 9)) == (2, 1, 3, 3, 1, 2)
    assert weights_decomposition((1, 1, 1)) == (1, 1, 1, 1, 1, 1)


def test_weights_decomposition_properties():
    import math

    for b in ((2, 3, 5), (9, 10, 7), (4, 9, 1), (35, 6, 1)):
        a1, a2, a3, d1, d2, d3 = weights_decomposition(b)
        assert (a1 * d2 * d3, a2 * d1 * d3, a3 * d1 * d2) == b
        assert math.gcd(d1, d2) == math.gcd(d1, d3) == math.gcd(d2, d3) == 1


def test_weights_decomposition_errors():
    with pytest.raises(ValueError):
        weights_decomposition((2, 4, 6))
    with pytest.raises(ValueError):
        weights_decomposition((1, 2))
    with pytest.raises(ValueError):
        weights_decomposition((0, 1, 1))


def test_wpp_intersection():
    assert wpp_intersection((1, 2, 1), 2, 2) == 2
    assert wpp_intersection((2, 1, 3), 3, 3) == Fraction(3, 2)
    assert wpp_intersection((1, 1, 1), 1, 2) == 2
    with pytest.raises(ValueError):
        wpp_intersection((2, 1, 4), 1, 1)
    assert wpp_nef(0) and wpp_nef(Fraction(1, 2)) and not wpp_nef(-1)
    assert wpp_ample(1) and not wpp_ample(0)


def test_adjunction_degree():
    assert adjunction_degree((1, 1, 1), (1, 1, 1)) == -3
    assert adjunction_degree((1, 1, 1), (5, 3, 2)) == Fraction(-31, 30)
    assert adjunction_degree((1, 2, 1), (2, 3, 1)) == Fraction(-13, 6)


def test_e_type_curve_self_intersections():
    for label, expected in (
        ("E6", Fraction(-13, 6)),
        ("E7", Fraction(-19, 12)),
        ("E8", Fraction(-31, 30)),
    ):
        ct = parse_type(label)
        phi = ct.phi_spec()
        assert gamma_tilde_sq_star(SMOOTH, ct.weights(), phi) == expected
        assert gamma_tilde_sq_wpp(ct.weights(), phi) == expected


def test_dual_routes_agree_on_enumerated_types():
    for ct in enumerate_types(SMOOTH, 5):
        phi = ct.phi_spec()
        assert gamma_tilde_sq_star(SMOOTH, ct.weights(), phi) == gamma_tilde_sq_wpp(
            ct.weights(), phi
        )


def test_star_model_p2_sanity():
    model, ray, _fan = build_star_model(SMOOTH, (1, 1, 1))
    assert ray == (1, 1, 1)
    assert model.star.edge_indices == (1, 1, 1)
    # lines in P^2: self-intersection 1, adjacent pairing 1, K^2 = 9
    assert model.curve_pair(0, 0) == 1
    assert model.curve_pair(0, 1) == 1
    assert model.pair(model.kdiff_class(), model.kdiff_class()) == 9


def test_star_model_e7_frozen():
    ct = parse_type("E7")
    model, ray, _fan = build_star_model(SMOOTH, ct.weights())
    phi = ct.phi_spec()
    mult = weight_multiplicity(phi, exponent_weights(SMOOTH, ray))
    assert mult == 18
    assert model.kdiff_class() == (Fraction(-1, 2), Fraction(-1), Fraction(-1, 3))
    s_restr = model.s_restriction_class(SMOOTH)
    assert s_restr == (Fraction(-1, 38), Fraction(-1, 19), Fraction(-1, 57))
    gamma = tuple(-mult * x for x in s_restr)
    assert model.pair(model.kdiff_class(), gamma) == Fraction(-19, 12)
    assert model.pair(gamma, gamma) == Fraction(3, 2)
    # positivity: -S|_S is nef, the marked curve is ample, K + Diff is not nef
    assert model.nef([-x for x in s_restr])
    assert model.ample(gamma)
    assert not model.nef(model.kdiff_class())


def test_star_model_quadric():
    odp = parse_germ("odp")
    model, ray, _fan = build_star_model(odp, (1, 2, 2, 1))
    assert ray == (1, 2, 3)
    assert model.star.edge_indices == (1, 2, 1, 1)
    assert model.kdiff_class() == (
        Fraction(-1),
        Fraction(-1, 2),
        Fraction(-1),
        Fraction(-1),
    )
    assert [model.curve_pair(i, i) for i in range(4)] == [0, -1, 0, 1]
    # non-adjacent boundary curves on the square fan do not meet
    assert model.curve_pair(0, 2) == 0


def test_wpp_route_rejects_bad_curves():
    with pytest.raises(ValueError):
        gamma_tilde_sq_wpp((1, 1, 1), parse_type("E8").phi_spec())
