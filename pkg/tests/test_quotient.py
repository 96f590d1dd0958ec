"""Cyclic quotient types: normal forms, Reid-Tai ages, cone and plane quotients."""

import math
import random
from fractions import Fraction

import pytest

from toricdc.exactmath import determinant, hermite_basis
from toricdc.quotient import (
    CyclicQuotientType,
    TwoDimType,
    ages,
    cone_to_quotient,
    normalize,
    quotient_2d,
    reid_tai_classify,
    render,
    same_type,
    terminal_weight_triples,
    verify_terminal_lemma,
)


def quotient_oracle(gens, t):
    """The returned type must describe Z^n / <gens> exactly.

    The distinguished point p = sum(w_i g_i) / r has to be a lattice point
    whose class generates the quotient: order exactly r, and together with
    the cone generators it spans the whole lattice.
    """
    n = len(gens[0])
    assert t.r == abs(determinant([list(g) for g in gens]))
    num = [sum(w * g[i] for w, g in zip(t.weights, gens)) for i in range(n)]
    assert all(x % t.r == 0 for x in num)
    p = tuple(x // t.r for x in num)
    assert math.gcd(t.r, *t.weights) == 1
    full = hermite_basis([tuple(g) for g in gens] + [p])
    assert abs(determinant([list(row) for row in full])) == 1


def test_type_validation_and_render():
    with pytest.raises(ValueError):
        CyclicQuotientType(0, (1, 1, 1))
    assert render(CyclicQuotientType(3, (1, 1, 2))) == "1/3(1,1,2)"
    assert render(CyclicQuotientType(1, (0, 0, 0))) == "1/1(0,0,0)"
    assert str(CyclicQuotientType(5, (1, 1, 4))) == "1/5(1,1,4)"


def test_normalize_units_and_faithfulness():
    # unit multiple of the weights is the same type
    assert same_type(CyclicQuotientType(3, (2, 2, 1)), CyclicQuotientType(3, (1, 1, 2)))
    assert same_type(CyclicQuotientType(5, (1, 2, 3)), CyclicQuotientType(5, (4, 3, 2)))
    assert not same_type(CyclicQuotientType(5, (1, 2, 3)), CyclicQuotientType(5, (1, 1, 4)))
    # permutation invariance
    assert same_type(CyclicQuotientType(7, (1, 2, 4)), CyclicQuotientType(7, (4, 1, 2)))
    # non-faithful weights reduce the order
    assert render(normalize(CyclicQuotientType(4, (2, 0, 2)))) == "1/2(0,1,1)"
    assert normalize(CyclicQuotientType(1, (0, 0, 0))).r == 1


def test_normalize_idempotent_random():
    rng = random.Random(31)
    for _ in range(200):
        r = rng.randint(1, 24)
        t = CyclicQuotientType(r, tuple(rng.randrange(r) if r > 1 else 0 for _ in range(3)))
        n = normalize(t)
        assert normalize(n) == n
        assert same_type(t, n)
        # every unit multiple lands on the same normal form
        for u in range(1, n.r):
            if math.gcd(u, n.r) == 1:
                scaled = CyclicQuotientType(n.r, tuple(u * w % n.r for w in n.weights))
                assert normalize(scaled) == n


def test_ages_frozen():
    got = ages(CyclicQuotientType(5, (1, 2, 3)))
    assert got == {
        1: Fraction(6, 5),
        2: Fraction(7, 5),
        3: Fraction(8, 5),
        4: Fraction(9, 5),
    }


@pytest.mark.parametrize(
    "r, weights, expected",
    [
        (1, (0, 0, 0), "Smooth"),
        (2, (1, 1, 1), "Terminal"),
        (5, (1, 2, 3), "Terminal"),
        (12, (1, 5, 7), "Terminal"),
        (6, (1, 3, 5), "CanonicalNotTerminal"),
        (4, (2, 1, 3), "CanonicalNotTerminal"),
        (3, (1, 1, 0), "NotCanonical"),
    ],
)
def test_reid_tai_frozen(r, weights, expected):
    assert reid_tai_classify(CyclicQuotientType(r, weights)) == expected


def test_cone_to_quotient_frozen():
    assert render(cone_to_quotient(((1, 0, 0), (0, 1, 0), (0, 0, 1)))) == "1/1(0,0,0)"
    t = cone_to_quotient(((1, 0, 0), (0, 1, 0), (1, 2, 3)))
    assert (t.r, t.weights) == (3, (2, 1, 1))
    quotient_oracle(((1, 0, 0), (0, 1, 0), (1, 2, 3)), t)


def test_cone_to_quotient_random_oracle():
    rng = random.Random(4242)
    checked = 0
    while checked < 150:
        gens = tuple(tuple(rng.randint(-4, 4) for _ in range(3)) for _ in range(3))
        if determinant([list(g) for g in gens]) == 0:
            continue
        try:
            t = cone_to_quotient(gens)
        except ValueError:
            continue  # non-cyclic quotient group
        quotient_oracle(gens, t)
        checked += 1


def test_cone_to_quotient_errors():
    with pytest.raises(ValueError):
        cone_to_quotient(((1, 1, 0), (1, -1, 0), (1, 1, 2)))  # Z/2 x Z/2
    with pytest.raises(ValueError):
        cone_to_quotient(((1, 0, 0), (0, 1, 0)))


def test_quotient_2d_frozen():
    assert quotient_2d((1, 0), (1, 2)) == TwoDimType(2, 1)
    assert quotient_2d((0, 1), (3, 1)) == TwoDimType(3, 2)
    assert quotient_2d((1, 0), (0, 1)) == TwoDimType(1, 0)
    assert str(TwoDimType(4, 3)) == "1/4(1,3)"
    with pytest.raises(ValueError):
        quotient_2d((1, 0), (2, 0))


def test_quotient_2d_random_oracle():
    rng = random.Random(77)
    checked = 0
    while checked < 150:
        u = (rng.randint(-5, 5), rng.randint(-5, 5))
        v = (rng.randint(-5, 5), rng.randint(-5, 5))
        d = abs(u[0] * v[1] - u[1] * v[0])
        if d == 0 or math.gcd(*u) != 1 or math.gcd(*v) != 1:
            continue
        t = quotient_2d(u, v)
        assert t.gamma == d
        # p = (u + b v) / gamma generates the quotient together with u, v
        num = [u[i] + t.b * v[i] for i in range(2)]
        assert all(x % t.gamma == 0 for x in num)
        p = tuple(x // t.gamma for x in num)
        full = hermite_basis([u, v, p])
        assert abs(determinant([list(row) for row in full])) == 1
        checked += 1


def test_terminal_weight_triples_frozen():
    assert terminal_weight_triples(5) == [
        (1, 1, 4),
        (1, 2, 3),
        (1, 2, 4),
        (1, 3, 4),
        (1, 4, 4),
        (2, 2, 3),
        (2, 3, 3),
        (2, 3, 4),
    ]
    # every triple really is terminal, and the list is exhaustive up to order
    for w in terminal_weight_triples(7):
        assert reid_tai_classify(CyclicQuotientType(7, w)) == "Terminal"


def test_verify_terminal_lemma_frozen():
    out = verify_terminal_lemma(6)
    assert out["verified"] is True
    assert out["r_max"] == 6
    per_r = {row["r"]: (row["triples"], row["classes"]) for row in out["per_r"]}
    assert per_r == {2: (1, 1), 3: (2, 1), 4: (2, 1), 5: (8, 2), 6: (2, 1)}
    assert all(row["match"] for row in out["per_r"])
    assert all(row["classes"] == row["expected_classes"] for row in out["per_r"])
