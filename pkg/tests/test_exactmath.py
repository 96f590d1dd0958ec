"""Exact linear algebra: determinants, normal forms, completions, rendering."""

import itertools
import math
import random
from fractions import Fraction

import pytest

from toricdc.exactmath import (
    content,
    cross,
    decimal_str,
    determinant,
    dot,
    fraction_str,
    hermite_basis,
    identity_matrix,
    is_primitive,
    matinv_rational,
    matmul,
    matvec,
    primitive,
    smith_normal_form,
    transpose,
    unimodular_completion,
    vadd,
    vsub,
)


def det_cofactor(m):
    """Independent determinant oracle by first-row cofactor expansion."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        total += (-1) ** j * m[0][j] * det_cofactor(minor)
    return total


def minors_gcd(m, k):
    """gcd of the absolute values of all k x k minors."""
    n = len(m)
    g = 0
    for rows in itertools.combinations(range(n), k):
        for cols in itertools.combinations(range(n), k):
            sub = [[m[i][j] for j in cols] for i in rows]
            g = math.gcd(g, abs(det_cofactor(sub)))
    return g


def random_matrix(rng, n, lo=-9, hi=9):
    return tuple(tuple(rng.randint(lo, hi) for _ in range(n)) for _ in range(n))


def test_determinant_matches_cofactor_oracle():
    rng = random.Random(20240311)
    for n in (2, 3, 4):
        for _ in range(200):
            m = random_matrix(rng, n)
            assert determinant(m) == det_cofactor(m)


def test_determinant_frozen_and_errors():
    assert determinant(((1, 3, 3), (1, 0, 0), (1, 2, 3))) == -3
    assert determinant(identity_matrix(4)) == 1
    assert determinant(((0, 1), (0, 0))) == 0
    # exact over Fraction entries too
    assert determinant(((Fraction(1, 2), 0), (0, Fraction(2, 3)))) == Fraction(1, 3)
    with pytest.raises(ValueError):
        determinant(((1, 2, 3), (4, 5, 6)))


def test_smith_normal_form_frozen():
    diag, left, right = smith_normal_form(((2, 0), (0, 3)))
    assert diag == (1, 6)
    diag, _, _ = smith_normal_form(((1, 0, 0), (0, 1, 0), (1, 2, 3)))
    assert diag == (1, 1, 3)


def test_smith_normal_form_properties():
    rng = random.Random(7)
    for _ in range(120):
        n = rng.choice((2, 3))
        m = random_matrix(rng, n, -6, 6)
        while determinant(m) == 0:
            m = random_matrix(rng, n, -6, 6)
        diag, left, right = smith_normal_form(m)
        assert abs(determinant(left)) == 1
        assert abs(determinant(right)) == 1
        product = matmul(left, matmul(m, right))
        expected = tuple(
            tuple(diag[i] if i == j else 0 for j in range(n)) for i in range(n)
        )
        assert product == expected
        assert all(d > 0 for d in diag)
        for a, b in zip(diag, diag[1:]):
            assert b % a == 0
        # invariant factors against the k x k minor gcds
        acc = 1
        for k in range(1, n + 1):
            acc *= diag[k - 1]
            assert acc == minors_gcd(m, k)


def test_smith_normal_form_singular_rejected():
    with pytest.raises(ValueError):
        smith_normal_form(((1, 2), (2, 4)))


def test_hermite_basis_membership():
    rows = ((2, 7, 17), (3, 11, 19), (5, 13, 23))
    basis = hermite_basis(rows)
    n = 3
    assert all(basis[i][i] > 0 for i in range(n))
    assert all(basis[i][j] == 0 for i in range(n) for j in range(i))

    def reduce_row(r):
        r = list(r)
        for i in range(n):
            assert r[i] % basis[i][i] == 0
            q = r[i] // basis[i][i]
            for j in range(n):
                r[j] -= q * basis[i][j]
        return r

    for row in rows:
        assert reduce_row(row) == [0, 0, 0]


def test_hermite_basis_errors():
    with pytest.raises(ValueError):
        hermite_basis([])
    with pytest.raises(ValueError):
        hermite_basis([(1, 2, 3), (2, 4, 6)])


def test_unimodular_completion():
    for v in ((1, 2, 3), (0, 0, 1), (6, 10, 15), (-3, 1, 7), (2, -5)):
        u = unimodular_completion(v)
        assert matvec(u, v) == (1,) + (0,) * (len(v) - 1)
        assert abs(determinant(u)) == 1
    with pytest.raises(ValueError):
        unimodular_completion((2, 4, 6))


def test_primitive_and_content():
    assert content((12, 18, 30)) == 6
    assert content((0, 0)) == 0
    assert primitive((2, 4, 6)) == (1, 2, 3)
    assert primitive((0, -2)) == (0, -1)
    assert is_primitive((6, 10, 15))
    assert not is_primitive((2, 4))
    with pytest.raises(ValueError):
        primitive((0, 0, 0))


def test_vector_helpers():
    assert vadd((1, 2), (3, 4)) == (4, 6)
    assert vsub((1, 2), (3, 5)) == (-2, -3)
    assert dot((1, 2, 3), (4, 5, 6)) == 32
    assert cross((1, 0, 0), (0, 1, 0)) == (0, 0, 1)
    assert cross((2, 3, 4), (5, 6, 7)) == (-3, 6, -3)
    assert transpose(((1, 2), (3, 4))) == ((1, 3), (2, 4))


def test_matinv_rational():
    m = ((1, 2), (3, 5))
    inv = matinv_rational(m)
    assert matmul(m, inv) == ((1, 0), (0, 1))
    # unimodular input gives an integral inverse
    assert all(x.denominator == 1 for row in inv for x in row)
    with pytest.raises(ValueError):
        matinv_rational(((1, 2), (2, 4)))


def test_fraction_str():
    assert fraction_str(Fraction(-13, 6)) == "-13/6"
    assert fraction_str(4) == "4"
    assert fraction_str(Fraction(8, 4)) == "2"


def test_decimal_str_half_away_from_zero():
    assert decimal_str(Fraction(-13, 6)) == "-2.1667"
    assert decimal_str(Fraction(1, 2)) == "0.5000"
    assert decimal_str(2) == "2.0000"
    assert decimal_str(Fraction(31, 30)) == "1.0333"
    assert decimal_str(Fraction(25, 1000), places=2) == "0.03"
    assert decimal_str(Fraction(-25, 1000), places=2) == "-0.03"
    assert decimal_str(Fraction(-1, 16), places=3) == "-0.063"
