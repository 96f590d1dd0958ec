"""Exceptional surface models and the self-intersection of the marked curve.

Two routes compute the same number and cross-check each other:

* the weighted-projective route: for a smooth germ the exceptional surface of
  the (b1,b2,b3) blow-up is P(a1,a2,a3) with b_i = a_i d_j d_k, carrying the
  boundary Diff = sum (d_i-1)/d_i {x_i = 0}; the marked curve is O(m) with
  m = mult/(d1 d2 d3);
* the star route: intersection theory on the two-dimensional star fan of the
  blow-up ray, valid for the quadric germ as well.

Both feed

    GammaTilde^2 = (K_S + Diff) . Gamma / (a(S) + 1) - Gamma^2

where a(S) + 1 is the pairing of the blow-up ray with the canonical weight
functional (computed, never assumed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .discrepancy import (
    MonomialDivisorSpec,
    toric_log_discrepancy_minus_one,
    weight_multiplicity,
)
from .exactmath import determinant
from .fan import Fan, StarSurface, germ_fan, star_subdivide, star_surface
from .germs import GermSpec, blowup_ray, exponent_weights, k_weight


def weights_decomposition(beta) -> tuple[int, int, int, int, int, int]:
    """Split blow-up weights as b_i = a_i d_j d_k with d_i = gcd(b_j, b_k).

    Returns (a1, a2, a3, d1, d2, d3).  The d_i are pairwise coprime and the
    a_i integral exactly when the weights are positive and primitive.
    """
    b = tuple(int(x) for x in beta)
    if len(b) != 3 or any(x <= 0 for x in b):
        raise ValueError("weights not of toric blow-up form")
    if math.gcd(math.gcd(b[0], b[1]), b[2]) != 1:
        raise ValueError("weights not of toric blow-up form")
    d1 = math.gcd(b[1], b[2])
    d2 = math.gcd(b[0], b[2])
    d3 = math.gcd(b[0], b[1])
    a = []
    for bi, dj, dk in ((b[0], d2, d3), (b[1], d1, d3), (b[2], d1, d2)):
        q, rem = divmod(bi, dj * dk)
        if rem:
            raise ValueError("weights not of toric blow-up form")
        a.append(q)
    return (a[0], a[1], a[2], d1, d2, d3)


def wpp_intersection(a: Sequence[int], m: int, m2: int) -> Fraction:
    """O(m) . O(m2) on P(a1, a2, a3) with pairwise coprime weights."""
    a = tuple(int(x) for x in a)
    for i, j in ((0, 1), (0, 2), (1, 2)):
        if math.gcd(a[i], a[j]) != 1:
            raise ValueError("projective weights must be pairwise coprime")
    return Fraction(m * m2, a[0] * a[1] * a[2])


def adjunction_degree(a: Sequence[int], d: Sequence[int]) -> Fraction:
    """O(1)-degree of K_S + Diff on P(a) with Diff = sum (d_i-1)/d_i {x_i=0}."""
    a = tuple(int(x) for x in a)
    d = tuple(int(x) for x in d)
    kappa = -sum(Fraction(x) for x in a)
    for ai, di in zip(a, d):
        kappa += Fraction(di - 1, di) * ai
    return kappa


def wpp_nef(m: Fraction | int) -> bool:
    return Fraction(m) >= 0


def wpp_ample(m: Fraction | int) -> bool:
    return Fraction(m) > 0


@dataclass(frozen=True)
class StarModel:
    """Intersection theory on the complete 2D star fan of the blow-up ray.

    Classes are coefficient vectors over the boundary curves C_i (one per
    star ray, in cyclic order).  Adjacent curves meet in 1/det points; the
    self-intersection comes from the two neighbours.
    """

    star: StarSurface

    def _det(self, i: int, j: int) -> int:
        rays = self.star.rays
        return determinant([list(rays[i % len(rays)]), list(rays[j % len(rays)])])

    def curve_pair(self, i: int, j: int) -> Fraction:
        k = len(self.star.rays)
        i %= k
        j %= k
        if i == j:
            num = self._det(i - 1, i + 1)
            return Fraction(-num, self._det(i - 1, i) * self._det(i, i + 1))
        if (i + 1) % k == j or (j + 1) % k == i:
            return Fraction(1, abs(self._det(i, j)))
        return Fraction(0)

    def pair(self, u: Sequence, v: Sequence) -> Fraction:
        k = len(self.star.rays)
        total = Fraction(0)
        for i in range(k):
            ui = Fraction(u[i])
            if ui == 0:
                continue
            # Only the two neighbours and the curve itself pair nontrivially.
            for j in (i - 1, i, i + 1):
                vj = Fraction(v[j % k])
                if vj:
                    total += ui * vj * self.curve_pair(i, j)
        return total

    def kdiff_class(self) -> tuple[Fraction, ...]:
        """K_S + Diff = - sum (1/d_i) C_i."""
        return tuple(Fraction(-1, d) for d in self.star.edge_indices)

    def s_restriction_class(self, germ: GermSpec) -> tuple[Fraction, ...]:
        """The class of S|_S: -(1/k(w)) sum (k(r_i)/d_i) C_i."""
        kw = k_weight(germ, self.star.center)
        return tuple(
            -k_weight(germ, r) / (Fraction(d) * kw)
            for r, d in zip(self.star.source_rays, self.star.edge_indices)
        )

    def nef(self, cls: Sequence) -> bool:
        k = len(self.star.rays)
        basis = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
        return all(self.pair(cls, e) >= 0 for e in basis)

    def ample(self, cls: Sequence) -> bool:
        k = len(self.star.rays)
        basis = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
        return all(self.pair(cls, e) > 0 for e in basis)

    def diff_coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(d - 1, d) for d in self.star.edge_indices)


def build_star_model(germ: GermSpec, weights) -> tuple[StarModel, tuple[int, ...], Fan]:
    ray = blowup_ray(germ, weights)
    fan1 = star_subdivide(germ_fan(germ), ray)
    return StarModel(star_surface(fan1, ray)), ray, fan1


def _a_plus_one(germ: GermSpec, ray) -> Fraction:
    empty = MonomialDivisorSpec(())
    return toric_log_discrepancy_minus_one(germ, empty, ray).value + 1


def gamma_tilde_sq_star(germ: GermSpec, weights, phi: MonomialDivisorSpec) -> Fraction:
    """Star-route GammaTilde^2 for the curve cut by phi on the blow-up surface."""
    model, ray, _fan1 = build_star_model(germ, weights)
    mult = weight_multiplicity(phi, exponent_weights(germ, ray))
    s_restr = model.s_restriction_class(germ)
    gamma = tuple(-mult * x for x in s_restr)
    kdiff = model.kdiff_class()
    a1 = _a_plus_one(germ, ray)
    return model.pair(kdiff, gamma) / a1 - model.pair(gamma, gamma)


def gamma_tilde_sq_wpp(beta, phi: MonomialDivisorSpec) -> Fraction:
    """Weighted-projective route over the smooth germ.

    The curve must be quasi-homogeneous: all phi monomials share one weighted
    degree.  Its class is O(m) with m = mult / (d1 d2 d3).
    """
    a1, a2, a3, d1, d2, d3 = weights_decomposition(beta)
    germ = GermSpec("smooth")
    ray = blowup_ray(germ, beta)
    degrees = {
        sum(b * l for b, l in zip(beta, exp))
        for branch in phi.branches
        for exp in branch.exponents
    }
    if len(degrees) != 1:
        raise ValueError("curve monomials do not share one weighted degree")
    mult = weight_multiplicity(phi, exponent_weights(germ, ray))
    m, rem = divmod(int(mult), d1 * d2 * d3)
    if rem:
        raise ValueError("curve class is not integral on the quotient surface")
    kappa = adjunction_degree((a1, a2, a3), (d1, d2, d3))
    a_plus_1 = _a_plus_one(germ, ray)
    kd_dot_gamma = kappa * Fraction(m) / (a1 * a2 * a3)
    gamma_sq = wpp_intersection((a1, a2, a3), m, m)
    return kd_dot_gamma / a_plus_1 - gamma_sq
