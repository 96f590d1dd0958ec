"""Ambient germ models: the three base singularities blow-ups are taken over.

A germ bundles a lattice, the cone generators and the dual data needed to
pair monomial exponents with lattice vectors in exact arithmetic.

Supported kinds:

* ``smooth`` - the smooth germ; lattice Z^3, cone the positive octant.
* ``cyclic`` - the cyclic quotient of index r whose three coordinates carry
  residues (1, r-q, q) mod r with gcd(q, r) = 1; the lattice is Z^3 extended
  by the vector (1, r-q, q)/r.
* ``odp`` - the ordinary double point x1*x2 + x3*x4 = 0; lattice Z^3, cone
  spanned by the four vertices of a unit square at height one.

Vectors come in two coordinate systems.  Lattice coordinates are integer
triples in the germ's own lattice basis; ambient coordinates live in the
fixed Q^3 that contains every lattice.  For the smooth and ODP germs the two
agree.  Monomial exponents are paired through ``exponent_weights``: a lattice
vector is turned into the tuple of weights its valuation assigns to the
ambient coordinates (three entries, or four for the ODP germ).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactmath import (
    content,
    dot,
    hermite_basis,
    matinv_rational,
    matvec,
    transpose,
)

_ODP_RAYS = ((0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1))
# Dual generators of the square cone, indexed like the ambient coordinates
# x1..x4; m1 + m2 = m3 + m4 is the relation behind x1*x2 + x3*x4.
_ODP_DUALS = ((1, 0, 0), (-1, 0, 1), (0, 1, 0), (0, -1, 1))


@dataclass(frozen=True)
class GermSpec:
    """A terminal toric germ: ``smooth``, ``cyclic`` (index r, twist q) or ``odp``."""

    kind: str
    r: int = 1
    q: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("smooth", "cyclic", "odp"):
            raise ValueError(f"unknown germ kind {self.kind!r}")
        if self.kind == "cyclic":
            if self.r < 2:
                raise ValueError("cyclic germ needs index r >= 2")
            if not (1 <= self.q < self.r):
                raise ValueError("cyclic germ needs 1 <= q < r")
            if math.gcd(self.q, self.r) != 1:
                raise ValueError("cyclic germ needs gcd(q, r) = 1")
        elif (self.r, self.q) != (1, 0):
            raise ValueError(f"{self.kind} germ takes no (r, q) parameters")


def parse_germ(text: str) -> GermSpec:
    """Parse ``smooth``, ``cyclic:R,Q`` or ``odp`` into a GermSpec."""
    text = text.strip()
    if text == "smooth":
        return GermSpec("smooth")
    if text == "odp":
        return GermSpec("odp")
    if text.startswith("cyclic:"):
        body = text[len("cyclic:"):]
        parts = body.split(",")
        if len(parts) != 2:
            raise ValueError(f"cyclic germ wants cyclic:R,Q, got {text!r}")
        try:
            r, q = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"cyclic germ wants integer R,Q, got {text!r}") from None
        return GermSpec("cyclic", r, q)
    raise ValueError(f"unknown germ {text!r}")


def germ_label(spec: GermSpec) -> str:
    if spec.kind == "cyclic":
        return f"cyclic:{spec.r},{spec.q}"
    return spec.kind


def index(spec: GermSpec) -> int:
    """Order of the local class group torsion: r for cyclic, 1 otherwise."""
    return spec.r if spec.kind == "cyclic" else 1


def _cyclic_basis(spec: GermSpec) -> tuple[tuple[tuple[int, ...], ...], int]:
    """Rows H with lattice = {c @ H / r : c in Z^3}, full rank, |det H| = r^2."""
    r, q = spec.r, spec.q
    rows = [(r, 0, 0), (0, r, 0), (0, 0, r), (1, r - q, q)]
    return hermite_basis(rows), r


def lattice_to_ambient(spec: GermSpec, c) -> tuple[Fraction, ...]:
    """Ambient coordinates of the lattice vector c (exact rationals)."""
    c = tuple(int(x) for x in c)
    if spec.kind != "cyclic":
        return tuple(Fraction(x) for x in c)
    basis, r = _cyclic_basis(spec)
    amb = [Fraction(0)] * 3
    for ci, row in zip(c, basis):
        for j in range(3):
            amb[j] += Fraction(ci * row[j], r)
    return tuple(amb)


def ambient_to_lattice(spec: GermSpec, v) -> tuple[int, ...]:
    """Lattice coordinates of an ambient vector; error if it is not in N."""
    v = tuple(Fraction(x) for x in v)
    if spec.kind != "cyclic":
        out = []
        for x in v:
            if x.denominator != 1:
                raise ValueError(f"vector {v} is not a lattice point of the {spec.kind} germ")
            out.append(int(x))
        return tuple(out)
    basis, r = _cyclic_basis(spec)
    # c @ H = r * v, so c solves the transposed system.
    inv = matinv_rational(transpose(basis))
    c = matvec(inv, [r * x for x in v])
    out = []
    for x in c:
        x = Fraction(x)
        if x.denominator != 1:
            raise ValueError(f"vector {v} is not a lattice point of the cyclic germ")
        out.append(int(x))
    return tuple(out)


def cone_rays(spec: GermSpec) -> tuple[tuple[int, ...], ...]:
    """Primitive generators of the germ cone in lattice coordinates.

    For the ODP germ the four rays come in cyclic (square) order.
    """
    if spec.kind == "smooth":
        return ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    if spec.kind == "odp":
        return _ODP_RAYS
    return tuple(ambient_to_lattice(spec, ei)
                 for ei in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def exponent_dim(spec: GermSpec) -> int:
    """Number of ambient coordinates monomial exponents refer to."""
    return 4 if spec.kind == "odp" else 3


def exponent_weights(spec: GermSpec, c) -> tuple[Fraction, ...]:
    """Weights the valuation at lattice vector c assigns to x1..x_k."""
    if spec.kind == "odp":
        c = tuple(int(x) for x in c)
        return tuple(Fraction(dot(m, c)) for m in _ODP_DUALS)
    return lattice_to_ambient(spec, c)


def k_weight(spec: GermSpec, c) -> Fraction:
    """Pairing of c with the canonical weight functional (Sum w_i - 1 = a + mult)."""
    if spec.kind == "odp":
        return Fraction(int(c[2]))
    return sum(lattice_to_ambient(spec, c), Fraction(0))


def blowup_ray(spec: GermSpec, weights) -> tuple[int, ...]:
    """Validate blow-up weights for the germ and return the ray in lattice coordinates.

    * smooth: three positive integers without a common factor; the ray is the
      weight vector itself.
    * cyclic: a positive ambient rational vector that is a primitive lattice
      point of the germ lattice.
    * odp: four positive integers b1..b4 with b1 + b2 = b3 + b4 and every
      triple coprime; the ray is (b1, b3, b1 + b2), interior to the square
      cone with pairings <m_i, ray> = b_i.
    """
    if spec.kind == "smooth":
        w = tuple(int(x) for x in weights)
        if len(w) != 3 or any(x <= 0 for x in w):
            raise ValueError("smooth germ blow-up weights must be three positive integers")
        if content(w) != 1:
            raise ValueError(f"weights {w} share a common factor; the blow-up ray must be primitive")
        return w
    if spec.kind == "odp":
        w = tuple(int(x) for x in weights)
        if len(w) != 4 or any(x <= 0 for x in w):
            raise ValueError("quadric cone blow-up weights must be four positive integers")
        if w[0] + w[1] != w[2] + w[3]:
            raise ValueError(f"weights {w} violate b1 + b2 = b3 + b4")
        for skip in range(4):
            triple = tuple(w[i] for i in range(4) if i != skip)
            if content(triple) != 1:
                raise ValueError(f"weights {w} have a triple with a common factor")
        return (w[0], w[2], w[0] + w[1])
    amb = tuple(Fraction(x) for x in weights)
    if len(amb) != 3 or any(x <= 0 for x in amb):
        raise ValueError("cyclic germ blow-up weights must be three positive rationals")
    c = ambient_to_lattice(spec, amb)
    if content(c) != 1:
        raise ValueError(f"weights {tuple(map(str, amb))} are a non-primitive lattice point")
    return c


def odp_dual_generators() -> tuple[tuple[int, ...], ...]:
    return _ODP_DUALS
