"""Fans, star subdivisions and the surface fan around an interior ray.

Cones are tuples of primitive lattice generators.  Simplicial cones list
three generators in any order; the quadric germ cone lists its four
generators in cyclic (square) order so that facets are the adjacent pairs.

``star_subdivide`` inserts a ray and replaces every cone containing it by
the joins of the ray with the facets that avoid it.  ``star_surface``
projects the star of a ray to the quotient plane: the result carries the
boundary-curve data of the exceptional surface attached to that ray.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .exactmath import (
    content,
    cross,
    determinant,
    dot,
    matinv_rational,
    matvec,
    primitive,
    unimodular_completion,
    vadd,
)


def _as_vec(v) -> tuple[int, ...]:
    return tuple(int(x) for x in v)


@dataclass(frozen=True)
class Cone:
    """A strongly convex cone given by primitive generators.

    Three generators: simplicial.  Four: the square cone over a quadrilateral,
    generators in cyclic order.
    """

    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        gens = tuple(_as_vec(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if len(gens) not in (3, 4):
            raise ValueError("cones carry three or four generators")
        for g in gens:
            if content(g) != 1:
                raise ValueError(f"generator {g} is not primitive")
        if len(gens) == 3 and determinant([list(g) for g in gens]) == 0:
            raise ValueError("degenerate cone: generator matrix is singular")

    def is_simplicial(self) -> bool:
        return len(self.generators) == 3

    def facets(self) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
        gens = self.generators
        if self.is_simplicial():
            return ((gens[0], gens[1]), (gens[0], gens[2]), (gens[1], gens[2]))
        return tuple((gens[i], gens[(i + 1) % 4]) for i in range(4))

    def _simplices(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        gens = self.generators
        if self.is_simplicial():
            return (gens,)
        return ((gens[0], gens[1], gens[2]), (gens[0], gens[2], gens[3]))

    def barycentric(self, v, gens=None):
        """Coordinates of v in a simplicial generator triple, or None."""
        gens = gens or self.generators
        cols = [[gens[j][i] for j in range(3)] for i in range(3)]
        if determinant(cols) == 0:
            return None
        return matvec(matinv_rational(cols), _as_vec(v))

    def contains(self, v) -> bool:
        v = _as_vec(v)
        for simplex in self._simplices():
            coeffs = self.barycentric(v, simplex)
            if coeffs is not None and all(c >= 0 for c in coeffs):
                return True
        return False

    def det(self) -> int:
        """Absolute determinant (lattice multiplicity) of a simplicial cone."""
        if not self.is_simplicial():
            raise ValueError("multiplicity is defined for simplicial cones")
        return abs(determinant([list(g) for g in self.generators]))


def _facet_spans(facet, v) -> bool:
    """True when v lies in the 2-plane cone spanned by the facet pair."""
    a, b = facet
    if _as_vec(cross(a, b)) == (0, 0, 0):
        raise ValueError("degenerate facet")
    n = cross(a, b)
    if dot(n, v) != 0:
        return False
    # v = s*a + t*b with s, t >= 0: solve in the plane.
    for i, j in ((0, 1), (0, 2), (1, 2)):
        d = a[i] * b[j] - a[j] * b[i]
        if d != 0:
            s = Fraction(v[i] * b[j] - v[j] * b[i], d)
            t = Fraction(a[i] * v[j] - a[j] * v[i], d)
            return s >= 0 and t >= 0
    return False


@dataclass(frozen=True)
class Fan:
    cones: tuple[Cone, ...]

    def rays(self) -> tuple[tuple[int, ...], ...]:
        seen: list[tuple[int, ...]] = []
        for cone in self.cones:
            for g in cone.generators:
                if g not in seen:
                    seen.append(g)
        return tuple(sorted(seen))

    def supports(self, v) -> bool:
        return any(cone.contains(v) for cone in self.cones)

    def to_json(self) -> str:
        cones = sorted(_canonical_cone(c) for c in self.cones)
        return json.dumps({"rank": 3, "cones": cones}, sort_keys=True)


def _canonical_cone(cone: Cone) -> list[list[int]]:
    gens = [list(g) for g in cone.generators]
    if cone.is_simplicial():
        return sorted(gens)
    # Preserve cyclic adjacency: minimal rotation/reflection of the 4-cycle.
    best = None
    for seq in (gens, gens[::-1]):
        for shift in range(4):
            cand = seq[shift:] + seq[:shift]
            if best is None or cand < best:
                best = cand
    return best


def fan_from_json(text: str) -> Fan:
    data = json.loads(text)
    if data.get("rank") != 3:
        raise ValueError("fan files carry rank-3 lattices")
    return Fan(tuple(Cone(tuple(tuple(g) for g in gens)) for gens in data["cones"]))


def germ_fan(spec) -> Fan:
    """The one-cone fan of a germ (square cone for the quadric germ)."""
    from .germs import cone_rays

    return Fan((Cone(tuple(cone_rays(spec))),))


def star_subdivide(fan: Fan, w) -> Fan:
    """Insert the ray w, replacing each cone containing it by joins with
    the facets that do not.  A ray parallel to an existing generator leaves
    the fan unchanged; a ray outside the support is an error.
    """
    w = primitive(_as_vec(w))
    if not fan.supports(w):
        raise ValueError(f"ray {w} lies outside the fan support")
    for cone in fan.cones:
        if w in cone.generators:
            return fan
    out: list[Cone] = []
    for cone in fan.cones:
        if not cone.contains(w):
            out.append(cone)
            continue
        for facet in cone.facets():
            if _facet_spans(facet, w):
                continue
            out.append(Cone((w, facet[0], facet[1])))
    return Fan(tuple(out))


@dataclass(frozen=True)
class StarSurface:
    """Boundary data of the exceptional surface at an interior ray.

    rays: primitive images of the adjacent 3D rays in the quotient plane,
    in cyclic order with positive consecutive determinants.  edge_indices[i]
    is the lattice index d_i of the plane spanned by the central ray and
    source_rays[i]: the generic transversal index along the boundary curve
    C_i.  pi is the projection (the last two rows of a unimodular completion
    of the central ray).
    """

    center: tuple[int, ...]
    rays: tuple[tuple[int, ...], ...]
    source_rays: tuple[tuple[int, ...], ...]
    edge_indices: tuple[int, ...]
    pi: tuple[tuple[int, ...], tuple[int, ...]]

    @property
    def boundary_curve_count(self) -> int:
        return len(self.rays)

    def adjacent_determinants(self) -> tuple[int, ...]:
        k = len(self.rays)
        return tuple(
            int(determinant([list(self.rays[i]), list(self.rays[(i + 1) % k])]))
            for i in range(k)
        )

    def project(self, v) -> tuple[int, int]:
        return (dot(self.pi[0], v), dot(self.pi[1], v))


def star_surface(fan: Fan, rho) -> StarSurface:
    rho = primitive(_as_vec(rho))
    star = [c for c in fan.cones if rho in c.generators]
    if not star:
        raise ValueError(f"{rho} is not a ray of the fan")
    if any(not c.is_simplicial() for c in star):
        raise ValueError("star of the ray must be simplicial")
    completion = unimodular_completion(rho)
    pi = (completion[1], completion[2])

    def proj(v):
        return (dot(pi[0], v), dot(pi[1], v))

    # Walk the star graph: each cone links its two non-central generators.
    links: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for cone in star:
        others = [g for g in cone.generators if g != rho]
        if len(others) != 2:
            raise ValueError("ray appears twice in a cone")
        a, b = others
        links.setdefault(a, []).append(b)
        links.setdefault(b, []).append(a)
    if any(len(v) != 2 for v in links.values()):
        raise ValueError("star of the ray is not a closed surface fan")

    start = min(links)
    cycle = [start]
    prev = None
    while True:
        nxts = [g for g in links[cycle[-1]] if g != prev]
        nxt = nxts[0] if nxts else links[cycle[-1]][0]
        if nxt == start:
            break
        prev = cycle[-1]
        cycle.append(nxt)
        if len(cycle) > len(links):
            raise ValueError("star of the ray does not close up")
    if len(cycle) != len(links):
        raise ValueError("star of the ray is not a single cycle")

    rays2 = [primitive(proj(g)) for g in cycle]
    k = len(cycle)
    d01 = determinant([list(rays2[0]), list(rays2[1 % k])])
    if d01 < 0:
        cycle = [cycle[0]] + cycle[1:][::-1]
        rays2 = [rays2[0]] + rays2[1:][::-1]
    for i in range(k):
        d = determinant([list(rays2[i]), list(rays2[(i + 1) % k])])
        if d <= 0:
            raise ValueError("projected star rays are not positively ordered")
    edge = tuple(content(proj(g)) for g in cycle)
    return StarSurface(
        center=rho,
        rays=tuple(rays2),
        source_rays=tuple(cycle),
        edge_indices=edge,
        pi=pi,
    )


def secondary_ray(p, w) -> tuple[int, ...]:
    """The ray p + w used when blowing up a curve through the chart <.., p, w>."""
    return _as_vec(vadd(p, w))
