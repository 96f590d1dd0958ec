"""Classification data for divisorial blow-ups with an irreducible marked curve.

Each contraction type packages the blow-up weights over its germ together
with the monomials of the designated curve equation phi.  ``build_report``
runs the whole pipeline: star subdivision, exceptional surface intersection
theory, chart-by-chart singularity types along the marked curve, and the
decorated incidence diagram of the exceptional surface.

The chart machinery follows the local models of the marked curve.  At a
vertex the curve is analytically a toric orbit of the chart <o, p, ray>
whose closure contains the partner generator p; blowing it up inserts the
ray p + ray (the "fixed" branches below).  Where the curve crosses a
one-dimensional singular stratum transversally, the germ splits off a line
and the same construction runs in the transversal plane lattice.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .discrepancy import (
    MonomialBranch,
    MonomialDivisorSpec,
    is_canonical_pair_toric,
    toric_log_discrepancy_minus_one,
    weight_multiplicity,
)
from .exactmath import (
    content,
    cross,
    decimal_str,
    determinant,
    dot,
    fraction_str,
    primitive,
    unimodular_completion,
    vadd,
)
from .fan import Fan, germ_fan, star_subdivide
from .germs import GermSpec, blowup_ray, cone_rays, exponent_weights
from .quotient import (
    CyclicQuotientType,
    TwoDimType,
    cone_to_quotient,
    normalize,
    quotient_2d,
    reid_tai_classify,
    render,
)
from .surface import (
    build_star_model,
    gamma_tilde_sq_star,
    gamma_tilde_sq_wpp,
    weights_decomposition,
)

FAMILIES = ("An", "D2k+2", "D2k+1", "E6", "E7", "E8", "odpA")


@dataclass(frozen=True)
class ContractionType:
    """A designated blow-up type: family name, integer parameters, and
    optionally the special (tangent to the singular locus) curve equation."""

    family: str
    params: tuple[int, ...] = ()
    special_phi: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "params", tuple(int(x) for x in self.params))
        p = self.params
        if self.family == "An":
            if len(p) != 3 or min(p) < 1:
                raise ValueError("An takes parameters a2, a3, d1 >= 1")
            if math.gcd(p[0], p[1]) != 1:
                raise ValueError("An needs gcd(a2, a3) = 1")
            if self.special_phi and p != (1, 1, 2):
                raise ValueError("the special curve equation of An exists only for (1, 1, 2)")
        elif self.family == "D2k+2":
            if len(p) != 1 or p[0] < 1:
                raise ValueError("D2k+2 takes one parameter k >= 1")
        elif self.family == "D2k+1":
            if len(p) != 1 or p[0] < 2:
                raise ValueError("D2k+1 takes one parameter k >= 2")
        elif self.family in ("E6", "E7", "E8"):
            if p:
                raise ValueError(f"{self.family} takes no parameters")
            if self.special_phi:
                raise ValueError(f"{self.family} has no special curve equation")
        elif self.family == "odpA":
            if len(p) != 3 or min(p) < 1:
                raise ValueError("odpA takes parameters b2, b3, b4 >= 1")
            if 1 + p[0] != p[1] + p[2]:
                raise ValueError("odpA needs 1 + b2 = b3 + b4")
            if self.special_phi:
                raise ValueError("odpA has no special curve equation")
        else:
            raise ValueError(f"unknown family {self.family!r}")

    @property
    def germ(self) -> GermSpec:
        return GermSpec("odp" if self.family == "odpA" else "smooth")

    @property
    def n(self) -> int:
        if self.family == "An":
            a2, a3, d1 = self.params
            return (a2 + a3) * d1 - 1
        if self.family == "D2k+2":
            return 2 * self.params[0] + 2
        if self.family == "D2k+1":
            return 2 * self.params[0] + 1
        if self.family == "odpA":
            return self.params[0]
        return int(self.family[1])

    def weights(self) -> tuple[int, ...]:
        if self.family == "An":
            a2, a3, d1 = self.params
            return (1, a2 * d1, a3 * d1)
        if self.family in ("D2k+2", "D2k+1"):
            n = self.n
            return (2, n - 2, n - 1)
        if self.family == "E6":
            return (3, 4, 6)
        if self.family == "E7":
            return (4, 6, 9)
        if self.family == "E8":
            return (6, 10, 15)
        b2, b3, b4 = self.params
        return (1, b2, b3, b4)

    def phi_exponents(self) -> tuple[tuple[int, ...], ...]:
        if self.special_phi:
            if self.family == "An":
                return ((2, 1, 0), (0, 0, 2))
            return ((1, 2, 0), (0, 0, 2))
        if self.family == "An":
            a2, a3, d1 = self.params
            return ((0, 1, 1), ((a2 + a3) * d1, 0, 0))
        if self.family in ("D2k+2", "D2k+1"):
            return ((0, 0, 2), (1, 2, 0), (self.n - 1, 0, 0))
        if self.family == "E6":
            return ((0, 0, 2), (0, 3, 0), (4, 0, 0))
        if self.family == "E7":
            return ((0, 0, 2), (0, 3, 0), (3, 1, 0))
        if self.family == "E8":
            return ((0, 0, 2), (0, 3, 0), (5, 0, 0))
        b2, _b3, _b4 = self.params
        return ((b2, 0, 0, 0), (0, 1, 0, 0))

    def phi_spec(self) -> MonomialDivisorSpec:
        return MonomialDivisorSpec(
            (MonomialBranch(Fraction(1), self.phi_exponents()),)
        )

    def label(self) -> str:
        if self.family == "An":
            base = "An:" + ",".join(str(x) for x in self.params)
        elif self.family in ("D2k+2", "D2k+1"):
            base = f"D:{self.n}"
        elif self.family == "odpA":
            base = "odpA:" + ",".join(str(x) for x in self.params)
        else:
            base = self.family
        return base + ("!" if self.special_phi else "")


def parse_type(text: str) -> ContractionType:
    """Parse An:a2,a3,d1 | D:n | E6 | E7 | E8 | odpA:b2,b3,b4 (suffix ! for
    the special curve equation)."""
    text = text.strip()
    special = text.endswith("!")
    if special:
        text = text[:-1]
    if text in ("E6", "E7", "E8"):
        return ContractionType(text, (), special)
    if ":" not in text:
        raise ValueError(f"unknown contraction type {text!r}")
    head, body = text.split(":", 1)
    try:
        params = tuple(int(x) for x in body.split(","))
    except ValueError:
        raise ValueError(f"non-integer parameters in {text!r}") from None
    if head == "An":
        return ContractionType("An", params, special)
    if head == "D":
        if len(params) != 1:
            raise ValueError("D takes a single parameter n")
        n = params[0]
        if n < 4:
            raise ValueError("D needs n >= 4")
        if n % 2 == 0:
            return ContractionType("D2k+2", ((n - 2) // 2,), special)
        return ContractionType("D2k+1", ((n - 1) // 2,), special)
    if head == "odpA":
        return ContractionType("odpA", params, special)
    raise ValueError(f"unknown contraction type {text!r}")


def enumerate_types(germ: GermSpec, bound: int) -> list[ContractionType]:
    """All designated types over the germ with parameters up to the bound.

    Cyclic germs admit none.  An is listed with a2 <= a3 (the curve equation
    is symmetric in those slots); the three E types have no parameters and
    are always included for smooth germs.
    """
    out: list[ContractionType] = []
    if germ.kind == "cyclic":
        return out
    if germ.kind == "smooth":
        for d1 in range(1, bound + 1):
            for a2 in range(1, bound + 1):
                for a3 in range(a2, bound + 1):
                    if math.gcd(a2, a3) == 1:
                        out.append(ContractionType("An", (a2, a3, d1)))
        for k in range(1, bound + 1):
            out.append(ContractionType("D2k+2", (k,)))
        for k in range(2, bound + 1):
            out.append(ContractionType("D2k+1", (k,)))
        out.append(ContractionType("E6"))
        out.append(ContractionType("E7"))
        out.append(ContractionType("E8"))
    else:
        for b2 in range(1, bound + 1):
            for b4 in range(1, (b2 + 1) // 2 + 1):
                b3 = b2 + 1 - b4
                if b3 <= bound and b3 >= b4:
                    out.append(ContractionType("odpA", (b2, b3, b4)))
    return sorted(out, key=lambda t: (t.family, t.params))


@dataclass(frozen=True)
class DuValLabel:
    kind: str
    n: int | None = None

    @property
    def label(self) -> str:
        if self.kind in ("A", "D", "E"):
            return f"{self.kind}{self.n}"
        return self.kind


def du_val_recognize(weights, exponents) -> DuValLabel:
    """Recognize a Du Val (or the special x*y^2 + z^2) equation from its
    exponents, up to permutation of the three coordinates.

    The weights are used only to confirm quasi-homogeneity: unequal weighted
    degrees are an error, not a NotDuVal verdict.
    """
    weights = tuple(int(x) for x in weights)
    exps = sorted({tuple(int(x) for x in l) for l in exponents})
    degs = {sum(w * l for w, l in zip(weights, e)) for e in exps}
    if len(degs) != 1:
        raise ValueError("exponents do not share one weighted degree (quasi-homogeneity fails)")

    def shape(e):
        support = tuple(i for i, x in enumerate(e) if x)
        values = tuple(e[i] for i in support)
        return support, values

    shapes = [shape(e) for e in exps]
    if len(exps) == 2:
        (s0, v0), (s1, v1) = shapes
        for (sa, va), (sb, vb) in ((shapes[0], shapes[1]), (shapes[1], shapes[0])):
            if len(sa) == 2 and sorted(va) == [1, 1] and len(sb) == 1 and sb[0] not in sa:
                return DuValLabel("A", vb[0] - 1)
            if len(sa) == 2 and sorted(va) == [1, 2] and len(sb) == 1 and vb == (2,) and sb[0] not in sa:
                return DuValLabel("Special")
        return DuValLabel("NotDuVal")
    if len(exps) == 3:
        singles = [(s, v) for s, v in shapes if len(s) == 1]
        mixed = [(s, v) for s, v in shapes if len(s) == 2]
        pure = {s[0]: v[0] for s, v in singles}
        if len(singles) == 3 and len(set(pure)) == 3:
            vals = sorted(pure.values())
            if vals == [2, 3, 4]:
                return DuValLabel("E", 6)
            if vals == [2, 3, 5]:
                return DuValLabel("E", 8)
        if len(singles) == 2 and len(mixed) == 1:
            (sm, vm) = mixed[0]
            by_val = dict(zip(sm, vm))
            slots_1 = [i for i, v in by_val.items() if v == 1]
            slots_2 = [i for i, v in by_val.items() if v == 2]
            slots_3 = [i for i, v in by_val.items() if v == 3]
            if slots_1 and slots_2:
                a = slots_1[0]
                if a in pure and pure[a] >= 3 and any(c not in sm and pv == 2 for c, pv in pure.items()):
                    return DuValLabel("D", pure[a] + 1)
            if slots_1 and slots_3:
                b = slots_1[0]
                if pure.get(b) == 3 and any(c not in sm and pv == 2 for c, pv in pure.items()):
                    return DuValLabel("E", 7)
        return DuValLabel("NotDuVal")
    return DuValLabel("NotDuVal")


def du_val_kind(label: DuValLabel) -> str:
    return label.label


@dataclass(frozen=True)
class ConditionsReport:
    canonical_pair: bool
    canonical_witness: tuple[int, ...] | None
    quasihomogeneous: bool
    discrepancy: Fraction
    discrepancy_zero: bool

    @property
    def all_hold(self) -> bool:
        return self.canonical_pair and self.quasihomogeneous and self.discrepancy_zero


def check_conditions(germ: GermSpec, weights, phi: MonomialDivisorSpec) -> ConditionsReport:
    """The three admissibility conditions of a designated pair.

    A: the pair (germ, {phi = 0}) is canonical in the inclusive toric sense.
    B: the phi monomials share one weighted degree against the blow-up ray.
    C: the discrepancy of the blow-up valuation against the pair is exactly 0.
    """
    ray = blowup_ray(germ, weights)
    wvec = exponent_weights(germ, ray)
    degrees = {
        sum(Fraction(w) * l for w, l in zip(wvec, exp))
        for branch in phi.branches
        for exp in branch.exponents
    }
    quasi = len(degrees) == 1
    canon = is_canonical_pair_toric(germ, phi)
    disc = toric_log_discrepancy_minus_one(germ, phi, ray).value
    return ConditionsReport(canon.canonical, canon.witness, quasi, disc, disc == 0)


def closed_form_gamma_tilde_sq(ct: ContractionType) -> Fraction:
    """The classification's closed-form self-intersection of the marked curve."""
    if ct.family == "An":
        a2, a3, d1 = ct.params
        s = a2 + a3
        return -(Fraction(1, d1) * Fraction(s, a2 * a3) + Fraction(s * s, a2 * a3))
    if ct.family == "D2k+2":
        k = ct.params[0]
        return -(Fraction(1, 2 * k) + Fraction(2 * k + 1, k))
    if ct.family == "D2k+1":
        k = ct.params[0]
        return -(Fraction(1, 2 * k - 1) + Fraction(4 * k, 2 * k - 1))
    if ct.family == "E6":
        return Fraction(-13, 6)
    if ct.family == "E7":
        return Fraction(-19, 12)
    if ct.family == "E8":
        return Fraction(-31, 30)
    b2, b3, b4 = ct.params
    return -(b2 + 1) * (Fraction(1, b3) + Fraction(1, b4))


def gamma_tilde_sq(ct: ContractionType) -> Fraction:
    """Exceptional-surface route to the marked curve self-intersection."""
    if ct.family == "odpA":
        return gamma_tilde_sq_star(ct.germ, ct.weights(), ct.phi_spec())
    return gamma_tilde_sq_wpp(ct.weights(), ct.phi_spec())


# ---------------------------------------------------------------------------
# chart machinery


@dataclass(frozen=True)
class ChartData:
    """Singularity data of one marked-curve branch after the secondary blow-up."""

    branch_id: str
    kind: str
    curve: str | None
    order: int
    b_type: CyclicQuotientType
    a_type: CyclicQuotientType
    near: TwoDimType
    far: TwoDimType
    fiber_index: int
    point_count: int


def _chart(o, p, ray, branch_id: str, kind: str, curve: str | None, count: int) -> ChartData:
    e4 = tuple(vadd(p, ray))
    if content(e4) != 1:
        raise ValueError("secondary blow-up ray is not primitive")
    comp = unimodular_completion(e4)

    def proj(v):
        return (dot(comp[1], v), dot(comp[2], v))

    if proj(e4) != (0, 0):
        raise AssertionError("projection does not kill the secondary ray")
    po, pw, pp = proj(o), proj(ray), proj(p)
    near = quotient_2d(primitive(po), primitive(pw))
    far = quotient_2d(primitive(po), primitive(pp))
    b_type = cone_to_quotient((e4, o, p))
    a_type = cone_to_quotient((e4, o, ray))
    order = abs(determinant([list(e4), list(o), list(p)]))
    return ChartData(
        branch_id=branch_id,
        kind=kind,
        curve=curve,
        order=order,
        b_type=b_type,
        a_type=a_type,
        near=near,
        far=far,
        fiber_index=content(po),
        point_count=count,
    )


_FIXED_PLANS = {
    # family -> list of (branch id, index of o, index of p) into the germ rays
    "An": (("P1", 0, 1), ("P2", 0, 2)),
    "D2k+2": (("P1", 2, 0),),
    "D2k+1": (("P1", 2, 0),),
    "E6": (),
    "E7": (("P1", 2, 1),),
    "E8": (),
    "odpA": (("P1", 1, 0), ("P2", 2, 3)),
}


def _fixed_branches(ct: ContractionType, ray) -> list[ChartData]:
    if ct.special_phi and ct.family == "An":
        return []
    rays = cone_rays(ct.germ)
    out = []
    for branch_id, oi, pi in _FIXED_PLANS[ct.family]:
        out.append(_chart(rays[oi], rays[pi], tuple(ray), branch_id, "fixed", None, 1))
    return out


def _transversal_point_count(ct: ContractionType, i: int) -> int:
    """Number of marked-curve points on the boundary curve C_{i+1} away from
    the vertices, read off the surviving curve monomials."""
    beta = ct.weights()
    a1, a2, a3, d1, d2, d3 = weights_decomposition(beta)
    a = (a1, a2, a3)
    d = (d1, d2, d3)
    exps = ct.phi_exponents()
    min_i = min(l[i] for l in exps)
    survivors = [l for l in exps if l[i] == min_i]
    if len(survivors) < 2:
        return 0
    curve_exps = []
    for l in survivors:
        row = []
        for j in range(3):
            q, rem = divmod(l[j], d[j])
            if rem:
                raise ValueError("curve monomial is not divisible by the orbifold index")
            row.append(q)
        curve_exps.append(row)
    j, kk = [t for t in range(3) if t != i]
    gj, gk = a[kk], -a[j]
    base = curve_exps[0]
    coeffs = []
    for row in curve_exps:
        c, rem = divmod(row[j] - base[j], gj)
        if rem or row[kk] - base[kk] != c * gk:
            raise ValueError("curve exponents do not lie on the boundary torus lattice")
        coeffs.append(c)
    return max(coeffs) - min(coeffs)


def _solve_plane(b1, b2, v) -> tuple[int, int]:
    """Integer coordinates of v in the plane basis (b1, b2)."""
    for i, j in ((0, 1), (0, 2), (1, 2)):
        det = b1[i] * b2[j] - b1[j] * b2[i]
        if det:
            x = Fraction(v[i] * b2[j] - v[j] * b2[i], det)
            y = Fraction(b1[i] * v[j] - b1[j] * v[i], det)
            if x.denominator != 1 or y.denominator != 1:
                raise ValueError("vector is not in the plane lattice")
            xi, yi = int(x), int(y)
            if all(xi * b1[t] + yi * b2[t] == v[t] for t in range(3)):
                return xi, yi
            raise ValueError("vector is not in the plane spanned by the basis")
    raise ValueError("degenerate plane basis")


def _transversal_branches(ct: ContractionType, ray) -> list[ChartData]:
    if ct.germ.kind != "smooth":
        # The quadric families meet every boundary curve at the vertices only.
        return []
    beta = ct.weights()
    _a1, _a2, _a3, d1, d2, d3 = weights_decomposition(beta)
    d = (d1, d2, d3)
    rays = cone_rays(ct.germ)
    out = []
    for i in range(3):
        if d[i] == 1:
            continue
        count = _transversal_point_count(ct, i)
        if count == 0:
            continue
        mbar = primitive(cross(rays[i], ray))
        comp = unimodular_completion(mbar)
        b1, b2 = comp[1], comp[2]
        u_hat = _solve_plane(b1, b2, rays[i])
        w_hat = _solve_plane(b1, b2, tuple(ray))
        det2 = abs(u_hat[0] * w_hat[1] - u_hat[1] * w_hat[0])
        if det2 != d[i]:
            raise AssertionError("plane determinant disagrees with the edge index")
        u1 = (u_hat[0], u_hat[1], 0)
        u_s = (w_hat[0], w_hat[1], 0)
        e_t = (0, 0, 1)
        curve = f"C{i + 1}"
        chart = _chart(u1, e_t, u_s, f"{curve}.x", "transversal", curve, count)
        out.append(chart)
    return out


def branch_charts(ct: ContractionType) -> list[ChartData]:
    ray = blowup_ray(ct.germ, ct.weights())
    return _fixed_branches(ct, ray) + _transversal_branches(ct, ray)


# ---------------------------------------------------------------------------
# report assembly


def _two_dim_node(t: TwoDimType) -> dict | None:
    if t.gamma == 1:
        return None
    if t.b == 1:
        return {"kind": "curve", "label": f"-{t.gamma}"}
    return {"kind": "quotient", "label": f"1/{t.gamma}(1,{t.b})"}


def _diagram(charts: list[ChartData], fixtures: list[dict]) -> dict:
    nodes = [{"id": "gamma", "kind": "gamma", "label": "marked-curve"}]
    edges = []

    def add_chain(prefix: str, chart: ChartData) -> None:
        prev = "gamma"
        near = _two_dim_node(chart.near)
        if near is not None:
            nid = f"{prefix}.near"
            nodes.append({"id": nid, **near})
            edges.append(sorted((prev, nid)))
            prev = nid
        fid = f"{prefix}.fiber"
        nodes.append({"id": fid, "kind": "fiber", "label": "fiber"})
        edges.append(sorted((prev, fid)))
        far = _two_dim_node(chart.far)
        if far is not None:
            fid2 = f"{prefix}.far"
            nodes.append({"id": fid2, **far})
            edges.append(sorted((fid, fid2)))

    for chart in charts:
        if chart.point_count == 1:
            add_chain(chart.branch_id.replace(".x", ".1"), chart)
        else:
            for copy in range(1, chart.point_count + 1):
                add_chain(chart.branch_id.replace(".x", f".{copy}"), chart)
    for fx in fixtures:
        fid = f"{fx['id']}.fiber"
        nodes.append({"id": fid, "kind": "fiber", "label": "fiber (non-normal)"})
        edges.append(sorted(("gamma", fid)))
    return {"nodes": nodes, "edges": sorted(edges)}


def _fixtures(ct: ContractionType) -> list[dict]:
    if not ct.special_phi:
        return []
    if ct.family == "An":
        curve = "C1"
    elif ct.family == "D2k+2":
        curve = "C3"
    else:
        curve = "C2"
    return [{
        "id": "F1",
        "kind": "tangent-fiber",
        "curve": curve,
        "transversal_type": "1/2(1,1)",
        "non_normal_along_fiber": True,
        "local_model": "pair of lines x1^2 + x2^2 = x3 = 0 in the half(0,1,1) quotient",
        "source": "designated-local-model",
    }]


def _sing_entries(charts: list[ChartData]) -> list[dict]:
    """The isolated singular points away from the marked curve (B charts)."""
    groups: dict[CyclicQuotientType, int] = {}
    for chart in charts:
        t = normalize(chart.b_type)
        if t.r == 1:
            continue
        groups[t] = groups.get(t, 0) + chart.point_count
    return sorted(
        (
            {"type": render(t), "count": count, "classification": reid_tai_classify(t)}
            for t, count in groups.items()
        ),
        key=lambda e: e["type"],
    )


def _extra_entries(ct: ContractionType, charts: list[ChartData], star) -> list[dict]:
    out = []
    for chart in charts:
        t = normalize(chart.a_type)
        if t.r > 1:
            out.append({
                "site": f"{chart.branch_id}:on-curve",
                "type": render(t),
                "classification": reid_tai_classify(t),
                "count": chart.point_count,
            })
        if chart.fiber_index > 1:
            out.append({
                "site": f"{chart.branch_id}:fiber",
                "transversal_index": chart.fiber_index,
                "count": chart.point_count,
            })
    ray_names = _curve_names(ct, star)
    for name, d in zip(ray_names, star.edge_indices):
        if d > 1:
            out.append({"site": name, "transversal_index": d, "count": 1})
    return out


def _curve_names(ct: ContractionType, star) -> list[str]:
    rays = list(cone_rays(ct.germ))
    names = []
    for src in star.source_rays:
        names.append(f"C{rays.index(tuple(src)) + 1}")
    return names


@dataclass(frozen=True)
class ContractionReport:
    data: dict

    def to_dict(self) -> dict:
        return self.data

    def to_json(self) -> str:
        return json.dumps(self.data, sort_keys=True, indent=2)


def build_report(ct: ContractionType) -> ContractionReport:
    germ = ct.germ
    beta = ct.weights()
    ray = blowup_ray(germ, beta)
    phi = ct.phi_spec()

    model, ray2, fan1 = build_star_model(germ, beta)
    if tuple(ray2) != tuple(ray):
        raise AssertionError("blow-up ray mismatch")
    star = model.star

    conditions = check_conditions(germ, beta, phi)
    closed = closed_form_gamma_tilde_sq(ct)
    routes = {"closed_form": closed}
    if germ.kind == "smooth":
        routes["weighted_projective"] = gamma_tilde_sq_wpp(beta, phi)
    routes["star"] = gamma_tilde_sq_star(germ, beta, phi)
    values = set(routes.values())
    if len(values) != 1:
        raise AssertionError(f"marked-curve self-intersection routes disagree: {routes}")
    gamma_sq = closed

    charts = branch_charts(ct)
    fixtures = _fixtures(ct)
    singularities = _sing_entries(charts)
    extra = _extra_entries(ct, charts, star)
    diagram = _diagram(charts, fixtures)

    if germ.kind == "smooth":
        du_val = du_val_kind(du_val_recognize(beta, ct.phi_exponents()))
        expected = "Special" if ct.special_phi else (
            ct.family if ct.family.startswith("E") else f"{ct.family[0]}{ct.n}")
        if du_val != expected:
            raise AssertionError(f"hyperplane section type {du_val} != {expected}")
    else:
        # The quadric relation hides one coordinate of the chain; the section
        # type is read from the weight parameter directly.
        du_val = f"A{ct.n}"

    if germ.kind == "smooth":
        a1, a2, a3, d1, d2, d3 = weights_decomposition(beta)
        mult = weight_multiplicity(phi, exponent_weights(germ, ray))
        degree = Fraction(mult) / (d1 * d2 * d3)
        if degree.denominator != 1:
            raise AssertionError("curve class is not integral on the quotient surface")
        surface_block = {
            "kind": "weighted-projective",
            "weights": [a1, a2, a3],
            "curve_degree": int(degree),
            "diff": [
                {"curve": f"C{i + 1}", "index": d}
                for i, d in enumerate((d1, d2, d3))
                if d > 1
            ],
        }
    else:
        surface_block = {
            "kind": "quadric-star",
            "diff": [
                {"curve": name, "index": d}
                for name, d in zip(_curve_names(ct, star), star.edge_indices)
                if d > 1
            ],
        }

    flags = {
        "log_surface_toric": (ct.family == "An" and not ct.special_phi) or ct.family == "odpA",
        "plt_blowup": not ct.special_phi,
        "non_normal_exceptional": ct.special_phi,
        "singular_fibers": any(c.fiber_index > 1 for c in charts) or bool(fixtures),
    }

    data = {
        "label": ct.label(),
        "family": ct.family,
        "params": list(ct.params),
        "special_phi": ct.special_phi,
        "germ": germ.kind,
        "weights": list(beta),
        "blowup_ray": list(ray),
        "n": ct.n,
        "du_val": du_val,
        "surface": surface_block,
        "gamma_tilde_sq": fraction_str(gamma_sq),
        "gamma_tilde_sq_decimal": decimal_str(gamma_sq),
        "conditions": {
            "canonical_pair": conditions.canonical_pair,
            "quasihomogeneous": conditions.quasihomogeneous,
            "discrepancy": fraction_str(conditions.discrepancy),
        },
        "singularities": singularities,
        "extra_singularities": extra,
        "branches": [
            {
                "id": c.branch_id,
                "kind": c.kind,
                "curve": c.curve,
                "order": c.order,
                "b_type": render(normalize(c.b_type)),
                "a_type": render(normalize(c.a_type)),
                "near": str(c.near),
                "far": str(c.far),
                "fiber_index": c.fiber_index,
                "point_count": c.point_count,
            }
            for c in charts
        ],
        "diagram": diagram,
        "flags": flags,
        "fixtures": fixtures,
    }
    if ct.special_phi:
        # The special curve equation cuts a non-normal surface: the pair is
        # log canonical but not canonical, while B and C still hold.
        if conditions.canonical_pair or not (
            conditions.quasihomogeneous and conditions.discrepancy_zero
        ):
            raise AssertionError(
                f"special type {ct.label()} has the wrong admissibility pattern"
            )
    elif not conditions.all_hold:
        raise AssertionError(f"designated type {ct.label()} fails its admissibility conditions")
    return ContractionReport(data)


def subdivided_fan(ct: ContractionType) -> Fan:
    """Germ fan subdivided at the blow-up ray (for serialization)."""
    germ = ct.germ
    ray = blowup_ray(germ, ct.weights())
    return star_subdivide(germ_fan(germ), ray)
