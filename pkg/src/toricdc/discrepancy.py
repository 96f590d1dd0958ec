"""Log discrepancies of toric valuations against monomial boundary divisors.

A boundary is a formal sum of branches theta_i * {f_i = 0} where each f_i is
a sum of monomials with nonzero generic coefficients; only the exponent sets
matter for the toric computations here.  For a lattice vector c the weighted
multiplicity of a branch is the minimum pairing of c against its exponents,
and

    h(c) = k(c) - sum_i theta_i mult_i(c)

is the log discrepancy of the valuation at c (so h - 1 is the usual
discrepancy).  The pair is canonical in the inclusive toric sense when
h(c) >= 1 for every nonzero lattice point of the germ cone, coordinate rays
included.  ``is_canonical_pair_toric`` first tries a finite candidate set
and then certifies the verdict by subdividing the cone until the boundary
multiplicity is linear on every piece.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exactmath import (
    cross,
    determinant,
    matinv_rational,
    matvec,
    primitive,
    smith_normal_form,
    vadd,
)
from .germs import GermSpec, cone_rays, exponent_dim, exponent_weights, k_weight


@dataclass(frozen=True)
class MonomialBranch:
    theta: Fraction
    exponents: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "theta", Fraction(self.theta))
        exps = tuple(sorted({tuple(int(x) for x in l) for l in self.exponents}))
        if not exps:
            raise ValueError("a branch needs at least one monomial")
        if any(any(x < 0 for x in l) for l in exps):
            raise ValueError("exponents must be non-negative")
        dims = {len(l) for l in exps}
        if len(dims) != 1:
            raise ValueError("mixed exponent dimensions in one branch")
        object.__setattr__(self, "exponents", exps)

    @property
    def dim(self) -> int:
        return len(self.exponents[0])


@dataclass(frozen=True)
class MonomialDivisorSpec:
    branches: tuple[MonomialBranch, ...]

    def __post_init__(self) -> None:
        branches = tuple(self.branches)
        dims = {b.dim for b in branches}
        if len(dims) > 1:
            raise ValueError("mixed exponent dimensions across branches")
        object.__setattr__(self, "branches", branches)

    @property
    def dim(self) -> int:
        return self.branches[0].dim if self.branches else 0


_MONOMIAL_RE = re.compile(r"x(\d+)(?:\^(\d+))?")


def parse_monomial(text: str, dim: int | None = None) -> tuple[int, ...]:
    """Parse ``x1^2*x2`` (the * is optional) into an exponent tuple."""
    compact = text.replace("*", "").replace(" ", "")
    if not compact:
        raise ValueError("empty monomial")
    pos = 0
    powers: dict[int, int] = {}
    for m in _MONOMIAL_RE.finditer(compact):
        if m.start() != pos:
            raise ValueError(f"cannot parse monomial {text!r}")
        i = int(m.group(1))
        if i < 1:
            raise ValueError(f"variable index must be >= 1 in {text!r}")
        powers[i] = powers.get(i, 0) + (int(m.group(2)) if m.group(2) else 1)
        pos = m.end()
    if pos != len(compact) or not powers:
        raise ValueError(f"cannot parse monomial {text!r}")
    n = dim or max(powers)
    if max(powers) > n:
        raise ValueError(f"monomial {text!r} uses more than {n} variables")
    return tuple(powers.get(i + 1, 0) for i in range(n))


def parse_branch(text: str, dim: int | None = None) -> MonomialBranch:
    """Parse ``p/q; mono + mono + ...`` into a branch."""
    if ";" not in text:
        raise ValueError(f"branch line {text!r} needs 'coefficient; polynomial'")
    coeff_text, poly = text.split(";", 1)
    theta = Fraction(coeff_text.strip())
    monos = [parse_monomial(part, dim) for part in poly.split("+")]
    width = max(len(m) for m in monos)
    monos = [m + (0,) * (width - len(m)) for m in monos]
    return MonomialBranch(theta, tuple(monos))


def parse_boundary(text: str, dim: int | None = None) -> MonomialDivisorSpec:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    branches = [parse_branch(ln, dim) for ln in lines]
    if branches and dim is None:
        width = max(b.dim for b in branches)
        branches = [
            MonomialBranch(b.theta, tuple(l + (0,) * (width - len(l)) for l in b.exponents))
            for b in branches
        ]
    return MonomialDivisorSpec(tuple(branches))


def weight_multiplicity(spec: MonomialDivisorSpec, wvec: Sequence) -> Fraction:
    """sum_i theta_i * min over exponents of <wvec, l>; 0 for an empty spec."""
    total = Fraction(0)
    for b in spec.branches:
        total += b.theta * min(sum(Fraction(w) * l for w, l in zip(wvec, exp))
                               for exp in b.exponents)
    return total


def point_multiplicity(spec: MonomialDivisorSpec) -> Fraction:
    """Multiplicity at the distinguished point: the all-ones weight vector."""
    if not spec.branches:
        return Fraction(0)
    return weight_multiplicity(spec, (1,) * spec.dim)


@dataclass(frozen=True)
class DiscrepancyResult:
    value: Fraction
    k_weight: Fraction
    multiplicity: Fraction
    valuation: tuple[int, ...]


def toric_log_discrepancy_minus_one(
    germ: GermSpec, spec: MonomialDivisorSpec, c
) -> DiscrepancyResult:
    """a(E_c, X, D) = k(c) - 1 - mult_c(D) for the toric valuation at c."""
    c = tuple(int(x) for x in c)
    if spec.branches and spec.dim != exponent_dim(germ):
        raise ValueError(
            f"boundary uses {spec.dim} variables but the germ has {exponent_dim(germ)}"
        )
    k = k_weight(germ, c)
    wvec = exponent_weights(germ, c)
    mult = weight_multiplicity(spec, wvec)
    return DiscrepancyResult(k - 1 - mult, k, mult, c)


def _log_disc_plus_one(germ: GermSpec, spec: MonomialDivisorSpec, c) -> Fraction:
    res = toric_log_discrepancy_minus_one(germ, spec, c)
    return res.value + 1


@dataclass(frozen=True)
class CanonicityResult:
    canonical: bool
    witness: tuple[int, ...] | None
    value: Fraction | None
    method: str


def _newton_normal_candidates(spec: MonomialDivisorSpec) -> list[tuple[int, ...]]:
    """Primitive octant normals of Newton polyhedron facets (3D branches only)."""
    out: set[tuple[int, ...]] = set()
    for branch in spec.branches:
        exps = branch.exponents
        if len(exps[0]) != 3:
            return []
        for a, b, c in itertools.combinations(exps, 3):
            n = cross([b[i] - a[i] for i in range(3)], [c[i] - a[i] for i in range(3)])
            if n == (0, 0, 0):
                continue
            for sign in (1, -1):
                v = tuple(sign * x for x in n)
                if all(x >= 0 for x in v) and any(x > 0 for x in v):
                    out.add(primitive(v))
        for a, b in itertools.combinations(exps, 2):
            d = [b[i] - a[i] for i in range(3)]
            for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
                n = cross(d, e)
                if n == (0, 0, 0):
                    continue
                for sign in (1, -1):
                    v = tuple(sign * x for x in n)
                    if all(x >= 0 for x in v) and any(x > 0 for x in v):
                        out.add(primitive(v))
    return sorted(out)


def _candidate_points(germ: GermSpec, spec: MonomialDivisorSpec) -> list[tuple[int, ...]]:
    rays = list(cone_rays(germ))
    cands: list[tuple[int, ...]] = []
    seen = set()

    def push(v):
        v = tuple(int(x) for x in v)
        if any(v) and v not in seen:
            seen.add(v)
            cands.append(v)

    for r in rays:
        push(r)
    for a, b in itertools.combinations(rays, 2):
        push(vadd(a, b))
    push(tuple(sum(col) for col in zip(*rays)))
    if germ.kind == "smooth":
        for v in _newton_normal_candidates(spec):
            push(v)
        for a, b in itertools.combinations(_newton_normal_candidates(spec), 2):
            push(vadd(a, b))
    return cands


def _simplicial_pieces(germ: GermSpec) -> list[tuple[tuple[int, ...], ...]]:
    rays = cone_rays(germ)
    if len(rays) == 3:
        return [tuple(rays)]
    return [(rays[0], rays[1], rays[2]), (rays[0], rays[2], rays[3])]


def _pairings(germ: GermSpec, exps, gens) -> list[list[Fraction]]:
    """values[e][i] = pairing of exponent e against generator i."""
    wvecs = [exponent_weights(germ, g) for g in gens]
    return [[sum(Fraction(w) * l for w, l in zip(wv, exp)) for wv in wvecs] for exp in exps]


def _half_open_points(gens) -> list[tuple[int, ...]]:
    """Nonzero lattice points of the half-open parallelepiped of three generators."""
    cols = [[gens[j][i] for j in range(3)] for i in range(3)]
    det = abs(determinant(cols))
    if det > 10**7:
        raise RuntimeError("parallelepiped too large for exact enumeration")
    if det == 1:
        return []
    diag, left, _right = smith_normal_form(cols)
    left_inv = matinv_rational(left)
    inv_cols = matinv_rational(cols)
    pts = []
    for ks in itertools.product(*(range(abs(int(d))) for d in diag)):
        z = [int(x) for x in matvec(left_inv, list(ks))]
        t = [Fraction(v) for v in matvec(inv_cols, z)]
        floors = [x.numerator // x.denominator for x in t]
        s = tuple(z[i] - sum(cols[i][j] * floors[j] for j in range(3)) for i in range(3))
        if any(s):
            pts.append(s)
    return pts


def _adjugate3(m):
    def minor(r, c):
        rows = [i for i in range(3) if i != r]
        cols = [j for j in range(3) if j != c]
        return m[rows[0]][cols[0]] * m[rows[1]][cols[1]] - m[rows[0]][cols[1]] * m[rows[1]][cols[0]]

    return [[(-1) ** (i + j) * minor(j, i) for j in range(3)] for i in range(3)]


def _linear_h_form(germ: GermSpec, chosen) -> tuple[list[int], int]:
    """Integer form with h(c) = (hnum . c) / hden where each branch contributes
    one fixed exponent (valid on a piece where that exponent attains the minimum).
    """
    form = []
    for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        wv = exponent_weights(germ, e)
        val = k_weight(germ, e)
        for theta, exp in chosen:
            val -= theta * sum(w * l for w, l in zip(wv, exp))
        form.append(Fraction(val))
    hden = math.lcm(*(f.denominator for f in form))
    return [int(f * hden) for f in form], hden


_INT64_SAFE = 2**62


def _piece_violation(gens, hnum: list[int], hden: int):
    """First half-open parallelepiped point with hnum . s < hden, else None.

    The coset sweep runs in batched int64 arithmetic when the magnitudes
    provably fit; otherwise it falls back to the exact per-point path.
    """
    cols = [[gens[j][i] for j in range(3)] for i in range(3)]
    det = determinant(cols)
    if abs(det) > 10**7:
        raise RuntimeError("parallelepiped too large for exact enumeration")
    if abs(det) == 1:
        return None
    diag, left, _right = smith_normal_form(cols)
    left_inv = [[v * determinant(left) for v in row] for row in _adjugate3(left)]
    adj = _adjugate3(cols)
    sizes = [abs(int(d)) for d in diag]

    zb = max(sum(abs(v) * (s - 1) for v, s in zip(row, sizes)) for row in left_inv)
    tb = zb * max(sum(abs(v) for v in row) for row in adj)
    fb = tb // abs(det) + 1
    sb = zb + fb * max(sum(abs(v) for v in row) for row in cols)
    if max(tb, sb, sb * sum(abs(v) for v in hnum)) < _INT64_SAFE:
        lmat = np.array(left_inv, dtype=np.int64).T
        amat = np.array(adj, dtype=np.int64).T
        cmat = np.array(cols, dtype=np.int64).T
        hvec = np.array(hnum, dtype=np.int64)
        total = sizes[0] * sizes[1] * sizes[2]
        for start in range(0, total, 1 << 20):
            idx = np.arange(start, min(start + (1 << 20), total), dtype=np.int64)
            ks = np.stack(
                [idx // (sizes[1] * sizes[2]), (idx // sizes[2]) % sizes[1], idx % sizes[2]],
                axis=1,
            )
            z = ks @ lmat
            s = z - np.floor_divide(z @ amat, det) @ cmat
            hits = np.flatnonzero((s @ hvec < hden) & s.any(axis=1))
            if hits.size:
                return tuple(int(v) for v in s[hits[0]])
        return None
    for s in _half_open_points(gens):
        if sum(a * b for a, b in zip(hnum, s)) < hden:
            return s
    return None


def _split_cone(gens, gvals):
    """Split a simplicial cone by a linear form with the given generator values."""
    pos = [g for g, v in zip(gens, gvals) if v > 0]
    neg = [g for g, v in zip(gens, gvals) if v < 0]
    zero = [g for g, v in zip(gens, gvals) if v == 0]
    val = {g: v for g, v in zip(gens, gvals)}

    def cut(p, n):
        w = tuple(val[p] * b - val[n] * a for a, b in zip(p, n))
        w = primitive(w)
        return w

    if len(zero) == 1:
        w = cut(pos[0], neg[0])
        return [(zero[0], pos[0], w), (zero[0], w, neg[0])]
    if len(pos) == 2:
        w0 = cut(pos[0], neg[0])
        w1 = cut(pos[1], neg[0])
        return [(pos[0], pos[1], w1), (pos[0], w1, w0), (neg[0], w0, w1)]
    w0 = cut(pos[0], neg[0])
    w1 = cut(pos[0], neg[1])
    return [(neg[0], neg[1], w1), (neg[0], w1, w0), (pos[0], w0, w1)]


def is_canonical_pair_toric(
    germ: GermSpec, spec: MonomialDivisorSpec, max_splits: int = 2000
) -> CanonicityResult:
    """Decide h(c) >= 1 on all nonzero lattice points of the germ cone.

    Fast pass: evaluate h on a finite candidate set (cone rays, their sums,
    Newton facet normals of the branches).  A failure there is already a
    witness.  Otherwise subdivide the cone until every branch multiplicity is
    linear per piece, then bound h from below through generators and the
    half-open parallelepiped points of each piece.
    """
    if spec.branches and spec.dim != exponent_dim(germ):
        raise ValueError(
            f"boundary uses {spec.dim} variables but the germ has {exponent_dim(germ)}"
        )
    for cand in _candidate_points(germ, spec):
        h = _log_disc_plus_one(germ, spec, cand)
        if h < 1:
            return CanonicityResult(False, cand, h - 1, "candidate")

    stack = list(_simplicial_pieces(germ))
    splits = 0
    while stack:
        gens = stack.pop()
        cols = [[gens[j][i] for j in range(3)] for i in range(3)]
        if determinant(cols) == 0:
            raise RuntimeError("degenerate piece during subdivision")
        chosen_rows: list[list[Fraction]] = []
        chosen_exps: list[tuple[Fraction, tuple[int, ...]]] = []
        separating = None
        for branch in spec.branches:
            vals = _pairings(germ, branch.exponents, gens)
            best = None
            for i, row in enumerate(vals):
                if all(row[k] <= other[k] for other in vals for k in range(3)):
                    best = i
                    break
            if best is not None:
                chosen_rows.append([branch.theta * x for x in vals[best]])
                chosen_exps.append((branch.theta, branch.exponents[best]))
                continue
            for ra, rb in itertools.combinations(vals, 2):
                diff = [Fraction(a - b) for a, b in zip(ra, rb)]
                if any(d > 0 for d in diff) and any(d < 0 for d in diff):
                    den = math.lcm(*(d.denominator for d in diff))
                    separating = [int(d * den) for d in diff]
                    break
            if separating is None:
                raise RuntimeError("no separating pair despite nonlinear branch")
            break
        if separating is not None:
            splits += 1
            if splits > max_splits:
                raise RuntimeError("subdivision did not reach linearity")
            stack.extend(_split_cone(gens, separating))
            continue
        # h is linear here: ell(c) = k(c) - sum of chosen branch rows.
        hnum, hden = _linear_h_form(germ, chosen_exps)
        for i, g in enumerate(gens):
            ell = k_weight(germ, g) - sum(row[i] for row in chosen_rows)
            if ell != Fraction(sum(a * b for a, b in zip(hnum, g)), hden):
                raise RuntimeError("linear form disagrees with generator values")
            if ell < 1:
                h = _log_disc_plus_one(germ, spec, g)
                return CanonicityResult(False, tuple(g), h - 1, "subdivision")
        s = _piece_violation(gens, hnum, hden)
        if s is not None:
            h = _log_disc_plus_one(germ, spec, s)
            if h >= 1:
                raise RuntimeError("linear form disagrees with exact evaluation")
            return CanonicityResult(False, tuple(s), h - 1, "subdivision")
    return CanonicityResult(True, None, None, "subdivision")


def nonplt_bound(r: int, q: int, alpha: Fraction, mult: Fraction) -> tuple[Fraction, Fraction]:
    """Discrepancy of the distinguished valuation over a plt surface germ and
    the a-priori bound -(1 - 1/r)(1 + 1/q) it must not exceed.
    """
    if r < 1 or q < 1:
        raise ValueError("plt germ parameters must be positive")
    if math.gcd(r, q) != 1:
        raise ValueError(f"plt germ needs gcd(r, q) = 1, got ({r}, {q})")
    alpha = Fraction(alpha)
    mult = Fraction(mult)
    disc = Fraction(q + 1 - r, r) + alpha * Fraction(q, r) - mult
    bound = -(1 - Fraction(1, r)) * (1 + Fraction(1, q))
    return disc, bound


@dataclass(frozen=True)
class LcSplit:
    j: int | None
    theta_prime: Fraction | None
    theta_dprime: Fraction | None
    statement2_lhs: Fraction | None
    statement2_holds: bool | None
    admissible: tuple[int, ...]
    d_x: tuple[int, ...]
    d_y: tuple[int, ...]

    @property
    def decomposed(self) -> bool:
        return self.j is not None


def _axis_order(spec: MonomialDivisorSpec) -> None:
    if len(spec.branches) < 2:
        raise ValueError("plane boundary needs the two axis branches first")
    if spec.branches[0].exponents != ((1, 0),) or spec.branches[1].exponents != ((0, 1),):
        raise ValueError("plane boundary needs branches x, y (in this order) first")


def lc_decompose_2d(spec: MonomialDivisorSpec) -> LcSplit:
    """Split one plane branch so the x-axis part of the boundary reaches
    coefficient exactly 1, and test the y-axis inequality on the rest.

    Branch 0 and 1 must be the coordinate axes; the remaining branches are
    curves meeting both axes only at the origin.  Returns the first
    admissible split index j (position among the non-axis branches), the
    split coefficients, and the value of the complementary inequality.
    """
    _axis_order(spec)
    curves = spec.branches[2:]
    d_x: list[int] = []
    d_y: list[int] = []
    for b in curves:
        if min(l[0] for l in b.exponents) > 0 or min(l[1] for l in b.exponents) > 0:
            raise ValueError("curve branch is divisible by a coordinate; fold it into the axis terms")
        dx = min((l[0] for l in b.exponents if l[1] == 0), default=None)
        dy = min((l[1] for l in b.exponents if l[0] == 0), default=None)
        if dx is None or dy is None:
            raise ValueError("curve branch is divisible by a coordinate; fold it into the axis terms")
        d_x.append(dx)
        d_y.append(dy)
    theta1, theta2 = spec.branches[0].theta, spec.branches[1].theta

    admissible = []
    for j in range(len(curves)):
        before = theta1 + sum(curves[i].theta * d_x[i] for i in range(j))
        after = before + curves[j].theta * d_x[j]
        if before <= 1 <= after:
            admissible.append(j)
    if not admissible:
        return LcSplit(None, None, None, None, None, (), tuple(d_x), tuple(d_y))
    j = admissible[0]
    before = theta1 + sum(curves[i].theta * d_x[i] for i in range(j))
    theta_prime = (Fraction(1) - before) / d_x[j] if d_x[j] else Fraction(0)
    theta_dprime = curves[j].theta - theta_prime
    lhs = theta2 + theta_dprime * d_y[j] + sum(curves[i].theta * d_y[i] for i in range(j + 1, len(curves)))
    return LcSplit(
        j,
        theta_prime,
        theta_dprime,
        lhs,
        lhs >= 1,
        tuple(admissible),
        tuple(d_x),
        tuple(d_y),
    )


def cyclic_exclusion_witness(germ: GermSpec) -> dict:
    """A negative-discrepancy certificate over a cyclic germ.

    The invariant boundary x2*x3 has multiplicity 2 at the distinguished
    point, and the valuation at the deep lattice point (1, r-q, q)/r already
    has discrepancy (1-r)/r < 0, so no boundary of this shape stays canonical.
    """
    if germ.kind != "cyclic":
        raise ValueError("exclusion witness is defined for cyclic germs")
    from .germs import ambient_to_lattice

    spec = MonomialDivisorSpec((MonomialBranch(Fraction(1), ((0, 1, 1),)),))
    r, q = germ.r, germ.q
    deep = ambient_to_lattice(germ, (Fraction(1, r), Fraction(r - q, r), Fraction(q, r)))
    res = toric_log_discrepancy_minus_one(germ, spec, deep)
    mult_p = point_multiplicity(spec)
    check = is_canonical_pair_toric(germ, spec)
    return {
        "germ": f"cyclic:{r},{q}",
        "branch": "x2*x3",
        "point_multiplicity": mult_p,
        "deep_ray_ambient": (Fraction(1, r), Fraction(r - q, r), Fraction(q, r)),
        "deep_ray_lattice": deep,
        "discrepancy": res.value,
        "canonical": check.canonical,
        "fast_witness": check.witness,
    }
