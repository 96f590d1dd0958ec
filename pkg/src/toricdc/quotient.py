"""Cyclic quotient singularity types and the Reid-Tai classification.

A type 1/r(w1,...,wk) is the germ C^k / Z_r where the generator acts by
multiplying the i-th coordinate with zeta^{w_i}.  Types are compared through
a normal form: reduce to a faithful action, then minimize the sorted weight
tuple over all unit multiples of the group generator.

``cone_to_quotient`` reads the type off a full-dimensional simplicial cone
via the Smith normal form of its generator matrix; ``quotient_2d`` does the
two-dimensional version used for chart points on exceptional surfaces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exactmath import (
    determinant,
    matinv_rational,
    matvec,
    smith_normal_form,
    transpose,
)


@dataclass(frozen=True)
class CyclicQuotientType:
    r: int
    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ValueError("quotient order must be positive")

    def __str__(self) -> str:
        return render(self)


def render(t: CyclicQuotientType) -> str:
    inner = ",".join(str(w) for w in t.weights)
    return f"1/{t.r}({inner})"


def normalize(t: CyclicQuotientType) -> CyclicQuotientType:
    """Normal form: faithful reduction, then lex-min sorted tuple over units.

    Unit multiples of the generator and coordinate permutations give the same
    germ, so the normal form is min over units u coprime to r of
    sorted((u*w_i) mod r).
    """
    r = t.r
    w = [x % r for x in t.weights]
    g = math.gcd(r, *w) if w else r
    if g > 1:
        r //= g
        w = [x // g for x in w]
    if r == 1:
        return CyclicQuotientType(1, tuple(0 for _ in w))
    best = None
    for u in range(1, r):
        if math.gcd(u, r) != 1:
            continue
        cand = tuple(sorted((u * x) % r for x in w))
        if best is None or cand < best:
            best = cand
    return CyclicQuotientType(r, best)


def same_type(a: CyclicQuotientType, b: CyclicQuotientType) -> bool:
    return normalize(a) == normalize(b)


def ages(t: CyclicQuotientType) -> dict[int, Fraction]:
    """age(k) = sum_i frac(k*w_i / r) for k = 1..r-1 (after faithful reduction)."""
    t = normalize(t)
    r = t.r
    return {k: Fraction(sum((k * w) % r for w in t.weights), r) for k in range(1, r)}


def reid_tai_classify(t: CyclicQuotientType) -> str:
    """Classify by the Reid-Tai criterion.

    Returns one of Smooth, Terminal, CanonicalNotTerminal, NotCanonical.
    Terminal iff every age exceeds 1; canonical iff none drops below 1.
    """
    t = normalize(t)
    if t.r == 1 or all(w == 0 for w in t.weights):
        return "Smooth"
    age = ages(t)
    if all(v > 1 for v in age.values()):
        return "Terminal"
    if all(v >= 1 for v in age.values()):
        return "CanonicalNotTerminal"
    return "NotCanonical"


def _coset_generator(m_cols: list[list[int]]) -> tuple[int, list[Fraction]]:
    """Order r and rational coordinates c of a generator of Z^n / (column lattice)."""
    diag, left, _right = smith_normal_form(m_cols)
    n = len(diag)
    invariants = [abs(int(x)) for x in diag]
    if any(x > 1 for x in invariants[:-1]):
        raise ValueError("cone quotient group is not cyclic")
    r = invariants[-1]
    left_inv = matinv_rational(left)
    e_last = [Fraction(0)] * n
    e_last[-1] = Fraction(1)
    n0 = matvec(left_inv, e_last)
    c = matvec(matinv_rational(m_cols), n0)
    return r, [Fraction(x) for x in c]


def cone_to_quotient(generators: Iterable[Iterable[int]]) -> CyclicQuotientType:
    """Quotient type of a full-dimensional simplicial cone.

    The i-th weight pairs with the i-th generator: the chart is C^n / Z_r
    acting on the coordinates dual to the given generators.  Raises when the
    generator matrix is singular or the quotient group is not cyclic.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    n = len(gens)
    if any(len(g) != n for g in gens):
        raise ValueError("cone generators must be square")
    m_cols = [[gens[j][i] for j in range(n)] for i in range(n)]
    r, c = _coset_generator(m_cols)
    if r == 1:
        return CyclicQuotientType(1, tuple(0 for _ in range(n)))
    weights = tuple(int((r * x) % r) for x in c)
    return CyclicQuotientType(r, weights)


@dataclass(frozen=True)
class TwoDimType:
    """A surface chart type 1/gamma(1, b), fiber coordinate normalized first."""

    gamma: int
    b: int

    def __str__(self) -> str:
        return f"1/{self.gamma}(1,{self.b})"


def quotient_2d(u, v) -> TwoDimType:
    """Type of the plane cone <u, v> with the u-coordinate normalized to weight 1.

    u and v must be primitive lattice vectors in Z^2.  The first slot is the
    coordinate vanishing on the curve dual to u (for chart points on an
    exceptional surface, pass the fiber direction first).
    """
    u = tuple(int(x) for x in u)
    v = tuple(int(x) for x in v)
    m = abs(determinant([list(u), list(v)]))
    if m == 0:
        raise ValueError("degenerate plane cone")
    if m == 1:
        return TwoDimType(1, 0)
    r, c = _coset_generator([[u[0], v[0]], [u[1], v[1]]])
    w_u = int((r * c[0]) % r)
    w_v = int((r * c[1]) % r)
    g = math.gcd(r, math.gcd(w_u, w_v))
    if g > 1:
        r, w_u, w_v = r // g, w_u // g, w_v // g
    if r == 1:
        return TwoDimType(1, 0)
    if math.gcd(w_u, r) != 1:
        raise ValueError("first chart weight is not invertible; cannot normalize the plane type")
    t = pow(w_u, -1, r)
    return TwoDimType(r, (t * w_v) % r)


def terminal_weight_triples(r: int) -> list[tuple[int, int, int]]:
    """Brute-force reference: faithful sorted triples defining terminal 1/r types."""
    out = []
    for w1 in range(r):
        for w2 in range(w1, r):
            for w3 in range(w2, r):
                if math.gcd(math.gcd(w1, w2), math.gcd(w3, r)) != 1:
                    continue
                ok = True
                for k in range(1, r):
                    s = (k * w1) % r + (k * w2) % r + (k * w3) % r
                    if s <= r:
                        ok = False
                        break
                if ok:
                    out.append((w1, w2, w3))
    return out


def verify_terminal_lemma(r_max: int, kernel: str | None = None) -> dict:
    """Check that the terminal 1/r types are exactly the 1/r(1, -q, q) family.

    Scans all faithful weight triples for each r in 2..r_max with the integer
    kernel and compares the set of normal forms against
    {normalize(1/r(1, r-q, q)) : gcd(q, r) = 1}.
    """
    from . import _kernels

    per_r = []
    all_match = True
    for r in range(2, r_max + 1):
        found = _kernels.scan_terminal(r, kernel=kernel)
        got = {normalize(CyclicQuotientType(r, tuple(t))) for t in found}
        expected = {
            normalize(CyclicQuotientType(r, (1, r - q, q)))
            for q in range(1, r)
            if math.gcd(q, r) == 1
        }
        match = got == expected
        all_match = all_match and match
        per_r.append({
            "r": r,
            "triples": len(found),
            "classes": len(got),
            "expected_classes": len(expected),
            "match": match,
        })
    return {"r_max": r_max, "verified": all_match, "per_r": per_r}
