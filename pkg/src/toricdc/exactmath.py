"""Exact integer and rational linear algebra for lattice computations.

Everything here works over Python ints and fractions.Fraction; no floats are
created anywhere.  Vectors are plain tuples, matrices are tuples of row
tuples.  The module provides the primitives the fan and singularity layers
are built on: gcd/content reduction, determinants, Smith and Hermite normal
forms, and unimodular basis completions.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Rational = Fraction

Vec = tuple
Matrix = tuple


def vec(*entries):
    return tuple(entries)


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vscale(c, v):
    return tuple(c * a for a in v)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v, strict=True))


def cross(u, v):
    # 3-dimensional only.
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def content(v):
    """gcd of the entries, nonnegative; 0 only for the zero vector."""
    g = 0
    for a in v:
        g = gcd(g, a)
    return g


def is_primitive(v):
    return content(v) == 1


def primitive(v):
    """Divide an integer vector by its content.

    The zero vector spans no ray, so it is rejected.
    """
    g = content(v)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(a // g for a in v)


def identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m):
    return tuple(zip(*m, strict=True))


def matvec(m, v):
    return tuple(dot(row, v) for row in m)


def matmul(a, b):
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def determinant(m):
    """Determinant of a square integer (or rational) matrix.

    Fraction-free Bareiss elimination; exact for int entries and also
    correct for Fraction entries.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                if isinstance(num, int):
                    a[i][j] = num // prev
                else:
                    a[i][j] = num / prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def matinv_rational(m):
    """Exact inverse with Fraction entries.  Errors on singular input."""
    n = len(m)
    det = determinant(m)
    if det == 0:
        raise ValueError("singular matrix has no inverse")
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        scale = aug[col][col]
        aug[col] = [x / scale for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def _add_row(a, dst, src, mult):
    a[dst] = [x + mult * y for x, y in zip(a[dst], a[src])]


def _swap_cols(a, i, j):
    for row in a:
        row[i], row[j] = row[j], row[i]


def _add_col(a, dst, src, mult):
    for row in a:
        row[dst] = row[dst] + mult * row[src]


def smith_normal_form(m):
    """Smith normal form with unimodular transforms.

    Returns (diag, left, right) where left @ m @ right is the diagonal
    matrix diag(s_1, ..., s_n) with s_1 | s_2 | ... | s_n, all positive.
    left and right have determinant +-1.  Pivots are chosen as the entry of
    least absolute value (earliest position on ties), which keeps the
    reduction deterministic.

    Raises if m is singular: such a matrix spans a degenerate cone.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    if determinant(m) == 0:
        raise ValueError("degenerate cone: generator matrix is singular")

    a = [list(row) for row in m]
    left = [list(row) for row in identity_matrix(n)]
    right = [list(row) for row in identity_matrix(n)]

    for t in range(n):
        while True:
            # Minimal nonzero entry of the trailing block becomes the pivot.
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            bi, bj = best
            if bi != t:
                _swap_rows(a, t, bi)
                _swap_rows(left, t, bi)
            if bj != t:
                _swap_cols(a, t, bj)
                _swap_rows(right, t, bj)  # column ops on a are row ops on right^T

            dirty = False
            for i in range(t + 1, n):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    _add_row(a, i, t, -q)
                    _add_row(left, i, t, -q)
                    if a[i][t] != 0:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    _add_col(a, j, t, -q)
                    _add_row(right, j, t, -q)
                    if a[t][j] != 0:
                        dirty = True
            if dirty:
                continue
            # Divisibility: the pivot must divide the rest of the block.
            offender = None
            for i in range(t + 1, n):
                for j in range(t + 1, n):
                    if a[i][j] % a[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            _add_row(a, t, offender, 1)
            _add_row(left, t, offender, 1)

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]

    diag = tuple(a[i][i] for i in range(n))
    # Column ops were accumulated as row ops on right^T; undo the transpose.
    right_out = tuple(tuple(right[i][j] for i in range(n)) for j in range(n))
    return diag, tuple(tuple(r) for r in left), right_out


def hermite_basis(rows):
    """Row-style Hermite basis of the lattice generated by integer rows.

    Accepts any number of generators; returns a full-rank upper-triangular
    basis with positive pivots.  Errors when the generators do not span a
    finite-index sublattice of Z^n.
    """
    if not rows:
        raise ValueError("no generators")
    n = len(rows[0])
    work = [list(r) for r in rows]
    basis = []
    col = 0
    while col < n:
        live = [r for r in work if any(r[col:])]
        pivots = [r for r in live if r[col] != 0]
        if not pivots:
            raise ValueError("generators do not span a full-rank lattice")
        # Euclid on the column entries until a single pivot row remains.
        while len([r for r in live if r[col] != 0]) > 1:
            nz = sorted((r for r in live if r[col] != 0), key=lambda r: abs(r[col]))
            r0, r1 = nz[0], nz[1]
            q = r1[col] // r0[col]
            for j in range(n):
                r1[j] -= q * r0[j]
        pivot = next(r for r in live if r[col] != 0)
        if pivot[col] < 0:
            for j in range(n):
                pivot[j] = -pivot[j]
        basis.append(pivot)
        work = [r for r in live if r is not pivot]
        col += 1
    # Reduce above-pivot entries for a canonical form.
    for i in reversed(range(n)):
        p = basis[i][i]
        for k in range(i):
            q = basis[k][i] // p
            if q:
                for j in range(n):
                    basis[k][j] -= q * basis[i][j]
    return tuple(tuple(r) for r in basis)


def unimodular_completion(v):
    """A unimodular U with U @ v = (1, 0, ..., 0) for primitive integer v.

    Rows 2..n of U therefore descend to a basis of Z^n / Zv, which is how the
    star-surface quotient coordinates are fixed deterministically.
    """
    if not is_primitive(v):
        raise ValueError("completion requires a primitive vector")
    n = len(v)
    col = [[x] for x in v]
    a = [row[:] for row in col]
    left = [list(row) for row in identity_matrix(n)]
    # Single-column Smith reduction.
    while True:
        nz = [i for i in range(n) if a[i][0] != 0]
        piv = min(nz, key=lambda i: (abs(a[i][0]), i))
        done = True
        for i in range(n):
            if i != piv and a[i][0] != 0:
                q = a[i][0] // a[piv][0]
                _add_row(a, i, piv, -q)
                _add_row(left, i, piv, -q)
                if a[i][0] != 0:
                    done = False
        if done:
            break
    nz = [i for i in range(n) if a[i][0] != 0]
    piv = nz[0]
    if piv != 0:
        _swap_rows(a, 0, piv)
        _swap_rows(left, 0, piv)
    if a[0][0] < 0:
        a[0] = [-x for x in a[0]]
        left[0] = [-x for x in left[0]]
    assert a[0][0] == 1
    return tuple(tuple(r) for r in left)


def fraction_str(x):
    """Render an exact rational as p/q (or a bare integer)."""
    f = Fraction(x)
    return str(f)


def decimal_str(x, places=4):
    """Fixed-point decimal rendering computed by integer division.

    Kept float-free on purpose: the engine guarantees no floating point
    anywhere, including display paths.
    """
    f = Fraction(x)
    sign = "-" if f < 0 else ""
    f = abs(f)
    scaled = f * 10**places
    whole, rem = divmod(scaled.numerator, scaled.denominator)
    # round half away from zero
    if 2 * rem >= scaled.denominator:
        whole += 1
    digits = str(whole).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"
