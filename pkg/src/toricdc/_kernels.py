"""Integer scan kernels for the terminal weight-triple search.

The hot loop enumerates sorted faithful weight triples (w1 <= w2 <= w3) in
[0, r)^3 and keeps those where sum_i (k*w_i mod r) > r for every k in 1..r-1.
Two implementations share this contract:

* a numba @njit kernel with early exit on the k loop,
* a pure numpy kernel that masks candidate rows alive per k.

Selection order: the TORICDC_KERNEL environment variable ("numba" or
"numpy", read at call time), then numba when importable, else numpy.
``TORICDC_WORKERS`` parallelizes independent r values across processes.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


@njit(cache=True)
def _gcd2(a: int, b: int) -> int:  # pragma: no cover - compiled
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _scan_terminal_numba(r: int) -> np.ndarray:  # pragma: no cover - compiled
    out = np.empty((r * r * r, 3), dtype=np.int64)
    count = 0
    for w1 in range(r):
        for w2 in range(w1, r):
            for w3 in range(w2, r):
                g = _gcd2(_gcd2(w1, w2), _gcd2(w3, r))
                if g != 1:
                    continue
                ok = True
                for k in range(1, r):
                    s = (k * w1) % r + (k * w2) % r + (k * w3) % r
                    if s <= r:
                        ok = False
                        break
                if ok:
                    out[count, 0] = w1
                    out[count, 1] = w2
                    out[count, 2] = w3
                    count += 1
    return out[:count]


def _scan_terminal_numpy(r: int) -> np.ndarray:
    w1, w2, w3 = np.meshgrid(np.arange(r), np.arange(r), np.arange(r), indexing="ij")
    keep = (w1 <= w2) & (w2 <= w3)
    triples = np.stack([w1[keep], w2[keep], w3[keep]], axis=1).astype(np.int64)
    g = np.gcd(np.gcd(triples[:, 0], triples[:, 1]), np.gcd(triples[:, 2], r))
    triples = triples[g == 1]
    alive = np.ones(len(triples), dtype=bool)
    for k in range(1, r):
        sums = ((k * triples[alive]) % r).sum(axis=1)
        idx = np.flatnonzero(alive)
        alive[idx[sums <= r]] = False
        if not alive.any():
            break
    return triples[alive]


def active_kernel(kernel: str | None = None) -> str:
    choice = kernel or os.environ.get("TORICDC_KERNEL", "")
    if choice not in ("", "numba", "numpy"):
        raise ValueError(f"unknown kernel {choice!r}; use numba or numpy")
    if choice == "numba" and not HAS_NUMBA:
        raise ValueError("numba kernel requested but numba is not importable")
    if choice:
        return choice
    return "numba" if HAS_NUMBA else "numpy"


def scan_terminal(r: int, kernel: str | None = None) -> list[tuple[int, int, int]]:
    """Sorted faithful triples (w1 <= w2 <= w3) with every Reid-Tai sum above r."""
    if r < 2:
        raise ValueError("scan needs r >= 2")
    which = active_kernel(kernel)
    if which == "numba":
        arr = _scan_terminal_numba(r)
    else:
        arr = _scan_terminal_numpy(r)
    return [tuple(int(x) for x in row) for row in arr]


def _scan_star(args: tuple[int, str | None]) -> tuple[int, list[tuple[int, int, int]]]:
    r, kernel = args
    return r, scan_terminal(r, kernel=kernel)


def scan_terminal_range(r_values, kernel: str | None = None) -> dict[int, list[tuple[int, int, int]]]:
    """Scan several r values, optionally across TORICDC_WORKERS processes."""
    r_values = list(r_values)
    workers = int(os.environ.get("TORICDC_WORKERS", "1"))
    if workers > 1 and len(r_values) > 1:
        import multiprocessing

        with multiprocessing.Pool(workers) as pool:
            pairs = pool.map(_scan_star, [(r, kernel) for r in r_values])
        return dict(pairs)
    return {r: scan_terminal(r, kernel=kernel) for r in r_values}
