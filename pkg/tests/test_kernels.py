"""Kernel parity: numba and numpy scans agree with each other and a brute oracle."""

import os

import pytest

from toricdc._kernels import HAS_NUMBA, active_kernel, scan_terminal, scan_terminal_range


def brute_scan(r):
    """Direct Reid-Tai scan in pure Python, fractions avoided on purpose."""
    out = []
    for w1 in range(r):
        for w2 in range(w1, r):
            for w3 in range(w2, r):
                g = w1
                for w in (w2, w3, r):
                    while w:
                        g, w = w, g % w
                if g != 1:
                    continue
                if all(k * w1 % r + k * w2 % r + k * w3 % r > r for k in range(1, r)):
                    out.append((w1, w2, w3))
    return out


@pytest.mark.parametrize("r", [2, 3, 5, 7, 11, 12, 15])
def test_scan_matches_brute_oracle(r):
    assert scan_terminal(r, kernel="numpy") == brute_scan(r)


def test_numba_and_numpy_agree():
    if not HAS_NUMBA:
        pytest.skip("numba not importable")
    for r in (2, 5, 13, 24, 30):
        assert scan_terminal(r, kernel="numba") == scan_terminal(r, kernel="numpy")


def test_kernel_selection():
    assert active_kernel("numpy") == "numpy"
    if HAS_NUMBA:
        assert active_kernel("numba") == "numba"
        assert active_kernel() == "numba"
    with pytest.raises(ValueError):
        active_kernel("fortran")


def test_kernel_env_flag(monkeypatch):
    monkeypatch.setenv("TORICDC_KERNEL", "numpy")
    assert active_kernel() == "numpy"
    monkeypatch.setenv("TORICDC_KERNEL", "blas")
    with pytest.raises(ValueError):
        active_kernel()


def test_scan_validation():
    with pytest.raises(ValueError):
        scan_terminal(1)


def test_scan_terminal_range(monkeypatch):
    rs = [2, 3, 4, 5, 6, 7]
    single = scan_terminal_range(rs, kernel="numpy")
    assert sorted(single) == rs
    assert single[5] == brute_scan(5)
    monkeypatch.setenv("TORICDC_WORKERS", "2")
    multi = scan_terminal_range(rs, kernel="numpy")
    assert multi == single
