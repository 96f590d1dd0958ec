"""Benchmark the terminal-scan kernels: numba @njit vs pure numpy.

Usage: python benchmarks/bench_kernels.py [--rmax 80] [--repeat 3]

Both kernels must return identical triple lists; the table reports the best
wall time of each and the speedup. TORICDC_KERNEL selects the default kernel
in library calls; here both are timed explicitly.
"""

import argparse
import time

from toricdc._kernels import HAS_NUMBA, scan_terminal


def best_time(r: int, kernel: str, repeat: int) -> tuple[float, list]:
    run = 0.0
    result = None
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = scan_terminal(r, kernel=kernel)
        run = time.perf_counter() - t0
        best = min(best, run)
    return best, result


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rmax", type=int, default=80)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if not HAS_NUMBA:
        print("numba not importable; numpy timings only")
    else:
        scan_terminal(5, kernel="numba")  # compile outside the timed region

    rs = [r for r in (10, 20, 30, 40, 60, 80, 100, 120) if r <= args.rmax]
    header = f"{'r':>5} {'triples':>8} {'numpy (s)':>10}"
    if HAS_NUMBA:
        header += f" {'numba (s)':>10} {'speedup':>8}"
    print(header)
    for r in rs:
        t_np, res_np = best_time(r, "numpy", args.repeat)
        line = f"{r:>5} {len(res_np):>8} {t_np:>10.4f}"
        if HAS_NUMBA:
            t_nb, res_nb = best_time(r, "numba", args.repeat)
            if res_nb != res_np:
                print(f"MISMATCH at r={r}")
                return 1
            line += f" {t_nb:>10.4f} {t_np / t_nb:>7.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
