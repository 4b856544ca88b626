"""Timing comparison of the pure-Python and compiled series kernels.

Runs the same fixed-point workloads through both implementations and
reports per-call times.  Results are required to be bit-identical;
this script asserts that while timing.

Usage: python benchmarks/bench_kernels.py [--bits 1024,4096,16384]
"""

from __future__ import annotations

import argparse
import time

from certreal import _kernels_py

try:
    from certreal import _kernels_c
except ImportError:
    _kernels_c = None

# generous caps: every kernel stops on term decay well before these
CAP = 1 << 20
REPEAT = 5


def _workloads(w: int):
    half = 1 << (w - 1)
    yield ("exp(1/2)", lambda m: m.exp_series(half, w, CAP))
    yield ("sin(1)", lambda m: m.sin_series(1 << w, w, CAP))
    yield ("cos(1)", lambda m: m.cos_series(1 << w, w, CAP))
    yield ("atan(1/5)", lambda m: m.atan_series(1, 5, w, CAP))
    yield ("ln1p(2/5)", lambda m: m.ln1p_series((2 << w) // 5, w, CAP))


def _time(fn, module) -> tuple[float, int]:
    best = float("inf")
    value = None
    for _ in range(REPEAT):
        t0 = time.perf_counter()
        value = fn(module)
        best = min(best, time.perf_counter() - t0)
    return best, value


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--bits", default="1024,4096,16384",
                    help="comma-separated working precisions")
    args = ap.parse_args()
    widths = [int(b) for b in args.bits.split(",")]

    if _kernels_c is None:
        print("compiled kernels not built; timing pure Python only\n")

    header = f"{'workload':<12} {'bits':>6} {'pure ms':>10}"
    if _kernels_c is not None:
        header += f" {'compiled ms':>12} {'speedup':>8}"
    print(header)
    print("-" * len(header))

    for w in widths:
        for name, fn in _workloads(w):
            t_py, v_py = _time(fn, _kernels_py)
            line = f"{name:<12} {w:>6} {t_py * 1e3:>10.3f}"
            if _kernels_c is not None:
                t_c, v_c = _time(fn, _kernels_c)
                assert v_py == v_c, f"backend mismatch on {name} at {w} bits"
                line += f" {t_c * 1e3:>12.3f} {t_py / t_c:>7.2f}x"
            print(line)


if __name__ == "__main__":
    main()
