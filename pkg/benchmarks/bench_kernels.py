"""Compare the numba and numpy backends of the flag-extension kernel.

Run: python3 benchmarks/bench_kernels.py [--repeat N]

Each case computes the full automorphism group of one torus quotient, which
is exactly the kernel call made by every census row.  Both backends must
return the same group order; the script exits 1 if they disagree.
"""

import argparse
import statistics
import sys
import time

from tiler import _kernels
from tiler.quotients import SublatticeBasis, torus_quotient
from tiler.symmetry import automorphism_group
from tiler.tilings import template

CASES = [
    ("E1", SublatticeBasis(7, 4, 1)),
    ("E2", SublatticeBasis(6, 0, 6)),
    ("E6", SublatticeBasis(4, 0, 4)),
    ("E9", SublatticeBasis(3, 0, 4)),
    ("E10", SublatticeBasis(2, 0, 3)),
    ("E10", SublatticeBasis(4, 0, 2)),
]


def timed(m, repeat):
    automorphism_group(m)  # warm-up (numba compiles on first call)
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        g = automorphism_group(m)
        samples.append(time.perf_counter() - t0)
    return g.order, statistics.median(samples)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        print("numba is not importable; nothing to compare")
        return 0
    print(f"{'map':18} {'flags':>6} {'|Aut|':>6} {'numba ms':>9} {'numpy ms':>9} {'speedup':>8}")
    bad = False
    for name, L in CASES:
        m = torus_quotient(template(name), L)
        prev = _kernels.set_backend("numba")
        try:
            o_nb, t_nb = timed(m, args.repeat)
            _kernels.set_backend("numpy")
            o_np, t_np = timed(m, args.repeat)
        finally:
            _kernels.set_backend(prev)
        bad |= o_nb != o_np
        print(f"{name + '/' + str(L):18} {m.n_flags:6d} {o_nb:6d} {1e3 * t_nb:9.2f} "
              f"{1e3 * t_np:9.2f} {t_np / t_nb:7.1f}x")
    if bad:
        print("backends disagree on a group order", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
