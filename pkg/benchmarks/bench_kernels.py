"""Compare the compiled and pure-Python modular kernels.

    python3 benchmarks/bench_kernels.py [--sizes 20,40,80] [--repeat 3]
"""
import argparse
import random
import time

from quiverinv import _pykernels
from quiverinv.fields import LARGE_PRIMES

try:
    from quiverinv import _ckernels
except ImportError:
    _ckernels = None


def _time(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="20,40,80")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    p = LARGE_PRIMES[0]
    rng = random.Random(args.seed)
    print(f"{'kernel':<10}{'n':>6}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for n in (int(s) for s in args.sizes.split(",")):
        rows = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        for name in ("det_mod_p", "rank_mod_p"):
            call = (rows, p) if name == "det_mod_p" else (rows, n, p)
            tp, vp = _time(getattr(_pykernels, name), *call, repeat=args.repeat)
            if _ckernels is None:
                print(f"{name:<10}{n:>6}{tp:>12.4f}{'n/a':>12}{'':>10}")
                continue
            tc, vc = _time(getattr(_ckernels, name), *call, repeat=args.repeat)
            assert vp == vc, f"{name} disagrees at n={n}"
            print(f"{name:<10}{n:>6}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
