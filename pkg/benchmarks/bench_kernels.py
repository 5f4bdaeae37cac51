"""Compare the compiled kernels against the pure-Python twins on the
workloads that dominate runtime: shuffle products and series convolution.

Run:  python benchmarks/bench_kernels.py
"""

import random
import time

from qloop import _kernels_py

try:
    from qloop import _kernels
except ImportError:
    _kernels = None

from qloop.scalars import QQ, RatQ
from qloop.zetadata import sl3
from qloop.shuffle import PLUS, ShuffleElement, orbit_monomials, orbit_poly, shuffle_mul


def bench_conv(mod, reps=200):
    rng = random.Random(7)
    a = [RatQ.from_rational(QQ(rng.randrange(-9, 10), rng.randrange(1, 7)))
         for _ in range(24)]
    b = [RatQ.from_rational(QQ(rng.randrange(-9, 10), rng.randrange(1, 7)))
         for _ in range(24)]
    zero = RatQ.from_rational(0)
    t0 = time.perf_counter()
    for _ in range(reps):
        mod.conv(a, b, zero)
    return time.perf_counter() - t0


def bench_dict_mul(mod, reps=60):
    rng = random.Random(11)
    def rand_poly(nvars, nterms):
        out = {}
        while len(out) < nterms:
            k = tuple(rng.randrange(-3, 4) for _ in range(nvars))
            out[k] = RatQ.q_power(rng.randrange(-2, 3))
        return out
    a = rand_poly(4, 30)
    b = rand_poly(4, 30)
    t0 = time.perf_counter()
    for _ in range(reps):
        mod.dict_mul(a, b)
    return time.perf_counter() - t0


def bench_shuffle(backend_name, reps=6):
    # end-to-end: three-variable mixed-color shuffle products
    import importlib
    import os
    os.environ.pop("QLOOP_PURE", None)
    datum = sl3()
    rng = random.Random(3)
    els = []
    for n in [(1, 0), (0, 1), (1, 1)]:
        cands = []
        for d in range(-2, 3):
            cands.extend(orbit_monomials(n, d, [-2, -2], [2, 2]))
        combo = cands[rng.randrange(len(cands))]
        els.append(ShuffleElement(datum, PLUS, n, orbit_poly(n, combo)))
    t0 = time.perf_counter()
    for _ in range(reps):
        datum.cache.clear()
        shuffle_mul(shuffle_mul(els[0], els[1]), els[2])
    return time.perf_counter() - t0


def main():
    print("kernel backends: pure=%s compiled=%s"
          % (_kernels_py.BACKEND, _kernels.BACKEND if _kernels else "absent"))
    rows = [("conv (24x24, 200 reps)", bench_conv),
            ("dict_mul (30x30 terms, 60 reps)", bench_dict_mul)]
    for label, fn in rows:
        t_py = fn(_kernels_py)
        if _kernels:
            t_cy = fn(_kernels)
            print("%-34s pure %.4fs   compiled %.4fs   speedup %.2fx"
                  % (label, t_py, t_cy, t_py / t_cy if t_cy else 0.0))
        else:
            print("%-34s pure %.4fs   (compiled unavailable)" % (label, t_py))
    t = bench_shuffle("auto")
    print("%-34s %.4fs (active backend)" % ("shuffle triple (end-to-end)", t))


if __name__ == "__main__":
    main()
