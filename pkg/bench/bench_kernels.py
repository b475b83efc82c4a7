"""Time the compiled kernels against the pure-Python fallback.

Usage: python bench/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from secdom import _kernels_py as pure
from secdom import graphs as G

try:
    from secdom import _kernels as compiled
except ImportError:
    compiled = None


def cases():
    grid4, queen5, petersen = G.square_grid(4), G.queen_graph(5), G.gp_graph(5, 2)
    rng = np.random.default_rng(0)
    m = 400
    rows = rng.integers(0, m, size=64).astype(np.int64)
    etas = rng.normal(size=(64, m)) + 3.0
    v = rng.normal(size=m)

    def search(g, prop):
        closed, opened = list(g.closed_masks), list(g.open_masks)
        return lambda k: k.min_property_set(closed, opened, g.n, prop, 1, g.n)

    def check(g, prop):
        closed, opened = list(g.closed_masks), list(g.open_masks)
        masks = [int(x) for x in rng.integers(1, 2 ** g.n, size=200)]
        return lambda k: [k.has_property(closed, opened, g.n, s, prop) for s in masks]

    return [
        ("oracle secure grid4", search(grid4, pure.SECURE)),
        ("oracle secure-connected petersen", search(petersen, pure.SECURE_CONNECTED)),
        ("oracle secure queen5", search(queen5, pure.SECURE)),
        ("200 secure checks grid4", check(grid4, pure.SECURE)),
        ("eta ftran 64x400", lambda k: k.eta_ftran(v.copy(), rows, etas, 64)),
        ("eta btran 64x400", lambda k: k.eta_btran(v.copy(), rows, etas, 64)),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if compiled is None:
        print("compiled extension not built; nothing to compare")
        return
    print(f"{'kernel':36s} {'python s':>10s} {'compiled s':>11s} {'speedup':>8s}")
    for name, fn in cases():
        a, b = fn(pure), fn(compiled)
        same = np.allclose(a, b) if isinstance(a, np.ndarray) else a == b
        if not same:
            raise SystemExit(f"{name}: backends disagree")
        t_pure = min(timeit.repeat(lambda: fn(pure), number=1, repeat=args.repeat))
        t_comp = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=args.repeat))
        print(f"{name:36s} {t_pure:10.4f} {t_comp:11.4f} {t_pure / t_comp:7.1f}x")


if __name__ == "__main__":
    main()
