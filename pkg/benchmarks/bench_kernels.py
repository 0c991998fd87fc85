"""Time the compiled kernels against the pure-Python reference.

    python benchmarks/bench_kernels.py [--repeat 5] [--n 2000]

Each kernel runs on the same inputs under both backends; outputs are
compared before any timing is reported.
"""

import argparse
import random
import timeit

from degstar import kernels
from degstar.generators import random_bounded_degree
from degstar.graph import grid_graph
from degstar.reducer import GenusParameters, run_genus_pipeline
from degstar.lists import ListAssignment


def cases(n, rng):
    g = random_bounded_degree(n, 8, rng)
    indptr, indices = g.csr
    # a genuine star coloring, so the P4 scan has to walk the whole graph
    grid = grid_graph(int(n**0.5), int(n**0.5))
    lists = ListAssignment.uniform(grid.n, range(100001))
    star = kernels.int_array(run_genus_pipeline(grid, lists, 0).coloring)
    gp, gi = grid.csr
    random_colors = kernels.int_array(rng.randrange(6) for _ in range(n))
    cls = kernels.int_array(rng.randrange(12) for _ in range(n))
    member = bytearray([1]) * n
    return {
        "first_bicolored_p4 (star grid)": ("first_bicolored_p4", (gp, gi, star)),
        "all_bicolored_p4 (6 colors)": ("all_bicolored_p4", (indptr, indices, random_colors)),
        "peel k=4": ("peel", (indptr, indices, member, 4)),
        "degenerate_search 12 classes": ("degenerate_search", (indptr, indices, cls, 12, 4)),
        "distance_two_conflict (star grid)": ("distance_two_conflict", (gp, gi, star)),
        "degeneracy": ("degeneracy", (indptr, indices)),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if "cython" not in kernels.BACKENDS:
        print("compiled extension not built; only the Python backend is available")
    rng = random.Random(args.seed)
    print(f"{'kernel':36s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for label, (name, inputs) in cases(args.n, rng).items():
        times = {}
        results = {}
        for backend, mod in kernels.BACKENDS.items():
            fn = getattr(mod, name)
            results[backend] = fn(*inputs)
            t = min(timeit.repeat(lambda: fn(*inputs), number=1, repeat=args.repeat))
            times[backend] = t * 1000
        if len({repr(r) for r in results.values()}) != 1:
            raise SystemExit(f"backends disagree on {label}")
        py = times["python"]
        cy = times.get("cython")
        if cy is None:
            print(f"{label:36s} {py:10.2f} {'-':>10s} {'-':>8s}")
        else:
            print(f"{label:36s} {py:10.2f} {cy:10.2f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
