"""Time the numpy kernels against the compiled ones on the three hot loops.

Usage:
    python benchmarks/bench_kernels.py [--q Q] [--repeat N] [--threads T]

Each kernel runs on both backends (when the compiled module is built),
outputs are compared exactly, and the best wall time of N repeats is
reported per backend.
"""

import argparse
import time

import numpy as np

from ovoidcodes import _kernels as K
from ovoidcodes import codes as co
from ovoidcodes import geometry as ge
from ovoidcodes.fields import context_for_order


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    ctx = context_for_order(args.q)
    tb = ctx.gf_tables()
    n_points = ge.num_points(args.q)
    dual = ge.ovoid_dual_matrix(ctx)
    mats = np.stack([ge.group_matrix(ctx, g) for g in ge.generators(ctx)])
    seeds = np.array(
        [ge.point_rank(ctx, P) for P in ge.orbit_representatives(ctx)], dtype=np.int64
    )
    gen = co.build_generator_matrix(ctx).matrix

    jobs = [
        (
            "section sweep",
            lambda b: K.sweep_sections_all(
                dual, tb, n_points, threads=args.threads, backend=b
            ),
        ),
        ("orbit BFS", lambda b: K.orbit_bfs(mats, tb, seeds, n_points, backend=b)),
    ]
    n_words = args.q**8
    if n_words <= co.EXHAUSTIVE_CODEWORD_LIMIT:
        jobs.append(
            (
                "codeword histogram",
                lambda b: K.codeword_hist_all(gen, tb, threads=args.threads, backend=b),
            )
        )
    else:
        print(f"skipping codeword histogram: q^8 = {n_words} is over the guard")

    backends = K.available_backends()
    print(
        f"q = {args.q}: {n_points} points, {len(dual)} point functionals, "
        f"{n_words} messages; threads = {args.threads}, best of {args.repeat}"
    )
    print(f"{'kernel':<20} {'backend':<8} {'seconds':>10}")
    for name, job in jobs:
        results = {}
        for b in backends:
            secs, out = best_of(lambda: job("py" if b == "python" else "cy"), args.repeat)
            results[b] = (secs, out)
            print(f"{name:<20} {b:<8} {secs:>10.4f}")
        if len(results) == 2:
            (t_py, out_py), (t_cy, out_cy) = results["python"], results["cython"]
            if not np.array_equal(out_py, out_cy):
                raise SystemExit(f"{name}: backends disagree")
            print(f"{'':<20} agree, speedup x{t_py / t_cy:.1f}")


if __name__ == "__main__":
    main()
