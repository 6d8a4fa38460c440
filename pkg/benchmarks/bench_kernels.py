"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--q 300] [--kmax 600] [--points 2000] [--repeat 3]

Each workload runs once per available backend (switched through
``lenshodge.kernels.BACKEND``); outputs are compared before timings are shown.
"""
import argparse
import random
import time

from lenshodge import kernels
from lenshodge.hodge import h_eval_many, hodge_table
from lenshodge.lens import PlusMinusLens, to_spectral
from lenshodge.modroots import make_context


def best_of(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def workloads(q, kmax, npoints):
    A = PlusMinusLens(q, (1, 7, 43) if q > 86 else (1, 2, 3))
    G = to_spectral(A)
    ctx = make_context(q)
    rng = random.Random(0)
    pts = [(rng.randrange(2, ctx.p), rng.randrange(ctx.p)) for _ in range(npoints)]
    s = A.expanded().s
    return {
        f"series table, q={q}, n=6, kmax={kmax}": lambda: hodge_table(G, kmax).as_lists(),
        f"H at {npoints} points, q={q}": lambda: h_eval_many(q, s, pts, ctx),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=300)
    ap.add_argument("--kmax", type=int, default=600)
    ap.add_argument("--points", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = [b for b in ("cython", "python") if b in kernels.BACKENDS]
    saved = kernels.BACKEND
    print(f"{'workload':<40} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    try:
        for name, fn in workloads(args.q, args.kmax, args.points).items():
            times, outputs = [], []
            for b in backends:
                kernels.BACKEND = b
                t, out = best_of(fn, args.repeat)
                times.append(t)
                outputs.append(out)
            if any(o != outputs[0] for o in outputs[1:]):
                raise SystemExit(f"backends disagree on {name!r}")
            ratio = f"{times[-1] / times[0]:8.1f}x" if len(times) == 2 else "     n/a"
            print(f"{name:<40} " + " ".join(f"{t:9.4f}s" for t in times) + f"  {ratio}")
    finally:
        kernels.BACKEND = saved


if __name__ == "__main__":
    main()
