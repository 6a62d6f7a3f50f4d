"""Compare the compiled echelon kernel with the pure-Python fallback.

Both backends run the same workloads over GF(p); results are checked to agree
before timings are reported.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import random
import time

from fibercone import linalg
from fibercone.field import GF
from fibercone.local import PowerLadder, TruncationContext, build_ladder, socle_bound
from fibercone.poly import base_ring

P = 32003
FIELD = GF(P)
CM = ["x^7 + x^4*y^2 + y^12", "x^5*y + x^2*y^6", "x^7", "x^2*y^6", "y^12"]
NON_CM = ["x^5", "x^4*y", "x^3*y^3", "x*y^4", "y^5"]


def random_rows(backend, ncols=400, nrows=300, density=0.05, seed=0):
    rng = random.Random(seed)
    e = linalg.new_echelon(ncols, FIELD, backend)
    for _ in range(nrows):
        e.add({c: rng.randrange(1, P) for c in range(ncols) if rng.random() < density})
    return e.rank


def ladder(text, qidx, extra):
    def run(backend):
        R = base_ring(["x", "y"], FIELD)
        gens = [R.parse(t) for t in text]
        ctx = TruncationContext(socle_bound(gens, backend=backend), extra)
        lad = build_ladder(gens, qidx, ctx, backend)
        return lad.r, lad.u, lad.fiber_dims(lad.r + 1)
    return run


def deep_levels(backend, top=6):
    """Powers 1..top for a combination that is not a reduction (no early stop)."""
    R = base_ring(["x", "y"], FIELD)
    I = [R.parse(t) for t in ["x^5", "x^3*y", "x^2*y^2", "x*y^4", "y^5"]]
    rows = ((2, -4, 5, 4, 1), (3, 5, -5, -2, -1))
    q = [sum((g.scalar_mul(c) for g, c in zip(I, row)), R.zero()) for row in rows]
    gens = tuple(q) + (I[0], I[1], I[2])
    lad = PowerLadder(gens, (0, 1), TruncationContext(socle_bound(I, backend=backend)),
                      backend=backend)
    return [lad.level(i).u for i in range(1, top + 1)]


WORKLOADS = [
    ("random sparse rows 300x400", random_rows),
    ("powers 1..6, non-reduction", deep_levels),
    ("ladder, CM example", ladder(CM, (0, 1), 0)),
    ("ladder, non-CM example", ladder(NON_CM, (0, 4), 0)),
    ("ladder, non-CM example, D+6", ladder(NON_CM, (0, 4), 6)),
]


def best_time(fn, backend, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn(backend)
        best = min(best, time.perf_counter() - t)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not linalg.HAVE_COMPILED:
        print("compiled extension not available; only the Python backend can run")
        return 1
    print(f"{'workload':34} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for name, fn in WORKLOADS:
        tp, rp = best_time(fn, "python", args.repeat)
        tc, rc = best_time(fn, "compiled", args.repeat)
        if rp != rc:
            raise SystemExit(f"backends disagree on {name}: {rp} vs {rc}")
        print(f"{name:34} {tp:10.4f} {tc:11.4f} {tp / tc:7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
