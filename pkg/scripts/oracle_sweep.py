"""Randomized sweep: FN bracket against the explicit formulas, then the suite on random instances.

Every comparison is exact; any mismatch is printed with its seed.
"""

import argparse
import random
import sys
import time
from collections import Counter

from nlconn.calculus import fn_bracket, fn_bracket_explicit
from nlconn.manifest import parse_manifest
from nlconn.randomgen import compatible_pair, random_spray_vertical, random_vector_form
from nlconn.suite import run_suite

DEGREES = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]


def bracket_sweep(trials: int, seed: int) -> int:
    bad = 0
    for k in range(trials):
        rng = random.Random(seed * 100003 + k)
        N = rng.choice([2, 4])
        a, b = rng.choice(DEGREES)
        K, L = random_vector_form(rng, N, a), random_vector_form(rng, N, b)
        if fn_bracket(K, L) != fn_bracket_explicit(K, L):
            bad += 1
            print(f"  bracket mismatch: trial {k}, N={N}, degrees ({a},{b})")
    return bad


def suite_sweep(trials: int, seed: int, with_torsion: bool) -> Counter:
    fails = Counter()
    for k in range(trials):
        rng = random.Random(seed * 100003 + k)
        n = rng.choice([1, 2])
        data = {"dimension_n": n, "seed": k}
        if with_torsion:
            G, t = compatible_pair(rng, n)
            data["strong_torsion"] = [[p.format() for p in row] for row in t]
        else:
            G = random_spray_vertical(rng, n)
        data["semispray_vertical"] = [g.format() for g in G]
        rep = run_suite(parse_manifest(data), extra_points=2)
        for c in rep.checks:
            if c.status == "fail":
                fails[c.check_id] += 1
    return fails


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=40)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    t0 = time.perf_counter()
    bad = bracket_sweep(args.trials, args.seed)
    print(f"bracket oracle: {args.trials - bad}/{args.trials} agree ({time.perf_counter() - t0:.2f}s)")

    for label, torsion in (("sprays, t = 0", False), ("compatible (S, t) pairs", True)):
        t0 = time.perf_counter()
        fails = suite_sweep(max(args.trials // 4, 1), args.seed, torsion)
        summary = ", ".join(f"{cid} x{cnt}" for cid, cnt in sorted(fails.items())) or "none"
        print(f"suite on random {label}: failing checks {summary} ({time.perf_counter() - t0:.2f}s)")
    print("F07 is the stated [h,F] formula, which omits F o R; it is expected to fail whenever R != 0.")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
