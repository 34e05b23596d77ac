#!/usr/bin/env python3
"""Random event streams against the maintenance engine.

For every stream the engine runs with the per-operation certificate enabled;
streams small enough for brute force are also checked against the exhaustive
oracle after each event. Prints per-operation loop-removal histograms.
"""

import argparse
import random
import sys
from collections import Counter
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from helpers import random_event, random_instance  # noqa: E402

from lbdd.dynamic import Engine  # noqa: E402
from lbdd.oracle import exhaustive_solve  # noqa: E402


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--streams", type=int, default=50)
    ap.add_argument("--events", type=int, default=300)
    ap.add_argument("--k", default="2,4", help="min,max center count")
    ap.add_argument("--max-live", type=int, default=12)
    ap.add_argument("--oracle-limit", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    lo, hi = (int(x) for x in args.k.split(","))
    rng = random.Random(args.seed)
    removals = {}
    checked = mismatches = 0
    for _ in range(args.streams):
        engine = Engine(random_instance(rng, k=(lo, hi), n=0, cap=(0, 4)), check=True)
        for _ in range(args.events):
            before = engine.stats.loops_removed
            ev = random_event(rng, engine, max_live=args.max_live)
            removals.setdefault(ev[0], Counter())[engine.stats.loops_removed - before] += 1
            snap, _, _ = engine.snapshot()
            if snap.k ** snap.n <= args.oracle_limit:
                checked += 1
                mismatches += exhaustive_solve(snap, args.oracle_limit)[0] != engine.objective()

    print(f"streams={args.streams} events/stream={args.events} k in [{lo},{hi}]")
    print(f"oracle checks={checked} mismatches={mismatches}")
    for op in sorted(removals):
        hist = " ".join(f"{r}:{c}" for r, c in sorted(removals[op].items()))
        print(f"{op:>7} loops removed -> count  {hist}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
