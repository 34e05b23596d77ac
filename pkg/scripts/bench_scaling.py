#!/usr/bin/env python3
"""Solve-time scaling in n (fixed k) and in k (fixed n).

Writes JSON lines to stdout, or to --out if given, and a readable table to stderr.
"""

import argparse
import json
import sys

from lbdd.bench import as_dicts, bench, format_table


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=4, help="center count for the n sweep")
    ap.add_argument("--ns", default="1000,2000,4000,8000")
    ap.add_argument("--n", type=int, default=2000, help="demand count for the k sweep")
    ap.add_argument("--ks", default="2,4,8")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--cost-mode", choices=("uniform", "planar"), default="uniform")
    ap.add_argument("--out")
    args = ap.parse_args(argv)

    ns = [int(x) for x in args.ns.split(",")]
    ks = [int(x) for x in args.ks.split(",")]
    n_rows = bench([args.k], ns, seed=args.seed, repeat=args.repeat, cost_mode=args.cost_mode)
    k_rows = bench(ks, [args.n], seed=args.seed, repeat=args.repeat, cost_mode=args.cost_mode)

    print(f"# sweep over n at k={args.k}", file=sys.stderr)
    print(format_table(n_rows), file=sys.stderr)
    print(f"# sweep over k at n={args.n}", file=sys.stderr)
    print(format_table(k_rows), file=sys.stderr)
    prev = None
    for r in k_rows:
        if prev is not None:
            ratio = r.per_insert_us / prev.per_insert_us
            print(f"k {prev.k} -> {r.k}: per-insert time x{ratio:.2f}", file=sys.stderr)
        prev = r

    lines = [json.dumps({"sweep": "n", **d}) for d in as_dicts(n_rows)]
    lines += [json.dumps({"sweep": "k", **d}) for d in as_dicts(k_rows)]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
