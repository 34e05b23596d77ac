"""Command-line entry point: ``lbdd {solve,verify,dynamic,gen,bench}``.

Exit codes: 0 success, 2 invalid input (parse/validation/bad event),
3 certificate or oracle failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import formats
from .bench import as_dicts, bench, format_table
from .allotment import Allotment
from .dynamic import Engine
from .errors import LBDDError
from .generate import CAPACITY_POLICIES, PENALTY_POLICIES, GenConfig, generate
from .instance import HARD_CAPACITY, INFINITE_PENALTY, objective_cost
from .negloop import find_negative_loop
from .oracle import exhaustive_solve
from .solver import (
    lift_hard_allotment,
    solve,
    solve_hard_capacity,
    verify_optimal,
)

EXIT_OK, EXIT_INVALID, EXIT_CERT = 0, 2, 3


class _InputError(Exception):
    pass


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path):
    try:
        return formats.read_instance(path)
    except OSError as exc:
        raise _InputError(f"{path}: {exc.strerror}") from exc
    except LBDDError as exc:
        raise _InputError(f"{path}: {exc}") from exc


def _as_hard(instance):
    if instance.mode == HARD_CAPACITY:
        return instance
    inst = instance.copy()
    inst.mode = HARD_CAPACITY
    inst.centers = [c.__class__(c.id, c.capacity, INFINITE_PENALTY) for c in inst.centers]
    return inst


def cmd_solve(args):
    instance = _load(args.instance)
    if args.hard_capacity or instance.mode == HARD_CAPACITY:
        instance = _as_hard(instance)
        res = solve_hard_capacity(instance)
        verdict = None
        if args.certify:
            reduced, lifted = lift_hard_allotment(
                instance, {**res.allotment.assign, **{d: None for d in res.unassigned}}
            )
            verdict = verify_optimal(reduced, lifted).verdict
        text = formats.render_result(
            instance, res.allotment.assign, res.objective, unassigned=res.unassigned, verdict=verdict
        )
    else:
        res = solve(instance)
        verdict = verify_optimal(instance, res.allotment).verdict if args.certify else None
        text = formats.render_result(instance, res.allotment.assign, res.objective, verdict=verdict)
    _emit(text, args.output)
    return EXIT_CERT if verdict == "NOT_OPTIMAL" else EXIT_OK


def cmd_verify(args):
    instance = _load(args.instance)
    try:
        with open(args.allotment, encoding="utf-8") as fh:
            assign, claimed, unassigned = formats.parse_allotment(fh.read())
    except OSError as exc:
        raise _InputError(f"{args.allotment}: {exc.strerror}") from exc
    except LBDDError as exc:
        raise _InputError(f"{args.allotment}: {exc}") from exc
    for d, j in assign.items():
        if not (0 <= d < instance.n and 0 <= j < instance.k):
            raise _InputError(f"assignment {d} -> {j} is out of range")
    if instance.mode != HARD_CAPACITY and len(assign) != instance.n:
        missing = min(set(range(instance.n)) - set(assign))
        raise _InputError(f"demand {missing} has no assignment")
    if instance.mode == HARD_CAPACITY:
        cert_inst, allot = lift_hard_allotment(instance, assign)
        occ = allot.occupancy
        if any(o > c.capacity for o, c in zip(occ, instance.centers)):
            print("certificate NOT_OPTIMAL (capacity exceeded)")
            return EXIT_CERT
        actual = sum(instance.cost[d][j] for d, j in assign.items())
    else:
        cert_inst, allot = instance, Allotment.from_assignment(instance.k, assign)
        actual = objective_cost(instance, allot)
    status = EXIT_OK
    print(f"objective {actual}")
    if claimed is not None and claimed != actual:
        print(f"claimed objective {claimed} does not match {actual}")
        status = EXIT_CERT
    cert = verify_optimal(cert_inst, allot)
    print(f"certificate {cert.verdict}")
    if not cert.optimal:
        w = cert.witness
        moves = " ".join(f"{d}:{i}->{j}" for i, j, d in w.transfers)
        print(f"witness anchor {cert.anchor} closure {w.closure} cost {w.cost} moves {moves}")
        status = EXIT_CERT
    return status


def cmd_dynamic(args):
    instance = _load(args.instance)
    if instance.mode == HARD_CAPACITY:
        raise _InputError("dynamic maintenance needs an overload_allowed instance")
    try:
        with open(args.events, encoding="utf-8") as fh:
            events = formats.parse_events(fh.read())
    except OSError as exc:
        raise _InputError(f"{args.events}: {exc.strerror}") from exc
    except LBDDError as exc:
        raise _InputError(f"{args.events}: {exc}") from exc

    engine = Engine(instance)
    for row in instance.cost:
        engine.insert_demand(row)
    print(f"initial objective {engine.objective()}")
    for lineno, op, params in events:
        try:
            if op == "insert":
                d = engine.insert_demand(params)
                label = f"insert -> demand {d}"
            elif op == "remove":
                engine.remove_demand(params[0])
                label = f"remove {params[0]}"
            elif op == "cap":
                engine.change_capacity(params[0], params[1])
                label = f"cap {params[0]} {params[1]:+d}"
            else:
                engine.shift_penalty(params[0], params[1])
                label = f"shift {params[0]} {params[1]}"
        except (LBDDError, ValueError) as exc:
            raise _InputError(f"{args.events}: line {lineno}: {exc}") from exc
        objective = engine.objective()
        print(f"line {lineno} {label} objective {objective}")
        if args.check_each and not _check_state(engine, objective, args.oracle_limit):
            return EXIT_CERT
    return EXIT_OK


def _check_state(engine, objective, limit):
    found = find_negative_loop(engine.instance, engine.allotment, engine.heaps)
    if found is not None:
        print(f"  certificate NOT_OPTIMAL: negative loop at center {found[0]}")
        return False
    snap, _, _ = engine.snapshot()
    if snap.k ** snap.n <= limit:
        best, _ = exhaustive_solve(snap, limit)
        if best != objective:
            print(f"  oracle optimum {best} differs from {objective}")
            return False
        print("  certificate OPTIMAL, oracle agrees")
    else:
        print("  certificate OPTIMAL")
    return True


def cmd_gen(args):
    cfg = GenConfig(
        k=args.k,
        n=args.n,
        cost_mode=args.cost_mode,
        max_cost=args.max_cost,
        width=args.width,
        capacity_policy=args.capacity_policy,
        penalty_policy=args.penalty_policy,
        seed=args.seed,
        hard_capacity=args.hard_capacity,
    )
    try:
        inst = generate(cfg)
    except ValueError as exc:
        raise _InputError(str(exc)) from exc
    _emit(formats.render_instance(inst), args.output)
    return EXIT_OK


def _int_list(text):
    return [int(t) for t in text.split(",") if t]


def cmd_bench(args):
    rows = bench(args.k, args.n, seed=args.seed, repeat=args.repeat, cost_mode=args.cost_mode)
    if args.format == "table":
        print(format_table(rows))
    elif args.format == "csv":
        print("k,n,seconds,per_insert_us,growth,loops_removed")
        for r in as_dicts(rows):
            growth = "" if r["growth"] is None else f"{r['growth']:.4f}"
            print(f"{r['k']},{r['n']},{r['seconds']:.6f},{r['per_insert_us']:.2f},{growth},{r['loops_removed']}")
    else:
        for r in as_dicts(rows):
            print(json.dumps(r))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="lbdd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("instance")
    p.add_argument("--hard-capacity", action="store_true", help="forbid overload (virtual-center reduction)")
    p.add_argument("--certify", action="store_true", help="run the negative-loop certificate")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="certify an allotment file against an instance")
    p.add_argument("instance")
    p.add_argument("allotment")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dynamic", help="apply an event stream, printing the objective")
    p.add_argument("instance")
    p.add_argument("events")
    p.add_argument("--check-each", action="store_true")
    p.add_argument("--oracle-limit", type=int, default=200_000, help="max k**n for the brute-force check")
    p.set_defaults(func=cmd_dynamic)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cost-mode", choices=("uniform", "planar"), default="uniform")
    p.add_argument("--max-cost", type=int, default=100)
    p.add_argument("--width", type=int, default=100)
    p.add_argument("--capacity-policy", choices=CAPACITY_POLICIES, default="tight")
    p.add_argument("--penalty-policy", choices=PENALTY_POLICIES, default="mixed")
    p.add_argument("--hard-capacity", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time solve over a size grid")
    p.add_argument("--k", type=_int_list, default=[4], help="comma-separated center counts")
    p.add_argument("--n", type=_int_list, default=[1000, 2000, 4000], help="comma-separated demand counts")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--cost-mode", choices=("uniform", "planar"), default="uniform")
    p.add_argument("--format", choices=("table", "csv", "jsonl"), default="table")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
