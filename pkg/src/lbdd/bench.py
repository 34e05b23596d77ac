"""Timing harness for the solve path across a (k, n) grid."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass

from .generate import GenConfig, generate
from .solver import solve


@dataclass
class BenchRow:
    k: int
    n: int
    seconds: float
    per_insert_us: float
    growth: float | None
    loops_removed: int


def time_solve(instance, repeat=3):
    """Best-of-``repeat`` wall time of one full solve, plus its stats."""
    best, stats = None, None
    for _ in range(max(1, repeat)):
        start = time.perf_counter()
        result = solve(instance)
        elapsed = time.perf_counter() - start
        if best is None or elapsed < best:
            best, stats = elapsed, result.stats
    return best, stats


def bench(ks, ns, seed=0, repeat=3, cost_mode="uniform"):
    rows = []
    for k in ks:
        prev = None
        for n in ns:
            inst = generate(GenConfig(k, n, cost_mode=cost_mode, max_cost=1000, seed=seed))
            seconds, stats = time_solve(inst, repeat)
            growth = seconds / prev if prev else None
            rows.append(BenchRow(k, n, seconds, 1e6 * seconds / max(n, 1), growth, stats.loops_removed))
            prev = seconds
    return rows


def format_table(rows):
    out = [f"{'k':>3} {'n':>7} {'seconds':>10} {'us/insert':>10} {'growth':>7} {'loops':>7}"]
    for r in rows:
        growth = "-" if r.growth is None else f"{r.growth:.2f}"
        out.append(
            f"{r.k:>3} {r.n:>7} {r.seconds:>10.4f} {r.per_insert_us:>10.1f} {growth:>7} {r.loops_removed:>7}"
        )
    return "\n".join(out)


def as_dicts(rows):
    return [asdict(r) for r in rows]
