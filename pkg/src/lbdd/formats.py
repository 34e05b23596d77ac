"""Line-oriented text formats: instances, event streams, allotments/results.

Instance::

    lbdd 1
    <k> <n> <overload_allowed|hard_capacity>
    center <id> cap <c> penalty <constant v | linear b s | table v1 v2 ... | infinite>
    demand <id> costs c1 ... ck

Blank lines and lines starting with ``#`` are ignored everywhere.
"""

from __future__ import annotations

from .errors import FormatError, InstanceError
from .instance import HARD_CAPACITY, MODES, PenaltySpec, INFINITE_PENALTY, validate_instance

FORMAT_VERSION = "1"


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line.split()


def _int(tok, lineno, what):
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"{what}: expected an integer, got {tok!r}", lineno) from None


def _parse_penalty(toks, lineno):
    if not toks:
        raise FormatError("missing penalty specification", lineno)
    kind, args = toks[0], [_int(t, lineno, "penalty") for t in toks[1:]]
    if kind == "constant" and len(args) == 1:
        return PenaltySpec.constant(args[0])
    if kind == "linear" and len(args) == 2:
        return PenaltySpec.linear(*args)
    if kind == "table" and args:
        return PenaltySpec.table(args)
    if kind == "infinite" and not args:
        return INFINITE_PENALTY
    raise FormatError(f"bad penalty specification {' '.join(toks)!r}", lineno)


def parse_instance(text):
    lines = list(_lines(text))
    if not lines:
        raise FormatError("empty instance file", 1)
    lineno, toks = lines[0]
    if toks != ["lbdd", FORMAT_VERSION]:
        raise FormatError(f"expected header 'lbdd {FORMAT_VERSION}'", lineno)
    if len(lines) < 2 or len(lines[1][1]) != 3:
        raise FormatError("expected '<k> <n> <mode>'", lines[1][0] if len(lines) > 1 else lineno)
    lineno, (k_tok, n_tok, mode) = lines[1]
    k, n = _int(k_tok, lineno, "k"), _int(n_tok, lineno, "n")
    if mode not in MODES:
        raise FormatError(f"unknown mode {mode!r}", lineno)
    if len(lines) != 2 + k + n:
        raise FormatError(f"expected {k} center and {n} demand lines, found {len(lines) - 2}")

    ids, caps, pens, center_lines = [], [], [], []
    for lineno, toks in lines[2:2 + k]:
        if len(toks) < 5 or toks[0] != "center" or toks[2] != "cap" or toks[4] != "penalty":
            raise FormatError("expected 'center <id> cap <c> penalty <spec>'", lineno)
        ids.append(_int(toks[1], lineno, "center id"))
        caps.append(_int(toks[3], lineno, "capacity"))
        pens.append(_parse_penalty(toks[5:], lineno))
        center_lines.append(lineno)

    rows, demand_lines, seen = [None] * n, [None] * n, {}
    for lineno, toks in lines[2 + k:]:
        if len(toks) < 3 or toks[0] != "demand" or toks[2] != "costs":
            raise FormatError("expected 'demand <id> costs c1 ... ck'", lineno)
        d = _int(toks[1], lineno, "demand id")
        if d in seen:
            raise FormatError(f"demand {d} already defined on line {seen[d]}", lineno)
        if not 0 <= d < n:
            raise FormatError(f"demand id {d} outside 0..{n - 1}", lineno)
        row = [_int(t, lineno, f"demand {d} cost") for t in toks[3:]]
        if len(row) != k:
            raise FormatError(f"demand {d}: {len(row)} costs for {k} centers", lineno)
        seen[d] = lineno
        rows[d] = row
        demand_lines[d] = lineno

    raw = {"capacities": [0] * k, "penalties": [None] * k, "cost": rows, "mode": mode}
    if sorted(ids) != list(range(k)):
        raise FormatError(f"center ids must be 0..{k - 1}", center_lines[0] if center_lines else None)
    for cid, cap, pen in zip(ids, caps, pens):
        raw["capacities"][cid] = cap
        raw["penalties"][cid] = pen
    try:
        return validate_instance(raw)
    except InstanceError as exc:
        line = None
        if exc.where == "demand":
            line = demand_lines[exc.index]
        elif exc.where == "center":
            line = center_lines[ids.index(exc.index)]
        raise FormatError(str(exc), line) from exc


def render_instance(instance):
    out = [f"lbdd {FORMAT_VERSION}", f"{instance.k} {instance.n} {instance.mode}"]
    for c in instance.centers:
        c = c.normalized()
        if c.penalty.kind == "zero":
            raise ValueError("reduced instances with a virtual center are not serializable")
        pen = "infinite" if instance.mode == HARD_CAPACITY else c.penalty.describe()
        out.append(f"center {c.id} cap {c.capacity} penalty {pen}")
    for d, row in enumerate(instance.cost):
        out.append(f"demand {d} costs " + " ".join(map(str, row)))
    return "\n".join(out) + "\n"


def read_instance(path):
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def parse_events(text):
    """``[(lineno, op, args)]`` for insert / remove / cap / shift lines."""
    events = []
    for lineno, toks in _lines(text):
        op, rest = toks[0], toks[1:]
        if op == "insert" and rest:
            events.append((lineno, op, [_int(t, lineno, "cost") for t in rest]))
        elif op == "remove" and len(rest) == 1:
            events.append((lineno, op, [_int(rest[0], lineno, "demand id")]))
        elif op == "cap" and len(rest) == 2 and rest[1] in ("+1", "-1"):
            events.append((lineno, op, [_int(rest[0], lineno, "center"), int(rest[1])]))
        elif op == "shift" and len(rest) == 2 and rest[1] in ("left", "right"):
            events.append((lineno, op, [_int(rest[0], lineno, "center"), rest[1]]))
        else:
            raise FormatError(f"unrecognized event {' '.join(toks)!r}", lineno)
    return events


def render_result(instance, assign, objective, *, unassigned=(), verdict=None):
    """Result document; its assignment lines double as an allotment file."""
    occ = [0] * instance.k
    for j in assign.values():
        occ[j] += 1
    out = [f"objective {objective}"]
    for c, o in zip(instance.centers, occ):
        pen = c.total_penalty(o)
        out.append(f"center {c.id} occupancy {o} penalty {pen}")
    for d in sorted(unassigned):
        out.append(f"unassigned {d}")
    for d in sorted(assign):
        out.append(f"{d} {assign[d]}")
    if verdict is not None:
        out.append(f"certificate {verdict}")
    return "\n".join(out) + "\n"


def parse_allotment(text):
    """Returns ``(assign, objective_or_None, unassigned)``.

    Accepts bare ``<demand> <center>`` lines plus an optional ``objective``
    line; ``center``/``certificate`` lines of a result document are skipped.
    """
    assign, unassigned, objective = {}, [], None
    for lineno, toks in _lines(text):
        head = toks[0]
        if head == "objective" and len(toks) == 2:
            objective = _int(toks[1], lineno, "objective")
        elif head == "unassigned" and len(toks) == 2:
            unassigned.append(_int(toks[1], lineno, "demand id"))
        elif head in ("center", "certificate"):
            continue
        elif len(toks) == 2:
            d, j = _int(toks[0], lineno, "demand id"), _int(toks[1], lineno, "center id")
            if d in assign:
                raise FormatError(f"demand {d} assigned twice", lineno)
            assign[d] = j
        else:
            raise FormatError(f"unrecognized allotment line {' '.join(toks)!r}", lineno)
    return assign, objective, unassigned
