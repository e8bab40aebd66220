"""Command-line surface: canonicalization, distances, gap calculus,
epsilon nets, seeded sampling and plot-data emission.

Everything here is deterministic: identical invocations (same inputs,
same seed) produce byte-identical output.  Numeric I/O uses exact
"p/q" strings; SVG output quantizes to integer pixels only for display.

Exit codes: 0 success, 2 input error, 3 internal invariant violation.

Batch work (distance matrices over samples) is embarrassingly parallel;
output ordering is fixed by input order in all commands.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .plcore import (
    HALF,
    ONE,
    ZERO,
    InputError,
    InvariantViolation,
    PLHomeo,
    PLMono,
    identity,
    sup_dist,
    uniform_witness,
)
from .typespace import (
    CanonicalTuple,
    MonoTuple,
    RoelckeCoord,
    canonicalize,
    mean,
    uniform_weights,
)
from .gaps import (
    GapSet,
    collapse_map,
    extreme_pair_all,
    isolated_points,
    merge_gaps,
)
from .quotdist import brute_oracle, quot_dist
from . import serialize as ser

__all__ = [
    "random_mono",
    "random_tuple",
    "random_homeo",
    "random_point",
    "EpsNet",
    "build_net",
    "net_size",
    "net_points",
    "nearest_net_point",
    "render_svg",
    "render_csv",
    "main",
    "cli",
]


# ---------------------------------------------------------------------------
# Seeded sampling


def _sample_indices(rng: random.Random, n: int, k: int) -> set[int]:
    """k distinct indices from range(n), Floyd's algorithm."""
    chosen: set[int] = set()
    for i in range(n - k, n):
        t = rng.randrange(i + 1)
        chosen.add(i if t in chosen else t)
    return chosen


def _composition(rng: random.Random, total: int, slots: int) -> list[int]:
    """Uniform composition of total into `slots` nonnegative parts."""
    if slots == 1:
        return [total]
    cuts = sorted(_sample_indices(rng, total + slots - 1, slots - 1))
    parts = []
    prev = -1
    for c in cuts:
        parts.append(c - prev - 1)
        prev = c
    parts.append(total + slots - 2 - prev)
    return parts


def _heavier_plateaus(rng: random.Random, incs: list[int]) -> None:
    """Zero out some increments, dumping their mass elsewhere (in place)."""
    steps = len(incs)
    for idx in range(steps):
        if incs[idx] and rng.randrange(3) == 0:
            target = rng.randrange(steps)
            if target != idx:
                incs[target] += incs[idx]
                incs[idx] = 0


def _mono_from_increments(incs: list[int], total: int) -> PLMono:
    steps = len(incs)
    pts = [(ZERO, ZERO)]
    acc = 0
    for j, inc in enumerate(incs, start=1):
        acc += inc
        pts.append((Fraction(j, steps), Fraction(acc, total)))
    return PLMono(tuple(pts))


def random_mono(rng: random.Random, steps: int | None = None, units: int | None = None) -> PLMono:
    """Random monotone surjection on a random rational grid.

    Increments live on a value grid of 1/(steps*units); about half the
    draws get extra plateaus by dumping increments onto other slots.
    """
    if steps is None:
        steps = rng.randrange(3, 9)
    if units is None:
        units = rng.randrange(2, 7)
    total = steps * units
    incs = _composition(rng, total, steps)
    if rng.randrange(2):
        _heavier_plateaus(rng, incs)
    return _mono_from_increments(incs, total)


def random_tuple(rng: random.Random, n: int) -> MonoTuple:
    """Tuple of independent random monotone surjections."""
    return MonoTuple(tuple(random_mono(rng) for _ in range(n)))


def random_homeo(rng: random.Random, steps: int | None = None, units: int | None = None) -> PLHomeo:
    """Random increasing homeomorphism with slopes kept in tame range.

    Each grid increment is at least half the average, so slopes stay in
    roughly [1/2, (steps+1)/2]; resamples on the off chance the draw is
    the identity.
    """
    if steps is None:
        steps = rng.randrange(2, 5)
    if units is None:
        units = rng.randrange(4, 9)
    base = (units + 1) // 2
    total = steps * units
    for _ in range(64):
        extra = _composition(rng, total - steps * base, steps)
        incs = [base + e for e in extra]
        h = PLHomeo(_mono_from_increments(incs, total).breakpoints)
        if h != identity():
            return h
    raise InvariantViolation("homeomorphism sampler drew the identity 64 times")


def _point_params(rng: random.Random, n: int) -> tuple[int, int]:
    if n <= 2:
        steps = rng.randrange(3, 8)
    elif n == 3:
        steps = rng.randrange(3, 6)
    else:
        steps = rng.randrange(3, 5)
    units = rng.randrange(3 * n, 6 * n)
    return steps, units


def random_point(rng: random.Random, n: int, max_tries: int = 5000) -> CanonicalTuple:
    """Random canonical tuple: mean is the identity bit-exactly.

    Draws the first n-1 components on a shared random grid and solves
    the last one from the mean constraint, rejecting draws for which it
    fails to be monotone.  Measured acceptance with these grid
    parameters: about 0.30 at n = 2, 0.27 at n = 3, 0.18 at n = 5, so a
    draw needs a handful of tries on average; the generous retry cap
    only trips on a bug.
    """
    if n < 1:
        raise InputError("need at least one component")
    if n == 1:
        return CanonicalTuple((identity(),), (ONE,))
    for _ in range(max_tries):
        steps, units = _point_params(rng, n)
        total = steps * units
        rows = []
        for _ in range(n - 1):
            incs = _composition(rng, total, steps)
            if rng.randrange(2):
                _heavier_plateaus(rng, incs)
            rows.append(incs)
        cap = n * units
        last = [cap - sum(col) for col in zip(*rows)]
        if any(inc < 0 for inc in last):
            continue
        rows.append(last)
        comps = tuple(_mono_from_increments(r, total) for r in rows)
        return CanonicalTuple(comps, uniform_weights(n))
    raise InvariantViolation(f"rejection sampling failed after {max_tries} tries")


# ---------------------------------------------------------------------------
# Epsilon nets

def _net_steps(n: int):
    """All per-step increment choices for the first n-1 components."""
    if n == 2:
        return [(i,) for i in range(3)]
    out = []

    def rec(prefix, budget):
        if len(prefix) == n - 1:
            out.append(tuple(prefix))
            return
        for i in range(budget + 1):
            rec(prefix + [i], budget - i)

    rec([], n)
    return out


def net_size(n: int, m: int) -> int:
    """Number of net points at resolution m: grid tuples with node sums
    pinned to the mean constraint.  Counted by dynamic programming."""
    if n < 1 or m < 1:
        raise InputError("need n >= 1 and m >= 1")
    if n == 1:
        return 1
    steps = _net_steps(n)
    states = {(0,) * (n - 1): 1}
    for j in range(1, m + 1):
        new: dict[tuple[int, ...], int] = {}
        for state, cnt in states.items():
            prev_last = n * (j - 1) - sum(state)
            for incs in steps:
                nxt = tuple(v + i for v, i in zip(state, incs))
                if any(v > m for v in nxt):
                    continue
                last = n * j - sum(nxt)
                if last < prev_last or last > m:
                    continue
                new[nxt] = new.get(nxt, 0) + cnt
        states = new
    return states.get((m,) * (n - 1), 0)


def net_points(n: int, m: int):
    """Enumerate all net points at resolution m, lexicographically.

    Sizes grow fast (central-trinomial fast for n = 2); enumerate only
    for small m and use net_size otherwise.
    """
    if n < 1 or m < 1:
        raise InputError("need n >= 1 and m >= 1")
    if n == 1:
        yield CanonicalTuple((identity(),), (ONE,))
        return
    steps = _net_steps(n)

    def build(rows):
        comps = []
        for r in rows:
            pts = [(Fraction(j, m), Fraction(v, m)) for j, v in enumerate(r)]
            comps.append(PLMono(tuple(pts)))
        return CanonicalTuple(tuple(comps), uniform_weights(n))

    def rec(j, state, rows):
        if j == m:
            if state == (m,) * (n - 1):
                yield build(rows)
            return
        prev_last = n * j - sum(state)
        for incs in steps:
            nxt = tuple(v + i for v, i in zip(state, incs))
            if any(v > m for v in nxt):
                continue
            last = n * (j + 1) - sum(nxt)
            if last < prev_last or last > m:
                continue
            new_rows = [r + [v] for r, v in zip(rows[:-1], nxt)]
            new_rows.append(rows[-1] + [last])
            yield from rec(j + 1, nxt, new_rows)

    start = (0,) * (n - 1)
    yield from rec(0, start, [[0] for _ in range(n)])


@dataclass(frozen=True)
class EpsNet:
    """Materialized net at one resolution; every point is canonical and
    lives on the 1/resolution grid."""

    n: int
    resolution: int
    points: tuple[CanonicalTuple, ...]


def build_net(n: int, m: int) -> EpsNet:
    return EpsNet(n, m, tuple(net_points(n, m)))


def nearest_net_point(point: CanonicalTuple, m: int) -> CanonicalTuple:
    """Net point minimizing the largest node deviation from the given
    canonical tuple; the continuous distance to it is at most 2/m for
    pairs (by the 1-Lipschitz coordinate argument)."""
    n = len(point)
    if n == 1:
        return CanonicalTuple((identity(),), (ONE,))
    if m < 1:
        raise InputError("need m >= 1")
    steps = _net_steps(n)
    comps = point.components
    node_vals = [[f(Fraction(j, m)) for j in range(m + 1)] for f in comps]

    def dev(j, state):
        vals = list(state) + [n * j - sum(state)]
        return max(abs(Fraction(v, m) - node_vals[i][j]) for i, v in enumerate(vals))

    start = (0,) * (n - 1)
    frontier: dict[tuple[int, ...], tuple[Fraction, tuple]] = {start: (dev(0, start), None)}
    layers = [frontier]
    for j in range(1, m + 1):
        new: dict[tuple[int, ...], tuple[Fraction, tuple]] = {}
        for state, (cost, _) in layers[j - 1].items():
            prev_last = n * (j - 1) - sum(state)
            for incs in steps:
                nxt = tuple(v + i for v, i in zip(state, incs))
                if any(v > m for v in nxt):
                    continue
                last = n * j - sum(nxt)
                if last < prev_last or last > m:
                    continue
                c = max(cost, dev(j, nxt))
                old = new.get(nxt)
                if old is None or c < old[0]:
                    new[nxt] = (c, state)
        layers.append(new)
    goal = (m,) * (n - 1)
    if goal not in layers[m]:
        raise InvariantViolation("net has no point reaching the corner")
    states = [goal]
    for j in range(m, 0, -1):
        states.append(layers[j][states[-1]][1])
    states.reverse()
    rows = [[] for _ in range(n)]
    for j, state in enumerate(states):
        vals = list(state) + [n * j - sum(state)]
        for i, v in enumerate(vals):
            rows[i].append((Fraction(j, m), Fraction(v, m)))
    comps_out = tuple(PLMono(tuple(r)) for r in rows)
    return CanonicalTuple(comps_out, uniform_weights(n))


# ---------------------------------------------------------------------------
# Rendering

_SIZE = 512
_MARGIN = 24
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _round_half_up(f: Fraction) -> int:
    return int(f + HALF) if f >= 0 else -int(-f + HALF)


def _px(x: Fraction) -> int:
    return _MARGIN + _round_half_up(x * _SIZE)


def _py(y: Fraction, lo=ZERO, hi=ONE) -> int:
    return _MARGIN + _SIZE - _round_half_up((y - lo) / (hi - lo) * _SIZE)


def _poly(points, lo=ZERO, hi=ONE) -> str:
    return " ".join(f"{_px(x)},{_py(y, lo, hi)}" for x, y in points)


def _svg_doc(body: list[str]) -> str:
    side = _SIZE + 2 * _MARGIN
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {side} {side}" '
        f'width="{side}" height="{side}">'
    )
    frame = (
        f'<rect x="{_MARGIN}" y="{_MARGIN}" width="{_SIZE}" height="{_SIZE}" '
        'fill="white" stroke="#444444" stroke-width="1"/>'
    )
    return "\n".join([head, frame, *body, "</svg>"]) + "\n"


def render_svg(obj) -> str:
    """Deterministic SVG for a map, tuple, coordinate or gap set."""
    body: list[str] = []
    diag = f'<polyline points="{_poly(((ZERO, ZERO), (ONE, ONE)))}" fill="none" stroke="#bbbbbb" stroke-dasharray="4,4"/>'
    if isinstance(obj, (CanonicalTuple, MonoTuple)):
        body.append(diag)
        for i, comp in enumerate(obj):
            color = _PALETTE[i % len(_PALETTE)]
            body.append(
                f'<polyline points="{_poly(comp.breakpoints)}" fill="none" '
                f'stroke="{color}" stroke-width="2"/>'
            )
    elif isinstance(obj, PLMono):
        body.append(diag)
        body.append(
            f'<polyline points="{_poly(obj.breakpoints)}" fill="none" '
            f'stroke="{_PALETTE[0]}" stroke-width="2"/>'
        )
    elif isinstance(obj, RoelckeCoord):
        lo, hi = -ONE, ONE
        zero_y = _py(ZERO, lo, hi)
        body.append(
            f'<line x1="{_MARGIN}" y1="{zero_y}" x2="{_MARGIN + _SIZE}" y2="{zero_y}" '
            'stroke="#bbbbbb" stroke-dasharray="4,4"/>'
        )
        body.append(
            f'<polyline points="{_poly(obj.breakpoints, lo, hi)}" fill="none" '
            f'stroke="{_PALETTE[0]}" stroke-width="2"/>'
        )
    elif isinstance(obj, GapSet):
        for a, b in obj:
            x0, x1 = _px(a), _px(b)
            body.append(
                f'<rect x="{x0}" y="{_MARGIN}" width="{x1 - x0}" height="{_SIZE}" '
                'fill="#fdd" stroke="none"/>'
            )
        body.append(diag)
    else:
        raise InputError(f"cannot plot a {type(obj).__name__}")
    return _svg_doc(body)


def render_csv(obj) -> str:
    """Exact tabular form of the same objects ("p/q" strings)."""
    rows: list[str] = []
    if isinstance(obj, (CanonicalTuple, MonoTuple)):
        rows.append("component,x,y")
        for i, comp in enumerate(obj):
            for x, y in comp.breakpoints:
                rows.append(f"{i},{x},{y}")
    elif isinstance(obj, PLMono):
        rows.append("component,x,y")
        for x, y in obj.breakpoints:
            rows.append(f"0,{x},{y}")
    elif isinstance(obj, RoelckeCoord):
        rows.append("x,y")
        for x, y in obj.breakpoints:
            rows.append(f"{x},{y}")
    elif isinstance(obj, GapSet):
        rows.append("gap,lo,hi")
        for i, (a, b) in enumerate(obj):
            rows.append(f"{i},{a},{b}")
    else:
        raise InputError(f"cannot tabulate a {type(obj).__name__}")
    return "\n".join(rows) + "\n"


# ---------------------------------------------------------------------------
# CLI

def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    p = Path(path)
    if not p.exists():
        raise InputError(f"no such file: {path}")
    return p.read_text()


def _write_out(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _parse_plot_object(obj):
    if not isinstance(obj, dict):
        raise InputError("expected a JSON object")
    if "breakpoints" in obj:
        return ser.mono_from_obj(obj)
    if "components" in obj:
        t, weights = ser.tuple_from_obj(obj)
        if obj.get("canonical"):
            return CanonicalTuple(t.components, weights or uniform_weights(len(t)))
        return t
    if "coord" in obj:
        return ser.coord_from_obj(obj)
    if "gaps" in obj:
        return ser.gapset_from_obj(obj)
    raise InputError("unknown object kind: expected breakpoints, components, coord or gaps")


def _cmd_canon(args) -> None:
    t, weights = ser.tuple_from_obj(ser.loads(_read_text(args.input)))
    ct, m = canonicalize(t, weights)
    out = {"canonical": ser.canonical_to_obj(ct), "mean": ser.mono_to_obj(m)}
    _write_out(ser.dumps(out), args.out)


def _cmd_dist(args) -> None:
    ta, wa = ser.tuple_from_obj(ser.loads(_read_text(args.a)))
    tb, wb = ser.tuple_from_obj(ser.loads(_read_text(args.b)))
    del wa, wb  # the quotient distance always compares with uniform weights
    tol = ser.parse_frac(args.tol)
    qi = quot_dist(ta, tb, tol)
    ca, _ = canonicalize(ta)
    cb, _ = canonicalize(tb)
    bound = max(sup_dist(f, g) for f, g in zip(ca.components, cb.components))
    out = ser.interval_to_obj(qi)
    out["canonical_bound"] = ser.frac_str(bound)
    if args.grid:
        out["oracle_upper"] = ser.frac_str(brute_oracle(ta, tb, args.grid))
    _write_out(ser.dumps(out), args.out)


def _cmd_epsnet(args) -> None:
    size = net_size(args.n, args.net)
    out: dict = {"n": args.n, "net": args.net, "size": size}
    if args.points:
        if size > 100000:
            raise InputError(f"net has {size} points; refusing to enumerate")
        out["points"] = [ser.canonical_to_obj(p) for p in net_points(args.n, args.net)]
    if args.check:
        rng = random.Random(args.seed)
        radius = Fraction(2, args.net)
        for _ in range(args.check):
            p = random_point(rng, args.n)
            q = nearest_net_point(p, args.net)
            worst = max(sup_dist(f, g) for f, g in zip(p.components, q.components))
            if worst > radius:
                raise InvariantViolation(
                    f"covering failed: sample at distance {worst} > {radius}"
                )
        out["covering_checked"] = args.check
        out["covering_radius"] = ser.frac_str(radius)
    _write_out(ser.dumps(out), args.out)


def _cmd_sample(args) -> None:
    rng = random.Random(args.seed)
    samples = [random_point(rng, args.n) for _ in range(args.count)]
    out = [ser.canonical_to_obj(ct) for ct in samples]
    _write_out(ser.dumps(out), args.out)


def _cmd_plot(args) -> None:
    obj = _parse_plot_object(ser.loads(_read_text(args.input)))
    if args.format == "svg":
        _write_out(render_svg(obj), args.out)
    elif args.format == "csv":
        _write_out(render_csv(obj), args.out)
    else:
        raise InputError(f"plot emits svg or csv, not {args.format}")


def _cmd_witness(args) -> None:
    g = ser.homeo_from_obj(ser.loads(_read_text(args.input)))
    w = uniform_witness(g)
    out = {"witness": ser.mono_to_obj(w), "distance": "1"}
    _write_out(ser.dumps(out), args.out)


def _cmd_gaps(args) -> None:
    raw = ser.loads(_read_text(args.input))
    if not isinstance(raw, dict) or "gaps" not in raw:
        raise InputError("expected a gap-set object with a 'gaps' list")
    pairs = [(ser.parse_frac(a), ser.parse_frac(b)) for a, b in raw["gaps"]]
    merged = merge_gaps(pairs)
    bad = isolated_points(merged)
    out: dict = ser.gapset_to_obj(merged)
    out["isolated_points"] = [ser.frac_str(x) for x in bad]
    if bad:
        out["collapse"] = None
        out["witnesses"] = None
    else:
        lo, hi = extreme_pair_all(merged)
        out["witnesses"] = [ser.mono_to_obj(lo), ser.mono_to_obj(hi)]
        try:
            out["collapse"] = ser.mono_to_obj(collapse_map(merged))
        except InputError:
            out["collapse"] = None
    _write_out(ser.dumps(out), args.out)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="plmonoid",
        description="Exact calculus of monotone interval maps: canonical forms, "
        "quotient distances, gap calculus, nets and plots.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("canon", help="canonical form and mean of a tuple")
    p.add_argument("input", help="tuple JSON file ('-' for stdin)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_canon)

    p = sub.add_parser("dist", help="bracket the quotient distance of two tuples")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--tol", default="1/64", help="bracket width, a rational like 1/64")
    p.add_argument("--grid", type=int, default=0,
                   help="also report the grid-path oracle upper bound at this resolution")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_dist)

    p = sub.add_parser("epsnet", help="size (and optionally points) of the epsilon net")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--net", type=int, default=4, help="grid resolution m")
    p.add_argument("--points", action="store_true", help="also emit every net point")
    p.add_argument("--check", type=int, default=0,
                   help="verify this many seeded samples are within 2/net of the net")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_epsnet)

    p = sub.add_parser("sample", help="seeded random canonical tuples")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("plot", help="render an object as SVG or CSV")
    p.add_argument("input")
    p.add_argument("--format", choices=("json", "csv", "svg"), default="svg")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_plot)

    p = sub.add_parser("witness", help="uniform-distance witness for a homeomorphism")
    p.add_argument("input")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("gaps", help="merge raw intervals into a gap set, with "
                       "isolated points, witnesses and collapse map")
    p.add_argument("input")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_gaps)

    return ap


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3
    return 0


def cli() -> None:
    raise SystemExit(main())
