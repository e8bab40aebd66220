"""Exact algebra of piecewise-linear monotone maps of the unit interval.

The central type is the continuous, weakly increasing surjection of
[0, 1] onto itself with rational breakpoints.  These maps form a monoid
under composition; the strictly increasing ones are the invertible
elements.  Because breakpoints are rational and every operation here is
carried out in exact rational arithmetic, identities such as
``compose(f, pseudo_inverse(f)) == identity()`` hold bit-exactly, not up
to rounding.

Representations are canonical: breakpoint lists carry no redundant
(collinear) points, so equality of functions is equality of
representations.

All values are immutable and all operations are pure functions; the
module is safe for unrestricted concurrent use.
"""

from __future__ import annotations

from bisect import bisect_right, bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "ZERO",
    "ONE",
    "HALF",
    "InputError",
    "InvariantViolation",
    "PLMono",
    "PLHomeo",
    "LcMono",
    "identity",
    "as_homeo",
    "inverse",
    "compose",
    "compose_lc",
    "pseudo_inverse",
    "combine",
    "sup_dist",
    "order_excess",
    "max_slope",
    "uniform_witness",
]

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)

Point = tuple[Fraction, Fraction]


class InputError(ValueError):
    """A caller supplied data that violates a documented precondition."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; indicates a library bug."""


def _frac(value) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InputError(f"not a rational number: {value!r}") from exc


def _collinear(a: Point, b: Point, c: Point) -> bool:
    return (b[1] - a[1]) * (c[0] - b[0]) == (c[1] - b[1]) * (b[0] - a[0])


def _normalize(points: Iterable[Sequence]) -> tuple[Point, ...]:
    """Sort points, drop duplicates and collinear interior points."""
    pts = sorted((_frac(x), _frac(y)) for x, y in points)
    dedup: list[Point] = []
    for x, y in pts:
        if dedup and dedup[-1][0] == x:
            if dedup[-1][1] != y:
                raise InputError(f"conflicting values {dedup[-1][1]} and {y} at x = {x}")
            continue
        dedup.append((x, y))
    if len(dedup) < 2:
        raise InputError("a breakpoint list needs at least two distinct points")
    out = [dedup[0]]
    for p in dedup[1:]:
        while len(out) >= 2 and _collinear(out[-2], out[-1], p):
            out.pop()
        out.append(p)
    return tuple(out)


@dataclass(frozen=True, eq=False)
class PLMono:
    """Continuous weakly increasing piecewise-linear surjection of [0, 1].

    Breakpoints are held in the unique minimal form: x-coordinates
    strictly increasing from (0, 0) to (1, 1), y-coordinates weakly
    increasing, no three consecutive points collinear.  Plateaus are
    segments of zero slope.  Instances are immutable and hashable; two
    instances are equal exactly when they are the same function.
    """

    breakpoints: tuple[Point, ...]

    def __post_init__(self):
        pts = _normalize(self.breakpoints)
        if pts[0] != (ZERO, ZERO) or pts[-1] != (ONE, ONE):
            raise InputError("must fix the endpoints: first (0,0), last (1,1)")
        ys = tuple(y for _, y in pts)
        if any(b < a for a, b in zip(ys, ys[1:])):
            raise InputError("values must be weakly increasing")
        self._check_values(ys)
        object.__setattr__(self, "breakpoints", pts)
        object.__setattr__(self, "_xs", tuple(x for x, _ in pts))
        object.__setattr__(self, "_ys", ys)

    def _check_values(self, ys: tuple[Fraction, ...]) -> None:
        pass

    def __call__(self, t) -> Fraction:
        """Exact value at t by linear interpolation."""
        t = _frac(t)
        if t < ZERO or t > ONE:
            raise InputError(f"argument {t} outside [0, 1]")
        xs = self._xs
        i = bisect_right(xs, t) - 1
        if xs[i] == t:
            return self._ys[i]
        x0, y0 = self.breakpoints[i]
        x1, y1 = self.breakpoints[i + 1]
        return y0 + (y1 - y0) * (t - x0) / (x1 - x0)

    def __eq__(self, other):
        if isinstance(other, PLMono):
            return self.breakpoints == other.breakpoints
        return NotImplemented

    def __hash__(self):
        return hash(self.breakpoints)

    def __repr__(self):
        pts = " ".join(f"({x},{y})" for x, y in self.breakpoints)
        return f"{type(self).__name__}[{pts}]"


class PLHomeo(PLMono):
    """Strictly increasing piecewise-linear self-homeomorphism of [0, 1]."""

    def _check_values(self, ys: tuple[Fraction, ...]) -> None:
        if any(b <= a for a, b in zip(ys, ys[1:])):
            raise InputError("a homeomorphism must be strictly increasing")


_IDENTITY = PLHomeo(((ZERO, ZERO), (ONE, ONE)))


def identity() -> PLHomeo:
    """The identity map of [0, 1]."""
    return _IDENTITY


def as_homeo(f: PLMono) -> PLHomeo:
    """Reinterpret a plateau-free monotone map as a homeomorphism."""
    return PLHomeo(f.breakpoints)


def inverse(g: PLHomeo) -> PLHomeo:
    """Exact inverse homeomorphism (reflect the breakpoints)."""
    if not isinstance(g, PLHomeo):
        raise InputError("inverse needs a strictly increasing map; use pseudo_inverse otherwise")
    return PLHomeo(tuple((y, x) for x, y in g.breakpoints))


@dataclass(frozen=True, eq=False)
class LcMono:
    """Left-continuous weakly increasing inverse of a monotone surjection.

    Stored as the reflected polyline of the function it inverts: the
    first coordinate (argument) is weakly increasing, the second
    (value) strictly increasing.  A repeated argument encodes a jump;
    evaluation at the jump argument returns the lower value, which is
    the left limit, so the function is left-continuous everywhere and
    sends a plateau's common value to the plateau's left endpoint.
    """

    vertices: tuple[Point, ...]

    def __post_init__(self):
        verts = tuple((_frac(v), _frac(t)) for v, t in self.vertices)
        if len(verts) < 2 or verts[0] != (ZERO, ZERO) or verts[-1] != (ONE, ONE):
            raise InputError("vertices must run from (0,0) to (1,1)")
        vs = tuple(v for v, _ in verts)
        ts = tuple(t for _, t in verts)
        if any(b < a for a, b in zip(vs, vs[1:])):
            raise InputError("arguments must be weakly increasing")
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise InputError("values must be strictly increasing")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "_vs", vs)
        object.__setattr__(self, "_ts", ts)

    def __call__(self, v) -> Fraction:
        v = _frac(v)
        if v < ZERO or v > ONE:
            raise InputError(f"argument {v} outside [0, 1]")
        vs = self._vs
        i = bisect_left(vs, v)
        if vs[i] == v:
            return self._ts[i]
        v0, t0 = self.vertices[i - 1]
        v1, t1 = self.vertices[i]
        return t0 + (t1 - t0) * (v - v0) / (v1 - v0)

    def jumps(self) -> list[tuple[Fraction, Fraction, Fraction]]:
        """All jumps as (argument, lower value, upper value) triples."""
        out = []
        for (v0, t0), (v1, t1) in zip(self.vertices, self.vertices[1:]):
            if v0 == v1:
                out.append((v0, t0, t1))
        return out

    def __eq__(self, other):
        if isinstance(other, LcMono):
            return self.vertices == other.vertices
        return NotImplemented

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        pts = " ".join(f"({v},{t})" for v, t in self.vertices)
        return f"LcMono[{pts}]"


def pseudo_inverse(f: PLMono) -> LcMono:
    """The left-continuous right inverse of f.

    Composing f after the result is the identity; at every value where
    f has a plateau the result jumps, taking the plateau's left
    endpoint there.  For a strictly increasing f this is the ordinary
    inverse.
    """
    return LcMono(tuple((y, x) for x, y in f.breakpoints))


def compose(f: PLMono, g: PLMono) -> PLMono:
    """Exact composition t -> f(g(t)).

    Breakpoints of the result are the breakpoints of g together with
    the g-preimages of breakpoint abscissas of f.
    """
    cuts = set(g._xs)
    gx, gy = g._xs, g._ys
    for c in f._xs[1:-1]:
        for i in range(len(gy) - 1):
            if gy[i] < c < gy[i + 1]:
                cuts.add(gx[i] + (c - gy[i]) * (gx[i + 1] - gx[i]) / (gy[i + 1] - gy[i]))
    xs = sorted(cuts)
    return PLMono(tuple((x, f(g(x))) for x in xs))


def compose_lc(f: PLMono, inv: LcMono) -> PLMono:
    """Compose a continuous map through a jump inverse by splicing.

    The jump intervals of ``inv`` are skipped; the result is continuous
    exactly when f is constant across every jump.  That condition is
    checked at run time and InvariantViolation is raised if it fails.
    """
    vs, ts = inv._vs, inv._ts
    for v, lower, upper in inv.jumps():
        if f(lower) != f(upper):
            raise InvariantViolation(
                f"discontinuous composition: jump at {v} spans [{lower}, {upper}] "
                "where the outer map is not constant"
            )
    cuts = set(vs)
    for c in f._xs[1:-1]:
        for i in range(len(ts) - 1):
            if vs[i] < vs[i + 1] and ts[i] < c < ts[i + 1]:
                cuts.add(vs[i] + (c - ts[i]) * (vs[i + 1] - vs[i]) / (ts[i + 1] - ts[i]))
    xs = sorted(cuts)
    try:
        return PLMono(tuple((v, f(inv(v))) for v in xs))
    except InputError as exc:
        raise InvariantViolation(f"spliced composition left the monoid: {exc}") from exc


def combine(terms: Sequence[tuple[Fraction, PLMono]]) -> PLMono:
    """Pointwise linear combination sum(c * f).

    The coefficients must be positive and sum to one for the result to
    stay in the monoid; the constructor enforces the endpoint and
    monotonicity invariants.
    """
    if not terms:
        raise InputError("empty combination")
    xs = sorted(set().union(*(f._xs for _, f in terms)))
    pts = []
    for x in xs:
        acc = ZERO
        for c, f in terms:
            acc += _frac(c) * f(x)
        pts.append((x, acc))
    return PLMono(tuple(pts))


def _merged_grid(f: PLMono, g: PLMono) -> list[Fraction]:
    return sorted(set(f._xs) | set(g._xs))


def sup_dist(f: PLMono, g: PLMono) -> Fraction:
    """Exact uniform distance sup |f - g|.

    The difference is piecewise linear, so the supremum is attained at
    a point of the merged breakpoint grid.
    """
    return max(abs(f(x) - g(x)) for x in _merged_grid(f, g))


def order_excess(f: PLMono, g: PLMono) -> Fraction:
    """Exact supremum of the signed difference f - g.

    Zero exactly when g dominates f pointwise; otherwise it measures by
    how much it fails to.  Never negative, since both maps agree at 0.
    """
    return max(f(x) - g(x) for x in _merged_grid(f, g))


def max_slope(f: PLMono) -> Fraction:
    """Largest segment slope; a Lipschitz constant for f and the best one."""
    bps = f.breakpoints
    return max((y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(bps, bps[1:]))


def uniform_witness(g: PLHomeo) -> PLMono:
    """A monotone surjection that g displaces by uniform distance exactly 1.

    Let h be g if g exceeds the identity somewhere and the inverse of g
    otherwise, and let t be the first breakpoint maximizing h(t) - t.
    The witness is 0 on [0, t], 1 on [h(t), 1] and a single ramp in
    between; precomposing with the inverse of h moves it by exactly 1.
    """
    if not isinstance(g, PLHomeo):
        raise InputError("the witness construction needs a homeomorphism")
    if g == _IDENTITY:
        raise InputError("identity has no witness")

    def first_argmax(h: PLHomeo):
        best_t, best_d = None, ZERO
        for x, y in h.breakpoints:
            if y - x > best_d:
                best_t, best_d = x, y - x
        return best_t

    direction = g
    t = first_argmax(direction)
    if t is None:
        direction = inverse(g)
        t = first_argmax(direction)
    if t is None:
        raise InvariantViolation("non-identity homeomorphism with zero displacement")
    top = direction(t)
    witness = PLMono(((ZERO, ZERO), (t, ZERO), (top, ONE), (ONE, ONE)))
    if sup_dist(compose(witness, inverse(direction)), witness) != ONE:
        raise InvariantViolation("witness construction failed to realize distance one")
    return witness
