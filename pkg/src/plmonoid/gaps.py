"""Gap calculus for pseudo-distances on the monotone-surjection monoid.

A pseudo-distance that is invariant under reparameterization collapses
certain pairs of maps to distance zero.  The collapsing is governed by
a set of open "gaps" inside (0, 1): two maps are identified exactly
when, wherever they disagree, the midpoint of their values falls inside
a gap.  This module computes with finite gap sets directly: coalescing
raw interval lists, the extreme pair of maps witnessing a gap, the
exact equivalence decision, and the collapse map that realizes the same
identification as a plain uniform distance after composition.

Finite gap sets only; every operation is exact.  Evaluators produced or
consumed here must be pure functions, safe for concurrent invocation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .plcore import (
    HALF,
    ONE,
    ZERO,
    InputError,
    PLMono,
    _frac,
    combine,
    compose,
    sup_dist,
)
from .typespace import MonoTuple

__all__ = [
    "GapSet",
    "merge_gaps",
    "isolated_points",
    "extreme_pair",
    "extreme_pair_all",
    "equiv_test",
    "collapse_map",
    "collapsed_dist",
    "pullback_pseudometric",
    "TuplePseudoDist",
    "MonoPseudoDist",
]

Interval = tuple[Fraction, Fraction]

# Pseudo-distance evaluators: symmetric, nonnegative, triangle-satisfying
# callables.  The axioms are spot-checked in tests, not enforced here.
TuplePseudoDist = Callable[[MonoTuple, MonoTuple], Fraction]
MonoPseudoDist = Callable[[PLMono, PLMono], Fraction]


def _check_interval(iv) -> Interval:
    a, b = _frac(iv[0]), _frac(iv[1])
    if not (ZERO <= a < b <= ONE):
        raise InputError(f"not a nonempty open subinterval of [0, 1]: ({a}, {b})")
    return a, b


@dataclass(frozen=True, eq=False)
class GapSet:
    """Finite set of disjoint open rational subintervals of (0, 1).

    Intervals are sorted and pairwise disjoint.  Two intervals may share
    an endpoint; such shared endpoints are reported by isolated_points
    and disqualify the set from arising as the gap set of a
    pseudo-distance.
    """

    gaps: tuple[Interval, ...]

    def __post_init__(self):
        ivs = tuple(_check_interval(iv) for iv in self.gaps)
        for (a0, b0), (a1, b1) in zip(ivs, ivs[1:]):
            if a1 < b0:
                raise InputError(f"gaps overlap: ({a0}, {b0}) and ({a1}, {b1})")
        object.__setattr__(self, "gaps", ivs)

    def union_contains(self, x: Fraction) -> bool:
        return any(a < x < b for a, b in self.gaps)

    def __len__(self):
        return len(self.gaps)

    def __iter__(self):
        return iter(self.gaps)

    def __eq__(self, other):
        if isinstance(other, GapSet):
            return self.gaps == other.gaps
        return NotImplemented

    def __hash__(self):
        return hash(self.gaps)


def merge_gaps(intervals) -> GapSet:
    """Coalesce raw open intervals into the minimal equivalent gap set.

    Overlapping or nested intervals merge; intervals that merely touch
    at a point stay separate, since the union of open sets does not
    cover the shared endpoint.
    """
    ivs = sorted(_check_interval(iv) for iv in intervals)
    out: list[Interval] = []
    for a, b in ivs:
        if out and a < out[-1][1]:
            prev_a, prev_b = out[-1]
            out[-1] = (prev_a, max(prev_b, b))
        else:
            out.append((a, b))
    return GapSet(tuple(out))


def isolated_points(g: GapSet) -> list[Fraction]:
    """Shared endpoints of adjacent gaps.

    A nonempty result means the complement of the union has an isolated
    point, which no pseudo-distance gap set can have.
    """
    return [b0 for (_, b0), (a1, _) in zip(g.gaps, g.gaps[1:]) if b0 == a1]


def extreme_pair(interval) -> tuple[PLMono, PLMono]:
    """The two extreme maps witnessing one gap.

    On (a, b) the lower map sits at a for the first half then climbs
    with slope 2, the upper map climbs first then sits at b; both agree
    with the identity outside.  Their mean is exactly the identity, so
    the pair is a canonical pair.
    """
    a, b = _check_interval(interval)
    mid = (a + b) * HALF
    lower = PLMono(((ZERO, ZERO), (a, a), (mid, a), (b, b), (ONE, ONE)))
    upper = PLMono(((ZERO, ZERO), (a, a), (mid, b), (b, b), (ONE, ONE)))
    return lower, upper


def extreme_pair_all(g: GapSet) -> tuple[PLMono, PLMono]:
    """Extreme pair witnessing every gap at once: identity on the
    complement, gap-wise extreme maps inside each gap."""
    bad = isolated_points(g)
    if bad:
        raise InputError(f"gap set has isolated complement points at {bad}")
    lo_pts = [(ZERO, ZERO)]
    hi_pts = [(ZERO, ZERO)]
    for a, b in g.gaps:
        mid = (a + b) * HALF
        lo_pts += [(a, a), (mid, a), (b, b)]
        hi_pts += [(a, a), (mid, b), (b, b)]
    lo_pts.append((ONE, ONE))
    hi_pts.append((ONE, ONE))
    return PLMono(tuple(lo_pts)), PLMono(tuple(hi_pts))


def _difference_support(f: PLMono, h: PLMono) -> list[Interval]:
    """Maximal open intervals where f and h differ, exactly."""
    xs = sorted(set(f._xs) | set(h._xs))
    vals = [f(x) - h(x) for x in xs]
    # Zero set of the piecewise-linear difference, as closed pieces.
    zeros: list[Interval] = []
    for i in range(len(xs) - 1):
        d0, d1 = vals[i], vals[i + 1]
        x0, x1 = xs[i], xs[i + 1]
        if d0 == 0 and d1 == 0:
            zeros.append((x0, x1))
        elif d0 == 0:
            zeros.append((x0, x0))
        elif d1 == 0:
            zeros.append((x1, x1))
        elif (d0 < 0) != (d1 < 0):
            x_star = x0 + (x1 - x0) * (-d0) / (d1 - d0)
            zeros.append((x_star, x_star))
    merged: list[Interval] = []
    for a, b in sorted(zeros):
        if merged and a <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], b))
        else:
            merged.append((a, b))
    # Endpoints are always in the zero set (both maps fix 0 and 1).
    support: list[Interval] = []
    for (_, b0), (a1, _) in zip(merged, merged[1:]):
        support.append((b0, a1))
    return support


def _preimage_of_closed(m: PLMono, lo: Fraction, hi: Fraction) -> Interval:
    """Exact preimage [l, r] of the closed band [lo, hi] under a
    monotone surjection; nonempty whenever 0 <= lo <= hi <= 1."""
    xs, ys = m._xs, m._ys

    def first_at_least(c: Fraction) -> Fraction:
        if c <= ys[0]:
            return xs[0]
        for i in range(len(ys) - 1):
            if ys[i] < c <= ys[i + 1]:
                return xs[i] + (c - ys[i]) * (xs[i + 1] - xs[i]) / (ys[i + 1] - ys[i])
        return xs[-1]

    def last_at_most(c: Fraction) -> Fraction:
        if c >= ys[-1]:
            return xs[-1]
        for i in range(len(ys) - 1, 0, -1):
            if ys[i - 1] <= c < ys[i]:
                return xs[i - 1] + (c - ys[i - 1]) * (xs[i] - xs[i - 1]) / (ys[i] - ys[i - 1])
        return xs[0]

    return first_at_least(lo), last_at_most(hi)


def _complement_pieces(g: GapSet) -> list[Interval]:
    """Closed components of [0, 1] minus the gap union, degenerate
    points included."""
    pieces: list[Interval] = []
    cursor = ZERO
    for a, b in g.gaps:
        pieces.append((cursor, a))
        cursor = b
    pieces.append((cursor, ONE))
    return pieces


def equiv_test(f: PLMono, h: PLMono, g: GapSet) -> bool:
    """Decide whether f and h are identified by the gap set, exactly.

    True when at every point where f and h differ, the midpoint of
    their two values lies inside the union of gaps.  Decided by
    intersecting the open support of the difference with the midpoint
    map's preimage of each closed complement piece.
    """
    support = _difference_support(f, h)
    if not support:
        return True
    midpoint = combine([(HALF, f), (HALF, h)])
    for lo, hi in _complement_pieces(g):
        l, r = _preimage_of_closed(midpoint, lo, hi)
        if l > r:
            continue
        for a, b in support:
            if l < b and r > a:
                return False
    return True


def collapse_map(g: GapSet) -> PLMono:
    """The monotone surjection that is constant on every gap and climbs
    at constant speed on the complement.

    Sends t to the normalized length of [0, t] minus the gaps.  Raises
    for gap sets with isolated complement points, and for gap sets
    covering all of (0, 1), which identify everything (the trivial
    pseudo-distance).
    """
    bad = isolated_points(g)
    if bad:
        raise InputError(f"gap set has isolated complement points at {bad}")
    free = ONE - sum((b - a for a, b in g.gaps), start=ZERO)
    if free == ZERO:
        raise InputError("gaps cover (0, 1): trivial pseudo-distance has no collapse map")
    slope = 1 / free
    pts: list[tuple[Fraction, Fraction]] = [(ZERO, ZERO)]
    cursor, level = ZERO, ZERO
    for a, b in g.gaps:
        level += (a - cursor) * slope
        pts.append((a, level))
        pts.append((b, level))
        cursor = b
    pts.append((ONE, level + (ONE - cursor) * slope))
    return PLMono(tuple(pts))


def collapsed_dist(f: PLMono, h: PLMono, chi: PLMono) -> Fraction:
    """Uniform distance after collapsing through chi: the pseudo-distance
    induced by a collapse map."""
    return sup_dist(compose(chi, f), compose(chi, h))


def pullback_pseudometric(base: MonoTuple, rho: TuplePseudoDist) -> MonoPseudoDist:
    """Pull a tuple pseudo-distance back along composition with a base
    tuple: the returned evaluator sends (f, h) to rho(base o f, base o h).

    Pseudo-metric axioms are inherited from rho; they are spot-checked
    in tests rather than enforced.
    """
    if not isinstance(base, MonoTuple):
        base = MonoTuple(tuple(base))

    def pulled(f: PLMono, h: PLMono) -> Fraction:
        left = MonoTuple(tuple(compose(c, f) for c in base))
        right = MonoTuple(tuple(compose(c, h) for c in base))
        return rho(left, right)

    return pulled
