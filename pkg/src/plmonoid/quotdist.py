"""Quotient distance between tuples of monotone maps, computed exactly.

Two equal-length tuples are compared modulo simultaneous monotone
reparameterization of each side.  The resulting distance is a Frechet
distance between the two tuple-valued curves under the max-over-
components uniform norm, and is computed here three independent ways:

* an exact decision procedure ("is the distance at most eps?") that
  propagates feasible intervals through the free-space diagram of the
  two merged breakpoint grids, entirely in rational arithmetic;
* a bisection on eps driven by the decision procedure, bracketed above
  by the sup-distance of the canonical forms (the canonical map is
  contractive);
* a brute-force upper bound: dynamic programming over monotone lattice
  paths on a uniform grid, where the cost of a path is the exact
  supremum of the component distances along the piecewise-linear
  alignment the path induces.  Refining the grid never increases it.

Decision instances are independent pure computations and may run
concurrently; the interval propagation inside one decision is
sequential by cell order, which is a data dependency only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import NamedTuple

from .plcore import (
    HALF,
    ONE,
    ZERO,
    InputError,
    InvariantViolation,
    _frac,
    sup_dist,
)
from .typespace import CanonicalTuple, MonoTuple, canonicalize, uniform_weights

__all__ = [
    "QuotInterval",
    "IdentityProximity",
    "quot_decision",
    "quot_dist",
    "brute_oracle",
    "orbit_identity_bound",
]


@dataclass(frozen=True)
class QuotInterval:
    """Bracket [lo, hi] around a quotient distance.

    The decision procedure answered False at lo (or lo is 0) and True
    at hi; ``decisions`` counts how many decision calls were spent.
    """

    lo: Fraction
    hi: Fraction
    decisions: int = 0

    def __post_init__(self):
        if not (ZERO <= self.lo <= self.hi):
            raise InputError(f"not a bracket: [{self.lo}, {self.hi}]")


Span = tuple[Fraction, Fraction] | None


class _FreeSpace:
    """Free-space diagram of a tuple pair over merged breakpoint grids.

    Cell (p, q) covers u in [U[p], U[p+1]], v in [V[q], V[q+1]]; inside
    a cell every component of either tuple is affine, so the set where
    all component distances are at most eps is convex and its trace on
    a cell edge is a subinterval with rational endpoints.
    """

    def __init__(self, a: MonoTuple, b: MonoTuple):
        if len(a) != len(b):
            raise InputError(f"tuple lengths differ: {len(a)} vs {len(b)}")
        self.n = len(a)
        self.U = sorted(set().union(*(f._xs for f in a)))
        self.V = sorted(set().union(*(f._xs for f in b)))
        self.AU = [[f(u) for u in self.U] for f in a]
        self.BV = [[f(v) for v in self.V] for f in b]

    def _edge_free(self, fixed, f0, f1, lo, hi, eps) -> Span:
        """Feasible subinterval of one edge for one component pair.

        The moving side runs affinely from f0 at ``lo`` to f1 at ``hi``
        while the other side sits at ``fixed``; returns the clipped
        solution interval of |moving - fixed| <= eps.
        """
        if f0 == f1:
            return (lo, hi) if abs(fixed - f0) <= eps else None
        slope = (f1 - f0) / (hi - lo)
        c0 = lo + (fixed - eps - f0) / slope
        c1 = lo + (fixed + eps - f0) / slope
        c0, c1 = (c0, c1) if c0 <= c1 else (c1, c0)
        c0 = max(c0, lo)
        c1 = min(c1, hi)
        return (c0, c1) if c0 <= c1 else None

    def vert_free(self, p: int, q: int, eps) -> Span:
        """Free subinterval of the vertical edge u = U[p], v in cell q."""
        lo, hi = self.V[q], self.V[q + 1]
        span = (lo, hi)
        for i in range(self.n):
            piece = self._edge_free(
                self.AU[i][p], self.BV[i][q], self.BV[i][q + 1], lo, hi, eps
            )
            if piece is None:
                return None
            span = (max(span[0], piece[0]), min(span[1], piece[1]))
            if span[0] > span[1]:
                return None
        return span

    def horiz_free(self, p: int, q: int, eps) -> Span:
        """Free subinterval of the horizontal edge v = V[q], u in cell p."""
        lo, hi = self.U[p], self.U[p + 1]
        span = (lo, hi)
        for i in range(self.n):
            piece = self._edge_free(
                self.BV[i][q], self.AU[i][p], self.AU[i][p + 1], lo, hi, eps
            )
            if piece is None:
                return None
            span = (max(span[0], piece[0]), min(span[1], piece[1]))
            if span[0] > span[1]:
                return None
        return span

    def decide(self, eps) -> bool:
        """Monotone path from (0,0) to (1,1) through the free space?"""
        U, V = self.U, self.V
        P, Q = len(U) - 1, len(V) - 1
        vert: list[list[Span]] = [[None] * Q for _ in range(P + 1)]
        horiz: list[list[Span]] = [[None] * (Q + 1) for _ in range(P)]

        reached = True
        for q in range(Q):
            fr = self.vert_free(0, q, eps) if reached else None
            if fr is not None and fr[0] == V[q]:
                vert[0][q] = fr
                reached = fr[1] == V[q + 1]
            else:
                vert[0][q] = None
                reached = False
        reached = True
        for p in range(P):
            fr = self.horiz_free(p, 0, eps) if reached else None
            if fr is not None and fr[0] == U[p]:
                horiz[p][0] = fr
                reached = fr[1] == U[p + 1]
            else:
                horiz[p][0] = None
                reached = False

        for p in range(P):
            for q in range(Q):
                left, bottom = vert[p][q], horiz[p][q]
                if left is None and bottom is None:
                    continue
                fr = self.vert_free(p + 1, q, eps)
                if fr is not None:
                    if bottom is not None:
                        vert[p + 1][q] = fr
                    else:
                        lo = max(fr[0], left[0])
                        vert[p + 1][q] = (lo, fr[1]) if lo <= fr[1] else None
                fr = self.horiz_free(p, q + 1, eps)
                if fr is not None:
                    if left is not None:
                        horiz[p][q + 1] = fr
                    else:
                        lo = max(fr[0], bottom[0])
                        horiz[p][q + 1] = (lo, fr[1]) if lo <= fr[1] else None

        top_right_vert = vert[P][Q - 1]
        top_right_horiz = horiz[P - 1][Q]
        return (top_right_vert is not None and top_right_vert[1] == ONE) or (
            top_right_horiz is not None and top_right_horiz[1] == ONE
        )


def _as_tuple(t) -> MonoTuple:
    if isinstance(t, MonoTuple):
        return t
    if isinstance(t, CanonicalTuple):
        return t.as_tuple()
    return MonoTuple(tuple(t))


def quot_decision(a, b, eps) -> bool:
    """Exact decision: is the quotient distance of a and b at most eps?

    True iff a monotone path from (0, 0) to (1, 1) exists through the
    set of parameter pairs at which every component pair is within eps.
    Monotone in eps.
    """
    eps = _frac(eps)
    if eps < ZERO:
        raise InputError("eps must be nonnegative")
    return _FreeSpace(_as_tuple(a), _as_tuple(b)).decide(eps)


def quot_dist(a, b, tol) -> QuotInterval:
    """Bracket the quotient distance to within tol by bisection.

    The upper end starts at the max component sup-distance of the two
    canonical forms, which dominates the quotient distance because
    passing to canonical forms is contractive; the lower end starts at
    zero.  On return hi - lo <= tol, the decision procedure at hi
    answered True, and at lo it answered False unless lo is 0.
    """
    tol = _frac(tol)
    if tol <= ZERO:
        raise InputError("tolerance must be positive")
    a, b = _as_tuple(a), _as_tuple(b)
    space = _FreeSpace(a, b)
    decisions = 1
    if space.decide(ZERO):
        return QuotInterval(ZERO, ZERO, decisions)
    ca, _ = canonicalize(a)
    cb, _ = canonicalize(b)
    hi = max(sup_dist(f, g) for f, g in zip(ca.components, cb.components))
    decisions += 1
    if not space.decide(hi):
        raise InvariantViolation("canonical sup-distance failed as an upper bound")
    lo = ZERO
    while hi - lo > tol:
        mid = (lo + hi) * HALF
        decisions += 1
        if space.decide(mid):
            hi = mid
        else:
            lo = mid
    return QuotInterval(lo, hi, decisions)


def _interior_kinks(components, k: int):
    """Breakpoints strictly inside grid steps, keyed by the step index.

    Returns {step: [(component, position, value), ...]} for positions in
    ((step-1)/k, step/k).
    """
    out: dict[int, list[tuple[int, Fraction, Fraction]]] = {}
    for i, f in enumerate(components):
        for x, y in f.breakpoints[1:-1]:
            scaled = x * k
            if scaled.denominator != 1:
                step = int(scaled) + 1
                out.setdefault(step, []).append((i, x, y))
    return out


def brute_oracle(a, b, k: int) -> Fraction:
    """Upper bound on the quotient distance from grid-path alignments.

    Considers monotone lattice paths on the (k+1) x (k+1) grid of
    parameter pairs with unit steps; each path induces a piecewise-
    linear alignment, and its cost is the exact supremum of the
    component distances along it (endpoint values plus every interior
    breakpoint crossing, no sampling error).  The minimum over paths is
    a true upper bound on the quotient distance and never increases
    when k is doubled, since the refined grid contains every old path.
    """
    a, b = _as_tuple(a), _as_tuple(b)
    if len(a) != len(b):
        raise InputError(f"tuple lengths differ: {len(a)} vs {len(b)}")
    if k < 1:
        raise InputError("grid resolution must be at least 1")
    n = len(a)
    grid = [Fraction(p, k) for p in range(k + 1)]
    avals = [[f(u) for u in grid] for f in a]
    bvals = [[f(v) for v in grid] for f in b]
    a_kinks = _interior_kinks(a.components, k)
    b_kinks = _interior_kinks(b.components, k)

    fracs: list[Fraction] = []
    for rows in (avals, bvals):
        for row in rows:
            fracs.extend(row)

    # Extra candidate values on edges whose interior hides a breakpoint.
    # Horizontal and vertical edges need the fixed-side value at the
    # crossing; diagonal edges need the moving-side value as well.
    hor_extra: dict[int, list[tuple[int, Fraction]]] = {}
    for step, kinks in a_kinks.items():
        hor_extra[step] = [(i, y) for i, _, y in kinks]
        fracs.extend(y for _, y in hor_extra[step])
    ver_extra: dict[int, list[tuple[int, Fraction]]] = {}
    for step, kinks in b_kinks.items():
        ver_extra[step] = [(i, y) for i, _, y in kinks]
        fracs.extend(y for _, y in ver_extra[step])
    diag_a: dict[int, list[tuple[int, Fraction, list[Fraction]]]] = {}
    for step, kinks in a_kinks.items():
        entries = []
        for i, x, y in kinks:
            s_star = x * k - (step - 1)
            row = [b[i](Fraction(q - 1, k) + s_star / k) for q in range(1, k + 1)]
            entries.append((i, y, row))
            fracs.extend(row)
        diag_a[step] = entries
    diag_b: dict[int, list[tuple[int, Fraction, list[Fraction]]]] = {}
    for step, kinks in b_kinks.items():
        entries = []
        for i, x, y in kinks:
            s_star = x * k - (step - 1)
            col = [a[i](Fraction(p - 1, k) + s_star / k) for p in range(1, k + 1)]
            entries.append((i, y, col))
            fracs.extend(col)
        diag_b[step] = entries

    denom = 1
    for f in fracs:
        denom = lcm(denom, f.denominator)

    def to_int(f: Fraction) -> int:
        return f.numerator * (denom // f.denominator)

    ai = [[to_int(v) for v in row] for row in avals]
    bi = [[to_int(v) for v in row] for row in bvals]
    hor_i = {
        step: [(i, to_int(y)) for i, y in items] for step, items in hor_extra.items()
    }
    ver_i = {
        step: [(i, to_int(y)) for i, y in items] for step, items in ver_extra.items()
    }
    diag_ai = {
        step: [(i, to_int(y), [to_int(v) for v in row]) for i, y, row in items]
        for step, items in diag_a.items()
    }
    diag_bi = {
        step: [(i, to_int(y), [to_int(v) for v in col]) for i, y, col in items]
        for step, items in diag_b.items()
    }

    def node_cost(p: int, q: int) -> int:
        best = 0
        for i in range(n):
            d = ai[i][p] - bi[i][q]
            if d < 0:
                d = -d
            if d > best:
                best = d
        return best

    def hor_edge_extra(p: int, q: int) -> int:
        items = hor_i.get(p)
        if not items:
            return 0
        best = 0
        for i, y in items:
            d = y - bi[i][q]
            if d < 0:
                d = -d
            if d > best:
                best = d
        return best

    def ver_edge_extra(p: int, q: int) -> int:
        items = ver_i.get(q)
        if not items:
            return 0
        best = 0
        for i, y in items:
            d = y - ai[i][p]
            if d < 0:
                d = -d
            if d > best:
                best = d
        return best

    def diag_edge_extra(p: int, q: int) -> int:
        best = 0
        items = diag_ai.get(p)
        if items:
            for i, y, row in items:
                d = y - row[q - 1]
                if d < 0:
                    d = -d
                if d > best:
                    best = d
        items = diag_bi.get(q)
        if items:
            for i, y, col in items:
                d = y - col[p - 1]
                if d < 0:
                    d = -d
                if d > best:
                    best = d
        return best

    prev = [0] * (k + 1)
    prev[0] = node_cost(0, 0)
    for q in range(1, k + 1):
        step = prev[q - 1]
        extra = ver_edge_extra(0, q)
        if extra > step:
            step = extra
        c = node_cost(0, q)
        prev[q] = step if step > c else c
    for p in range(1, k + 1):
        cur = [0] * (k + 1)
        via = prev[0]
        extra = hor_edge_extra(p, 0)
        if extra > via:
            via = extra
        c = node_cost(p, 0)
        cur[0] = via if via > c else c
        for q in range(1, k + 1):
            via_h = prev[q]
            e = hor_edge_extra(p, q)
            if e > via_h:
                via_h = e
            via_v = cur[q - 1]
            e = ver_edge_extra(p, q)
            if e > via_v:
                via_v = e
            via_d = prev[q - 1]
            e = diag_edge_extra(p, q)
            if e > via_d:
                via_d = e
            best = via_h
            if via_v < best:
                best = via_v
            if via_d < best:
                best = via_d
            c = node_cost(p, q)
            cur[q] = best if best > c else c
        prev = cur
    return Fraction(prev[k], denom)


class IdentityProximity(NamedTuple):
    """One-sided result: ``upper_bound`` dominates the true orbit
    distance; ``member`` certifies it fell below the requested eps."""

    upper_bound: Fraction
    member: bool


def orbit_identity_bound(point: CanonicalTuple, eps, net: int) -> IdentityProximity:
    """Upper-bound the distance from a canonical pair's orbit to the
    identity pair, searching reparameterizations on a uniform lattice.

    The orbit acts on the first component only.  Every weakly monotone
    lattice path w on the (net+1) x (net+1) grid reparameterizes the
    first component, and the resulting distance to the identity pair
    has the closed form sup |first o w - second| / 2, evaluated exactly
    (endpoints plus interior breakpoint crossings of each lattice
    segment).  Returns the best bound found and whether it certifies
    membership below eps.  One-sided: True certifies, False does not
    refute.  Doubling ``net`` never increases the bound.
    """
    eps = _frac(eps)
    if not isinstance(point, CanonicalTuple) or len(point) != 2:
        raise InputError("expected a canonical pair")
    if point.weights != uniform_weights(2):
        raise InputError("expected equal weights")
    if net < 1:
        raise InputError("net resolution must be at least 1")
    first, second = point.components

    fx = [first(Fraction(v, net)) for v in range(net + 1)]
    sx = [second(Fraction(j, net)) for j in range(net + 1)]
    # Breakpoints of the first component bucketed by lattice value bins,
    # and of the second by lattice time bins.
    first_bins: dict[int, list[tuple[Fraction, Fraction]]] = {}
    for x, y in first.breakpoints[1:-1]:
        scaled = x * net
        if scaled.denominator != 1:
            first_bins.setdefault(int(scaled) + 1, []).append((x, y))
    second_bins: dict[int, list[tuple[Fraction, Fraction]]] = {}
    for x, y in second.breakpoints[1:-1]:
        scaled = x * net
        if scaled.denominator != 1:
            second_bins.setdefault(int(scaled) + 1, []).append((x, y))

    def segment_cost(j: int, v0: int, v1: int) -> Fraction:
        """Exact sup of |first(w(t)) - second(t)| over one lattice step."""
        t0 = Fraction(j - 1, net)
        cost = max(abs(fx[v0] - sx[j - 1]), abs(fx[v1] - sx[j]))
        if v1 > v0:
            for vbin in range(v0 + 1, v1 + 1):
                for x, y in first_bins.get(vbin, ()):
                    scaled = x * net
                    t_star = t0 + (scaled - v0) / (v1 - v0) / net
                    d = abs(y - second(t_star))
                    if d > cost:
                        cost = d
        for x, y in second_bins.get(j, ()):
            w_at = Fraction(v0, net) + Fraction(v1 - v0, net) * (x * net - (j - 1))
            d = abs(first(w_at) - y)
            if d > cost:
                cost = d
        return cost

    INF = None
    dp: list[Fraction | None] = [INF] * (net + 1)
    dp[0] = ZERO
    for j in range(1, net + 1):
        new: list[Fraction | None] = [INF] * (net + 1)
        for v1 in range(net + 1):
            best = INF
            for v0 in range(v1 + 1):
                base = dp[v0]
                if base is None:
                    continue
                c = segment_cost(j, v0, v1)
                if c < base:
                    c = base
                if best is None or c < best:
                    best = c
            new[v1] = best
        dp = new
    if dp[net] is None:
        raise InvariantViolation("lattice search found no path")
    bound = dp[net] * HALF
    return IdentityProximity(bound, bound < eps)
