"""Canonical representatives of tuples of monotone maps.

A finite tuple of monotone surjections, considered up to simultaneous
reparameterization of the domain, has a unique canonical form: compose
every component with the left-continuous inverse of the (weighted) mean
of the tuple.  The canonical form has mean exactly the identity and
each component is Lipschitz with constant at most one over its weight;
composing it back with the mean recovers the original tuple bit-exactly.

Pairs in canonical form with equal weights can equivalently be encoded
by a single 1-Lipschitz function vanishing at the endpoints (the
difference between the first component and the identity); this is the
coordinate system used by the epsilon-net enumeration in the CLI.

Pure functions over immutable values throughout.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .plcore import (
    ONE,
    ZERO,
    InputError,
    PLHomeo,
    PLMono,
    Point,
    _frac,
    _normalize,
    combine,
    compose_lc,
    identity,
    max_slope,
    pseudo_inverse,
)

__all__ = [
    "MonoTuple",
    "CanonicalTuple",
    "RoelckeCoord",
    "uniform_weights",
    "check_weights",
    "mean",
    "canonicalize",
    "lipschitz_constant",
    "roelcke_coord",
    "coord_to_pair",
    "embed_homeo",
]

Weights = tuple[Fraction, ...]


def uniform_weights(n: int) -> Weights:
    if n < 1:
        raise InputError("need at least one component")
    return (Fraction(1, n),) * n


def check_weights(weights, n: int) -> Weights:
    """Validate a weight vector: positive rationals of length n summing to 1."""
    w = tuple(_frac(x) for x in weights)
    if len(w) != n:
        raise InputError(f"weight/length mismatch: {len(w)} weights for {n} components")
    if any(x <= ZERO for x in w):
        raise InputError("weights must be strictly positive")
    if sum(w) != ONE:
        raise InputError("weights must sum to exactly 1")
    return w


@dataclass(frozen=True, eq=False)
class MonoTuple:
    """Nonempty finite tuple of monotone surjections."""

    components: tuple[PLMono, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise InputError("a tuple needs at least one component")
        for c in comps:
            if not isinstance(c, PLMono):
                raise InputError(f"not a monotone map: {c!r}")
        object.__setattr__(self, "components", comps)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __eq__(self, other):
        if isinstance(other, MonoTuple):
            return self.components == other.components
        return NotImplemented

    def __hash__(self):
        return hash(self.components)


def mean(t: MonoTuple, weights: Weights | None = None) -> PLMono:
    """Exact weighted mean of the components; stays in the monoid."""
    w = uniform_weights(len(t)) if weights is None else check_weights(weights, len(t))
    return combine(list(zip(w, t.components)))


@dataclass(frozen=True, eq=False)
class CanonicalTuple:
    """A tuple whose weighted mean is exactly the identity.

    With uniform weights these are the canonical representatives of
    tuples modulo reparameterization; each component's slopes are
    bounded by the reciprocal of its weight (by n in the uniform case).
    Both invariants are checked exactly on construction.
    """

    components: tuple[PLMono, ...]
    weights: Weights

    def __post_init__(self):
        comps = tuple(self.components)
        w = check_weights(self.weights, len(comps))
        if combine(list(zip(w, comps))) != identity():
            raise InputError("weighted mean of a canonical tuple must be the identity")
        for wi, c in zip(w, comps):
            if max_slope(c) > 1 / wi:
                raise InputError(f"component slope exceeds {1 / wi}")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "weights", w)

    def as_tuple(self) -> MonoTuple:
        return MonoTuple(self.components)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __eq__(self, other):
        if isinstance(other, CanonicalTuple):
            return self.components == other.components and self.weights == other.weights
        return NotImplemented

    def __hash__(self):
        return hash((self.components, self.weights))


def canonicalize(t: MonoTuple, weights: Weights | None = None) -> tuple[CanonicalTuple, PLMono]:
    """Split a tuple into its canonical form and its mean.

    Returns (c, m) with m the weighted mean of t and c the tuple whose
    i-th component is t[i] composed with the left-continuous inverse of
    m.  The splice through the inverse's jumps is well defined because a
    plateau of the mean forces a shared plateau of every component, and
    composing back gives compose(c[i], m) == t[i] bit-exactly.
    """
    w = uniform_weights(len(t)) if weights is None else check_weights(weights, len(t))
    m = mean(t, w)
    if m == identity():
        return CanonicalTuple(t.components, w), m
    minv = pseudo_inverse(m)
    comps = tuple(compose_lc(f, minv) for f in t.components)
    return CanonicalTuple(comps, w), m


def lipschitz_constant(c: CanonicalTuple, i: int) -> Fraction:
    """Largest segment slope of component i; at most 1 over its weight."""
    if not 0 <= i < len(c):
        raise InputError(f"component index {i} out of range for length {len(c)}")
    return max_slope(c.components[i])


@dataclass(frozen=True, eq=False)
class RoelckeCoord:
    """1-Lipschitz piecewise-linear function vanishing at both endpoints.

    The coordinate of a canonical pair with equal weights: first
    component minus the identity.  Every segment slope lies in [-1, 1].
    """

    breakpoints: tuple[Point, ...]

    def __post_init__(self):
        pts = _normalize(self.breakpoints)
        if pts[0] != (ZERO, ZERO) or pts[-1] != (ONE, ZERO):
            raise InputError("coordinate must vanish at both endpoints")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if abs(y1 - y0) > x1 - x0:
                raise InputError("coordinate must be 1-Lipschitz")
        object.__setattr__(self, "breakpoints", pts)
        object.__setattr__(self, "_xs", tuple(x for x, _ in pts))

    def __call__(self, t) -> Fraction:
        t = _frac(t)
        if t < ZERO or t > ONE:
            raise InputError(f"argument {t} outside [0, 1]")
        xs = self._xs
        i = bisect_right(xs, t) - 1
        x0, y0 = self.breakpoints[i]
        if x0 == t:
            return y0
        x1, y1 = self.breakpoints[i + 1]
        return y0 + (y1 - y0) * (t - x0) / (x1 - x0)

    def __eq__(self, other):
        if isinstance(other, RoelckeCoord):
            return self.breakpoints == other.breakpoints
        return NotImplemented

    def __hash__(self):
        return hash(self.breakpoints)

    def __repr__(self):
        pts = " ".join(f"({x},{y})" for x, y in self.breakpoints)
        return f"RoelckeCoord[{pts}]"


def roelcke_coord(c: CanonicalTuple) -> RoelckeCoord:
    """Coordinate of a canonical pair: first component minus the identity."""
    if len(c) != 2 or c.weights != uniform_weights(2):
        raise InputError("coordinates are defined for pairs with equal weights")
    return RoelckeCoord(tuple((x, y - x) for x, y in c.components[0].breakpoints))


def coord_to_pair(rc: RoelckeCoord) -> CanonicalTuple:
    """Inverse of roelcke_coord: (identity + f, identity - f)."""
    first = PLMono(tuple((x, x + y) for x, y in rc.breakpoints))
    second = PLMono(tuple((x, x - y) for x, y in rc.breakpoints))
    return CanonicalTuple((first, second), uniform_weights(2))


def embed_homeo(g: PLHomeo) -> CanonicalTuple:
    """Canonical pair of (identity, g): the standard embedding of the
    homeomorphism group into the space of canonical pairs."""
    if not isinstance(g, PLHomeo):
        raise InputError("embedding is defined for homeomorphisms")
    ct, _ = canonicalize(MonoTuple((identity(), g)))
    return ct
