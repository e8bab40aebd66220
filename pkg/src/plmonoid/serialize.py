"""JSON wire formats with exact rational coordinates.

Every number crosses the boundary as a "p/q" string (or "p" for
integers), so round trips are bit-exact.  The formats:

* monotone map       {"breakpoints": [["0", "0"], ["1/4", "1/4"], ...]}
* tuple              {"components": [<map>, ...], "weights": ["1/2", ...]}
                     (weights optional; canonical tuples add "canonical": true)
* coordinate         {"coord": [["0", "0"], ["1/2", "-1/4"], ...]}
* gap set            {"gaps": [["1/4", "3/4"], ...]}
* distance bracket   {"lo": "p/q", "hi": "p/q", "decisions": n}
"""

from __future__ import annotations

import json
from fractions import Fraction

from .plcore import InputError, PLHomeo, PLMono
from .typespace import CanonicalTuple, MonoTuple, RoelckeCoord, Weights
from .gaps import GapSet
from .quotdist import QuotInterval

__all__ = [
    "frac_str",
    "parse_frac",
    "mono_to_obj",
    "mono_from_obj",
    "homeo_from_obj",
    "tuple_to_obj",
    "tuple_from_obj",
    "canonical_to_obj",
    "canonical_from_obj",
    "coord_to_obj",
    "coord_from_obj",
    "gapset_to_obj",
    "gapset_from_obj",
    "interval_to_obj",
    "dumps",
    "loads",
]


def frac_str(x) -> str:
    return str(Fraction(x))


def parse_frac(s) -> Fraction:
    if not isinstance(s, str):
        raise InputError(f"rationals must be strings like '1/4', got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {s!r}") from exc


def _point_list(pairs) -> list[list[str]]:
    return [[frac_str(x), frac_str(y)] for x, y in pairs]


def _parse_points(obj, what: str):
    if not isinstance(obj, list) or not all(isinstance(p, list) and len(p) == 2 for p in obj):
        raise InputError(f"{what} must be a list of [x, y] pairs")
    return tuple((parse_frac(x), parse_frac(y)) for x, y in obj)


def _require_dict(obj, what: str) -> dict:
    if not isinstance(obj, dict):
        raise InputError(f"{what} must be a JSON object, got {type(obj).__name__}")
    return obj


def mono_to_obj(f: PLMono) -> dict:
    return {"breakpoints": _point_list(f.breakpoints)}


def mono_from_obj(obj) -> PLMono:
    obj = _require_dict(obj, "a monotone map")
    if "breakpoints" not in obj:
        raise InputError("missing 'breakpoints'")
    return PLMono(_parse_points(obj["breakpoints"], "'breakpoints'"))


def homeo_from_obj(obj) -> PLHomeo:
    obj = _require_dict(obj, "a homeomorphism")
    if "breakpoints" not in obj:
        raise InputError("missing 'breakpoints'")
    return PLHomeo(_parse_points(obj["breakpoints"], "'breakpoints'"))


def tuple_to_obj(t: MonoTuple, weights: Weights | None = None) -> dict:
    out: dict = {"components": [mono_to_obj(c) for c in t]}
    if weights is not None:
        out["weights"] = [frac_str(w) for w in weights]
    return out


def tuple_from_obj(obj) -> tuple[MonoTuple, Weights | None]:
    obj = _require_dict(obj, "a tuple")
    if "components" not in obj or not isinstance(obj["components"], list):
        raise InputError("missing or malformed 'components'")
    comps = tuple(mono_from_obj(c) for c in obj["components"])
    weights = None
    if "weights" in obj:
        if not isinstance(obj["weights"], list):
            raise InputError("'weights' must be a list")
        weights = tuple(parse_frac(w) for w in obj["weights"])
    return MonoTuple(comps), weights


def canonical_to_obj(ct: CanonicalTuple) -> dict:
    out = tuple_to_obj(ct.as_tuple(), ct.weights)
    out["canonical"] = True
    return out


def canonical_from_obj(obj) -> CanonicalTuple:
    t, weights = tuple_from_obj(obj)
    if weights is None:
        from .typespace import uniform_weights

        weights = uniform_weights(len(t))
    return CanonicalTuple(t.components, weights)


def coord_to_obj(rc: RoelckeCoord) -> dict:
    return {"coord": _point_list(rc.breakpoints)}


def coord_from_obj(obj) -> RoelckeCoord:
    obj = _require_dict(obj, "a coordinate")
    if "coord" not in obj:
        raise InputError("missing 'coord'")
    return RoelckeCoord(_parse_points(obj["coord"], "'coord'"))


def gapset_to_obj(g: GapSet) -> dict:
    return {"gaps": _point_list(g.gaps)}


def gapset_from_obj(obj) -> GapSet:
    obj = _require_dict(obj, "a gap set")
    if "gaps" not in obj or not isinstance(obj["gaps"], list):
        raise InputError("missing or malformed 'gaps'")
    return GapSet(_parse_points(obj["gaps"], "'gaps'"))


def interval_to_obj(qi: QuotInterval) -> dict:
    return {"lo": frac_str(qi.lo), "hi": frac_str(qi.hi), "decisions": qi.decisions}


def dumps(obj) -> str:
    """Deterministic JSON text: sorted keys, fixed separators, newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc
