"""Canonical textual/JSON forms for field elements and shuffle elements.

Term order is fixed (sorted exponent tuples), so serialized output is
byte-stable across runs and usable for golden tests.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .lpoly import LPoly
from .scalars import parse_ratq, ratq
from .shuffle import MINUS, PLUS, ShuffleElement, nvars_of


def ratq_to_str(x):
    return str(x)


def ratq_from_str(s):
    return parse_ratq(s)


def lpoly_to_obj(poly):
    return [[list(k), str(c)] for k, c in poly.sorted_terms()]


def lpoly_from_obj(obj, nvars):
    terms = {}
    for exps, cs in obj:
        terms[tuple(exps)] = parse_ratq(cs)
    return LPoly(nvars, {k: c for k, c in terms.items() if c})


def shuffle_to_obj(E):
    return {"side": "+" if E.side == PLUS else "-",
            "n": list(E.n),
            "terms": lpoly_to_obj(E.poly)}


def shuffle_from_obj(datum, obj):
    side = PLUS if obj["side"] == "+" else MINUS
    n = tuple(obj["n"])
    return ShuffleElement(datum, side, n,
                          lpoly_from_obj(obj["terms"], nvars_of(n)))


def word_from_obj(obj):
    return tuple((int(i), int(d)) for (i, d) in obj)


def slope_from_obj(obj):
    return tuple(Fraction(str(x)) for x in obj)


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=True)
