"""Form patterns: which one-forms are free, and how the fifteen slots tie to them.

A pattern maps every slot of the fifteen-term equation to a list of
``(parameter, coefficient)`` pairs.  Slots absent from the map are zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import PatternError
from .forms import FULL_NAMES, REDUCED_NAMES, REDUCED_SOURCE

B_FAMILY = ("B", "Bbar", "D", "Dbar")
BETA_FAMILY = ("beta", "betabar", "gamma", "gammabar")


@dataclass(frozen=True)
class Pattern:
    id: str
    label: str
    parameters: tuple[str, ...]
    slots: tuple[tuple[str, tuple[tuple[str, Fraction], ...]], ...]
    family: str = "full-15"  # FormFamily type of the particular solution

    def slot_map(self) -> dict[str, tuple[tuple[str, Fraction], ...]]:
        return dict(self.slots)


def _pattern(id, label, parameters, mapping, family="full-15") -> Pattern:
    slots = []
    for slot in FULL_NAMES:
        terms = mapping.get(slot)
        if terms:
            slots.append((slot, tuple((p, Fraction(c)) for p, c in terms)))
    return Pattern(id, label, tuple(parameters), tuple(slots), family)


def _tie(names, param, coef=1):
    return {s: [(param, coef)] for s in names}


def _build():
    out = {}

    def add(p):
        out[p.id] = p

    add(_pattern("full-15", "extended weakly symmetric (fifteen independent forms)", FULL_NAMES,
                 {s: [(s, 1)] for s in FULL_NAMES}))
    add(_pattern("reduced-9", "extended weakly symmetric (reduced nine forms)", REDUCED_NAMES,
                 {s: [(REDUCED_SOURCE[s], 1)] for s in FULL_NAMES}, family="reduced-9"))
    add(_pattern("i", "symmetric", (), {}))
    add(_pattern("ii", "recurrent", ("A",), {"A": [("A", 1)]}))
    add(_pattern("iii", "hyper generalized recurrent", ("A", "alpha"),
                 {"A": [("A", 1)], "alpha": [("alpha", 1)]}))
    add(_pattern("iv", "generalized recurrent", ("A", "theta"),
                 {"A": [("A", 1)], "theta": [("theta", 1)]}))
    add(_pattern("v", "pseudo symmetric", ("delta",),
                 {"A": [("delta", 2)], **_tie(B_FAMILY, "delta")}))
    add(_pattern("vi", "generalized pseudo symmetric", ("delta", "mu"),
                 {"A": [("delta", 2)], **_tie(B_FAMILY, "delta"),
                  "alpha": [("mu", 2)], **_tie(BETA_FAMILY, "mu")}))
    add(_pattern("vii", "semi-pseudo symmetric", ("delta",), _tie(B_FAMILY, "delta")))
    add(_pattern("viii", "generalized semi-pseudo symmetric", ("delta", "mu"),
                 {**_tie(B_FAMILY, "delta"), **_tie(BETA_FAMILY, "mu")}))
    add(_pattern("ix", "almost pseudo symmetric", ("E", "H"),
                 {"A": [("E", 1), ("H", 1)], **_tie(B_FAMILY, "H")}))
    add(_pattern("x", "almost generalized pseudo symmetric", ("E", "H", "lambda", "psi"),
                 {"A": [("E", 1), ("H", 1)], **_tie(B_FAMILY, "H"),
                  "alpha": [("lambda", 1), ("psi", 1)], **_tie(BETA_FAMILY, "lambda")}))
    add(_pattern("xi", "weakly symmetric", ("A", "B", "D"),
                 {"A": [("A", 1)], "B": [("B", 1)], "Bbar": [("B", 1)],
                  "D": [("D", 1)], "Dbar": [("D", 1)]}))
    add(_pattern("xii", "generalized weakly symmetric", ("A", "B", "D", "theta", "phi", "psi"),
                 {"A": [("A", 1)], "B": [("B", 1)], "Bbar": [("B", 1)],
                  "D": [("D", 1)], "Dbar": [("D", 1)], "theta": [("theta", 1)],
                  "phi": [("phi", 1)], "phibar": [("phi", 1)],
                  "psi": [("psi", 1)], "psibar": [("psi", 1)]}))
    add(_pattern("xiii", "hyper generalized semi-pseudo symmetric", ("delta", "mu"),
                 {**_tie(B_FAMILY, "delta"), **_tie(BETA_FAMILY, "mu")}))
    add(_pattern("xiv", "hyper generalized pseudo symmetric", ("delta", "mu"),
                 {"A": [("delta", 2)], **_tie(B_FAMILY, "delta"),
                  "alpha": [("mu", 2)], **_tie(BETA_FAMILY, "mu")}))
    add(_pattern("xvi", "almost hyper generalized pseudo symmetric", ("H1", "H2"),
                 {"A": [("H1", 2)], **_tie(B_FAMILY, "H1"),
                  "alpha": [("H2", 2)], **_tie(BETA_FAMILY, "H2")}))
    add(_pattern("xvii", "hyper generalized weakly symmetric", ("A", "B", "D", "alpha", "beta", "gamma"),
                 {"A": [("A", 1)], "B": [("B", 1)], "Bbar": [("B", 1)],
                  "D": [("D", 1)], "Dbar": [("D", 1)], "alpha": [("alpha", 1)],
                  "beta": [("beta", 1)], "betabar": [("beta", 1)],
                  "gamma": [("gamma", 1)], "gammabar": [("gamma", 1)]}))
    return out


PATTERNS = _build()

# (xv) is skipped by the published list
TAXONOMY = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x",
            "xi", "xii", "xiii", "xiv", "xv", "xvi", "xvii")
NOT_APPLICABLE = {"xv": "class (xv) is not listed"}

ALIASES = {p.label.replace(" ", "-"): k for k, p in PATTERNS.items()}


def get_pattern(pattern) -> Pattern:
    if isinstance(pattern, Pattern):
        return pattern
    key = str(pattern).strip().lower().strip("()")
    key = ALIASES.get(key, key)
    if key in NOT_APPLICABLE:
        raise PatternError(f"pattern {pattern!r}: {NOT_APPLICABLE[key]}")
    try:
        return PATTERNS[key]
    except KeyError:
        raise PatternError(f"unknown pattern {pattern!r}") from None
