"""Degenerate torus classes of the exceptional groups, as lookup tables.

Labels are admissible-diagram names treated as opaque strings. They are
stored in a canonical ASCII spelling: underscores dropped, ``x`` for the
product, ``~`` before a short-root component, ``empty`` for the trivial
class, e.g. ``A1^2``, ``A1x~A1``, ``D4(a1)``, ``(A3xA1)'``, ``(~A2)*``.
For 2E6 a label names the class of w0*w rather than of w.
"""

from __future__ import annotations

import re

from .errors import ParameterError
from .weylclass import prime_power

EXCEPTIONAL_GROUPS = ("G2", "F4", "E6", "E7", "E8", "2E6", "3D4", "2B2")

# Groups whose q is small enough to admit degenerate tori. Larger q is
# settled by the q-bound argument and needs no table.
TABULATED_Q = {
    "G2": (2, 3), "F4": (2,), "E6": (2, 3, 4), "E7": (2, 3), "E8": (2,),
    "2B2": (8,), "2E6": (2, 3, 4), "3D4": (2, 3, 4, 5),
}

DEGENERATE_AT_2 = {
    "G2": ["empty", "A1", "~A1"],
    "F4": ["empty", "A1", "~A1", "A1^2", "A1x~A1", "A2", "~A2", "B2", "A1^3", "A1^2x~A1",
           "A3", "B2xA1", "C3", "B3"],
    "E6": ["empty", "A1", "A1^2", "A2", "A1^3", "A2xA1", "A3", "A2^2", "A3xA1", "A4", "A5"],
    "E7": ["empty", "A1", "A1^2", "A2", "(A1^3)'", "(A1^3)''", "A2xA1", "A3", "(A1^4)'",
           "(A1^4)''", "A2xA1^2", "A2^2", "(A3xA1)'", "(A3xA1)''", "A4", "D4", "D4(a1)", "A1^5",
           "(A3xA1^2)'", "(A3xA1^2)''", "A3xA2", "(A5)'", "(A5)''", "D4xA1", "D4(a1)xA1", "D5",
           "D5(a1)", "A1^6", "A3^2", "D4xA1^2", "D6", "D6(a1)", "D6(a2)"],
    "E8": ["empty", "A1", "A1^2", "A2", "A1^3", "A2xA1", "A3", "(A1^4)'", "(A1^4)''", "A2xA1^2",
           "A2^2", "A3xA1", "A4", "D4", "D4(a1)", "A1^5", "A2xA1^3", "A2^2xA1", "(A3xA1^2)'",
           "(A3xA1^2)''", "A3xA2", "A4xA1", "A5", "D4xA1", "D4(a1)xA1", "D5", "D5(a1)", "A1^6",
           "A2^2xA1^2", "A2^3", "A3xA1^3", "A3xA2xA1", "(A3^2)'", "A4xA2", "(A5xA1)'",
           "(A5xA1)''", "A6", "D4xA1^2", "D5xA1", "D5(a1)xA1", "D6", "D6(a1)", "D6(a2)", "E6",
           "E6(a1)", "E6(a2)", "A1^7", "A3^2xA1", "D4xA1^3", "D6xA1", "D6(a2)xA1", "E7",
           "E7(a1)", "E7(a2)", "E7(a3)", "D4^2"],
    "2E6": ["A1", "A1^2", "A1^3", "A2xA1", "A1^4", "A2xA1^2", "A3xA1", "A4", "A2^2xA1",
            "A3xA1^2", "A5xA1"],
    "3D4": ["(~A2)*", "(C3)*"],
    "2B2": [],
}

EXPECTED_COUNTS = {"G2": 3, "F4": 14, "E6": 11, "E7": 33, "E8": 56, "2E6": 11, "3D4": 2, "2B2": 0}

_E6_CLASSES = ["empty", "A1", "A1^2", "A2", "A1^3", "A2xA1", "A3", "A1^4", "A2xA1^2", "A2^2",
               "A3xA1", "A4", "D4", "D4(a1)", "A2^2xA1", "A3xA1^2", "A4xA1", "A5", "D5",
               "D5(a1)", "A2^3", "A5xA1", "E6", "E6(a1)", "E6(a2)"]

# Explicit class lists where shipped; E7 and E8 are validated by grammar only.
LABEL_UNIVERSE = {
    "G2": ["empty", "A1", "~A1", "A1x~A1", "A2", "G2"],
    "F4": ["empty", "A1", "~A1", "A1^2", "A1x~A1", "A2", "~A2", "B2", "A1^3", "A1^2x~A1",
           "A2x~A1", "~A2xA1", "A3", "B2xA1", "A1^4", "D4", "D4(a1)", "C3", "B3", "A2x~A2",
           "A3x~A1", "C3xA1", "B4", "F4", "F4(a1)"],
    "E6": _E6_CLASSES,
    "2E6": _E6_CLASSES,
    "3D4": ["(~A2)*", "(C3)*", "(~A2xA1)*", "(A2x~A2)*", "(C3xA1)*", "(F4)*", "(F4(a1))*"],
    "2B2": ["rho", "rho*wa", "rho*(wa*wb)*wa"],
}

GROUP_RANK = {"E7": 7, "E8": 8}

_COMPONENT = re.compile(r"([ADE])(\d+)(\(a\d+\))?(\^(\d+))?")


def normalize_label(text: str) -> str:
    s = text.strip()
    for old, new in (("×", "x"), ("Ã", "~A"), ("A\u0303", "~A"), ("B\u0303", "~B"), ("C\u0303", "~C"), ("∅", "empty"), ("_", ""),
                     (" ", ""), ("\\times", "x"), ("’", "'")):
        s = s.replace(old, new)
    return s or "empty"


def _grammar_rank(label: str):
    """Total rank of a simply-laced admissible-diagram label, or None if it does not parse."""
    if label == "empty":
        return 0
    body = label
    m = re.fullmatch(r"\((.*)\)('{1,2})", body)
    if m:
        body = m.group(1)
    total = 0
    for comp in body.split("x"):
        cm = _COMPONENT.fullmatch(comp)
        if not cm:
            return None
        kind, k = cm.group(1), int(cm.group(2))
        if (kind == "D" and k < 4) or (kind == "E" and k not in (6, 7, 8)) or k < 1:
            return None
        total += k * int(cm.group(5) or 1)
    return total


def label_universe(group: str):
    """Shipped class labels for the group, or None when only grammar is checked."""
    _check_group(group)
    return LABEL_UNIVERSE.get(group)


def is_valid_label(group: str, label: str) -> bool:
    label = normalize_label(label)
    universe = label_universe(group)
    if universe is not None:
        return label in universe
    r = _grammar_rank(label)
    return r is not None and r <= GROUP_RANK[group]


def _check_group(group):
    if group not in EXCEPTIONAL_GROUPS:
        raise ParameterError(f"unknown exceptional group {group!r}")


def check_q(group: str, q: int):
    p, k = prime_power(q)
    if group == "2B2" and (p != 2 or k % 2 == 0 or k < 3):
        raise ParameterError("2B2 needs q = 2^(2a+1) with a >= 1")


def census_labels(group: str):
    """Labels iterated by the census: the class list when shipped, else the table."""
    universe = label_universe(group)
    return list(universe) if universe is not None else list(DEGENERATE_AT_2[group])


def is_degenerate(group: str, label: str, q: int) -> bool:
    _check_group(group)
    check_q(group, q)
    label = normalize_label(label)
    if not is_valid_label(group, label):
        raise ParameterError(f"{label!r} is not a class label for {group}")
    return q == 2 and label in DEGENERATE_AT_2[group]
