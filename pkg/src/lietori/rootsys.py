"""Irreducible root systems in explicit ambient coordinates.

Coordinates are exact ``Fraction`` vectors in an orthonormal basis a_1..a_n.
Simple roots are kept in the fixed order used throughout the package, so
index i of ``simple`` is the i-th row of the Cartan matrix.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
import sympy

from .errors import ParameterError

FAMILIES = ("A", "B", "C", "D", "G2", "F4", "E6", "E7", "E8")
EXCEPTIONAL_RANK = {"G2": 2, "F4": 4, "E6": 6, "E7": 7, "E8": 8}

# |X / Z Sigma| for the simply connected group.
DELTA_TABLE = {"B": 2, "C": 2, "D": 4, "G2": 1, "F4": 1, "E6": 3, "E7": 2, "E8": 1}

# q > bound guarantees every maximal torus of the universal group is nondegenerate.
Q_BOUND = {"D": 5, "B": 4, "C": 4, "E6": 4, "G2": 3, "E7": 3, "A": 2, "F4": 2, "E8": 2}

Vector = tuple  # tuple[Fraction, ...]


@dataclass(frozen=True)
class RootSystemType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"unknown root system family {self.family!r}")
        if self.family in EXCEPTIONAL_RANK:
            if self.rank != EXCEPTIONAL_RANK[self.family]:
                raise ParameterError(f"{self.family} has rank {EXCEPTIONAL_RANK[self.family]}, not {self.rank}")
        else:
            least = {"A": 1, "B": 2, "C": 2, "D": 3}[self.family]
            if self.rank < least:
                raise ParameterError(f"{self.family}_{self.rank}: rank must be at least {least}")

    @classmethod
    def parse(cls, text: str) -> "RootSystemType":
        """Accept ``A3``, ``A_3``, ``E8``, ``G2`` and the like."""
        t = text.replace("_", "").strip().upper()
        if t in EXCEPTIONAL_RANK:
            return cls(t, EXCEPTIONAL_RANK[t])
        if len(t) < 2 or t[0] not in "ABCD" or not t[1:].isdigit():
            raise ParameterError(f"cannot parse root system type {text!r}")
        return cls(t[0], int(t[1:]))

    def __str__(self):
        return self.family if self.family in EXCEPTIONAL_RANK else f"{self.family}{self.rank}"


@dataclass(frozen=True)
class RootSystem:
    type: RootSystemType
    roots: tuple
    simple: tuple
    cartan: tuple
    weights: tuple
    delta: int

    @property
    def dim(self):
        return len(self.simple[0])

    @property
    def positive_roots(self):
        """Roots that are nonnegative combinations of the simple roots."""
        coeffs = simple_coordinates(self)
        return tuple(r for r, c in zip(self.roots, coeffs) if all(x >= 0 for x in c))

    def to_json(self):
        fmt = lambda v: [str(x) for x in v]
        return {
            "type": str(self.type),
            "rank": self.type.rank,
            "roots": [fmt(r) for r in self.roots],
            "simple": [fmt(r) for r in self.simple],
            "cartan": [list(row) for row in self.cartan],
            "delta": self.delta,
        }


def _vec(*xs):
    return tuple(Fraction(x) for x in xs)


def _unit(n, i, scale=1):
    v = [Fraction(0)] * n
    v[i] = Fraction(scale)
    return tuple(v)


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _scale(c, v):
    return tuple(c * a for a in v)


def _neg(v):
    return tuple(-a for a in v)


def inner(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _pm_pairs(n, with_minus_diff=True):
    """All +-a_i +- a_j with i < j."""
    out = []
    for i, j in itertools.combinations(range(n), 2):
        for si, sj in itertools.product((1, -1), repeat=2):
            v = [Fraction(0)] * n
            v[i], v[j] = Fraction(si), Fraction(sj)
            out.append(tuple(v))
    return out


def _half_spinors(n, parity=None):
    out = []
    for signs in itertools.product((1, -1), repeat=n):
        if parity is not None and math.prod(signs) != parity:
            continue
        out.append(tuple(Fraction(s, 2) for s in signs))
    return out


def _e8_roots():
    return _pm_pairs(8) + _half_spinors(8, parity=1)


def _e8_simple():
    a = lambda i: _unit(8, i - 1)
    spin = _vec(*(Fraction(s, 2) for s in (1, -1, -1, -1, -1, -1, -1, 1)))
    return [spin, _add(a(7), _neg(a(8))), _add(a(6), _neg(a(7))), _add(a(7), a(8)),
            _add(a(5), _neg(a(6))), _add(a(4), _neg(a(5))), _add(a(3), _neg(a(4))),
            _add(a(2), _neg(a(3)))]


def _roots_and_simple(t: RootSystemType):
    fam, l = t.family, t.rank
    if fam == "A":
        n = l + 1
        roots = [_add(_unit(n, i), _unit(n, j, -1)) for i in range(n) for j in range(n) if i != j]
        simple = [_add(_unit(n, i), _unit(n, i + 1, -1)) for i in range(l)]
    elif fam in ("B", "C", "D"):
        n = l
        roots = _pm_pairs(n)
        chain = [_add(_unit(n, i), _unit(n, i + 1, -1)) for i in range(n - 1)]
        if fam == "B":
            roots += [_unit(n, i, s) for i in range(n) for s in (1, -1)]
            simple = chain + [_unit(n, n - 1)]
        elif fam == "C":
            roots += [_unit(n, i, 2 * s) for i in range(n) for s in (1, -1)]
            simple = chain + [_unit(n, n - 1, 2)]
        else:
            simple = chain + [_add(_unit(n, n - 2), _unit(n, n - 1))]
    elif fam == "G2":
        a, b = _vec(0, 1, -1), _vec(1, -2, 1)
        pos = [a, b, _add(a, b), _add(_scale(2, a), b), _add(_scale(3, a), b),
               _add(_scale(3, a), _scale(2, b))]
        roots = pos + [_neg(r) for r in pos]
        simple = [a, b]
    elif fam == "F4":
        roots = _pm_pairs(4) + [_unit(4, i, s) for i in range(4) for s in (1, -1)] + _half_spinors(4)
        half = _vec(*(Fraction(s, 2) for s in (1, -1, -1, -1)))
        simple = [_add(_unit(4, 1), _unit(4, 2, -1)), _add(_unit(4, 2), _unit(4, 3, -1)),
                  _unit(4, 3), half]
    else:
        roots = _e8_roots()
        simple = _e8_simple()
        if fam in ("E7", "E6"):
            perp = _add(_unit(8, 0), _unit(8, 1))
            roots = [r for r in roots if inner(r, perp) == 0]
            simple = [s for s in simple if s != _add(_unit(8, 1), _unit(8, 2, -1))]
        if fam == "E6":
            perp = _add(_unit(8, 1), _unit(8, 2, -1))
            roots = [r for r in roots if inner(r, perp) == 0]
            simple = [s for s in simple if s != _add(_unit(8, 2), _unit(8, 3, -1))]
    return tuple(roots), tuple(simple)


def cartan_pairing(alpha, beta) -> int:
    """The Cartan integer <alpha, beta> = 2(alpha, beta) / (beta, beta)."""
    bb = inner(beta, beta)
    if bb == 0:
        raise ArithmeticError("pairing against a zero vector")
    value = 2 * inner(alpha, beta) / bb
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral Cartan pairing {value}")
    return int(value)


def expected_root_count(t: RootSystemType) -> int:
    l = t.rank
    return {
        "A": l * (l + 1), "B": 2 * l * l, "C": 2 * l * l, "D": 2 * l * (l - 1),
        "G2": 12, "F4": 48, "E6": 72, "E7": 126, "E8": 240,
    }[t.family]


def expected_delta(t: RootSystemType) -> int:
    return t.rank + 1 if t.family == "A" else DELTA_TABLE[t.family]


@lru_cache(maxsize=None)
def build_root_system(t: RootSystemType) -> RootSystem:
    roots, simple = _roots_and_simple(t)
    if len(roots) != expected_root_count(t):
        raise AssertionError(f"{t}: built {len(roots)} roots, expected {expected_root_count(t)}")
    cartan = tuple(tuple(cartan_pairing(a, b) for b in simple) for a in simple)
    A = sympy.Matrix(cartan)
    inv = A.inv()
    # lambda_j = sum_i (A^-1)_{ji} alpha_i, so that (lambda_j, alpha_k^vee) = delta_jk
    weights = []
    for j in range(t.rank):
        w = tuple(Fraction(0) for _ in simple[0])
        for i in range(t.rank):
            c = Fraction(int(inv[j, i].p), int(inv[j, i].q))
            w = _add(w, _scale(c, simple[i]))
        weights.append(w)
    return RootSystem(t, roots, simple, cartan, tuple(weights), int(A.det()))


def simple_coordinates(rs: RootSystem):
    """Express each root in the basis of simple roots (integer coefficients)."""
    l = rs.type.rank
    gram = sympy.Matrix([[inner(a, b) for b in rs.simple] for a in rs.simple])
    ginv = gram.inv()
    out = []
    for r in rs.roots:
        rhs = sympy.Matrix([inner(r, s) for s in rs.simple])
        c = ginv * rhs
        out.append(tuple(int(c[i]) for i in range(l)))
    return out


def _min_quadratic(gram, bound):
    """Minimum of c^T G c over nonzero integer c with entries in [-bound, bound].

    ``gram`` is an integer matrix. The search is chunked on the first coordinate
    to keep memory bounded.
    """
    l = gram.shape[0]
    rng = np.arange(-bound, bound + 1, dtype=np.int64)
    combos = list(itertools.product(rng, repeat=l - 1))
    rest = np.array(combos, dtype=np.int64).reshape(len(combos), l - 1)
    best = None
    for c0 in rng:
        c = np.concatenate([np.full((rest.shape[0], 1), c0, dtype=np.int64), rest], axis=1)
        vals = np.einsum("ij,jk,ik->i", c, gram, c)
        if c0 == 0:
            vals = vals[np.any(c != 0, axis=1)]
            if not len(vals):
                continue
        m = int(vals.min())
        best = m if best is None else min(best, m)
    return best


def _scaled_gram(vectors):
    gram = [[inner(u, v) for v in vectors] for u in vectors]
    den = math.lcm(*(x.denominator for row in gram for x in row))
    return np.array([[int(x * den) for x in row] for row in gram], dtype=np.int64), den


@lru_cache(maxsize=None)
def weight_lattice_min_norm(t: RootSystemType) -> Fraction:
    """Minimal squared Euclidean norm of a nonzero lattice vector.

    For type A this is taken over the weight lattice X; otherwise over the root
    lattice.
    """
    rs = build_root_system(t)
    if t.family == "A":
        gram, den = _scaled_gram(rs.weights)
        return Fraction(_min_quadratic(gram, 2), den)
    gram, den = _scaled_gram(rs.simple)
    return Fraction(_min_quadratic(gram, 3), den)


def q_bound(t: RootSystemType | str) -> int:
    family = t.family if isinstance(t, RootSystemType) else t
    if family not in Q_BOUND:
        raise ParameterError(f"unknown family {family!r}")
    return Q_BOUND[family]


def format_root(v) -> str:
    """Render a vector as a combination of the a_i, e.g. ``a1-a2`` or ``2a1``."""
    parts = []
    for i, c in enumerate(v, start=1):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        coef = "" if mag == 1 else str(mag)
        parts.append(f"{sign}{coef}a{i}")
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s
