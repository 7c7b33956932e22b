"""Torus-class parameters for the classical families.

Classes of maximal tori are labelled by cycle types: partitions of n for
Sym(n) (types A, 2A) and signed cycle types for the hyperoctahedral group
(types B, C, D, 2D). A signed cycle type is printed as ``(2)(3)(1-)``:
positive cycles first, each sign group sorted ascending, ``-`` marking a
negative cycle. In type D the classes whose cycles are all positive of even
length split in two; the second is written with a ``#2`` suffix.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .errors import BudgetError, ParameterError, UnsupportedError

CLASSICAL_FAMILIES = ("A", "2A", "B", "C", "D", "2D")
TWISTED = ("2A", "2D")

# Smallest n for which the family yields a finite simple group (PSL_n, PSU_n,
# PSp_2n', Omega_2n+1, POmega^+-_2n).
SIMPLE_MIN_N = {"A": 2, "2A": 3, "B": 3, "C": 2, "D": 4, "2D": 4}
# small (family, n, q) inside the rank range whose groups are not simple
NON_SIMPLE = {("A", 2, 2), ("A", 2, 3), ("2A", 3, 2)}
ORACLE_MAX_N = 7


def prime_power(q: int):
    """Return (p, k) with q = p**k, or raise ParameterError."""
    if not isinstance(q, int) or q < 2:
        raise ParameterError(f"q={q!r} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise ParameterError(f"q={q} is not a prime power")
    return p, k


@dataclass(frozen=True, order=True)
class SignedCycleType:
    positive: tuple = ()
    negative: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "positive", tuple(sorted(self.positive)))
        object.__setattr__(self, "negative", tuple(sorted(self.negative)))
        if any(not isinstance(k, int) or k < 1 for k in self.positive + self.negative):
            raise ParameterError(f"cycle lengths must be positive integers: {self}")

    @property
    def n(self):
        return sum(self.positive) + sum(self.negative)

    @property
    def cycles(self):
        """(length, sign) pairs in block order: positive cycles, then negative."""
        return [(k, 1) for k in self.positive] + [(k, -1) for k in self.negative]

    @property
    def splits_in_d(self):
        """Whether the W(B_n)-class splits into two W(D_n)-classes."""
        return not self.negative and bool(self.positive) and all(k % 2 == 0 for k in self.positive)

    def __str__(self):
        return "".join(f"({k})" for k in self.positive) + "".join(f"({k}-)" for k in self.negative)

    @classmethod
    def parse(cls, text: str) -> "SignedCycleType":
        text = text.strip()
        if not re.fullmatch(r"(\(\d+-?\))+", text):
            raise ParameterError(f"cannot parse cycle type {text!r}")
        pos, neg = [], []
        for length, minus in re.findall(r"\((\d+)(-?)\)", text):
            (neg if minus else pos).append(int(length))
        return cls(tuple(pos), tuple(neg))


def partitions(n, largest=None):
    """Partitions of n as ascending tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield tuple(sorted(rest + (first,)))


def signed_cycle_types(n):
    for s in range(n + 1):
        for pos in partitions(s):
            for neg in partitions(n - s):
                yield SignedCycleType(pos, neg)


@dataclass(frozen=True, order=True)
class TorusClassDescriptor:
    family: str
    n: int
    q: int
    cycle_type: SignedCycleType
    split_tag: int | None = None

    def __post_init__(self):
        if self.family not in CLASSICAL_FAMILIES:
            raise ParameterError(f"unknown classical family {self.family!r}")
        prime_power(self.q)
        t = self.cycle_type
        if t.n != self.n:
            raise ParameterError(f"cycle type {t} does not have size n={self.n}")
        if self.family in ("A", "2A") and t.negative:
            raise ParameterError("type A classes have no negative cycles")
        if self.family == "D" and len(t.negative) % 2:
            raise ParameterError("type D classes need an even number of negative cycles")
        if self.family == "2D" and len(t.negative) % 2 == 0:
            raise ParameterError("2D classes are labelled by w0*w, which has an odd number of negative cycles")
        if self.family == "D" and t.splits_in_d:
            if self.split_tag is None:
                object.__setattr__(self, "split_tag", 1)
            elif self.split_tag not in (1, 2):
                raise ParameterError("split tag must be 1 or 2")
        elif self.split_tag is not None:
            raise ParameterError(f"{t} does not split; no tag allowed")

    @property
    def p(self):
        return prime_power(self.q)[0]

    @property
    def twisted(self):
        return self.family in TWISTED

    @property
    def class_string(self):
        return str(self.cycle_type) + ("#2" if self.split_tag == 2 else "")

    def __str__(self):
        return f"{self.family} n={self.n} q={self.q} {self.class_string}"

    def to_json(self):
        return {"family": self.family, "n": self.n, "q": self.q, "class": self.class_string}


def parse_class(text: str):
    """Split a CLI class string into (SignedCycleType, split_tag)."""
    text = text.strip()
    tag = None
    if "#" in text:
        text, _, suffix = text.partition("#")
        if suffix not in ("1", "2"):
            raise ParameterError(f"bad split suffix #{suffix}")
        tag = int(suffix)
    return SignedCycleType.parse(text), tag


def make_descriptor(family, n, q, class_string, simple_filter=False):
    t, tag = parse_class(class_string)
    d = TorusClassDescriptor(family, n, q, t, tag)
    if simple_filter:
        check_simple_range(family, n, q)
    return d


def check_simple_range(family, n, q=None):
    if (family, n, q) in NON_SIMPLE:
        raise ParameterError(f"{family} with n={n}, q={q} is not simple; use the simple-filter override")
    if n < SIMPLE_MIN_N[family]:
        raise ParameterError(
            f"{family} with n={n} is outside the simple-group range (n >= {SIMPLE_MIN_N[family]}); "
            "use the simple-filter override for small-rank cases"
        )


def enumerate_torus_classes(family, n, q, simple_filter=True):
    if family not in CLASSICAL_FAMILIES:
        raise ParameterError(f"unknown classical family {family!r}")
    if simple_filter:
        check_simple_range(family, n, q)
    elif n < (2 if family in ("D", "2D") else 1):
        raise ParameterError(f"{family} needs n >= 2")
    prime_power(q)
    out = []
    if family in ("A", "2A"):
        for part in partitions(n):
            out.append(TorusClassDescriptor(family, n, q, SignedCycleType(part)))
    else:
        for t in signed_cycle_types(n):
            neg = len(t.negative)
            if family == "D" and neg % 2:
                continue
            if family == "2D" and neg % 2 == 0:
                continue
            if family == "D" and t.splits_in_d:
                out.append(TorusClassDescriptor(family, n, q, t, 1))
                out.append(TorusClassDescriptor(family, n, q, t, 2))
            else:
                out.append(TorusClassDescriptor(family, n, q, t))
    return sorted(out, key=_sort_key)


def in_simple_range(family, n, q):
    return n >= SIMPLE_MIN_N[family] and (family, n, q) not in NON_SIMPLE


def _sort_key(d):
    t = d.cycle_type
    return (len(t.negative), t.negative, t.positive, d.split_tag or 0)


# --- signed permutations -------------------------------------------------

@dataclass(frozen=True)
class SignedPermutation:
    """images[i-1] is the signed image of i; the image of -i is its negative."""

    images: tuple

    def __post_init__(self):
        if sorted(abs(x) for x in self.images) != list(range(1, len(self.images) + 1)):
            raise ParameterError(f"not a signed permutation: {self.images}")

    @property
    def n(self):
        return len(self.images)

    def __call__(self, i):
        v = self.images[abs(i) - 1]
        return v if i > 0 else -v

    def __mul__(self, other):
        # (self * other)(i) = self(other(i))
        return SignedPermutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def inverse(self):
        out = [0] * self.n
        for i, v in enumerate(self.images, start=1):
            out[abs(v) - 1] = i if v > 0 else -i
        return SignedPermutation(tuple(out))

    def cycle_type(self) -> SignedCycleType:
        return _cycle_type(self.images)

    def matrix_sign_pattern(self):
        """(column, row, sign) triples of the monomial matrix on e_1..e_n."""
        return [(i, abs(v), 1 if v > 0 else -1) for i, v in enumerate(self.images, start=1)]


def _cycle_type(images):
    n = len(images)
    seen = [False] * (n + 1)
    pos, neg = [], []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        length, cur = 0, start
        while True:
            seen[abs(cur)] = True
            v = images[abs(cur) - 1]
            cur = v if cur > 0 else -v
            length += 1
            if abs(cur) == start:
                break
        (pos if cur == start else neg).append(length)
    return SignedCycleType(tuple(pos), tuple(neg))


def standard_representative(t: SignedCycleType) -> SignedPermutation:
    """Consecutive blocks, positive cycles first; a negative cycle flips sign on wrap-around."""
    images = []
    start = 1
    for length, sign in t.cycles:
        for i in range(start, start + length - 1):
            images.append(i + 1)
        images.append(start if sign > 0 else -start)
        start += length
    return SignedPermutation(tuple(images))


# --- centralizer orders --------------------------------------------------

def _sym_centralizer(parts):
    return math.prod(j**m * math.factorial(m) for j, m in Counter(parts).items())


def _hyperoctahedral_centralizer(t: SignedCycleType):
    out = 1
    for parts in (t.positive, t.negative):
        for j, m in Counter(parts).items():
            out *= (2 * j) ** m * math.factorial(m)
    return out


def weyl_order(family, n):
    if family in ("A", "2A"):
        return math.factorial(n)
    if family in ("B", "C"):
        return 2**n * math.factorial(n)
    return 2 ** (n - 1) * math.factorial(n)


def centralizer_order(family, n, t: SignedCycleType, split_tag=None):
    """|C_W(w)| for w of type t; sigma-centralizer for twisted families."""
    if t.n != n:
        raise ParameterError(f"{t} is not a type of size {n}")
    if family == "A":
        return _sym_centralizer(t.positive)
    if family in ("B", "C"):
        return _hyperoctahedral_centralizer(t)
    if family == "D":
        c = _hyperoctahedral_centralizer(t)
        return c if t.splits_in_d else c // 2
    if family in TWISTED:
        if n > ORACLE_MAX_N:
            raise UnsupportedError(f"{family}: sigma-centralizer orders are oracle-only, n <= {ORACLE_MAX_N}")
        return brute_force_weyl_oracle(family, n)[(t, split_tag)][1]
    raise ParameterError(f"unknown classical family {family!r}")


# --- brute-force oracle --------------------------------------------------

def _compose(a, b):
    # a(b(i)) on tuples
    out = []
    for v in b:
        w = a[abs(v) - 1]
        out.append(w if v > 0 else -w)
    return tuple(out)


def _inverse(a):
    out = [0] * len(a)
    for i, v in enumerate(a, start=1):
        out[abs(v) - 1] = i if v > 0 else -i
    return tuple(out)


def _generators(family, n):
    gens = []
    for i in range(n - 1):
        g = list(range(1, n + 1))
        g[i], g[i + 1] = i + 2, i + 1
        gens.append(tuple(g))
    if family in ("B", "C") and n >= 1:
        g = list(range(1, n + 1))
        g[n - 1] = -n
        gens.append(tuple(g))
    if family in ("D", "2D") and n >= 2:
        g = list(range(1, n + 1))
        g[n - 2], g[n - 1] = -n, -(n - 1)
        gens.append(tuple(g))
    return gens


def _elements(family, n):
    import itertools

    for perm in itertools.permutations(range(1, n + 1)):
        if family in ("A", "2A"):
            yield perm
            continue
        for signs in itertools.product((1, -1), repeat=n):
            if family in ("D", "2D") and signs.count(-1) % 2:
                continue
            yield tuple(s * v for s, v in zip(signs, perm))


@lru_cache(maxsize=None)
def brute_force_weyl_oracle(family, n):
    """Enumerate W explicitly and return {(type, tag): (class size, centralizer order)}.

    For 2D the classes are sigma-conjugacy classes of W(D_n), sigma being
    conjugation by w0 = the sign change of n, keyed by the type of w0*w.
    """
    if family not in CLASSICAL_FAMILIES:
        raise ParameterError(f"unknown classical family {family!r}")
    if n > ORACLE_MAX_N:
        raise BudgetError(f"Weyl group oracle is limited to n <= {ORACLE_MAX_N}")
    gens = _generators(family, n)
    elements = list(_elements(family, n))
    order = len(elements)
    w0 = tuple(list(range(1, n)) + [-n])
    if family == "2D":
        # x . w = sigma(x)^-1 w x with sigma(x) = w0 x w0^-1
        actions = [(_compose(_compose(w0, _inverse(g)), w0), g) for g in gens]
    else:
        actions = [(_inverse(g), g) for g in gens]

    seen = set()
    result = {}
    for e in elements:
        if e in seen:
            continue
        orbit = {e}
        stack = [e]
        while stack:
            w = stack.pop()
            for left, right in actions:
                v = _compose(_compose(left, w), right)
                if v not in orbit:
                    orbit.add(v)
                    stack.append(v)
        seen |= orbit
        key_elt = _compose(w0, e) if family == "2D" else e
        t = _cycle_type(key_elt)
        if family == "D" and t.splits_in_d:
            rep = standard_representative(t).images
            tag = 1 if rep in orbit else 2
        else:
            tag = None
        if (t, tag) in result:
            raise AssertionError(f"two classes share the label {t} tag={tag}")
        result[(t, tag)] = (len(orbit), order // len(orbit))
    return result
