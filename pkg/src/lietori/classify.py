"""Closed-form degeneracy verdicts for torus classes.

Classical groups are decided by reading the cycle type; exceptional groups by
table lookup. A class is Degenerate exactly when N_G(S) is strictly larger
than the algebraic normaliser N(G,S).

Clause identifiers:
  A1    linear, q = 2, two 1-cycles
  U-b   unitary, q = 2, a 2-cycle (its two eigenvalues coincide)
  Sp-a  symplectic, q = 2, two positive 1-cycles
  Sp-b  symplectic, q = 2, a positive 2-cycle
  Sp-c  symplectic, q in {2, 3}, a positive 1-cycle
  Om-a  even-characteristic orthogonal, q = 2, two positive 1-cycles
  Om-b  even-characteristic orthogonal, q = 2, a positive 2-cycle
  SO-a, SO-b, SO-c  odd-characteristic orthogonal of small rank, q = 3
                    (only reachable with the simple-range filter off)
  EXC   exceptional table entry
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import exceptional as exc
from .errors import ParameterError
from .torus import algebraic_normaliser_order, torus_factor_orders
from .weylclass import (
    CLASSICAL_FAMILIES,
    TorusClassDescriptor,
    check_simple_range,
    in_simple_range,
    enumerate_torus_classes,
)

NONDEGENERATE = "Nondegenerate"
DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class DegeneracyVerdict:
    status: str
    clauses: tuple = ()
    witness_roots: tuple = ()

    def __post_init__(self):
        if (self.status == DEGENERATE) != bool(self.clauses) or bool(self.clauses) != bool(self.witness_roots):
            raise AssertionError(f"inconsistent verdict {self}")

    @property
    def degenerate(self):
        return self.status == DEGENERATE

    @classmethod
    def from_clauses(cls, hits):
        if not hits:
            return cls(NONDEGENERATE)
        return cls(DEGENERATE, tuple(c for c, _ in hits), tuple(dict.fromkeys(w for _, w in hits)))


def _two_cycle_offset(parts):
    """1-based start of the first 2-cycle among consecutive positive blocks."""
    j = 1
    for k in parts:
        if k == 2:
            return j
        j += k
    return None


def classify_classical(d: TorusClassDescriptor, simple_filter: bool = True) -> DegeneracyVerdict:
    return DegeneracyVerdict.from_clauses(classical_hits(d, simple_filter))


def classical_hits(d: TorusClassDescriptor, simple_filter: bool = False):
    """Triggered (clause, witness root) pairs, in clause order."""
    if d.family not in CLASSICAL_FAMILIES:
        raise ParameterError(f"{d.family} is not a classical family")
    if simple_filter:
        check_simple_range(d.family, d.n, d.q)
    t, q, p = d.cycle_type, d.q, d.p
    pos = t.positive
    ones = pos.count(1)
    hits = []
    if d.family == "A":
        if q == 2 and ones >= 2:
            hits.append(("A1", "a1-a2"))
    elif d.family == "2A":
        # lambda^(q^2-1) = 1 forces lambda^(-q) = lambda when q = 2
        if q == 2 and 2 in pos:
            j = _two_cycle_offset(pos)
            hits.append(("U-b", f"a{j}-a{j + 1}"))
    elif d.family == "C" or (d.family in ("D", "2D") and p == 2):
        tag = "Sp" if d.family == "C" else "Om"
        if q == 2 and ones >= 2:
            hits.append((f"{tag}-a", "a1-a2"))
        if q == 2 and 2 in pos:
            j = _two_cycle_offset(pos)
            hits.append((f"{tag}-b", f"a{j}+a{j + 1}"))
        if d.family == "C" and q in (2, 3) and ones >= 1:
            hits.append(("Sp-c", "2a1"))
    elif d.family == "B":
        if p == 2:
            raise ParameterError("type B in characteristic 2 coincides with type C; use family C")
        hits = _small_orthogonal_hits(t, q, short_roots=True)
    elif d.family == "D":
        hits = _small_orthogonal_hits(t, q, short_roots=False)
    # 2D in odd characteristic has no degenerate classes
    return hits


def _small_orthogonal_hits(t, q, short_roots):
    if q != 3 or t.negative:
        return []
    hits = []
    if t.positive == (1, 1):
        hits += [("SO-a", "a1-a2"), ("SO-b", "a1+a2")]
    elif t.positive == (2,):
        hits.append(("SO-b", "a1+a2"))
    elif t.positive == (1,) and short_roots:
        hits.append(("SO-c", "a1"))
    return hits


def classify_exceptional(group: str, label: str, q: int) -> DegeneracyVerdict:
    if exc.is_degenerate(group, label, q):
        return DegeneracyVerdict(DEGENERATE, ("EXC",), (f"tabulated:{group}:{exc.normalize_label(label)}",))
    return DegeneracyVerdict(NONDEGENERATE)


def verdict_record(d: TorusClassDescriptor, verdict: DegeneracyVerdict):
    """JSON-ready record for a classical verdict, fields in fixed order."""
    torus = torus_factor_orders(d)
    try:
        algebraic = algebraic_normaliser_order(d)
    except Exception:  # twisted families beyond the Weyl oracle
        algebraic = None
    return {
        "descriptor": d.to_json(),
        "status": verdict.status,
        "clauses": list(verdict.clauses),
        "witness_roots": list(verdict.witness_roots),
        "torus": torus.to_json(),
        "normaliser_orders": {"algebraic": algebraic},
    }


@dataclass
class Census:
    rows: list = field(default_factory=list)  # (key, verdict)

    @property
    def degenerate(self):
        return [(k, v) for k, v in self.rows if v.degenerate]

    @property
    def total(self):
        return len(self.rows)

    def counts_by(self, keyfunc):
        out = {}
        for k, v in self.degenerate:
            out[keyfunc(k)] = out.get(keyfunc(k), 0) + 1
        return out


def classical_census(family, n_range, q_range, simple_filter=True) -> Census:
    census = Census()
    for n in n_range:
        for q in q_range:
            if simple_filter and not in_simple_range(family, n, q):
                continue
            for d in enumerate_torus_classes(family, n, q, simple_filter):
                census.rows.append((d, classify_classical(d, simple_filter)))
    return census


def exceptional_census(groups=None, q_values=None) -> Census:
    """Rows keyed by (group, q, label); q defaults to every tabulated value."""
    census = Census()
    for group in groups or exc.EXCEPTIONAL_GROUPS:
        for q in q_values or exc.TABULATED_Q[group]:
            for label in exc.census_labels(group):
                census.rows.append(((group, q, label), classify_exceptional(group, label, q)))
    return census


def degenerate_census(family_or_group, n_range=None, q_range=None, simple_filter=True) -> Census:
    if family_or_group in CLASSICAL_FAMILIES:
        return classical_census(family_or_group, n_range, q_range, simple_filter)
    if family_or_group in ("exceptional", "all"):
        return exceptional_census(q_values=q_range)
    return exceptional_census([family_or_group], q_range)
