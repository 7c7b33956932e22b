"""Abstract structure of the finite maximal tori, read off the class descriptor.

A torus is a product of cyclic factors, one per cycle, together with the
constraint cutting out its intersection with O^{p'}: determinant one for the
linear and unitary groups, even exponent sum for odd-characteristic
orthogonal groups, nothing otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError
from .weylclass import TorusClassDescriptor, centralizer_order

NONE = "None"
DETERMINANT_ONE = "DeterminantOne"
EVEN_EXPONENT_SUM = "EvenExponentSum"


@dataclass(frozen=True)
class TorusStructure:
    factors: tuple  # ((order, sign), ...), sign in {+1, -1}
    constraint: str
    full_order: int
    intersected_order: int
    lengths: tuple = ()

    def to_json(self):
        return {
            "factors": [{"order": o, "sign": "+" if s > 0 else "-"} for o, s in self.factors],
            "constraint": self.constraint,
            "full_order": self.full_order,
            "intersected_order": self.intersected_order,
        }


def constraint_for(d: TorusClassDescriptor) -> str:
    fam = d.family
    if fam in ("A", "2A"):
        return DETERMINANT_ONE
    if fam == "B":
        if d.p == 2:
            raise ParameterError("type B in characteristic 2 coincides with type C; use family C")
        return EVEN_EXPONENT_SUM
    if fam == "C":
        return NONE
    return EVEN_EXPONENT_SUM if d.p != 2 else NONE


def factor_data(d: TorusClassDescriptor):
    """[(length, sign, order)] per cycle, in block order."""
    q = d.q
    out = []
    if d.family in ("A", "2A"):
        eps = 1 if d.family == "A" else -1
        for k in d.cycle_type.positive:
            out.append((k, eps, q**k - eps**k))
    else:
        for k, sign in d.cycle_type.cycles:
            out.append((k, sign, q**k - sign))
    return out


def _determinant_exponent(d, k):
    eps = 1 if d.family == "A" else -1
    return sum((eps * d.q) ** j for j in range(k))


def intersected_torus_order(d: TorusClassDescriptor) -> int:
    data = factor_data(d)
    full = math.prod(o for _, _, o in data)
    c = constraint_for(d)
    if c == NONE:
        return full
    if c == EVEN_EXPONENT_SUM:
        # the even-sum set is a proper (index 2) subgroup only if no factor has odd order
        return full // 2 if data and all(o % 2 == 0 for _, _, o in data) else full
    image = 1
    for k, _, o in data:
        e = _determinant_exponent(d, k)
        image = math.lcm(image, o // math.gcd(o, abs(e)))
    return full // image


def torus_factor_orders(d: TorusClassDescriptor) -> TorusStructure:
    data = factor_data(d)
    return TorusStructure(
        factors=tuple((o, s) for _, s, o in data),
        constraint=constraint_for(d),
        full_order=math.prod(o for _, _, o in data),
        intersected_order=intersected_torus_order(d),
        lengths=tuple(k for k, _, _ in data),
    )


def algebraic_normaliser_order(d: TorusClassDescriptor) -> int:
    """|N(G,S)| = |S| * |C_W(w)| (sigma-centralizer for twisted families)."""
    return intersected_torus_order(d) * centralizer_order(d.family, d.n, d.cycle_type, d.split_tag)
