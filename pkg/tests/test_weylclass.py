import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lietori.errors import ParameterError
from lietori.weylclass import (
    SignedCycleType,
    TorusClassDescriptor,
    brute_force_weyl_oracle,
    centralizer_order,
    enumerate_torus_classes,
    make_descriptor,
    parse_class,
    partitions,
    prime_power,
    signed_cycle_types,
    standard_representative,
    weyl_order,
)

PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22]

cycle_types = st.builds(
    SignedCycleType,
    st.lists(st.integers(1, 4), max_size=3).map(tuple),
    st.lists(st.integers(1, 4), max_size=3).map(tuple),
).filter(lambda t: t.n > 0)


@pytest.mark.parametrize("n", range(1, 9))
def test_partition_counts(n):
    parts = list(partitions(n))
    assert len(parts) == len(set(parts)) == PARTITION_COUNTS[n]
    assert all(sum(p) == n for p in parts)


@pytest.mark.parametrize("n", range(1, 7))
def test_signed_types_count(n):
    # number of bipartitions of n
    expect = sum(PARTITION_COUNTS[k] * PARTITION_COUNTS[n - k] for k in range(n + 1))
    assert len(list(signed_cycle_types(n))) == expect


@given(cycle_types)
def test_class_string_round_trip(t):
    assert SignedCycleType.parse(str(t)) == t


@given(cycle_types)
def test_standard_representative_has_its_type(t):
    assert standard_representative(t).cycle_type() == t


@given(cycle_types)
def test_representative_inverse(t):
    w = standard_representative(t)
    assert (w * w.inverse()).images == tuple(range(1, t.n + 1))


def test_canonical_order_and_split_suffix():
    t, tag = parse_class("(3)(1-)(2)")
    assert str(t) == "(2)(3)(1-)" and tag is None
    d = make_descriptor("D", 4, 3, "(2)(2)#2")
    assert d.split_tag == 2 and d.class_string == "(2)(2)#2"
    assert make_descriptor("D", 4, 3, "(2)(2)").split_tag == 1


@pytest.mark.parametrize("text", ["", "(0)", "(2", "2)(1)", "(a)", "(1)#3"])
def test_bad_class_strings(text):
    with pytest.raises(ParameterError):
        parse_class(text)


def test_descriptor_validation():
    with pytest.raises(ParameterError):
        make_descriptor("A", 3, 2, "(1)(1-)(1)")
    with pytest.raises(ParameterError):
        make_descriptor("D", 4, 2, "(1)(1)(1)(1-)")
    with pytest.raises(ParameterError):
        make_descriptor("2D", 4, 2, "(2)(2)")
    with pytest.raises(ParameterError):
        make_descriptor("C", 3, 6, "(3)")
    with pytest.raises(ParameterError):
        make_descriptor("C", 3, 2, "(1)(1)")
    with pytest.raises(ParameterError):
        make_descriptor("C", 2, 2, "(2)#2")
    with pytest.raises(ParameterError):
        enumerate_torus_classes("D", 3, 2)


def test_prime_power():
    assert prime_power(9) == (3, 2) and prime_power(2) == (2, 1) and prime_power(64) == (2, 6)
    for bad in (1, 6, 12, 0):
        with pytest.raises(ParameterError):
            prime_power(bad)


def test_d4_classes():
    ds = enumerate_torus_classes("D", 4, 3)
    assert len(ds) == 13
    assert len({d.cycle_type for d in ds}) == 11
    split = sorted(d.class_string for d in ds if d.split_tag)
    assert split == ["(2)(2)", "(2)(2)#2", "(4)", "(4)#2"]
    assert len(enumerate_torus_classes("2D", 4, 3)) == 9


def test_simple_range():
    assert len(enumerate_torus_classes("A", 1, 2, simple_filter=False)) == 1
    for fam, n, q in [("A", 1, 2), ("2A", 2, 3), ("C", 1, 3), ("D", 3, 5), ("A", 2, 2), ("A", 2, 3),
                      ("2A", 3, 2)]:
        with pytest.raises(ParameterError):
            enumerate_torus_classes(fam, n, q)
    assert enumerate_torus_classes("A", 2, 4)


@pytest.mark.parametrize("family,n", [("A", 3), ("A", 5), ("2A", 3), ("2A", 4), ("C", 2), ("C", 3),
                                      ("C", 4), ("B", 3), ("D", 4), ("D", 5), ("2D", 4), ("2D", 5)])
def test_oracle_matches_enumeration_and_formulas(family, n):
    oracle = brute_force_weyl_oracle(family, n)
    ds = enumerate_torus_classes(family, n, 3, simple_filter=False)
    assert {(d.cycle_type, d.split_tag) for d in ds} == set(oracle)
    assert sum(size for size, _ in oracle.values()) == weyl_order(family, n)
    for (t, tag), (size, cent) in oracle.items():
        assert size * cent == weyl_order(family, n)
        assert centralizer_order(family, n, t, tag) == cent


@pytest.mark.parametrize("family", ["A", "C", "D"])
@pytest.mark.parametrize("n", range(2, 8))
def test_class_equation_closed_form(family, n):
    if family == "D" and n < 3:
        return
    ds = enumerate_torus_classes(family, n, 3, simple_filter=False)
    w = weyl_order(family, n)
    total = sum(w // centralizer_order(family, n, d.cycle_type, d.split_tag) for d in ds)
    assert total == w


@pytest.mark.parametrize("family,n", [("2A", 5), ("2D", 6)])
def test_twisted_class_equation(family, n):
    oracle = brute_force_weyl_oracle(family, n)
    w = weyl_order(family, n)
    assert sum(w // c for _, c in oracle.values()) == w


def test_symmetric_centralizer_formula():
    t = SignedCycleType((1, 1, 2))
    assert centralizer_order("A", 4, t) == math.factorial(2) * 2
    assert centralizer_order("C", 2, SignedCycleType((), (1, 1))) == 8


def test_descriptor_ordering_is_total():
    ds = enumerate_torus_classes("C", 3, 2)
    assert sorted(ds) == sorted(reversed(ds))
    assert isinstance(ds[0], TorusClassDescriptor)
