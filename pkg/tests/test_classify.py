import pytest

from lietori import exceptional as exc
from lietori.classify import (
    DEGENERATE,
    DegeneracyVerdict,
    classical_census,
    classify_classical,
    classify_exceptional,
    exceptional_census,
    verdict_record,
)
from lietori.errors import ParameterError
from lietori.rootsys import q_bound
from lietori.weylclass import enumerate_torus_classes, make_descriptor


def verdict(family, n, q, cls):
    return classify_classical(make_descriptor(family, n, q, cls))


def test_symplectic_clauses():
    v = verdict("C", 3, 2, "(1)(2)")
    assert v.status == DEGENERATE and v.clauses == ("Sp-b", "Sp-c")
    assert v.witness_roots == ("a2+a3", "2a1")
    v = verdict("C", 2, 2, "(1)(1)")
    assert v.clauses == ("Sp-a", "Sp-c") and v.witness_roots == ("a1-a2", "2a1")
    assert verdict("C", 2, 3, "(1)(1-)").clauses == ("Sp-c",)
    assert not verdict("C", 2, 4, "(1)(1)").degenerate
    assert not verdict("C", 3, 2, "(3)").degenerate


def test_linear_clauses():
    assert verdict("A", 4, 2, "(1)(1)(2)").clauses == ("A1",)
    assert not verdict("A", 3, 3, "(1)(1)(1)").degenerate
    assert not verdict("A", 4, 2, "(1)(3)").degenerate


def test_unitary_two_cycle():
    v = verdict("2A", 4, 2, "(1)(1)(2)")
    assert v.clauses == ("U-b",) and v.witness_roots == ("a3-a4",)
    assert verdict("2A", 5, 2, "(1)(2)(2)").witness_roots == ("a2-a3",)
    assert not verdict("2A", 4, 2, "(1)(1)(1)(1)").degenerate
    assert not verdict("2A", 4, 3, "(2)(2)").degenerate


def test_even_orthogonal():
    v = verdict("D", 4, 2, "(1)(1)(2)")
    assert v.clauses == ("Om-a", "Om-b") and v.witness_roots == ("a1-a2", "a3+a4")
    assert verdict("2D", 4, 2, "(2)(1)(1-)").clauses == ("Om-b",)
    assert not verdict("D", 4, 4, "(1)(1)(2)").degenerate
    assert not verdict("D", 4, 3, "(1)(1)(1)(1)").degenerate
    assert not verdict("2D", 5, 3, "(1)(1)(1)(1)(1-)").degenerate


def test_small_orthogonal_needs_override():
    d = make_descriptor("D", 2, 3, "(1)(1)")
    with pytest.raises(ParameterError):
        classify_classical(d)
    assert classify_classical(d, simple_filter=False).clauses == ("SO-a", "SO-b")
    assert classify_classical(make_descriptor("B", 1, 3, "(1)"), simple_filter=False).clauses == ("SO-c",)


def test_c3_census():
    census = classical_census("C", [3], [2])
    assert (len(census.degenerate), census.total) == (6, 10)


def test_verdict_consistency_guard():
    with pytest.raises(AssertionError):
        DegeneracyVerdict(DEGENERATE)
    with pytest.raises(AssertionError):
        DegeneracyVerdict("Nondegenerate", ("A1",), ("a1-a2",))


def test_record_fields():
    rec = verdict_record(make_descriptor("C", 3, 2, "(1)(2)"), verdict("C", 3, 2, "(1)(2)"))
    assert list(rec) == ["descriptor", "status", "clauses", "witness_roots", "torus", "normaliser_orders"]
    assert rec["normaliser_orders"]["algebraic"] == 3 * 8


FAMILY_TYPE = {"A": "A", "2A": "A", "B": "B", "C": "C", "D": "D", "2D": "D"}


@pytest.mark.parametrize("family", ["A", "2A", "B", "C", "D", "2D"])
def test_q_bound_property(family):
    m = q_bound(FAMILY_TYPE[family])
    for q in [q for q in (2, 3, 4, 5, 7, 8, 9) if q > m]:
        if family == "B" and q % 2 == 0:
            continue
        for n in range(1, 9):
            rank = n - 1 if family in ("A", "2A") else n
            if rank < 1 or (family in ("D", "2D") and n < 2):
                continue
            for d in enumerate_torus_classes(family, n, q, simple_filter=False):
                assert not classify_classical(d, simple_filter=False).degenerate, d


# --- exceptional tables ---

def test_exceptional_counts():
    census = exceptional_census()
    by_group = census.counts_by(lambda key: key[0])
    assert {g: by_group.get(g, 0) for g in exc.EXCEPTIONAL_GROUPS} == exc.EXPECTED_COUNTS
    assert len(census.degenerate) == 130
    assert all(key[1] == 2 for key, _ in census.degenerate)


def test_exceptional_lookup():
    v = classify_exceptional("F4", "A1 × Ã1", 2)
    assert v.degenerate and v.witness_roots == ("tabulated:F4:A1x~A1",)
    assert not classify_exceptional("F4", "A1x~A1", 3).degenerate
    assert not classify_exceptional("G2", "G2", 2).degenerate
    assert classify_exceptional("E7", "(A1^3)''", 2).degenerate
    assert not classify_exceptional("E7", "E7", 2).degenerate
    assert classify_exceptional("3D4", "(C3)*", 2).degenerate
    assert not classify_exceptional("2B2", "rho", 8).degenerate


@pytest.mark.parametrize("group,label,q", [("G2", "E6", 2), ("E7", "A9", 2), ("E8", "D3", 2),
                                           ("2B2", "rho", 2), ("2B2", "rho", 32 * 2), ("X1", "A1", 2)])
def test_exceptional_errors(group, label, q):
    with pytest.raises(ParameterError):
        classify_exceptional(group, label, q)


def test_label_normalisation():
    assert exc.normalize_label("A_1 × Ã_1") == "A1x~A1"
    assert exc.normalize_label("Ã_2") == "~A2"
    assert exc.normalize_label("∅") == "empty"
    for group, labels in exc.DEGENERATE_AT_2.items():
        assert len(labels) == len(set(labels)) == exc.EXPECTED_COUNTS[group]
        assert all(exc.is_valid_label(group, l) for l in labels)
