import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lietori import gfmat as gm
from lietori.errors import BudgetError, ParameterError

QS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 64, 81, 1024]


@st.composite
def field_and_elements(draw, count=3):
    q = draw(st.sampled_from(QS))
    F = gm.field(q)
    return F, [draw(st.integers(0, q - 1)) for _ in range(count)]


@settings(max_examples=300)
@given(field_and_elements())
def test_field_axioms(case):
    F, (a, b, c) = case
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, F.order) == 1


@settings(max_examples=100)
@given(field_and_elements(count=1))
def test_frobenius_is_additive_and_fixes_prime_field(case):
    F, (a,) = case
    b = (a * 7 + 3) % F.q
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
    assert F.pow(a, F.q) == a
    c = a % F.p  # prime-subfield elements are the integers below p
    assert F.frobenius(c) == c


@pytest.mark.parametrize("q", QS)
def test_primitive_element(q):
    F = gm.field(q)
    g = F.primitive_element()
    assert F.mult_order(g) == q - 1
    assert sorted(F.pow(g, i) for i in range(q - 1)) == list(range(1, q))
    for d in (1, q - 1):
        assert F.mult_order(F.element_of_order(d)) == d
    with pytest.raises(ParameterError):
        F.element_of_order(q)


def test_field_cap():
    with pytest.raises(BudgetError):
        gm.field(2**17)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 4, 9]), st.integers(2, 4), st.randoms(use_true_random=False))
def test_matrix_inverse_and_det(q, n, rnd):
    F = gm.field(q)
    A = np.array([[rnd.randrange(q) for _ in range(n)] for _ in range(n)])
    B = np.array([[rnd.randrange(q) for _ in range(n)] for _ in range(n)])
    assert gm.det(F, gm.mat_mul(F, A, B)) == F.mul(gm.det(F, A), gm.det(F, B))
    if gm.det(F, A):
        assert np.array_equal(gm.mat_mul(F, A, gm.mat_inv(F, A)), gm.identity(n))
        assert gm.rank(F, A) == n
    else:
        with pytest.raises(ZeroDivisionError):
            gm.mat_inv(F, A)


def test_batched_product():
    F = gm.field(4)
    rng = np.random.default_rng(0)
    A = rng.integers(0, 4, (5, 3, 3))
    B = rng.integers(0, 4, (5, 3, 3))
    batch = gm.mat_mul(F, A, B)
    for i in range(5):
        assert np.array_equal(batch[i], gm.mat_mul(F, A[i], B[i]))


@pytest.mark.parametrize("build,args,order", [
    (gm.special_linear, (3, 2), 168),
    (gm.special_linear, (2, 4), 60),
    (gm.special_linear, (2, 9), 720),
    (gm.special_linear, (4, 2), 20160),
    (gm.symplectic, (2, 2), 720),
    (gm.symplectic, (2, 3), 51840),
    (gm.omega_plus_char2, (3, 2), 20160),
])
def test_group_orders(build, args, order):
    G = gm.enumerate_group(build(*args))
    assert G.order == order


def test_derived_sp4_2():
    spec = gm.symplectic(2, 2)
    G = gm.enumerate_group(spec)
    D = gm.derived_subgroup(G, spec.generators)
    assert D.order == 360


def test_membership_predicates():
    spec = gm.symplectic(2, 3)
    F = spec.field
    assert spec.contains(gm.symplectic_root_element(F, 2, "i-j", 0, 1))
    assert not spec.contains(gm.elementary(4, 0, 1))
    om = gm.omega_plus_char2(2, 2)
    swap = np.array([[0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1]])
    # a reflection preserves Q but has odd Dickson parity
    assert not om.contains(swap)


def test_budget_enforced(monkeypatch):
    with pytest.raises(BudgetError):
        gm.enumerate_group(gm.symplectic(2, 3), budget=1000)
    monkeypatch.setenv("TORI_BUDGET", "500")
    assert gm.default_budget() == 500
    with pytest.raises(BudgetError):
        gm.closure(gm.field(2), gm.special_linear(4, 2).generators)


def test_normalisers_in_sl3_2():
    G = gm.enumerate_group(gm.special_linear(3, 2))
    assert gm.subgroup_normalizer_order(G, [gm.identity(3)]) == 168
    diag_algebra = [np.diag(v) for v in np.eye(3, dtype=np.int64)]
    # stabiliser of the diagonal algebra: the monomial matrices
    assert gm.algebra_normalizer_order(G, diag_algebra) == 6


def test_hex_rendering():
    F = gm.field(16)
    assert gm.matrix_hex(F, gm.identity(2)) == ["1 0", "0 1"]
