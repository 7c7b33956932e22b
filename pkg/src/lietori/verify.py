"""Matrix-level oracle for the classifier.

Tori are realized as explicit diagonal matrices over an extension field,
root vanishing is read off their diagonal entries, witness root elements are
checked as matrices, and in small groups the normaliser is counted outright.
Nothing here consults the closed-form verdicts except to pick which witness
to build.

Matrix coordinates are ordered 1..n, -1..-n, with a leading 0 for type B.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import gfmat as gm
from .classify import _two_cycle_offset, classical_hits, classify_classical
from .errors import BudgetError, ParameterError, UnsupportedError, VerificationFailure
from .rootsys import format_root
from .torus import (
    DETERMINANT_ONE,
    EVEN_EXPONENT_SUM,
    algebraic_normaliser_order,
    factor_data,
    intersected_torus_order,
    torus_factor_orders,
)
from .weylclass import TorusClassDescriptor, standard_representative

MAX_MATRIX = 64


# --- torus realization ---------------------------------------------------

@dataclass
class TorusRealization:
    descriptor: TorusClassDescriptor
    ambient_field: gm.GF
    generators: list
    intersected_generators: list
    modulus: int = 0  # multiplicative order of the ambient field

    def logs(self, mats):
        """Discrete logs of the first n diagonal entries (the h_i)."""
        F, d = self.ambient_field, self.descriptor
        off = 1 if d.family == "B" else 0
        return np.array([[F.log_of(m[off + i, off + i]) for i in range(d.n)] for m in mats],
                        dtype=np.int64).reshape(len(mats), d.n)


def matrix_size(d: TorusClassDescriptor):
    if d.family in ("A", "2A"):
        return d.n
    return 2 * d.n + (1 if d.family == "B" else 0)


def ambient_degree(d: TorusClassDescriptor):
    """Least L with every factor order dividing q^L - 1, within the field cap."""
    orders = [o for _, _, o in factor_data(d)]
    L = 1
    while d.q**L <= gm.MAX_FIELD:
        if all((d.q**L - 1) % o == 0 for o in orders):
            return L
        L += 1
    raise BudgetError(f"{d}: torus eigenvalues need a field larger than GF({gm.MAX_FIELD})")


def _diag(F, d, logs):
    """Torus matrix whose h_i have the given logs."""
    vals = [F.exp_of(int(e)) for e in logs]
    if d.family in ("A", "2A"):
        entries = vals
    else:
        entries = vals + [F.exp_of(-int(e)) for e in logs]
        if d.family == "B":
            entries = [1] + entries
    return np.diag(np.array(entries, dtype=np.int64))


def realize_torus(d: TorusClassDescriptor) -> TorusRealization:
    size = matrix_size(d)
    if size > MAX_MATRIX:
        raise BudgetError(f"{d}: matrix size {size} exceeds {MAX_MATRIX}")
    L = ambient_degree(d)
    F = gm.field(d.q**L)
    N = F.order
    eps = -1 if d.family == "2A" else 1
    gen_logs = []
    start = 0
    for k, _, order in factor_data(d):
        lam = F.element_of_order(order)
        base = F.log_of(lam)
        logs = [0] * d.n
        for j in range(k):
            logs[start + j] = base * (eps * d.q) ** j % N
        gen_logs.append(logs)
        start += k
    gens = [_diag(F, d, e) for e in gen_logs]
    R = TorusRealization(d, F, gens, [], N)
    R.intersected_generators = [_diag(F, d, e) for e in _intersected_logs(R, d)]
    return R


def _intersected_logs(R, d):
    E = R.logs(R.generators)
    N = R.modulus
    c = torus_factor_orders(d).constraint
    if c == EVEN_EXPONENT_SUM:
        m = len(E)
        out = [2 * E[i] % N for i in range(m)]
        out += [(E[i] + E[j]) % N for i in range(m) for j in range(i + 1, m)]
        return out
    if c == DETERMINANT_ONE:
        U = log_span(E, N)
        kernel = U[U.sum(axis=1) % N == 0]
        return _generating_subset(kernel, N)
    return list(E)


def log_span(gens, N):
    """All Z-combinations of the rows of gens, modulo N (the generated abelian group)."""
    gens = np.asarray(gens, dtype=np.int64)
    n = gens.shape[1] if gens.ndim == 2 else 0
    S = np.zeros((1, n), dtype=np.int64)
    for g in gens:
        g = g % N
        o = math.lcm(*(N // math.gcd(N, int(x)) for x in g)) if n else 1
        steps = (np.arange(o)[:, None] * g[None]) % N
        S = np.unique(((S[:, None, :] + steps[None]) % N).reshape(-1, n), axis=0)
    return S


def _generating_subset(elements, N):
    """A few elements that already generate the subgroup the rows span."""
    chosen = []
    span = {tuple([0] * elements.shape[1])}
    for row in elements:
        if tuple(row) in span:
            continue
        chosen.append(row)
        span = {tuple(r) for r in log_span(chosen, N)}
        if len(span) == len(elements):
            break
    return chosen


def realized_orders(R: TorusRealization):
    """(|<generators>|, |<intersected_generators>|) from the matrices' diagonals."""
    full = log_span(R.logs(R.generators), R.modulus)
    inter = log_span(R.logs(R.intersected_generators), R.modulus) if R.intersected_generators else full[:1]
    return len(full), len(inter)


# --- roots ---------------------------------------------------------------

def positive_roots(family, n):
    """Positive roots in the coordinates a_1..a_n of the ambient torus."""
    def vec(pairs):
        v = [0] * n
        for i, c in pairs:
            v[i] += c
        return tuple(v)

    out = [vec([(i, 1), (j, -1)]) for i in range(n) for j in range(i + 1, n)]
    if family in ("A", "2A"):
        return out
    out += [vec([(i, 1), (j, 1)]) for i in range(n) for j in range(i + 1, n)]
    if family == "C":
        out += [vec([(i, 2)]) for i in range(n)]
    elif family == "B":
        out += [vec([(i, 1)]) for i in range(n)]
    return out


@dataclass
class RootValueProfile:
    roots: list
    values: np.ndarray  # logs of alpha(u) for each intersected generator (rows) and root (columns)
    modulus: int

    def vanishing(self):
        zero = np.all(self.values % self.modulus == 0, axis=0)
        return [r for r, z in zip(self.roots, zero) if z]


def root_values(R: TorusRealization) -> RootValueProfile:
    d = R.descriptor
    roots = positive_roots(d.family, d.n)
    E = R.logs(R.intersected_generators)
    C = np.array(roots, dtype=np.int64).reshape(len(roots), d.n)
    return RootValueProfile(roots, (E @ C.T) % R.modulus, R.modulus)


def vanishing_roots(d: TorusClassDescriptor):
    """Positive roots identically 1 on the intersected torus, as strings like ``a1-a2``."""
    R = realize_torus(d)
    return [format_root(r) for r in root_values(R).vanishing()]


# --- witness root elements -----------------------------------------------

def _pos(d, i):
    """Matrix position of the signed index i (1..n or -1..-n); 0 is the B-type extra row."""
    off = 1 if d.family == "B" else 0
    if i == 0:
        return 0
    return off + (i - 1 if i > 0 else d.n - i - 1)


def _witness_parts(d, clause):
    """(N1, N2) with x(t) = E + t*N1 + t^2*N2, integer entries."""
    size = matrix_size(d)
    N1 = np.zeros((size, size), dtype=np.int64)
    N2 = np.zeros_like(N1)

    def put(M, i, j, c):
        M[_pos(d, i), _pos(d, j)] += c

    if clause == "A1":
        put(N1, 1, 2, 1)
    elif clause == "U-b":
        j = _two_cycle_offset(d.cycle_type.positive)
        put(N1, j, j + 1, 1)
    elif clause in ("Sp-a", "Om-a", "SO-a"):
        put(N1, 1, 2, 1)
        put(N1, -2, -1, -1)
    elif clause in ("Sp-b", "Om-b", "SO-b"):
        j = _two_cycle_offset(d.cycle_type.positive) if clause != "SO-b" else 1
        put(N1, j, -(j + 1), 1)
        put(N1, j + 1, -j, -1)
    elif clause == "Sp-c":
        put(N1, 1, -1, 1)
    elif clause == "SO-c":
        put(N1, 1, 0, 2)
        put(N1, 0, -1, -1)
        put(N2, 1, -1, -1)
    else:
        raise ParameterError(f"no witness for clause {clause!r}")
    return N1, N2


def _triggered(d, clause):
    v = classify_classical(d, simple_filter=False)
    if clause is None:
        if not v.degenerate:
            raise ParameterError(f"{d} is nondegenerate; there is no witness")
        return v.clauses
    if clause not in v.clauses:
        raise ParameterError(f"clause {clause} is not triggered for {d}")
    return (clause,)


def _at(F, N1, N2, t):
    """E + t*N1 + t^2*N2 over F, for integer matrices N1, N2."""
    t = int(t)
    a = F.mul(F.from_int(N1 % F.p), t)
    b = F.mul(F.from_int(N2 % F.p), F.mul(t, t))
    return F.add(F.add(gm.identity(N1.shape[0]), a), b)


def witness_element(d: TorusClassDescriptor, clause):
    """The proof witness x_alpha(1), entries in the prime field."""
    _triggered(d, clause)
    N1, N2 = _witness_parts(d, clause)
    return _at(gm.field(d.p), N1, N2, 1)


def _in_group(F, d, M):
    """Matrix membership in the ambient classical group (form, determinant, Dickson parity)."""
    n = d.n
    if gm.det(F, M) != 1:
        return False
    if d.family in ("A", "2A"):
        return True
    if d.family == "C":
        return gm.preserves_form(F, M, gm.symplectic_gram(F, n))
    if d.family == "B":
        gram = np.zeros((2 * n + 1, 2 * n + 1), dtype=np.int64)
        gram[0, 0] = F.from_int(2)
        gram[1:, 1:] = gm.orthogonal_polar(F, n)
        values = [int(F.add(F.mul(M[0, c], M[0, c]), gm.quad_form_hyperbolic(F, n, M[1:, c])))
                  for c in range(2 * n + 1)]
        return gm.preserves_form(F, M, gram) and values == [1] + [0] * (2 * n)
    # D and 2D, hyperbolic quadratic form on the split coordinates
    if not gm.preserves_form(F, M, gm.orthogonal_polar(F, n)):
        return False
    if any(gm.quad_form_hyperbolic(F, n, M[:, c]) for c in range(2 * n)):
        return False
    return F.p != 2 or gm.dickson_even(F, M)


def _permutation_matrix(d):
    """Unsigned coordinate permutation of the standard representative (w acting on e_i, e_-i)."""
    size = matrix_size(d)
    P = np.zeros((size, size), dtype=np.int64)
    w = standard_representative(d.cycle_type)
    if d.family in ("A", "2A"):
        for i in range(1, d.n + 1):
            P[_pos(d, w(i)), _pos(d, i)] = 1
        return P
    if d.family == "B":
        P[0, 0] = 1
    for i in range(1, d.n + 1):
        P[_pos(d, w(i)), _pos(d, i)] = 1
        P[_pos(d, -w(i)), _pos(d, -i)] = 1
    return P


def _sigma_w(F, d, M):
    """The twisted Frobenius applied to a matrix: P * M^(q) * P^-1, inverse-transposed for 2A."""
    P = _permutation_matrix(d)
    Mq = np.vectorize(lambda x: F.pow(int(x), d.q))(M).astype(np.int64)
    if d.family == "2A":
        Mq = gm.mat_inv(F, Mq).T
    return gm.mat_mul(F, gm.mat_mul(F, P, Mq), P.T)


def _fixed_parameter(d, N1, N2, max_degree=2):
    """Smallest-field nonzero t with x(t) fixed by the twisted Frobenius, or None."""
    for K in range(1, max_degree + 1):
        if d.q**K > gm.MAX_FIELD:
            break
        F = gm.field(d.q**K)
        for t in range(1, F.q):
            x = _at(F, N1, N2, t)
            if np.array_equal(_sigma_w(F, d, x), x):
                return F, t
    return None, None


def _regular_diagonal(d):
    """A diagonal element of the ambient torus with pairwise distinct entries."""
    need = 4 * d.n + 4
    K = 1
    while True:
        F = gm.field(d.p**K)
        if F.order >= need:
            mu = F.primitive_element()
            e = list(range(1, d.n + 1))
            if d.family in ("A", "2A"):
                e[-1] = -sum(e[:-1])
            M = _diag(F, d, [F.log_of(F.pow(mu, x)) for x in e])
            diag = [int(M[i, i]) for i in range(M.shape[0])]
            if len(set(diag)) == len(diag):
                return F, M
        K += 1


@dataclass
class WitnessCheck:
    clause: str
    root: str
    membership: bool
    centralizes: bool
    not_normalizing: bool
    parameter: str = ""

    @property
    def ok(self):
        return self.membership and self.centralizes and self.not_normalizing

    @property
    def failed(self):
        return [name for name in ("membership", "centralizes", "not_normalizing") if not getattr(self, name)]


@dataclass
class WitnessReport:
    descriptor: TorusClassDescriptor
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def to_json(self):
        return {
            "descriptor": self.descriptor.to_json(),
            "route": "witness",
            "ok": self.ok,
            "checks": [{"clause": c.clause, "root": c.root, "membership": c.membership,
                        "centralizes": c.centralizes, "not_normalizing": c.not_normalizing,
                        "parameter": c.parameter} for c in self.checks],
        }


def verify_witness(d: TorusClassDescriptor, strict=False) -> WitnessReport:
    """Check every triggered clause's witness as a matrix; strict raises on the first failure."""
    clauses = _triggered(d, None)
    roots = dict(classical_hits(d))
    R = realize_torus(d)
    report = WitnessReport(d)
    Fp = gm.field(d.p)
    Freg, treg = _regular_diagonal(d)
    for clause in clauses:
        N1, N2 = _witness_parts(d, clause)
        x = _at(Fp, N1, N2, 1)
        Ft, t = _fixed_parameter(d, N1, N2)
        member = _in_group(Fp, d, x) and Ft is not None and _in_group(Ft, d, _at(Ft, N1, N2, t))
        F = R.ambient_field
        commutes = all(np.array_equal(gm.mat_mul(F, x, g), gm.mat_mul(F, g, x)) for g in R.intersected_generators)
        conj = gm.mat_mul(Freg, gm.mat_mul(Freg, x, treg), gm.mat_inv(Freg, x))
        moved = bool(np.any(conj[~np.eye(conj.shape[0], dtype=bool)]))
        check = WitnessCheck(clause, roots[clause], member, commutes, moved,
                             f"GF({Ft.q}):{Ft.hex(t)}" if Ft is not None else "")
        report.checks.append(check)
        if strict and not check.ok:
            raise VerificationFailure(check.failed[0], f"{d} clause {clause}")
    return report


# --- brute-force normalisers ---------------------------------------------

@lru_cache(maxsize=None)
def _enumerated(family, n, q, derived, budget):
    spec = gm.special_linear(n, q) if family == "A" else gm.symplectic(n, q)
    G = gm.enumerate_group(spec, budget)
    if derived:
        G = gm.derived_subgroup(G, spec.generators, budget)
    return G


def ambient_group(family, n, q, derived=False, budget=None):
    """Enumerated SL_n(q) or Sp_2n(q) (optionally its derived subgroup), q prime."""
    if family not in ("A", "C"):
        raise UnsupportedError(f"brute force is shipped for families A and C, not {family}")
    if gm.field(q).k != 1:
        raise UnsupportedError("brute force needs a prime q")
    budget = gm.default_budget() if budget is None else budget
    return _enumerated(family, n, q, derived, budget)


def _trace(F, z):
    acc = 0
    for i in range(F.k):
        acc = int(F.add(acc, F.pow(z, F.p**i)))
    return acc


def _mult_matrix(F, c):
    """Matrix over the prime field of multiplication by c, in the basis 1, x, ..., x^(k-1)."""
    k, p = F.k, F.p
    cols = [F._digits(int(F.mul(c, p**j))) for j in range(k)]
    return np.array(cols, dtype=np.int64).T.reshape(k, k)


def _block_algebra(d):
    """Basis of the torus's centraliser algebra and the ambient form, before normalising coordinates.

    Each positive k-cycle contributes GF(q^k) (linear) or GF(q^k)+GF(q^k) with
    form Tr(x1*y2 - x2*y1) (symplectic); a negative k-cycle contributes GF(q^2k)
    with form Tr(c*x*y^(q^k)), where c^(q^k) = -c.
    """
    q = d.q
    blocks = []  # (algebra basis matrices, gram or None)
    for k, sign in (((k, 1) for k in d.cycle_type.positive) if d.family == "A" else d.cycle_type.cycles):
        if d.family == "A":
            F = gm.field(q**k)
            blocks.append(([_mult_matrix(F, q**a) for a in range(k)], None))
        elif sign > 0:
            F = gm.field(q**k)
            gram = np.zeros((2 * k, 2 * k), dtype=np.int64)
            for a in range(k):
                for b in range(k):
                    tr = _trace(F, F.mul(q**a, q**b))
                    gram[a, k + b] = tr
                    gram[k + b, a] = (-tr) % q
            basis = []
            for a in range(k):
                m = _mult_matrix(F, q**a)
                for half in (0, 1):
                    M = np.zeros((2 * k, 2 * k), dtype=np.int64)
                    M[half * k:(half + 1) * k, half * k:(half + 1) * k] = m
                    basis.append(M)
            blocks.append((basis, gram))
        else:
            F = gm.field(q ** (2 * k))
            c = 1 if q % 2 == 0 else F.pow(F.primitive_element(), (q**k + 1) // 2)
            gram = np.zeros((2 * k, 2 * k), dtype=np.int64)
            for a in range(2 * k):
                for b in range(2 * k):
                    gram[a, b] = _trace(F, F.mul(c, F.mul(q**a, F.pow(q**b, q**k))))
            blocks.append(([_mult_matrix(F, q**a) for a in range(2 * k)], gram))
    dim = sum(b[0][0].shape[0] for b in blocks)
    basis, gram, start = [], np.zeros((dim, dim), dtype=np.int64), 0
    for mats, g in blocks:
        size = mats[0].shape[0]
        for m in mats:
            M = np.zeros((dim, dim), dtype=np.int64)
            M[start:start + size, start:start + size] = m
            basis.append(M)
        if g is not None:
            gram[start:start + size, start:start + size] = g
        start += size
    return basis, gram


def _symplectic_basis(gram, p):
    """Columns v_1..v_n, w_1..w_n with B(v_i, w_i) = 1 and all other pairings 0."""
    dim = gram.shape[0]

    def B(u, v):
        return int(u @ gram @ v) % p

    todo = [np.eye(dim, dtype=np.int64)[i] for i in range(dim)]
    vs, ws = [], []
    while todo:
        v = todo.pop(0)
        j = next((j for j, u in enumerate(todo) if B(v, u)), None)
        if j is None:
            raise AssertionError("degenerate form")
        w = todo.pop(j)
        w = (w * pow(B(v, w), -1, p)) % p
        todo = [(u - B(u, w) * v + B(u, v) * w) % p for u in todo]
        vs.append(v)
        ws.append(w)
    return np.array(vs + ws, dtype=np.int64).T


def torus_in_group(d, G):
    """(S elements, algebra basis) for the class d inside the enumerated group G."""
    F = G.field
    p = F.p
    basis, gram = _block_algebra(d)
    if d.family == "C":
        P = _symplectic_basis(gram, p)
        if not np.array_equal(P.T @ gram @ P % p, gm.symplectic_gram(F, d.n)):
            raise AssertionError("symplectic basis change failed")
        Pinv = gm.mat_inv(F, P)
        basis = [Pinv @ b @ P % p for b in basis]
    coeffs = np.array(np.meshgrid(*[np.arange(p)] * len(basis), indexing="ij")).reshape(len(basis), -1).T
    algebra = np.einsum("ck,kij->cij", coeffs, np.array(basis)) % p
    inside = [m for m, key in zip(algebra, gm._keys(algebra)) if key in G.index]
    return inside, basis


@dataclass
class NormaliserReport:
    descriptor: TorusClassDescriptor
    group: str
    torus_order: int
    algebraic_order: int
    full_normalizer_order: int
    formula_order: int | None = None

    @property
    def degenerate(self):
        return self.full_normalizer_order > self.algebraic_order

    def to_json(self):
        return {
            "descriptor": self.descriptor.to_json(),
            "route": "brute_force",
            "group": self.group,
            "torus_order": self.torus_order,
            "algebraic_order": self.algebraic_order,
            "full_normalizer_order": self.full_normalizer_order,
            "degenerate": self.degenerate,
        }


def brute_force_normalizer_report(d: TorusClassDescriptor, derived=False, budget=None) -> NormaliserReport:
    """Count |N_G(S)| and the algebraic normaliser |N(G,S)| directly in an enumerated group.

    S is the set of invertible elements of the torus's centraliser algebra lying
    in G; the algebraic normaliser is the stabiliser of that algebra. With
    derived=True, G is replaced by its derived subgroup and S by S cap G'.
    """
    G = ambient_group(d.family, d.n, d.q, derived, budget)
    S, basis = torus_in_group(d, G)
    full = gm.subgroup_normalizer_order(G, S)
    algebraic = gm.algebra_normalizer_order(G, basis)
    formula = None
    if not derived:
        formula = algebraic_normaliser_order(d)
        if len(S) != intersected_torus_order(d):
            raise VerificationFailure("torus_order", f"{d}: |S| = {len(S)}, expected {intersected_torus_order(d)}")
        if algebraic != formula:
            raise VerificationFailure("algebraic_order", f"{d}: counted {algebraic}, formula {formula}")
    name = ("SL" if d.family == "A" else "Sp") + f"_{matrix_size(d)}({d.q})" + ("'" if derived else "")
    return NormaliserReport(d, name, len(S), algebraic, full, formula)
