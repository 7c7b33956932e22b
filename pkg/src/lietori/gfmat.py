"""Finite fields GF(p^k), matrices over them, and bounded group enumeration.

Field elements are integers 0..q-1 holding the base-p digits of a polynomial
in the generator x (lowest digit = constant term). The modulus is the first
primitive polynomial in lexicographic order, so x itself is a primitive
element and encodings are deterministic across runs. Arithmetic goes through
exp/log tables; everything accepts numpy arrays so matrix products and group
closures vectorize over a leading batch axis.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from .errors import BudgetError, ParameterError
from .weylclass import prime_power

MAX_FIELD = 2**16
DEFAULT_BUDGET = 2_000_000


def default_budget():
    return int(os.environ.get("TORI_BUDGET", DEFAULT_BUDGET))


class GF:
    """The field with q = p**k elements."""

    def __init__(self, q: int):
        p, k = prime_power(q)
        if q > MAX_FIELD:
            raise BudgetError(f"GF({q}) exceeds the field cap {MAX_FIELD}")
        self.p, self.k, self.q = p, k, q
        self.order = q - 1
        self.modulus, exp = _primitive_table(p, k)
        self.exp = np.array(exp + exp, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        log[np.array(exp, dtype=np.int64)] = np.arange(q - 1)
        self.log = log
        self._exp_list = exp
        self._log_list = log.tolist()
        self._pows = p ** np.arange(k, dtype=np.int64)
        g = self.primitive_element()
        if self.mult_order(g) != q - 1:
            raise AssertionError(f"GF({q}): generator has wrong order")

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, GF) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))

    # scalar and vectorized arithmetic
    def add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.k == 1:
            return (np.asarray(a) + b) % self.p
        da, db = self._digits(a), self._digits(b)
        return self._undigits((da + db) % self.p)

    def neg(self, a):
        if self.p == 2:
            return a
        if self.k == 1:
            return (-np.asarray(a)) % self.p
        return self._undigits((-self._digits(a)) % self.p)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a * b) % self.p
        la, lb = self.log[a], self.log[b]
        out = self.exp[(la + lb) % self.order]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = int(a)
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._exp_list[(-self._log_list[a]) % self.order]

    def pow(self, a, e):
        a = int(a)
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp_list[(self._log_list[a] * e) % self.order]

    def exp_of(self, e):
        return self._exp_list[e % self.order]

    def log_of(self, a):
        a = int(a)
        if a == 0:
            raise ZeroDivisionError("log of zero")
        return self._log_list[a]

    def primitive_element(self):
        return self._exp_list[1 % self.order]

    def mult_order(self, a):
        from math import gcd

        return self.order // gcd(self.order, self.log_of(a))

    def element_of_order(self, d):
        if d < 1 or self.order % d:
            raise ParameterError(f"GF({self.q}) has no element of order {d}")
        return self._exp_list[(self.order // d) % self.order]

    def frobenius(self, a, r=1):
        return self.pow(a, self.p**r)

    def from_int(self, n):
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def hex(self, a):
        width = max(1, len(format(self.q - 1, "x")))
        return format(int(a), f"0{width}x")

    def _digits(self, a):
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._pows) % self.p

    def _undigits(self, d):
        return (d * self._pows).sum(axis=-1)

    def elements(self):
        return range(self.q)


def _mul_x(a, p, k, q, low):
    """Multiply the encoded polynomial a by x modulo the monic modulus."""
    if p == 2:
        a <<= 1
        if a & q:
            a ^= q | low
        return a
    a *= p
    top, a = divmod(a, q)
    if top:
        digits = [(a // p**i) % p for i in range(k)]
        for i in range(k):
            digits[i] = (digits[i] - top * low[i]) % p
        a = sum(d * p**i for i, d in enumerate(digits))
    return a


@lru_cache(maxsize=None)
def _primitive_table(p, k):
    """(modulus coefficients, exp table) for the first primitive polynomial."""
    q = p**k
    if k == 1:
        for g in range(1, p):
            seen, x = [], 1
            for _ in range(p - 1):
                seen.append(x)
                x = x * g % p
            if len(set(seen)) == p - 1:
                return (1,), seen
        raise AssertionError("no primitive root")
    for code in range(1, q):
        low = [(code // p**i) % p for i in range(k)]
        if low[0] == 0:
            continue
        lowarg = code if p == 2 else low
        exp, x = [], 1
        ok = True
        for m in range(q - 1):
            exp.append(x)
            x = _mul_x(x, p, k, q, lowarg)
            if x == 1 and m < q - 2:
                ok = False
                break
        if ok and x == 1:
            return tuple(low) + (1,), exp
    raise AssertionError(f"no primitive polynomial of degree {k} over GF({p})")


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)


# --- matrices ------------------------------------------------------------

def mat_mul(F: GF, A, B):
    """Matrix product over F; both arguments may carry leading batch axes."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if F.k == 1:
        return np.matmul(A, B) % F.p
    m = A.shape[-1]
    acc = None
    for j in range(m):
        term = F.mul(A[..., :, j, None], B[..., None, j, :])
        acc = term if acc is None else F.add(acc, term)
    return acc


def identity(n):
    return np.eye(n, dtype=np.int64)


def mat_pow(F: GF, A, e):
    A = np.asarray(A, dtype=np.int64)
    out = np.broadcast_to(identity(A.shape[-1]), A.shape).copy()
    base = A
    while e:
        if e & 1:
            out = mat_mul(F, out, base)
        base = mat_mul(F, base, base)
        e >>= 1
    return out


def row_reduce(F: GF, M):
    """Reduced row echelon form of a single matrix; returns (R, rank)."""
    R = [list(map(int, row)) for row in np.asarray(M)]
    rows, cols = len(R), len(R[0]) if R else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = F.inv(R[r][c])
        R[r] = [int(F.mul(inv, x)) for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [int(F.sub(x, F.mul(f, y))) for x, y in zip(R[i], R[r])]
        r += 1
        if r == rows:
            break
    return np.array(R, dtype=np.int64).reshape(rows, cols), r


def rank(F: GF, M):
    return row_reduce(F, M)[1]


def mat_inv(F: GF, M):
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    R, r = row_reduce(F, np.concatenate([M, identity(n)], axis=1))
    if r < n or not np.array_equal(R[:, :n], identity(n)):
        raise ZeroDivisionError("singular matrix")
    return R[:, n:]


def det(F: GF, M):
    M = [list(map(int, row)) for row in np.asarray(M)]
    n = len(M)
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = int(F.neg(d))
        d = int(F.mul(d, M[c][c]))
        inv = F.inv(M[c][c])
        for i in range(c + 1, n):
            if M[i][c]:
                f = int(F.mul(M[i][c], inv))
                M[i] = [int(F.sub(x, F.mul(f, y))) for x, y in zip(M[i], M[c])]
    return d


def dickson_even(F: GF, M) -> bool:
    """Parity test on rank(M - I); even rank means M lies in Omega."""
    M = np.asarray(M, dtype=np.int64)
    return rank(F, F.sub(M, identity(M.shape[0]))) % 2 == 0


def matrix_hex(F: GF, M):
    return [" ".join(F.hex(x) for x in row) for row in np.asarray(M)]


def elementary(n, i, j, t=1):
    """E + t e_ij (0-based positions)."""
    M = identity(n)
    M[i, j] = t
    return M


# --- forms and standard groups ------------------------------------------

def symplectic_gram(F: GF, n):
    """Gram matrix of x_1y_-1 - x_-1y_1 + ... in the order 1..n, -1..-n."""
    J = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for i in range(n):
        J[i, n + i] = 1
        J[n + i, i] = F.neg(1)
    return J


def orthogonal_polar(F: GF, n):
    """Polar form of Q = x_1x_-1 + ... + x_nx_-n (symmetric, order 1..n, -1..-n)."""
    B = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for i in range(n):
        B[i, n + i] = 1
        B[n + i, i] = 1
    return B


def quad_form_hyperbolic(F: GF, n, v):
    v = np.asarray(v, dtype=np.int64)
    return _fsum(F, F.mul(v[:n], v[n:]))


def _fsum(F, xs):
    acc = 0
    for x in np.asarray(xs).ravel():
        acc = int(F.add(acc, int(x)))
    return acc


def preserves_form(F: GF, M, gram):
    M = np.asarray(M, dtype=np.int64)
    return np.array_equal(mat_mul(F, mat_mul(F, M.T, gram), M), gram)


@dataclass
class GroupSpec:
    """A matrix group given by generators plus the predicate its elements satisfy."""

    name: str
    field: GF
    dim: int
    generators: list
    predicate: str  # "det1" | "form" | "quadratic"
    gram: np.ndarray | None = None
    expected_order: int | None = None

    def contains(self, M):
        F = self.field
        M = np.asarray(M, dtype=np.int64)
        if self.predicate == "det1":
            return det(F, M) == 1
        if self.predicate == "form":
            return det(F, M) != 0 and preserves_form(F, M, self.gram)
        if self.predicate == "quadratic":
            n = self.dim // 2
            if det(F, M) == 0 or not preserves_form(F, M, self.gram):
                return False
            cols_ok = all(quad_form_hyperbolic(F, n, M[:, c]) == 0 for c in range(self.dim))
            return cols_ok and dickson_even(F, M)
        raise ParameterError(f"unknown predicate {self.predicate!r}")

    def check_generators(self):
        bad = [i for i, g in enumerate(self.generators) if not self.contains(g)]
        if bad:
            raise AssertionError(f"{self.name}: generators {bad} violate the {self.predicate} predicate")


def _basis_scalars(F: GF):
    g = F.primitive_element()
    return [F.pow(g, i) for i in range(F.k)]


def _sl_order(n, q):
    out = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        out *= q**i - 1
    return out


def _sp_order(n, q):
    out = q ** (n * n)
    for i in range(1, n + 1):
        out *= q ** (2 * i) - 1
    return out


def _omega_plus_order_char2(n, q):
    out = q ** (n * (n - 1)) * (q**n - 1)
    for i in range(1, n):
        out *= q ** (2 * i) - 1
    return out


def special_linear(n, q) -> GroupSpec:
    F = field(q)
    gens = []
    for i in range(n - 1):
        for t in _basis_scalars(F):
            gens.append(elementary(n, i, i + 1, t))
            gens.append(elementary(n, i + 1, i, t))
    spec = GroupSpec(f"SL_{n}({q})", F, n, gens, "det1", expected_order=_sl_order(n, q))
    spec.check_generators()
    return spec


def symplectic_root_element(F: GF, n, kind, i, j=None, t=1):
    """Root elements of Sp_2n in the order 1..n, -1..-n (0-based i, j).

    kind: "ij" -> E + t(e_ij - e_-j-i); "i-j" -> E + t(e_i,-j + e_j,-i);
    "-ij" -> E + t(e_-i,j + e_-j,i); "i-i" -> E + t e_i,-i; "-ii" -> E + t e_-i,i.
    """
    M = identity(2 * n)
    if kind == "ij":
        M[i, j] = t
        M[n + j, n + i] = F.neg(t)
    elif kind == "i-j":
        M[i, n + j] = t
        M[j, n + i] = t
    elif kind == "-ij":
        M[n + i, j] = t
        M[n + j, i] = t
    elif kind == "i-i":
        M[i, n + i] = t
    elif kind == "-ii":
        M[n + i, i] = t
    else:
        raise ParameterError(kind)
    return M


def symplectic(n, q) -> GroupSpec:
    F = field(q)
    gens = []
    for t in _basis_scalars(F):
        for i in range(n - 1):
            gens.append(symplectic_root_element(F, n, "ij", i, i + 1, t))
            gens.append(symplectic_root_element(F, n, "ij", i + 1, i, t))
        gens.append(symplectic_root_element(F, n, "i-i", n - 1, t=t))
        gens.append(symplectic_root_element(F, n, "-ii", n - 1, t=t))
    spec = GroupSpec(f"Sp_{2 * n}({q})", F, 2 * n, gens, "form", symplectic_gram(F, n),
                     expected_order=_sp_order(n, q))
    spec.check_generators()
    return spec


def omega_plus_char2(n, q) -> GroupSpec:
    F = field(q)
    if F.p != 2:
        raise ParameterError("omega_plus_char2 needs even q")
    gens = []
    for t in _basis_scalars(F):
        for i in range(n - 1):
            gens.append(symplectic_root_element(F, n, "ij", i, i + 1, t))
            gens.append(symplectic_root_element(F, n, "ij", i + 1, i, t))
        # a_{n-1} + a_n and its negative
        M = identity(2 * n)
        M[n - 2, 2 * n - 1] = t
        M[n - 1, 2 * n - 2] = t
        gens.append(M)
        gens.append(M.T.copy())
    spec = GroupSpec(f"Omega+_{2 * n}({q})", F, 2 * n, gens, "quadratic", orthogonal_polar(F, n),
                     expected_order=_omega_plus_order_char2(n, q))
    spec.check_generators()
    return spec


# --- enumeration ---------------------------------------------------------

def _keys(arr):
    flat = np.ascontiguousarray(arr.reshape(arr.shape[0], -1).astype(np.uint16))
    return [row.tobytes() for row in flat]


@dataclass
class GroupHandle:
    """Enumerated group: an (N, d, d) element array plus a key index."""

    field: GF
    elements: np.ndarray
    index: dict = dc_field(repr=False)
    name: str = ""

    @property
    def order(self):
        return self.elements.shape[0]

    def __contains__(self, M):
        return _keys(np.asarray(M)[None])[0] in self.index

    def inverses(self):
        if not hasattr(self, "_inv"):
            self._inv = mat_pow(self.field, self.elements, self.order - 1)
        return self._inv


def closure(F: GF, generators, budget=None, name=""):
    """All products of the generators (which must generate a finite group)."""
    budget = default_budget() if budget is None else budget
    gens = np.array([np.asarray(g, dtype=np.int64) for g in generators])
    d = gens.shape[-1]
    start = identity(d)[None]
    index = {_keys(start)[0]: 0}
    chunks = [start]
    frontier = start
    count = 1
    while frontier.shape[0]:
        products = mat_mul(F, frontier[:, None], gens[None]).reshape(-1, d, d)
        keys = _keys(products)
        fresh = []
        for i, key in enumerate(keys):
            if key not in index:
                index[key] = count
                count += 1
                fresh.append(i)
                if count > budget:
                    raise BudgetError(f"{name or 'group'} exceeds the enumeration budget {budget}", partial=count)
        frontier = products[fresh]
        chunks.append(frontier)
    return GroupHandle(F, np.concatenate(chunks), index, name)


def enumerate_group(spec: GroupSpec, budget=None) -> GroupHandle:
    if budget is None:
        budget = default_budget()
    if spec.expected_order and spec.expected_order > budget:
        raise BudgetError(f"{spec.name} has order {spec.expected_order} > budget {budget}",
                          partial=0)
    G = closure(spec.field, spec.generators, budget, spec.name)
    if spec.expected_order and G.order != spec.expected_order:
        raise AssertionError(f"{spec.name}: enumerated {G.order}, expected {spec.expected_order}")
    return G


def derived_subgroup(G: GroupHandle, generators, budget=None) -> GroupHandle:
    """Closure of the commutators [g, s] over g in G and generators s.

    That set is closed under conjugation, so it generates the derived group.
    """
    F = G.field
    gens = np.array([np.asarray(s, dtype=np.int64) for s in generators])
    ginv = G.inverses()
    sinv = mat_pow(F, gens, G.order - 1)
    comms = []
    for s, si in zip(gens, sinv):
        c = mat_mul(F, mat_mul(F, ginv, si[None]), mat_mul(F, G.elements, s[None]))
        comms.append(c)
    comms = np.concatenate(comms)
    uniq = {}
    for key, m in zip(_keys(comms), comms):
        uniq.setdefault(key, m)
    return closure(F, list(uniq.values()), budget, G.name + "'")


def subgroup_normalizer_order(G: GroupHandle, S_generators) -> int:
    """|{g in G : g S g^-1 = S}| for the subgroup generated by S_generators."""
    F = G.field
    S = closure(F, S_generators)
    ginv = G.inverses()
    ok = np.ones(G.order, dtype=bool)
    for s in S_generators:
        conj = mat_mul(F, mat_mul(F, G.elements, np.asarray(s)[None]), ginv)
        ok &= np.array([k in S.index for k in _keys(conj)])
    return int(ok.sum())


def algebra_normalizer_order(G: GroupHandle, basis) -> int:
    """|{g in G : g A g^-1 = A}| for a commutative, self-centralizing algebra A.

    A = span(basis) is its own centralizer in the full matrix algebra, so
    g A g^-1 = A holds iff every g a g^-1 commutes with every basis element.
    """
    F = G.field
    ginv = G.inverses()
    basis = [np.asarray(b, dtype=np.int64) for b in basis]
    ok = np.ones(G.order, dtype=bool)
    for a in basis:
        c = mat_mul(F, mat_mul(F, G.elements, a[None]), ginv)
        for b in basis:
            lhs = mat_mul(F, c, b[None])
            rhs = mat_mul(F, b[None], c)
            ok &= np.all(lhs == rhs, axis=(1, 2))
    return int(ok.sum())
