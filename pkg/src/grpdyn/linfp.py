"""Matrices, polynomials and affine maps over prime fields F_p.

Vectors are additive (numpy int arrays reduced mod p). Batch helpers work on
stacks of matrices so that whole GL(n, p) scans stay vectorized.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import lcm

import numpy as np

from .errors import CapabilityError

DEFAULT_SCAN_BOUND = 3**6
MAX_IRREDUCIBILITY_DEGREE = 6


# --- polynomials ------------------------------------------------------------


def _trim(coeffs, p):
    c = [int(x) % p for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class FpPoly:
    """Polynomial over F_p, coefficients from the constant term up."""

    p: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs, self.p))

    @classmethod
    def x_minus(cls, a, p):
        return cls(p, (-a, 1))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return FpPoly(self.p, tuple(x + y for x, y in zip(a, b)))

    def __neg__(self):
        return FpPoly(self.p, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return FpPoly(self.p, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return FpPoly(self.p, tuple(out))

    def __pow__(self, k):
        result = FpPoly(self.p, (1,))
        for _ in range(k):
            result = result * self
        return result

    def __divmod__(self, other):
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        inv_lead = pow(other.coeffs[-1], p - 2, p)
        q = [0] * max(len(rem) - len(other.coeffs) + 1, 0)
        for shift in range(len(q) - 1, -1, -1):
            coef = rem[shift + len(other.coeffs) - 1] * inv_lead % p
            q[shift] = coef
            if coef:
                for j, b in enumerate(other.coeffs):
                    rem[shift + j] = (rem[shift + j] - coef * b) % p
        return FpPoly(p, tuple(q)), FpPoly(p, tuple(rem))

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def is_irreducible(self):
        """Trial division by every monic polynomial of degree <= deg/2."""
        d = self.degree
        if d < 1:
            return False
        if d > MAX_IRREDUCIBILITY_DEGREE:
            raise CapabilityError(f"irreducibility test is limited to degree {MAX_IRREDUCIBILITY_DEGREE}")
        for e in range(1, d // 2 + 1):
            for q in monic_polys(self.p, e):
                if not (self % q).coeffs:
                    return False
        return True

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{'' if c == 1 else c}X" + (f"^{i}" if i > 1 else ""))
        return " + ".join(reversed(terms)) or "0"


def monic_polys(p, d):
    for low in itertools.product(range(p), repeat=d):
        yield FpPoly(p, low + (1,))


def irreducible_polys(p, d):
    return [P for P in monic_polys(p, d) if P.is_irreducible()]


# --- matrices ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FpMatrix:
    p: int
    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=np.int64) % self.p
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("FpMatrix must be square")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @classmethod
    def identity(cls, n, p):
        return cls(p, np.eye(n, dtype=np.int64))

    @property
    def dim(self):
        return self.entries.shape[0]

    def __eq__(self, other):
        return isinstance(other, FpMatrix) and self.p == other.p and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.p, self.entries.tobytes()))

    def __matmul__(self, other):
        if isinstance(other, FpMatrix):
            return FpMatrix(self.p, self.entries @ other.entries)
        return (self.entries @ np.asarray(other, dtype=np.int64)) % self.p

    def is_identity(self):
        return bool((self.entries == np.eye(self.dim, dtype=np.int64)).all())

    @cached_property
    def determinant(self):
        return determinant_mod_p(self.entries, self.p)

    @property
    def is_invertible(self):
        return self.determinant != 0

    def power(self, k):
        result = FpMatrix.identity(self.dim, self.p)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def tolist(self):
        return self.entries.tolist()


def determinant_mod_p(a, p):
    m = [[int(x) % p for x in row] for row in a]
    n = len(m)
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det = det * m[col][col] % p
        inv = pow(m[col][col], p - 2, p)
        for r in range(col + 1, n):
            f = m[r][col] * inv % p
            if f:
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[col])]
    return det % p


def matrix_order(M):
    """Smallest k >= 1 with M^k = I, by direct iteration."""
    if not M.is_invertible:
        raise ValueError("matrix is singular; it has no multiplicative order")
    p, a = M.p, M.entries
    eye = np.eye(M.dim, dtype=np.int64)
    cap = p**M.dim
    cur = a
    k = 1
    while not np.array_equal(cur, eye):
        cur = (cur @ a) % p
        k += 1
        if k > cap:
            raise AssertionError("order exceeded p^n; arithmetic is broken")
    return k


def companion_matrix(P):
    """Ones on the subdiagonal, last column the negated low coefficients."""
    if not P.is_monic or P.degree < 1:
        raise ValueError(f"companion matrix needs a monic polynomial of degree >= 1, got {P}")
    n = P.degree
    m = np.zeros((n, n), dtype=np.int64)
    m[np.arange(1, n), np.arange(n - 1)] = 1
    m[:, n - 1] = [-c for c in P.coeffs[:n]]
    return FpMatrix(P.p, m)


def _ceil_log(k, p):
    t, v = 0, 1
    while v < k:
        v *= p
        t += 1
    return t


def elspas_order(P, k):
    """Order of the companion matrix of ``P^k`` for irreducible ``P != X``:
    ``ord(companion(P)) * p^t`` with t the least integer such that ``p^t >= k``."""
    if k < 1:
        raise ValueError("exponent must be positive")
    if not P.is_monic:
        raise ValueError("polynomial must be monic")
    if P.coeffs[0] == 0:
        raise ValueError("polynomial must not be divisible by X")
    if not P.is_irreducible():
        raise ValueError(f"{P} is reducible over F_{P.p}")
    return matrix_order(companion_matrix(P)) * P.p ** _ceil_log(k, P.p)


def shift_element(beta, x):
    """``sum_{j < ord(beta)} beta^j x``; always a fixed vector of beta."""
    p, a = beta.p, beta.entries
    x = np.asarray(x, dtype=np.int64) % p
    total = np.zeros_like(x)
    cur = x
    for _ in range(matrix_order(beta)):
        total = (total + cur) % p
        cur = (a @ cur) % p
    return total


@dataclass(frozen=True, eq=False)
class FpAffine:
    """``x -> M x + shift`` on F_p^n."""

    matrix: FpMatrix
    shift: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.shift, dtype=np.int64).reshape(self.matrix.dim) % self.matrix.p
        s.setflags(write=False)
        object.__setattr__(self, "shift", s)
        if not self.matrix.is_invertible:
            raise ValueError("affine map needs an invertible matrix")

    def __call__(self, x):
        return (self.matrix @ x + self.shift) % self.matrix.p

    def compose(self, other):
        """``self o other``."""
        return FpAffine(self.matrix @ other.matrix, self(other.shift))

    def is_identity(self):
        return self.matrix.is_identity() and not self.shift.any()


def affine_order(A):
    """``ord(M) * ord(shift_element(M, l))``."""
    sh = shift_element(A.matrix, A.shift)
    return matrix_order(A.matrix) * (A.matrix.p if sh.any() else 1)


def affine_order_by_iteration(A):
    """Order found by composing the map with itself until it is the identity."""
    cur = A
    k = 1
    while not cur.is_identity():
        cur = A.compose(cur)
        k += 1
    return k


def all_vectors(p, n):
    return np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64).reshape(-1, n)


def lcm_affine_orders(beta, bound=DEFAULT_SCAN_BOUND):
    """lcm of ``affine_order`` over every shift vector."""
    size = beta.p**beta.dim
    if size > bound:
        raise CapabilityError(f"{size} shift vectors exceed the scan bound {bound}")
    return lcm(*(affine_order(FpAffine(beta, v)) for v in all_vectors(beta.p, beta.dim)))


# --- batched scans ------------------------------------------------------------


def all_matrices(p, n):
    """Every n x n matrix over F_p as an array of shape (p^(n^2), n, n)."""
    return all_vectors(p, n * n).reshape(-1, n, n)


def batch_orders(mats, p):
    """Multiplicative order of each matrix; 0 for singular ones.

    Also returns ``sum_{j<ord} M^j`` for each invertible matrix.
    """
    count, n, _ = mats.shape
    eye = np.eye(n, dtype=np.int64)
    orders = np.zeros(count, dtype=np.int64)
    sums = np.zeros_like(mats)
    cur = np.broadcast_to(eye, mats.shape).copy()
    acc = np.zeros_like(mats)
    live = np.arange(count)
    for k in range(1, p**n + 1):
        acc[live] = (acc[live] + cur[live]) % p
        cur[live] = np.matmul(cur[live], mats[live]) % p
        done = live[(cur[live] == eye).all(axis=(1, 2))]
        orders[done] = k
        sums[done] = acc[done]
        live = live[orders[live] == 0]
        if live.size == 0:
            break
    return orders, sums


def invertible_matrices(p, n):
    mats = all_matrices(p, n)
    orders, sums = batch_orders(mats, p)
    keep = orders > 0
    return mats[keep], orders[keep], sums[keep]


def batch_affine_orders_by_iteration(mats, shifts, p):
    """Direct orders of ``x -> M x + l`` for every (matrix, shift) pair.

    Returns an array of shape (len(mats), len(shifts)): powers of each map are
    composed until they equal the identity map.
    """
    nm, n, _ = mats.shape
    ns = len(shifts)
    M = np.repeat(mats, ns, axis=0)
    L = np.tile(shifts, (nm, 1))
    eye = np.eye(n, dtype=np.int64)
    curM = M.copy()
    curL = L.copy()
    out = np.zeros(nm * ns, dtype=np.int64)
    live = np.arange(nm * ns)
    k = 1
    while live.size:
        ident = (curM[live] == eye).all(axis=(1, 2)) & ~curL[live].any(axis=1)
        out[live[ident]] = k
        live = live[~ident]
        if not live.size:
            break
        # A o A^k: (M*Mk, M*lk + l)
        curL[live] = (np.einsum("kij,kj->ki", M[live], curL[live]) + L[live]) % p
        curM[live] = np.matmul(M[live], curM[live]) % p
        k += 1
        if k > p ** (n + 1):
            raise AssertionError("affine order exceeded p^(n+1)")
    return out.reshape(nm, ns)


def batch_affine_orders_by_formula(orders, sums, shifts, p):
    """``ord(M) * ord(S l)`` where ``S = sum_{j<ord} M^j``."""
    sh = np.einsum("kij,sj->ksi", sums, shifts) % p
    nonzero = sh.any(axis=2)
    return orders[:, None] * np.where(nonzero, p, 1)


# --- similarity class representatives -------------------------------------


def block_diagonal(blocks, p):
    n = sum(b.dim for b in blocks)
    m = np.zeros((n, n), dtype=np.int64)
    at = 0
    for b in blocks:
        d = b.dim
        m[at : at + d, at : at + d] = b.entries
        at += d
    return FpMatrix(p, m)


def invariant_factor_chains(p, n):
    """Monic chains f_1 | f_2 | ... | f_r of total degree n with f_r(0) != 0.

    Block sums of their companion matrices represent each similarity class of
    GL(n, p) exactly once (rational canonical form).
    """
    polys = [P for d in range(1, n + 1) for P in monic_polys(p, d) if P.coeffs[0] != 0]
    out = []

    def rec(chain, used):
        if used == n:
            out.append(list(chain))
            return
        last = chain[-1] if chain else None
        for P in polys:
            if used + P.degree > n:
                continue
            if last is not None and (P.degree < last.degree or (P % last).coeffs):
                continue
            rec(chain + [P], used + P.degree)

    rec([], 0)
    return out


def similarity_representatives(p, n):
    """One matrix per similarity class of GL(n, p)."""
    return [block_diagonal([companion_matrix(f) for f in chain], p) for chain in invariant_factor_chains(p, n)]
