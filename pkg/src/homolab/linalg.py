"""Exact linear algebra over prime fields (and optionally the rationals).

Matrices are plain numpy arrays: dtype int64 with entries reduced to 0..p-1
for a prime field, dtype object with Fraction entries for the rationals.
Every routine is deterministic; row reduction always picks the lowest-index
usable pivot, so echelon forms, kernel bases and particular solutions are
canonical.  Zero-row and zero-column matrices are first-class citizens.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

# Primes above this bound could overflow int64 dot products on desk-scale
# matrices, so they are rejected up front.
_MAX_PRIME = 1 << 20


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """F_p for a prime p, or the rationals when constructed with p=None."""

    def __init__(self, p: int | None = 5):
        if p is not None:
            if not _is_prime(p):
                raise ValueError(f"field characteristic {p} is not prime")
            if p > _MAX_PRIME:
                raise ValueError(f"prime {p} exceeds supported bound {_MAX_PRIME}")
        self.p = p

    @property
    def char(self) -> int:
        return self.p if self.p is not None else 0

    @property
    def one(self):
        return 1 if self.p is not None else Fraction(1)

    @property
    def zero(self):
        return 0 if self.p is not None else Fraction(0)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"Field(p={self.p})" if self.p is not None else "Field(rationals)"

    def zeros(self, shape) -> np.ndarray:
        if self.p is not None:
            return np.zeros(shape, dtype=np.int64)
        a = np.empty(shape, dtype=object)
        a[...] = Fraction(0)
        return a

    def identity(self, n: int) -> np.ndarray:
        a = self.zeros((n, n))
        for i in range(n):
            a[i, i] = self.one
        return a

    def normalize(self, a: np.ndarray) -> np.ndarray:
        if self.p is not None:
            return np.mod(a, self.p)
        out = np.empty(np.shape(a), dtype=object)
        flat = out.reshape(-1)
        src = np.asarray(a, dtype=object).reshape(-1)
        for i in range(flat.size):
            flat[i] = Fraction(src[i])
        return out

    def asarray(self, data, shape=None) -> np.ndarray:
        """Normalize nested-list or array data into a canonical matrix."""
        if shape is not None and (np.size(data) == 0 or data is None):
            return self.zeros(shape)
        a = np.array(data, dtype=object if self.p is None else np.int64)
        return self.normalize(a)

    def inv(self, x):
        if self.p is not None:
            x = int(x) % self.p
            if x == 0:
                raise ZeroDivisionError("inverting 0 in a prime field")
            return pow(x, self.p - 2, self.p)
        x = Fraction(x)
        if x == 0:
            raise ZeroDivisionError("inverting 0 in the rationals")
        return Fraction(1) / x

    def neg(self, a):
        return self.normalize(-np.asarray(a)) if isinstance(a, np.ndarray) else self.normalize(np.asarray([-a]))[0]

    def mat_mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = np.dot(a, b)
        return self.normalize(out)

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        if np.shape(a) != np.shape(b):
            return False
        return bool(np.all(np.asarray(a) == np.asarray(b)))


def rref(field: Field, a: np.ndarray):
    """Reduced row echelon form.  Returns (R, pivot column tuple)."""
    a = field.normalize(np.array(a, copy=True))
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = field.normalize(a[r] * field.inv(a[r, c]))
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        if others.size:
            a[others] = field.normalize(a[others] - np.outer(a[others, c], a[r]))
        pivots.append(c)
        r += 1
    return a, tuple(pivots)


def rank(field: Field, a: np.ndarray) -> int:
    return len(rref(field, a)[1])


def kernel_basis(field: Field, a: np.ndarray) -> np.ndarray:
    """Canonical kernel basis as columns of an (ncols x nullity) matrix.

    One basis vector per non-pivot column of the RREF, ordered by free-column
    index: the free coordinate is 1 and pivot coordinates carry the negated
    RREF entries.
    """
    a = np.asarray(a)
    m, n = a.shape
    R, piv = rref(field, a)
    free = [c for c in range(n) if c not in set(piv)]
    K = field.zeros((n, len(free)))
    for j, f in enumerate(free):
        K[f, j] = field.one
        for i, p in enumerate(piv):
            if p < f:
                K[p, j] = field.normalize(np.asarray([-R[i, f]]))[0]
    return K


def solve_linear(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Particular solution of a x = b with free variables set to zero.

    b may be a vector or a matrix of stacked right-hand sides.  Raises
    ValueError when the system is inconsistent.
    """
    a = np.asarray(a)
    vector_in = np.ndim(b) == 1
    B = np.asarray(b)
    if vector_in:
        B = B.reshape(-1, 1)
    m, n = a.shape
    if B.shape[0] != m:
        raise ValueError(f"shape mismatch: matrix has {m} rows, rhs has {B.shape[0]}")
    aug = np.concatenate([a, B], axis=1) if n + B.shape[1] else field.zeros((m, 0))
    R, piv = rref(field, aug)
    if any(p >= n for p in piv):
        raise ValueError("inconsistent linear system")
    X = field.zeros((n, B.shape[1]))
    for i, p in enumerate(piv):
        X[p, :] = R[i, n:]
    return X[:, 0] if vector_in else X


def is_invertible(field: Field, a: np.ndarray) -> bool:
    a = np.asarray(a)
    return a.shape[0] == a.shape[1] and rank(field, a) == a.shape[0]


def inverse(field: Field, a: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError("inverting a non-square matrix")
    return solve_linear(field, a, field.identity(a.shape[0]))


def in_span(field: Field, basis: np.ndarray, v: np.ndarray) -> bool:
    try:
        solve_linear(field, basis, v)
        return True
    except ValueError:
        return False


def column_space_basis(field: Field, a: np.ndarray) -> np.ndarray:
    """Columns of a restricted to the pivot columns of its RREF."""
    a = np.asarray(a)
    _, piv = rref(field, a)
    return a[:, list(piv)] if piv else field.zeros((a.shape[0], 0))


class Subquotient:
    """A subquotient span(sub)/span(denom) of a coordinate space F^D.

    Carries a canonical basis (non-pivot coordinates of the denominator in
    sub-coordinates), an ambient `section` matrix (D x dim) of representative
    vectors and a `classify` matrix (dim x D) that evaluates the class of any
    ambient vector lying in span(sub).  classify @ section is the identity and
    classify kills span(denom).
    """

    def __init__(self, field: Field, ambient_dim: int, sub: np.ndarray | None = None,
                 denom: np.ndarray | None = None):
        self.field = field
        self.ambient_dim = ambient_dim
        if sub is None:
            sub = field.identity(ambient_dim)
        sub = np.asarray(sub)
        if sub.shape[0] != ambient_dim:
            raise ValueError("sub basis does not live in the ambient space")
        if rank(field, sub) != sub.shape[1]:
            raise ValueError("sub basis columns are not independent")
        if denom is None:
            denom = field.zeros((ambient_dim, 0))
        denom = np.asarray(denom)
        self.sub = sub
        self.denom = denom
        s = sub.shape[1]
        coords = solve_linear(field, sub, denom) if denom.shape[1] else field.zeros((s, 0))
        U, piv = rref(field, coords.T)
        pivset = set(piv)
        free = [c for c in range(s) if c not in pivset]
        self.dim = len(free)
        proj = field.zeros((self.dim, s))
        for j, f in enumerate(free):
            proj[j, f] = field.one
            for i, p in enumerate(piv):
                proj[j, p] = field.normalize(np.asarray([-U[i, f]]))[0]
        sec_sub = field.zeros((s, self.dim))
        for j, f in enumerate(free):
            sec_sub[f, j] = field.one
        self.section = field.mat_mul(sub, sec_sub)
        # classify: solve sub^T X = proj^T, then transpose
        X = solve_linear(field, sub.T, proj.T) if s else field.zeros((ambient_dim, self.dim))
        self.classify = X.T

    def classify_vectors(self, v: np.ndarray) -> np.ndarray:
        """Class coordinates of ambient vectors (columns) lying in span(sub)."""
        return self.field.mat_mul(self.classify, v)

    def induced_map(self, f: np.ndarray, target: "Subquotient") -> np.ndarray:
        """Matrix of the map induced on subquotients by ambient f (must map
        span(sub) into target span(sub) and span(denom) into target denom)."""
        return target.field.mat_mul(target.classify, target.field.mat_mul(f, self.section))
