"""Exact linear algebra substrate: canonical forms, kernels, solves.

Oracle strategy: tiny systems are checked against brute-force enumeration of
all vectors over F_5 (independent of the row-reduction code); frozen canonical
outputs pin determinism; seeded random loops exercise rank-nullity and
solution properties across shapes including zero-row/zero-column matrices.
"""

import random
from fractions import Fraction

import numpy as np
import pytest

from homolab.linalg import (Field, Subquotient, column_space_basis, in_span,
                            inverse, is_invertible, kernel_basis, rank, rref,
                            solve_linear)

F5 = Field(5)
QQ = Field(None)


def brute_force_kernel(a, p):
    """All kernel vectors of a over F_p by exhaustive enumeration."""
    a = np.asarray(a)
    m, n = a.shape
    sols = []
    for idx in range(p ** n):
        v = []
        t = idx
        for _ in range(n):
            v.append(t % p)
            t //= p
        v = np.array(v, dtype=np.int64)
        if np.all(np.dot(a, v) % p == 0):
            sols.append(v)
    return sols


def test_kernel_canonical_column_frozen():
    a = F5.asarray([[1, 2], [2, 4]])
    K = kernel_basis(F5, a)
    assert K.shape == (2, 1)
    assert list(K[:, 0]) == [3, 1]


def test_solve_particular_solution_frozen():
    a = F5.asarray([[1, 2], [2, 4]])
    x = solve_linear(F5, a, F5.asarray([1, 2]))
    assert list(x) == [1, 0]
    assert rank(F5, a) == 1


def test_solve_inconsistent_raises():
    a = F5.asarray([[1, 2], [2, 4]])
    with pytest.raises(ValueError):
        solve_linear(F5, a, F5.asarray([1, 3]))


def test_kernel_matches_enumeration_oracle():
    rng = random.Random(11)
    for _ in range(25):
        m = rng.randint(0, 3)
        n = rng.randint(0, 4)
        a = np.array([[rng.randint(0, 4) for _ in range(n)] for _ in range(m)],
                     dtype=np.int64).reshape(m, n)
        K = kernel_basis(F5, a)
        sols = brute_force_kernel(a, 5)
        assert 5 ** K.shape[1] == len(sols)
        for j in range(K.shape[1]):
            assert np.all(np.dot(a, K[:, j]) % 5 == 0)


def test_rank_nullity_random_shapes():
    rng = random.Random(7)
    for _ in range(60):
        m = rng.randint(0, 8)
        n = rng.randint(0, 8)
        a = np.array([[rng.randint(0, 4) for _ in range(n)] for _ in range(m)],
                     dtype=np.int64).reshape(m, n)
        r = rank(F5, a)
        K = kernel_basis(F5, a)
        assert r + K.shape[1] == n
        assert rank(F5, K) == K.shape[1]


def test_rref_is_idempotent_and_deterministic():
    rng = random.Random(3)
    for _ in range(20):
        a = np.array([[rng.randint(0, 4) for _ in range(5)] for _ in range(4)],
                     dtype=np.int64)
        R1, p1 = rref(F5, a)
        R2, p2 = rref(F5, R1)
        assert p1 == p2
        assert np.array_equal(R1, R2)
        R3, p3 = rref(F5, a)
        assert np.array_equal(R1, R3) and p1 == p3


def test_zero_dimensional_matrices():
    a = F5.zeros((0, 3))
    assert rank(F5, a) == 0
    assert kernel_basis(F5, a).shape == (3, 3)
    b = F5.zeros((3, 0))
    assert kernel_basis(F5, b).shape == (0, 0)
    x = solve_linear(F5, b, F5.zeros(3))
    assert x.shape == (0,)
    with pytest.raises(ValueError):
        solve_linear(F5, b, F5.asarray([1, 0, 0]))


def test_solve_multiple_rhs_and_inverse():
    rng = random.Random(19)
    for _ in range(20):
        n = rng.randint(1, 5)
        a = np.array([[rng.randint(0, 4) for _ in range(n)] for _ in range(n)],
                     dtype=np.int64)
        if not is_invertible(F5, a):
            continue
        inv = inverse(F5, a)
        assert np.array_equal(np.dot(a, inv) % 5, np.eye(n, dtype=np.int64))
        b = np.array([[rng.randint(0, 4) for _ in range(2)] for _ in range(n)],
                     dtype=np.int64)
        x = solve_linear(F5, a, b)
        assert np.array_equal(np.dot(a, x) % 5, b % 5)


def test_rational_field_path():
    a = QQ.asarray([[1, 2], [3, 4]])
    assert a.dtype == object and isinstance(a[0, 0], Fraction)
    assert rank(QQ, a) == 2
    inv = inverse(QQ, a)
    assert inv[0, 0] == Fraction(-2)
    k = kernel_basis(QQ, QQ.asarray([[1, 2], [2, 4]]))
    assert k.shape == (2, 1) and k[0, 0] == Fraction(-2) and k[1, 0] == Fraction(1)


def test_column_space_and_span():
    a = F5.asarray([[1, 2, 0], [2, 4, 1]])
    cs = column_space_basis(F5, a)
    assert cs.shape == (2, 2)
    assert in_span(F5, cs, F5.asarray([0, 1]))
    assert in_span(F5, a[:, [1]], F5.asarray([2, 4]))
    assert not in_span(F5, a[:, [1]], F5.asarray([1, 0]))


def test_subquotient_projection_section_contract():
    # ambient F_5^4, sub spanned by e0,e1,e2; denominator spanned by e0+e1
    sub = F5.asarray([[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]])
    den = F5.asarray([[1], [1], [0], [0]])
    q = Subquotient(F5, 4, sub=sub, denom=den)
    assert q.dim == 2
    ident = np.dot(q.classify, q.section) % 5
    assert np.array_equal(ident, np.eye(2, dtype=np.int64))
    assert np.all(np.dot(q.classify, den) % 5 == 0)
    # classify is a retraction on span(sub): class of e0 equals minus class of e1
    c0 = q.classify_vectors(F5.asarray([1, 0, 0, 0]))
    c1 = q.classify_vectors(F5.asarray([0, 1, 0, 0]))
    assert np.array_equal((c0 + c1) % 5, np.zeros(2, dtype=np.int64))


def test_subquotient_full_and_trivial_cases():
    q = Subquotient(F5, 3)
    assert q.dim == 3
    q2 = Subquotient(F5, 3, sub=None, denom=F5.identity(3))
    assert q2.dim == 0
    q3 = Subquotient(F5, 0)
    assert q3.dim == 0 and q3.section.shape == (0, 0)
