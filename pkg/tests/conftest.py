"""Shared hand-rolled fixtures: serial commutative algebras and the 2-vertex
path algebra, with small module builders.  Kept independent of the package's
shipped corpus so tests cross-check it rather than echo it."""

import numpy as np

from homolab.fdalg import (FDAlgebra, FDModule, direct_sum,
                           endomorphism_bimodule)
from homolab.linalg import Field

F5 = Field(5)


def truncated_poly_algebra(n, name):
    """F_5[x]/(x^n) with basis 1, x, ..., x^(n-1)."""
    sc = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if i + j < n:
                sc[i, j, i + j] = 1
    unit = [1] + [0] * (n - 1)
    return FDAlgebra(F5, sc, unit, name=name)


def r2():
    return truncated_poly_algebra(2, "R2")


def r3():
    return truncated_poly_algebra(3, "R3")


def a2():
    """Path algebra of the quiver 1 -> 2, basis (e1, e2, a), a = e2*a*e1."""
    sc = np.zeros((3, 3, 3), dtype=np.int64)
    sc[0, 0, 0] = 1          # e1 e1 = e1
    sc[1, 1, 1] = 1          # e2 e2 = e2
    sc[1, 2, 2] = 1          # e2 a = a
    sc[2, 0, 2] = 1          # a e1 = a
    return FDAlgebra(F5, sc, [1, 1, 0], name="A2",
                     radical_basis=[[0], [0], [1]])


def rep_module(alg, d1, d2, f):
    """Left A2-module from a quiver representation (V1, V2, f: V1 -> V2)."""
    n = d1 + d2
    e1 = np.zeros((n, n), dtype=np.int64)
    e2 = np.zeros((n, n), dtype=np.int64)
    al = np.zeros((n, n), dtype=np.int64)
    for i in range(d1):
        e1[i, i] = 1
    for i in range(d2):
        e2[d1 + i, d1 + i] = 1
    fa = np.asarray(f, dtype=np.int64).reshape(d2, d1) if d1 and d2 else \
        np.zeros((d2, d1), dtype=np.int64)
    al[d1:, :d1] = fa
    return FDModule(alg, [e1, e2, al], "left", name=f"rep({d1},{d2})")


def right_rep_module(alg, d1, d2, g):
    """Right A2-module from a representation (W1, W2, g: W2 -> W1)."""
    n = d1 + d2
    e1 = np.zeros((n, n), dtype=np.int64)
    e2 = np.zeros((n, n), dtype=np.int64)
    al = np.zeros((n, n), dtype=np.int64)
    for i in range(d1):
        e1[i, i] = 1
    for i in range(d2):
        e2[d1 + i, d1 + i] = 1
    ga = np.asarray(g, dtype=np.int64).reshape(d1, d2) if d1 and d2 else \
        np.zeros((d1, d2), dtype=np.int64)
    al[:d1, d1:] = ga
    return FDModule(alg, [e1, e2, al], "right", name=f"rrep({d1},{d2})")


def k_module(alg):
    """The simple module on which the radical acts by zero (local algebras)."""
    acts = []
    for i in range(alg.dim):
        acts.append([[1]] if i == 0 else [[0]])
    return FDModule(alg, acts, "left", name="k")


def a2_tilting():
    """The canonical 2-vertex tilt: the projective-injective right module
    plus the top of it, with its endomorphism algebra.

    Returns (algebra, endomorphism algebra, bimodule)."""
    A = a2()
    N = right_rep_module(A, 1, 1, [[1]])
    S2r = right_rep_module(A, 0, 1, [])
    T0 = direct_sum([N, S2r])[0]
    gamma, T = endomorphism_bimodule(T0)
    return A, gamma, T


def local3():
    """F5[x,y]/(x^2, xy, y^2): commutative local with a 2-dimensional radical."""
    sc = np.zeros((3, 3, 3), dtype=np.int64)
    for j in range(3):
        sc[0, j, j] = 1
        sc[j, 0, j] = 1
    return FDAlgebra(F5, sc, [1, 0, 0], name="L3")


def serial_cyclic(alg, m, name=None):
    """The length-m cyclic module over a truncated polynomial algebra."""
    n = alg.dim
    N = np.zeros((m, m), dtype=np.int64)
    for i in range(m - 1):
        N[i + 1, i] = 1
    acts = [np.linalg.matrix_power(N, j) for j in range(n)]
    return FDModule(alg, acts, "left", name=name or f"cyc{m}")
