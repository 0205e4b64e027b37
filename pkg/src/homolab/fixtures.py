"""The shipped workspace corpus, built programmatically.

Five desk-scale workspaces: two truncated polynomial lines r2 and r3, the
two-vertex path-algebra tilt a2, the commutative local square-zero algebra
local3, and the two-variable polynomial workspace poly2 with its monomial
ideals.  Builders return plain dicts in the workspace grammar; the same
dicts are shipped as JSON files under the package data directory so the
command line can resolve them by bare name.
"""

from __future__ import annotations

import numpy as np

from .fdalg import Bimodule, FDAlgebra, FDModule, direct_sum, \
    endomorphism_bimodule
from .graded import MonomialIdeal, PolyRing, free_graded, graded_direct_sum, \
    quotient_by_monomials, shift_graded
from .linalg import Field
from .workspace import Workspace, workspace_from_dict, workspace_to_dict


def _truncated_algebra(field, n, name):
    sc = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if i + j < n:
                sc[i, j, i + j] = 1
    return FDAlgebra(field, sc, [1] + [0] * (n - 1), name=name)


def _simple_module(alg, name="k"):
    acts = [[[1]] if i == 0 else [[0]] for i in range(alg.dim)]
    return FDModule(alg, acts, "left", name=name)


def _regular_left(alg, name="reg"):
    acts = [alg.mat_of_left(alg.basis_vector(i)) for i in range(alg.dim)]
    return FDModule(alg, acts, "left", name=name)


def _envelope(alg, name="E"):
    """Dual of the right regular module: the injective envelope carrier."""
    acts = [alg.mat_of_right(alg.basis_vector(i)).T.copy()
            for i in range(alg.dim)]
    return FDModule(alg, acts, "left", name=name)


def _regular_bimodule(alg, name="reg"):
    left = [alg.mat_of_left(alg.basis_vector(i)) for i in range(alg.dim)]
    right = [alg.mat_of_right(alg.basis_vector(i)) for i in range(alg.dim)]
    return Bimodule(alg, alg, left, right, name=name)


def _serial_corpus(n, label, algebra_name, extra_cyclics=()):
    field = Field(5)
    ws = Workspace(field, name=label)
    alg = _truncated_algebra(field, n, algebra_name)
    ws.algebras[algebra_name] = alg
    ws.modules["k"] = _simple_module(alg)
    ws.modules["reg"] = _regular_left(alg)
    ws.modules["E"] = _envelope(alg)
    for m in extra_cyclics:
        N = np.zeros((m, m), dtype=np.int64)
        for i in range(m - 1):
            N[i + 1, i] = 1
        acts = [np.linalg.matrix_power(N, j) for j in range(n)]
        ws.modules[f"c{m}"] = FDModule(alg, acts, "left", name=f"c{m}")
    reg = _regular_bimodule(alg)
    ws.bimodules["reg"] = reg
    kacts = [[[1]] if i == 0 else [[0]] for i in range(alg.dim)]
    ws.bimodules["k"] = Bimodule(alg, alg, kacts, kacts, name="k")
    dual = reg.k_dual()
    ws.bimodules["D"] = Bimodule(alg, alg, dual.left_action,
                                 dual.right_action, name="D")
    ws.samples["basic"] = ["k", "reg", "E"] + [f"c{m}" for m in extra_cyclics]
    ws.defaults = {"bound": 6, "degrees": [0]}
    return workspace_to_dict(ws)


def corpus_r2() -> dict:
    return _serial_corpus(2, "r2", "R2")


def corpus_r3() -> dict:
    return _serial_corpus(3, "r3", "R3", extra_cyclics=(2,))


def _quiver_rep(alg, d1, d2, f, name):
    n = d1 + d2
    e1 = np.zeros((n, n), dtype=np.int64)
    e2 = np.zeros((n, n), dtype=np.int64)
    ar = np.zeros((n, n), dtype=np.int64)
    for i in range(d1):
        e1[i, i] = 1
    for i in range(d2):
        e2[d1 + i, d1 + i] = 1
    if d1 and d2:
        ar[d1:, :d1] = np.asarray(f, dtype=np.int64).reshape(d2, d1)
    return FDModule(alg, [e1, e2, ar], "left", name=name)


def _quiver_rep_right(alg, d1, d2, g, name):
    n = d1 + d2
    e1 = np.zeros((n, n), dtype=np.int64)
    e2 = np.zeros((n, n), dtype=np.int64)
    ar = np.zeros((n, n), dtype=np.int64)
    for i in range(d1):
        e1[i, i] = 1
    for i in range(d2):
        e2[d1 + i, d1 + i] = 1
    if d1 and d2:
        ar[:d1, d1:] = np.asarray(g, dtype=np.int64).reshape(d1, d2)
    return FDModule(alg, [e1, e2, ar], "right", name=name)


def corpus_a2() -> dict:
    """The two-vertex tilt: the path algebra of 1 -> 2, the endomorphism
    algebra of the canonical rigid right module, and the bimodule joining
    them, with the three indecomposable left modules as samples."""
    field = Field(5)
    ws = Workspace(field, name="a2")
    sc = np.zeros((3, 3, 3), dtype=np.int64)
    sc[0, 0, 0] = 1
    sc[1, 1, 1] = 1
    sc[1, 2, 2] = 1
    sc[2, 0, 2] = 1
    alg = FDAlgebra(field, sc, [1, 1, 0], name="A2",
                    radical_basis=[[0], [0], [1]])
    ws.algebras["A2"] = alg
    ws.modules["S1"] = _quiver_rep(alg, 1, 0, None, "S1")
    ws.modules["S2"] = _quiver_rep(alg, 0, 1, None, "S2")
    ws.modules["P1"] = _quiver_rep(alg, 1, 1, [[1]], "P1")
    stalk = _quiver_rep_right(alg, 1, 1, [[1]], "N")
    top = _quiver_rep_right(alg, 0, 1, None, "S2r")
    carrier = direct_sum([stalk, top])[0]
    gamma_raw, t_raw = endomorphism_bimodule(carrier)
    gamma = FDAlgebra(field, gamma_raw.sc, gamma_raw.unit, name="Gamma")
    ws.algebras["Gamma"] = gamma
    ws.bimodules["T"] = Bimodule(gamma, alg, t_raw.left_action,
                                 t_raw.right_action, name="T")
    ws.samples["fix"] = ["S1", "S2", "P1"]
    ws.defaults = {"bound": 4, "degrees": [0, 1]}
    return workspace_to_dict(ws)


def corpus_local3() -> dict:
    field = Field(5)
    ws = Workspace(field, name="local3")
    sc = np.zeros((3, 3, 3), dtype=np.int64)
    for j in range(3):
        sc[0, j, j] = 1
        sc[j, 0, j] = 1
    alg = FDAlgebra(field, sc, [1, 0, 0], name="L3")
    ws.algebras["L3"] = alg
    ws.modules["k"] = _simple_module(alg)
    ws.modules["reg"] = _regular_left(alg)
    ws.modules["E"] = _envelope(alg)
    ws.bimodules["reg"] = _regular_bimodule(alg)
    ws.samples["basic"] = ["k", "reg", "E"]
    ws.defaults = {"bound": 4, "degrees": [0]}
    return workspace_to_dict(ws)


def corpus_poly2() -> dict:
    """Two-variable polynomial workspace: the ring, three cyclic quotients,
    a shifted mixed sum, and the four monomial ideals of the closed forms."""
    field = Field(5)
    ws = Workspace(field, name="poly2")
    ring = PolyRing(field, 2, ("x", "y"))
    ws.rings["R"] = ring
    R = free_graded(ring, [ring.zero_degree()], name="R")
    ws.graded_modules["R"] = R
    ws.graded_modules["Rx"] = quotient_by_monomials(ring, [(1, 0)], name="Rx")
    ws.graded_modules["Ry"] = quotient_by_monomials(ring, [(0, 1)], name="Ry")
    ws.graded_modules["point"] = quotient_by_monomials(
        ring, [(1, 0), (0, 1)], name="point")
    mixed = graded_direct_sum(
        [quotient_by_monomials(ring, [(1, 0)]),
         shift_graded(quotient_by_monomials(ring, [(1, 0)]), (1, 0))],
        name="mixed")
    ws.graded_modules["mixed"] = mixed
    ws.ideals["x"] = MonomialIdeal(ring, [(1, 0)], name="x")
    ws.ideals["y"] = MonomialIdeal(ring, [(0, 1)], name="y")
    ws.ideals["xy"] = MonomialIdeal(ring, [(1, 0), (0, 1)], name="xy")
    ws.ideals["zero"] = MonomialIdeal.zero(ring)
    ws.ideals["zero"].name = "zero"
    ws.samples["cyclic"] = ["R", "Rx", "Ry", "mixed"]
    ws.defaults = {"bound": 6, "box": [[-5, 5], [-5, 5]]}
    return workspace_to_dict(ws)


CORPUS = {"r2": corpus_r2, "r3": corpus_r3, "a2": corpus_a2,
          "local3": corpus_local3, "poly2": corpus_poly2}


def corpus_dict(name: str) -> dict:
    if name not in CORPUS:
        raise KeyError(f"no built-in corpus workspace named {name!r}")
    return CORPUS[name]()


def builtin_workspace(name: str) -> Workspace:
    """Build a shipped fixture directly, bypassing the data files."""
    return workspace_from_dict(corpus_dict(name), name=name)
