"""Algebras, modules, hom/tensor/duality.

Oracles: hom-space dimensions are cross-checked by brute-force enumeration of
all candidate matrices over F_5 (independent of the intertwining solver);
radical, projectivity and iso verdicts are frozen from hand calculations on
the serial fixtures (truncated polynomial rings, the 2-vertex path algebra).
"""

import random

import numpy as np
import pytest

from homolab.fdalg import (Bimodule, FDAlgebra, FDModule, HomFromFunctor,
                           HomIntoFunctor, ModuleMorphism, TensorFunctor,
                           adjunction_counit, adjunction_unit, biduality_unit,
                           direct_sum, endomorphism_bimodule, free_module,
                           generator_cover, hom_basis, hom_from, hom_into,
                           identity_morphism, is_injective, is_projective,
                           k_dual_module, minimal_generators,
                           module_iso_decision, module_iso_witness,
                           regular_bimodule, regular_module, tensor_over,
                           zero_module)
from homolab.linalg import Field, is_invertible

from conftest import a2, k_module, r2, r3, rep_module, truncated_poly_algebra

F5 = Field(5)


def brute_hom_dim(M, N, p=5):
    """Count intertwiners by enumerating all dN x dM matrices (oracle)."""
    dM, dN = M.dim, N.dim
    cells = dN * dM
    count = 0
    for idx in range(p ** cells):
        v = []
        t = idx
        for _ in range(cells):
            v.append(t % p)
            t //= p
        X = np.array(v, dtype=np.int64).reshape(dN, dM)
        ok = all(np.array_equal(np.dot(X, M.action[i]) % p,
                                np.dot(N.action[i], X) % p)
                 for i in range(M.algebra.dim))
        if ok:
            count += 1
    # size of the hom space is p^dim
    d = 0
    while p ** d < count:
        d += 1
    assert p ** d == count
    return d


# ---- algebra validation -----------------------------------------------------

def test_associativity_failure_names_triple():
    sc = np.zeros((2, 2, 2), dtype=np.int64)
    sc[0, 0, 0] = 1
    sc[0, 1, 1] = 1
    sc[1, 0, 1] = 1
    sc[1, 1, 0] = 1  # group algebra of Z/2: associative
    FDAlgebra(F5, sc, [1, 0], name="Z2grp")
    bad = a2().sc.copy()
    bad[0, 2, 2] = 1  # also declare e1*a = a: then (e2 e1)a = 0 but e2(e1 a) = a
    with pytest.raises(ValueError, match="associativity fails at basis triple"):
        FDAlgebra(F5, bad, [1, 1, 0], name="broken")


def test_unit_axiom_checked():
    sc = np.zeros((2, 2, 2), dtype=np.int64)
    sc[0, 0, 0] = 1
    sc[0, 1, 1] = 1
    sc[1, 0, 1] = 1
    with pytest.raises(ValueError, match="unit axiom"):
        FDAlgebra(F5, sc, [0, 1], name="badunit")


def test_commutativity_and_opposite():
    R = r3()
    assert R.is_commutative
    A = a2()
    assert not A.is_commutative
    Aop = A.opposite()
    assert np.array_equal(Aop.sc[0, 2], A.sc[2, 0])
    assert Aop.opposite() is A


def test_radical_strategies():
    R = r3()
    rb = R.radical_basis()
    assert rb.shape == (3, 2)  # span(x, x^2)
    assert np.all(rb[0, :] == 0)
    A = a2()
    arb = A.radical_basis()
    assert arb.shape == (3, 1) and list(arb[:, 0]) == [0, 0, 1]
    sc = a2().sc  # supplied radical must be verified
    with pytest.raises(ValueError, match="two-sided ideal"):
        FDAlgebra(F5, sc, [1, 1, 0], name="A2bad",
                  radical_basis=[[1], [0], [0]]).radical_basis()
    with pytest.raises(ValueError, match="nilpotent"):
        FDAlgebra(F5, sc, [1, 1, 0], name="A2bad2",
                  radical_basis=[[0, 0], [1, 0], [0, 1]]).radical_basis()
    # noncommutative without a supplied basis: trace-form kernel, certified
    plain = FDAlgebra(F5, sc, [1, 1, 0], name="A2plain")
    prb = plain.radical_basis()
    assert prb.shape == (3, 1) and list(prb[:, 0]) == [0, 0, 1]


# ---- modules and morphisms --------------------------------------------------

def test_module_axiom_validation():
    R = r2()
    with pytest.raises(ValueError, match="unit does not act"):
        FDModule(R, [[[0]], [[0]]], "left")
    with pytest.raises(ValueError, match="composition law"):
        FDModule(R, [[[1]], [[1]]], "left")  # x acts by 1 but x^2 = 0


def test_side_matters_for_noncommutative_actions():
    A = a2()
    # right regular module satisfies the right law, not the left one
    reg = regular_module(A, "right")
    assert reg.dim == 3
    with pytest.raises(ValueError):
        FDModule(A, reg.action, "left")


def test_morphism_validation_and_kernel_cokernel():
    A = a2()
    M2 = rep_module(A, 1, 1, [[1]])
    S1 = rep_module(A, 1, 0, [])
    proj = ModuleMorphism(M2, S1, [[1, 0]])  # quotient by the socle S2
    assert proj.is_epi() and not proj.is_mono()
    ker, incl = proj.kernel()
    assert ker.dim == 1
    # kernel is the socle S2: e2 acts as the identity there
    assert incl.matrix[1, 0] == 1 and ker.action[1][0, 0] == 1
    cok, pr = proj.compose(identity_morphism(M2)).cokernel()
    assert cok.dim == 0
    with pytest.raises(ValueError, match="intertwine"):
        ModuleMorphism(M2, S1, [[0, 1]])


def test_hom_basis_matches_brute_force_oracle():
    A = a2()
    S1 = rep_module(A, 1, 0, [])
    S2 = rep_module(A, 0, 1, [])
    M2 = rep_module(A, 1, 1, [[1]])
    pairs = [(M2, S1), (M2, S2), (S1, M2), (S2, M2), (M2, M2), (S1, S1)]
    for M, N in pairs:
        assert len(hom_basis(M, N)) == brute_hom_dim(M, N)
    R = r2()
    k = k_module(R)
    reg = regular_module(R, "left")
    for M, N in [(k, reg), (reg, k), (reg, reg), (k, k)]:
        assert len(hom_basis(M, N)) == brute_hom_dim(M, N)


def test_hom_basis_frozen_dims():
    A = a2()
    M2 = rep_module(A, 1, 1, [[1]])
    S1 = rep_module(A, 1, 0, [])
    S2 = rep_module(A, 0, 1, [])
    assert len(hom_basis(M2, S1)) == 1
    assert len(hom_basis(M2, S2)) == 0
    assert len(hom_basis(S2, M2)) == 1
    assert len(hom_basis(S1, M2)) == 0


def test_free_module_and_minimal_generators():
    R = r3()
    F2 = free_module(R, 2, "left")
    assert F2.dim == 6
    k = k_module(R)
    assert minimal_generators(k).shape == (1, 1)
    assert minimal_generators(regular_module(R, "left")).shape == (3, 1)
    F0, epi = generator_cover(regular_module(R, "left"))
    assert F0.dim == 3 and epi.is_epi() and epi.is_mono()


def test_projectivity_verdicts():
    R = r2()
    k = k_module(R)
    ok, sec = is_projective(regular_module(R, "left"))
    assert ok and sec is not None
    bad, _ = is_projective(k)
    assert not bad
    A = a2()
    assert is_projective(rep_module(A, 1, 1, [[1]]))[0]       # P1
    assert is_projective(rep_module(A, 0, 1, []))[0]          # P2 = S2
    assert not is_projective(rep_module(A, 1, 0, []))[0]      # S1
    # injectivity through duality: D(regular) is injective, k over R2 is not
    assert is_injective(k_dual_module(regular_module(R, "right")))[0]
    assert not is_injective(k)[0]


def test_k_dual_is_an_involution_on_the_nose():
    A = a2()
    M2 = rep_module(A, 1, 1, [[1]])
    DD = k_dual_module(k_dual_module(M2))
    assert DD.side == M2.side
    for a, b in zip(DD.action, M2.action):
        assert np.array_equal(a, b)


def test_tensor_and_hom_with_regular_bimodule():
    R = r2()
    T = regular_bimodule(R)
    k = k_module(R)
    tk = tensor_over(T, k)
    assert tk.dim == 1
    hk = hom_from(T, k)
    assert hk.dim == 1
    reg = regular_module(R, "left")
    assert tensor_over(T, reg).dim == 2
    assert hom_from(T, reg).dim == 2
    assert hom_into(reg, T).dim == 2
    assert hom_into(k, T).dim == 1  # Hom(k, R2) = soc


def test_unit_counit_formulas_regular_case():
    R = r2()
    T = regular_bimodule(R)
    F = TensorFunctor(T)
    G = HomFromFunctor(T)
    for M in [k_module(R), regular_module(R, "left")]:
        eta = adjunction_unit(F, G, M)
        assert eta.is_iso()
        eps = adjunction_counit(F, G, M)
        assert eps.is_iso()
        # triangle identity: eps_{FA} o F(eta_A) = id_{FA}
        tri = adjunction_counit(F, G, F.on_module(M)).compose(F.on_morphism(eta))
        assert np.array_equal(tri.matrix, np.eye(F.on_module(M).dim, dtype=np.int64))


def test_second_triangle_identity():
    R = r3()
    T = regular_bimodule(R)
    F = TensorFunctor(T)
    G = HomFromFunctor(T)
    for M in [k_module(R), regular_module(R, "left")]:
        # G(eps_B) o eta_{GB} = id_{GB}
        eps = adjunction_counit(F, G, M)
        tri = G.on_morphism(eps).compose(adjunction_unit(F, G, G.on_module(M)))
        assert np.array_equal(tri.matrix, np.eye(G.on_module(M).dim, dtype=np.int64))


def test_biduality_unit_is_evaluation_iso_for_frobenius_dual():
    R = r2()
    T = regular_bimodule(R)
    D = HomIntoFunctor(T)
    for M in [k_module(R), regular_module(R, "left")]:
        delta = biduality_unit(D, M)
        assert delta.is_iso()


def test_module_iso_witness_and_certified_negative():
    A = a2()
    M2 = rep_module(A, 1, 1, [[1]])
    M2b = rep_module(A, 1, 1, [[3]])  # isomorphic: rescale V2
    w = module_iso_witness(M2, M2b)
    assert w is not None and w.is_iso()
    split = direct_sum([rep_module(A, 1, 0, []), rep_module(A, 0, 1, [])])[0]
    verdict, _ = module_iso_decision(M2, split)
    assert verdict == "non-iso"
    verdict, _ = module_iso_decision(M2, rep_module(A, 2, 0, []))
    assert verdict == "non-iso"  # dim mismatch


def test_direct_sum_morphisms():
    R = r2()
    k = k_module(R)
    reg = regular_module(R, "left")
    S, injs, projs = direct_sum([k, reg, k])
    assert S.dim == 4
    for i, inj in enumerate(injs):
        comp = projs[i].compose(inj)
        assert np.array_equal(comp.matrix, np.eye(inj.source.dim, dtype=np.int64))


def test_endomorphism_bimodule_of_tilting_candidate():
    A = a2()
    # right module N (+) S2^r: N has basis (e2, a)
    N = FDModule(A, [[[0, 0], [0, 1]], [[1, 0], [0, 0]], [[0, 0], [1, 0]]],
                 "right", name="N")
    S2r = FDModule(A, [[[0]], [[1]], [[0]]], "right", name="S2r")
    T0 = direct_sum([N, S2r])[0]
    E, B = endomorphism_bimodule(T0)
    assert E.dim == 3
    assert not E.is_commutative
    assert B.dim == 3
    assert B.left_algebra is E and B.right_algebra is A


def test_zero_module_is_first_class():
    R = r2()
    z = zero_module(R)
    assert z.is_zero
    assert hom_basis(z, k_module(R)) == []
    assert tensor_over(regular_bimodule(R), z).dim == 0


def test_random_morphism_rank_nullity_property():
    rng = random.Random(5)
    A = a2()
    mods = [rep_module(A, 1, 1, [[1]]), rep_module(A, 1, 0, []),
            rep_module(A, 0, 1, []), rep_module(A, 2, 1, [[1, 0]])]
    for _ in range(40):
        M = mods[rng.randrange(len(mods))]
        N = mods[rng.randrange(len(mods))]
        basis = hom_basis(M, N)
        if not basis:
            continue
        mat = sum(rng.randint(0, 4) * b for b in basis) % 5
        f = ModuleMorphism(M, N, mat)
        ker, _ = f.kernel()
        cok, _ = f.cokernel()
        r = M.dim - ker.dim
        assert cok.dim == N.dim - r
