"""Dualizing and tilting suites: the generalized-tilting gate, equivalences
of both variances, generation and resolution classes, and the finite local
dualities.

Frozen expectations: over F5[x]/(x^n) the dual of the algebra is the algebra
itself up to isomorphism, the simple has periodic syzygies avoiding the free
class forever, the 3-dimensional local algebras have 3-dimensional envelopes
with simple socle, and the 2-vertex tilt passes the full covariant suite in
degrees 0 and 1 with the classical class split.
"""

import numpy as np
import pytest

from conftest import (F5, a2, a2_tilting, k_module, local3, r2, r3,
                      rep_module, serial_cyclic)
from homolab.derived import AdjointPair
from homolab.fdalg import (Bimodule, FDAlgebra, direct_sum, k_dual_module,
                           regular_bimodule, regular_module, zero_module)
from homolab.tiltlib import (check_wakamatsu, cogen_membership,
                             cores_membership, gen_membership, res_membership,
                             run_bbh_suite, run_foxby_suite, run_matlis_suite,
                             run_sharp_suite, run_wakamatsu_duality_suite,
                             socle_dimension)


def k_bimodule(alg):
    acts = [[[1]] if i == 0 else [[0]] for i in range(alg.dim)]
    return Bimodule(alg, alg, acts, acts, name="k")


def split_semisimple():
    sc = np.zeros((2, 2, 2), dtype=np.int64)
    sc[0, 0, 0] = 1
    sc[1, 1, 1] = 1
    return FDAlgebra(F5, sc, [1, 1], name="F5xF5")


def test_wakamatsu_regular_and_dual():
    for alg in (r2(), r3()):
        rep = check_wakamatsu(regular_bimodule(alg), 4)
        assert rep["passes"] and rep["certified"]
        assert rep["w2"]["left"] == {"status": "holds", "certified": True}
        assert rep["w3"]["into_left_endomorphisms"]["holds"]
        assert rep["w3"]["into_right_endomorphisms"]["holds"]
        assert rep["pd_left"] == \
            {"status": "finite", "value": 0, "certified": True}
        dual = check_wakamatsu(regular_bimodule(alg).k_dual(), 4)
        assert dual["passes"]
        assert dual["id_left"]["value"] == 0


def test_wakamatsu_fails_on_residue_field():
    rep = check_wakamatsu(k_bimodule(r2()), 4)
    assert not rep["passes"]
    assert rep["w2"]["left"]["status"] == "fails"
    assert rep["w2"]["left"]["certified"]
    w3 = rep["w3"]["into_left_endomorphisms"]
    assert not w3["bijective"]
    assert w3["algebra_dim"] == 2 and w3["endomorphism_dim"] == 1


def test_bbh_suite_on_tilting_fixture():
    A, gamma, T = a2_tilting()
    S1 = rep_module(A, 1, 0, [])
    S2 = rep_module(A, 0, 1, [])
    M2 = rep_module(A, 1, 1, [[1]])
    pair = AdjointPair(T)
    cos = [pair.F.on_module(S2), pair.F.on_module(M2),
           pair.unit_data(S1, 1, 3).image]
    rep = run_bbh_suite(T, (0, 1), [S1, S2, M2], 3, cosamples=cos)
    assert rep["status"] == "ran" and rep["all_pass"]
    assert rep["tilting"]["passes"]
    assert rep["wakamatsu"]["passes"]
    mem0 = [e["membership"] for e in rep["degrees"][0]["samples"]]
    mem1 = [e["membership"] for e in rep["degrees"][1]["samples"]]
    assert mem0 == ["non-member", "member", "member"]
    assert mem1 == ["member", "non-member", "non-member"]
    for run in rep["degrees"].values():
        for e in run["samples"] + run["cosamples"]:
            assert e["simplified_consistent"]
            if e["membership"] == "member":
                assert e["pass"] and e["triangle"]


def test_bbh_suite_skips_without_the_preconditions():
    rep = run_bbh_suite(k_bimodule(r2()), (0,), [k_module(r2())], 4)
    assert rep["status"] == "skipped"
    assert not rep["precondition"]["wakamatsu"]
    assert rep["all_pass"] is False


def test_wakamatsu_duality_frobenius_and_dualizing():
    alg = r2()
    k = k_module(alg)
    reg = regular_module(alg)
    for C in (regular_bimodule(alg), regular_bimodule(alg).k_dual()):
        rep = run_wakamatsu_duality_suite(C, (0,), [k, reg], 4,
                                          cosamples=[k_dual_module(k),
                                                     k_dual_module(reg)])
        assert rep["status"] == "ran" and rep["all_pass"]
        for e in rep["degrees"][0]:
            assert e["membership"] == "member" and e["pass"]
            assert e["round_trip_iso"]


def test_wakamatsu_duality_hereditary_exclusions():
    A = a2()
    S1 = rep_module(A, 1, 0, [])
    S2 = rep_module(A, 0, 1, [])
    M2 = rep_module(A, 1, 1, [[1]])
    rep = run_wakamatsu_duality_suite(regular_bimodule(A), (0, 1),
                                      [S1, S2, M2], 3)
    assert rep["status"] == "ran" and rep["all_pass"]
    deg0 = {e["module"]: e for e in rep["degrees"][0]}
    assert deg0["rep(1,0)"].get("excluded")
    assert deg0["rep(0,1)"]["pass"] and deg0["rep(1,1)"]["pass"]
    deg1 = {e["module"]: e for e in rep["degrees"][1]}
    assert deg1["rep(1,0)"]["pass"]
    assert deg1["rep(0,1)"].get("excluded")
    assert deg1["rep(1,1)"].get("excluded")


def test_foxby_suite_serial():
    R = r3()
    C = regular_bimodule(R).k_dual()
    k = k_module(R)
    c2 = serial_cyclic(R, 2)
    reg = regular_module(R)
    rep = run_foxby_suite(C, (0,), [k, c2, reg], 4)
    assert rep["status"] == "ran" and rep["all_pass"]
    entries = rep["degrees"][0]["samples"]
    assert [e["dim"] for e in entries] == [1, 2, 3]
    for e in entries:
        assert e["membership"] == "member" and e["pass"]
    # the suite's verdicts are the membership machinery's, on the nose
    pair = AdjointPair(C)
    for M in (k, c2, reg):
        assert pair.fix_membership(M, 0, 4)["status"] == "member"
    with pytest.raises(ValueError):
        run_foxby_suite(a2_tilting()[2], (0,), [], 3)


def test_gen_res_membership():
    R = r3()
    reg = regular_module(R)
    k = k_module(R)
    c2 = serial_cyclic(R, 2)
    for M in (k, c2, reg):
        rep = gen_membership(M, reg, 0)
        assert rep["member"] and rep["certified"] and rep["witness_exact"]
    rep = gen_membership(reg, c2, 0)
    assert not rep["member"] and rep["certified"]
    assert rep["failed_stage"] == 0
    # the simple admits no finite resolution by frees: periodic syzygies
    rep = res_membership(k, reg, 3)
    assert not rep["member"] and rep["certified"]
    assert rep["fails_at_every_depth"]["period"] == (0, 2)
    rep = res_membership(direct_sum([reg, reg])[0], reg, 0)
    assert rep["member"] and rep["certified"]
    rep = res_membership(c2, reg, 0)
    assert not rep["member"] and rep["certified"]
    # duality wrappers
    E = k_dual_module(regular_module(R, "right"))
    rep = cogen_membership(k, E, 0)
    assert rep["member"] and rep["kind"] == "cogen"
    rep = cores_membership(direct_sum([E, E])[0], E, 0)
    assert rep["member"] and rep["kind"] == "cores"


def test_matlis_suite_three_rings():
    for R in (r2(), r3(), local3()):
        k = k_module(R)
        reg = regular_module(R)
        E = k_dual_module(regular_module(R, "right"))
        rep = run_matlis_suite(R, [k, reg, direct_sum([k, reg])[0], E])
        assert rep["all_pass"]
        assert rep["envelope"]["is_envelope"]
        assert rep["envelope"]["dim"] == R.dim
        assert rep["envelope"]["socle_dim"] == 1
        for e in rep["samples"]:
            assert e["dims_match"] and e["double_dual_iso"]
            assert e["correspondence"] and e["pass"]
    with pytest.raises(ValueError):
        run_matlis_suite(a2(), [])
    with pytest.raises(ValueError):
        run_matlis_suite(split_semisimple(), [])


def test_sharp_suite():
    for R in (r2(), local3()):
        reg = regular_module(R)
        E = k_dual_module(regular_module(R, "right"))
        samples = [reg, direct_sum([reg, reg])[0], E, zero_module(R, "left"),
                   k_module(R)]
        rep = run_sharp_suite(R, samples)
        assert rep["all_pass"]
        e_reg, e_reg2, e_E, e_zero, e_k = rep["samples"]
        assert e_reg["projective"] and e_reg2["pass"]
        checks = {c["name"]: c for c in e_reg["checks"]}
        assert checks["tensor-lands-injective"]["image_dim"] == R.dim
        assert checks["unit-iso"]["holds"]
        assert e_E["injective"]
        checks = {c["name"]: c for c in e_E["checks"]}
        assert checks["hom-lands-projective"]["image_dim"] == R.dim
        assert checks["counit-iso"]["holds"]
        assert e_zero["checks"] == [{"name": "zero-to-zero", "holds": True}]
        assert e_k.get("skipped") and e_k["pass"]


def test_socle_dimension():
    assert socle_dimension(regular_module(r3())) == 1
    assert socle_dimension(regular_module(local3())) == 2
    assert socle_dimension(k_module(r2())) == 1
