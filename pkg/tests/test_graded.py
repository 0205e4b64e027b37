"""Multigraded pieces, box-certified local cohomology, and the duality
cross-check over two-variable polynomial fixtures.

Closed forms frozen ahead of time over R = F5[x,y].  Along (x) the only
cohomology row of R is 1, one-dimensional exactly on u1 <= -1, u2 >= 0;
along (x,y) the only row is 2, supported on u1 <= -1 and u2 <= -1; the
hypersurface quotient R/(x) is all torsion along (x), so row 0 carries its
pieces and row 1 dies.  Duality kernel tables: along (x) dimension one
exactly on u1 >= 1, u2 <= 0; along (x,y) exactly on u >= (1,1); along the
zero ideal the dual of the ring, u <= 0.  Koszul depths: 2 for (x,y) on R,
1 for (x) on R, 0 for (x) on R/(x), 1 for (x,y) on R/(x).
"""

import itertools
import json

import pytest

from conftest import F5
from homolab.graded import (CechTable, GradedModule, MonomialIdeal, PolyRing,
                            cech_cohomology, cm_category_membership,
                            duality_crosscheck, free_graded, graded_direct_sum,
                            graded_piece, graded_resolution, koszul_depth,
                            localized_piece, omega_pieces, quotient_by_monomials,
                            relative_cm_check, shift_graded, torsion_dim,
                            verify_resolution)

BOX5 = [(-5, 5), (-5, 5)]
BOX3 = [(-3, 3), (-3, 3)]


def ring2():
    return PolyRing(F5, 2)


def mixed_sum(ring):
    """R/(x) plus a copy shifted one step in the x direction."""
    a = quotient_by_monomials(ring, [(1, 0)])
    b = shift_graded(quotient_by_monomials(ring, [(1, 0)]), (1, 0))
    return graded_direct_sum([a, b], name="mixed")


def box_cells(box):
    return itertools.product(*[range(lo, hi + 1) for lo, hi in box])


def h_oracle_x(i, u):
    if i == 1 and u[0] <= -1 and u[1] >= 0:
        return 1
    return 0


def h_oracle_xy(i, u):
    if i == 2 and u[0] <= -1 and u[1] <= -1:
        return 1
    return 0


def h_oracle_quot(i, u):
    if i == 0 and u[0] == 0 and u[1] >= 0:
        return 1
    return 0


def test_ring_names_and_ideals():
    ring = ring2()
    assert ring.names == ("x", "y")
    assert ring.monomial_name((2, 1)) == "x^2*y"
    assert ring.monomial_name((0, 0)) == "1"
    assert MonomialIdeal(ring, [(1, 0), (0, 1)]).name == "(x,y)"
    assert MonomialIdeal.zero(ring).name == "0"
    assert MonomialIdeal.zero(ring).is_zero
    with pytest.raises(ValueError):
        PolyRing(F5, 0)
    with pytest.raises(ValueError):
        MonomialIdeal(ring, [(0, 0)])
    with pytest.raises(ValueError):
        MonomialIdeal(ring, [(-1, 2)])


def test_pieces_and_multiplication():
    ring = ring2()
    R = quotient_by_monomials(ring, [])
    assert R.piece_dim((2, 1)) == 1
    assert R.piece_dim((0, 0)) == 1
    assert R.piece_dim((-1, 0)) == 0
    quot = quotient_by_monomials(ring, [(0, 1)])
    for a in range(-2, 4):
        assert quot.piece_dim((a, 0)) == (1 if a >= 0 else 0)
        assert quot.piece_dim((a, 1)) == 0
    tw = shift_graded(R, (1, 0))
    assert tw.piece_dim((1, 0)) == 1 and tw.piece_dim((0, 0)) == 0
    assert graded_piece(R, (2, 1)).monomials() == ["x^2*y.g0"]

    sq = quotient_by_monomials(ring, [(2, 0)])
    step0 = sq.mult_matrix(0, (0, 0))
    assert step0.shape == (1, 1) and int(step0[0, 0]) != 0
    assert sq.piece_dim((2, 0)) == 0
    assert sq.mult_matrix(0, (1, 0)).shape == (0, 1)

    with pytest.raises(ValueError):
        GradedModule(ring, [(0, 0), (1, 0)],
                     [[(0, 1, (1, 0)), (1, 1, (1, 0))]], name="bad")
    with pytest.raises(ValueError):
        GradedModule(ring, [(0, 0)], [[(3, 1, (1, 0))]], name="bad")


def test_localized_pieces():
    ring = ring2()
    R = quotient_by_monomials(ring, [])
    lp = localized_piece(R, [0], (-2, 1))
    assert lp.dim == 1 and lp.stable and lp.level >= 2
    cert = lp.certificate()
    assert cert["monomial"] == "x" and cert["stable"]
    assert cert["steps_verified"] >= 2

    quot = quotient_by_monomials(ring, [(1, 0)])
    for u in [(0, 0), (-1, 2), (3, -1)]:
        assert localized_piece(quot, [0], u).dim == 0
    # inverting y on R/(y) kills everything, inverting x keeps the y-degree 0 line
    quo_y = quotient_by_monomials(ring, [(0, 1)])
    assert localized_piece(quo_y, [1], (2, 0)).dim == 0
    assert localized_piece(quo_y, [0], (-3, 0)).dim == 1
    assert localized_piece(quo_y, [0], (-3, 1)).dim == 0

    for u in [(0, 0), (-1, -1), (2, 1)]:
        assert localized_piece(R, [], u).dim == R.piece_dim(u)
    with pytest.raises(ValueError):
        localized_piece(R, [7], (0, 0))


def test_cech_closed_forms():
    ring = ring2()
    R = quotient_by_monomials(ring, [])
    quot = quotient_by_monomials(ring, [(1, 0)])
    ideal_x = MonomialIdeal(ring, [(1, 0)])
    ideal_xy = MonomialIdeal(ring, [(1, 0), (0, 1)])

    table = cech_cohomology(R, ideal_x, BOX5)
    assert isinstance(table, CechTable) and table.conclusive
    for u in box_cells(BOX5):
        for i in range(2):
            assert table.dim(i, u) == h_oracle_x(i, u)
    assert table.nonvanishing_rows() == [1]

    table = cech_cohomology(R, ideal_xy, BOX5)
    for u in box_cells(BOX5):
        for i in range(3):
            assert table.dim(i, u) == h_oracle_xy(i, u)
    assert table.nonvanishing_rows() == [2]
    assert all(entry["stable"] for entry in table.stabilization)

    table = cech_cohomology(quot, ideal_x, BOX5)
    for u in box_cells(BOX5):
        for i in range(2):
            assert table.dim(i, u) == h_oracle_quot(i, u)

    # zero ideal: row 0 is the module itself
    table = cech_cohomology(R, MonomialIdeal.zero(ring), BOX3)
    for u in box_cells(BOX3):
        assert table.dim(0, u) == R.piece_dim(u)

    blob = json.dumps(table.as_dict())
    assert json.loads(blob)["ideal"] == "0"


def test_torsion_row_matches_saturation():
    ring = ring2()
    R = quotient_by_monomials(ring, [])
    quot = quotient_by_monomials(ring, [(1, 0)])
    mixed = mixed_sum(ring)
    ideal_x = MonomialIdeal(ring, [(1, 0)])
    ideal_xy = MonomialIdeal(ring, [(1, 0), (0, 1)])
    for M, a in [(R, ideal_x), (quot, ideal_x), (R, ideal_xy),
                 (mixed, ideal_x), (mixed, ideal_xy)]:
        table = cech_cohomology(M, a, BOX3)
        for u in box_cells(BOX3):
            assert table.dim(0, u) == torsion_dim(M, a, u)


def test_koszul_depth_values():
    ring = ring2()
    R = quotient_by_monomials(ring, [])
    quot = quotient_by_monomials(ring, [(1, 0)])
    ideal_x = MonomialIdeal(ring, [(1, 0)])
    ideal_xy = MonomialIdeal(ring, [(1, 0), (0, 1)])

    out = koszul_depth(ideal_xy, R)
    assert out["value"] == 2 and out["certified"]
    assert out["witness"]["row"] == 2 and out["pattern_complete"]
    assert koszul_depth(ideal_x, R)["value"] == 1
    assert koszul_depth(ideal_x, quot)["value"] == 0
    assert koszul_depth(ideal_xy, quot)["value"] == 1
    # raw generator lists and the zero ideal are accepted
    assert koszul_depth([(1, 0)], R)["value"] == 1
    assert koszul_depth(MonomialIdeal.zero(ring), R)["value"] == 0

    none = koszul_depth(ideal_x, free_graded(ring, [], name="0"))
    assert none["status"] == "infinite" and none["value"] is None


def test_relative_cm_verdicts():
    ring = ring2()
    R = quotient_by_monomials(ring, [])
    quot = quotient_by_monomials(ring, [(1, 0)])
    mixed = mixed_sum(ring)
    ideal_x = MonomialIdeal(ring, [(1, 0)])
    ideal_xy = MonomialIdeal(ring, [(1, 0), (0, 1)])

    rep = relative_cm_check(R, ideal_x, BOX5)
    assert rep.verdict.startswith("relative Cohen-Macaulay")
    assert rep.t == 1 and rep.c == 1 and rep.cd == 1
    assert rep.strooker_match
    assert rep.ring_case == {"c": 1,
                             "cohomologically_complete_intersection": True}

    rep = relative_cm_check(R, ideal_xy, BOX5)
    assert rep.t == 2 and rep.ring_case["cohomologically_complete_intersection"]

    rep = relative_cm_check(R, MonomialIdeal.zero(ring), BOX3)
    assert rep.t == 0 and rep.strooker_match

    rep = relative_cm_check(mixed, ideal_x, BOX3)
    assert rep.t == 0 and rep.verdict.endswith("dimension 0")

    rep = relative_cm_check(quot, ideal_xy, BOX5)
    assert rep.t == 1 and rep.strooker_match

    json.dumps(rep.as_dict())

    # x*(y,z) in three variables: cohomology in rows 1 and 2, depth 1
    ring3 = PolyRing(F5, 3)
    R3 = quotient_by_monomials(ring3, [])
    glued = MonomialIdeal(ring3, [(1, 1, 0), (1, 0, 1)])
    rep = relative_cm_check(R3, glued, [(-3, 3)] * 3)
    assert rep.verdict == "not relative Cohen-Macaulay within the box"
    assert rep.table.nonvanishing_rows() == [1, 2]
    assert rep.depth["value"] == 1 and rep.cd == 2
    assert not rep.ring_case["cohomologically_complete_intersection"]

    with pytest.raises(ValueError):
        relative_cm_check(R, ideal_x, [(-3, 3)])
    with pytest.raises(ValueError):
        relative_cm_check(R, ideal_x, [(3, -3), (-3, 3)])


def test_box_monotonicity():
    ring = ring2()
    R = quotient_by_monomials(ring, [])
    quot = quotient_by_monomials(ring, [(1, 0)])
    ideal_x = MonomialIdeal(ring, [(1, 0)])
    ideal_xy = MonomialIdeal(ring, [(1, 0), (0, 1)])
    for M, a in [(R, ideal_x), (quot, ideal_xy)]:
        small = cech_cohomology(M, a, BOX3)
        large = cech_cohomology(M, a, BOX5)
        for u in box_cells(BOX3):
            for i in range(len(a.gens) + 1):
                assert small.dim(i, u) == large.dim(i, u)
        assert relative_cm_check(M, a, BOX3).t == \
            relative_cm_check(M, a, BOX5).t


def test_omega_tables():
    ring = ring2()
    out = omega_pieces(MonomialIdeal(ring, [(1, 0)]), BOX5)
    assert out["c"] == 1
    want = {(a, b): 1 for a in range(1, 6) for b in range(-5, 1)}
    assert out["dims"] == want

    out = omega_pieces(MonomialIdeal(ring, [(1, 0), (0, 1)]), BOX5)
    assert out["c"] == 2
    assert out["dims"] == {(a, b): 1 for a in range(1, 6) for b in range(1, 6)}

    out = omega_pieces(MonomialIdeal.zero(ring), BOX3)
    assert out["c"] == 0
    assert out["dims"] == {(a, b): 1 for a in range(-3, 1) for b in range(-3, 1)}

    ring3 = PolyRing(F5, 3)
    with pytest.raises(ValueError):
        omega_pieces(MonomialIdeal(ring3, [(1, 1, 0), (1, 0, 1)]),
                     [(-2, 2)] * 3)


def test_graded_resolution_koszul_shape():
    ring = ring2()
    M = quotient_by_monomials(ring, [(1, 0), (0, 1)])
    res = graded_resolution(M, 3)
    assert res["generator_degrees"] == [[(0, 0)], [(1, 0), (0, 1)],
                                        [(1, 1)], []]
    comp = F5.mat_mul(res["maps"][0], res["maps"][1])
    assert F5.equal(comp, F5.zeros(comp.shape))
    ver = verify_resolution(M, res)
    assert ver["exact"] and ver["pattern_complete"]

    mixed = mixed_sum(ring)
    ver = verify_resolution(mixed, graded_resolution(mixed, 3))
    assert ver["exact"]


def test_duality_crosscheck_runs_clean():
    ring = ring2()
    R = quotient_by_monomials(ring, [])
    mods = [R, quotient_by_monomials(ring, [(1, 0)]),
            quotient_by_monomials(ring, [(0, 1)]), mixed_sum(ring)]
    ideals = [MonomialIdeal(ring, [(1, 0)]),
              MonomialIdeal(ring, [(1, 0), (0, 1)]),
              MonomialIdeal.zero(ring)]
    for M in mods:
        for a in ideals:
            out = duality_crosscheck(M, a, BOX3)
            assert out["status"] == "ran", (M.name, a.name)
            assert out["all_zero"] and out["max_abs_residual"] == 0, \
                (M.name, a.name)
            assert out["resolution"]["verification"]["exact"]

    # one table frozen by hand: Ext^1 of R/(x) into the kernel along (x)
    out = duality_crosscheck(mods[1], ideals[0], BOX3)
    assert out["c"] == 1
    assert out["ext_dims"][0] == {}
    assert out["ext_dims"][1] == {(0, b): 1 for b in range(-3, 1)}
    assert out["local_dims"][1] == out["ext_dims"][1]


def test_cm_category_membership():
    ring = ring2()
    R = quotient_by_monomials(ring, [])
    ideal_x = MonomialIdeal(ring, [(1, 0)])
    rep = cm_category_membership(R, ideal_x, 1, BOX5)
    assert rep.verdict == "member" and rep.witness is None
    rep = cm_category_membership(R, ideal_x, 0, BOX5)
    assert rep.verdict == "non-member"
    assert rep.witness["row"] == 1 and rep.witness["dim"] == 1

    zero = free_graded(ring, [], name="0")
    for t in range(3):
        assert cm_category_membership(zero, ideal_x, t, BOX3).verdict == \
            "member"

    mixed = mixed_sum(ring)
    assert cm_category_membership(mixed, ideal_x, 0, BOX3).verdict == "member"
    assert any("box" in note for note in
               cm_category_membership(mixed, ideal_x, 0, BOX3).notes)
