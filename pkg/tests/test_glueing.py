from fractions import Fraction as F

import pytest

from pcoh import bang as B
from pcoh import kernel as K
from pcoh.duality import GenSet, bipolar_member
from pcoh.errors import ModeError, ShapeError
from pcoh.glueing import (
    POLAR, Defined, GlueObject, PcohObject, Points, as_glue, check_why_not_candidate, dual,
    g_impl, g_par, g_plus, g_tensor, g_unit, g_with, is_glue_morphism, is_glue_morphism_both,
    is_slack, is_tight, pcoh_bang, pcoh_dual, pcoh_is_morphism, pcoh_morphism_report, pcoh_plus,
    pcoh_tensor, pcoh_unit, pcoh_with, structurally_equal, validate_pcoh,
)
from pcoh.kernel import Kernel
from pcoh.scalar import INF, ONE, ZERO
from pcoh.space import UNIT, exp_web, web

S, AB = UNIT, web("a", "b")


def obj(w, gens):
    return PcohObject.of(w, gens)


def test_validate_examples():
    rep = validate_pcoh(obj(AB, [(1, 0), (0, 1)]))
    assert rep.valid and [a.sup for a in rep.atoms] == [1, 1]
    rep = validate_pcoh(obj(AB, [(1, 0)]))
    assert not rep.valid and rep.atoms[1].sup == 0 and rep.atoms[1].polar_sup is INF
    rep = validate_pcoh(obj(web("a"), []))
    assert not rep.valid and rep.atoms[0].polar_sup is INF


def test_validate_reports_reciprocal_sups():
    rep = validate_pcoh(obj(AB, [(F(1, 2), 2)]))
    assert [a.sup for a in rep.atoms] == [F(1, 2), 2]
    assert [a.polar_sup for a in rep.atoms] == [2, F(1, 2)]


def test_dual_is_involutive_and_preserves_tightness():
    A = GlueObject(S, GenSet(S, [(1,)]), GenSet(S, [(1,)]), "bipolar")
    assert structurally_equal(dual(dual(A)), A)
    assert is_tight(A) and is_tight(dual(A))


def test_tight_examples():
    assert is_tight(GlueObject(S, GenSet(S, [(1,)]), GenSet(S, [(1,)])))
    B_ = GlueObject(S, GenSet(S, [(2,)]), GenSet(S, [(1,)]))
    assert not is_slack(B_) and not is_tight(B_)
    assert is_slack(GlueObject(S, GenSet(S, [(F(1, 2),)]), GenSet(S, [(1,)])))
    assert not is_tight(GlueObject(S, GenSet(S, [(F(1, 2),)]), GenSet(S, [(1,)])))


def test_connective_examples():
    one = obj(S, [(1,)])
    t = pcoh_tensor(one, one)
    assert len(t.web) == 1 and t.gens.gens == ((1,),)
    u = g_unit()
    assert u.web == UNIT and u.U.gens == ((ONE,),) and u.R is POLAR
    X, Y = obj(AB, [(1, 0), (0, 1)]), obj(S, [(F(1, 2),)])
    W = pcoh_with(X, Y)
    for z, want in [((1, 0, F(1, 2)), True), ((F(1, 2), F(1, 2), F(1, 2)), True), ((1, 0, 1), False)]:
        assert bipolar_member(W.gens, z) == want
    P = pcoh_plus(X, Y)
    assert bipolar_member(P.gens, (F(1, 2), 0, F(1, 4)))
    assert not bipolar_member(P.gens, (1, 0, F(1, 2)))


def test_star_autonomy_shape():
    A, B_ = as_glue(obj(AB, [(1, 0)])), as_glue(obj(S, [(1,)]))
    assert structurally_equal(dual(g_tensor(A, B_)), g_par(dual(A), dual(B_)))
    imp = g_impl(A, B_)
    assert structurally_equal(imp, g_par(dual(A), B_))


def test_exact_mode_tensor_uses_membership():
    A = GlueObject(S, Points(S, [(F(1, 2),)]), Points(S, [(2,)]), "exact")
    T = g_tensor(A, A)
    assert isinstance(T.R, Defined)
    # literal sets: h is a tensor copoint iff (1/2) h lands exactly on (2)
    assert (4,) in T.R and (1,) not in T.R and (5,) not in T.R
    with pytest.raises(ModeError):
        is_glue_morphism(K.identity(T.web), T, T)


def test_mode_validation():
    with pytest.raises(ModeError):
        GlueObject(S, GenSet(S, [(1,)]), Points(S, [(1,)]), "bipolar")
    with pytest.raises(ModeError):
        GlueObject(S, POLAR, POLAR, "bipolar")
    with pytest.raises(ShapeError):
        GlueObject(S, GenSet(AB, [(1, 0)]), POLAR)


def test_exact_biproduct():
    A = GlueObject(S, Points(S, [(1,)]), Points(S, [(1,)]), "exact")
    B_ = GlueObject(web("b"), Points(web("b"), [(F(1, 2),)]), Points(web("b"), [(2,)]), "exact")
    m = K.biproduct_maps(S, web("b"))
    assert is_glue_morphism(m["proj_x"], g_with(A, B_), A)
    assert is_glue_morphism(m["inj_y"], B_, g_plus(A, B_))


def test_bipolar_morphism_both_directions():
    X, Y = as_glue(obj(AB, [(1, 0), (0, 1)])), as_glue(obj(S, [(1,)]))
    k = Kernel(AB, S, [(0, 0, F(1, 2)), (1, 0, 1)])
    assert is_glue_morphism(k, X, Y) and is_glue_morphism_both(k, X, Y) == (True, True)
    k2 = K.scale(3, k)
    assert not is_glue_morphism(k2, X, Y) and is_glue_morphism_both(k2, X, Y) == (False, False)


def test_why_not_candidate():
    A = GlueObject(S, Points(S, [(F(1, 2),)]), Points(S, [(1,)]), "exact")
    N = 2
    d, w = B.dereliction(S, N), B.weakening(S, N)
    cand = [K.pull(d, (1,)), K.pull(w, (1,))]
    assert check_why_not_candidate(A, N, cand)["ok"]
    rep = check_why_not_candidate(A, N, cand[1:])
    assert not rep["ok"] and rep["derelictions"] == [0]


def test_pcoh_bang_examples():
    X = obj(S, [(1,)])
    assert pcoh_bang(X, 2).gens.gens == ((1, 1, 1),)
    Xh = obj(S, [(F(1, 2),)])
    assert pcoh_bang(Xh, 2).gens.gens == ((1, F(1, 2), F(1, 4)),)
    for Z in (X, Xh):
        assert pcoh_is_morphism(B.dereliction(S, 2), pcoh_bang(Z, 2), Z)


def test_pcoh_morphism_examples():
    X = obj(AB, [(1, 0), (0, 1)])
    assert pcoh_is_morphism(K.identity(AB), X, X)
    one = obj(S, [(1,)])
    assert not pcoh_is_morphism(Kernel(S, S, [(0, 0, 2)]), one, one)
    assert not pcoh_is_morphism(Kernel(S, S, [(0, 0, 3)]), one, one)
    t = Kernel(AB, AB, [(0, 0, F(1, 2)), (0, 1, F(1, 2)), (1, 1, F(2, 3))])
    assert pcoh_is_morphism(t, X, X)
    half = Kernel(S, web("b"), [(0, 0, F(1, 2))])
    Y = obj(web("b"), [(1,)])
    assert pcoh_is_morphism(B.bang(half, 2), pcoh_bang(one, 2), pcoh_bang(Y, 2))
    rep = pcoh_morphism_report(Kernel(S, S, [(0, 0, 3)]), one, one)
    assert rep[0].image == (3,) and rep[0].optimum == 3 and not rep[0].ok


def test_pcoh_dual():
    D = pcoh_dual(obj(AB, [(1, 0), (0, 1)]))
    assert set(D.gens.gens) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    with pytest.raises(ModeError):
        pcoh_dual(obj(AB, [(1, 0)]))


def test_pcoh_structure_maps_are_morphisms():
    X = obj(AB, [(1, F(1, 2)), (0, 1)])
    N, M = 2, 2
    bx = pcoh_bang(X, N)
    assert pcoh_is_morphism(B.storage(AB, N, M), bx, pcoh_bang(bx, M))
    assert pcoh_is_morphism(B.weakening(AB, N), bx, pcoh_unit())
    assert pcoh_is_morphism(B.contraction(AB, N), bx, pcoh_tensor(bx, bx))
    assert pcoh_is_morphism(B.mon_unit(N), pcoh_unit(), pcoh_bang(pcoh_unit(), N))


def test_pcoh_object_rejects_infinite_generators():
    from pcoh.errors import InfiniteEntryError
    with pytest.raises(InfiniteEntryError):
        obj(S, [(INF,)])
