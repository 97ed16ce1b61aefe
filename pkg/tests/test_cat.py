import pytest

from conftest import fixture
from rootoidlab.cat import (PrdMorphism, check_prd_morphism, complete_structure, compose_morphisms,
                            cover, grade_morphism, identity_morphism, is_covering, restriction,
                            theta_perp)
from rootoidlab.classify import PreconditionError, abridge, classify
from rootoidlab.poset import find_isomorphism
from rootoidlab.setalg import PartialMap


def test_identity_is_in_every_grade():
    for name in ("A2", "B2", "arr_A2"):
        g = grade_morphism(identity_morphism(fixture(name)))
        assert g.in_prd and g.in_rd and g.in_Rd and g.in_RdE


def test_identity_composes():
    P = fixture("A2")
    i = identity_morphism(P)
    ii = compose_morphisms(i, i)
    assert ii.alpha.mor_map == i.alpha.mor_map
    assert [m.table for m in ii.mu] == [m.table for m in i.mu]


def test_corrupted_mu_is_rejected():
    P = fixture("A2")
    T = P.rep.grounds[0]
    # swap r and s in the ring map but keep the functor the identity
    table = list(range(len(T)))
    r, s = T.index("r"), T.index("s")
    table[r], table[s] = table[s], table[r]
    f = identity_morphism(P)
    bad = PrdMorphism(P, P, f.alpha, [PartialMap.from_table(T, T, table)])
    v = check_prd_morphism(bad)
    assert not v
    assert not grade_morphism(bad).in_prd


def test_cover_of_a2():
    P = fixture("A2")
    Q, f = cover(P)
    assert Q.G.n_objects == 6 and Q.G.n_morphisms == 36
    assert is_covering(f)
    W = P.weak_order(0).poset
    for a in range(6):
        assert find_isomorphism(Q.weak_order(a).poset, W) is not None
    assert classify(Q).flags() | {"connected": None, "simply_connected": None} == \
        classify(P).flags() | {"connected": None, "simply_connected": None}
    assert classify(Q).simply_connected and not classify(P).simply_connected
    g = grade_morphism(f)
    assert g.in_prd and g.in_Rd and g.in_RdE


def test_restriction_to_parabolic():
    P = fixture("A2")
    Q, f = restriction(P, ["1", "r"])
    assert Q.G.n_morphisms == 2
    assert check_prd_morphism(f).ok
    th = theta_perp(f, 0)
    # the image of {1, r} in the hexagon: theta_perp is defined on the elements below r
    assert len(th.domain) >= 2


def test_grade_needs_rootoids():
    P = fixture("zero_s3")
    with pytest.raises(PreconditionError):
        grade_morphism(identity_morphism(P))


def _brute_max(P, a):
    st = P.G.star(a)
    return max(st, key=lambda g: bin(P.values[g]).count("1"))


@pytest.mark.parametrize("name", ["A2", "B2", "B3", "arr_A2"])
def test_complete_structure(name):
    if name == "B3":
        from rootoidlab.builders.small import coxeter
        P = coxeter("B3")
    else:
        P = fixture(name)
    P = abridge(P)
    cs = complete_structure(P)
    assert all(cs.checks.values()), cs.checks
    G = P.G
    for a in range(G.n_objects):
        assert cs.omega[a] == _brute_max(P, a)
    for g in range(G.n_morphisms):
        a, b = G.dom[g], G.cod[g]
        assert P.values[G.comp(g, cs.omega[a])] == P.rep.unit(b) ^ P.values[g]
    DD = compose_morphisms(cs.D, cs.D)
    assert DD.alpha.mor_map == list(range(G.n_morphisms))


def test_complete_structure_preconditions():
    with pytest.raises(PreconditionError):
        complete_structure(fixture("padded_s3"))
    with pytest.raises(PreconditionError):
        complete_structure(fixture("zero_s3"))
