import itertools
import random

import pytest

from conftest import fixture, random_expression
from rootoidlab.groupoid import Expression, Groupoid
from rootoidlab.prd import (CocycleError, PowerSetRep, Protorootoid, coboundary, dot_action,
                            expression_terms, is_compatible, is_compatible_chain, is_faithful,
                            orthogonal, protomesh, translate_protomesh, trivialize, zero_cocycle)
from rootoidlab.setalg import GroundSet, SetElem


def sub(x, y):
    return x & y == x


def test_cocycle_rejected_with_witness():
    G = Groupoid.from_group(["1", "g"], lambda u, v: u ^ v)
    rep = PowerSetRep(G, [GroundSet("*", ("x",))], [(0,), (0,)])
    # trivial action on Z/2: N(g) = {x} forces N(gg) = {x} + {x} = 0, fine
    Protorootoid(G, rep, [0, 1])
    with pytest.raises(CocycleError):
        Protorootoid(G, rep, [1, 1])


def test_cocycle_from_labels_and_values():
    P = fixture("A2")
    assert P.value("rs").labels() == ["r", "rsr"]
    assert P.length("rsr") == 3
    assert P.n("1") == 0


def test_coboundary_and_trivialize():
    G = Groupoid.simply_connected(["a", "b", "c"])
    rep = PowerSetRep.trivial_action(G, ["x", "y"])
    N = coboundary(G, rep, {"a": ["x"], "b": ["y"], "c": []})
    P = Protorootoid(G, rep, N)
    t = trivialize(P)
    assert t.ok
    again = coboundary(G, rep, t.family)
    assert again.values == P.values
    # S3 is not simply connected: no trivialization
    assert not trivialize(fixture("A2")).ok


def test_faithful():
    assert is_faithful(fixture("A2"))
    v = is_faithful(fixture("zero_s3"))
    assert not v and "empty" in v.reason


def test_weak_order_of_a2():
    P = fixture("A2")
    W = P.weak_order(0)
    assert len(W) == 6 and W.is_injective
    assert P.G.labels[W.morphism(W.minimum())] == "1"
    assert P.G.labels[W.morphism(W.maximum())] == "rsr"
    assert W.height() == 3
    # brute force covers: a hexagon with 6 edges
    vals = W.poset.values
    covers = [(x, y) for x, y in itertools.permutations(vals, 2)
              if sub(x, y) and not any(z not in (x, y) and sub(x, z) and sub(z, y) for z in vals)]
    assert len(covers) == len(W.hasse()) == 6


def test_zero_cocycle_weak_preorder_is_total():
    P = fixture("zero_s3")
    W = P.weak_order(0)
    assert len(W) == 1 and not W.is_injective
    G = P.G
    assert all(P.leq(x, y) for x in G.star(0) for y in G.star(0))


def _pairwise(P, terms):
    T = expression_terms(P, terms)
    return all(not T[i] & T[j] for i in range(len(T)) for j in range(i + 1, len(T)))


@pytest.mark.parametrize("name", ["A2", "B2", "padded_s3", "cyclic3", "arr_A2", "coboundary_3"])
def test_compatibility_forms_agree(name):
    P = fixture(name)
    rng = random.Random(7)
    for _ in range(300):
        e = random_expression(P, rng)
        # the value is the sum of the terms
        total = 0
        for t in expression_terms(P, e):
            total ^= t
        assert total == P.values[Expression(P.G, e).value()]
        c = is_compatible(P, e)
        assert c == _pairwise(P, e)
        assert c == is_compatible_chain(P, e)


def test_orthogonal_and_dot_action():
    P = fixture("A2")
    G = P.G
    assert orthogonal(P, "r", "s") and not orthogonal(P, "r", "rs")
    T = P.rep.grounds[0]
    for g, h in G.composable_pairs():
        for m in (0, 1, 5, 7):
            x = SetElem(T, m)
            assert dot_action(P, G.comp(g, h), x) == dot_action(P, g, dot_action(P, h, x))


def test_protomesh_translation():
    for name in ("A2", "arr_A2", "coboundary_1"):
        P = fixture(name)
        for g in range(P.G.n_morphisms):
            assert translate_protomesh(P, g).ok
    M = protomesh(fixture("A2"), 0)
    assert len(M.L) == 6
    shifted = M.translate(M.L[1])
    assert M.L[1] + M.L[1] in shifted.L


def test_zero_cocycle_helper():
    P = fixture("A2")
    Z = zero_cocycle(P.G, P.rep)
    assert set(Z.values) == {0}


# -- the five parts of the basic proposition on weak preorders ------------------

def weak_preorder_axioms(P):
    G = P.G
    le = P.leq
    n = G.n_morphisms
    for a in range(G.n_objects):
        for x in G.star(a):
            assert le(G.ident[a], x)  # (a)
    for x in range(n):
        b = G.dom[x]
        xs = G.inv[x]
        for y in G.star(b):
            xy = G.comp(x, y)
            if le(x, xy):  # (b)
                ys = G.inv[y]
                assert le(ys, G.comp(ys, xs))
            for w in G.star(b):
                xw = G.comp(x, w)
                if le(x, xy) and le(x, xw):  # (c)
                    assert le(xy, xw) == le(y, w)
                if le(y, w) and le(w, y):  # (e)
                    assert le(xy, xw)
    for x in range(n):  # (d)
        a, b = G.cod[x], G.dom[x]
        for v in G.star(a):
            vs = G.inv[v]
            if not le(vs, G.comp(vs, x)):
                continue
            for y in G.star(b):
                if not le(v, G.comp(x, y)):
                    continue
                ys = G.inv[y]
                for w in G.star(b):
                    if le(ys, G.comp(ys, w)):
                        assert le(vs, G.compose(vs, x, w))


@pytest.mark.parametrize("name", ["A2", "B2", "zero_s3", "padded_s3", "cyclic3", "arr_A2",
                                  "arr_nonsimplicial", "coboundary_0", "coboundary_3", "two_components"])
def test_weak_preorder_proposition(name):
    weak_preorder_axioms(fixture(name))


def test_substitution_into_blocks():
    rng = random.Random(99)
    names = ["A2", "B2", "padded_s3", "arr_A2", "cyclic3", "coboundary_3"]
    for k in range(1000):
        P = fixture(names[k % len(names)])
        e = random_expression(P, rng, max_len=7)
        n = len(e)
        cuts = sorted(rng.sample(range(1, n), rng.randint(0, n - 1))) if n > 1 else []
        bounds = [0] + cuts + [n]
        blocks = [e[bounds[i]:bounds[i + 1]] for i in range(len(bounds) - 1)]
        values = tuple(P.G.compose(*b) for b in blocks)
        rhs = all(is_compatible(P, b) for b in blocks) and is_compatible(P, values)
        assert is_compatible(P, e) == rhs
