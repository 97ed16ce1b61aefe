"""Randomised properties over coboundary protorootoids on simply connected groupoids."""

import random

from hypothesis import given, settings, strategies as st

from test_prd import _pairwise, weak_preorder_axioms
from rootoidlab.builders.small import random_coboundary
from rootoidlab.classify import is_rootoid, slc_check
from rootoidlab.prd import is_compatible, is_compatible_chain, is_faithful, trivialize
from rootoidlab.signed import lk_roundtrip

# the builder needs 2^k distinct subsets for n objects
params = st.integers(1, 4).flatmap(
    lambda k: st.tuples(st.integers(2, min(5, 2 ** k)), st.just(k), st.integers(0, 10 ** 6)))


@settings(max_examples=40, deadline=None)
@given(params)
def test_coboundary_is_a_cocycle(p):
    n, k, seed = p
    P = random_coboundary(n, k, seed)
    G = P.G
    for g, h in G.composable_pairs():
        assert P.values[G.comp(g, h)] == P.values[g] ^ P.rep.apply(g, P.values[h])
    assert trivialize(P).ok


@settings(max_examples=30, deadline=None)
@given(params)
def test_weak_preorder_axioms(p):
    weak_preorder_axioms(random_coboundary(*p))


@settings(max_examples=30, deadline=None)
@given(params, st.integers(0, 1000))
def test_compatibility_three_ways(p, seed):
    P = random_coboundary(*p)
    rng = random.Random(seed)
    G = P.G
    for _ in range(20):
        terms = [rng.randrange(G.n_morphisms)]
        for _ in range(rng.randint(0, 4)):
            terms.append(rng.choice(G.star(G.dom[terms[-1]])))
        c = is_compatible(P, tuple(terms))
        assert c == _pairwise(P, tuple(terms)) == is_compatible_chain(P, tuple(terms))


@settings(max_examples=30, deadline=None)
@given(params)
def test_slc_agrees_when_faithful(p):
    P = random_coboundary(*p)
    if is_faithful(P):
        assert slc_check(P).ok == is_rootoid(P).ok


@settings(max_examples=20, deadline=None)
@given(params)
def test_lk_roundtrip_random(p):
    assert lk_roundtrip(random_coboundary(*p)).ok
