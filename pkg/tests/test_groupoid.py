import itertools

import pytest

from rootoidlab.groupoid import (Expression, Functor, Groupoid, GroupoidError, components,
                                 generated_subgroupoid, sign_character, star, universal_cover)


def s3():
    perms = list(itertools.permutations(range(3)))
    labels = ["".join(map(str, p)) for p in perms]
    pos = {p: i for i, p in enumerate(perms)}
    # (pq)(i) = p(q(i)): q first
    mul = lambda u, v: pos[tuple(perms[u][perms[v][i]] for i in range(3))]
    return Groupoid.from_group(labels, mul, identity=pos[(0, 1, 2)], obj="S3"), perms


def test_group_as_groupoid():
    G, perms = s3()
    assert G.find_law_violation() is None
    assert len(star(G, "S3")) == 6
    for g in range(6):
        assert G.comp(g, G.inv[g]) == G.ident[0]
        # inverse permutation oracle
        inv = tuple(perms[g].index(i) for i in range(3))
        assert G.labels[G.inv[g]] == "".join(map(str, inv))


def test_trivial_and_simply_connected():
    T = Groupoid.trivial()
    assert star(T, "*") == [0] and T.is_identity(0)
    G = Groupoid.simply_connected(["a", "b"])
    assert G.n_morphisms == 4
    assert len(star(G, "a")) == 2 and len(star(G, "b")) == 2
    c = components(G)
    assert c.is_connected and c.is_simply_connected
    with pytest.raises(GroupoidError):
        star(G, "zz")


def test_explicit_constructor_and_errors():
    G = Groupoid(["a"], [("1", "a", "a"), ("g", "a", "a")], {"a": "1"},
                 {("1", "1"): "1", ("1", "g"): "g", ("g", "1"): "g", ("g", "g"): "1"})
    assert G.inv[G.m("g")] == G.m("g")
    with pytest.raises(GroupoidError):
        Groupoid(["a"], [("1", "a", "a"), ("g", "a", "a")], {"a": "1"},
                 {("1", "1"): "1", ("1", "g"): "g", ("g", "1"): "g"})
    with pytest.raises(GroupoidError):  # g*g = g: no inverse
        Groupoid(["a"], [("1", "a", "a"), ("g", "a", "a")], {"a": "1"},
                 {("1", "1"): "1", ("1", "g"): "g", ("g", "1"): "g", ("g", "g"): "g"})


def test_components_of_union():
    G, _ = s3()
    U = Groupoid.disjoint_union([G, Groupoid.simply_connected(["x", "y", "z"])])
    c = components(U)
    assert len(c) == 2 and not c.is_connected and not c.is_simply_connected
    assert sorted(len(m) for m in c.morphisms) == [6, 9]
    assert not components(Groupoid.empty()).is_connected


def test_generation_and_lengths():
    G, perms = s3()
    s, t = G.m("102"), G.m("021")
    gen = generated_subgroupoid(G, [s, t])
    assert gen.generates
    # oracle: Coxeter length of a permutation is its inversion count
    for g in range(6):
        p = perms[g]
        inv = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
        assert gen.length[g] == inv
        assert G.compose(*gen.word(g)) == g if gen.word(g) else G.is_identity(g)
    part = generated_subgroupoid(G, [s])
    assert not part.generates and len(part.morphisms) == 2
    sc = sign_character(G, [s, t])
    assert sc.ok


def test_expression():
    G, _ = s3()
    e = Expression(G, (G.m("102"), G.m("021")))
    assert e.anchor == 0 and len(e) == 2
    assert e.value() == G.comp(G.m("102"), G.m("021"))
    assert e.prefixes() == [G.m("102"), e.value()]
    H = Groupoid.simply_connected(["a", "b", "c"])
    with pytest.raises(GroupoidError):
        Expression(H, (H.m("a<-b"), H.m("c<-a")))


def test_subgroupoid_inclusion():
    G, _ = s3()
    inc = G.subgroupoid([G.m("012"), G.m("102")])
    assert inc.find_violation() is None and inc.source.n_morphisms == 2
    with pytest.raises(GroupoidError):
        G.subgroupoid([G.m("012"), G.m("120")])


def test_universal_cover_of_s3():
    G, _ = s3()
    H, pi = universal_cover(G)
    assert H.n_objects == 6 and H.n_morphisms == 36
    assert H.find_law_violation() is None
    assert pi.find_violation() is None and pi.is_covering()
    c = components(H)
    assert c.is_connected and c.is_simply_connected


def test_cover_of_simply_connected_is_iso():
    G = Groupoid.simply_connected(["a", "b"])
    H, pi = universal_cover(G)
    assert H.n_morphisms == 4 and pi.is_covering()


def test_functor_compose_identity():
    G, _ = s3()
    I = Functor.identity(G)
    assert I.compose(I).mor_map == list(range(6))
    bad = Functor(G, G, [0], [G.m("102")] * 6)
    assert bad.find_violation() is not None
