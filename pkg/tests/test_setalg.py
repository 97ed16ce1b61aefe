import itertools

import pytest
from hypothesis import given, strategies as st

from rootoidlab.setalg import (GroundSet, IncompatibleRingsError, PartialMap, SetElem, SubringPartition,
                               apply_hom, generated_subring, rank, subring_elements, union)

X = GroundSet("X", ("x", "y", "z", "w"))


def E(*labels):
    return X.elem(labels)


def test_basic_operations():
    assert E("x") + E("x") == X.empty()
    assert E("x", "y") & E("y", "z") == E("y")
    assert union(E("x"), E("y")) == E("x") + E("y") + (E("x") & E("y")) == E("x", "y")
    assert E("x") <= E("x", "y") and not E("z") <= E("x", "y")
    assert repr(E("y", "x")) == "{x,y}"
    assert "x" in E("x") and len(E("x", "z")) == 2
    assert E("x").complement() == E("y", "z", "w")


def test_ground_mismatch():
    Y = GroundSet("Y", ("x",))
    with pytest.raises(IncompatibleRingsError):
        E("x") + Y.elem(["x"])
    with pytest.raises(ValueError):
        GroundSet("bad", ("a", "a"))


def test_rank_examples():
    assert rank(X.empty()) == 0
    assert rank(E("x", "y")) == 2
    a, b = E("x", "y"), E("y", "z")
    assert rank(a) + rank(b) == rank(a & b) + rank(union(a, b)) == 4


def test_rank_in_subring_counts_blocks():
    sub = SubringPartition(X, X.mask("xyz"), (X.mask("xy"), X.mask("z")))
    assert rank(E("x", "y", "z"), sub) == 2


def _closure(gens, n):
    """All +/& combinations of gens: brute-force subring oracle."""
    elems = {0}
    frontier = set(gens)
    while frontier:
        elems |= frontier
        new = set()
        for a in elems:
            for b in elems:
                for c in (a ^ b, a & b):
                    if c not in elems:
                        new.add(c)
        frontier = new
    return elems


@pytest.mark.parametrize("gens", [[], [0b0011], [0b0011, 0b0110], [0b1001, 0b0110, 0b1111], [0b0001, 0b0010, 0b0100]])
def test_generated_subring_matches_closure(gens):
    sub = generated_subring([SetElem(X, g) for g in gens], ground=X)
    assert set(subring_elements(sub)) == _closure(gens, 4)
    for g in gens:
        assert sub.contains(g)


def test_generated_subring_examples():
    sub = generated_subring([E("x", "y"), E("y", "z")])
    assert sub.support == X.mask("xyz")
    assert sorted(sub.block_labels()) == [["x"], ["y"], ["z"]]
    sub = generated_subring([E("x", "y")])
    assert sub.block_labels() == [["x", "y"]]
    empty = generated_subring([], ground=X)
    assert empty.support == 0 and empty.blocks == ()


def test_generated_subring_idempotent():
    sub = generated_subring([E("x", "y"), E("y", "z", "w")])
    again = generated_subring([SetElem(X, m) for m in subring_elements(sub)], ground=X)
    assert again == sub


def test_subring_partition_validation():
    with pytest.raises(ValueError):
        SubringPartition(X, 0b11, (0b01, 0b01))
    with pytest.raises(ValueError):
        SubringPartition(X, 0b111, (0b01, 0b10))


def test_apply_hom_examples():
    Y = GroundSet("Y", ("p", "q"))
    Xs = GroundSet("Xs", ("x",))
    h = PartialMap(Y, Xs, {"p": "x", "q": None})
    assert apply_hom(h, Xs.elem(["x"])) == Y.elem(["p"])
    ident = PartialMap.identity(X)
    assert ident(E("x")) == E("x")
    assert ident.is_total() and ident.is_bijective() and not h.is_total()
    with pytest.raises(IncompatibleRingsError):
        apply_hom(h, E("x"))


def test_boolean_ring_laws_exhaustive():
    G = GroundSet("S", ("a", "b", "c"))
    els = [SetElem(G, m) for m in range(8)]
    for x, y, z in itertools.product(els, repeat=3):
        assert x & x == x and x + x == G.empty()
        assert x + y == y + x and x & y == y & x
        assert x & (y + z) == (x & y) + (x & z)
        assert rank(x) + rank(y) == rank(x & y) + rank(union(x, y))


masks = st.integers(min_value=0, max_value=(1 << 6) - 1)


@given(masks, masks, st.lists(st.one_of(st.none(), st.integers(0, 5)), min_size=5, max_size=5))
def test_apply_hom_is_ring_hom(a, b, table):
    S = GroundSet("S", tuple("abcdef"))
    T = GroundSet("T", tuple("pqrst"))
    h = PartialMap.from_table(T, S, table)
    A, B = SetElem(S, a), SetElem(S, b)
    assert h(A + B) == h(A) + h(B)
    assert h(A & B) == h(A) & h(B)
    assert h(S.empty()) == T.empty()


@given(masks, masks)
def test_rank_modularity_random(a, b):
    S = GroundSet("S", tuple("abcdef"))
    A, B = SetElem(S, a), SetElem(S, b)
    assert rank(A) + rank(B) == rank(A & B) + rank(union(A, B))
