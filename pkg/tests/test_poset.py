import itertools
import random

from rootoidlab.poset import SetPoset, find_isomorphism, is_order_preserving


def sub(x, y):
    return x & y == x


def brute_meet(vals, x, y):
    lower = [z for z in vals if sub(z, x) and sub(z, y)]
    top = [z for z in lower if all(sub(w, z) for w in lower)]
    return top[0] if top else None


def brute_join(vals, x, y):
    upper = [z for z in vals if sub(x, z) and sub(y, z)]
    bot = [z for z in upper if all(sub(z, w) for w in upper)]
    return bot[0] if bot else None


def random_family(rng, bits=5, size=7):
    return rng.sample(range(1 << bits), size)


def test_meets_joins_against_brute_force():
    rng = random.Random(1)
    for _ in range(60):
        vals = random_family(rng)
        p = SetPoset(vals)
        for x, y in itertools.product(p.values, repeat=2):
            i, j = p.index(x), p.index(y)
            m, k = p.meet(i, j), p.join(i, j)
            assert (None if m is None else p.values[m]) == brute_meet(p.values, x, y)
            assert (None if k is None else p.values[k]) == brute_join(p.values, x, y)


def test_covers_against_brute_force():
    rng = random.Random(2)
    for _ in range(40):
        p = SetPoset(random_family(rng))
        want = set()
        for x, y in itertools.product(p.values, repeat=2):
            if x != y and sub(x, y) and not any(z not in (x, y) and sub(x, z) and sub(z, y) for z in p.values):
                want.add((p.index(x), p.index(y)))
        assert set(p.covers()) == want


def test_min_max_atoms():
    p = SetPoset([0, 1, 2, 3])
    assert p.values[p.minimum()] == 0 and p.values[p.maximum()] == 3
    assert sorted(p.values[i] for i in p.atoms()) == [1, 2]
    q = SetPoset([1, 2])
    assert q.minimum() is None and q.maximum() is None and q.atoms() == []


def test_missing_meet():
    # {a},{b} both below {a,b,c} and {a,b,d}: no meet of the two tops
    p = SetPoset([0, 0b1, 0b10, 0b0111, 0b1011])
    i, j = p.find_missing_meet()
    assert {p.values[i], p.values[j]} == {0b0111, 0b1011}
    assert not p.is_meet_semilattice()
    assert SetPoset([0, 1, 2, 3]).is_meet_semilattice()


def brute_jop_pairs(p):
    for i, j in itertools.combinations(range(len(p)), 2):
        b = p.join(i, j)
        if b is None:
            continue
        for k in range(len(p)):
            if not p.values[i] & p.values[k] and not p.values[j] & p.values[k] and p.values[b] & p.values[k]:
                return True
    return False


def test_jop_binary_and_exhaustive():
    # join of {a} and {b} is {a,b,c}, which meets {c} although both atoms miss it
    p = SetPoset([0, 0b001, 0b010, 0b100, 0b111])
    assert p.find_jop_failure() is not None
    assert p.find_jop_failure_exhaustive() is not None
    rng = random.Random(3)
    for _ in range(80):
        vals = [0] + random_family(rng, 4, 6)
        p = SetPoset(vals)
        assert (p.find_jop_failure() is not None) == brute_jop_pairs(p)
        if p.is_meet_semilattice():
            assert (p.find_jop_failure() is None) == (p.find_jop_failure_exhaustive() is None)


def test_isomorphism():
    p = SetPoset([0, 1, 2, 3])
    q = SetPoset([0, 4, 8, 12])
    f = find_isomorphism(p, q)
    assert f is not None and is_order_preserving(p, q, [f[i] for i in range(4)])
    chain = SetPoset([0, 1, 3, 7])
    assert find_isomorphism(p, chain) is None
