"""Small named protorootoids used throughout the tests and the CLI.

``FIXTURES`` maps a name to a zero-argument constructor.
"""

from __future__ import annotations

import random
from typing import Callable, Dict

from ..groupoid import Groupoid
from ..prd import PowerSetRep, Protorootoid, coboundary, zero_cocycle
from ..setalg import GroundSet
from .arrangement import RationalArrangement, build_arrangement
from .coxeter import CoxeterMatrix, build_coxeter


def coxeter(name: str) -> Protorootoid:
    return build_coxeter(CoxeterMatrix.of_type(name)).protorootoid


def arrangement(dimension: int, normals) -> Protorootoid:
    return build_arrangement(RationalArrangement(dimension, tuple(normals))).protorootoid


def trivial() -> Protorootoid:
    G = Groupoid.trivial()
    rep = PowerSetRep(G, [GroundSet("*", ())], [()])
    return Protorootoid(G, rep, [0])


def empty() -> Protorootoid:
    G = Groupoid.empty()
    return Protorootoid(G, PowerSetRep(G, [], []), [])


def zero_on_s3() -> Protorootoid:
    C = build_coxeter(CoxeterMatrix.of_type("A2"))
    return zero_cocycle(C.W, C.protorootoid.rep)


def padded_s3() -> Protorootoid:
    """S3 with each reflection doubled and two extra fixed points.

    N'(w) = N(w) x {0, 1}.  No value is a singleton, so nothing is simple,
    while the weak order is that of S3.
    """
    C = build_coxeter(CoxeterMatrix.of_type("A2"))
    P = C.protorootoid
    T = P.rep.grounds[0]
    labels = [f"{t}:{i}" for t in T.elements for i in (0, 1)] + ["p", "q"]
    ground = GroundSet(T.id, tuple(labels))
    k = len(T)
    act = []
    for perm in P.rep.act:
        act.append(tuple(2 * perm[j // 2] + j % 2 for j in range(2 * k)) + (2 * k, 2 * k + 1))
    values = []
    for v in P.values:
        values.append(sum(3 << (2 * j) for j in range(k) if v >> j & 1))
    return Protorootoid(C.W, PowerSetRep(C.W, [ground], act), values)


def cyclic3() -> Protorootoid:
    """Z/3 rotating {0, 1, 2}, with the coboundary of {0}."""
    G = Groupoid.from_group(["1", "g", "gg"], lambda u, v: (u + v) % 3)
    ground = GroundSet("*", ("0", "1", "2"))
    act = [tuple((i + k) % 3 for i in range(3)) for k in range(3)]
    rep = PowerSetRep(G, [ground], act)
    return Protorootoid(G, rep, coboundary(G, rep, {0: 0b001}))


def two_components() -> Protorootoid:
    return disjoint_union([coxeter("A1"), arrangement(2, [(1, 0), (0, 1), (1, 1)])])


def disjoint_union(parts) -> Protorootoid:
    G = Groupoid.disjoint_union([P.G for P in parts])
    grounds, act, subs, values = [], [], [], []
    for P in parts:
        grounds += P.rep.grounds
        act += P.rep.act
        subs += P.rep.subrings
        values += P.values
    return Protorootoid(G, PowerSetRep(G, grounds, act, subs), values)


def random_coboundary(objects: int, ground: int, seed: int) -> Protorootoid:
    """Coboundary of distinct random sets on a simply connected groupoid (faithful)."""
    if objects > 1 << ground:
        raise ValueError("not enough subsets for distinct values")
    rng = random.Random(seed)
    G = Groupoid.simply_connected([f"o{i}" for i in range(objects)])
    rep = PowerSetRep.trivial_action(G, [f"x{i}" for i in range(ground)])
    xs = rng.sample(range(1 << ground), objects)
    return Protorootoid(G, rep, coboundary(G, rep, dict(enumerate(xs))))


FIXTURES: Dict[str, Callable[[], Protorootoid]] = {
    "trivial": trivial,
    "empty": empty,
    "A1": lambda: coxeter("A1"),
    "A2": lambda: coxeter("A2"),
    "B2": lambda: coxeter("B2"),
    "G2": lambda: coxeter("G2"),
    "A1xA1": lambda: coxeter("A1xA1"),
    "A3": lambda: coxeter("A3"),
    "zero_s3": zero_on_s3,
    "padded_s3": padded_s3,
    "cyclic3": cyclic3,
    "two_components": two_components,
    "arr_line": lambda: arrangement(1, [(1,)]),
    "arr_A2": lambda: arrangement(2, [(1, 0), (0, 1), (1, 1)]),
    "arr_coord3": lambda: arrangement(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]),
    "arr_nonsimplicial": lambda: arrangement(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]),
}
for _seed in range(8):
    FIXTURES[f"coboundary_{_seed}"] = (lambda s: lambda: random_coboundary(6, 4, s))(_seed)
