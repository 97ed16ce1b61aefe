"""Protorootoids: a groupoid, a set-algebra representation of it and a cocycle.

The representation gives each object ``a`` a ground set (``Lambda(a)`` is its
power set, or the subring described by a :class:`SubringPartition`) and each
morphism ``g: b -> a`` a bijection of ground sets.  The cocycle assigns to
``g`` a subset ``N(g)`` of the ground set at ``cod(g)`` with

    N(gh) = N(g) + g N(h).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .groupoid import Expression, Groupoid, components
from .poset import SetPoset
from .setalg import (GroundSet, IncompatibleRingsError, SetElem, SubringPartition,
                     iter_bits, popcount)


@dataclass
class Verdict:
    """A boolean answer with evidence for a negative one."""

    ok: bool
    witness: object = None
    reason: str = ""

    def __bool__(self):
        return self.ok


class CocycleError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class RepresentationError(ValueError):
    pass


class PowerSetRep:
    """Per-object ground sets with per-morphism bijections between them."""

    def __init__(self, G: Groupoid, grounds: Sequence[GroundSet], act: Sequence[Sequence[int]],
                 subrings: Optional[Sequence[Optional[SubringPartition]]] = None, check: bool = True):
        self.G = G
        self.grounds = tuple(grounds)
        self.act = tuple(tuple(p) for p in act)
        self.subrings = tuple(subrings) if subrings is not None else (None,) * G.n_objects
        if len(self.grounds) != G.n_objects or len(self.subrings) != G.n_objects:
            raise RepresentationError("need one ground set per object")
        if len(self.act) != G.n_morphisms:
            raise RepresentationError("need one bijection per morphism")
        for a, sub in enumerate(self.subrings):
            if sub is not None and sub.ambient != self.grounds[a]:
                raise RepresentationError(f"subring at {G.objects[a]!r} over the wrong ground set")
        # image of each single bit, for quick application to masks
        self._img = tuple(tuple(1 << j for j in p) for p in self.act)
        if check:
            err = self.find_violation()
            if err:
                raise RepresentationError(err)

    @classmethod
    def from_labels(cls, G: Groupoid, grounds: Mapping, act: Mapping,
                    subrings: Optional[Mapping] = None, check: bool = True) -> "PowerSetRep":
        """Build from label data.

        ``grounds`` maps object label to a list of element labels, ``act``
        maps morphism label to a dict from dom-ground labels to cod-ground
        labels, ``subrings`` optionally maps object label to a list of blocks.
        """
        gs = [GroundSet(o, tuple(grounds[o])) for o in G.objects]
        perms = []
        for g, lab in enumerate(G.labels):
            src, dst = gs[G.dom[g]], gs[G.cod[g]]
            table = act[lab]
            if set(table) != set(src.elements):
                raise RepresentationError(f"action of {lab!r} is not defined on the whole ground set")
            perms.append(tuple(dst.index(table[x]) for x in src.elements))
        subs = None
        if subrings:
            subs = []
            for a, o in enumerate(G.objects):
                blocks = subrings.get(o)
                if blocks is None:
                    subs.append(None)
                    continue
                masks = [gs[a].mask(b) for b in blocks]
                sup = 0
                for m in masks:
                    sup |= m
                subs.append(SubringPartition(gs[a], sup, tuple(masks)))
        return cls(G, gs, perms, subs, check)

    @classmethod
    def trivial_action(cls, G: Groupoid, labels: Sequence[str]) -> "PowerSetRep":
        """Every object gets a copy of ``labels``; every morphism acts as the identity."""
        gs = [GroundSet(o, tuple(labels)) for o in G.objects]
        ident = tuple(range(len(labels)))
        return cls(G, gs, [ident] * G.n_morphisms, check=False)

    def find_violation(self) -> Optional[str]:
        G = self.G
        for g in range(G.n_morphisms):
            p = self.act[g]
            src, dst = self.grounds[G.dom[g]], self.grounds[G.cod[g]]
            if len(p) != len(src) or sorted(p) != list(range(len(dst))):
                return f"action of {G.labels[g]!r} is not a bijection of ground sets"
        for a in range(G.n_objects):
            if self.act[G.ident[a]] != tuple(range(len(self.grounds[a]))):
                return f"identity at {G.objects[a]!r} does not act trivially"
        for g, h in G.composable_pairs():
            pg, ph = self.act[g], self.act[h]
            if self.act[G.comp(g, h)] != tuple(pg[i] for i in ph):
                return f"action not functorial at ({G.labels[g]}, {G.labels[h]})"
        for g in range(G.n_morphisms):
            sb, sa = self.subrings[G.dom[g]], self.subrings[G.cod[g]]
            if (sb is None) != (sa is None):
                return f"{G.labels[g]!r} joins a power set to a proper subring"
            if sb is not None:
                imgs = sorted(self.apply(g, blk) for blk in sb.blocks)
                if imgs != sorted(sa.blocks):
                    return f"action of {G.labels[g]!r} does not map blocks onto blocks"
        return None

    def apply(self, g: int, mask: int) -> int:
        img = self._img[g]
        out = 0
        while mask:
            low = mask & -mask
            out |= img[low.bit_length() - 1]
            mask ^= low
        return out

    def unit(self, a: int) -> int:
        sub = self.subrings[a]
        return self.grounds[a].full if sub is None else sub.support

    def atoms(self, a: int) -> tuple:
        """Atoms of the ring at ``a`` as masks."""
        sub = self.subrings[a]
        if sub is None:
            return tuple(1 << i for i in range(len(self.grounds[a])))
        return sub.blocks

    def in_ring(self, a: int, mask: int) -> bool:
        sub = self.subrings[a]
        if sub is None:
            return not mask & ~self.grounds[a].full
        return sub.contains(mask)

    def rank(self, a: int, mask: int) -> int:
        sub = self.subrings[a]
        if sub is None:
            return popcount(mask)
        return sum(1 for b in sub.blocks if b & mask)

    def ring_size(self, a: int) -> int:
        """Number of atoms of the ring at ``a``."""
        return len(self.atoms(a))

    def with_subrings(self, subrings) -> "PowerSetRep":
        return PowerSetRep(self.G, self.grounds, self.act, subrings, check=False)


@dataclass(frozen=True)
class Cocycle:
    values: tuple  # int mask per morphism, over the ground set at its codomain


def _to_mask(x, ground: GroundSet) -> int:
    if isinstance(x, SetElem):
        if x.ground != ground:
            raise IncompatibleRingsError(
                f"value over {x.ground.id!r} where {ground.id!r} is expected")
        return x.bits
    if isinstance(x, int):
        return x
    return ground.mask(x)


def normalize_values(G: Groupoid, rep: PowerSetRep, values) -> tuple:
    """Cocycle candidates from a sequence or mapping of SetElem / masks / label lists."""
    if isinstance(values, Cocycle):
        return values.values
    out = [None] * G.n_morphisms
    items = values.items() if isinstance(values, Mapping) else enumerate(values)
    for g, x in items:
        g = G.m(g)
        out[g] = _to_mask(x, rep.grounds[G.cod[g]])
    missing = [G.labels[g] for g, v in enumerate(out) if v is None]
    if missing:
        raise CocycleError(f"no value given for {missing[:5]}")
    return tuple(out)


def find_cocycle_violation(G: Groupoid, rep: PowerSetRep, values: Sequence[int]) -> Optional[tuple]:
    for g in range(G.n_morphisms):
        if not rep.in_ring(G.cod[g], values[g]):
            return ("not in ring", g)
    for g, h in G.composable_pairs():
        lhs = values[G.comp(g, h)]
        rhs = values[g] ^ rep.apply(g, values[h])
        if lhs != rhs:
            return (g, h, lhs, rhs)
    return None


class Protorootoid:
    def __init__(self, G: Groupoid, rep: PowerSetRep, N, check: bool = True):
        if rep.G is not G:
            raise RepresentationError("representation belongs to another groupoid")
        self.G = G
        self.rep = rep
        self.values = normalize_values(G, rep, N)
        if check:
            w = find_cocycle_violation(G, rep, self.values)
            if w is not None:
                raise CocycleError(describe_cocycle_violation(self, w), w)
        self._weak = {}

    def __repr__(self):
        return f"Protorootoid({self.G.n_objects} objects, {self.G.n_morphisms} morphisms)"

    @property
    def N(self) -> Cocycle:
        return Cocycle(self.values)

    def ground(self, a) -> GroundSet:
        return self.rep.grounds[self.G.o(a)]

    def n(self, g) -> int:
        return self.values[self.G.m(g)]

    def value(self, g) -> SetElem:
        g = self.G.m(g)
        return SetElem(self.rep.grounds[self.G.cod[g]], self.values[g])

    def length(self, g) -> int:
        """l_N(g), the rank of N(g) in the ring at cod(g)."""
        g = self.G.m(g)
        return self.rep.rank(self.G.cod[g], self.values[g])

    def act(self, g, x: SetElem) -> SetElem:
        g = self.G.m(g)
        src = self.rep.grounds[self.G.dom[g]]
        if x.ground != src:
            raise IncompatibleRingsError(f"{x!r} is not over the ground set at dom({self.G.labels[g]})")
        return SetElem(self.rep.grounds[self.G.cod[g]], self.rep.apply(g, x.bits))

    def weak_order(self, a) -> "WeakOrder":
        a = self.G.o(a)
        w = self._weak.get(a)
        if w is None:
            w = WeakOrder(self, a)
            self._weak[a] = w
        return w

    def leq(self, x, y) -> bool:
        """The weak preorder on a star: N(x) contained in N(y)."""
        x, y = self.G.m(x), self.G.m(y)
        if self.G.cod[x] != self.G.cod[y]:
            raise ValueError("weak order compares morphisms with a common codomain")
        return self.values[x] & self.values[y] == self.values[x]


def describe_cocycle_violation(P, w) -> str:
    G = P.G
    if w[0] == "not in ring":
        return f"N({G.labels[w[1]]}) does not lie in the ring at its codomain"
    g, h, lhs, rhs = w
    gr = P.rep.grounds[G.cod[g]]
    return (f"cocycle law fails at ({G.labels[g]}, {G.labels[h]}): "
            f"N(gh)={SetElem(gr, lhs)!r} but N(g)+gN(h)={SetElem(gr, rhs)!r}")


def check_cocycle(G: Groupoid, rep: PowerSetRep, values) -> Protorootoid:
    """Verify the cocycle law on all composable pairs and build the protorootoid.

    Raises :class:`CocycleError` whose ``witness`` is ``(g, h, N(gh), N(g)+gN(h))``.
    """
    return Protorootoid(G, rep, values, check=True)


def coboundary(G: Groupoid, rep: PowerSetRep, family) -> Cocycle:
    """N(g) = x_a + g(x_b) for g: b -> a."""
    xs = []
    items = family.items() if isinstance(family, Mapping) else enumerate(family)
    fam = {G.o(a): _to_mask(x, rep.grounds[G.o(a)]) for a, x in items}
    for a in range(G.n_objects):
        xs.append(fam.get(a, 0))
    return Cocycle(tuple(xs[G.cod[g]] ^ rep.apply(g, xs[G.dom[g]]) for g in range(G.n_morphisms)))


@dataclass
class Trivialization:
    ok: bool
    family: Optional[list] = None          # mask per object
    component: Optional[list] = None        # offending component (object indices)


def trivialize(P: Protorootoid) -> Trivialization:
    """Write N as a coboundary when every component is simply connected."""
    G = P.G
    comps = components(G)
    fam = [0] * G.n_objects
    for part, simple in zip(comps.objects, comps.simply_connected_parts):
        if not simple:
            return Trivialization(False, component=part)
        base = part[0]
        for g in G.star(base):
            b = G.dom[g]
            # N(g) = x_base + g x_b with x_base empty
            fam[b] = P.rep.apply(G.inv[g], P.values[g])
    if coboundary(G, P.rep, fam).values != P.values:
        raise AssertionError("trivialization does not reproduce the cocycle")
    return Trivialization(True, family=fam)


class WeakOrder:
    """Distinct values N(g), g in the star at ``a``, ordered by inclusion."""

    def __init__(self, P: Protorootoid, a: int):
        self.P = P
        self.a = a
        star = P.G.star(a)
        self.poset = SetPoset(P.values[g] for g in star)
        self.witnesses = [[] for _ in self.poset.values]
        for g in star:
            self.witnesses[self.poset.pos[P.values[g]]].append(g)
        self.ground = P.rep.grounds[a]

    def __len__(self):
        return len(self.poset)

    @property
    def elements(self) -> list:
        return [SetElem(self.ground, v) for v in self.poset.values]

    def index_of(self, g: int) -> int:
        return self.poset.pos[self.P.values[g]]

    def morphism(self, i: int) -> int:
        return self.witnesses[i][0]

    @property
    def is_injective(self) -> bool:
        return all(len(w) == 1 for w in self.witnesses)

    def hasse(self) -> list:
        return self.poset.covers()

    def minimum(self) -> Optional[int]:
        return self.poset.minimum()

    def maximum(self) -> Optional[int]:
        return self.poset.maximum()

    def height(self) -> int:
        longest = [0] * len(self.poset)
        for i in range(len(self.poset)):  # values are sorted by size, so covers go upward
            for j in iter_bits(self.poset.down[i] & ~(1 << i)):
                longest[i] = max(longest[i], longest[j] + 1)
        return max(longest) if longest else 0


def weak_order(P: Protorootoid, a) -> WeakOrder:
    return P.weak_order(a)


def is_faithful(P: Protorootoid) -> Verdict:
    """N(g) empty only for identities; equivalently every weak preorder is a partial order."""
    G = P.G
    for g in range(G.n_morphisms):
        if P.values[g] == 0 and not G.is_identity(g):
            return Verdict(False, (g, G.ident[G.cod[g]]), f"N({G.labels[g]}) is empty")
    return Verdict(True)


def _as_expression(P, e) -> Expression:
    if isinstance(e, Expression):
        return e
    return Expression(P.G, tuple(P.G.m(g) for g in e))


def expression_terms(P: Protorootoid, e) -> list:
    """The sets g1...g_{i-1} N(g_i), all over the ground set at the anchor."""
    e = _as_expression(P, e)
    G = P.G
    out = []
    prefix = None
    for g in e.terms:
        out.append(P.values[g] if prefix is None else P.rep.apply(prefix, P.values[g]))
        prefix = g if prefix is None else G.comp(prefix, g)
    return out


def is_compatible(P: Protorootoid, e) -> bool:
    """Whether the terms g1...g_{i-1}N(g_i) are pairwise disjoint."""
    seen = 0
    for t in expression_terms(P, e):
        if t & seen:
            return False
        seen |= t
    return True


def is_compatible_chain(P: Protorootoid, e) -> bool:
    """Chain form: N(g1) within N(g1g2) within ... within N(g1...gn)."""
    e = _as_expression(P, e)
    prev = 0
    for v in e.prefixes():
        cur = P.values[v]
        if prev & cur != prev:
            return False
        prev = cur
    return True


def orthogonal(P: Protorootoid, g, h) -> bool:
    G = P.G
    g, h = G.m(g), G.m(h)
    if G.cod[g] != G.cod[h]:
        raise ValueError("orthogonality needs a common codomain")
    return not P.values[g] & P.values[h]


def dot_action(P: Protorootoid, g, x: SetElem) -> SetElem:
    """g . x = N(g) + g x."""
    G = P.G
    g = G.m(g)
    gx = P.act(g, x)
    return SetElem(gx.ground, P.values[g] ^ gx.bits)


@dataclass
class Protomesh:
    ring: GroundSet
    L: list
    subring: Optional[SubringPartition] = None

    def __post_init__(self):
        for A in self.L:
            if A.ground != self.ring:
                raise IncompatibleRingsError("protomesh member over a different ground set")

    def translate(self, gamma: SetElem) -> "Protomesh":
        return Protomesh(self.ring, [gamma + A for A in self.L], self.subring)


def protomesh(P: Protorootoid, a) -> Protomesh:
    a = P.G.o(a)
    return Protomesh(P.rep.grounds[a], P.weak_order(a).elements, P.rep.subrings[a])


@dataclass
class ProtomeshIsomorphism:
    g: int
    gamma: SetElem
    pairing: dict        # mask in the source mesh -> mask in the translated target mesh
    ok: bool


def translate_protomesh(P: Protorootoid, g) -> ProtomeshIsomorphism:
    """Check that the action of g: a -> b maps (Lambda(a), aL) onto (Lambda(b), N(g) + bL)."""
    G = P.G
    g = G.m(g)
    a, b = G.dom[g], G.cod[g]
    gamma = P.values[g]
    src = P.weak_order(a).poset.values
    tgt = {gamma ^ v for v in P.weak_order(b).poset.values}
    pairing = {v: P.rep.apply(g, v) for v in src}
    ok = set(pairing.values()) == tgt and len(pairing) == len(tgt)
    for h in G.star(a):
        # the image of N(h) is N(g) + N(gh)
        if P.rep.apply(g, P.values[h]) != gamma ^ P.values[G.comp(g, h)]:
            ok = False
    return ProtomeshIsomorphism(g, SetElem(P.rep.grounds[b], gamma), pairing, ok)


def zero_cocycle(G: Groupoid, rep: PowerSetRep) -> Protorootoid:
    return Protorootoid(G, rep, [0] * G.n_morphisms, check=False)
