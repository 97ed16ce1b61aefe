"""Finite groupoids.

Objects and morphisms are addressed by integer position; labels (strings)
are kept alongside for I/O.  ``G.comp(g, h)`` is the composite ``gh``,
meaning ``h`` first and then ``g``; it is defined iff ``dom(g) == cod(h)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence, Union

Label = Union[int, str]


class GroupoidError(ValueError):
    pass


class Groupoid:
    def __init__(self, objects: Sequence[str], morphisms: Sequence[tuple],
                 identities: dict, table: dict, check: bool = True):
        """Build from explicit data.

        ``morphisms`` is a list of ``(label, dom, cod)`` with object labels,
        ``identities`` maps object label to morphism label and ``table`` maps
        ``(g, h)`` label pairs to the label of ``gh`` for every composable
        pair.
        """
        self.objects = tuple(str(o) for o in objects)
        self._obj = {o: i for i, o in enumerate(self.objects)}
        if len(self._obj) != len(self.objects):
            raise GroupoidError("repeated object labels")
        self.labels = tuple(str(m[0]) for m in morphisms)
        self._mor = {m: i for i, m in enumerate(self.labels)}
        if len(self._mor) != len(self.labels):
            raise GroupoidError("repeated morphism labels")
        self.dom = tuple(self._obj[str(m[1])] for m in morphisms)
        self.cod = tuple(self._obj[str(m[2])] for m in morphisms)
        self.ident = tuple(self._mor[str(identities[o])] for o in self.objects)
        comp = {}
        for (g, h), k in table.items():
            comp[self._mor[str(g)], self._mor[str(h)]] = self._mor[str(k)]
        self._init_common(comp, check)

    @classmethod
    def _raw(cls, objects, labels, dom, cod, ident, comp, check=False):
        G = cls.__new__(cls)
        G.objects = tuple(objects)
        G._obj = {o: i for i, o in enumerate(G.objects)}
        G.labels = tuple(labels)
        G._mor = {m: i for i, m in enumerate(G.labels)}
        if len(G._mor) != len(G.labels) or len(G._obj) != len(G.objects):
            raise GroupoidError("repeated labels")
        G.dom = tuple(dom)
        G.cod = tuple(cod)
        G.ident = tuple(ident)
        G._init_common(comp, check)
        return G

    def _init_common(self, comp, check):
        self._comp = comp
        n = len(self.labels)
        self._star = [[] for _ in self.objects]
        self._out = [[] for _ in self.objects]
        for g in range(n):
            self._star[self.cod[g]].append(g)
            self._out[self.dom[g]].append(g)
        for a, e in enumerate(self.ident):
            if self.dom[e] != a or self.cod[e] != a:
                raise GroupoidError(f"identity of {self.objects[a]!r} has wrong endpoints")
        if check:
            for g in range(n):
                for h in self._star[self.dom[g]]:
                    if (g, h) not in comp:
                        raise GroupoidError(
                            f"composition table missing ({self.labels[g]}, {self.labels[h]})")
        inv = [None] * n
        for g in range(n):
            e = self.ident[self.cod[g]]
            for h in self._out[self.cod[g]]:
                if self.cod[h] == self.dom[g] and comp.get((g, h)) == e \
                        and comp.get((h, g)) == self.ident[self.dom[g]]:
                    inv[g] = h
                    break
            if inv[g] is None:
                raise GroupoidError(f"morphism {self.labels[g]!r} has no inverse")
        self.inv = tuple(inv)
        if check:
            w = self.find_law_violation()
            if w is not None:
                raise GroupoidError(w)

    # -- basic queries -------------------------------------------------
    def __repr__(self):
        return f"Groupoid({len(self.objects)} objects, {len(self.labels)} morphisms)"

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.labels)

    def o(self, a: Label) -> int:
        if isinstance(a, int):
            if not 0 <= a < len(self.objects):
                raise GroupoidError(f"no object {a}")
            return a
        try:
            return self._obj[a]
        except KeyError:
            raise GroupoidError(f"unknown object {a!r}") from None

    def m(self, g: Label) -> int:
        if isinstance(g, int):
            if not 0 <= g < len(self.labels):
                raise GroupoidError(f"no morphism {g}")
            return g
        try:
            return self._mor[g]
        except KeyError:
            raise GroupoidError(f"unknown morphism {g!r}") from None

    def comp(self, g: int, h: int) -> int:
        try:
            return self._comp[g, h]
        except KeyError:
            raise GroupoidError(
                f"{self.labels[g]!r} and {self.labels[h]!r} are not composable") from None

    def composable(self, g: int, h: int) -> bool:
        return self.dom[g] == self.cod[h]

    def compose(self, *gs: int) -> int:
        """Value of g1 g2 ... gn; the identity of ``cod(g1)`` is never needed."""
        out = gs[-1]
        for g in reversed(gs[:-1]):
            out = self.comp(g, out)
        return out

    def is_identity(self, g: int) -> bool:
        return self.ident[self.cod[g]] == g

    def star(self, a: int) -> list:
        return self._star[a]

    def out_of(self, b: int) -> list:
        return self._out[b]

    def hom(self, b: int, a: int) -> list:
        """Morphisms b -> a."""
        return [g for g in self._star[a] if self.dom[g] == b]

    def composable_pairs(self):
        for g in range(len(self.labels)):
            for h in self._star[self.dom[g]]:
                yield g, h

    def find_law_violation(self) -> Optional[str]:
        n = len(self.labels)
        for g in range(n):
            if self.comp(g, self.ident[self.dom[g]]) != g or self.comp(self.ident[self.cod[g]], g) != g:
                return f"identity law fails at {self.labels[g]!r}"
        for g, h in self.composable_pairs():
            gh = self._comp[g, h]
            if self.dom[gh] != self.dom[h] or self.cod[gh] != self.cod[g]:
                return f"composite of ({self.labels[g]}, {self.labels[h]}) has wrong endpoints"
            for k in self._star[self.dom[h]]:
                if self._comp[gh, k] != self._comp[g, self._comp[h, k]]:
                    return f"associativity fails at ({self.labels[g]}, {self.labels[h]}, {self.labels[k]})"
        return None

    # -- constructors ---------------------------------------------------
    @classmethod
    def from_group(cls, elements: Sequence[str], mul: Callable[[int, int], int],
                   identity: int = 0, obj: str = "*") -> "Groupoid":
        """One-object groupoid of a finite group given by a multiplication on indices."""
        n = len(elements)
        comp = {(g, h): mul(g, h) for g in range(n) for h in range(n)}
        return cls._raw([obj], list(elements), [0] * n, [0] * n, [identity], comp)

    @classmethod
    def simply_connected(cls, objects: Sequence[str], sep: str = "<-") -> "Groupoid":
        """The groupoid with exactly one morphism ``a <- b`` for every pair of objects."""
        objects = [str(o) for o in objects]
        k = len(objects)
        labels, dom, cod = [], [], []
        idx = {}
        for a in range(k):
            for b in range(k):
                idx[a, b] = len(labels)
                labels.append(f"{objects[a]}{sep}{objects[b]}")
                dom.append(b)
                cod.append(a)
        comp = {}
        for a in range(k):
            for b in range(k):
                for c in range(k):
                    comp[idx[a, b], idx[b, c]] = idx[a, c]
        ident = [idx[a, a] for a in range(k)]
        return cls._raw(objects, labels, dom, cod, ident, comp)

    @classmethod
    def disjoint_union(cls, parts: Sequence["Groupoid"]) -> "Groupoid":
        objects, labels, dom, cod, ident, comp = [], [], [], [], [], {}
        for P in parts:
            mo, mm = len(objects), len(labels)
            objects.extend(P.objects)
            labels.extend(P.labels)
            dom.extend(d + mo for d in P.dom)
            cod.extend(c + mo for c in P.cod)
            ident.extend(e + mm for e in P.ident)
            for (g, h), k in P._comp.items():
                comp[g + mm, h + mm] = k + mm
        return cls._raw(objects, labels, dom, cod, ident, comp)

    @classmethod
    def empty(cls) -> "Groupoid":
        return cls._raw([], [], [], [], [], {})

    @classmethod
    def trivial(cls, obj: str = "*") -> "Groupoid":
        return cls._raw([obj], ["1"], [0], [0], [0], {(0, 0): 0})

    def subgroupoid(self, morphisms: Iterable[int]) -> "Functor":
        """Inclusion of the subgroupoid on the given (closed) morphism set.

        The objects are the endpoints of the given morphisms.
        """
        ms = sorted(set(morphisms))
        objs = sorted({self.cod[g] for g in ms} | {self.dom[g] for g in ms})
        onew = {a: i for i, a in enumerate(objs)}
        mnew = {g: i for i, g in enumerate(ms)}
        comp = {}
        for g in ms:
            for h in ms:
                if self.dom[g] == self.cod[h]:
                    k = self._comp[g, h]
                    if k not in mnew:
                        raise GroupoidError("morphism set is not closed under composition")
                    comp[mnew[g], mnew[h]] = mnew[k]
        for a in objs:
            if self.ident[a] not in mnew:
                raise GroupoidError("morphism set lacks an identity")
        H = Groupoid._raw([self.objects[a] for a in objs], [self.labels[g] for g in ms],
                          [onew[self.dom[g]] for g in ms], [onew[self.cod[g]] for g in ms],
                          [mnew[self.ident[a]] for a in objs], comp)
        return Functor(H, self, list(objs), list(ms))


@dataclass
class Functor:
    source: Groupoid
    target: Groupoid
    obj_map: list
    mor_map: list

    def find_violation(self) -> Optional[str]:
        S, T = self.source, self.target
        for g in range(S.n_morphisms):
            f = self.mor_map[g]
            if T.dom[f] != self.obj_map[S.dom[g]] or T.cod[f] != self.obj_map[S.cod[g]]:
                return f"morphism {S.labels[g]!r} sent to {T.labels[f]!r} with wrong endpoints"
        for a in range(S.n_objects):
            if self.mor_map[S.ident[a]] != T.ident[self.obj_map[a]]:
                return f"identity of {S.objects[a]!r} not preserved"
        for g, h in S.composable_pairs():
            if self.mor_map[S.comp(g, h)] != T.comp(self.mor_map[g], self.mor_map[h]):
                return f"composite ({S.labels[g]}, {S.labels[h]}) not preserved"
        return None

    def is_covering(self) -> bool:
        """Every star map is a bijection."""
        S, T = self.source, self.target
        for a in range(S.n_objects):
            img = [self.mor_map[g] for g in S.star(a)]
            if len(set(img)) != len(img) or set(img) != set(T.star(self.obj_map[a])):
                return False
        return True

    def compose(self, other: "Functor") -> "Functor":
        """self after other."""
        return Functor(other.source, self.target,
                       [self.obj_map[a] for a in other.obj_map],
                       [self.mor_map[g] for g in other.mor_map])

    @classmethod
    def identity(cls, G: Groupoid) -> "Functor":
        return cls(G, G, list(range(G.n_objects)), list(range(G.n_morphisms)))


@dataclass(frozen=True)
class Expression:
    """A composable sequence g1, ..., gn with cod(g_{i+1}) = dom(g_i)."""

    G: Groupoid = field(repr=False)
    terms: tuple

    def __post_init__(self):
        t = tuple(self.terms)
        object.__setattr__(self, "terms", t)
        for i in range(len(t) - 1):
            if self.G.dom[t[i]] != self.G.cod[t[i + 1]]:
                raise GroupoidError(f"expression not composable at position {i + 1}")

    def __len__(self):
        return len(self.terms)

    @property
    def anchor(self) -> Optional[int]:
        return self.G.cod[self.terms[0]] if self.terms else None

    def value(self) -> int:
        if not self.terms:
            raise GroupoidError("the empty expression has no value without an anchor object")
        return self.G.compose(*self.terms)

    def prefixes(self) -> list:
        """Values of g1, g1g2, ..., g1...gn."""
        out = []
        cur = None
        for g in self.terms:
            cur = g if cur is None else self.G.comp(cur, g)
            out.append(cur)
        return out


def star(G: Groupoid, a: Label) -> list:
    return list(G.star(G.o(a)))


@dataclass
class Components:
    objects: list        # list of lists of object indices
    morphisms: list      # list of lists of morphism indices
    simply_connected_parts: list

    @property
    def is_connected(self) -> bool:
        return len(self.objects) == 1

    @property
    def is_simply_connected(self) -> bool:
        return all(self.simply_connected_parts)

    def __len__(self):
        return len(self.objects)


def components(G: Groupoid) -> Components:
    seen = [None] * G.n_objects
    comps = []
    for a in range(G.n_objects):
        if seen[a] is not None:
            continue
        seen[a] = len(comps)
        part = [a]
        for g in G.star(a):
            b = G.dom[g]
            if seen[b] is None:
                seen[b] = len(comps)
                part.append(b)
        comps.append(sorted(part))
    mors = [[] for _ in comps]
    for g in range(G.n_morphisms):
        mors[seen[G.cod[g]]].append(g)
    simple = []
    for part in comps:
        a = part[0]
        simple.append(len(G.star(a)) == len(part))
    return Components(comps, mors, simple)


@dataclass
class Generation:
    G: Groupoid
    generators: tuple
    length: dict          # morphism -> l_S for the generated morphisms
    generates: bool

    @property
    def morphisms(self) -> list:
        return sorted(self.length)

    def subgroupoid(self) -> Functor:
        return self.G.subgroupoid(self.length)

    def word(self, g: int) -> list:
        """A shortest word s1...sn (from S and S*) with value g."""
        G = self.G
        out = []
        gens = set(self.generators) | {G.inv[s] for s in self.generators}
        while self.length[g] > 0:
            for s in sorted(gens):
                if G.dom[s] == G.dom[g]:
                    h = G.comp(g, G.inv[s])
                    if self.length.get(h) == self.length[g] - 1:
                        out.append(s)
                        g = h
                        break
        return out[::-1]


def generated_subgroupoid(G: Groupoid, S: Iterable[Label]) -> Generation:
    """Subgroupoid generated by ``S`` together with word lengths l_S."""
    S = tuple(sorted({G.m(s) for s in S}))
    gens = sorted(set(S) | {G.inv[s] for s in S})
    by_cod = [[] for _ in G.objects]
    for s in gens:
        by_cod[G.cod[s]].append(s)
    length = {e: 0 for e in G.ident}
    queue = deque(G.ident)
    while queue:
        g = queue.popleft()
        for s in by_cod[G.dom[g]]:
            h = G.comp(g, s)
            if h not in length:
                length[h] = length[g] + 1
                queue.append(h)
    return Generation(G, S, length, len(length) == G.n_morphisms)


@dataclass
class SignCharacter:
    ok: bool
    values: dict
    witness: Optional[tuple] = None


def sign_character(G: Groupoid, S: Iterable[Label]) -> SignCharacter:
    gen = generated_subgroupoid(G, S)
    if not gen.generates:
        raise GroupoidError("S does not generate the groupoid")
    eps = {g: (-1) ** gen.length[g] for g in range(G.n_morphisms)}
    for s in gen.generators:
        if eps[s] != -1:
            return SignCharacter(False, eps, (s,))
    for g, h in G.composable_pairs():
        if eps[G.comp(g, h)] != eps[g] * eps[h]:
            return SignCharacter(False, eps, (g, h))
    return SignCharacter(True, eps)


def universal_cover(G: Groupoid, sep: str = "@") -> tuple:
    """Universal covering groupoid built from slice groupoids.

    For each component with base object ``a`` (least label), the objects
    upstairs are the morphisms ``f: b -> a``; an arrow ``F: f -> f'`` is a
    morphism ``F`` of G with ``f = f' F``.  Returns ``(H, pi)``.
    """
    comps = components(G)
    objects, obj_of = [], {}
    base_of = {}
    for part in comps.objects:
        a = min(part, key=lambda x: G.objects[x])
        for f in G.star(a):
            obj_of[f] = len(objects)
            objects.append(G.labels[f])
            base_of[f] = a
    labels, dom, cod, mor_map, key = [], [], [], [], {}
    for f in sorted(obj_of, key=obj_of.get):
        b = G.dom[f]
        for F in G.out_of(b):
            f2 = G.comp(f, G.inv[F])
            key[F, f] = len(labels)
            labels.append(f"{G.labels[F]}{sep}{G.labels[f]}")
            dom.append(obj_of[f])
            cod.append(obj_of[f2])
            mor_map.append(F)
    comp = {}
    for (F, f), i in key.items():
        f2 = G.comp(f, G.inv[F])
        for F2 in G.out_of(G.dom[f2]):
            comp[key[F2, f2], i] = key[G.comp(F2, F), f]
    ident = [key[G.ident[G.dom[f]], f] for f in sorted(obj_of, key=obj_of.get)]
    if len(set(labels)) != len(labels):
        raise GroupoidError("cover labels collide; choose another separator")
    H = Groupoid._raw(objects, labels, dom, cod, ident, comp)
    obj_map = [G.dom[f] for f in sorted(obj_of, key=obj_of.get)]
    return H, Functor(H, G, obj_map, mor_map)
