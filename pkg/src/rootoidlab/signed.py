"""Signed groupoid-sets and set protorootoids.

A signed groupoid-set gives each object a finite set of roots with a
fixed-point-free involution ``-`` and a choice of positive roots (one from each
pair), and each morphism a bijection of roots commuting with ``-``.

``L_functor`` passes to the orbit sets with N(g) the image of the inversion
set Phi_g; ``K_functor`` goes back by doubling each ground set; ``I_functor``
views a set protorootoid as a protorootoid over full power sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .cat import PrdMorphism, check_prd_morphism
from .classify import PreconditionError, abridge, classify_light, simple_morphisms
from .groupoid import Functor, Groupoid
from .poset import SetPoset
from .prd import PowerSetRep, Protorootoid, Verdict
from .setalg import GroundSet, PartialMap, iter_bits


class SignedSetError(ValueError):
    pass


class SignedGroupoidSet:
    def __init__(self, G: Groupoid, roots: Sequence[GroundSet], neg: Sequence[Sequence[int]],
                 positive: Sequence[int], act: Sequence[Sequence[int]], check: bool = True):
        self.G = G
        self.roots = tuple(roots)
        self.neg = tuple(tuple(n) for n in neg)
        self.positive = tuple(positive)
        self.act = tuple(tuple(p) for p in act)
        if check:
            err = self.find_violation()
            if err:
                raise SignedSetError(err)

    @classmethod
    def from_labels(cls, G: Groupoid, roots: Mapping, act: Mapping, check: bool = True):
        """``roots[obj]`` is a dict mapping each positive root label to its negative."""
        grounds, negs, pos = [], [], []
        for o in G.objects:
            pairs = roots[o]
            labels = []
            for p, n in pairs.items():
                labels += [p, n]
            gr = GroundSet(o, tuple(labels))
            neg = [0] * len(labels)
            m = 0
            for p, n in pairs.items():
                i, j = gr.index(p), gr.index(n)
                neg[i], neg[j] = j, i
                m |= 1 << i
            grounds.append(gr)
            negs.append(neg)
            pos.append(m)
        perms = []
        for g, lab in enumerate(G.labels):
            src, dst = grounds[G.dom[g]], grounds[G.cod[g]]
            table = act[lab]
            if set(table) != set(src.elements):
                raise SignedSetError(f"action of {lab!r} is not defined on all roots")
            perms.append(tuple(dst.index(table[x]) for x in src.elements))
        return cls(G, grounds, negs, pos, perms, check)

    def find_violation(self) -> Optional[str]:
        G = self.G
        for a in range(G.n_objects):
            n = self.neg[a]
            k = len(self.roots[a])
            if len(n) != k or any(n[n[i]] != i or n[i] == i for i in range(k)):
                return f"negation at {G.objects[a]!r} is not a fixed-point-free involution"
            pos = self.positive[a]
            for i in range(k):
                if (pos >> i & 1) == (pos >> n[i] & 1):
                    return f"positive roots at {G.objects[a]!r} must contain exactly one of each pair"
        for g in range(G.n_morphisms):
            p = self.act[g]
            if sorted(p) != list(range(len(self.roots[G.cod[g]]))) or len(p) != len(self.roots[G.dom[g]]):
                return f"action of {G.labels[g]!r} is not a bijection"
            nb, na = self.neg[G.dom[g]], self.neg[G.cod[g]]
            if any(p[nb[i]] != na[p[i]] for i in range(len(p))):
                return f"action of {G.labels[g]!r} does not commute with negation"
        for a in range(G.n_objects):
            if self.act[G.ident[a]] != tuple(range(len(self.roots[a]))):
                return f"identity at {G.objects[a]!r} moves roots"
        for g, h in G.composable_pairs():
            pg, ph = self.act[g], self.act[h]
            if self.act[G.comp(g, h)] != tuple(pg[i] for i in ph):
                return f"action not functorial at ({G.labels[g]}, {G.labels[h]})"
        return None

    def negative(self, a: int) -> int:
        return self.roots[a].full ^ self.positive[a]

    def apply(self, g: int, mask: int) -> int:
        p = self.act[g]
        out = 0
        for i in iter_bits(mask):
            out |= 1 << p[i]
        return out

    def with_positive(self, positive: Sequence[int]) -> "SignedGroupoidSet":
        """Same roots and action with another choice of positive roots."""
        return SignedGroupoidSet(self.G, self.roots, self.neg, positive, self.act)


def phi_g(R: SignedGroupoidSet, g) -> int:
    """Inversion set: positive roots at cod(g) that are images of negative roots at dom(g)."""
    G = R.G
    g = G.m(g)
    return R.positive[G.cod[g]] & R.apply(g, R.negative(G.dom[g]))


class SetProtorootoid(Protorootoid):
    """A protorootoid whose rings are full power sets."""

    def __init__(self, G, rep, N, check=True):
        if any(s is not None for s in rep.subrings):
            raise ValueError("set protorootoids use full power sets")
        super().__init__(G, rep, N, check)


def I_functor(T: Protorootoid) -> Protorootoid:
    rep = PowerSetRep(T.G, T.rep.grounds, T.rep.act, None, check=False)
    return Protorootoid(T.G, rep, T.values, check=False)


def _orbit_label(p: str, n: str) -> str:
    if p[:1] in "+-" and n[:1] in "+-" and p[1:] == n[1:] and p[:1] != n[:1]:
        return p[1:]
    return "|".join(sorted((p, n)))


def orbit_maps(R: SignedGroupoidSet) -> list:
    """Per object, the list mapping root index -> orbit index (orbits ordered by positive root)."""
    out = []
    for a in range(R.G.n_objects):
        k = len(R.roots[a])
        pi = [None] * k
        j = 0
        for i in range(k):
            if R.positive[a] >> i & 1:
                pi[i] = pi[R.neg[a][i]] = j
                j += 1
        out.append(pi)
    return out


def L_functor(R: SignedGroupoidSet) -> SetProtorootoid:
    G = R.G
    pis = orbit_maps(R)
    grounds = []
    for a in range(G.n_objects):
        gr = R.roots[a]
        labels = [_orbit_label(gr.elements[i], gr.elements[R.neg[a][i]])
                  for i in range(len(gr)) if R.positive[a] >> i & 1]
        grounds.append(GroundSet(G.objects[a], tuple(labels)))
    act = []
    for g in range(G.n_morphisms):
        b, a = G.dom[g], G.cod[g]
        reps = [i for i in range(len(R.roots[b])) if R.positive[b] >> i & 1]
        act.append(tuple(pis[a][R.act[g][i]] for i in reps))
    rep = PowerSetRep(G, grounds, act, check=False)
    values = []
    for g in range(G.n_morphisms):
        pi = pis[G.cod[g]]
        values.append(sum(1 << pi[i] for i in iter_bits(phi_g(R, g))))
    return SetProtorootoid(G, rep, values, check=True)


def K_functor(T: Protorootoid) -> SignedGroupoidSet:
    if any(s is not None for s in T.rep.subrings):
        raise ValueError("K_functor takes a set protorootoid")
    G = T.G
    roots, negs, pos = [], [], []
    for a in range(G.n_objects):
        gr = T.rep.grounds[a]
        labels = []
        for x in gr.elements:
            labels += [f"+{x}", f"-{x}"]
        roots.append(GroundSet(G.objects[a], tuple(labels)))
        negs.append([i ^ 1 for i in range(len(labels))])
        pos.append(sum(1 << (2 * i) for i in range(len(gr))))
    act = []
    for g in range(G.n_morphisms):
        flip = T.values[G.inv[g]]  # N(g*), over the ground set at dom(g)
        p = T.rep.act[g]
        perm = []
        for i in range(len(p)):
            s = flip >> i & 1
            perm += [2 * p[i] + s, 2 * p[i] + (1 - s)]
        act.append(perm)
    return SignedGroupoidSet(G, roots, negs, pos, act, check=True)


def set_iso_morphism(source: Protorootoid, target: Protorootoid, ground_maps: Sequence[Sequence[int]]) -> PrdMorphism:
    """Identity functor with mu given by bijections ground(source, a) -> ground(target, a)."""
    mus = []
    for a in range(source.G.n_objects):
        f = ground_maps[a]
        inv = [None] * len(f)
        for i, j in enumerate(f):
            inv[j] = i
        mus.append(PartialMap.from_table(target.rep.grounds[a], source.rep.grounds[a], inv))
    return PrdMorphism(source, target, Functor(source.G, target.G, list(range(source.G.n_objects)),
                                               list(range(source.G.n_morphisms))), mus)


def lk_roundtrip(T: Protorootoid) -> Verdict:
    """Natural isomorphism L(K(T)) -> T, orbit {+x, -x} |-> x, built and checked."""
    LK = L_functor(K_functor(T))
    if LK.G is not T.G:
        return Verdict(False, None, "groupoids differ")
    maps = []
    for a in range(T.G.n_objects):
        # orbit j of L(K(T)) is {+x_j, -x_j}
        maps.append(list(range(len(T.rep.grounds[a]))))
    f = set_iso_morphism(LK, T, maps)
    v = check_prd_morphism(f)
    if not v:
        return v
    return Verdict(all(m.is_bijective() for m in f.mu), f)


def kl_roundtrip(R: SignedGroupoidSet) -> Verdict:
    """Isomorphism R -> K(L(R)): positive a |-> (orbit, +), negative a |-> (orbit, -)."""
    KL = K_functor(L_functor(R))
    G = R.G
    pis = orbit_maps(R)
    maps = []
    for a in range(G.n_objects):
        f = []
        for i in range(len(R.roots[a])):
            sign = 0 if R.positive[a] >> i & 1 else 1
            f.append(2 * pis[a][i] + sign)
        maps.append(f)
        if sorted(f) != list(range(len(KL.roots[a]))):
            return Verdict(False, a, "not a bijection")
        if sum(1 << f[i] for i in iter_bits(R.positive[a])) != KL.positive[a]:
            return Verdict(False, a, "positive roots not matched")
        if any(f[R.neg[a][i]] != KL.neg[a][f[i]] for i in range(len(f))):
            return Verdict(False, a, "negation not matched")
    for g in range(G.n_morphisms):
        b, a = G.dom[g], G.cod[g]
        for i in range(len(R.roots[b])):
            if maps[a][R.act[g][i]] != KL.act[g][maps[b][i]]:
                return Verdict(False, g, f"action of {G.labels[g]!r} not matched")
    return Verdict(True, maps)


def rootoidal_signed_check(R: SignedGroupoidSet) -> Verdict:
    """The rootoid axioms read directly on the inversion sets Phi_g."""
    G = R.G
    phis = [phi_g(R, g) for g in range(G.n_morphisms)]
    for g in range(G.n_morphisms):
        if not phis[g] and not G.is_identity(g):
            return Verdict(False, ("i", g), f"Phi of {G.labels[g]!r} is empty")
    for a in range(G.n_objects):
        poset = SetPoset(phis[g] for g in G.star(a))
        pair = None if poset.minimum() is None else poset.find_missing_meet()
        if poset.minimum() is None or pair is not None:
            return Verdict(False, ("ii", a, pair), f"inversion sets at {G.objects[a]!r} do not form a meet semilattice")
        bad = poset.find_jop_failure()
        if bad is not None:
            return Verdict(False, ("iii", a, bad), f"JOP fails for inversion sets at {G.objects[a]!r}")
    return Verdict(True)


@dataclass
class SetForm:
    T: SetProtorootoid
    atoms: list          # per object, the atom masks of the original rings indexing the new ground set
    comparison: PrdMorphism
    isomorphic_after_abridging: bool


def to_set_protorootoid(P: Protorootoid) -> SetForm:
    """Set protorootoid on the orbits of simple values, with its comparison to P."""
    if not classify_light(P)["principal"]:
        raise PreconditionError("to_set_protorootoid needs a principal protorootoid")
    G = P.G
    S = simple_morphisms(P)
    atoms = []
    for a in range(G.n_objects):
        found = set()
        for g in G.star(a):
            b = G.dom[g]
            for s in S:
                if G.cod[s] == b:
                    found.add(P.rep.apply(g, P.values[s]))
        atoms.append(sorted(found, key=lambda m: (m & -m, m)))
    grounds = []
    for a in range(G.n_objects):
        gr = P.rep.grounds[a]
        grounds.append(GroundSet(G.objects[a], tuple("|".join(gr.labels(x)) for x in atoms[a])))
    index = [{x: i for i, x in enumerate(atoms[a])} for a in range(G.n_objects)]
    act = []
    for g in range(G.n_morphisms):
        b, a = G.dom[g], G.cod[g]
        act.append(tuple(index[a][P.rep.apply(g, x)] for x in atoms[b]))
    rep = PowerSetRep(G, grounds, act, check=True)
    values = []
    for g in range(G.n_morphisms):
        a = G.cod[g]
        values.append(sum(1 << i for i, x in enumerate(atoms[a]) if x & P.values[g] == x))
    T = SetProtorootoid(G, rep, values, check=True)
    # comparison I(T) -> P: a point of P's ground set goes to the atom containing it
    mus = []
    for a in range(G.n_objects):
        gr = P.rep.grounds[a]
        table = [None] * len(gr)
        for i, x in enumerate(atoms[a]):
            for j in iter_bits(x):
                table[j] = i
        mus.append(PartialMap.from_table(gr, grounds[a], table))
    IT = I_functor(T)
    f = PrdMorphism(IT, P, Functor.identity(G), mus)
    ok = check_prd_morphism(f).ok
    if ok:
        AT, AP = abridge(IT), abridge(P)
        for a in range(G.n_objects):
            imgs = sorted(f.mu_mask(a, blk) for blk in AT.rep.atoms(a))
            if imgs != sorted(AP.rep.atoms(a)):
                ok = False
    return SetForm(T, atoms, f, ok)
