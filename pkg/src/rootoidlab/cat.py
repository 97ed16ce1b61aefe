"""Morphisms of protorootoids and their grades.

A morphism ``(alpha, mu)`` consists of a functor of groupoids and, for every
source object ``a``, a ring homomorphism ``mu_a`` from the ring at ``a`` to the
ring at ``alpha(a)``.  ``mu_a`` is stored as a :class:`PartialMap` from the
target's ground set to the source's ground set (preimage encoding).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .classify import PreconditionError, is_abridged, is_rootoid, _complete
from .groupoid import Functor, Groupoid, universal_cover
from .prd import PowerSetRep, Protorootoid, Verdict, is_faithful
from .setalg import GroundSet, PartialMap, SubringPartition, iter_bits


@dataclass
class PrdMorphism:
    source: Protorootoid
    target: Protorootoid
    alpha: Functor
    mu: list  # PartialMap per source object: ground'(alpha a) -> ground(a)

    def mu_mask(self, a: int, mask: int) -> int:
        return self.mu[a].apply_mask(mask)

    def star_map(self, a: int) -> dict:
        return {g: self.alpha.mor_map[g] for g in self.source.G.star(a)}


def identity_morphism(P: Protorootoid) -> PrdMorphism:
    return PrdMorphism(P, P, Functor.identity(P.G), [PartialMap.identity(gr) for gr in P.rep.grounds])


def compose_morphisms(f2: PrdMorphism, f1: PrdMorphism) -> PrdMorphism:
    """f2 after f1."""
    alpha = f2.alpha.compose(f1.alpha)
    mus = []
    for a in range(f1.source.G.n_objects):
        m1 = f1.mu[a]
        m2 = f2.mu[f1.alpha.obj_map[a]]
        table = []
        for i in m2.table:
            table.append(None if i is None else m1.table[i])
        mus.append(PartialMap.from_table(m2.source, m1.target, table))
    return PrdMorphism(f1.source, f2.target, alpha, mus)


def check_prd_morphism(f: PrdMorphism) -> Verdict:
    P, Q = f.source, f.target
    G, H = P.G, Q.G
    if f.alpha.source is not G or f.alpha.target is not H:
        return Verdict(False, None, "functor does not join the underlying groupoids")
    bad = f.alpha.find_violation()
    if bad:
        return Verdict(False, ("functor",), bad)
    for a in range(G.n_objects):
        m = f.mu[a]
        if m.target != P.rep.grounds[a] or m.source != Q.rep.grounds[f.alpha.obj_map[a]]:
            return Verdict(False, ("mu", a), f"mu at {G.objects[a]!r} has the wrong ground sets")
        for x in P.rep.atoms(a):
            if not Q.rep.in_ring(f.alpha.obj_map[a], m.apply_mask(x)):
                return Verdict(False, ("mu", a), f"mu at {G.objects[a]!r} leaves the target ring")
    for g in range(G.n_morphisms):
        a, b = G.cod[g], G.dom[g]
        ag = f.alpha.mor_map[g]
        for x in P.rep.atoms(b):
            lhs = f.mu_mask(a, P.rep.apply(g, x))
            rhs = Q.rep.apply(ag, f.mu_mask(b, x))
            if lhs != rhs:
                return Verdict(False, ("naturality", g), f"mu is not natural at {G.labels[g]!r}")
    for g in range(G.n_morphisms):
        if f.mu_mask(G.cod[g], P.values[g]) != Q.values[f.alpha.mor_map[g]]:
            return Verdict(False, ("cocycle", g),
                           f"mu(N({G.labels[g]})) differs from N'({H.labels[f.alpha.mor_map[g]]})")
    for a in range(G.n_objects):
        st = G.star(a)
        for x in st:
            for y in st:
                if P.leq(x, y) and not Q.leq(f.alpha.mor_map[x], f.alpha.mor_map[y]):
                    return Verdict(False, ("order", x, y), "star map does not preserve the weak preorder")
    return Verdict(True)


# -- star maps and their partial left adjoints -------------------------------

def _star_value_map(f: PrdMorphism, a: int) -> tuple:
    """The star map at ``a`` on weak order indices (source faithful)."""
    P, Q = f.source, f.target
    Wa = P.weak_order(a)
    Wb = Q.weak_order(f.alpha.obj_map[a])
    theta = [Wb.index_of(f.alpha.mor_map[Wa.morphism(i)]) for i in range(len(Wa))]
    return Wa, Wb, theta


def csl0_violation(f: PrdMorphism, a: int) -> Optional[str]:
    """Whether the star map at ``a`` preserves minimum, nonempty meets and existing joins."""
    Wa, Wb, th = _star_value_map(f, a)
    p, q = Wa.poset, Wb.poset
    if th[p.minimum()] != q.minimum():
        return "minimum not preserved"
    n = len(p)
    for i in range(n):
        for j in range(i + 1, n):
            m = p.meet(i, j)
            if m is None or th[m] != q.meet(th[i], th[j]):
                return f"meet of {Wa.morphism(i)}, {Wa.morphism(j)} not preserved"
            k = p.join(i, j)
            if k is not None and th[k] != q.join(th[i], th[j]):
                return f"join of {Wa.morphism(i)}, {Wa.morphism(j)} not preserved"
    return None


@dataclass
class ThetaPerp:
    a: int
    values: dict      # target weak-order index -> source weak-order index
    theta: list       # source index -> target index

    @property
    def domain(self) -> list:
        return sorted(self.values)


def theta_perp(f: PrdMorphism, a) -> ThetaPerp:
    """Partial left adjoint of the star map at ``a``: gamma |-> min{x : gamma <= theta(x)}."""
    a = f.source.G.o(a)
    for P in (f.source, f.target):
        if not is_rootoid(P):
            raise PreconditionError("theta_perp needs rootoids at both ends")
    bad = csl0_violation(f, a)
    if bad:
        raise PreconditionError(f"star map at {f.source.G.objects[a]!r} is not a CSL0 morphism: {bad}")
    Wa, Wb, th = _star_value_map(f, a)
    p, q = Wa.poset, Wb.poset
    values = {}
    for gamma in range(len(q)):
        over = 0
        for x in range(len(p)):
            if q.leq(gamma, th[x]):
                over |= 1 << x
        if not over:
            continue
        m = p.meet_of_mask(over)
        if m is None or not over >> m & 1:
            raise AssertionError("no least element above gamma although theta preserves meets")
        values[gamma] = m
    for gamma, m in values.items():
        for x in range(len(p)):
            if q.leq(gamma, th[x]) != p.leq(m, x):
                raise AssertionError("adjunction fails")
    return ThetaPerp(a, values, th)


@dataclass
class MorphismGrade:
    in_prd: bool
    in_rd: bool
    in_Rd: bool
    in_RdE: bool
    witnesses: dict = field(default_factory=dict)
    adjoints: dict = field(default_factory=dict)


def grade_morphism(f: PrdMorphism) -> MorphismGrade:
    for name, P in (("source", f.source), ("target", f.target)):
        v = is_rootoid(P)
        if not v:
            raise PreconditionError(f"{name} is not a rootoid: {v.reason}")
    w = {}
    prd = check_prd_morphism(f)
    if not prd:
        w["in_prd"] = prd.reason
        return MorphismGrade(False, False, False, False, w)
    G = f.source.G
    rd = True
    for a in range(G.n_objects):
        bad = csl0_violation(f, a)
        if bad:
            rd = False
            w["in_rd"] = f"at {G.objects[a]!r}: {bad}"
            break
    if not rd:
        return MorphismGrade(True, False, False, False, w)
    adj = {a: theta_perp(f, a) for a in range(G.n_objects)}
    Rd = True
    for a in range(G.n_objects):
        Wa, Wb, th = _star_value_map(f, a)
        p, q = Wa.poset, Wb.poset
        for gp, m in adj[a].values.items():
            for x in range(len(p)):
                target_disjoint = not q.values[th[x]] & q.values[gp]
                source_disjoint = not p.values[x] & p.values[m]
                if target_disjoint and not source_disjoint:
                    Rd = False
                    w.setdefault("in_Rd", f"AOP fails at {G.objects[a]!r}")
                if source_disjoint and not target_disjoint:
                    # this direction holds for every morphism; recorded if it ever fails
                    Rd = False
                    w.setdefault("aop_automatic_direction", f"automatic AOP direction fails at {G.objects[a]!r}")
    RdE = Rd
    if Rd:
        for a in range(G.n_objects):
            Wa, Wb, th = _star_value_map(f, a)
            q = Wb.poset
            if len(set(th)) != len(th):
                RdE = False
                w["in_RdE"] = f"star map at {G.objects[a]!r} is not injective"
                break
            img = set(th)
            for i in img:
                for j in img:
                    m = q.meet(i, j)
                    k = q.join(i, j)
                    if m not in img or (k is not None and k not in img):
                        RdE = False
                        w["in_RdE"] = f"image at {G.objects[a]!r} is not a join-closed meet subsemilattice"
                        break
                if not RdE:
                    break
            if not RdE:
                break
    return MorphismGrade(True, True, Rd, RdE, w, adj)


# -- inverse images, coverings ---------------------------------------------------

def inverse_image(P: Protorootoid, i: Functor) -> tuple:
    """Pull P back along ``i: H -> G``; returns (protorootoid on H, the canonical morphism)."""
    H = i.source
    if i.target is not P.G:
        raise ValueError("functor must land in the protorootoid's groupoid")
    grounds, subs, mus = [], [], []
    for a in range(H.n_objects):
        down = P.rep.grounds[i.obj_map[a]]
        gr = GroundSet(H.objects[a], down.elements)
        grounds.append(gr)
        sub = P.rep.subrings[i.obj_map[a]]
        subs.append(None if sub is None else SubringPartition(gr, sub.support, sub.blocks))
        mus.append(PartialMap.from_table(down, gr, list(range(len(down)))))
    act = [P.rep.act[i.mor_map[h]] for h in range(H.n_morphisms)]
    rep = PowerSetRep(H, grounds, act, subs, check=False)
    Q = Protorootoid(H, rep, [P.values[i.mor_map[h]] for h in range(H.n_morphisms)], check=False)
    return Q, PrdMorphism(Q, P, i, mus)


def restriction(P: Protorootoid, morphisms) -> tuple:
    inc = P.G.subgroupoid(P.G.m(g) for g in morphisms)
    return inverse_image(P, inc)


def is_covering(f: PrdMorphism) -> bool:
    if not f.alpha.is_covering():
        return False
    for a, m in enumerate(f.mu):
        if not m.is_bijective():
            return False
        src_atoms = sorted(f.mu_mask(a, x) for x in f.source.rep.atoms(a))
        if src_atoms != sorted(f.target.rep.atoms(f.alpha.obj_map[a])):
            return False
    return True


def cover(P: Protorootoid) -> tuple:
    """Universal cover of the groupoid, with P pulled back to it."""
    H, pi = universal_cover(P.G)
    return inverse_image(P, pi)


# -- complete rootoids --------------------------------------------------------

@dataclass
class CompleteStructure:
    omega: dict         # object -> longest morphism in the star
    e: dict             # object -> N(omega(a)), the unit of the ring
    d: Functor
    D: PrdMorphism
    checks: dict


def complete_structure(P: Protorootoid) -> CompleteStructure:
    G = P.G
    if not is_faithful(P):
        raise PreconditionError("complete_structure needs a faithful protorootoid")
    c = _complete(P)
    if not c:
        raise PreconditionError(c.reason)
    ab = is_abridged(P)
    if not ab:
        raise PreconditionError(f"{ab.reason}; abridge first")
    omega, e = {}, {}
    for a in range(G.n_objects):
        W = P.weak_order(a)
        omega[a] = W.morphism(W.maximum())
        e[a] = P.values[omega[a]]
    checks = {}
    checks["unit"] = all(e[a] == P.rep.unit(a) for a in e)
    # omega(a)* = omega(a') where a' = dom omega(a)
    checks["involution"] = all(G.inv[omega[a]] == omega[G.dom[omega[a]]] for a in omega)
    anti = True
    for a in range(G.n_objects):
        w = omega[a]
        st = G.star(G.dom[w])
        for h in st:
            for k in st:
                if P.leq(h, k) != P.leq(G.comp(w, k), G.comp(w, h)):
                    anti = False
    checks["anti_isomorphism"] = anti
    comp_ok = True
    for g in range(G.n_morphisms):
        b, a = G.cod[g], G.dom[g]
        if P.values[G.comp(g, omega[a])] != e[b] ^ P.values[g]:
            comp_ok = False
    checks["complement"] = comp_ok
    checks["ortholattice"] = all(_is_ortholattice(P, a) for a in range(G.n_objects))

    obj_map = [G.dom[omega[a]] for a in range(G.n_objects)]
    mor_map = [G.compose(G.inv[omega[G.cod[f]]], f, omega[G.dom[f]]) for f in range(G.n_morphisms)]
    d = Functor(G, G, obj_map, mor_map)
    mus = []
    for a in range(G.n_objects):
        # mu_a = Lambda(omega(a)*) : Lambda(a) -> Lambda(d a); preimage encoding via omega(a)
        src = P.rep.grounds[obj_map[a]]
        mus.append(PartialMap.from_table(src, P.rep.grounds[a], list(P.rep.act[omega[a]])))
    D = PrdMorphism(P, P, d, mus)
    checks["functor"] = d.find_violation() is None
    checks["D_in_prd"] = check_prd_morphism(D).ok
    DD = compose_morphisms(D, D)
    checks["D_squared_identity"] = (DD.alpha.obj_map == list(range(G.n_objects))
                                    and DD.alpha.mor_map == list(range(G.n_morphisms))
                                    and all(m.table == tuple(range(len(m.target))) for m in DD.mu))
    return CompleteStructure(omega, e, d, D, checks)


def _is_ortholattice(P: Protorootoid, a: int) -> bool:
    poset = P.weak_order(a).poset
    unit = P.rep.unit(a)
    n = len(poset)
    bottom, top = poset.minimum(), poset.maximum()
    if bottom is None or top is None or poset.find_missing_meet() is not None:
        return False
    comp = []
    for v in poset.values:
        c = poset.pos.get(unit ^ v)
        if c is None:
            return False
        comp.append(c)
    for i in range(n):
        if comp[comp[i]] != i or poset.meet(i, comp[i]) != bottom or poset.join(i, comp[i]) != top:
            return False
        for j in range(n):
            if poset.leq(i, j) and not poset.leq(comp[j], comp[i]):
                return False
    return True
