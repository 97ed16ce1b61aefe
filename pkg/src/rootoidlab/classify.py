"""Classification of protorootoids: the standard taxonomy, rootoid axioms,
the semilocal criterion, abridgement and length-function checks."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .groupoid import Expression, components, generated_subgroupoid
from .prd import PowerSetRep, Protorootoid, Verdict, is_compatible, is_faithful
from .setalg import SubringPartition, iter_bits, signature_blocks

REGULAR_ENUMERATION_LIMIT = 15
EXHAUSTIVE_JOP_LIMIT = 20

FLAGS = ("connected", "simply_connected", "complemented", "complete", "interval_finite",
         "cocycle_finite", "atomically_generated", "simply_generated", "principal",
         "preprincipal", "abridged", "saturated", "pseudoprincipal", "regular",
         "faithful", "rootoid")


class PreconditionError(ValueError):
    pass


@dataclass
class PropertyReport:
    connected: bool = False
    simply_connected: bool = False
    complemented: bool = False
    complete: bool = False
    interval_finite: bool = True
    cocycle_finite: bool = True
    atomically_generated: bool = False
    simply_generated: bool = False
    principal: bool = False
    preprincipal: bool = False
    abridged: bool = False
    saturated: bool = False
    pseudoprincipal: bool = False
    regular: bool = True
    faithful: bool = False
    rootoid: bool = False
    atomic_morphisms: frozenset = frozenset()
    simple_morphisms: frozenset = frozenset()
    witnesses: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    def flags(self) -> dict:
        return {k: getattr(self, k) for k in FLAGS}


# -- per-object helpers -----------------------------------------------------

def atomic_morphisms(P: Protorootoid) -> set:
    out = set()
    for a in range(P.G.n_objects):
        W = P.weak_order(a)
        for i in W.poset.atoms():
            out.update(W.witnesses[i])
    return out


def simple_morphisms(P: Protorootoid) -> set:
    G = P.G
    out = set()
    for g in range(G.n_morphisms):
        v = P.values[g]
        if v and v in P.rep.atoms(G.cod[g]):
            out.add(g)
    return out


def is_abridged(P: Protorootoid) -> Verdict:
    for a in range(P.G.n_objects):
        vals = P.weak_order(a).poset.values
        support, blocks = signature_blocks(list(vals))
        if support != P.rep.unit(a) or sorted(blocks) != sorted(P.rep.atoms(a)):
            return Verdict(False, a, f"ring at {P.G.objects[a]!r} is larger than the one generated by its weak order")
    return Verdict(True)


def _complemented(P) -> Verdict:
    for a in range(P.G.n_objects):
        W = P.weak_order(a)
        unit = P.rep.unit(a)
        for v in W.poset.values:
            if (unit ^ v) not in W.poset.pos:
                return Verdict(False, (a, v), f"complement of a weak order element at {P.G.objects[a]!r} is missing")
    return Verdict(True)


def _complete(P) -> Verdict:
    for a in range(P.G.n_objects):
        poset = P.weak_order(a).poset
        if poset.maximum() is None:
            return Verdict(False, a, f"weak order at {P.G.objects[a]!r} has no maximum")
        pair = poset.find_missing_meet()
        if pair is not None:
            return Verdict(False, (a, pair), f"weak order at {P.G.objects[a]!r} lacks a meet")
    return Verdict(True)


def _preprincipal_dichotomy(P, atoms) -> Verdict:
    G = P.G
    for s in atoms:
        a = G.cod[s]
        ns = P.values[s]
        for g in G.star(a):
            ng = P.values[g]
            if ng & ns and ns & ng != ns:
                return Verdict(False, (g, s), "atom neither contained in nor disjoint from N(g)")
    return Verdict(True)


def _saturated(P) -> Verdict:
    """Every maximal chain of [0, N(g)] in the weak order is maximal in the ring.

    A maximal chain of the interval is made of cover relations of the weak
    order, and it is maximal in the Boolean interval iff each step raises the
    rank by one.  So it suffices to look at every cover relation.
    """
    for a in range(P.G.n_objects):
        poset = P.weak_order(a).poset
        for i, j in poset.covers():
            d = P.rep.rank(a, poset.values[j]) - P.rep.rank(a, poset.values[i])
            if d != 1:
                return Verdict(False, (a, poset.values[i], poset.values[j]),
                               f"cover step of rank {d} in the weak order at {P.G.objects[a]!r}")
    return Verdict(True)


def maximal_chains(poset, top: int) -> list:
    """All maximal chains from the minimum to ``top`` (exponential; for tests)."""
    bottom = poset.minimum()
    succ = {}
    for i, j in poset.covers():
        succ.setdefault(i, []).append(j)
    out = []

    def walk(path):
        cur = path[-1]
        if cur == top:
            out.append(list(path))
            return
        for j in succ.get(cur, ()):
            if poset.leq(j, top):
                walk(path + [j])

    walk([bottom])
    return out


def _pseudoprincipal(P) -> Verdict:
    for a in range(P.G.n_objects):
        poset = P.weak_order(a).poset
        bottom = poset.minimum()
        for h in range(len(poset)):
            if poset.values[h] == 0:
                continue
            cand = poset.down[h] & ~(1 << bottom) if bottom is not None else poset.down[h]
            for g in range(len(poset)):
                if not cand & (poset.down[g] | poset.disj[g]):
                    return Verdict(False, (a, poset.values[h], poset.values[g]),
                                   f"pseudoprincipal condition fails at {P.G.objects[a]!r}")
    return Verdict(True)


def _regular(P) -> tuple:
    """Directed-subset joins agree with unions.  Returns (verdict, method)."""
    method = "enumerated"
    for a in range(P.G.n_objects):
        poset = P.weak_order(a).poset
        n = len(poset)
        if n > REGULAR_ENUMERATION_LIMIT:
            method = "implied by interval finiteness"
            continue
        full = (1 << n) - 1
        ub = [full] * (1 << n)
        un = [0] * (1 << n)
        for mask in range(1, 1 << n):
            low = mask & -mask
            i = low.bit_length() - 1
            rest = mask ^ low
            ub[mask] = ub[rest] & poset.up[i]
            un[mask] = un[rest] | poset.values[i]
            # a finite subset is directed iff it has a largest element
            directed = any(mask & ~poset.down[m] == 0 for m in iter_bits(mask))
            if not directed:
                continue
            j = poset._by_up.get(ub[mask]) if ub[mask] else None
            if j is not None and poset.values[j] != un[mask]:
                return Verdict(False, (a, mask), "directed join differs from union"), method
    return Verdict(True), method


def _lengths_match(P, gen) -> Verdict:
    for g in range(P.G.n_morphisms):
        if gen.length.get(g) != P.length(g):
            return Verdict(False, g, f"l_S({P.G.labels[g]}) = {gen.length.get(g)} but l_N = {P.length(g)}")
    return Verdict(True)


# -- rootoid axioms --------------------------------------------------------

def is_rootoid(P: Protorootoid, exhaustive_jop: bool = False) -> Verdict:
    """Faithful, weak orders are complete meet semilattices, and the JOP holds.

    For a finite weak order, being a complete meet semilattice amounts to
    having a minimum and pairwise meets, and the JOP for families reduces
    to pairs since bounded joins are iterated binary joins.
    """
    G = P.G
    f = is_faithful(P)
    if not f:
        return Verdict(False, ("not faithful", f.witness), "not faithful")
    for a in range(G.n_objects):
        W = P.weak_order(a)
        poset = W.poset
        if poset.minimum() is None:
            return Verdict(False, ("no minimum", a), f"weak order at {G.objects[a]!r} has no minimum")
        pair = poset.find_missing_meet()
        if pair is not None:
            x, y = (W.morphism(i) for i in pair)
            return Verdict(False, ("no meet", a, x, y),
                           f"weak order at {G.objects[a]!r} is not a meet semilattice: "
                           f"{G.labels[x]} and {G.labels[y]} have no meet")
        if exhaustive_jop and len(poset) <= EXHAUSTIVE_JOP_LIMIT:
            bad = poset.find_jop_failure_exhaustive()
            if bad is not None:
                fam, k = bad
                return Verdict(False, ("jop", a, [W.morphism(i) for i in iter_bits(fam)], W.morphism(k)),
                               f"JOP fails at {G.objects[a]!r}")
        else:
            bad = poset.find_jop_failure()
            if bad is not None:
                i, j, k = bad
                return Verdict(False, ("jop", a, [W.morphism(i), W.morphism(j)], W.morphism(k)),
                               f"JOP fails at {G.objects[a]!r}")
    return Verdict(True)


def jop_agreement(P: Protorootoid) -> list:
    """(object, binary verdict, exhaustive verdict) for stars small enough to enumerate."""
    out = []
    for a in range(P.G.n_objects):
        poset = P.weak_order(a).poset
        if len(poset) <= EXHAUSTIVE_JOP_LIMIT and poset.is_meet_semilattice():
            out.append((a, poset.find_jop_failure() is None,
                        poset.find_jop_failure_exhaustive() is None))
    return out


def slc_check(P: Protorootoid) -> Verdict:
    """Semilocal criterion; equivalent to being a rootoid for interval finite, faithful P."""
    f = is_faithful(P)
    if not f:
        raise PreconditionError("slc_check needs a faithful protorootoid")
    G = P.G
    for a in range(G.n_objects):
        W = P.weak_order(a)
        poset = W.poset
        atoms = poset.atoms()
        for ir, r in enumerate(atoms):
            for s in atoms[ir:]:
                if not poset.bounded_above(r, s):
                    continue
                j = poset.join(r, s)
                for g in range(len(poset)):
                    if not (poset.disj[g] >> r & 1 and poset.disj[g] >> s & 1):
                        continue
                    if j is None or not poset.disj[g] >> j & 1:
                        rr, ss, gg = W.morphism(r), W.morphism(s), W.morphism(g)
                        what = "has no join" if j is None else "has a join meeting N(g)"
                        return Verdict(False, (a, rr, ss, gg),
                                       f"at {G.objects[a]!r}: N({G.labels[rr]}) v N({G.labels[ss]}) {what}"
                                       f" with g = {G.labels[gg]}")
    return Verdict(True)


# -- the report --------------------------------------------------------------

def classify(P: Protorootoid, exhaustive_jop: bool = False) -> PropertyReport:
    G = P.G
    r = PropertyReport()
    w = r.witnesses
    comps = components(G)
    r.connected = comps.is_connected
    r.simply_connected = comps.is_simply_connected
    # finite input: every interval and every N(g) is finite
    r.interval_finite = True
    r.cocycle_finite = True

    fv = is_faithful(P)
    r.faithful = fv.ok
    if not fv:
        w["faithful"] = fv.reason

    A = atomic_morphisms(P)
    S = simple_morphisms(P)
    r.atomic_morphisms = frozenset(A)
    r.simple_morphisms = frozenset(S)
    genA = generated_subgroupoid(G, A)
    genS = generated_subgroupoid(G, S)
    r.atomically_generated = genA.generates
    r.simply_generated = genS.generates
    if not genA.generates:
        w["atomically_generated"] = "atomic morphisms generate a proper subgroupoid"
    if not genS.generates:
        w["simply_generated"] = "simple morphisms generate a proper subgroupoid"
    if r.simply_generated:
        lm = _lengths_match(P, genS)
        r.principal = r.cocycle_finite and lm.ok
        if not lm:
            w["principal"] = lm.reason
    else:
        w["principal"] = "not simply generated"

    for name, fn in (("complemented", _complemented), ("complete", _complete),
                     ("abridged", is_abridged), ("saturated", _saturated),
                     ("pseudoprincipal", _pseudoprincipal)):
        v = fn(P)
        setattr(r, name, v.ok)
        if not v:
            w[name] = v.reason

    if r.faithful and r.interval_finite:
        d = _preprincipal_dichotomy(P, A)
        r.preprincipal = d.ok
        if not d:
            w["preprincipal"] = d.reason
    else:
        w["preprincipal"] = "not faithful"

    reg, method = _regular(P)
    r.regular = reg.ok
    r.notes["regular"] = method
    if not reg:
        w["regular"] = reg.reason

    rv = is_rootoid(P, exhaustive_jop=exhaustive_jop)
    r.rootoid = rv.ok
    if not rv:
        w["rootoid"] = rv.reason
        r.notes["rootoid_witness"] = rv.witness
    return r


# -- abridgement -------------------------------------------------------------

def abridge(P: Protorootoid) -> Protorootoid:
    """Replace each ring by the subring generated by the weak order values."""
    subs = []
    for a in range(P.G.n_objects):
        support, blocks = signature_blocks(list(P.weak_order(a).poset.values))
        subs.append(SubringPartition(P.rep.grounds[a], support, blocks))
    rep = PowerSetRep(P.G, P.rep.grounds, P.rep.act, subs, check=True)
    return Protorootoid(P.G, rep, P.values, check=False)


# -- length functions ----------------------------------------------------------

@dataclass
class LengthReport:
    rows: list              # (expression terms, compatible, l_N additive, l_S additive or None)
    order_rows: list        # (x, y, x <= y, l(y) == l(x) + l(x*y), same for l_S or None)
    consistent: bool


def length_reports(P: Protorootoid, samples: int = 200, max_len: int = 5,
                   seed: int = 0, all_pairs: bool = True) -> LengthReport:
    """Compatibility against additivity of lengths, and the weak order against lengths."""
    G = P.G
    lS = None
    rep = classify_light(P)
    if rep["principal"]:
        lS = generated_subgroupoid(G, simple_morphisms(P)).length
    rows = []
    ok = True

    def check(terms):
        nonlocal ok
        e = Expression(G, terms)
        v = e.value()
        comp = is_compatible(P, e)
        addN = P.length(v) == sum(P.length(t) for t in terms)
        addS = None if lS is None else lS[v] == sum(lS[t] for t in terms)
        rows.append((terms, comp, addN, addS))
        if comp != addN or (addS is not None and addS != comp):
            ok = False

    if all_pairs:
        for g, h in G.composable_pairs():
            check((g, h))
    rng = random.Random(seed)
    for _ in range(samples):
        n = rng.randint(1, max_len)
        g = rng.randrange(G.n_morphisms) if G.n_morphisms else None
        if g is None:
            break
        terms = [g]
        for _ in range(n - 1):
            terms.append(rng.choice(G.star(G.dom[terms[-1]])))
        check(tuple(terms))
    order_rows = []
    for a in range(G.n_objects):
        st = G.star(a)
        for x in st:
            for y in st:
                le = P.leq(x, y)
                z = G.comp(G.inv[x], y)
                addN = P.length(y) == P.length(x) + P.length(z)
                addS = None if lS is None else lS[y] == lS[x] + lS[z]
                order_rows.append((x, y, le, addN, addS))
                if le != addN or (addS is not None and addS != le):
                    ok = False
    return LengthReport(rows, order_rows, ok)


def classify_light(P: Protorootoid) -> dict:
    S = simple_morphisms(P)
    gen = generated_subgroupoid(P.G, S)
    return {"principal": gen.generates and _lengths_match(P, gen).ok}


# -- pseudocomplements -----------------------------------------------------------

def pseudocomplement(P: Protorootoid, a, x) -> int:
    """x' = join of all y with y ^ x = 1, in a principal complete rootoid."""
    G = P.G
    a = G.o(a)
    x = G.m(x)
    if G.cod[x] != a:
        raise ValueError("x must lie in the star at a")
    if not classify_light(P)["principal"] or not _complete(P).ok or not is_rootoid(P).ok:
        raise PreconditionError("pseudocomplement needs a principal complete rootoid")
    W = P.weak_order(a)
    poset = W.poset
    ix = W.index_of(x)
    bottom = poset.minimum()
    family = 0
    for i in range(len(poset)):
        if poset.meet(i, ix) == bottom:
            family |= 1 << i
    j = poset.join_of_mask(family)
    for i in range(len(poset)):
        if (poset.meet(i, ix) == bottom) != poset.leq(i, j):
            raise AssertionError("pseudocomplement characterization fails")
    return W.morphism(j)
