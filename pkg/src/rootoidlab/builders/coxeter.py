"""Coxeter systems: the reflection cocycle and the abstract root system.

The group is enumerated breadth first inside the standard geometric
representation, with exact matrix entries in Z[2cos(pi/M)].  Multiplication
is then read off the right Cayley graph.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..groupoid import Groupoid, generated_subgroupoid
from ..prd import PowerSetRep, Protorootoid
from ..setalg import GroundSet, popcount
from ..signed import SignedGroupoidSet
from .numfield import CosineField, lcm_all

DEFAULT_BUDGET = 20000
OBJECT = "W"


class CoxeterError(ValueError):
    pass


def budget() -> int:
    raw = os.environ.get("ROOTOIDLAB_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise CoxeterError(f"ROOTOIDLAB_BUDGET must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class CoxeterMatrix:
    generators: tuple
    m: tuple  # rows of ints, None for infinity

    def __post_init__(self):
        gens = tuple(str(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        n = len(gens)
        if len(set(gens)) != n:
            raise CoxeterError("generator labels must be distinct")
        if any(g == "1" or not g for g in gens):
            raise CoxeterError("generator label '1' is reserved for the identity")
        rows = tuple(tuple(_entry(x) for x in row) for row in self.m)
        object.__setattr__(self, "m", rows)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise CoxeterError("coxeter matrix must be square of size |S|")
        for i in range(n):
            if rows[i][i] != 1:
                raise CoxeterError("coxeter matrix diagonal must be 1")
            for j in range(n):
                if rows[i][j] != rows[j][i]:
                    raise CoxeterError("coxeter matrix not symmetric")
                if i != j and rows[i][j] is not None and rows[i][j] < 2:
                    raise CoxeterError("off-diagonal coxeter matrix entries must be >= 2 or infinity")

    @classmethod
    def of_type(cls, name: str) -> "CoxeterMatrix":
        """Small named types: A1..An, B2..Bn, D4.., G2, H3, I2(m), A1xA1."""
        name = name.strip()
        if name == "A1xA1":
            return cls(("r", "s"), ((1, 2), (2, 1)))
        if name.startswith("I2(") and name.endswith(")"):
            m = _entry(name[3:-1])
            return cls(("r", "s"), ((1, m), (m, 1)))
        kind, n = name[0], int(name[1:])
        labels = "rstuvxyz"[:n] if n <= 8 else tuple(f"s{i}" for i in range(1, n + 1))
        m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for i in range(n - 1):
            m[i][i + 1] = m[i + 1][i] = 3
        if kind == "A":
            pass
        elif kind == "B" and n >= 2:
            m[0][1] = m[1][0] = 4
        elif kind == "G" and n == 2:
            m[0][1] = m[1][0] = 6
        elif kind == "H" and n in (3, 4):
            m[0][1] = m[1][0] = 5
        elif kind == "D" and n >= 4:
            m[n - 2][n - 1] = m[n - 1][n - 2] = 2
            m[n - 3][n - 1] = m[n - 1][n - 3] = 3
        else:
            raise CoxeterError(f"unknown type {name!r}")
        return cls(tuple(labels), tuple(tuple(r) for r in m))


def _entry(x):
    if x is None:
        return None
    if isinstance(x, str):
        if x.strip().lower() in ("inf", "infinity", "oo", "∞"):
            return None
        try:
            return int(x)
        except ValueError:
            raise CoxeterError(f"bad coxeter matrix entry {x!r}") from None
    if isinstance(x, float):
        if x == float("inf"):
            return None
        if x != int(x):
            raise CoxeterError(f"bad coxeter matrix entry {x!r}")
        return int(x)
    return int(x)


def _field_for(M: CoxeterMatrix) -> CosineField:
    finite = {x for row in M.m for x in row if x is not None and x >= 2}
    return CosineField(max(lcm_all(finite), 2))


def _generator_matrices(M: CoxeterMatrix, F: CosineField) -> list:
    n = len(M.generators)
    mats = []
    for s in range(n):
        rows = [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
        # sigma_s(alpha_t) = alpha_t + 2cos(pi/m_st) alpha_s ; sigma_s(alpha_s) = -alpha_s
        for t in range(n):
            if t == s:
                rows[s][s] = F.const(-1)
            else:
                rows[s][t] = F.two_cos(M.m[s][t])
        mats.append(tuple(tuple(r) for r in rows))
    return mats


def _matmul(F, A, B):
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = F.zero
            for k in range(n):
                a, b = A[i][k], B[k][j]
                if any(a) and any(b):
                    acc = F.add(acc, F.mul(a, b))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def word_label(gens: Sequence[str], word: Sequence[int]) -> str:
    if not word:
        return "1"
    sep = "" if all(len(g) == 1 for g in gens) else "."
    return sep.join(gens[i] for i in word)


@dataclass
class CoxeterSystem:
    matrix: CoxeterMatrix
    words: list                 # shortlex reduced word per element (tuples of generator indices)
    labels: list
    length: list
    right: list                 # right[w][s] = index of ws
    partial: bool = False
    mul_table: Optional[list] = None
    inverse: Optional[list] = None
    reflections: list = field(default_factory=list)   # element indices, in element order
    N: list = field(default_factory=list)             # mask over reflections per element
    W: Optional[Groupoid] = None
    protorootoid: Optional[Protorootoid] = None
    signed: Optional[SignedGroupoidSet] = None

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def generators(self) -> list:
        return [self.right[0][s] for s in range(len(self.matrix.generators))]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def mul(self, u: int, v: int) -> int:
        if self.mul_table is not None:
            return self.mul_table[u][v]
        for s in self.words[v]:
            u = self.right[u][s]
            if u is None:
                raise CoxeterError("product leaves the enumerated ball")
        return u

    def reflection_labels(self) -> list:
        return [self.labels[t] for t in self.reflections]

    def inversion_set(self, w: int) -> list:
        return [self.labels[self.reflections[i]] for i in range(len(self.reflections)) if self.N[w] >> i & 1]


def build_coxeter(M: CoxeterMatrix, cutoff: Optional[int] = None,
                  element_budget: Optional[int] = None) -> CoxeterSystem:
    if element_budget is None:
        element_budget = budget()
    F = _field_for(M)
    gens = _generator_matrices(M, F)
    n = len(gens)
    ident = tuple(tuple(F.one if i == j else F.zero for j in range(n)) for i in range(n))
    mats = [ident]
    index = {ident: 0}
    words = [()]
    length = [0]
    right = [[None] * n]
    queue = deque([0])
    closed = True
    while queue:
        w = queue.popleft()
        for s in range(n):
            if right[w][s] is not None:
                continue
            if cutoff is not None and length[w] >= cutoff:
                closed = False
                continue
            X = _matmul(F, mats[w], gens[s])
            v = index.get(X)
            if v is None:
                if len(mats) >= element_budget:
                    raise CoxeterError(
                        f"group not closed within {element_budget} elements; "
                        "pass a length cutoff (or raise ROOTOIDLAB_BUDGET)")
                v = len(mats)
                index[X] = v
                mats.append(X)
                words.append(words[w] + (s,))
                length.append(length[w] + 1)
                right.append([None] * n)
                queue.append(v)
            right[w][s] = v
            right[v][s] = w
    labels = [word_label(M.generators, wd) for wd in words]
    C = CoxeterSystem(M, words, labels, length, right, partial=not closed)
    if C.partial:
        _ball_cocycle(C)
        return C
    _finish(C)
    return C


def _ball_cocycle(C: CoxeterSystem):
    """Reflection table on a truncated ball (raw inspection only)."""
    refl = {}
    Nw = [0]
    for w in range(1, C.order):
        p, s = C.words[w][:-1], C.words[w][-1]
        pv = 0
        for x in p:
            pv = C.right[pv][x]
        # p s p^-1 as a word; may leave the ball
        t = 0
        ok = True
        for x in list(p) + [s] + list(reversed(p)):
            t = C.right[t][x] if t is not None else None
            if t is None:
                ok = False
                break
        if not ok:
            Nw.append(None)
            continue
        if t not in refl:
            refl[t] = len(refl)
        prev = Nw[pv]
        Nw.append(None if prev is None else prev ^ (1 << refl[t]))
    C.reflections = sorted(refl, key=refl.get)
    C.N = Nw


def _finish(C: CoxeterSystem):
    n = C.order
    k = len(C.matrix.generators)
    mul = [[0] * n for _ in range(n)]
    for u in range(n):
        row = mul[u]
        for v in range(n):
            x = u
            for s in C.words[v]:
                x = C.right[x][s]
            row[v] = x
    C.mul_table = mul
    inv = [None] * n
    for u in range(n):
        for v in range(n):
            if mul[u][v] == 0:
                inv[u] = v
                break
    C.inverse = inv
    refl = sorted({mul[mul[w][C.right[0][s]]][inv[w]] for w in range(n) for s in range(k)})
    C.reflections = refl
    rpos = {t: i for i, t in enumerate(refl)}
    N = [0] * n
    for w in range(1, n):  # elements are in BFS order, so the prefix is already done
        p, s = 0, C.words[w][-1]
        for x in C.words[w][:-1]:
            p = C.right[p][x]
        t = mul[mul[p][C.right[0][s]]][inv[p]]
        N[w] = N[p] ^ (1 << rpos[t])
    C.N = N
    _verify_reflection_cocycle(C)

    W = Groupoid.from_group(C.labels, lambda u, v: mul[u][v], 0, OBJECT)
    T = GroundSet(OBJECT, tuple(C.labels[t] for t in refl))
    act = [tuple(rpos[mul[mul[w][t]][inv[w]]] for t in refl) for w in range(n)]
    rep = PowerSetRep(W, [T], act, check=False)
    C.W = W
    C.protorootoid = Protorootoid(W, rep, N, check=True)
    C.signed = _root_system(C, W, rpos)


def _verify_reflection_cocycle(C: CoxeterSystem):
    mul, L = C.mul_table, C.length
    for w in range(C.order):
        expect = 0
        for i, t in enumerate(C.reflections):
            if L[mul[t][w]] < L[w]:
                expect |= 1 << i
            if (L[mul[t][w]] - L[w]) % 2 == 0:
                raise CoxeterError("parity of l(tw) and l(w) agree")
        if expect != C.N[w]:
            raise CoxeterError(f"reflection cocycle differs from its closed form at {C.labels[w]}")
        if popcount(C.N[w]) != L[w]:
            raise CoxeterError(f"|N({C.labels[w]})| differs from its length")


def _root_system(C: CoxeterSystem, W: Groupoid, rpos: dict) -> SignedGroupoidSet:
    """Roots (t, +/-); w(t, e) = (w t w^-1, nu e) with nu = + iff l(wt) > l(w)."""
    mul, inv, L = C.mul_table, C.inverse, C.length
    refl = C.reflections
    labels = []
    for t in refl:
        labels += [f"+{C.labels[t]}", f"-{C.labels[t]}"]
    Phi = GroundSet(OBJECT, tuple(labels))
    neg = [i ^ 1 for i in range(len(labels))]
    pos = sum(1 << (2 * i) for i in range(len(refl)))
    act = []
    for w in range(C.order):
        perm = []
        for t in refl:
            j = rpos[mul[mul[w][t]][inv[w]]]
            flip = 0 if L[mul[w][t]] > L[w] else 1
            perm += [2 * j + flip, 2 * j + 1 - flip]
        act.append(perm)
    return SignedGroupoidSet(W, [Phi], [neg], [pos], act, check=True)


def exchange_violation(C: CoxeterSystem, strong: bool = True) -> Optional[tuple]:
    """EC (or SEC when ``strong``) on the whole group; returns a counterexample."""
    mul, L = C.mul_table, C.length
    S = C.generators
    left = C.reflections if strong else S
    for w in range(C.order):
        for r in S:
            wr = mul[w][r]
            for t in left:
                tw = mul[t][w]
                if strong:
                    hyp = L[tw] >= L[w] and L[mul[tw][r]] <= L[wr]
                else:
                    hyp = L[wr] > L[w] and L[mul[t][wr]] <= L[tw]
                if hyp and tw != wr:
                    return (w, r, t)
    return None


# -- reflection subgroups ------------------------------------------------------

@dataclass
class ReflectionSubgroup:
    parent: CoxeterSystem
    elements: list              # parent indices, sorted
    T_prime: list               # parent indices of reflections in W'
    S_prime: list               # parent indices
    W: Groupoid
    protorootoid: Protorootoid
    lengths: dict               # parent index -> l_{S'}
    exchange_ok: bool
    order_preserving: bool
    non_isomorphism_witness: Optional[tuple]


def reflection_subgroup(C: CoxeterSystem, tgens) -> ReflectionSubgroup:
    if C.partial:
        raise CoxeterError("reflection subgroups need a finite, fully enumerated group")
    gens = []
    for t in tgens:
        i = C.index(t) if isinstance(t, str) else int(t)
        if i not in C.reflections:
            raise CoxeterError(f"{C.labels[i]!r} is not a reflection")
        gens.append(i)
    mul, inv = C.mul_table, C.inverse
    elems = {0}
    queue = deque([0])
    while queue:
        w = queue.popleft()
        for t in gens:
            v = mul[w][t]
            if v not in elems:
                elems.add(v)
                queue.append(v)
    elems = sorted(elems)
    Tp = [t for t in C.reflections if t in elems]
    tpos = {t: i for i, t in enumerate(Tp)}
    pos = {w: i for i, w in enumerate(elems)}
    rfull = {t: i for i, t in enumerate(C.reflections)}
    Np = []
    for w in elems:
        Np.append(sum(1 << tpos[t] for t in Tp if C.N[w] >> rfull[t] & 1))
    W = Groupoid.from_group([C.labels[w] for w in elems], lambda u, v: pos[mul[elems[u]][elems[v]]], 0, OBJECT)
    T = GroundSet(OBJECT, tuple(C.labels[t] for t in Tp))
    act = [tuple(tpos[mul[mul[w][t]][inv[w]]] for t in Tp) for w in elems]
    P = Protorootoid(W, PowerSetRep(W, [T], act), Np, check=True)
    Sp = [w for w in elems if popcount(Np[pos[w]]) == 1]
    gen = generated_subgroupoid(W, [pos[s] for s in Sp])
    if not gen.generates:
        raise CoxeterError("S' does not generate W'")
    lengths = {elems[i]: l for i, l in gen.length.items()}
    # EC for (W', S') with its own length function
    ok = True
    for w in elems:
        for r in Sp:
            for s in Sp:
                wr, sw = mul[w][r], mul[s][w]
                if lengths[wr] > lengths[w] and lengths[mul[s][wr]] <= lengths[sw] and sw != wr:
                    ok = False
    # identity of W', from the order induced by N to the order of N': preserving,
    # but x <=' y need not give x <= y
    preserving, witness = True, None
    for x in elems:
        for y in elems:
            le_sub = Np[pos[x]] & Np[pos[y]] == Np[pos[x]]
            le_big = C.N[x] & C.N[y] == C.N[x]
            if le_big and not le_sub:
                preserving = False
            if le_sub and not le_big and witness is None:
                witness = (x, y)
    return ReflectionSubgroup(C, elems, Tp, Sp, W, P, lengths, ok, preserving, witness)
