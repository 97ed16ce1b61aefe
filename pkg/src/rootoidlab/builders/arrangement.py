"""Central hyperplane arrangements over Q and their chamber rootoids.

Chambers are the feasible strict sign vectors, found by exact Fourier-Motzkin
elimination over Fractions.  Each chamber also gets a rational interior point
by back substitution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from ..groupoid import Groupoid
from ..prd import Protorootoid
from ..setalg import GroundSet
from ..signed import L_functor, SignedGroupoidSet

GT, GE, EQ = ">", ">=", "="


class ArrangementError(ValueError):
    pass


# -- exact feasibility ----------------------------------------------------------

def _normalize(coeffs, const, kind):
    """Scale a constraint so that duplicates can be spotted."""
    scale = next((abs(c) for c in coeffs if c), None)
    if scale is None:
        return tuple(coeffs), const, kind
    if kind == EQ:
        lead = next(c for c in coeffs if c)
        scale = lead
    return tuple(c / scale for c in coeffs), const / scale, kind


def _trivially_ok(const, kind) -> bool:
    if kind == GT:
        return const > 0
    if kind == GE:
        return const >= 0
    return const == 0


def _eliminate(rows, k):
    """Fourier-Motzkin step removing variable k; rows are (coeffs, const, kind)."""
    eqs = [r for r in rows if r[2] == EQ and r[0][k] != 0]
    if eqs:
        ec, e0, _ = eqs[0]
        out = []
        for r in rows:
            if r is eqs[0]:
                continue
            c, c0, kind = r
            f = c[k] / ec[k]
            out.append((tuple(a - f * b for a, b in zip(c, ec)), c0 - f * e0, kind))
        return out
    pos = [r for r in rows if r[0][k] > 0]
    neg = [r for r in rows if r[0][k] < 0]
    out = [r for r in rows if r[0][k] == 0]
    for pc, p0, pk in pos:
        for nc, n0, nk in neg:
            a, b = pc[k], -nc[k]
            coeffs = tuple(x / a + y / b for x, y in zip(pc, nc))
            kind = GT if GT in (pk, nk) else GE
            out.append((coeffs, p0 / a + n0 / b, kind))
    return out


def _dedupe(rows):
    seen = {}
    for r in rows:
        c, c0, kind = _normalize(*r)
        key = (c, kind)
        if kind == EQ:
            key = (c, c0, kind)
        # keep the tightest constant for inequalities
        old = seen.get(key)
        if old is None or (kind != EQ and c0 < old[1]):
            seen[key] = (c, c0, kind)
    return list(seen.values())


def solve(rows: Sequence[tuple], dim: int) -> Optional[tuple]:
    """A rational point satisfying every ``coeffs . x + const (kind) 0``, or None.

    ``kind`` is one of ``">"``, ``">="``, ``"="``.
    """
    cur = [(tuple(Fraction(c) for c in co), Fraction(c0), kind) for co, c0, kind in rows]
    for co, _, _ in cur:
        if len(co) != dim:
            raise ArrangementError("constraint has the wrong dimension")
    stages = []
    for k in range(dim - 1, -1, -1):
        cur = _dedupe(cur)
        stages.append((k, cur))
        cur = _eliminate(cur, k)
    for co, c0, kind in cur:
        if not _trivially_ok(c0, kind):
            return None
    x = [Fraction(0)] * dim
    for k, rows_k in reversed(stages):
        lo, lo_strict, hi, hi_strict, fixed = None, False, None, False, None
        for co, c0, kind in rows_k:
            rest = c0 + sum(co[j] * x[j] for j in range(k))
            a = co[k]
            if a == 0:
                continue
            bound = -rest / a
            if kind == EQ:
                fixed = bound
            elif a > 0:
                if lo is None or bound > lo or (bound == lo and kind == GT):
                    lo, lo_strict = bound, kind == GT
            else:
                if hi is None or bound < hi or (bound == hi and kind == GT):
                    hi, hi_strict = bound, kind == GT
        if fixed is not None:
            x[k] = fixed
        elif lo is None and hi is None:
            x[k] = Fraction(0)
        elif lo is None:
            x[k] = hi - 1
        elif hi is None:
            x[k] = lo + 1
        elif lo == hi:
            x[k] = lo
        else:
            x[k] = (lo + hi) / 2
    for co, c0, kind in rows:
        v = sum(Fraction(a) * b for a, b in zip(co, x)) + Fraction(c0)
        if not _trivially_ok(v, kind):
            raise AssertionError("back substitution produced an infeasible point")
    return tuple(x)


def matrix_rank(vectors) -> int:
    rows = [[Fraction(v) for v in vec] for vec in vectors]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


# -- arrangements -----------------------------------------------------------------

@dataclass(frozen=True)
class RationalArrangement:
    dimension: int
    normals: tuple

    def __post_init__(self):
        d = int(self.dimension)
        if d < 1:
            raise ArrangementError("dimension must be at least 1")
        normals = []
        for v in self.normals:
            v = tuple(int(c) for c in v)
            if len(v) != d:
                raise ArrangementError(f"normal {v} does not have dimension {d}")
            if not any(v):
                raise ArrangementError("zero normal vector")
            g = 0
            for c in v:
                g = gcd(g, c)
            if g != 1:
                raise ArrangementError(f"normal {v} is not primitive")
            normals.append(v)
        for i in range(len(normals)):
            for j in range(i):
                if matrix_rank([normals[i], normals[j]]) < 2:
                    raise ArrangementError(f"normals {normals[j]} and {normals[i]} are parallel")
        if matrix_rank(normals) < d:
            raise ArrangementError("arrangement is not essential: normals do not span Q^d")
        object.__setattr__(self, "dimension", d)
        object.__setattr__(self, "normals", tuple(normals))

    @property
    def labels(self) -> list:
        return [f"h{i + 1}" for i in range(len(self.normals))]


def _sign_rows(A: RationalArrangement, signs):
    return [(tuple(s * c for c in A.normals[i]), 0, GT) for i, s in enumerate(signs)]


def _sign_label(signs) -> str:
    return "".join("+" if s > 0 else "-" for s in signs)


def enumerate_chambers(A: RationalArrangement) -> list:
    """(sign vector, interior point) for every chamber, in lexicographic label order."""
    out = []
    n, d = len(A.normals), A.dimension

    def grow(prefix):
        if len(prefix) == n:
            pt = solve(_sign_rows(A, prefix), d)
            out.append((tuple(prefix), pt))
            return
        for s in (1, -1):
            if solve(_sign_rows(A, prefix + [s]), d) is not None:
                grow(prefix + [s])

    grow([])
    return out


def facet_wall(A: RationalArrangement, signs, i) -> bool:
    """Whether hyperplane i meets the closure of the chamber in a (d-1)-dimensional face."""
    rows = [r for j, r in enumerate(_sign_rows(A, signs)) if j != i]
    rows.append((A.normals[i], 0, EQ))
    return solve(rows, A.dimension) is not None


@dataclass
class ArrangementRootoid:
    arrangement: RationalArrangement
    chambers: list            # labels
    signs: dict               # label -> sign tuple
    points: dict              # label -> rational interior point
    walls: dict               # label -> list of hyperplane indices
    simplicial: bool
    witness: Optional[tuple]  # (chamber, reason) when not simplicial
    G: Groupoid
    signed: SignedGroupoidSet
    protorootoid: Protorootoid
    facet_check: bool = True
    notes: dict = field(default_factory=dict)

    def distance(self, a: str, b: str) -> int:
        return sum(x != y for x, y in zip(self.signs[a], self.signs[b]))

    def adjacent(self, a: str, b: str) -> bool:
        return self.distance(a, b) == 1


def build_arrangement(A: RationalArrangement, cross_check: bool = True) -> ArrangementRootoid:
    found = enumerate_chambers(A)
    labels = [_sign_label(s) for s, _ in found]
    order = sorted(range(len(labels)), key=lambda i: labels[i])
    labels = [labels[i] for i in order]
    signs = {labels[k]: found[order[k]][0] for k in range(len(labels))}
    points = {labels[k]: found[order[k]][1] for k in range(len(labels))}
    present = set(signs.values())
    n, d = len(A.normals), A.dimension
    walls = {}
    facet_ok = True
    for c in labels:
        s = signs[c]
        ws = [i for i in range(n) if s[:i] + (-s[i],) + s[i + 1:] in present]
        walls[c] = ws
        if cross_check:
            if ws != [i for i in range(n) if facet_wall(A, s, i)]:
                facet_ok = False
    if not facet_ok:
        raise AssertionError("flip adjacency and facet walls disagree")
    simplicial, witness = True, None
    for c in labels:
        ws = walls[c]
        if len(ws) != d:
            simplicial, witness = False, (c, f"{len(ws)} walls in dimension {d}")
            break
        if matrix_rank([A.normals[i] for i in ws]) != d:
            simplicial, witness = False, (c, "wall normals are dependent")
            break

    G = Groupoid.simply_connected(labels, sep=" <- ")
    hyper = A.labels
    roots, negs, pos = [], [], []
    for c in labels:
        rl = []
        for h in hyper:
            rl += [f"+{h}", f"-{h}"]
        roots.append(GroundSet(c, tuple(rl)))
        negs.append([i ^ 1 for i in range(2 * n)])
        # positive roots at c: sigma_i n_i
        pos.append(sum(1 << (2 * i + (0 if signs[c][i] > 0 else 1)) for i in range(n)))
    act = [tuple(range(2 * n))] * G.n_morphisms
    R = SignedGroupoidSet(G, roots, negs, pos, act, check=True)
    P = L_functor(R)
    return ArrangementRootoid(A, labels, signs, points, walls, simplicial, witness, G, R, P, facet_ok)
