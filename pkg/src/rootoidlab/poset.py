"""Finite posets of subsets, indexed for fast order queries.

A :class:`SetPoset` holds distinct bit masks ordered by inclusion.  Down-sets,
up-sets and disjointness classes are stored as bit masks over element
positions, so meets, joins and covers reduce to a few integer operations.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .setalg import iter_bits, popcount


class SetPoset:
    def __init__(self, values: Iterable[int]):
        vals = sorted(set(values), key=lambda m: (popcount(m), m))
        self.values = tuple(vals)
        self.pos = {v: i for i, v in enumerate(vals)}
        n = len(vals)
        down = [0] * n
        up = [0] * n
        disj = [0] * n
        for i, x in enumerate(vals):
            for j, y in enumerate(vals):
                if x & y == y:
                    down[i] |= 1 << j
                    up[j] |= 1 << i
                if not x & y:
                    disj[i] |= 1 << j
        self.down = down
        self.up = up
        self.disj = disj
        self._by_down = {d: i for i, d in enumerate(down)}
        self._by_up = {u: i for i, u in enumerate(up)}

    def __len__(self):
        return len(self.values)

    def index(self, value: int) -> int:
        return self.pos[value]

    def leq(self, i: int, j: int) -> bool:
        return bool(self.down[j] >> i & 1)

    def minimum(self) -> Optional[int]:
        everything = (1 << len(self)) - 1
        return self._by_up.get(everything)

    def maximum(self) -> Optional[int]:
        everything = (1 << len(self)) - 1
        return self._by_down.get(everything)

    # meets and joins of index sets; None when they do not exist
    def meet_of_mask(self, members: int) -> Optional[int]:
        lower = (1 << len(self)) - 1
        for i in iter_bits(members):
            lower &= self.down[i]
        return self._by_down.get(lower) if lower else None

    def join_of_mask(self, members: int) -> Optional[int]:
        upper = (1 << len(self)) - 1
        for i in iter_bits(members):
            upper &= self.up[i]
        return self._by_up.get(upper) if upper else None

    def meet(self, i: int, j: int) -> Optional[int]:
        lower = self.down[i] & self.down[j]
        return self._by_down.get(lower) if lower else None

    def join(self, i: int, j: int) -> Optional[int]:
        upper = self.up[i] & self.up[j]
        return self._by_up.get(upper) if upper else None

    def bounded_above(self, i: int, j: int) -> bool:
        return bool(self.up[i] & self.up[j])

    def covers(self) -> list:
        """Cover relations (i, j) with values[i] < values[j] and nothing between."""
        out = []
        for j in range(len(self)):
            below = self.down[j] & ~(1 << j)
            for i in iter_bits(below):
                between = self.up[i] & self.down[j] & ~(1 << i) & ~(1 << j)
                if not between:
                    out.append((i, j))
        return out

    def atoms(self) -> list:
        m = self.minimum()
        if m is None:
            return []
        return [j for i, j in self.covers() if i == m]

    def find_missing_meet(self) -> Optional[tuple]:
        n = len(self)
        for i in range(n):
            for j in range(i + 1, n):
                if self.meet(i, j) is None:
                    return (i, j)
        return None

    def is_meet_semilattice(self) -> bool:
        """Finite case of a complete meet semilattice: minimum plus pairwise meets."""
        if len(self) == 0:
            return True
        return self.minimum() is not None and self.find_missing_meet() is None

    def find_jop_failure(self) -> Optional[tuple]:
        """A triple (i, j, k): i, j disjoint from k but their join is not."""
        n = len(self)
        for i in range(n):
            for j in range(i + 1, n):
                b = self.join(i, j)
                if b is None:
                    continue
                bad = self.disj[i] & self.disj[j] & ~self.disj[b]
                if bad:
                    return (i, j, next(iter_bits(bad)))
        return None

    def find_jop_failure_exhaustive(self) -> Optional[tuple]:
        """Check joins of every family of elements, not just pairs.

        Returns (family_mask, k) on failure.  Exponential in the size, meant
        as an oracle on small posets.
        """
        n = len(self)
        full = (1 << n) - 1
        ub = [full] * (1 << n)
        dj = [full] * (1 << n)
        for mask in range(1, 1 << n):
            low = mask & -mask
            i = low.bit_length() - 1
            rest = mask ^ low
            ub[mask] = ub[rest] & self.up[i]
            dj[mask] = dj[rest] & self.disj[i]
            if not ub[mask]:
                continue
            b = self._by_up.get(ub[mask])
            if b is None:
                continue
            bad = dj[mask] & ~self.disj[b]
            if bad:
                return (mask, next(iter_bits(bad)))
        return None


def find_isomorphism(p: SetPoset, q: SetPoset) -> Optional[dict]:
    """An order isomorphism p -> q as a dict of indices, or None."""
    n = len(p)
    if n != len(q):
        return None

    def sig(P, i):
        return (popcount(P.down[i]), popcount(P.up[i]))

    if sorted(sig(p, i) for i in range(n)) != sorted(sig(q, i) for i in range(n)):
        return None
    order = sorted(range(n), key=lambda i: sig(p, i))
    cand = {i: [j for j in range(n) if sig(q, j) == sig(p, i)] for i in range(n)}
    assign = {}
    used = set()

    def ok(i, j):
        for k, l in assign.items():
            if p.leq(i, k) != q.leq(j, l) or p.leq(k, i) != q.leq(l, j):
                return False
        return True

    def rec(t):
        if t == n:
            return True
        i = order[t]
        for j in cand[i]:
            if j in used or not ok(i, j):
                continue
            assign[i] = j
            used.add(j)
            if rec(t + 1):
                return True
            del assign[i]
            used.discard(j)
        return False

    return dict(assign) if rec(0) else None


def is_order_preserving(p: SetPoset, q: SetPoset, f: Sequence[int]) -> bool:
    n = len(p)
    return all(q.leq(f[i], f[j]) for i in range(n) for j in iter_bits(p.up[i]))
