"""Exact arithmetic in Z[2cos(pi/M)].

Elements are integer coefficient tuples in the power basis of c = 2cos(pi/M),
reduced modulo the minimal polynomial of c.  That polynomial is obtained from
the cyclotomic polynomial of order 2M by the substitution x = z + 1/z.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd


def _polydivmod(num, den):
    # integer polynomials, coefficient lists lowest degree first, den monic
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        c = num[-1]
        q[shift] = c
        for i, d in enumerate(den):
            num[shift + i] -= c * d
        while num and num[-1] == 0:
            num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple:
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p, r = _polydivmod(p, cyclotomic(d))
            assert not any(r)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _dickson(j: int) -> list:
    """D_j with z^j + z^-j = D_j(z + 1/z)."""
    a, b = [2], [0, 1]
    if j == 0:
        return a
    for _ in range(j - 1):
        nxt = [0] + b
        for i, c in enumerate(a):
            nxt[i] -= c
        a, b = b, nxt
    return b


@lru_cache(maxsize=None)
def minimal_polynomial_2cos(M: int) -> tuple:
    """Monic integer minimal polynomial of 2cos(pi/M), lowest degree first."""
    n = 2 * M
    phi = cyclotomic(n)
    h = (len(phi) - 1) // 2
    out = [0] * (h + 1)
    out[0] = phi[h]
    for j in range(1, h + 1):
        for i, c in enumerate(_dickson(j)):
            out[i] += phi[h + j] * c
    return tuple(out)


class CosineField:
    """The ring Z[c], c = 2cos(pi/M), with elements as int tuples."""

    def __init__(self, M: int):
        self.M = M
        self.poly = minimal_polynomial_2cos(M)
        self.deg = len(self.poly) - 1
        self.zero = (0,) * self.deg
        self.one = self.const(1)

    def const(self, k: int) -> tuple:
        return (k,) + (0,) * (self.deg - 1)

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def mul(self, x, y):
        d = self.deg
        prod = [0] * (2 * d - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        prod[i + j] += a * b
        p = self.poly
        for k in range(len(prod) - 1, d - 1, -1):
            c = prod[k]
            if c:
                for i in range(d + 1):
                    prod[k - d + i] -= c * p[i]
        return tuple(prod[:d])

    def two_cos(self, m) -> tuple:
        """2cos(pi/m) for m dividing M; m = None stands for infinity (value 2)."""
        if m is None:
            return self.const(2)
        if self.M % m:
            raise ValueError(f"{m} does not divide {self.M}")
        k = self.M // m
        c = self._c()
        # 2cos(k t) as a polynomial in 2cos(t)
        a, b = self.const(2), c
        for _ in range(k - 1):
            a, b = b, self.add(self.mul(b, c), self.neg(a))
        return b

    def _c(self):
        if self.deg > 1:
            return (0, 1) + (0,) * (self.deg - 2)
        return (-self.poly[0],)


def lcm_all(values) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out
