"""Finite root systems, the coweight lattice and the level-n fundamental box.

Coweights are integer vectors in the basis of fundamental coweights, so the
pairing of a root (coefficients in the simple roots) with a coweight is a dot
product.  The invariant form is normalized so short roots have squared
length 2.

>>> A2 = build_root_datum("A", 2)
>>> len(A2.positive_roots), A2.theta
(3, (1, 1))
>>> A2.pair((1, 0), A2.theta)
Fraction(1, 1)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

__all__ = ["CartanDatum", "build_root_datum", "UnsupportedDatum", "Coweight", "Root"]

Coweight = tuple[int, ...]
Root = tuple[int, ...]


class UnsupportedDatum(ValueError):
    pass


def _gram(family: str, d: int) -> list[list[int]]:
    """Gram matrix of the simple roots, short roots of squared length 2."""
    B = [[0] * d for _ in range(d)]

    def link(i: int, j: int, val: int) -> None:
        B[i][j] = B[j][i] = val

    if family == "A":
        if d < 1:
            raise UnsupportedDatum("A needs rank >= 1")
        for i in range(d):
            B[i][i] = 2
        for i in range(d - 1):
            link(i, i + 1, -1)
    elif family == "B":
        if d < 2:
            raise UnsupportedDatum("B needs rank >= 2")
        for i in range(d - 1):
            B[i][i] = 4
        B[d - 1][d - 1] = 2
        for i in range(d - 1):
            link(i, i + 1, -2)
    elif family == "C":
        if d < 2:
            raise UnsupportedDatum("C needs rank >= 2")
        for i in range(d - 1):
            B[i][i] = 2
        B[d - 1][d - 1] = 4
        for i in range(d - 2):
            link(i, i + 1, -1)
        link(d - 2, d - 1, -2)
    elif family == "D":
        if d < 4:
            raise UnsupportedDatum("D needs rank >= 4")
        for i in range(d):
            B[i][i] = 2
        for i in range(d - 2):
            link(i, i + 1, -1)
        link(d - 3, d - 1, -1)
    elif family == "E":
        if d not in (6, 7, 8):
            raise UnsupportedDatum("E needs rank 6, 7 or 8")
        for i in range(d):
            B[i][i] = 2
        # 1-3-4-5-6-7-8 chain with 2 attached to 4 (1-based labels)
        link(0, 2, -1)
        link(1, 3, -1)
        for i in range(2, d - 1):
            link(i, i + 1, -1)
    elif family == "F":
        if d != 4:
            raise UnsupportedDatum("F needs rank 4")
        B[0][0] = B[1][1] = 4
        B[2][2] = B[3][3] = 2
        link(0, 1, -2)
        link(1, 2, -2)
        link(2, 3, -1)
    elif family == "G":
        if d != 2:
            raise UnsupportedDatum("G needs rank 2")
        B[0][0], B[1][1] = 2, 6
        link(0, 1, -3)
    else:
        raise UnsupportedDatum(f"unknown family {family!r}")
    return B


# Weyl group orders we are willing to enumerate
_MAX_W = 60000


def _weyl_order(family: str, d: int) -> int:
    import math

    if family == "A":
        return math.factorial(d + 1)
    if family in "BC":
        return 2**d * math.factorial(d)
    if family == "D":
        return 2 ** (d - 1) * math.factorial(d)
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600, ("F", 4): 1152, ("G", 2): 12}[(family, d)]


@dataclass(frozen=True)
class CartanDatum:
    family: str
    rank: int
    gram: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Root, ...] = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        """``cartan[i][j] = 2(a_i, a_j)/(a_i, a_i)``."""
        g = self.gram
        d = self.rank
        return tuple(tuple(2 * g[i][j] // g[i][i] for j in range(d)) for i in range(d))

    @cached_property
    def simple_roots(self) -> tuple[Root, ...]:
        d = self.rank
        return tuple(tuple(int(i == k) for i in range(d)) for k in range(d))

    def form(self, a: Root, b: Root) -> int:
        """Invariant form on the root lattice."""
        g = self.gram
        return sum(a[i] * g[i][j] * b[j] for i in range(self.rank) for j in range(self.rank) if a[i] and b[j])

    def norm2(self, a: Root) -> int:
        return self.form(a, a)

    def coroot(self, a: Root) -> Coweight:
        """Coroot of ``a`` in fundamental-coweight coordinates."""
        n = self.norm2(a)
        out = []
        for k in range(self.rank):
            num = 2 * self.form(self.simple_roots[k], a)
            if num % n:
                raise AssertionError("coroot is not integral")
            out.append(num // n)
        return tuple(out)

    @cached_property
    def theta(self) -> Root:
        """Highest root."""
        return max(self.positive_roots, key=lambda r: (sum(r), r))

    @cached_property
    def theta_coroot(self) -> Coweight:
        return self.coroot(self.theta)

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        return self.positive_roots + tuple(tuple(-x for x in r) for r in self.positive_roots)

    def is_root(self, a: Root) -> bool:
        return tuple(a) in self._root_set

    @cached_property
    def _root_set(self) -> frozenset:
        return frozenset(self.roots)

    @staticmethod
    def pairing(a: Root, lam: Coweight) -> int:
        """The integer pairing of a root with a coweight."""
        return sum(x * y for x, y in zip(a, lam))

    def pair(self, lam: Coweight, a: Root) -> Fraction:
        """``2(lam, a)/(a, a)`` as an exact rational."""
        if not self.is_root(a):
            raise ValueError(f"{a} is not a root")
        return Fraction(2 * self.pairing(a, lam), self.norm2(a))

    def reflect_root(self, k: int, a: Root) -> Root:
        c = 2 * self.form(self.simple_roots[k], a) // self.gram[k][k]
        return tuple(x - (c if i == k else 0) for i, x in enumerate(a))

    def reflect_coweight(self, a: Root, lam: Coweight) -> Coweight:
        p = self.pairing(a, lam)
        if p == 0:
            return tuple(lam)
        cv = self.coroot(a)
        return tuple(x - p * y for x, y in zip(lam, cv))

    def simple_reflection_matrix(self, k: int) -> tuple[tuple[int, ...], ...]:
        """Matrix of s_k acting on coweight coordinate columns."""
        d = self.rank
        cols = []
        for j in range(d):
            e = tuple(int(i == j) for i in range(d))
            cols.append(self.reflect_coweight(self.simple_roots[k], e))
        return tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))

    def root_reflection_matrix(self, a: Root) -> tuple[tuple[int, ...], ...]:
        d = self.rank
        cols = []
        for j in range(d):
            e = tuple(int(i == j) for i in range(d))
            cols.append(self.reflect_coweight(a, e))
        return tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))

    def is_dominant(self, lam: Coweight) -> bool:
        return all(x >= 0 for x in lam)

    def is_antidominant(self, lam: Coweight) -> bool:
        return all(x <= 0 for x in lam)

    def fundamental_domain_test(self, lam: Coweight, n: int) -> bool:
        """``-n < 2(lam, a)/(a, a) <= 0`` for every positive root ``a``."""
        if n < 2:
            raise ValueError("level must be >= 2")
        for a in self.positive_roots:
            p = self.pair(lam, a)
            if not (-n < p <= 0):
                return False
        return True

    def fundamental_box(self, n: int) -> list[Coweight]:
        """All coweights passing ``fundamental_domain_test``, sorted."""
        ranges = []
        for k in range(self.rank):
            dk = self.gram[k][k] // 2
            ranges.append(range(-n * dk + 1, 1))
        pts = [lam for lam in itertools.product(*ranges) if self.fundamental_domain_test(lam, n)]
        return sorted(pts, reverse=True)

    @cached_property
    def omega_index(self) -> int:
        """Order of the coweight lattice modulo the coroot lattice."""
        m = [[Fraction(x) for x in row] for row in self.cartan]
        det = Fraction(1)
        d = self.rank
        for c in range(d):
            p = next(r for r in range(c, d) if m[r][c] != 0)
            if p != c:
                m[c], m[p] = m[p], m[c]
                det = -det
            det *= m[c][c]
            for r in range(c + 1, d):
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
        return abs(int(det))


def _positive_roots(family: str, d: int, gram: list[list[int]]) -> tuple[Root, ...]:
    simple = [tuple(int(i == k) for i in range(d)) for k in range(d)]
    seen = set(simple)
    frontier = list(simple)

    def form(a, b):
        return sum(a[i] * gram[i][j] * b[j] for i in range(d) for j in range(d))

    while frontier:
        nxt = []
        for a in frontier:
            for k in range(d):
                c = 2 * form(simple[k], a) // gram[k][k]
                b = tuple(x - (c if i == k else 0) for i, x in enumerate(a))
                if b not in seen and all(x >= 0 for x in b):
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return tuple(sorted(seen, key=lambda r: (sum(r), r)))


def build_root_datum(family: str, rank: int) -> CartanDatum:
    family = family.upper()
    gram = _gram(family, rank)
    if _weyl_order(family, rank) > _MAX_W:
        raise UnsupportedDatum(f"{family}{rank}: Weyl group too large for exhaustive enumeration")
    roots = _positive_roots(family, rank, gram)
    return CartanDatum(family, rank, tuple(tuple(r) for r in gram), roots)
