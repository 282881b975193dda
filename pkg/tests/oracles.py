"""Brute-force reference computations used by the tests.

Everything here works on raw group elements ``(lam, w)`` and plain
``{exponent: coeff}`` dicts, and only borrows the group law and the simple
reflections from the package.  Lengths come from breadth-first search,
Hecke products from the quadratic relation, KL elements from a triangular
solve against the bar involution, never from the package's own recursions.
"""

from __future__ import annotations

from collections import deque

Poly = dict  # exponent -> coefficient


def padd(a: Poly, b: Poly, scale: int = 1) -> Poly:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + scale * c
    return {e: c for e, c in out.items() if c}


def pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for e, c in a.items():
        for f, d in b.items():
            out[e + f] = out.get(e + f, 0) + c * d
    return {e: c for e, c in out.items() if c}


def pbar(a: Poly) -> Poly:
    return {-e: c for e, c in a.items()}


def as_dict(pair) -> Poly:
    low, coeffs = pair if isinstance(pair, tuple) else (pair.low, pair.coeffs)
    return {low + i: c for i, c in enumerate(coeffs) if c}


# lengths
class Cayley:
    """Breadth-first search over the group from the length-zero elements."""

    def __init__(self, U, depth: int):
        self.U = U
        self.gens = {g: U._gen_raw[g] for g in U.generators}
        self.dist: dict = {}
        self.parent: dict = {}
        queue = deque()
        for o in U.omega_raw:
            self.dist[o] = 0
            queue.append(o)
        while queue:
            x = queue.popleft()
            if self.dist[x] >= depth:
                continue
            for g, s in self.gens.items():
                y = U.raw_mul(x, s)
                if y not in self.dist:
                    self.dist[y] = self.dist[x] + 1
                    self.parent[y] = (x, g)
                    queue.append(y)

    def word(self, x) -> tuple:
        """``(omega, generators)`` with ``x = omega * s_g1 * ... * s_gk``."""
        gens = []
        while x in self.parent:
            x, g = self.parent[x]
            gens.append(g)
        return x, tuple(reversed(gens))

    def length(self, x) -> int:
        return self.dist[x]


# Hecke algebra from the quadratic relation
class OracleHecke:
    """Elements are ``{raw: Poly}`` in the standard basis."""

    TWIST = {-1: 1, 1: -1}  # v^-1 - v

    def __init__(self, U, depth: int):
        self.U = U
        self.cay = Cayley(U, depth)
        self._kl: dict = {}

    def rmul_s(self, h: dict, g: int) -> dict:
        s = self.cay.gens[g]
        L = self.cay.length
        out: dict = {}
        for x, p in h.items():
            xs = self.U.raw_mul(x, s)
            out[xs] = padd(out.get(xs, {}), p)
            if L(xs) < L(x):
                out[x] = padd(out.get(x, {}), pmul(p, self.TWIST))
        return {x: p for x, p in out.items() if p}

    def rmul_std(self, h: dict, y) -> dict:
        omega, word = self.cay.word(y)
        h = {self.U.raw_mul(x, omega): p for x, p in h.items()}
        for g in word:
            h = self.rmul_s(h, g)
        return h

    def mul(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for y, q in b.items():
            for x, p in self.rmul_std(a, y).items():
                out[x] = padd(out.get(x, {}), pmul(p, q))
        return {x: p for x, p in out.items() if p}

    def bar_std(self, y) -> dict:
        """``bar(H_y) = H_omega * prod (H_s + v - v^-1)``."""
        omega, word = self.cay.word(y)
        h = {omega: {0: 1}}
        for g in word:
            t = self.rmul_s(h, g)
            for x, p in h.items():
                t[x] = padd(t.get(x, {}), pmul(p, {1: 1, -1: -1}))
            h = {x: p for x, p in t.items() if p}
        return h

    def kl(self, w) -> dict:
        """``C_w`` by solving ``p - bar(p) = sum_{y > x} bar(p_y) r_{x,y}`` downward."""
        if w in self._kl:
            return self._kl[w]
        L = self.cay.length
        support = sorted(self.bar_std(w), key=L, reverse=True)
        r = {y: self.bar_std(y) for y in support}
        p: dict = {}
        for x in support:
            if x == w:
                p[x] = {0: 1}
                continue
            rhs: Poly = {}
            for y, py in p.items():
                rxy = r[y].get(x)
                if rxy:
                    rhs = padd(rhs, pmul(pbar(py), rxy))
            pos = {e: c for e, c in rhs.items() if e > 0}
            assert padd(pos, pbar(pos), -1) == rhs, "triangular solve is inconsistent"
            if pos:
                p[x] = pos
        self._kl[w] = p
        return p

    def to_kl_basis(self, h: dict) -> dict:
        """Peel off the longest term repeatedly."""
        L = self.cay.length
        h = dict(h)
        out: dict = {}
        while h:
            top = max(h, key=lambda x: (L(x), x))
            c = h[top]
            out[top] = c
            for y, p in self.kl(top).items():
                h[y] = padd(h.get(y, {}), pmul(c, p), -1)
                if not h[y]:
                    del h[y]
        return out

    def struct(self, x, y) -> dict:
        return self.to_kl_basis(self.mul(self.kl(x), self.kl(y)))


def cells_from_products(elements: list, struct) -> tuple[list[list], dict]:
    """Two-sided cells of a finite group from all products ``C_x C_y``.

    ``z <= y`` when ``C_z`` occurs in ``C_x C_y`` or ``C_y C_x``; cells are the
    classes of the transitive closure.
    """
    below = {y: {y} for y in elements}
    for x in elements:
        for y in elements:
            for z in struct(x, y):
                below[x].add(z)
                below[y].add(z)
    changed = True
    while changed:
        changed = False
        for y in elements:
            new = set().union(*(below[z] for z in below[y]))
            if new != below[y]:
                below[y] = new
                changed = True
    cells, seen = [], set()
    for y in elements:
        if y in seen:
            continue
        cell = [z for z in elements if z in below[y] and y in below[z]]
        seen.update(cell)
        cells.append(cell)
    return cells, below


def a_values(elements: list, struct) -> dict:
    a = {z: 0 for z in elements}
    for x in elements:
        for y in elements:
            for z, p in struct(x, y).items():
                a[z] = max(a[z], -min(p))
    return a


def pair_orbit_count(U, xf: list) -> int:
    """Number of W-orbits on ``X_f x X_f`` for the finite Weyl group."""
    datum = U.datum
    simple = datum.simple_roots

    def reflect(k, lam):
        return tuple(datum.reflect_coweight(simple[k], lam))

    pts = set()
    for lam in xf:
        queue = [tuple(lam)]
        while queue:
            x = queue.pop()
            if x in pts:
                continue
            pts.add(x)
            queue.extend(reflect(k, x) for k in range(datum.rank))
    seen, count = set(), 0
    for a in sorted(pts):
        for b in sorted(pts):
            if (a, b) in seen:
                continue
            count += 1
            queue = [(a, b)]
            while queue:
                q = queue.pop()
                if q in seen:
                    continue
                seen.add(q)
                queue.extend((reflect(k, q[0]), reflect(k, q[1])) for k in range(datum.rank))
    return count
