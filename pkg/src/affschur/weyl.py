"""Finite and extended affine Weyl groups on a length-bounded universe.

An element ``t_lam * w`` is stored as the Bernstein pair ``(lam, w)`` with
``w`` an index into the enumerated finite Weyl group.  A :class:`WeylUniverse`
enumerates every element of length at most ``L`` and hands out integer ids;
all multiplication tables are indexed by those ids.  Anything that would leave
the universe raises :class:`BoundError`.

Words are written ``w<k>*<i1>.<i2>...`` meaning ``omega_k s_i1 s_i2 ...``;
``e`` is the empty word.

>>> from affschur.rootdatum import build_root_datum
>>> U = WeylUniverse(build_root_datum("A", 1), "affine", 6)
>>> U.length[U.parse("0")], U.length[U.parse("w1")]
(1, 0)
>>> U.leq(U.parse("0"), U.parse("1.0")), U.leq(U.parse("1"), U.parse("0"))
(True, False)
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .rootdatum import CartanDatum, Coweight

__all__ = [
    "BoundError",
    "FiniteWeyl",
    "WeylUniverse",
    "Parabolic",
    "Orbit",
    "OrbitTable",
    "orbit_table",
]

Matrix = tuple[tuple[int, ...], ...]


class BoundError(RuntimeError):
    """A computation needed an element beyond the session length bound."""

    def __init__(self, message: str, length: int | None = None):
        super().__init__(message)
        self.length = length


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _matvec(a: Matrix, x: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(r[k] * x[k] for k in range(len(x))) for r in a)


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


class FiniteWeyl:
    """The finite Weyl group as integer matrices acting on coweights."""

    def __init__(self, datum: CartanDatum):
        self.datum = datum
        d = datum.rank
        self.gens = [datum.simple_reflection_matrix(k) for k in range(d)]
        ident = _identity(d)
        self.mats: list[Matrix] = [ident]
        self.index: dict[Matrix, int] = {ident: 0}
        queue = deque([ident])
        while queue:
            m = queue.popleft()
            for g in self.gens:
                p = _matmul(m, g)
                if p not in self.index:
                    self.index[p] = len(self.mats)
                    self.mats.append(p)
                    queue.append(p)
        self.order = len(self.mats)
        self.inv = [self.index[self._inverse(m)] for m in self.mats]
        pos = datum.positive_roots
        self.root_index = {r: i for i, r in enumerate(pos)}
        # inversions of w^{-1}: positive roots a with w^{-1}(a) negative
        self.neg_under_inverse: list[frozenset[int]] = []
        for m in self.mats:
            bad = set()
            for i, a in enumerate(pos):
                img = tuple(sum(a[k] * m[k][j] for k in range(d)) for j in range(d))
                if all(x <= 0 for x in img):
                    bad.add(i)
            self.neg_under_inverse.append(frozenset(bad))
        self.length = [len(s) for s in self.neg_under_inverse]
        self._mul: dict[tuple[int, int], int] = {}
        self.theta_reflection = self.index[datum.root_reflection_matrix(datum.theta)]
        self.simple = [self.index[g] for g in self.gens]

    def _inverse(self, m: Matrix) -> Matrix:
        # Weyl matrices have finite order; walk powers until identity
        d = len(m)
        ident = _identity(d)
        prev, cur = ident, m
        while cur != ident:
            prev, cur = cur, _matmul(cur, m)
        return prev

    def mul(self, u: int, w: int) -> int:
        key = (u, w)
        r = self._mul.get(key)
        if r is None:
            r = self.index[_matmul(self.mats[u], self.mats[w])]
            self._mul[key] = r
        return r

    def act(self, w: int, lam: Sequence[int]) -> tuple[int, ...]:
        return _matvec(self.mats[w], lam)

    def orbit(self, lam: Sequence[int]) -> list[tuple[int, ...]]:
        return sorted({self.act(w, lam) for w in range(self.order)})

    def antidominant(self, lam: Sequence[int]) -> tuple[int, ...]:
        lam = tuple(lam)
        changed = True
        while changed:
            changed = False
            for k in range(self.datum.rank):
                if lam[k] > 0:
                    lam = self.act(self.simple[k], lam)
                    changed = True
        return lam


Raw = tuple[tuple[int, ...], int]


@dataclass(frozen=True)
class Parabolic:
    """A finite standard parabolic subgroup W_J of the universe."""

    J: frozenset[int]
    elements: tuple[int, ...]
    longest: int
    longest_length: int

    @property
    def order(self) -> int:
        return len(self.elements)


class WeylUniverse:
    """All elements of length ``<= bound`` of W (finite mode) or of the
    extended affine Weyl group (affine mode)."""

    def __init__(self, datum: CartanDatum, mode: str, bound: int):
        if mode not in ("finite", "affine"):
            raise ValueError(f"mode must be finite or affine, got {mode!r}")
        if bound < 0:
            raise ValueError("length bound must be non-negative")
        self.datum = datum
        self.mode = mode
        self.bound = bound
        self.W = FiniteWeyl(datum)
        d = datum.rank
        self.rank = d
        self.zero = tuple([0] * d)
        W = self.W
        gens: dict[int, Raw] = {}
        if mode == "affine":
            gens[0] = (datum.theta_coroot, W.theta_reflection)
        for k in range(d):
            gens[k + 1] = (self.zero, W.simple[k])
        self.generators = sorted(gens)
        self._gen_raw = gens
        self.omega_raw = self._find_omega()
        self._enumerate()

    # raw arithmetic on Bernstein pairs
    def raw_mul(self, x: Raw, y: Raw) -> Raw:
        lam, u = x
        mu, w = y
        um = self.W.act(u, mu)
        return (tuple(a + b for a, b in zip(lam, um)), self.W.mul(u, w))

    def raw_inv(self, x: Raw) -> Raw:
        lam, w = x
        wi = self.W.inv[w]
        return (tuple(-a for a in self.W.act(wi, lam)), wi)

    def im_length(self, x: Raw) -> int:
        """Closed-form length of ``t_lam w`` (alcove hyperplane count)."""
        lam, w = x
        neg = self.W.neg_under_inverse[w]
        total = 0
        for i, a in enumerate(self.datum.positive_roots):
            p = sum(s * t for s, t in zip(a, lam))
            total += abs(p - 1) if i in neg else abs(p)
        return total

    def _find_omega(self) -> list[Raw]:
        if self.mode == "finite":
            return [(self.zero, 0)]
        found = []
        for lam in itertools.product((-1, 0, 1), repeat=self.rank):
            for w in range(self.W.order):
                x = (tuple(lam), w)
                if self.im_length(x) == 0:
                    found.append(x)
        found.sort(key=lambda x: (x != (self.zero, 0), x[0], x[1]))
        if len(found) != self.datum.omega_index:
            raise AssertionError(
                f"length-zero subgroup has {len(found)} elements, expected {self.datum.omega_index}"
            )
        return found

    def _enumerate(self) -> None:
        layer = list(dict.fromkeys(self.omega_raw))
        seen = set(layer)
        layers = [layer]
        exhausted = False
        for k in range(1, self.bound + 1):
            nxt = []
            for x in layers[-1]:
                for g in self.generators:
                    y = self.raw_mul(x, self._gen_raw[g])
                    if y not in seen and self.im_length(y) == k:
                        seen.add(y)
                        nxt.append(y)
            if not nxt:
                exhausted = True
                break
            layers.append(nxt)
        if not exhausted and self.mode == "finite":
            exhausted = max(self.W.length) <= self.bound
        # every element of the group is present (possible in finite mode only)
        self.complete = exhausted
        elems = [x for lay in layers for x in lay]
        # provisional ids to compute greedy words, then renumber
        idx = {x: i for i, x in enumerate(elems)}
        lengths = [self.im_length(x) for x in elems]
        omega_idx = {x: i for i, x in enumerate(self.omega_raw)}

        def greedy(x: Raw) -> tuple[int, tuple[int, ...]]:
            word = []
            cur = x
            while lengths[idx[cur]] > 0:
                for g in self.generators:
                    y = self.raw_mul(cur, self._gen_raw[g])
                    if y in idx and lengths[idx[y]] < lengths[idx[cur]]:
                        word.append(g)
                        cur = y
                        break
                else:  # pragma: no cover - would contradict the length formula
                    raise AssertionError(f"no descent found for {x}")
            return omega_idx[cur], tuple(reversed(word))

        words = {x: greedy(x) for x in elems}
        elems.sort(key=lambda x: (self.im_length(x), words[x][0], words[x][1]))
        self.elements: list[Raw] = elems
        self.key: dict[Raw, int] = {x: i for i, x in enumerate(elems)}
        self.length: list[int] = [self.im_length(x) for x in elems]
        self.omega_of: list[int] = [words[x][0] for x in elems]
        self.word: list[tuple[int, ...]] = [words[x][1] for x in elems]
        self.size = len(elems)
        self.identity = self.key[(self.zero, 0)]
        self.omega_ids = [self.key[x] for x in self.omega_raw]
        n = self.size
        self.rmul: dict[int, list[int]] = {}
        self.lmul: dict[int, list[int]] = {}
        for g in self.generators:
            gr = self._gen_raw[g]
            self.rmul[g] = [self.key.get(self.raw_mul(x, gr), -1) for x in elems]
            self.lmul[g] = [self.key.get(self.raw_mul(gr, x), -1) for x in elems]
        self.rlonger: dict[int, list[bool]] = {
            g: [r < 0 or self.length[r] > self.length[i] for i, r in enumerate(self.rmul[g])] for g in self.generators
        }
        self.llonger: dict[int, list[bool]] = {
            g: [r < 0 or self.length[r] > self.length[i] for i, r in enumerate(self.lmul[g])] for g in self.generators
        }
        self.inverse = [self.key[self.raw_inv(x)] for x in elems]
        self.lomega = [[self.key[self.raw_mul(o, x)] for x in elems] for o in self.omega_raw]
        self.romega = [[self.key[self.raw_mul(x, o)] for x in elems] for o in self.omega_raw]
        self.by_length: list[list[int]] = [[] for _ in range(max(self.length) + 1)]
        for i in range(n):
            self.by_length[self.length[i]].append(i)
        self._leq: dict[tuple[int, int], bool] = {}
        self._parabolic: dict[frozenset, Parabolic] = {}

    # ids and words
    def parse(self, text: str) -> int:
        """Parse ``w<k>*i.j.k``, ``w<k>``, ``i.j.k`` or ``e`` into an id."""
        text = text.strip()
        omega = 0
        body = text
        if text.startswith("w"):
            head, _, rest = text.partition("*")
            try:
                omega = int(head[1:])
            except ValueError:
                raise ValueError(f"malformed word {text!r}") from None
            if not (0 <= omega < len(self.omega_ids)):
                raise ValueError(f"no length-zero element w{omega}")
            body = rest or "e"
        if body in ("e", ""):
            letters: list[int] = []
        else:
            try:
                letters = [int(t) for t in body.split(".")]
            except ValueError:
                raise ValueError(f"malformed word {text!r}") from None
        for g in letters:
            if g not in self.generators:
                raise ValueError(f"unknown generator {g} in {text!r}")
        cur = self.omega_ids[omega]
        for g in letters:
            nxt = self.rmul[g][cur]
            if nxt < 0:
                raise BoundError(f"word {text!r} leaves the length bound {self.bound}", self.bound + 1)
            cur = nxt
        return cur

    def word_str(self, x: int) -> str:
        body = ".".join(map(str, self.word[x])) or "e"
        k = self.omega_of[x]
        if k == 0:
            return body
        return f"w{k}" if body == "e" else f"w{k}*{body}"

    def as_json(self, x: int) -> dict:
        return {"word": ".".join(map(str, self.word[x])) or "e", "omega": self.omega_of[x]}

    def raw(self, x: int) -> Raw:
        return self.elements[x]

    def id_of(self, x: Raw) -> int:
        i = self.key.get(x)
        if i is None:
            raise BoundError(f"element of length {self.im_length(x)} exceeds bound {self.bound}", self.im_length(x))
        return i

    # group operations on ids
    def mul(self, x: int, y: int) -> int:
        return self.id_of(self.raw_mul(self.elements[x], self.elements[y]))

    def mul_raw_len(self, x: int, y: int) -> int:
        return self.im_length(self.raw_mul(self.elements[x], self.elements[y]))

    def right_descents(self, x: int) -> list[int]:
        return [g for g in self.generators if not self.rlonger[g][x]]

    def left_descents(self, x: int) -> list[int]:
        return [g for g in self.generators if not self.llonger[g][x]]

    def leq(self, x: int, y: int) -> bool:
        """Bruhat order; different length-zero components are incomparable."""
        key = (x, y)
        r = self._leq.get(key)
        if r is not None:
            return r
        lx, ly = self.length[x], self.length[y]
        if x == y:
            r = True
        elif lx >= ly:
            r = False
        else:
            s = self.right_descents(y)[0]
            ys = self.rmul[s][y]
            xs = self.rmul[s][x]
            if xs >= 0 and self.length[xs] < lx:
                r = self.leq(xs, ys)
            else:
                r = self.leq(x, ys)
        self._leq[key] = r
        return r

    def interval(self, x: int, y: int) -> list[int]:
        return [z for z in range(self.size) if self.length[x] <= self.length[z] <= self.length[y] and self.leq(x, z) and self.leq(z, y)]

    def lower_interval(self, y: int) -> list[int]:
        return [z for z in range(self.size) if self.length[z] <= self.length[y] and self.leq(z, y)]

    # parabolic machinery
    def parabolic(self, J: Iterable[int]) -> Parabolic:
        J = frozenset(J)
        P = self._parabolic.get(J)
        if P is not None:
            return P
        if not J <= set(self.generators):
            raise ValueError(f"{sorted(J)} is not a set of generators")
        if self.mode == "affine" and J == set(self.generators):
            raise ValueError("J must be a proper subset")
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for j in sorted(J):
                y = self.rmul[j][x]
                if y < 0:
                    raise BoundError(f"parabolic subgroup {sorted(J)} exceeds length bound {self.bound}", self.bound + 1)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        elems = tuple(sorted(seen))
        longest = max(elems, key=lambda z: (self.length[z], z))
        P = Parabolic(J, elems, longest, self.length[longest])
        self._parabolic[J] = P
        return P

    def is_min_left(self, x: int, J: Iterable[int]) -> bool:
        """``x`` is a minimal representative of ``W_J x``."""
        return all(self.llonger[j][x] for j in J)

    def is_min_right(self, x: int, K: Iterable[int]) -> bool:
        return all(self.rlonger[k][x] for k in K)

    def min_reps(self, J: Iterable[int], max_len: int | None = None) -> list[int]:
        J = tuple(J)
        top = self.bound if max_len is None else max_len
        return [x for x in range(self.size) if self.length[x] <= top and self.is_min_left(x, J)]

    def double_reps(self, J: Iterable[int], K: Iterable[int], max_len: int | None = None) -> list[int]:
        J, K = tuple(J), tuple(K)
        top = self.bound if max_len is None else max_len
        return [
            x
            for x in range(self.size)
            if self.length[x] <= top and self.is_min_left(x, J) and self.is_min_right(x, K)
        ]

    def double_coset(self, g: int, J: Iterable[int], K: Iterable[int]) -> list[int]:
        PJ, PK = self.parabolic(J), self.parabolic(K)
        out = set()
        for u in PJ.elements:
            ug = self.mul(u, g)
            for w in PK.elements:
                out.add(self.mul(ug, w))
        return sorted(out)

    def longest_in_double_coset(self, g: int, J: Iterable[int], K: Iterable[int]) -> int:
        coset = self.double_coset(g, J, K)
        top = max(self.length[z] for z in coset)
        tops = [z for z in coset if self.length[z] == top]
        if len(tops) != 1:
            raise AssertionError("double coset has no unique longest element")
        return tops[0]

    def coset_factor(self, x: int, J: Iterable[int]) -> tuple[int, int]:
        """Write ``x = u * y`` with ``u`` in W_J and ``y`` minimal."""
        J = tuple(J)
        u_word: list[int] = []
        y = x
        progress = True
        while progress:
            progress = False
            for j in J:
                if not self.llonger[j][y]:
                    y = self.lmul[j][y]
                    u_word.append(j)
                    progress = True
                    break
        u = self.identity
        for j in u_word:
            u = self.rmul[j][u]
        return u, y

    # level-n action on coweights
    def act(self, lam: Sequence[int], x: int, n: int | None) -> tuple[int, ...]:
        """Right action ``lam . (t_mu w) = w^{-1}(lam - n mu)``."""
        mu, w = self.elements[x]
        if self.mode == "affine":
            if n is None or n < 2:
                raise ValueError("level must be >= 2")
            shifted = tuple(a - n * b for a, b in zip(lam, mu))
        else:
            shifted = tuple(lam)
        return self.W.act(self.W.inv[w], shifted)

    def act_raw(self, lam: Sequence[int], x: Raw, n: int | None) -> tuple[int, ...]:
        mu, w = x
        shifted = tuple(a - (n or 0) * b for a, b in zip(lam, mu)) if self.mode == "affine" else tuple(lam)
        return self.W.act(self.W.inv[w], shifted)


@dataclass(frozen=True)
class Orbit:
    index: int
    rep: Coweight
    J: frozenset[int]
    stabilizer_order: int

    @property
    def regular(self) -> bool:
        return not self.J

    @property
    def name(self) -> str:
        return f"g{self.index}"


@dataclass
class OrbitTable:
    level: int | None
    xf: str
    orbits: list[Orbit]
    distinct: bool
    warnings: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.orbits)

    def __getitem__(self, i: int) -> Orbit:
        return self.orbits[i]

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "xf": self.xf,
            "fundamental_domain_ok": self.distinct,
            "warnings": list(self.warnings),
            "orbits": [
                {
                    "name": o.name,
                    "rep": list(o.rep),
                    "J": sorted(o.J),
                    "regular": o.regular,
                    "stabilizer_order": o.stabilizer_order,
                }
                for o in self.orbits
            ],
        }


def _same_affine_orbit(W: FiniteWeyl, a: Sequence[int], b: Sequence[int], n: int) -> bool:
    for w in range(W.order):
        wa = W.act(w, a)
        if all((x - y) % n == 0 for x, y in zip(wa, b)):
            return True
    return False


def _stabilizer_order(W: FiniteWeyl, a: Sequence[int], n: int | None) -> int:
    count = 0
    for w in range(W.order):
        wa = W.act(w, a)
        if n is None:
            count += wa == tuple(a)
        else:
            count += all((x - y) % n == 0 for x, y in zip(a, wa))
    return count


def orbit_table(U: WeylUniverse, n: int | None, xf: str | Sequence[Sequence[int]]) -> OrbitTable:
    """Orbits of the level-n action on the chosen coweight set.

    ``xf`` is ``"full"`` (affine mode only) or a list of coweights whose orbits
    make up the set.
    """
    datum = U.datum
    W = U.W
    warnings: list[str] = []
    if U.mode == "affine":
        if n is None or n < 2:
            raise ValueError("affine mode needs a level n >= 2")
        box = datum.fundamental_box(n)
        if xf == "full":
            reps = box
            xf_desc = "full"
        else:
            pts = [tuple(p) for p in xf]
            if not pts:
                raise ValueError("empty coweight set")
            reps = []
            for p in pts:
                hits = [f for f in box if _same_affine_orbit(W, p, f, n)]
                if not hits:
                    raise AssertionError(f"no representative of {p} in the fundamental box")
                for h in hits:
                    if h not in reps:
                        reps.append(h)
            reps.sort(reverse=True)
            xf_desc = ";".join(",".join(map(str, p)) for p in pts)
        distinct = True
        for a, b in itertools.combinations(reps, 2):
            if _same_affine_orbit(W, a, b, n):
                distinct = False
                warnings.append(f"representatives {list(a)} and {list(b)} lie in one orbit")
    else:
        if n is not None:
            raise ValueError("finite mode takes no level")
        if xf == "full" or xf is None:
            raise ValueError("finite mode needs an explicit list of coweights")
        pts = [tuple(p) for p in xf]
        if not pts:
            raise ValueError("empty coweight set")
        reps = sorted({W.antidominant(p) for p in pts}, reverse=True)
        xf_desc = ";".join(",".join(map(str, p)) for p in pts)
        distinct = True
    orbits = []
    for i, rep in enumerate(reps):
        J = frozenset(g for g in U.generators if U.act(rep, _gen_id(U, g), n) == tuple(rep))
        if U.mode == "affine" and J == set(U.generators):
            raise AssertionError("stabilizer of a representative is the whole group")
        stab = _stabilizer_order(W, rep, n if U.mode == "affine" else None)
        orbits.append(Orbit(i, tuple(rep), J, stab))
    for o in orbits:
        if o.stabilizer_order != U.parabolic(o.J).order:
            warnings.append(
                f"{o.name}: stabilizer has order {o.stabilizer_order} but W_J has order {U.parabolic(o.J).order}"
            )
    return OrbitTable(n, xf_desc, orbits, distinct, warnings)


def _gen_id(U: WeylUniverse, g: int) -> int:
    return U.rmul[g][U.identity]
