"""The Hecke algebra of a Weyl universe and its Kazhdan-Lusztig basis.

Conventions: ``(H_s - v^-1)(H_s + v) = 0``, so ``C_s = H_s + v`` and the KL
polynomials ``p_{y,w}`` lie in ``v N[v]`` for ``y < w``.

>>> from affschur.rootdatum import build_root_datum
>>> from affschur.weyl import WeylUniverse
>>> H = HeckeAlgebra(WeylUniverse(build_root_datum("A", 1), "affine", 6))
>>> H.show(H.kl(H.U.parse("1.0")))
'H[1.0] + v H[1] + v H[0] + v^2 H[e]'
"""

from __future__ import annotations

from typing import Iterable, Mapping

from . import kernels as K
from .laurent import LaurentPoly
from .weyl import BoundError, WeylUniverse

__all__ = ["HeckeElt", "HeckeAlgebra", "ParabolicModule"]

ZERO = (0, ())
ONE = (0, (1,))
V = (1, (1,))
V_MINUS_VINV = (-1, (-1, 0, 1))


def _acc(out: dict, key: int, pair: tuple) -> None:
    if not pair[1]:
        return
    old = out.get(key)
    if old is None:
        out[key] = pair
        return
    s = K.poly_add(old[0], old[1], pair[0], pair[1])
    if s[1]:
        out[key] = s
    else:
        del out[key]


def _scale(terms: Mapping[int, tuple], c: tuple) -> dict:
    if not c[1]:
        return {}
    if c == ONE:
        return dict(terms)
    out = {}
    for k, p in terms.items():
        q = K.poly_mul(p[0], p[1], c[0], c[1])
        if q[1]:
            out[k] = q
    return out


def _addto(out: dict, terms: Mapping[int, tuple], c: tuple = ONE) -> None:
    for k, p in terms.items():
        _acc(out, k, K.poly_mul(p[0], p[1], c[0], c[1]) if c != ONE else p)


def _pair(p) -> tuple:
    if isinstance(p, LaurentPoly):
        return (p.low, p.coeffs)
    if isinstance(p, int):
        return (0, (p,)) if p else ZERO
    return p


class HeckeElt:
    """Finitely supported map from universe ids to Laurent polynomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        self.terms: dict[int, tuple] = {}
        if terms:
            for k, p in terms.items():
                _acc(self.terms, k, _pair(p))

    @classmethod
    def _wrap(cls, terms: dict) -> "HeckeElt":
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def basis(cls, x: int, c=1) -> "HeckeElt":
        return cls({x: c})

    def coeff(self, x: int) -> LaurentPoly:
        p = self.terms.get(x)
        return LaurentPoly._raw(p) if p else LaurentPoly.zero()

    def support(self) -> list[int]:
        return sorted(self.terms)

    def items(self):
        for k in sorted(self.terms):
            yield k, LaurentPoly._raw(self.terms[k])

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        out = dict(self.terms)
        _addto(out, other.terms)
        return HeckeElt._wrap(out)

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        out = dict(self.terms)
        _addto(out, other.terms, (0, (-1,)))
        return HeckeElt._wrap(out)

    def __neg__(self) -> "HeckeElt":
        return self.scale(-1)

    def scale(self, c) -> "HeckeElt":
        return HeckeElt._wrap(_scale(self.terms, _pair(c)))

    def shift(self, k: int) -> "HeckeElt":
        return HeckeElt._wrap({x: (p[0] + k, p[1]) for x, p in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"HeckeElt({ {k: str(v) for k, v in self.items()} })"


class HeckeAlgebra:
    """Multiplication, bar involution, KL basis and derived data on ``U``."""

    def __init__(self, U: WeylUniverse):
        self.U = U
        self._bar_h: dict[int, dict] = {}
        self._kl: dict[int, dict] = {}
        self._struct: dict[tuple[int, int], dict[int, tuple]] = {}
        self.kl_computed = 0  # KL elements derived in this session (not loaded)

    # basic elements
    def H(self, x: int | str) -> HeckeElt:
        return HeckeElt._wrap({self._id(x): ONE})

    def one(self) -> HeckeElt:
        return self.H(self.U.identity)

    def _id(self, x: int | str) -> int:
        return self.U.parse(x) if isinstance(x, str) else x

    def max_length(self, a: HeckeElt) -> int:
        return max((self.U.length[x] for x in a.terms), default=0)

    # multiplication
    def _rgen(self, terms: dict, s: int) -> dict:
        try:
            return K.hecke_rmul_gen(terms, self.U.rmul[s], self.U.rlonger[s])
        except LookupError as exc:
            w = exc.args[0]
            raise BoundError(
                f"product needs length {self.U.length[w] + 1} beyond bound {self.U.bound}", self.U.length[w] + 1
            ) from None

    def _lgen(self, terms: dict, s: int) -> dict:
        try:
            return K.hecke_rmul_gen(terms, self.U.lmul[s], self.U.llonger[s])
        except LookupError as exc:
            w = exc.args[0]
            raise BoundError(
                f"product needs length {self.U.length[w] + 1} beyond bound {self.U.bound}", self.U.length[w] + 1
            ) from None

    def rmul_gen(self, a: HeckeElt, s: int) -> HeckeElt:
        return HeckeElt._wrap(self._rgen(a.terms, s))

    def lmul_gen(self, s: int, a: HeckeElt) -> HeckeElt:
        return HeckeElt._wrap(self._lgen(a.terms, s))

    def _romega(self, terms: dict, k: int) -> dict:
        perm = self.U.romega[k]
        return {perm[x]: p for x, p in terms.items()}

    def _lomega(self, terms: dict, k: int) -> dict:
        perm = self.U.lomega[k]
        return {perm[x]: p for x, p in terms.items()}

    def _rmul_basis(self, terms: dict, y: int, memo: dict) -> dict:
        """``terms * H_y`` with prefixes of the word of ``y`` memoized."""
        r = memo.get(y)
        if r is not None:
            return r
        U = self.U
        word = U.word[y]
        if not word:
            r = self._romega(terms, U.omega_of[y])
        else:
            prefix = U.rmul[word[-1]][y]
            r = self._rgen(self._rmul_basis(terms, prefix, memo), word[-1])
        memo[y] = r
        return r

    def mul(self, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        if not a.terms or not b.terms:
            return HeckeElt()
        memo: dict[int, dict] = {}
        out: dict[int, tuple] = {}
        for y, c in b.terms.items():
            _addto(out, self._rmul_basis(a.terms, y, memo), c)
        return HeckeElt._wrap(out)

    # bar involution
    def _bar_basis(self, w: int) -> dict:
        r = self._bar_h.get(w)
        if r is not None:
            return r
        U = self.U
        word = U.word[w]
        if not word:
            r = {w: ONE}
        else:
            s = word[-1]
            prev = self._bar_basis(U.rmul[s][w])
            # bar(H_s) = H_s + (v - v^-1)
            r = self._rgen(prev, s)
            _addto(r, prev, V_MINUS_VINV)
        self._bar_h[w] = r
        return r

    def bar(self, a: HeckeElt) -> HeckeElt:
        out: dict[int, tuple] = {}
        for w, p in a.terms.items():
            bp = (-(p[0] + len(p[1]) - 1), tuple(reversed(p[1])))
            _addto(out, self._bar_basis(w), bp)
        return HeckeElt._wrap(out)

    def is_bar_invariant(self, a: HeckeElt) -> bool:
        return self.bar(a) == a

    def anti_involution(self, a: HeckeElt) -> HeckeElt:
        """``H_x -> H_{x^-1}``."""
        inv = self.U.inverse
        return HeckeElt._wrap({inv[x]: p for x, p in a.terms.items()})

    # Kazhdan-Lusztig basis
    def kl_terms(self, w: int) -> dict:
        r = self._kl.get(w)
        if r is None:
            r = self._compute_kl(w)
        return r

    def kl(self, w: int | str) -> HeckeElt:
        return HeckeElt._wrap(dict(self.kl_terms(self._id(w))))

    def p(self, y: int, w: int) -> LaurentPoly:
        c = self.kl_terms(w).get(y)
        return LaurentPoly._raw(c) if c else LaurentPoly.zero()

    def mu(self, y: int, w: int) -> int:
        c = self.kl_terms(w).get(y)
        if not c:
            return 0
        k = 1 - c[0]
        return c[1][k] if 0 <= k < len(c[1]) else 0

    def _compute_kl(self, w: int) -> dict:
        U = self.U
        if U.length[w] == 0:
            r = {w: ONE}
        else:
            s = U.left_descents(w)[0]
            sw = U.lmul[s][w]
            prev = self.kl_terms(sw)
            # C_s C_sw = C_w + sum over z < sw with sz < z of mu(z, sw) C_z
            r = self._lgen(prev, s)
            _addto(r, prev, V)
            for z in sorted(prev, key=lambda z: -U.length[z]):
                if z == sw or U.llonger[s][z]:
                    continue
                m = self.mu(z, sw)
                if m:
                    _addto(r, self.kl_terms(z), (0, (-m,)))
            for y, c in r.items():
                if y == w:
                    if c != ONE:
                        raise AssertionError(f"KL element of {U.word_str(w)} is not monic")
                elif not (c[0] >= 1 and all(x >= 0 for x in c[1])):
                    raise AssertionError(
                        f"p_{{{U.word_str(y)},{U.word_str(w)}}} = {LaurentPoly._raw(c)} is not in vN[v]"
                    )
        self._kl[w] = r
        self.kl_computed += 1
        return r

    def load_kl(self, w: int, terms: Mapping[int, tuple]) -> None:
        """Seed the KL store (used by the on-disk cache)."""
        self._kl[w] = dict(terms)

    def load_struct(self, x: int, y: int, terms: Mapping[int, tuple]) -> None:
        self._struct[(x, y)] = dict(terms)

    def kl_all(self, max_len: int | None = None) -> None:
        top = self.U.bound if max_len is None else max_len
        for x in range(self.U.size):
            if self.U.length[x] <= top:
                self.kl_terms(x)

    def to_canonical(self, a: HeckeElt) -> dict[int, LaurentPoly]:
        """Coefficients of ``a`` in the KL basis."""
        U = self.U
        rest = dict(a.terms)
        out: dict[int, LaurentPoly] = {}
        while rest:
            z = max(rest, key=lambda x: (U.length[x], x))
            c = rest[z]
            out[z] = LaurentPoly._raw(c)
            _addto(rest, self.kl_terms(z), (c[0], tuple(-x for x in c[1])))
        return dict(sorted(out.items()))

    def from_canonical(self, coeffs: Mapping[int, object]) -> HeckeElt:
        out: dict[int, tuple] = {}
        for z, c in coeffs.items():
            _addto(out, self.kl_terms(z), _pair(c))
        return HeckeElt._wrap(out)

    # structure constants
    def struct(self, x: int, y: int) -> dict[int, tuple]:
        """``h_{x,y}^z`` for all ``z``: raw pairs keyed by ``z``."""
        key = (x, y)
        r = self._struct.get(key)
        if r is None:
            prod = self.mul(self.kl(x), self.kl(y))
            r = {z: (c.low, c.coeffs) for z, c in self.to_canonical(prod).items()}
            self._struct[key] = r
        return r

    def h(self, x: int, y: int, z: int) -> LaurentPoly:
        c = self.struct(x, y).get(z)
        return LaurentPoly._raw(c) if c else LaurentPoly.zero()

    def delta(self, z: int) -> tuple[int, int] | None:
        """``(Delta(z), n_z)`` from ``p_{1,z}``; None when ``1 <= z`` fails."""
        c = self.kl_terms(z).get(self.U.identity)
        if not c:
            return None
        return c[0], c[1][0]

    def pairs_within(self, total: int) -> Iterable[tuple[int, int]]:
        U = self.U
        for x in range(U.size):
            lx = U.length[x]
            if lx > total:
                continue
            for y in range(U.size):
                if lx + U.length[y] <= total:
                    yield x, y

    def a_scan(self, scan_bound: int | None = None) -> dict[int, int]:
        """``max(0, -lowest exponent of h_{x,y}^z)`` over scanned pairs, for all z."""
        U = self.U
        if U.complete:
            pairs: Iterable = ((x, y) for x in range(U.size) for y in range(U.size))
        else:
            pairs = self.pairs_within(U.bound if scan_bound is None else scan_bound)
        best = {z: 0 for z in range(U.size)}
        for x, y in pairs:
            for z, c in self.struct(x, y).items():
                if -c[0] > best[z]:
                    best[z] = -c[0]
        return best

    def a_bounded(self, z: int, scan: dict[int, int] | None = None) -> tuple[int, bool]:
        """The bounded a-value of ``z`` and whether it is certified."""
        U = self.U
        if scan is None:
            scan = self.a_scan()
        value = scan[z]
        if U.complete:
            return value, True
        zi = U.inverse[z]
        if 2 * U.length[z] > U.bound:
            return value, False
        for u in self.struct(zi, z):
            d = self.delta(u)
            if d is None or d[0] != value:
                continue
            if U.length[z] + U.length[u] > U.bound:
                continue
            c = self.struct(z, u).get(z)
            if c and -c[0] == value:
                return value, True
        return value, False

    def gamma(self, x: int, y: int, z: int, a: int) -> int:
        """Coefficient of ``v^-a`` in ``h_{x,y}^{z^-1}``."""
        c = self.struct(x, y).get(self.U.inverse[z])
        if not c:
            return 0
        k = -a - c[0]
        return c[1][k] if 0 <= k < len(c[1]) else 0

    # theta elements
    def translation(self, lam) -> int:
        return self.U.id_of((tuple(lam), 0))

    def theta(self, lam, extra: int = 0) -> HeckeElt:
        """``theta_lam = H_{t_j} H_{t_k}^{-1}`` with ``lam = j - k`` both dominant."""
        if self.U.mode != "affine":
            raise ValueError("theta elements need affine mode")
        m = max(0, -min(lam)) + extra
        k = tuple([m] * len(lam))
        j = tuple(a + m for a in lam)
        neg_k = tuple(-a for a in k)
        return self.mul(self.H(self.translation(j)), self.bar(self.H(self.translation(neg_k))))

    # parabolic pieces
    def x_J(self, J: Iterable[int]) -> HeckeElt:
        """``sum_{w in W_J} v^{l(w_J) - l(w)} H_w``, equal to ``C_{w_J}``."""
        P = self.U.parabolic(J)
        top = P.longest_length
        return HeckeElt._wrap({w: (top - self.U.length[w], (1,)) for w in P.elements})

    def show(self, a: HeckeElt, basis: str = "H") -> str:
        U = self.U
        if not a.terms:
            return "0"
        parts = []
        for x in sorted(a.terms, key=lambda x: (-U.length[x], -x)):
            c = LaurentPoly._raw(a.terms[x])
            cs = str(c)
            label = f"{basis}[{U.word_str(x)}]"
            if cs == "1":
                parts.append(label)
            elif len(c.coeffs) == 1 or cs.count(" ") == 0:
                parts.append(f"{cs} {label}")
            else:
                parts.append(f"({cs}) {label}")
        return " + ".join(parts)


def _symmetric_part(c: tuple) -> tuple:
    """The bar-invariant polynomial agreeing with ``c`` in exponents ``<= 0``."""
    low, co = c
    terms: dict[int, int] = {}
    for k, x in enumerate(co):
        e = low + k
        if e > 0 or not x:
            continue
        terms[e] = terms.get(e, 0) + x
        if e < 0:
            terms[-e] = terms.get(-e, 0) + x
    if not terms:
        return ZERO
    p = LaurentPoly(terms)
    return (p.low, p.coeffs)


class ParabolicModule:
    """The right ideal ``x_J H`` with basis ``m_s = x_J H_s`` (s in D_J).

    Coordinates of an element are read off at the minimal representatives:
    the coefficient of ``H_s`` in ``m_s`` is ``v^{l(w_J)}``.
    """

    def __init__(self, H: HeckeAlgebra, J: Iterable[int]):
        self.H = H
        self.U = H.U
        self.J = frozenset(J)
        P = self.U.parabolic(self.J)
        self.parabolic = P
        self.top = P.longest_length
        self.x = H.x_J(self.J)
        self._canon: dict[int, HeckeElt] = {}

    def is_rep(self, s: int) -> bool:
        return self.U.is_min_left(s, self.J)

    def m(self, s: int) -> HeckeElt:
        if not self.is_rep(s):
            raise ValueError(f"{self.U.word_str(s)} is not a minimal coset representative")
        U = self.U
        out = {}
        for u in self.parabolic.elements:
            us = U.id_of(U.raw_mul(U.raw(u), U.raw(s)))
            out[us] = (self.top - U.length[u], (1,))
        return HeckeElt._wrap(out)

    def coords(self, a: HeckeElt) -> dict[int, LaurentPoly]:
        out = {}
        for s, p in a.terms.items():
            if self.is_rep(s):
                out[s] = LaurentPoly._raw((p[0] - self.top, p[1]))
        return dict(sorted(out.items()))

    def from_coords(self, coords: Mapping[int, object]) -> HeckeElt:
        out: dict[int, tuple] = {}
        for s, c in coords.items():
            _addto(out, self.m(s).terms, _pair(c))
        return HeckeElt._wrap(out)

    def contains(self, a: HeckeElt) -> bool:
        return self.from_coords(self.coords(a)) == a

    def canon(self, w: int) -> HeckeElt:
        """Bar-invariant element of ``x_J H`` equal to ``m_w`` plus ``vZ[v]``
        combinations of lower ``m_y``."""
        r = self._canon.get(w)
        if r is not None:
            return r
        U = self.U
        if not self.is_rep(w):
            raise ValueError(f"{U.word_str(w)} is not a minimal coset representative")
        if U.length[w] == 0:
            r = self.m(w)
        else:
            s = U.right_descents(w)[0]
            ws = U.rmul[s][w]
            prev = self.canon(ws)
            terms = self.H._rgen(prev.terms, s)
            _addto(terms, prev.terms, V)
            for ln in range(U.length[w] - 1, -1, -1):
                for y in [y for y in U.by_length[ln] if y in terms and self.is_rep(y)]:
                    c = terms.get(y)
                    if not c:
                        continue
                    b = _symmetric_part((c[0] - self.top, c[1]))
                    if b[1]:
                        _addto(terms, self.canon(y).terms, (b[0], tuple(-x for x in b[1])))
            r = HeckeElt._wrap(terms)
            for y, c in self.coords(r).items():
                if y != w and c and c.low < 1:
                    raise AssertionError("parabolic KL element is not triangular")
        self._canon[w] = r
        return r
