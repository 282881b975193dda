"""The q-Schur algebra as endomorphisms of ``sum_g x_g H``.

A block homomorphism ``x_nu H -> x_gamma H`` is stored through its value on
``x_nu``; elements of the algebra are kept in standard-basis coordinates
indexed by positions in the enumerated index set ``Xi`` of triples
``(gamma, g, nu)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .hecke import HeckeAlgebra, HeckeElt, ParabolicModule, _addto, _pair
from .laurent import DivisionError, LaurentPoly
from .weyl import BoundError, OrbitTable

__all__ = ["Xi", "SchurElt", "SchurAlgebra", "pi_J"]

ONE = (0, (1,))


def pi_J(U, J: Iterable[int]) -> LaurentPoly:
    """``v^{l(w_J)} * sum_{w in W_J} v^{-2 l(w)}``."""
    P = U.parabolic(J)
    terms: dict[int, int] = {}
    for w in P.elements:
        e = P.longest_length - 2 * U.length[w]
        terms[e] = terms.get(e, 0) + 1
    return LaurentPoly(terms)


@dataclass(frozen=True)
class Xi:
    pos: int
    gamma: int
    g: int
    nu: int
    plus: int

    @property
    def diagonal(self) -> bool:
        return self.gamma == self.nu


class SchurElt:
    """Standard-basis coordinates: Xi position -> Laurent polynomial (raw pair)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        self.terms: dict[int, tuple] = {}
        for k, p in (terms or {}).items():
            pp = _pair(p)
            if pp[1]:
                _addto(self.terms, {k: pp})

    @classmethod
    def _wrap(cls, terms: dict) -> "SchurElt":
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    def coeff(self, pos: int) -> LaurentPoly:
        p = self.terms.get(pos)
        return LaurentPoly._raw(p) if p else LaurentPoly.zero()

    def items(self):
        for k in sorted(self.terms):
            yield k, LaurentPoly._raw(self.terms[k])

    def __add__(self, other: "SchurElt") -> "SchurElt":
        out = dict(self.terms)
        _addto(out, other.terms)
        return SchurElt._wrap(out)

    def __sub__(self, other: "SchurElt") -> "SchurElt":
        out = dict(self.terms)
        _addto(out, other.terms, (0, (-1,)))
        return SchurElt._wrap(out)

    def scale(self, c) -> "SchurElt":
        out: dict = {}
        _addto(out, self.terms, _pair(c))
        return SchurElt._wrap(out)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SchurElt):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self) -> str:
        return f"SchurElt({ {k: str(v) for k, v in self.items()} })"


class SchurAlgebra:
    """Bases, products and involutions of the Schur algebra on an orbit table."""

    def __init__(self, H: HeckeAlgebra, table: OrbitTable):
        self.H = H
        self.U = U = H.U
        self.table = table
        self.orbits = table.orbits
        self.J = [o.J for o in self.orbits]
        self.modules = [ParabolicModule(H, J) for J in self.J]
        self.wlen = [m.top for m in self.modules]
        self.pi = [pi_J(U, J) for J in self.J]
        entries = []
        self._coset_of: dict[tuple[int, int], dict[int, int]] = {}
        cosets: dict[tuple[int, int, int], list[int]] = {}
        for gi, Jg in enumerate(self.J):
            for ni, Jn in enumerate(self.J):
                for g in U.double_reps(Jg, Jn):
                    try:
                        coset = U.double_coset(g, Jg, Jn)
                    except BoundError:
                        continue
                    plus = max(coset, key=lambda z: (U.length[z], z))
                    entries.append((gi, ni, U.length[g], U.omega_of[g], U.word[g], g, plus))
                    cosets[(gi, g, ni)] = coset
        entries.sort(key=lambda e: e[:5])
        self.xi: list[Xi] = []
        self.pos: dict[tuple[int, int, int], int] = {}
        self.plus_pos: dict[tuple[int, int, int], int] = {}
        for k, (gi, ni, _l, _o, _w, g, plus) in enumerate(entries):
            self.xi.append(Xi(k, gi, g, ni, plus))
            self.pos[(gi, g, ni)] = k
            self.plus_pos[(gi, ni, plus)] = k
            block = self._coset_of.setdefault((gi, ni), {})
            for z in cosets[(gi, g, ni)]:
                block[z] = k
        self.size = len(self.xi)
        self.cosets = [cosets[(c.gamma, c.g, c.nu)] for c in self.xi]
        self.transpose = [self.pos[(c.nu, U.inverse[c.g], c.gamma)] for c in self.xi]
        self._canon_std: dict[int, SchurElt] = {}
        self._gstruct: dict[tuple[int, int], dict[int, tuple]] = {}
        self._gstruct_h: dict[tuple[int, int], dict[int, tuple]] = {}

    # naming
    def xi_str(self, pos: int) -> str:
        c = self.xi[pos]
        return f"{self.orbits[c.gamma].name}:{self.U.word_str(c.g)}:{self.orbits[c.nu].name}"

    def parse_xi(self, text: str) -> int:
        parts = text.strip().split(":")
        if len(parts) != 3 or not parts[0].startswith("g") or not parts[2].startswith("g"):
            raise ValueError(f"malformed index {text!r}; expected g<k>:<word>:g<m>")
        try:
            gi, ni = int(parts[0][1:]), int(parts[2][1:])
        except ValueError:
            raise ValueError(f"malformed index {text!r}") from None
        if not (0 <= gi < len(self.orbits) and 0 <= ni < len(self.orbits)):
            raise ValueError(f"orbit out of range in {text!r}")
        g = self.U.parse(parts[1])
        k = self.pos.get((gi, g, ni))
        if k is None:
            if not (self.U.is_min_left(g, self.J[gi]) and self.U.is_min_right(g, self.J[ni])):
                raise ValueError(f"{parts[1]} is not a minimal double coset representative")
            raise BoundError(f"{text} has a double coset beyond the length bound {self.U.bound}", self.U.bound + 1)
        return k

    def xi_json(self, pos: int) -> dict:
        c = self.xi[pos]
        return {"xi": self.xi_str(pos), "g": self.U.as_json(c.g), "plus": self.U.as_json(c.plus)}

    def d(self, pos: int) -> int:
        c = self.xi[pos]
        return self.U.length[c.plus] - self.wlen[c.nu]

    def diag_identity(self, nu: int) -> int:
        return self.pos[(nu, self.U.identity, nu)]

    def basis(self, pos: int, c=1) -> SchurElt:
        return SchurElt({pos: c})

    def identity(self) -> SchurElt:
        return SchurElt({self.diag_identity(n): 1 for n in range(len(self.orbits))})

    # realization
    def std_image(self, pos: int) -> HeckeElt:
        """``[C](x_nu) = sum over the double coset of v^{l(g+) - l(w)} H_w``."""
        c = self.xi[pos]
        top = self.U.length[c.plus]
        return HeckeElt._wrap({w: (top - self.U.length[w], (1,)) for w in self.cosets[pos]})

    def canon_image(self, pos: int) -> HeckeElt:
        return self.H.kl(self.xi[pos].plus)

    def images(self, a: SchurElt) -> dict[tuple[int, int], HeckeElt]:
        out: dict[tuple[int, int], dict] = {}
        for pos, p in a.terms.items():
            c = self.xi[pos]
            _addto(out.setdefault((c.gamma, c.nu), {}), self.std_image(pos).terms, p)
        return {k: HeckeElt._wrap(v) for k, v in out.items() if v}

    def from_images(self, images: Mapping[tuple[int, int], HeckeElt], check: bool = True) -> SchurElt:
        """Read standard coordinates from block values (each a sum of double coset sums)."""
        out: dict[int, tuple] = {}
        U = self.U
        for (gi, ni), E in images.items():
            block = self._coset_of.get((gi, ni), {})
            seen = set()
            for z in E.terms:
                k = block.get(z)
                if k is None:
                    raise BoundError(
                        f"value lies in a double coset beyond the length bound {U.bound}", U.length[z]
                    )
                seen.add(k)
            for k in seen:
                c = self.xi[k]
                p = E.terms.get(c.g)
                if p is None:
                    raise AssertionError("block value is not constant along a double coset")
                shift = U.length[c.plus] - U.length[c.g]
                coef = (p[0] - shift, p[1])
                if check:
                    for w in self.cosets[k]:
                        q = E.terms.get(w)
                        want = (coef[0] + U.length[c.plus] - U.length[w], coef[1])
                        if q != want:
                            raise AssertionError("block value is not a combination of double coset sums")
                out[k] = coef
        return SchurElt._wrap(out)

    # canonical basis
    def canon_std(self, pos: int) -> SchurElt:
        r = self._canon_std.get(pos)
        if r is None:
            c = self.xi[pos]
            r = self.from_images({(c.gamma, c.nu): self.canon_image(pos)})
            self._canon_std[pos] = r
        return r

    def canon_from_p(self, pos: int) -> SchurElt:
        """Standard expansion of the canonical element built from KL polynomials."""
        c = self.xi[pos]
        out = {}
        for k in self.block_positions(c.gamma, c.nu):
            p = self.H.p(self.xi[k].plus, c.plus)
            if p:
                out[k] = p
        return SchurElt(out)

    def block_positions(self, gi: int, ni: int) -> list[int]:
        return [c.pos for c in self.xi if c.gamma == gi and c.nu == ni]

    def to_canon(self, a: SchurElt) -> dict[int, LaurentPoly]:
        rest = dict(a.terms)
        out: dict[int, LaurentPoly] = {}
        U = self.U
        while rest:
            k = max(rest, key=lambda j: (U.length[self.xi[j].plus], j))
            p = rest[k]
            out[k] = LaurentPoly._raw(p)
            _addto(rest, self.canon_std(k).terms, (p[0], tuple(-x for x in p[1])))
        return dict(sorted(out.items()))

    def from_canon(self, coords: Mapping[int, object]) -> SchurElt:
        out: dict[int, tuple] = {}
        for k, c in coords.items():
            _addto(out, self.canon_std(k).terms, _pair(c))
        return SchurElt._wrap(out)

    def phi_coords(self, a: SchurElt) -> dict[int, LaurentPoly]:
        """Coordinates in the basis ``phi_C = v^{-d_C} [C]``."""
        return {k: c.shift(self.d(k)) for k, c in a.items()}

    def from_phi(self, coords: Mapping[int, object]) -> SchurElt:
        return SchurElt({k: LaurentPoly._raw(_pair(c)).shift(-self.d(k)) for k, c in coords.items()})

    # multiplication
    def _compose(self, EA: HeckeElt, EB: HeckeElt, mu: int) -> HeckeElt:
        h = {s: (c.low, c.coeffs) for s, c in self.modules[mu].coords(EB).items()}
        return self.H.mul(EA, HeckeElt._wrap(h))

    def mul_module(self, a: SchurElt, b: SchurElt) -> SchurElt:
        ia, ib = self.images(a), self.images(b)
        out: dict[tuple[int, int], dict] = {}
        for (g1, m1), EA in ia.items():
            for (m2, n2), EB in ib.items():
                if m1 != m2:
                    continue
                _addto(out.setdefault((g1, n2), {}), self._compose(EA, EB, m1).terms)
        return self.from_images({k: HeckeElt._wrap(v) for k, v in out.items() if v})

    def gstruct_hecke(self, A: int, B: int) -> dict[int, tuple]:
        """Canonical structure constants from KL structure constants of the longest elements."""
        key = (A, B)
        r = self._gstruct_h.get(key)
        if r is not None:
            return r
        a, b = self.xi[A], self.xi[B]
        r = {}
        if a.nu == b.gamma:
            pi = self.pi[a.nu]
            for z, c in self.H.struct(a.plus, b.plus).items():
                k = self.plus_pos.get((a.gamma, b.nu, z))
                if k is None:
                    raise AssertionError(
                        f"{self.U.word_str(z)} in a product of canonical elements is not a longest double coset element"
                    )
                try:
                    q = LaurentPoly._raw(c).exact_div(pi)
                except DivisionError:
                    raise AssertionError("structure constant not divisible by the Poincare polynomial") from None
                r[k] = (q.low, q.coeffs)
        self._gstruct_h[key] = r
        return r

    def load_gstruct(self, A: int, B: int, terms: Mapping[int, tuple]) -> None:
        self._gstruct[(A, B)] = dict(terms)

    def gstruct(self, A: int, B: int) -> dict[int, tuple]:
        """Canonical structure constants ``g_{A,B}^C`` via composition."""
        key = (A, B)
        r = self._gstruct.get(key)
        if r is None:
            a, b = self.xi[A], self.xi[B]
            if a.nu != b.gamma:
                r = {}
            else:
                E = self._compose(self.canon_image(A), self.canon_image(B), a.nu)
                prod = self.from_images({(a.gamma, b.nu): E})
                r = {k: (c.low, c.coeffs) for k, c in self.to_canon(prod).items()}
            self._gstruct[key] = r
        return r

    def g(self, A: int, B: int, C: int) -> LaurentPoly:
        c = self.gstruct(A, B).get(C)
        return LaurentPoly._raw(c) if c else LaurentPoly.zero()

    def mul_hecke(self, a: SchurElt, b: SchurElt) -> SchurElt:
        ca, cb = self.to_canon(a), self.to_canon(b)
        out: dict[int, tuple] = {}
        for A, pa in ca.items():
            for B, pb in cb.items():
                if self.xi[A].nu != self.xi[B].gamma:
                    continue
                coef = _pair(pa * pb)
                _addto(out, self.gstruct_hecke(A, B), coef)
        return self.from_canon({k: LaurentPoly._raw(p) for k, p in out.items()})

    def mul(self, a: SchurElt, b: SchurElt, path: str = "module") -> SchurElt:
        if path == "module":
            return self.mul_module(a, b)
        if path == "hecke":
            return self.mul_hecke(a, b)
        if path == "both":
            r1, r2 = self.mul_module(a, b), self.mul_hecke(a, b)
            if r1 != r2:
                raise AssertionError("the two multiplication paths disagree")
            return r1
        raise ValueError(f"unknown path {path!r}")

    # involutions
    def bar(self, a: SchurElt) -> SchurElt:
        return self.from_images({k: self.H.bar(E) for k, E in self.images(a).items()})

    def psi(self, a: SchurElt) -> SchurElt:
        return SchurElt._wrap({self.transpose[k]: p for k, p in a.terms.items()})

    def rho(self, a: SchurElt) -> SchurElt:
        out = {}
        for k, p in a.terms.items():
            c = self.xi[k]
            out[self.transpose[k]] = (p[0] + self.wlen[c.nu] - self.wlen[c.gamma], p[1])
        return SchurElt._wrap(out)

    def is_bar_invariant(self, a: SchurElt) -> bool:
        return self.bar(a) == a

    # tensor module: values are dicts orbit -> element of x_gamma H
    def u(self, gamma: int, sigma: int) -> dict[int, HeckeElt]:
        return {gamma: self.modules[gamma].m(sigma)}

    def tensor_coords(self, t: Mapping[int, HeckeElt]) -> dict[tuple[int, int], LaurentPoly]:
        out = {}
        for gi, E in t.items():
            for s, c in self.modules[gi].coords(E).items():
                out[(gi, s)] = c
        return dict(sorted(out.items()))

    def label(self, gamma: int, sigma: int) -> tuple[int, ...]:
        """The coweight ``i_gamma . sigma`` attached to ``u_{i_gamma sigma}``."""
        n = self.table.level
        return self.U.act(self.orbits[gamma].rep, sigma, n)

    def tensor_labels(self, t: Mapping[int, HeckeElt]) -> dict[tuple[int, ...], LaurentPoly]:
        out: dict[tuple[int, ...], LaurentPoly] = {}
        for (gi, s), c in self.tensor_coords(t).items():
            lab = self.label(gi, s)
            if lab in out:
                raise ValueError(f"two basis vectors share the coweight label {list(lab)}")
            out[lab] = c
        return out

    def act_left(self, a: SchurElt, t: Mapping[int, HeckeElt]) -> dict[int, HeckeElt]:
        out: dict[int, dict] = {}
        for (gi, ni), E in self.images(a).items():
            if ni in t:
                _addto(out.setdefault(gi, {}), self._compose(E, t[ni], ni).terms)
        return {k: HeckeElt._wrap(v) for k, v in out.items() if v}

    def act_right(self, t: Mapping[int, HeckeElt], h: HeckeElt) -> dict[int, HeckeElt]:
        out = {}
        for gi, E in t.items():
            r = self.H.mul(E, h)
            if r:
                out[gi] = r
        return out

    def tensor_canon(self, gamma: int, w: int) -> dict[int, HeckeElt]:
        return {gamma: self.modules[gamma].canon(w)}

    def faithful_orbits(self) -> list[int]:
        """Orbits whose coweight labels are injective on coset representatives."""
        return [o.index for o in self.orbits if o.stabilizer_order == self.U.parabolic(o.J).order]
