"""Asymptotic rings: J on the Schur side, J~ on the Hecke side, the map Phi,
and the tensor space used for the double centralizer comparison."""

from __future__ import annotations

from dataclasses import dataclass

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .cells import CellPartition, HeckeData, SchurData
from .laurent import LaurentPoly
from .schur import SchurAlgebra

__all__ = ["Uncertified", "JRing", "schur_jring", "hecke_jring", "Phi", "TensorSpace", "commutant_dim", "span_dim"]

Vec = dict[int, int]


class Uncertified(RuntimeError):
    """Some structure constant needed for the ring is not certified within the bound."""


@dataclass
class JRing:
    """A based ring given by its full multiplication table on ``basis``."""

    basis: list[int]
    table: dict[tuple[int, int], Vec]
    unit: Vec
    cell_of: dict[int, int]

    def mul(self, a: Vec, b: Vec) -> Vec:
        out: dict[int, int] = {}
        for x, p in a.items():
            for y, q in b.items():
                for z, c in self.table.get((x, y), {}).items():
                    out[z] = out.get(z, 0) + p * q * c
        return {z: c for z, c in out.items() if c}

    def t(self, x: int) -> Vec:
        return {x: 1}

    def tt(self, x: int, y: int) -> Vec:
        return dict(self.table.get((x, y), {}))

    @property
    def dim(self) -> int:
        return len(self.basis)


def schur_jring(S: SchurAlgebra, sd: SchurData, lr: CellPartition) -> JRing:
    """``t_A t_B = sum over C in the cell of A, B of gamma_{A,B}^{C^t} t_C``, on certified cells."""
    cells = [c for c, ok in zip(lr.cells, lr.certified) if ok and all(sd.cert[C] for C in c)]
    basis = sorted(C for c in cells for C in c)
    cell_of = {C: lr.cell_of[C] for C in basis}
    table: dict[tuple[int, int], Vec] = {}
    for cell in cells:
        members = set(cell)
        for A in cell:
            for B in cell:
                if S.xi[A].nu != S.xi[B].gamma:
                    continue
                if not sd.in_range(A, B):
                    raise Uncertified(f"product {S.xi_str(A)} * {S.xi_str(B)} is beyond the length bound")
                row = {}
                for C in S.gstruct(A, B):
                    if C in members:
                        g = sd.lead(A, B, C)
                        if g is None:
                            raise Uncertified(f"gamma for {S.xi_str(C)} is uncertified")
                        if g:
                            row[C] = g
                if row:
                    table[(A, B)] = row
    unit = {D: 1 for D in sd.distinguished if D in cell_of}
    return JRing(basis, table, unit, cell_of)


def hecke_jring(hd: HeckeData, lr: CellPartition) -> JRing:
    H = hd.H
    cells = [c for c, ok in zip(lr.cells, lr.certified) if ok and all(hd.a_cert[z] for z in c)]
    basis = sorted(z for c in cells for z in c)
    cell_of = {z: lr.cell_of[z] for z in basis}
    table: dict[tuple[int, int], Vec] = {}
    for cell in cells:
        members = set(cell)
        for x in cell:
            for y in cell:
                row = {}
                for z in H.struct(x, y):
                    if z in members:
                        g = hd.lead(x, y, z)
                        if g is None:
                            raise Uncertified(f"gamma for {H.U.word_str(z)} is uncertified")
                        if g:
                            row[z] = g
                if row:
                    table[(x, y)] = row
    unit = {d: 1 for d in hd.distinguished if d in cell_of}
    return JRing(basis, table, unit, cell_of)


class Phi:
    """``{C} -> sum over D in the distinguished set and B in the cell of D of g_{C,D}^B t_B``."""

    def __init__(self, S: SchurAlgebra, sd: SchurData, J: JRing):
        self.S, self.sd, self.J = S, sd, J
        self._memo: dict[int, dict[int, LaurentPoly]] = {}
        self.boundary_hits: list[int] = []

    def canon(self, C: int) -> dict[int, LaurentPoly]:
        r = self._memo.get(C)
        if r is None:
            S, J = self.S, self.J
            r = {}
            for D in J.unit:
                if S.xi[C].nu != S.xi[D].gamma:
                    continue
                if not self.sd.in_range(C, D):
                    self.boundary_hits.append(C)
                    continue
                for B, g in S.gstruct(C, D).items():
                    if B in J.cell_of and J.cell_of[B] == J.cell_of[D]:
                        r[B] = r.get(B, LaurentPoly.zero()) + LaurentPoly._raw(g)
            r = {B: p for B, p in r.items() if p}
            self._memo[C] = r
        return r

    def __call__(self, coords: dict[int, LaurentPoly]) -> dict[int, LaurentPoly]:
        """Image of the element with the given canonical coordinates."""
        out: dict[int, LaurentPoly] = {}
        for C, p in coords.items():
            for B, q in self.canon(C).items():
                out[B] = out.get(B, LaurentPoly.zero()) + p * q
        return {B: p for B, p in out.items() if p}

    def mul(self, a: dict[int, LaurentPoly], b: dict[int, LaurentPoly]) -> dict[int, LaurentPoly]:
        """Product in ``A (x) J``."""
        out: dict[int, LaurentPoly] = {}
        for x, p in a.items():
            for y, q in b.items():
                for z, c in self.J.table.get((x, y), {}).items():
                    out[z] = out.get(z, LaurentPoly.zero()) + p * q * c
        return {z: p for z, p in out.items() if p}


class TensorSpace:
    """``T = sum over orbits g of J~_{g, omega}`` for a regular orbit ``omega``.

    Basis vectors are the positions ``C = (g, x, omega)`` of the Schur index
    set; ``C`` stands for ``t_{w_C^+}`` in the ``g`` summand.
    """

    def __init__(self, S: SchurAlgebra, JS: JRing, JH: JRing, omega: int):
        self.S, self.JS, self.JH, self.omega = S, JS, JH, omega
        self.basis = [C for C in range(S.size) if S.xi[C].nu == omega]
        self.index = {C: i for i, C in enumerate(self.basis)}

    def right(self, C: int, x: int) -> Vec:
        """``t_{w_C^+} t_x`` read back in the summand of ``C``; raises if it leaves it."""
        S = self.S
        g = S.xi[C].gamma
        out = {}
        for z, c in self.JH.tt(S.xi[C].plus, x).items():
            k = S.plus_pos.get((g, self.omega, z))
            if k is None:
                raise ValueError(f"right action leaves the summand of {S.orbits[g].name}")
            out[k] = c
        return out

    def left_schur(self, A: int, C: int) -> Vec:
        return self.JS.tt(A, C)

    def left_hecke(self, A: int, C: int) -> Vec:
        """``t_{w_A^+} t_{w_C^+}`` placed in the summand of ``ro(A)``."""
        S = self.S
        if S.xi[A].nu != S.xi[C].gamma:
            return {}
        out = {}
        for z, c in self.JH.tt(S.xi[A].plus, S.xi[C].plus).items():
            k = S.plus_pos.get((S.xi[A].gamma, self.omega, z))
            if k is None:
                raise ValueError("left action leaves the tensor space")
            out[k] = c
        return out

    def matrix(self, act) -> list[list[int]]:
        """Matrix (rows = output coordinates) of a linear map given on basis vectors."""
        n = len(self.basis)
        M = [[0] * n for _ in range(n)]
        for j, C in enumerate(self.basis):
            for k, c in act(C).items():
                M[self.index[k]][j] += c
        return M


def commutant_dim(mats: list[list[list[int]]], n: int) -> int:
    """Dimension over Q of the matrices commuting with every matrix in ``mats``."""
    if n == 0:
        return 0
    rows = []
    for M in mats:
        # (X M - M X)_{ij} = sum_k X_ik M_kj - M_ik X_kj ; unknown X_ab at column a*n + b
        for i in range(n):
            for j in range(n):
                row = [0] * (n * n)
                for k in range(n):
                    row[i * n + k] += M[k][j]
                    row[k * n + j] -= M[i][k]
                if any(row):
                    rows.append(row)
    if not rows:
        return n * n
    return n * n - _rank(rows)


def span_dim(mats: list[list[list[int]]]) -> int:
    """Rank of a family of matrices viewed as vectors."""
    if not mats:
        return 0
    return _rank([[x for row in M for x in row] for M in mats])


def _rank(rows: list[list[int]]) -> int:
    return DomainMatrix([[QQ(x) for x in r] for r in rows], (len(rows), len(rows[0])), QQ).rank()
