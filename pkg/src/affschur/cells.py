"""Cell preorders, a-functions, gamma coefficients and distinguished elements.

Preorders are built from one-step edges ``y -> z`` meaning the canonical
element of ``z`` occurs in a generator times the canonical element of ``y``
(or ``y`` times a generator), so ``z`` precedes ``y``.  Under a length bound
the edges out of long elements are unknown, and those elements (or ones past
the bound) may have edges into anything a generator length below them.  Call
all of these unsafe.  A cell is certified when its up-set (everything it is
reachable from) avoids the unsafe set: every path between two members of the
cell stays inside the up-set, so the cell and all relations ending in it are
exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .hecke import HeckeAlgebra
from .schur import SchurAlgebra
from .forms import inner_schur

__all__ = [
    "CellPartition",
    "strong_components",
    "hecke_cells",
    "schur_cells",
    "HeckeData",
    "SchurData",
]


def strong_components(nodes: list[int], succ: dict[int, set[int]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative; components sorted internally and by first element."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(sorted(succ.get(root, ()))))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(sorted(succ.get(nxt, ())))))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    x = stack.pop()
                    on_stack.discard(x)
                    comp.append(x)
                    if x == node:
                        break
                comps.append(sorted(comp))
    return sorted(comps)


def _closure(x: int, edges: dict[int, set[int]]) -> set[int]:
    seen = {x}
    todo = [x]
    while todo:
        y = todo.pop()
        for z in edges.get(y, ()):
            if z not in seen:
                seen.add(z)
                todo.append(z)
    return seen


@dataclass
class CellPartition:
    kind: str
    carrier: str
    nodes: list[int]
    succ: dict[int, set[int]]
    boundary: set[int]
    unsafe: set[int]
    cells: list[list[int]] = field(default_factory=list)
    cell_of: dict[int, int] = field(default_factory=dict)
    certified: list[bool] = field(default_factory=list)
    reach: dict[int, set[int]] = field(default_factory=dict)
    upset: dict[int, set[int]] = field(default_factory=dict)

    def __post_init__(self):
        pred: dict[int, set[int]] = {x: set() for x in self.nodes}
        for y, zs in self.succ.items():
            for z in zs:
                pred.setdefault(z, set()).add(y)
        self.reach = {x: _closure(x, self.succ) for x in self.nodes}
        self.upset = {x: _closure(x, pred) for x in self.nodes}
        self.cells = strong_components(self.nodes, self.succ)
        self.cell_of = {x: i for i, c in enumerate(self.cells) for x in c}
        self.certified = [not (self.upset[c[0]] & self.unsafe) for c in self.cells]

    def below(self, x: int, y: int) -> bool:
        """``x`` precedes ``y``: ``x`` occurs in products with ``y``."""
        return x in self.reach[y]

    def same(self, x: int, y: int) -> bool:
        return self.cell_of[x] == self.cell_of[y]

    def is_certified(self, x: int) -> bool:
        return self.certified[self.cell_of[x]]

    def certified_cells(self) -> list[list[int]]:
        return [c for c, ok in zip(self.cells, self.certified) if ok]

    def to_json(self, name: Callable[[int], str]) -> dict:
        return {
            "kind": self.kind,
            "carrier": self.carrier,
            "cells": [
                {"members": [name(x) for x in c], "certified": ok} for c, ok in zip(self.cells, self.certified)
            ],
        }


def _hecke_edges(H: HeckeAlgebra, y: int, side: str) -> set[int]:
    U = H.U
    out: set[int] = set()
    Cy = H.kl(y)
    for s in U.generators:
        Cs = H.kl(U.rmul[s][U.identity])
        prod = H.mul(Cs, Cy) if side == "L" else H.mul(Cy, Cs)
        out.update(H.to_canonical(prod))
    for k in range(len(U.omega_ids)):
        out.add(U.lomega[k][y] if side == "L" else U.romega[k][y])
    return out


def hecke_cells(H: HeckeAlgebra, kind: str) -> CellPartition:
    U = H.U
    nodes = list(range(U.size))
    boundary = set() if U.complete else {x for x in nodes if U.length[x] + 1 > U.bound}
    unsafe = set() if U.complete else {x for x in nodes if U.length[x] + 2 > U.bound}
    succ: dict[int, set[int]] = {}
    for y in nodes:
        if y in boundary:
            continue
        e: set[int] = set()
        if kind in ("L", "LR"):
            e |= _hecke_edges(H, y, "L")
        if kind in ("R", "LR"):
            e |= _hecke_edges(H, y, "R")
        succ[y] = e
    return CellPartition(kind, "hecke", nodes, succ, boundary, unsafe)


def schur_generators(S: SchurAlgebra, small: bool | None = None) -> list[int]:
    """Canonical elements used as one-step multipliers: all of them in finite
    mode, otherwise those whose minimal representative has length at most 1."""
    if small is None:
        small = not S.U.complete
    if not small:
        return list(range(S.size))
    return [c.pos for c in S.xi if S.U.length[c.g] <= 1]


def schur_cells(S: SchurAlgebra, kind: str, small: bool | None = None) -> CellPartition:
    U = S.U
    gens = schur_generators(S, small)
    nodes = list(range(S.size))
    # C_x C_y only involves C_z with l(y) - l(x) <= l(z) <= l(y) + l(x)
    top = max(U.length[S.xi[A].plus] for A in gens)
    boundary: set[int] = set()
    unsafe: set[int] = set()
    if not U.complete:
        boundary = {C for C in nodes if U.length[S.xi[C].plus] + top > U.bound}
        unsafe = {C for C in nodes if U.length[S.xi[C].plus] + 2 * top > U.bound}
    succ: dict[int, set[int]] = {}
    for C in nodes:
        if C in boundary:
            continue
        c = S.xi[C]
        e: set[int] = set()
        for A in gens:
            a = S.xi[A]
            if kind in ("L", "LR") and a.nu == c.gamma:
                e.update(S.gstruct(A, C))
            if kind in ("R", "LR") and c.nu == a.gamma:
                e.update(S.gstruct(C, A))
        succ[C] = e
    return CellPartition(kind, "schur", nodes, succ, boundary, unsafe)


class HeckeData:
    """a-values, Delta data and gamma coefficients on the Hecke side."""

    def __init__(self, H: HeckeAlgebra):
        self.H = H
        U = H.U
        self.scan = H.a_scan()
        self.a: dict[int, int] = {}
        self.a_cert: dict[int, bool] = {}
        for z in range(U.size):
            self.a[z], self.a_cert[z] = H.a_bounded(z, self.scan)
        self.delta = {z: H.delta(z) for z in range(U.size)}
        self.distinguished = sorted(
            z for z in range(U.size) if self.a_cert[z] and self.delta[z] is not None and self.delta[z][0] == self.a[z]
        )

    def is_distinguished(self, z: int) -> bool | None:
        if not self.a_cert[z]:
            return None
        d = self.delta[z]
        return d is not None and d[0] == self.a[z]

    def gamma(self, x: int, y: int, z: int) -> int | None:
        """``gamma_{x,y}^{z}``, read from ``h_{x,y}^{z^-1}``; None if uncertified."""
        return self.lead(x, y, self.H.U.inverse[z])

    def lead(self, x: int, y: int, z: int) -> int | None:
        """Coefficient of ``v^-a(z)`` in ``h_{x,y}^z``: the coefficient of ``t_z`` in ``t_x t_y``."""
        if not self.a_cert[z]:
            return None
        U = self.H.U
        if not U.complete and U.length[x] + U.length[y] > U.bound:
            return None
        c = self.H.struct(x, y).get(z)
        if not c:
            return 0
        k = -self.a[z] - c[0]
        return c[1][k] if 0 <= k < len(c[1]) else 0


class SchurData:
    """frak-a values (two routes), gamma coefficients, Delta and distinguished set."""

    def __init__(self, S: SchurAlgebra, hd: HeckeData):
        self.S = S
        self.hd = hd
        U = S.U
        self.pairs = self._pairs()
        scan: dict[int, int | None] = {C: None for C in range(S.size)}
        for A, B in self.pairs:
            mu = S.xi[A].nu
            for C, c in S.gstruct(A, B).items():
                n = max(0, -c[0]) + S.wlen[mu] - S.wlen[S.xi[C].nu]
                if scan[C] is None or n > scan[C]:
                    scan[C] = n
        self.scan = scan
        self.via_hecke = {C: hd.a[S.xi[C].plus] - S.wlen[S.xi[C].nu] for C in range(S.size)}
        self.a: dict[int, int] = {}
        self.cert: dict[int, bool] = {}
        self.conflicts: list[int] = []
        for C in range(S.size):
            hc = hd.a_cert[S.xi[C].plus]
            sv = scan[C]
            if U.complete:
                self.a[C] = sv if sv is not None else 0
                self.cert[C] = sv is not None
                if sv is not None and hc and sv != self.via_hecke[C]:
                    self.conflicts.append(C)
            else:
                self.a[C] = self.via_hecke[C]
                self.cert[C] = hc and sv == self.via_hecke[C]
                if hc and sv is not None and sv > self.via_hecke[C]:
                    self.conflicts.append(C)
        self.delta: dict[int, tuple[int, int] | None] = {}
        self.delta_hecke: dict[int, tuple[int, int] | None] = {}
        for C in range(S.size):
            c = S.xi[C]
            if not c.diagonal:
                continue
            self.delta[C] = self._delta_inner(C)
            d = hd.delta[c.plus]
            self.delta_hecke[C] = None if d is None else (d[0] - S.wlen[c.nu], d[1])
        self.distinguished = sorted(
            C for C in self.delta if self.cert[C] and self.delta[C] is not None and self.delta[C][0] == self.a[C]
        )
        self.distinguished_via_hecke = sorted(
            C for C in self.delta if hd.is_distinguished(S.xi[C].plus) and self.cert[C]
        )

    def _pairs(self) -> list[tuple[int, int]]:
        S, U = self.S, self.S.U
        out = []
        for A in range(S.size):
            for B in range(S.size):
                if S.xi[A].nu != S.xi[B].gamma:
                    continue
                if U.complete or U.length[S.xi[A].plus] + U.length[S.xi[B].plus] <= U.bound:
                    out.append((A, B))
        return out

    def in_range(self, A: int, B: int) -> bool:
        S, U = self.S, self.S.U
        return U.complete or U.length[S.xi[A].plus] + U.length[S.xi[B].plus] <= U.bound

    def _delta_inner(self, C: int) -> tuple[int, int] | None:
        S = self.S
        nu = S.xi[C].nu
        val = inner_schur(S, S.canon_std(C), S.basis(S.diag_identity(nu)))
        if not val:
            return None
        return val.low, val.coeffs[0]

    def gamma(self, A: int, B: int, X: int) -> int | None:
        """``gamma_{A,B}^{X}`` from ``g_{A,B}^{X^t}``; None when uncertified or out of range."""
        return self.lead(A, B, self.S.transpose[X])

    def lead(self, A: int, B: int, C: int) -> int | None:
        """Coefficient of ``v^{-a(C) - l(w_nu) + l(w_mu)}`` in ``g_{A,B}^C``, i.e. of ``t_C`` in ``t_A t_B``."""
        S = self.S
        a, b, c = S.xi[A], S.xi[B], S.xi[C]
        if a.nu != b.gamma or c.gamma != a.gamma or c.nu != b.nu:
            return 0
        if not self.cert[C] or not self.in_range(A, B):
            return None
        g = S.gstruct(A, B).get(C)
        if not g:
            return 0
        k = -self.a[C] - S.wlen[b.nu] + S.wlen[a.nu] - g[0]
        return g[1][k] if 0 <= k < len(g[1]) else 0

    def abar(self, C: int, cell: list[int]) -> int:
        """Smallest n with ``v^n {C} {C'}`` in the Z[v]-span of the cell, modulo other cells."""
        S = self.S
        members = set(cell)
        best = 0
        for C2 in cell:
            if S.xi[C].nu != S.xi[C2].gamma:
                continue
            for E, c in S.gstruct(C, C2).items():
                if E in members:
                    best = max(best, -c[0])
        return best
