"""Property verifier: runs each check over the bounded range and reports
pass / fail / not attempted with a count and the first counterexample."""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable

from .asymptotic import JRing, Phi, TensorSpace, Uncertified, commutant_dim, hecke_jring, schur_jring, span_dim
from .forms import inner_schur, inner_williamson, std_norm
from .kernels import poly_add, poly_mul
from .laurent import LaurentPoly
from .session import Session

ZERO = (0, ())

__all__ = ["Tally", "Verifier", "SUITES", "PROPERTIES"]

PASS, FAIL, SKIP = "pass", "fail", "not attempted"

# pairs of canonical elements compared by the two forms / positivity checks
# stay this far below the length bound in affine mode
FORM_MARGIN = 2


@dataclass
class Tally:
    count: int = 0
    counterexample: object = None
    note: str | None = None
    skipped: bool = False

    def check(self, ok: bool, witness: Callable[[], object]) -> None:
        self.count += 1
        if not ok and self.counterexample is None:
            self.counterexample = witness()

    def fail(self, witness) -> None:
        self.count += 1
        if self.counterexample is None:
            self.counterexample = witness

    def report(self) -> dict:
        if self.counterexample is not None:
            out = {"status": FAIL, "checked_count": self.count, "counterexample": self.counterexample}
        elif self.count == 0 or self.skipped:
            out = {"status": SKIP, "checked_count": self.count}
        else:
            out = {"status": PASS, "checked_count": self.count}
        if self.note:
            out["note"] = self.note
        return out


def _poly(p: LaurentPoly) -> dict:
    return {"poly": p.to_pairs()}


PROPERTIES = ["P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8", "P9", "P10", "P11", "P13", "P14", "P15"]

SUITES: dict[str, list[str]] = {
    "inner": ["forms_agree", "rho_adjoint", "norm_examples"],
    "positivity": ["form_positivity", "structure_positivity", "kl_positivity"],
    "cells": [
        "canonical_basis",
        "mul_paths",
        "a_two_routes",
        "delta_two_routes",
        "n_C_positive",
        "distinguished_two_ways",
        "distinguished_transpose",
        "cell_correspondence_L",
        "cell_correspondence_R",
        "cell_correspondence_LR",
        "two_sided_count",
        "left_within_two_sided",
        "abar_equals_a",
    ],
    "P": PROPERTIES,
    "asymptotic": [
        "j_associative",
        "j_identity",
        "phi_homomorphism",
        "phi_identity",
        "cell_characterization",
        "e_idempotent",
        "tensor_module",
        "double_centralizer",
    ],
}
SUITES["all"] = [name for suite in ("inner", "positivity", "cells", "P", "asymptotic") for name in SUITES[suite]]


class Verifier:
    def __init__(self, session: Session):
        self.s = session
        self.S = session.S
        self.U = session.U
        self._inner: dict[tuple[int, int], LaurentPoly] = {}
        self._norms: list[LaurentPoly] | None = None
        self._j: tuple | None = None
        self._gamma: dict[tuple[int, int, int], int | None] = {}

    # naming helpers
    def x(self, C: int) -> str:
        return self.S.xi_str(C)

    def w(self, z: int) -> str:
        return self.U.word_str(z)

    @property
    def sd(self):
        return self.s.schur_data

    @property
    def hd(self):
        return self.s.hecke_data

    def cells(self, carrier: str, kind: str):
        return self.s.cells(carrier, kind)

    # shared pieces
    def norms(self) -> list[LaurentPoly]:
        if self._norms is None:
            self._norms = [std_norm(self.S, k) for k in range(self.S.size)]
        return self._norms

    def inner(self, C: int, C2: int) -> LaurentPoly:
        key = (C, C2)
        r = self._inner.get(key)
        if r is None:
            a, b = self.S.canon_std(C), self.S.canon_std(C2)
            norms = self.norms()
            r = LaurentPoly.zero()
            for k, p in a.terms.items():
                q = b.terms.get(k)
                if q:
                    r = r + LaurentPoly._raw(p) * LaurentPoly._raw(q) * norms[k]
            self._inner[key] = r
        return r

    def form_pairs(self):
        S, U = self.S, self.U
        top = U.bound if U.complete else U.bound - FORM_MARGIN
        for C in range(S.size):
            a = S.xi[C]
            if U.length[a.plus] > top:
                continue
            for C2 in range(S.size):
                b = S.xi[C2]
                if (a.gamma, a.nu) == (b.gamma, b.nu) and U.length[b.plus] <= top:
                    yield C, C2

    def composable(self):
        S, sd = self.S, self.sd
        for A in range(S.size):
            for B in range(S.size):
                if S.xi[A].nu == S.xi[B].gamma and sd.in_range(A, B):
                    yield A, B

    def regular_orbit(self) -> int | None:
        for o in self.S.orbits:
            if o.regular:
                return o.index
        return None

    # running
    def run(self, names: list[str]) -> dict[str, dict]:
        out = {}
        for name in names:
            t = getattr(self, "check_" + name)()
            out[name] = t.report()
        return out

    def run_suite(self, suite: str) -> dict[str, dict]:
        if suite not in SUITES:
            raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
        return self.run(SUITES[suite])

    # inner product checks
    def check_forms_agree(self) -> Tally:
        """Schur-side form on canonical elements equals the Hecke-side form on KL elements."""
        S, U, H = self.S, self.U, self.s.H
        t = Tally()
        for C, C2 in self.form_pairs():
            a, b = S.xi[C], S.xi[C2]
            x = self.inner(C, C2)
            y = inner_williamson(S, H.kl(U.inverse[a.plus]), H.kl(U.inverse[b.plus]), S.J[a.nu], S.J[a.gamma])
            t.check(x == y, lambda: {"pair": [self.x(C), self.x(C2)], "schur": _poly(x), "hecke": _poly(y)})
        return t

    def check_rho_adjoint(self) -> Tally:
        """``({A}{B}, {C}) = ({B}, rho({A}) {C})`` via canonical structure constants."""
        S, sd = self.S, self.sd
        t = Tally()
        rho_canon = {}
        for A in range(S.size):
            rho_canon[A] = {R: (p.low, p.coeffs) for R, p in S.to_canon(S.rho(S.canon_std(A))).items()}
        raw_inner: dict[tuple[int, int], tuple] = {}

        def ip(C: int, C2: int) -> tuple:
            r = raw_inner.get((C, C2))
            if r is None:
                q = self.inner(C, C2)
                r = raw_inner[(C, C2)] = (q.low, q.coeffs)
            return r

        def add_mul(acc: tuple, x: tuple, y: tuple) -> tuple:
            return poly_add(*acc, *poly_mul(*x, *y))

        for A, B in self.composable():
            a, b = S.xi[A], S.xi[B]
            ab = S.gstruct(A, B)
            for C in range(S.size):
                c = S.xi[C]
                if (c.gamma, c.nu) != (a.gamma, b.nu):
                    continue
                if not all(sd.in_range(R, C) for R in rho_canon[A]):
                    continue
                lhs = ZERO
                for E, g in ab.items():
                    lhs = add_mul(lhs, g, ip(E, C))
                rhs = ZERO
                for R, p in rho_canon[A].items():
                    inner_sum = ZERO
                    for E, g in S.gstruct(R, C).items():
                        if (S.xi[E].gamma, S.xi[E].nu) == (b.gamma, b.nu):
                            inner_sum = add_mul(inner_sum, g, ip(B, E))
                    rhs = add_mul(rhs, p, inner_sum)
                t.check(
                    lhs == rhs,
                    lambda: {
                        "triple": [self.x(A), self.x(B), self.x(C)],
                        "lhs": _poly(LaurentPoly._raw(lhs)),
                        "rhs": _poly(LaurentPoly._raw(rhs)),
                    },
                )
        return t

    def check_norm_examples(self) -> Tally:
        """Idempotents have norm 1; distinct standard elements are orthogonal."""
        S = self.S
        t = Tally()
        one = LaurentPoly.one()
        for nu in range(len(S.orbits)):
            k = S.diag_identity(nu)
            t.check(self.norms()[k] == one, lambda: {"xi": self.x(k), "norm": _poly(self.norms()[k])})
        for C in range(S.size):
            for C2 in range(S.size):
                if C != C2:
                    val = inner_schur(S, S.basis(C), S.basis(C2))
                    t.check(not val, lambda: {"pair": [self.x(C), self.x(C2)]})
        return t

    # positivity
    def check_form_positivity(self) -> Tally:
        t = Tally()
        for C, C2 in self.form_pairs():
            x = self.inner(C, C2)
            r = x - 1 if C == C2 else x
            t.check(not r or r.classify().in_v_N_of_v, lambda: {"pair": [self.x(C), self.x(C2)], "value": _poly(x)})
        return t

    def check_structure_positivity(self) -> Tally:
        S = self.S
        t = Tally()
        for A, B in self.composable():
            for C, g in S.gstruct(A, B).items():
                t.check(all(c >= 0 for c in g[1]), lambda: {"g": [self.x(A), self.x(B), self.x(C)], "value": _poly(LaurentPoly._raw(g))})
        return t

    def check_kl_positivity(self) -> Tally:
        H, U = self.s.H, self.U
        t = Tally()
        for w in range(U.size):
            for y, c in H.kl_terms(w).items():
                if y == w:
                    t.check(c == (0, (1,)), lambda: {"p": [self.w(y), self.w(w)]})
                else:
                    p = LaurentPoly._raw(c)
                    t.check(p.classify().in_v_N_of_v, lambda: {"p": [self.w(y), self.w(w)], "value": _poly(p)})
        return t

    # canonical basis and products
    def check_canonical_basis(self) -> Tally:
        S = self.S
        t = Tally()
        for C in range(S.size):
            c = S.canon_std(C)
            ok = S.is_bar_invariant(c) and c == S.canon_from_p(C) and c.terms.get(C) == (0, (1,))
            ok = ok and all(LaurentPoly._raw(p).classify().in_v_N_of_v for k, p in c.terms.items() if k != C)
            t.check(ok, lambda: {"xi": self.x(C)})
        return t

    def check_mul_paths(self) -> Tally:
        S = self.S
        t = Tally()
        for A, B in self.composable():
            t.check(S.gstruct(A, B) == S.gstruct_hecke(A, B), lambda: {"pair": [self.x(A), self.x(B)]})
        return t

    # a-function, Delta, distinguished elements
    def check_a_two_routes(self) -> Tally:
        S, sd, hd = self.S, self.sd, self.hd
        t = Tally()
        for C in range(S.size):
            if sd.scan[C] is None or not hd.a_cert[S.xi[C].plus]:
                continue
            if S.U.complete:
                ok = sd.scan[C] == sd.via_hecke[C]
            else:
                # the bounded scan is only a lower bound
                ok = sd.scan[C] <= sd.via_hecke[C]
            t.check(ok, lambda: {"xi": self.x(C), "scan": sd.scan[C], "via_hecke": sd.via_hecke[C]})
        return t

    def check_delta_two_routes(self) -> Tally:
        sd = self.sd
        t = Tally()
        for C in sd.delta:
            t.check(sd.delta[C] == sd.delta_hecke[C], lambda: {"xi": self.x(C), "inner": sd.delta[C], "hecke": sd.delta_hecke[C]})
        return t

    def check_n_C_positive(self) -> Tally:
        sd = self.sd
        t = Tally()
        for C, d in sd.delta.items():
            if d is not None:
                t.check(d[1] > 0, lambda: {"xi": self.x(C), "n_C": d[1]})
        return t

    def check_distinguished_two_ways(self) -> Tally:
        S, sd, hd = self.S, self.sd, self.hd
        t = Tally()
        for C in sd.delta:
            if not sd.cert[C]:
                continue
            a = C in sd.distinguished
            b = bool(hd.is_distinguished(S.xi[C].plus))
            t.check(a == b, lambda: {"xi": self.x(C), "via_inner": a, "via_hecke": b})
        return t

    def check_distinguished_transpose(self) -> Tally:
        S, sd = self.S, self.sd
        t = Tally()
        D = set(sd.distinguished)
        for d in sd.distinguished:
            dt = S.transpose[d]
            if sd.cert[dt]:
                t.check(dt in D, lambda: {"xi": self.x(d)})
        return t

    # cells
    def _corr(self, kind: str) -> Tally:
        S = self.S
        sc, hc = self.cells("schur", kind), self.cells("hecke", kind)
        t = Tally()
        for C in range(S.size):
            c = S.xi[C]
            if not sc.is_certified(C) or not hc.is_certified(c.plus):
                continue
            for C2 in range(S.size):
                c2 = S.xi[C2]
                if kind == "LR":
                    lhs = sc.same(C, C2)
                    rhs = hc.same(c.plus, c2.plus)
                else:
                    side = (c.nu == c2.nu) if kind == "L" else (c.gamma == c2.gamma)
                    lhs = sc.below(C, C2)
                    rhs = side and hc.below(c.plus, c2.plus)
                t.check(lhs == rhs, lambda: {"pair": [self.x(C), self.x(C2)], "schur": lhs, "hecke": rhs})
        return t

    def check_cell_correspondence_L(self) -> Tally:
        return self._corr("L")

    def check_cell_correspondence_R(self) -> Tally:
        return self._corr("R")

    def check_cell_correspondence_LR(self) -> Tally:
        return self._corr("LR")

    def check_two_sided_count(self) -> Tally:
        S = self.S
        sc, hc = self.cells("schur", "LR"), self.cells("hecke", "LR")
        t = Tally()
        if self.regular_orbit() is None:
            t.note = "no regular orbit in the coweight set"
            return t
        if not (all(sc.certified) and all(hc.certified)):
            t.note = "some two-sided cells are not certified within the length bound"
            return t
        image = {}
        for i, cell in enumerate(sc.cells):
            image[i] = {hc.cell_of[S.xi[C].plus] for C in cell}
        ok = (
            all(len(v) == 1 for v in image.values())
            and len({next(iter(v)) for v in image.values()}) == len(sc.cells) == len(hc.cells)
        )
        t.check(ok, lambda: {"schur_cells": len(sc.cells), "hecke_cells": len(hc.cells)})
        t.note = f"{len(sc.cells)} schur two-sided cells, {len(hc.cells)} hecke two-sided cells"
        return t

    def check_left_within_two_sided(self) -> Tally:
        S = self.S
        L, LR = self.cells("schur", "L"), self.cells("schur", "LR")
        t = Tally()
        for C in range(S.size):
            if not (L.is_certified(C) and LR.is_certified(C)):
                continue
            for C2 in range(S.size):
                if L.below(C, C2) and LR.same(C, C2):
                    t.check(L.same(C, C2), lambda: {"pair": [self.x(C), self.x(C2)]})
        return t

    def _full_cells(self):
        """Certified two-sided cells whose members have certified a-values and in-range products."""
        S, sd = self.S, self.sd
        LR = self.cells("schur", "LR")
        for cell, ok in zip(LR.cells, LR.certified):
            if not ok or not all(sd.cert[C] for C in cell):
                continue
            if not all(sd.in_range(A, B) for A in cell for B in cell if S.xi[A].nu == S.xi[B].gamma):
                continue
            yield cell

    def check_abar_equals_a(self) -> Tally:
        sd = self.sd
        t = Tally()
        for cell in self._full_cells():
            for C in cell:
                ab = sd.abar(C, cell)
                t.check(ab == sd.a[C], lambda: {"xi": self.x(C), "abar": ab, "a": sd.a[C]})
        return t

    # the P properties
    def G(self, A: int, B: int, X: int) -> int | None:
        key = (A, B, X)
        if key not in self._gamma:
            self._gamma[key] = self.sd.gamma(A, B, X)
        return self._gamma[key]

    def check_P1(self) -> Tally:
        sd = self.sd
        t = Tally()
        for C, d in sd.delta.items():
            if sd.cert[C] and d is not None:
                t.check(sd.a[C] <= d[0], lambda: {"xi": self.x(C), "a": sd.a[C], "delta": d[0]})
        return t

    def check_P2(self) -> Tally:
        S = self.S
        t = Tally()
        for D in self.sd.distinguished:
            for A, B in self.composable():
                g = self.G(A, B, D)
                if g:
                    t.check(B == S.transpose[A], lambda: {"D": self.x(D), "A": self.x(A), "B": self.x(B), "gamma": g})
                elif g == 0:
                    t.count += 1
        return t

    def check_P3(self) -> Tally:
        S, sd = self.S, self.sd
        t = Tally()
        Dset = set(sd.distinguished)
        for C in range(S.size):
            Ct = S.transpose[C]
            if not sd.in_range(C, Ct):
                continue
            support = S.gstruct(C, Ct)
            if not all(sd.cert[X] and sd.cert[S.transpose[X]] for X in support):
                continue
            hits = [S.transpose[X] for X in support if S.transpose[X] in Dset and self.G(C, Ct, S.transpose[X])]
            t.check(len(hits) == 1, lambda: {"xi": self.x(C), "distinguished_hits": [self.x(D) for D in hits]})
        return t

    def _pairs_rel(self, kind: str):
        S, sd = self.S, self.sd
        P = self.cells("schur", kind)
        for C in range(S.size):
            if not P.is_certified(C) or not sd.cert[C]:
                continue
            for C2 in range(S.size):
                if sd.cert[C2]:
                    yield P, C, C2

    def check_P4(self) -> Tally:
        S, sd = self.S, self.sd
        t = Tally()
        for P, C, C2 in self._pairs_rel("LR"):
            if S.xi[C].nu == S.xi[C2].nu and P.below(C, C2):
                t.check(sd.a[C] >= sd.a[C2], lambda: {"pair": [self.x(C), self.x(C2)], "a": [sd.a[C], sd.a[C2]]})
        return t

    def check_P5(self) -> Tally:
        S, sd = self.S, self.sd
        t = Tally()
        for D in sd.distinguished:
            nD = sd.delta[D][1]
            for A in range(S.size):
                At = S.transpose[A]
                if not sd.in_range(At, A):
                    continue
                g = self.G(At, A, D)
                if g:
                    t.check(g == 1 and nD == 1, lambda: {"D": self.x(D), "A": self.x(A), "gamma": g, "n_D": nD})
        return t

    def check_P6(self) -> Tally:
        S = self.S
        t = Tally()
        for D in self.sd.distinguished:
            t.check(S.transpose[D] == D, lambda: {"D": self.x(D)})
        return t

    def check_P7(self) -> Tally:
        S = self.S
        t = Tally()
        for A, B in self.composable():
            a, b = S.xi[A], S.xi[B]
            for C in range(S.size):
                c = S.xi[C]
                if c.gamma != b.nu or c.nu != a.gamma:
                    continue
                vals = (self.G(A, B, C), self.G(C, A, B), self.G(B, C, A))
                if None in vals:
                    continue
                t.check(vals[0] == vals[1] == vals[2], lambda: {"triple": [self.x(A), self.x(B), self.x(C)], "gammas": list(vals)})
        return t

    def check_P8(self) -> Tally:
        S = self.S
        L = self.cells("schur", "L")
        T = S.transpose
        t = Tally()

        def rel(x, y):
            if L.is_certified(x) or L.is_certified(y):
                return L.same(x, y)
            return None

        paired: dict[tuple[int, int, int], LaurentPoly] = {}

        def pair_with(R: int, C: int, B: int) -> LaurentPoly:
            # ({R}{C}, {B}) summed over the canonical expansion of {R}{C}
            key = (R, C, B)
            r = paired.get(key)
            if r is None:
                b = S.xi[B]
                r = LaurentPoly.zero()
                for E, g in S.gstruct(R, C).items():
                    if (S.xi[E].gamma, S.xi[E].nu) == (b.gamma, b.nu):
                        r = r + LaurentPoly._raw(g) * self.inner(B, E)
                paired[key] = r
            return r

        for A, B in self.composable():
            a, b = S.xi[A], S.xi[B]
            for C in range(S.size):
                c = S.xi[C]
                if c.gamma != b.nu or c.nu != a.gamma:
                    continue
                g = self.G(A, B, C)
                if not g:
                    continue
                rels = [rel(A, T[B]), rel(B, T[C]), rel(C, T[A])]
                if None in rels:
                    continue
                t.check(all(rels), lambda: {"triple": [self.x(A), self.x(B), self.x(C)], "relations": rels})
        return t

    def check_P9(self) -> Tally:
        sd = self.sd
        t = Tally()
        for P, C, C2 in self._pairs_rel("L"):
            if P.below(C, C2) and sd.a[C] == sd.a[C2]:
                t.check(P.same(C, C2), lambda: {"pair": [self.x(C), self.x(C2)]})
        return t

    def check_P10(self) -> Tally:
        S, sd = self.S, self.sd
        T = S.transpose
        t = Tally()
        for P, C, C2 in self._pairs_rel("R"):
            if not (sd.cert[T[C]] and sd.cert[T[C2]]):
                continue
            if P.below(C, C2) and sd.a[T[C]] == sd.a[T[C2]]:
                t.check(P.same(C, C2), lambda: {"pair": [self.x(C), self.x(C2)]})
        return t

    def check_P11(self) -> Tally:
        S, sd = self.S, self.sd
        t = Tally()
        for P, C, C2 in self._pairs_rel("LR"):
            if S.xi[C].nu == S.xi[C2].nu and P.below(C, C2) and sd.a[C] == sd.a[C2]:
                t.check(P.same(C, C2), lambda: {"pair": [self.x(C), self.x(C2)]})
        return t

    def check_P13(self) -> Tally:
        S, sd = self.S, self.sd
        L = self.cells("schur", "L")
        Dset = set(sd.distinguished)
        t = Tally()
        for cell, ok in zip(L.cells, L.certified):
            if not ok or not all(sd.cert[C] for C in cell):
                continue
            ds = [C for C in cell if C in Dset]
            if len(ds) != 1:
                t.fail({"left_cell": [self.x(C) for C in cell], "distinguished": [self.x(D) for D in ds]})
                continue
            D = ds[0]
            for C in cell:
                Ct = S.transpose[C]
                if not sd.in_range(Ct, C):
                    continue
                g = self.G(Ct, C, D)
                if g is None:
                    continue
                t.check(g != 0, lambda: {"left_cell_member": self.x(C), "D": self.x(D)})
        return t

    def check_P14(self) -> Tally:
        S = self.S
        LR = self.cells("schur", "LR")
        t = Tally()
        for C in range(S.size):
            Ct = S.transpose[C]
            if LR.is_certified(C) or LR.is_certified(Ct):
                t.check(LR.same(C, Ct), lambda: {"xi": self.x(C)})
        return t

    def check_P15(self) -> Tally:
        """``sum_A' g^(v')_{B,C'}^{A'} g_{C,A'}^A = sum_A' g_{C,B}^{A'} g^(v')_{A',C'}^A`` over A' in the cell."""
        S, sd = self.S, self.sd
        t = Tally()
        x = S.xi

        def g(P, Q):
            if x[P].nu != x[Q].gamma:
                return {}
            if not sd.in_range(P, Q):
                return None
            return S.gstruct(P, Q)

        for cell in self._full_cells():
            members = set(cell)
            for B in cell:
                for Cp in range(S.size):
                    if x[B].nu != x[Cp].gamma:
                        continue
                    gBCp = g(B, Cp)
                    if gBCp is None:
                        continue
                    for C in range(S.size):
                        if x[C].nu != x[B].gamma:
                            continue
                        gCB = g(C, B)
                        if gCB is None:
                            continue
                        targets = [A for A in cell if x[A].gamma == x[C].gamma and x[A].nu == x[Cp].nu]
                        if not targets:
                            continue
                        lhs: dict = defaultdict(lambda: defaultdict(int))
                        rhs: dict = defaultdict(lambda: defaultdict(int))
                        bad = False
                        for Ap, p in gBCp.items():
                            if Ap not in members:
                                continue
                            gCAp = g(C, Ap)
                            if gCAp is None:
                                bad = True
                                break
                            _acc2(lhs, p, gCAp, members, hat_first=True)
                        for Ap, p in gCB.items():
                            if Ap not in members or bad:
                                continue
                            gApCp = g(Ap, Cp)
                            if gApCp is None:
                                bad = True
                                break
                            _acc2(rhs, p, gApCp, members, hat_first=False)
                        if bad:
                            continue
                        for A in targets:
                            l = {k: v for k, v in lhs[A].items() if v}
                            r = {k: v for k, v in rhs[A].items() if v}
                            t.check(l == r, lambda: {"C": self.x(C), "C'": self.x(Cp), "A": self.x(A), "B": self.x(B)})
        return t

    # asymptotic rings
    def jrings(self):
        if self._j is None:
            try:
                JS = schur_jring(self.S, self.sd, self.cells("schur", "LR"))
                JH = hecke_jring(self.hd, self.cells("hecke", "LR"))
                self._j = (JS, JH, None)
            except Uncertified as e:
                self._j = (None, None, str(e))
        return self._j

    def _js(self) -> tuple[JRing | None, Tally]:
        JS, _, err = self.jrings()
        t = Tally()
        if JS is None or not JS.basis:
            t.note = err or "no certified two-sided cell"
            return None, t
        return JS, t

    def check_j_associative(self) -> Tally:
        J, t = self._js()
        if J is None:
            return t
        byc = defaultdict(list)
        for C in J.basis:
            byc[J.cell_of[C]].append(C)
        for members in byc.values():
            for a, b, c in itertools.product(members, repeat=3):
                l = J.mul(J.mul({a: 1}, {b: 1}), {c: 1})
                r = J.mul({a: 1}, J.mul({b: 1}, {c: 1}))
                t.check(l == r, lambda: {"triple": [self.x(a), self.x(b), self.x(c)]})
        return t

    def check_j_identity(self) -> Tally:
        J, t = self._js()
        if J is None:
            return t
        for A in J.basis:
            t.check(J.mul(J.unit, {A: 1}) == {A: 1}, lambda: {"left_identity_fails_on": self.x(A)})
            t.check(J.mul({A: 1}, J.unit) == {A: 1}, lambda: {"right_identity_fails_on": self.x(A)})
        return t

    def check_phi_homomorphism(self) -> Tally:
        J, t = self._js()
        if J is None:
            return t
        S, sd = self.S, self.sd
        phi = Phi(S, sd, J)
        for A, B in self.composable():
            prod = S.gstruct(A, B)
            if not all(sd.in_range(C, D) for C in prod for D in J.unit if S.xi[C].nu == S.xi[D].gamma):
                continue
            n0 = len(phi.boundary_hits)
            lhs = phi({C: LaurentPoly._raw(g) for C, g in prod.items()})
            rhs = phi.mul(phi.canon(A), phi.canon(B))
            if len(phi.boundary_hits) != n0:
                continue
            t.check(lhs == rhs, lambda: {"pair": [self.x(A), self.x(B)]})
        if phi.boundary_hits:
            t.note = f"{len(set(phi.boundary_hits))} elements have images touching the length bound; their pairs were skipped"
        return t

    def check_phi_identity(self) -> Tally:
        J, t = self._js()
        if J is None:
            return t
        S, sd = self.S, self.sd
        phi = Phi(S, sd, J)
        total: dict[int, LaurentPoly] = {}
        for nu in range(len(S.orbits)):
            k = S.diag_identity(nu)
            img = phi({k: LaurentPoly.one()})
            want = {D: LaurentPoly.one() for D in J.unit if S.xi[D].nu == nu}
            t.check(img == want, lambda: {"orbit": S.orbits[nu].name, "image": sorted(self.x(B) for B in img)})
            for B, p in img.items():
                total[B] = total.get(B, LaurentPoly.zero()) + p
        t.check(total == {D: LaurentPoly.one() for D in J.unit}, lambda: {"identity_image": sorted(self.x(B) for B in total)})
        return t

    def check_cell_characterization(self) -> Tally:
        J, t = self._js()
        if J is None:
            return t
        S = self.S
        T = S.transpose
        Lc, Rc, LRc = self.cells("schur", "L"), self.cells("schur", "R"), self.cells("schur", "LR")
        basis = J.basis
        byc = defaultdict(list)
        for C in basis:
            byc[J.cell_of[C]].append(C)
        for C in basis:
            peers = byc[J.cell_of[C]]
            left_targets = set().union(*(J.tt(A, C).keys() for A in peers))
            right_targets = set().union(*(J.tt(C, A).keys() for A in peers))
            two_targets: set[int] = set()
            for A in peers:
                for Y in J.tt(A, C):
                    for A2 in peers:
                        two_targets |= set(J.tt(Y, A2).keys())
            for C2 in basis:
                same = J.cell_of[C] == J.cell_of[C2]
                if Lc.is_certified(C) or Lc.is_certified(C2):
                    sL = Lc.same(C, C2)
                    t.check(sL == bool(J.tt(C, T[C2])), lambda: {"left": [self.x(C), self.x(C2)], "form": 1})
                    t.check(sL == (C2 in left_targets), lambda: {"left": [self.x(C), self.x(C2)], "form": 2})
                if Rc.is_certified(C) or Rc.is_certified(C2):
                    sR = Rc.same(C, C2)
                    t.check(sR == bool(J.tt(T[C], C2)), lambda: {"right": [self.x(C), self.x(C2)], "form": 1})
                    t.check(sR == (C2 in right_targets), lambda: {"right": [self.x(C), self.x(C2)], "form": 2})
                sLR = LRc.same(C, C2)
                nz = same and any(J.mul(J.tt(C, A), {C2: 1}) for A in peers)
                t.check(sLR == nz, lambda: {"two_sided": [self.x(C), self.x(C2)], "form": 1})
                t.check(sLR == (C2 in two_targets), lambda: {"two_sided": [self.x(C), self.x(C2)], "form": 2})
        return t

    def _tensor(self):
        J, t = self._js()
        if J is None:
            return None, t
        om = self.regular_orbit()
        if om is None:
            t.note = "no regular orbit in the coweight set"
            return None, t
        _, JH, _ = self.jrings()
        if not self.U.complete:
            t.note = "the tensor space needs the whole asymptotic Hecke ring, available in finite mode only"
            return None, t
        return TensorSpace(self.S, J, JH, om), t

    def check_e_idempotent(self) -> Tally:
        J, t = self._js()
        if J is None:
            return t
        om = self.regular_orbit()
        if om is None:
            t.note = "no regular orbit in the coweight set"
            return t
        e = {D: 1 for D in J.unit if self.S.xi[D].nu == om}
        t.check(bool(e) and J.mul(e, e) == e, lambda: {"e": sorted(self.x(D) for D in e)})
        return t

    def check_tensor_module(self) -> Tally:
        TS, t = self._tensor()
        if TS is None:
            return t
        S, J, JH = self.S, TS.JS, TS.JH
        e = {D: 1 for D in J.unit if S.xi[D].nu == TS.omega}
        for C in J.basis:
            want = {C: 1} if S.xi[C].nu == TS.omega else {}
            t.check(J.mul({C: 1}, e) == want, lambda: {"J_e_fails_on": self.x(C)})
        try:
            right = {(C, x): TS.right(C, x) for C in TS.basis for x in JH.basis}
            left = {(A, C): TS.left_hecke(A, C) for A in J.basis for C in TS.basis}
        except ValueError as err:
            t.fail(str(err))
            return t
        for (A, C), v in left.items():
            t.check(v == TS.left_schur(A, C), lambda: {"action_mismatch": [self.x(A), self.x(C)]})

        def act_right(vec, x):
            out: dict[int, int] = defaultdict(int)
            for C, c in vec.items():
                for k, d in right[(C, x)].items():
                    out[k] += c * d
            return {k: v for k, v in out.items() if v}

        def act_left(A, vec):
            out: dict[int, int] = defaultdict(int)
            for C, c in vec.items():
                for k, d in left[(A, C)].items():
                    out[k] += c * d
            return {k: v for k, v in out.items() if v}

        for A in J.basis:
            for C in TS.basis:
                for x in JH.basis:
                    l = act_right(act_left(A, {C: 1}), x)
                    r = act_left(A, act_right({C: 1}, x))
                    t.check(l == r, lambda: {"commute_fails": [self.x(A), self.x(C), self.w(x)]})
        return t

    def check_double_centralizer(self) -> Tally:
        TS, t = self._tensor()
        if TS is None:
            return t
        J, JH = TS.JS, TS.JH
        n = len(TS.basis)
        try:
            R = [TS.matrix(lambda C, x=x: TS.right(C, x)) for x in JH.basis]
        except ValueError as err:
            t.fail(str(err))
            return t
        L = [TS.matrix(lambda C, A=A: TS.left_schur(A, C)) for A in J.basis]
        end_h = commutant_dim(R, n)
        end_s = commutant_dim(L, n)
        rank_s, rank_h = span_dim(L), span_dim(R)
        t.check(end_h == J.dim, lambda: {"dim_End_over_J_hecke": end_h, "dim_J_schur": J.dim})
        t.check(rank_s == J.dim, lambda: {"schur_action_rank": rank_s, "dim_J_schur": J.dim})
        t.check(end_s == JH.dim, lambda: {"dim_End_over_J_schur": end_s, "dim_J_hecke": JH.dim})
        t.check(rank_h == JH.dim, lambda: {"hecke_action_rank": rank_h, "dim_J_hecke": JH.dim})
        t.note = f"dim End = {end_h} = dim J (schur side) = {J.dim}; dim End = {end_s} = dim J (hecke side) = {JH.dim}"
        return t


def _acc2(out, p, row, members, hat_first: bool) -> None:
    """Add ``p(v') * q(v)`` (or ``p(v) * q(v')``) for each ``q = row[A]`` into ``out[A]``."""
    for A, q in row.items():
        if A not in members:
            continue
        cell = out[A]
        for i, a in enumerate(p[1]):
            if not a:
                continue
            for j, b in enumerate(q[1]):
                if b:
                    key = (p[0] + i, q[0] + j) if hat_first else (q[0] + j, p[0] + i)
                    cell[key] += a * b
