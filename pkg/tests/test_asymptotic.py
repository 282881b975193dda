import itertools

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from affschur.asymptotic import Phi, TensorSpace, commutant_dim, hecke_jring, schur_jring, span_dim
from affschur.cells import HeckeData, SchurData, hecke_cells, schur_cells
from affschur.hecke import HeckeAlgebra
from affschur.laurent import LaurentPoly
from affschur.rootdatum import build_root_datum
from affschur.schur import SchurAlgebra
from affschur.weyl import WeylUniverse, orbit_table


def build(family, rank, mode, bound, level, xf):
    U = WeylUniverse(build_root_datum(family, rank), mode, bound)
    S = SchurAlgebra(HeckeAlgebra(U), orbit_table(U, level, xf))
    hd = HeckeData(S.H)
    sd = SchurData(S, hd)
    JS = schur_jring(S, sd, schur_cells(S, "LR"))
    JH = hecke_jring(hd, hecke_cells(S.H, "LR"))
    return S, sd, JS, JH


A1 = build("A", 1, "finite", 1, None, [(0,), (1,)])
A2 = build("A", 2, "finite", 3, None, [(1, 0), (1, 1)])
B2 = build("B", 2, "finite", 4, None, [(1, 0), (1, 1)])


@pytest.mark.parametrize("case", [A1, A2, B2])
def test_ring_axioms(case):
    S, sd, J, _ = case
    for a, b, c in itertools.product(J.basis, repeat=3):
        assert J.mul(J.mul({a: 1}, {b: 1}), {c: 1}) == J.mul({a: 1}, J.mul({b: 1}, {c: 1}))
    for a in J.basis:
        assert J.mul(J.unit, {a: 1}) == {a: 1} == J.mul({a: 1}, J.unit)


def test_idempotent_in_rank_one():
    S, sd, J, _ = A1
    nu = next(o.index for o in S.orbits if o.J)
    d = S.diag_identity(nu)
    assert J.tt(d, d) == {d: 1}


def test_zero_products_outside_matching_orbits():
    S, sd, J, _ = A2
    for a, b in itertools.product(J.basis, repeat=2):
        if S.xi[a].nu != S.xi[b].gamma:
            assert J.tt(a, b) == {}


@pytest.mark.parametrize("case", [A1, A2])
def test_phi_examples(case):
    S, sd, J, _ = case
    phi = Phi(S, sd, J)
    one = LaurentPoly.one()
    total = {}
    for nu in range(len(S.orbits)):
        img = phi({S.diag_identity(nu): one})
        assert img == {D: one for D in sd.distinguished if S.xi[D].nu == nu}
        total.update(img)
    assert total == {D: one for D in sd.distinguished}


@pytest.mark.parametrize("case", [A1, A2])
def test_phi_is_multiplicative(case):
    S, sd, J, _ = case
    phi = Phi(S, sd, J)
    for A, B in itertools.product(range(S.size), repeat=2):
        if S.xi[A].nu != S.xi[B].gamma:
            continue
        prod = {C: LaurentPoly._raw(g) for C, g in S.gstruct(A, B).items()}
        assert phi(prod) == phi.mul(phi.canon(A), phi.canon(B))
    assert not phi.boundary_hits


def test_e_is_idempotent():
    S, sd, J, _ = A2
    om = next(o.index for o in S.orbits if o.regular)
    e = {D: 1 for D in J.unit if S.xi[D].nu == om}
    assert e and J.mul(e, e) == e


@pytest.mark.parametrize("case,dims", [(A1, (5, 2)), (A2, (14, 6)), (B2, (19, 8))])
def test_dimension_equality(case, dims):
    S, sd, J, JH = case
    om = next(o.index for o in S.orbits if o.regular)
    T = TensorSpace(S, J, JH, om)
    n = len(T.basis)
    R = [T.matrix(lambda C, x=x: T.right(C, x)) for x in JH.basis]
    L = [T.matrix(lambda C, A=A: T.left_schur(A, C)) for A in J.basis]
    assert (J.dim, JH.dim) == dims
    assert commutant_dim(R, n) == J.dim == span_dim(L)
    assert commutant_dim(L, n) == JH.dim == span_dim(R)


small = st.integers(-2, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n), min_size=1, max_size=3))))
def test_commutant_dimension_matches_nullspace(data):
    n, mats = data
    X = sympy.Matrix(n, n, sympy.symbols(f"x0:{n * n}"))
    eqs = []
    for M in mats:
        eqs.extend(X * sympy.Matrix(M) - sympy.Matrix(M) * X)
    A, _ = sympy.linear_eq_to_matrix(eqs, list(X))
    assert commutant_dim(mats, n) == n * n - A.rank()
