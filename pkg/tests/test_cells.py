import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affschur.cells import HeckeData, SchurData, hecke_cells, schur_cells, strong_components
from affschur.hecke import HeckeAlgebra
from affschur.rootdatum import build_root_datum
from affschur.schur import SchurAlgebra
from affschur.weyl import WeylUniverse, orbit_table
from oracles import OracleHecke, a_values, cells_from_products


def schur(family, rank, mode, bound, level, xf):
    U = WeylUniverse(build_root_datum(family, rank), mode, bound)
    return SchurAlgebra(HeckeAlgebra(U), orbit_table(U, level, xf))


A1 = schur("A", 1, "finite", 1, None, [(0,), (1,)])
A2 = schur("A", 2, "finite", 3, None, [(1, 0), (1, 1)])
B2 = schur("B", 2, "finite", 4, None, [(1, 0), (1, 1)])
AT1 = schur("A", 1, "affine", 12, 2, "full")


@settings(max_examples=100)
@given(st.integers(1, 12).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=30))))
def test_strong_components_match_networkx(graph):
    n, edges = graph
    succ = {i: set() for i in range(n)}
    for a, b in edges:
        succ[a].add(b)
    G = nx.DiGraph()
    G.add_nodes_from(range(n))
    G.add_edges_from(edges)
    mine = {frozenset(c) for c in strong_components(list(range(n)), succ)}
    assert mine == {frozenset(c) for c in nx.strongly_connected_components(G)}


@pytest.mark.parametrize("S", [A2, B2])
def test_hecke_two_sided_cells_match_oracle(S):
    H, U = S.H, S.U
    O = OracleHecke(U, max(U.length) + 1)
    raws = list(U.elements)
    cells, _ = cells_from_products(raws, O.struct)
    a = a_values(raws, O.struct)
    part = hecke_cells(H, "LR")
    assert all(part.certified)
    assert {frozenset(U.elements[z] for z in c) for c in part.cells} == {frozenset(c) for c in cells}
    hd = HeckeData(H)
    assert {U.elements[z]: hd.a[z] for z in range(U.size)} == a


def test_a2_cells_and_a_values():
    H = A2.H
    part = hecke_cells(H, "LR")
    hd = HeckeData(H)
    summary = sorted((len(c), hd.a[c[0]]) for c in part.cells)
    assert summary == [(1, 0), (1, 3), (4, 1)]


@pytest.mark.parametrize("S", [A2, B2])
@pytest.mark.parametrize("kind", ["L", "R", "LR"])
def test_small_generators_give_the_same_cells(S, kind):
    full = schur_cells(S, kind, small=False)
    small = schur_cells(S, kind, small=True)
    assert {frozenset(c) for c in full.cells} == {frozenset(c) for c in small.cells}
    for x in range(S.size):
        for y in range(S.size):
            assert full.below(x, y) == small.below(x, y)


def test_schur_and_hecke_cell_counts_match():
    for S in (A2, B2):
        assert len(schur_cells(S, "LR").cells) == len(hecke_cells(S.H, "LR").cells) == 3


def test_frak_a_examples():
    hd = HeckeData(A1.H)
    sd = SchurData(A1, hd)
    nu = next(o.index for o in A1.orbits if o.J)
    d = A1.diag_identity(nu)
    assert sd.a[d] == sd.via_hecke[d] == 0 and sd.cert[d]
    assert sd.gamma(d, d, d) == 1
    assert d in sd.distinguished
    hd2 = HeckeData(A2.H)
    sd2 = SchurData(A2, hd2)
    reg = next(o.index for o in A2.orbits if o.regular)
    low = A2.pos[(reg, A2.U.parse("1.2.1"), reg)]
    assert sd2.a[low] == sd2.via_hecke[low] == 3


def test_distinguished_closed_under_transpose():
    for S in (A1, A2, B2):
        sd = SchurData(S, HeckeData(S.H))
        assert {S.transpose[D] for D in sd.distinguished} == set(sd.distinguished)
        assert sd.distinguished == sd.distinguished_via_hecke


def test_affine_certification():
    S = AT1
    U = S.U
    part = hecke_cells(S.H, "LR")
    top = part.cell_of[U.identity]
    assert part.certified[top]
    assert {U.word_str(z) for z in part.cells[top]} == {"e", "w1"}
    assert not part.is_certified(U.parse("1"))
    sp = schur_cells(S, "LR")
    cert = [sorted(S.xi_str(C) for C in c) for c in sp.certified_cells()]
    assert ["g1:e:g1", "g1:w1:g1"] in cert
    hd = HeckeData(S.H)
    sd = SchurData(S, hd)
    even = next(o.index for o in S.orbits if o.J)
    assert S.diag_identity(even) in sd.distinguished
    assert not sd.conflicts
