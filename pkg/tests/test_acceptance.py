"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line through ``acceptance_log``; the conftest
hook prints them after the run.  ``python3 tests/test_acceptance.py`` runs
just this file and prints the same lines.
"""

import os
import resource
import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

import acceptance_log
from affschur.cells import hecke_cells, schur_cells
from affschur.config import CACHE_ENV, SessionConfig, load_config
from affschur.hecke import HeckeAlgebra
from affschur.rootdatum import build_root_datum
from affschur.schur import SchurAlgebra
from affschur.session import Session
from affschur.verify import PROPERTIES, SUITES, Verifier
from affschur.weyl import WeylUniverse, orbit_table
from oracles import Cayley, OracleHecke, a_values, as_dict, cells_from_products, pair_orbit_count

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CONFIGS = os.path.join(ROOT, "configs")


@contextmanager
def criterion(number: int, title: str):
    notes: list[str] = []
    try:
        yield notes
    except BaseException as e:
        acceptance_log.record(number, title, False, f"{type(e).__name__}: {e}".splitlines()[0][:200])
        raise
    acceptance_log.record(number, title, True, "; ".join(notes))


def statuses(report: dict) -> dict:
    return {k: r["status"] for k, r in report.items()}


def test_criterion_1_finite_a2():
    with criterion(1, "finite A2 end to end") as notes:
        t0 = time.process_time()
        s = Session(load_config(os.path.join(CONFIGS, "a2_finite.cfg")))
        S, U = s.S, s.U
        assert S.size == 14 == pair_orbit_count(U, s.cfg.xf)
        report = Verifier(s).run_suite("all")
        bad = {k: r for k, r in report.items() if r["status"] != "pass"}
        assert not bad, bad
        for name in ("canonical_basis", "forms_agree", "form_positivity", "mul_paths"):
            assert report[name]["checked_count"] > 0
        # every same-block pair is compared by both forms
        blocks = [(x.gamma, x.nu) for x in S.xi]
        assert report["forms_agree"]["checked_count"] == sum(blocks.count(b) for b in blocks)
        assert [report[p]["status"] for p in PROPERTIES] == ["pass"] * 14

        O = OracleHecke(U, U.bound + 1)
        raws = list(U.elements)
        cells, _ = cells_from_products(raws, O.struct)
        a = a_values(raws, O.struct)
        part = hecke_cells(s.H, "LR")
        assert {frozenset(U.elements[z] for z in c) for c in part.cells} == {frozenset(c) for c in cells}
        assert sorted((len(c), a[c[0]]) for c in cells) == [(1, 0), (1, 3), (4, 1)]
        schur_part = schur_cells(S, "LR")
        assert all(schur_part.certified) and len(schur_part.cells) == len(part.cells) == 3
        secs = time.process_time() - t0
        assert secs < 60
        notes.append(f"|Xi|=14, {len(report)} checks pass, cells 1+4+1 with a=0,1,3, {secs:.1f}s")


def test_criterion_2_affine_a1():
    with criterion(2, "affine A1 level 2 up to length 12") as notes:
        t0 = time.process_time()
        s = Session(load_config(os.path.join(CONFIGS, "a1_affine.cfg")))
        S, U = s.S, s.U
        orbits = S.orbits
        assert [(tuple(o.rep), sorted(o.J)) for o in orbits] == [((0,), [1]), ((-1,), [])]
        report = Verifier(s).run_suite("all")
        st = statuses(report)
        assert "fail" not in st.values(), {k: report[k] for k, v in st.items() if v == "fail"}
        skipped = sorted(k for k, v in st.items() if v == "not attempted")
        for k in skipped:
            assert report[k].get("note"), k
        # everything the finite run exercises that is meaningful here must actually run
        must_run = set(SUITES["inner"]) | set(SUITES["positivity"]) | {"canonical_basis", "mul_paths"}
        assert not must_run & set(skipped)
        assert st["structure_positivity"] == "pass"
        top = 10
        short = [C for C in range(S.size) if U.length[S.xi[C].plus] <= top]
        expected = sum(1 for C in short for C2 in short if (S.xi[C].gamma, S.xi[C].nu) == (S.xi[C2].gamma, S.xi[C2].nu))
        assert report["form_positivity"]["checked_count"] == expected > 0
        secs = time.process_time() - t0
        assert secs < 300
        notes.append(f"{sum(v == 'pass' for v in st.values())} pass, not attempted: {', '.join(skipped) or 'none'}, {secs:.1f}s")


def universe(family, rank, mode, bound):
    return WeylUniverse(build_root_datum(family, rank), mode, bound)


def test_criterion_3_differential():
    with criterion(3, "lengths, KL elements and both product routes against references") as notes:
        for fam, rank in (("A", 1), ("A", 2)):
            U = universe(fam, rank, "affine", 8)
            cay = Cayley(U, 8)
            assert {x for x, d in cay.dist.items() if d <= 8} == set(U.elements)
            assert all(U.length[i] == cay.length(x) for i, x in enumerate(U.elements))
        kl_count = 0
        for fam, rank, mode in (("A", 2, "finite"), ("B", 2, "finite"), ("A", 1, "affine")):
            U = universe(fam, rank, mode, 6)
            H = HeckeAlgebra(U)
            O = OracleHecke(U, 7)
            for w in range(U.size):
                mine = {U.elements[y]: as_dict(c) for y, c in H.kl_terms(w).items()}
                assert mine == O.kl(U.elements[w]), U.word_str(w)
                kl_count += 1
        pairs = 0
        for fam, rank, mode, bound, level, xf in (
            ("A", 2, "finite", 3, None, [(1, 0), (1, 1)]),
            ("B", 2, "finite", 4, None, [(1, 0), (1, 1)]),
            ("A", 1, "affine", 12, 2, "full"),
        ):
            U = universe(fam, rank, mode, bound)
            S = SchurAlgebra(HeckeAlgebra(U), orbit_table(U, level, xf))
            for A in range(S.size):
                for B in range(S.size):
                    a, b = S.xi[A], S.xi[B]
                    if a.nu == b.gamma and (U.complete or U.length[a.plus] + U.length[b.plus] <= U.bound):
                        assert S.gstruct(A, B) == S.gstruct_hecke(A, B), (S.xi_str(A), S.xi_str(B))
                        pairs += 1
        notes.append(f"{kl_count} KL elements, {pairs} product pairs agree")


def test_criterion_4_asymptotic_a2():
    with criterion(4, "asymptotic rings on finite A2") as notes:
        s = Session(load_config(os.path.join(CONFIGS, "a2_finite.cfg")))
        report = Verifier(s).run_suite("asymptotic")
        bad = {k: r for k, r in report.items() if r["status"] != "pass"}
        assert not bad, bad
        note = report["double_centralizer"].get("note", "")
        assert "= 14" in note, note
        notes.append(f"{len(report)} checks pass; {note}")


def test_criterion_5_kl_a3():
    with criterion(5, "KL polynomials in finite A3") as notes:
        U = universe("A", 3, "finite", 6)
        H = HeckeAlgebra(U)
        y, w = U.parse("2"), U.parse("2.1.3.2")
        assert len(U.interval(y, w)) == 10
        v = {1: 1, 3: 1}
        assert as_dict(H.kl_terms(w)[y]) == v
        assert OracleHecke(U, 7).kl(U.elements[w])[U.elements[y]] == v
        count = 0
        for x in range(U.size):
            for z, c in H.kl_terms(x).items():
                d = as_dict(c)
                if z == x:
                    assert d == {0: 1}
                else:
                    assert d and min(d) >= 1 and all(k > 0 for k in d.values()), (U.word_str(z), U.word_str(x))
                count += 1
        notes.append(f"p = v + v^3 on a 10-element interval; {count} polynomials positive")


def cpu_run(argv: list[str], env: dict) -> tuple[bytes, float]:
    before = resource.getrusage(resource.RUSAGE_CHILDREN)
    out = subprocess.run(argv, env=env, capture_output=True, check=False)
    after = resource.getrusage(resource.RUSAGE_CHILDREN)
    assert out.returncode == 0, out.stderr.decode()[-500:]
    cpu = (after.ru_utime - before.ru_utime) + (after.ru_stime - before.ru_stime)
    return out.stdout, cpu


def test_criterion_6_cli_and_cache(tmp_path):
    with criterion(6, "CLI determinism and warm cache") as notes:
        env = dict(os.environ)
        env.pop(CACHE_ENV, None)
        cfg = os.path.join(CONFIGS, "a1_affine.cfg")
        base = [sys.executable, "-m", "affschur.cli", "--config", cfg]
        cmd = ["verify", "--suite", "all"]
        cold = [cpu_run(base + cmd, env) for _ in range(2)]
        assert cold[0][0] == cold[1][0]
        cache = str(tmp_path / "a1.klcache")
        cpu_run(base + ["--cache", cache] + cmd, env)
        assert os.path.getsize(cache) > 0
        warm = [cpu_run(base + ["--cache", cache] + cmd, env) for _ in range(2)]
        assert all(out == cold[0][0] for out, _ in warm)
        t_cold = min(t for _, t in cold)
        t_warm = min(t for _, t in warm)
        assert t_warm < t_cold, (t_warm, t_cold)
        notes.append(f"{len(cold[0][0])}-byte report identical; cpu cold {t_cold:.2f}s, warm {t_warm:.2f}s")


if __name__ == "__main__":
    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    for line in acceptance_log.lines():
        print(line)
    sys.exit(code)
