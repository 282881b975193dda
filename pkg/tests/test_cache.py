import pytest

from affschur.cache import CacheError, KLCache
from affschur.config import SessionConfig
from affschur.hecke import HeckeAlgebra
from affschur.rootdatum import build_root_datum
from affschur.session import Session
from affschur.weyl import WeylUniverse

HEADER = KLCache.make_header("A1", "affine", 2)


def filled(bound=6, upto=None):
    U = WeylUniverse(build_root_datum("A", 1), "affine", bound)
    H = HeckeAlgebra(U)
    for w in range(U.size):
        if upto is None or U.length[w] <= upto:
            H.kl_terms(w)
    H.struct(U.parse("1"), U.parse("1.0"))
    c = KLCache(HEADER)
    c.absorb(H)
    return c, H


def test_save_load_roundtrip(tmp_path):
    c, _ = filled()
    p = tmp_path / "k.cache"
    c.save(str(p))
    first = p.read_bytes()
    again = KLCache.load(str(p), HEADER)
    again.save(str(p))
    assert p.read_bytes() == first
    assert again.entries == c.entries and again.products == c.products


def test_merge_disjoint_is_union():
    c, _ = filled()
    a, b = KLCache(HEADER), KLCache(HEADER)
    keys = sorted(c.entries)
    for k in keys[::2]:
        a.entries[k] = c.entries[k]
    for k in keys[1::2]:
        b.entries[k] = c.entries[k]
    a.merge(b)
    assert a.entries == c.entries


def test_merge_rejects_conflicts():
    c, _ = filled()
    other = KLCache(HEADER, {w: dict(col) for w, col in c.entries.items()})
    w = next(w for w, col in other.entries.items() if len(col) > 1)
    y = next(y for y in other.entries[w] if y != w)
    low, coeffs = other.entries[w][y]
    other.entries[w][y] = (low, tuple(x + 1 for x in coeffs))
    with pytest.raises(CacheError):
        c.merge(other)
    with pytest.raises(CacheError):
        c.merge(KLCache(KLCache.make_header("A2", "affine", 2)))


def test_header_mismatch(tmp_path):
    c, _ = filled()
    p = tmp_path / "k.cache"
    c.save(str(p))
    with pytest.raises(CacheError, match="header mismatch"):
        KLCache.load(str(p), KLCache.make_header("A2", "affine", 2))


def test_conflicting_lines_in_file(tmp_path):
    p = tmp_path / "k.cache"
    p.write_text(f"{HEADER}\n1|e|1:1\n1|e|1:2\n")
    with pytest.raises(CacheError, match="conflicting"):
        KLCache.read(str(p))
    p.write_text(f"{HEADER}\n1|e\n")
    with pytest.raises(CacheError, match="malformed"):
        KLCache.read(str(p))
    p.write_text("nonsense\n")
    with pytest.raises(CacheError):
        KLCache.read(str(p))


def test_seed_respects_bound_and_matches():
    c, H = filled(bound=8)
    U = WeylUniverse(build_root_datum("A", 1), "affine", 5)
    fresh = HeckeAlgebra(U)
    n = c.seed(fresh)
    assert n > 0
    assert all(U.length[w] <= 5 for w in fresh._kl)
    check = HeckeAlgebra(U)
    for w, terms in fresh._kl.items():
        assert check.kl_terms(w) == terms


def test_session_spot_check_catches_corruption(tmp_path):
    p = tmp_path / "k.cache"
    cfg = SessionConfig("A", 1, "affine", 2, 6, "full", cache_path=str(p))
    s = Session(cfg)
    s.H.kl_all()
    s.save_cache()
    lines = p.read_text().splitlines()
    # bump every nonconstant polynomial so any sampled element is wrong
    out = [lines[0]]
    for line in lines[1:]:
        head, poly = line.rsplit("|", 1)
        terms = [t.split(":") for t in poly.split(",")]
        out.append(head + "|" + ",".join(f"{e}:{int(c) + (e != '0')}" for e, c in terms))
    p.write_text("\n".join(out) + "\n")
    with pytest.raises(CacheError, match="fresh computation"):
        Session(SessionConfig("A", 1, "affine", 2, 6, "full", cache_path=str(p))).H


def test_warm_session_reuses_records(tmp_path):
    p = str(tmp_path / "k.cache")
    s = Session(SessionConfig("A", 1, "affine", 2, 6, "full", cache_path=p))
    s.schur_data
    s.save_cache()
    warm = Session(SessionConfig("A", 1, "affine", 2, 6, "full", cache_path=p))
    warm.schur_data
    assert warm.cache_loaded > 0 and warm.spot_checked > 0
    assert s.H.kl_computed > 0 and warm.H.kl_computed == 0
    assert warm.save_cache() == 0
