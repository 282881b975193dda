import pytest

from affschur.config import CACHE_ENV, ConfigError, SessionConfig, load_config, parse_xf


def test_parse_xf():
    assert parse_xf("full") == "full"
    assert parse_xf("1,0; 1,1") == [(1, 0), (1, 1)]
    with pytest.raises(ConfigError):
        parse_xf("1,a")
    with pytest.raises(ConfigError):
        parse_xf(" ; ")


@pytest.mark.parametrize(
    "kwargs,msg",
    [
        (dict(mode="affine", level=1, xf="full"), "level"),
        (dict(mode="finite", level=2, xf=[(1, 0)]), "no level"),
        (dict(mode="finite", level=None, xf="full"), "full"),
        (dict(mode="finite", level=None, xf=[(1,)]), "coordinates"),
        (dict(mode="sideways", level=None, xf=[(1, 0)]), "mode"),
    ],
)
def test_invalid_configs(kwargs, msg):
    with pytest.raises(ConfigError, match=msg):
        SessionConfig(family="A", rank=2, length_bound=3, **kwargs)


def test_file_and_overrides(tmp_path, monkeypatch):
    monkeypatch.delenv(CACHE_ENV, raising=False)
    p = tmp_path / "c.cfg"
    p.write_text("[datum]\nfamily = a\nrank = 2\n[orbits]\nxf = 1,0 ; comment\n[session]\nlength_bound = 3\n")
    cfg = load_config(str(p))
    assert (cfg.family, cfg.rank, cfg.mode, cfg.xf, cfg.length_bound) == ("A", 2, "finite", [(1, 0)], 3)
    cfg = load_config(str(p), length_bound=5, format="text")
    assert cfg.length_bound == 5 and cfg.format == "text"
    with pytest.raises(ConfigError, match="missing"):
        load_config(None, family="A")
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(str(tmp_path / "absent.cfg"))


def test_cache_path_env_override(monkeypatch):
    monkeypatch.setenv(CACHE_ENV, "/tmp/elsewhere.cache")
    cfg = SessionConfig("A", 1, "affine", 2, 4, "full", cache_path="here.cache")
    assert cfg.cache_path == "/tmp/elsewhere.cache"
