"""Session configuration: an INI file plus command-line overrides.

Grammar::

    [datum]
    family = A          ; A, B, C, D, G (whatever the root datum builder accepts)
    rank = 2
    mode = finite       ; finite | affine

    [orbits]
    level = 2           ; affine only, n >= 2
    xf = 1,0; 1,1       ; semicolon separated coweights, or "full" (affine only)

    [session]
    length_bound = 3
    cache_path = kl.cache   ; optional, AFFSCHUR_CACHE_PATH overrides it
    format = json           ; json | text
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass

__all__ = ["ConfigError", "SessionConfig", "load_config", "parse_xf"]

CACHE_ENV = "AFFSCHUR_CACHE_PATH"


class ConfigError(ValueError):
    pass


def parse_xf(text: str) -> str | list[tuple[int, ...]]:
    text = text.strip()
    if text == "full":
        return "full"
    pts = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            pts.append(tuple(int(x) for x in chunk.split(",")))
        except ValueError:
            raise ConfigError(f"bad coweight {chunk!r} in xf") from None
    if not pts:
        raise ConfigError("xf lists no coweights")
    return pts


@dataclass
class SessionConfig:
    family: str
    rank: int
    mode: str
    level: int | None
    length_bound: int
    xf: str | list[tuple[int, ...]]
    cache_path: str | None = None
    format: str = "json"

    def __post_init__(self):
        self.family = self.family.upper()
        if self.mode not in ("finite", "affine"):
            raise ConfigError(f"mode must be finite or affine, not {self.mode!r}")
        if self.mode == "affine":
            if self.level is None or self.level < 2:
                raise ConfigError("affine mode needs level >= 2")
        elif self.level is not None:
            raise ConfigError("finite mode takes no level")
        if self.xf == "full" and self.mode == "finite":
            raise ConfigError('xf = full needs affine mode; list coweights instead')
        if self.length_bound < 0:
            raise ConfigError("length_bound must be nonnegative")
        if self.format not in ("json", "text"):
            raise ConfigError(f"format must be json or text, not {self.format!r}")
        if self.xf != "full":
            for p in self.xf:
                if len(p) != self.rank:
                    raise ConfigError(f"coweight {list(p)} does not have {self.rank} coordinates")
        env = os.environ.get(CACHE_ENV)
        if env:
            self.cache_path = env

    @property
    def datum_tag(self) -> str:
        return f"{self.family}{self.rank}"

    def describe(self) -> dict:
        return {
            "datum": self.datum_tag,
            "mode": self.mode,
            "level": self.level,
            "length_bound": self.length_bound,
            "xf": self.xf if self.xf == "full" else [list(p) for p in self.xf],
        }


def load_config(path: str | None, **overrides) -> SessionConfig:
    """Read ``path`` (if given) and apply non-None keyword overrides."""
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    if path is not None:
        if not cp.read(path):
            raise ConfigError(f"cannot read config file {path}")
    get = lambda sec, key: cp.get(sec, key, fallback=None)  # noqa: E731
    raw = {
        "family": get("datum", "family"),
        "rank": get("datum", "rank"),
        "mode": get("datum", "mode") or "finite",
        "level": get("orbits", "level"),
        "xf": get("orbits", "xf"),
        "length_bound": get("session", "length_bound"),
        "cache_path": get("session", "cache_path"),
        "format": get("session", "format") or "json",
    }
    for k, v in overrides.items():
        if v is not None:
            raw[k] = v
    missing = [k for k in ("family", "rank", "xf", "length_bound") if raw[k] is None]
    if missing:
        raise ConfigError("missing settings: " + ", ".join(missing))
    try:
        rank = int(raw["rank"])
        bound = int(raw["length_bound"])
        level = None if raw["level"] in (None, "") else int(raw["level"])
    except ValueError as e:
        raise ConfigError(str(e)) from None
    xf = raw["xf"] if not isinstance(raw["xf"], str) else parse_xf(raw["xf"])
    return SessionConfig(
        family=raw["family"],
        rank=rank,
        mode=raw["mode"],
        level=level,
        length_bound=bound,
        xf=xf,
        cache_path=raw["cache_path"],
        format=raw["format"],
    )
