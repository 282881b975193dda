"""Lazily built objects for one configuration, plus the KL cache lifecycle."""

from __future__ import annotations

import logging
import os
import random
from functools import cached_property

from .cache import CacheError, KLCache
from .cells import CellPartition, HeckeData, SchurData, hecke_cells, schur_cells
from .config import SessionConfig
from .hecke import HeckeAlgebra
from .rootdatum import build_root_datum
from .schur import SchurAlgebra
from .weyl import WeylUniverse, orbit_table

__all__ = ["Session"]

log = logging.getLogger(__name__)

SPOT_CHECKS = 8


class Session:
    def __init__(self, cfg: SessionConfig):
        self.cfg = cfg
        self._cells: dict[tuple[str, str], CellPartition] = {}
        self.cache: KLCache | None = None
        self.cache_loaded = 0
        self.spot_checked = 0

    @cached_property
    def datum(self):
        return build_root_datum(self.cfg.family, self.cfg.rank)

    @cached_property
    def U(self) -> WeylUniverse:
        return WeylUniverse(self.datum, self.cfg.mode, self.cfg.length_bound)

    @cached_property
    def H(self) -> HeckeAlgebra:
        H = HeckeAlgebra(self.U)
        if self.cfg.cache_path:
            self._open_cache(H)
        return H

    @cached_property
    def table(self):
        return orbit_table(self.U, self.cfg.level, self.cfg.xf)

    @cached_property
    def S(self) -> SchurAlgebra:
        S = SchurAlgebra(self.H, self.table)
        if self.cache is not None:
            n = self.cache.seed_schur(S, self.orbit_tag)
            self.cache_loaded += n
            if n:
                self._spot_check_schur(S)
        return S

    @property
    def orbit_tag(self) -> str:
        xf = self.cfg.xf
        return xf if xf == "full" else ";".join(",".join(map(str, p)) for p in xf)

    @cached_property
    def hecke_data(self) -> HeckeData:
        return HeckeData(self.H)

    @cached_property
    def schur_data(self) -> SchurData:
        return SchurData(self.S, self.hecke_data)

    def cells(self, carrier: str, kind: str) -> CellPartition:
        key = (carrier, kind)
        if key not in self._cells:
            if carrier == "hecke":
                self._cells[key] = hecke_cells(self.H, kind)
            elif carrier == "schur":
                self._cells[key] = schur_cells(self.S, kind)
            else:
                raise ValueError(f"unknown carrier {carrier!r}")
        return self._cells[key]

    # cache
    @property
    def cache_header(self) -> str:
        return KLCache.make_header(self.cfg.datum_tag, self.cfg.mode, self.cfg.level)

    def _open_cache(self, H: HeckeAlgebra) -> None:
        path = self.cfg.cache_path
        if os.path.exists(path):
            self.cache = KLCache.load(path, self.cache_header)
            self.cache_loaded = self.cache.seed(H)
            self._spot_check(H)
        else:
            self.cache = KLCache(self.cache_header)

    def _spot_check(self, H: HeckeAlgebra) -> None:
        """Re-derive a few cached KL elements and products from scratch and compare."""
        loaded = sorted(H._kl)
        products = sorted(H._struct)
        rng = random.Random(len(loaded) + len(products))
        fresh = HeckeAlgebra(self.U)
        ws = self.U.word_str
        for w in rng.sample(loaded, min(SPOT_CHECKS, len(loaded))):
            if fresh.kl_terms(w) != H._kl[w]:
                raise CacheError(f"cached KL element for {ws(w)} does not match a fresh computation")
            self.spot_checked += 1
        for x, y in rng.sample(products, min(SPOT_CHECKS, len(products))):
            if fresh.struct(x, y) != H._struct[(x, y)]:
                raise CacheError(f"cached product {ws(x)} * {ws(y)} does not match a fresh computation")
            self.spot_checked += 1

    def _spot_check_schur(self, S: SchurAlgebra) -> None:
        loaded = sorted(S._gstruct)
        rng = random.Random(len(loaded))
        fresh = SchurAlgebra(HeckeAlgebra(self.U), self.table)
        for A, B in rng.sample(loaded, min(SPOT_CHECKS, len(loaded))):
            if fresh.gstruct(A, B) != S._gstruct[(A, B)]:
                raise CacheError(f"cached product {S.xi_str(A)} * {S.xi_str(B)} does not match a fresh computation")
            self.spot_checked += 1

    def save_cache(self) -> int:
        """Write the cache back if this session derived anything new."""
        if self.cache is None or "H" not in self.__dict__:
            return 0
        new = self.cache.absorb(self.H)
        if "S" in self.__dict__:
            new += self.cache.absorb_schur(self.S, self.orbit_tag)
        if new or not os.path.exists(self.cfg.cache_path):
            self.cache.save(self.cfg.cache_path)
            log.info("saved %d new cache records to %s", new, self.cfg.cache_path)
        return new
