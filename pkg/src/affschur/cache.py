"""On-disk store of KL elements and KL structure constants, keyed by words.

File layout: a header line ``KLCACHE 1 <family><rank> <mode> <level>``, then
one line per nonzero KL polynomial ``p_{y,w}``::

    w|y|exp:coeff,exp:coeff,...

then one line per nonzero structure constant ``h_{x,y}^z``::

    h|x|y|z|exp:coeff,...

then one line per nonzero Schur structure constant ``g_{A,B}^C``::

    s|orbits|A|B|C|exp:coeff,...

where ``orbits`` names the chosen coweight set (``full`` or ``1,0;1,1``), since
the labels ``A``, ``B``, ``C`` only mean something relative to it.  Hecke
elements are written as words, Schur indices as ``g<k>:<word>:g<m>``.  Lines are sorted, so saving the same content
twice gives identical bytes.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass, field

from .weyl import BoundError

__all__ = ["CacheError", "KLCache"]

MAGIC = "KLCACHE"
VERSION = "1"


class CacheError(ValueError):
    pass


def _fmt_poly(low: int, coeffs: tuple) -> str:
    return ",".join(f"{low + i}:{c}" for i, c in enumerate(coeffs) if c)


def _parse_poly(text: str) -> tuple[int, tuple]:
    terms = {}
    for part in text.split(","):
        e, c = part.split(":")
        terms[int(e)] = int(c)
    if not terms or any(c == 0 for c in terms.values()):
        raise CacheError(f"bad polynomial field {text!r}")
    lo, hi = min(terms), max(terms)
    return lo, tuple(terms.get(e, 0) for e in range(lo, hi + 1))


def _word_key(word: str) -> tuple:
    # omega part first, then length of the Coxeter word, then the word itself
    omega, _, rest = word.partition("*") if "*" in word else ("", "", word)
    if word.startswith("w") and "*" not in word:
        omega, rest = word, "e"
    n = 0 if rest == "e" else rest.count(".") + 1
    return (n, omega, rest)


def _xi_key(text: str) -> tuple:
    gam, word, nu = text.split(":")
    return (gam, nu, _word_key(word))


def _schur_key(key: tuple[str, str, str]) -> tuple:
    return (key[0], _xi_key(key[1]), _xi_key(key[2]))


@dataclass
class KLCache:
    header: str
    entries: dict[str, dict[str, tuple[int, tuple]]] = field(default_factory=dict)
    products: dict[tuple[str, str], dict[str, tuple[int, tuple]]] = field(default_factory=dict)
    schur: dict[tuple[str, str, str], dict[str, tuple[int, tuple]]] = field(default_factory=dict)

    @staticmethod
    def make_header(datum_tag: str, mode: str, level: int | None) -> str:
        return f"{MAGIC} {VERSION} {datum_tag} {mode} {level if level is not None else '-'}"

    # io
    @classmethod
    def read(cls, path: str) -> "KLCache":
        with open(path, encoding="ascii") as f:
            lines = f.read().splitlines()
        if not lines or not lines[0].startswith(MAGIC + " "):
            raise CacheError(f"{path}: not a KL cache file")
        parts = lines[0].split()
        if len(parts) != 5 or parts[1] != VERSION:
            raise CacheError(f"{path}: unsupported cache header {lines[0]!r}")
        cache = cls(lines[0])
        for n, line in enumerate(lines[1:], start=2):
            if not line:
                continue
            fields = line.split("|")
            try:
                val = _parse_poly(fields[-1])
            except (ValueError, CacheError):
                raise CacheError(f"{path}:{n}: malformed line") from None
            if len(fields) == 3:
                cache._put(fields[0], fields[1], val)
            elif len(fields) == 5 and fields[0] == "h":
                cache._put_in(cache.products, (fields[1], fields[2]), fields[3], val)
            elif len(fields) == 6 and fields[0] == "s":
                cache._put_in(cache.schur, (fields[1], fields[2], fields[3]), fields[4], val)
            else:
                raise CacheError(f"{path}:{n}: malformed line")
        return cache

    @classmethod
    def load(cls, path: str, header: str) -> "KLCache":
        cache = cls.read(path)
        if cache.header != header:
            raise CacheError(f"cache header mismatch: file has {cache.header!r}, session expects {header!r}")
        return cache

    def dumps(self) -> str:
        out = [self.header]
        for w in sorted(self.entries, key=_word_key):
            col = self.entries[w]
            for y in sorted(col, key=_word_key):
                out.append(f"{w}|{y}|{_fmt_poly(*col[y])}")
        for x, y in sorted(self.products, key=lambda k: (_word_key(k[0]), _word_key(k[1]))):
            col = self.products[(x, y)]
            for z in sorted(col, key=_word_key):
                out.append(f"h|{x}|{y}|{z}|{_fmt_poly(*col[z])}")
        for key in sorted(self.schur, key=_schur_key):
            col = self.schur[key]
            for c in sorted(col, key=_xi_key):
                out.append(f"s|{'|'.join(key)}|{c}|{_fmt_poly(*col[c])}")
        return "\n".join(out) + "\n"

    def save(self, path: str) -> None:
        text = self.dumps()
        d = os.path.dirname(os.path.abspath(path))
        os.makedirs(d, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=d, prefix=".klcache")
        with os.fdopen(fd, "w", encoding="ascii") as f:
            f.write(text)
        os.replace(tmp, path)

    # content
    def _put(self, w: str, y: str, val: tuple[int, tuple]) -> None:
        col = self.entries.setdefault(w, {})
        old = col.get(y)
        if old is not None and old != val:
            raise CacheError(f"conflicting entries for p_{{{y},{w}}}")
        col[y] = val

    @staticmethod
    def _put_in(table: dict, key: tuple, z: str, val: tuple[int, tuple]) -> None:
        col = table.setdefault(key, {})
        old = col.get(z)
        if old is not None and old != val:
            raise CacheError(f"conflicting entries for the product {' * '.join(key)} at {z}")
        col[z] = val

    def merge(self, other: "KLCache") -> None:
        """Union with ``other``; any key present in both must agree exactly."""
        if other.header != self.header:
            raise CacheError(f"cannot merge caches with headers {self.header!r} and {other.header!r}")
        for w, col in other.entries.items():
            if w in self.entries and self.entries[w] != col:
                raise CacheError(f"conflicting KL element for {w}")
        for mine, theirs in ((self.products, other.products), (self.schur, other.schur)):
            for k, col in theirs.items():
                if k in mine and mine[k] != col:
                    raise CacheError(f"conflicting structure constants for {' * '.join(k[-2:])}")
        for w, col in other.entries.items():
            self.entries[w] = dict(col)
        for k, col in other.products.items():
            self.products[k] = dict(col)
        for k, col in other.schur.items():
            self.schur[k] = dict(col)

    def __len__(self) -> int:
        return len(self.entries)

    def polynomial_count(self) -> int:
        return sum(len(c) for c in self.entries.values())

    # exchange with a Hecke algebra
    def absorb(self, H) -> int:
        """Copy everything ``H`` has computed into the cache; returns how many records were new."""
        U = H.U
        ws = U.word_str
        new = 0
        for w, terms in H._kl.items():
            ww = ws(w)
            col = {ws(y): (c[0], tuple(c[1])) for y, c in terms.items()}
            old = self.entries.get(ww)
            if old is None:
                self.entries[ww] = col
                new += 1
            elif old != col:
                raise CacheError(f"cached KL element for {ww} disagrees with a fresh computation")
        for (x, y), terms in H._struct.items():
            key = (ws(x), ws(y))
            col = {ws(z): (c[0], tuple(c[1])) for z, c in terms.items()}
            old = self.products.get(key)
            if old is None:
                self.products[key] = col
                new += 1
            elif old != col:
                raise CacheError(f"cached product {key[0]} * {key[1]} disagrees with a fresh computation")
        return new

    def seed(self, H) -> int:
        """Load every cached record that fits in ``H``'s universe; returns the count."""
        U = H.U
        n = 0
        for ww, col in self.entries.items():
            terms = self._ids(U, [ww, *col])
            if terms is None:
                continue
            w, *ys = terms
            H.load_kl(w, dict(zip(ys, col.values())))
            n += 1
        for (xw, yw), col in self.products.items():
            terms = self._ids(U, [xw, yw, *col])
            if terms is None:
                continue
            x, y, *zs = terms
            H.load_struct(x, y, dict(zip(zs, col.values())))
            n += 1
        return n

    def absorb_schur(self, S, tag: str) -> int:
        """Copy the module-path structure constants ``S`` has computed; returns how many were new."""
        name = S.xi_str
        new = 0
        for (A, B), terms in S._gstruct.items():
            if not terms:
                continue
            key = (tag, name(A), name(B))
            col = {name(C): (c[0], tuple(c[1])) for C, c in terms.items()}
            old = self.schur.get(key)
            if old is None:
                self.schur[key] = col
                new += 1
            elif old != col:
                raise CacheError(f"cached product {key[1]} * {key[2]} disagrees with a fresh computation")
        return new

    def seed_schur(self, S, tag: str) -> int:
        n = 0
        for (t, a, b), col in self.schur.items():
            if t != tag:
                continue
            try:
                A, B, *cs = (S.parse_xi(x) for x in (a, b, *col))
            except BoundError:
                continue
            except ValueError as e:
                raise CacheError(f"cache entry mentions {a}: {e}") from None
            S.load_gstruct(A, B, dict(zip(cs, col.values())))
            n += 1
        return n

    @staticmethod
    def _ids(U, words: list[str]) -> list[int] | None:
        try:
            return [U.parse(w) for w in words]
        except BoundError:
            return None
        except ValueError as e:
            raise CacheError(f"cache entry mentions {words[0]}: {e}") from None
