"""Exact Laurent polynomials in one variable ``v`` with integer coefficients.

>>> v = LaurentPoly.v()
>>> (v + 1) * (v - 1)
LaurentPoly('v^2 - 1')
>>> (v + v.bar()).bar() == v + v.bar()
True
>>> LaurentPoly.from_pairs([[-1, 1], [1, 1]]).classify().lowest_exponent
-1
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from . import kernels as K

__all__ = ["LaurentPoly", "Classification", "ExponentRangeError", "DivisionError", "v_power"]

EXP_LIMIT = 1 << 30


class ExponentRangeError(ValueError):
    """An exponent left the supported range ``|e| <= 2**30``."""


class DivisionError(ArithmeticError):
    """Exact division left a nonzero remainder."""


@dataclass(frozen=True)
class Classification:
    lowest_exponent: int | None
    lowest_coeff: int
    in_N_of_v: bool
    in_Z_of_v: bool
    in_v_N_of_v: bool
    is_zero: bool = False


_ZERO_CLASS = Classification(None, 0, True, True, True, True)


class LaurentPoly:
    """Immutable element of Z[v, v^-1] in trimmed dense form."""

    __slots__ = ("low", "coeffs", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        if not terms:
            self.low, self.coeffs = 0, ()
        else:
            lo, hi = min(terms), max(terms)
            dense = [0] * (hi - lo + 1)
            for e, c in terms.items():
                dense[e - lo] += int(c)
            self.low, self.coeffs = _trim(lo, dense)
        self._hash = None
        self._guard()

    @classmethod
    def _raw(cls, pair: tuple) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.low, obj.coeffs = pair
        obj._hash = None
        if obj.coeffs and (obj.low < -EXP_LIMIT or obj.low + len(obj.coeffs) - 1 > EXP_LIMIT):
            raise ExponentRangeError(f"exponent outside +-2^30: {obj.low}")
        return obj

    def _guard(self) -> None:
        if self.coeffs and (self.low < -EXP_LIMIT or self.low + len(self.coeffs) - 1 > EXP_LIMIT):
            raise ExponentRangeError(f"exponent outside +-2^30: {self.low}")

    # constructors
    @classmethod
    def zero(cls) -> "LaurentPoly":
        return _ZERO

    @classmethod
    def one(cls) -> "LaurentPoly":
        return _ONE

    @classmethod
    def v(cls) -> "LaurentPoly":
        return v_power(1)

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls._raw((0, (c,))) if c else _ZERO

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls._raw((e, (c,))) if c else _ZERO

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in pairs})

    # views
    def terms(self) -> dict[int, int]:
        return {self.low + k: c for k, c in enumerate(self.coeffs) if c}

    def to_pairs(self) -> list[list[int]]:
        return [[self.low + k, c] for k, c in enumerate(self.coeffs) if c]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def high(self) -> int:
        return self.low + len(self.coeffs) - 1

    def coeff(self, e: int) -> int:
        k = e - self.low
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    # arithmetic
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly._raw(K.poly_add(self.low, self.coeffs, other.low, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly._raw(K.poly_sub(self.low, self.coeffs, other.low, other.coeffs))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return LaurentPoly._raw((self.low, tuple(-c for c in self.coeffs)) if self.coeffs else (0, ()))

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0 or not self.coeffs:
                return _ZERO
            return LaurentPoly._raw((self.low, tuple(c * other for c in self.coeffs)))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly._raw(K.poly_mul(self.low, self.coeffs, other.low, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.coeffs) == 1 and self.coeffs[0] in (1, -1):
                return LaurentPoly.monomial(self.low * k, self.coeffs[0] ** (-k))
            raise DivisionError("only monomial units can be inverted")
        out = _ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``v**k``."""
        if not self.coeffs:
            return self
        return LaurentPoly._raw((self.low + k, self.coeffs))

    def twist(self) -> "LaurentPoly":
        """Multiply by ``v^-1 - v``."""
        return LaurentPoly._raw(K.poly_twist(self.low, self.coeffs))

    def bar(self) -> "LaurentPoly":
        if not self.coeffs:
            return self
        return LaurentPoly._raw((-self.high, tuple(reversed(self.coeffs))))

    def divmod(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """Long division from the top degree down; the quotient keeps only
        exponents not below ``self.low - other.low``."""
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.coeffs:
            return _ZERO, _ZERO
        lead = other.coeffs[-1]
        rem = list(self.coeffs)
        q: dict[int, int] = {}
        m = len(other.coeffs)
        for top in range(len(rem) - 1, m - 2, -1):
            c = rem[top]
            if c == 0:
                continue
            if c % lead:
                break
            f = c // lead
            shift = top - (m - 1)
            q[self.low + shift - other.low] = f
            for k, oc in enumerate(other.coeffs):
                rem[shift + k] -= f * oc
        return LaurentPoly(q), LaurentPoly._raw(_trim(self.low, rem))

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        q, r = self.divmod(other)
        if r:
            raise DivisionError(f"{self} is not divisible by {other}")
        return q

    # predicates
    def classify(self) -> Classification:
        if not self.coeffs:
            return _ZERO_CLASS
        nonneg = all(c >= 0 for c in self.coeffs)
        return Classification(
            lowest_exponent=self.low,
            lowest_coeff=self.coeffs[0],
            in_N_of_v=nonneg and self.low >= 0,
            in_Z_of_v=self.low >= 0,
            in_v_N_of_v=nonneg and self.low >= 1,
        )

    def is_bar_invariant(self) -> bool:
        return self == self.bar()

    def has_nonneg_coeffs(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    # dunder plumbing
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.low == other.low and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.low, self.coeffs))
        return self._hash

    def __reduce__(self):
        return (LaurentPoly.from_pairs, (self.to_pairs(),))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for e in range(self.high, self.low - 1, -1):
            c = self.coeff(e)
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                mono = "v" if e == 1 else f"v^{e}"
                body = mono if a == 1 else f"{a}{mono}"
            parts.append(f"{sign} {body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"LaurentPoly('{self}')"


def _trim(low: int, c: list) -> tuple:
    a, b = 0, len(c)
    while a < b and c[a] == 0:
        a += 1
    while b > a and c[b - 1] == 0:
        b -= 1
    if a == b:
        return (0, ())
    return (low + a, tuple(c[a:b]))


_ZERO = LaurentPoly()
_ONE = LaurentPoly._raw((0, (1,)))


def v_power(e: int, c: int = 1) -> LaurentPoly:
    return LaurentPoly.monomial(e, c)
