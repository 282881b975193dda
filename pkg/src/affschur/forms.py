"""The two bilinear forms: one on the Schur algebra, one on Hecke bimodules."""

from __future__ import annotations

from typing import Iterable

from .hecke import HeckeElt
from .laurent import DivisionError, LaurentPoly
from .schur import SchurAlgebra, SchurElt, pi_J

__all__ = ["trace_pair", "std_norm", "inner_schur", "inner_williamson", "inner_canon_direct"]


def trace_pair(a: HeckeElt, b: HeckeElt, inverse: list[int]) -> LaurentPoly:
    """Coefficient of ``H_1`` in ``a * b``: ``sum_x a_x b_{x^-1}``."""
    total = LaurentPoly.zero()
    small, big, flip = (a, b, False) if len(a.terms) <= len(b.terms) else (b, a, True)
    for x, p in small.terms.items():
        q = big.terms.get(inverse[x])
        if q:
            total = total + LaurentPoly._raw(p) * LaurentPoly._raw(q)
    return total


def _identity_coeff(S: SchurAlgebra, first: int, second: int) -> LaurentPoly:
    """Coefficient of ``[(nu,1,nu)]`` in ``[first][second]`` without forming the product.

    The product's value on ``x_nu`` is ``E_first * h`` with ``E_second = x_mu h``;
    its ``H_1`` coefficient is a trace, then rescaled to a standard coordinate.
    """
    b = S.xi[second]
    mu = b.gamma
    h = {s: (c.low, c.coeffs) for s, c in S.modules[mu].coords(S.std_image(second)).items()}
    t = trace_pair(S.std_image(first), HeckeElt._wrap(h), S.U.inverse)
    return t.shift(-S.wlen[b.nu])


def std_norm(S: SchurAlgebra, pos: int) -> LaurentPoly:
    """``([C],[C]) = v^{d_{C^t} - d_C} f_{C^t,C}^{(nu,1,nu)}``."""
    t = S.transpose[pos]
    f = _identity_coeff(S, t, pos)
    return f.shift(S.d(t) - S.d(pos))


def inner_schur(S: SchurAlgebra, a: SchurElt, b: SchurElt) -> LaurentPoly:
    total = LaurentPoly.zero()
    for k, p in a.terms.items():
        q = b.terms.get(k)
        if q:
            total = total + LaurentPoly._raw(p) * LaurentPoly._raw(q) * std_norm(S, k)
    return total


def inner_canon_direct(S: SchurAlgebra, pos: int, other: int) -> LaurentPoly:
    """``({C},{C'})`` through the standard expansions."""
    return inner_schur(S, S.canon_std(pos), S.canon_std(other))


def inner_williamson(S_or_H, h: HeckeElt, g: HeckeElt, I: Iterable[int], J: Iterable[int]) -> LaurentPoly:
    """``H_1``-coefficient of ``h * i(g)`` divided by ``v^{l(w_J)} pi(J)``.

    ``i`` sends ``H_x`` to ``H_{x^-1}``, so the ``H_1`` coefficient is
    ``sum_x h_x g_x``.  The divisor is exact for inputs in the right bimodule.
    """
    U = S_or_H.U
    J = frozenset(J)
    total = LaurentPoly.zero()
    for x, p in h.terms.items():
        q = g.terms.get(x)
        if q:
            total = total + LaurentPoly._raw(p) * LaurentPoly._raw(q)
    P = U.parabolic(J)
    divisor = pi_J(U, J).shift(P.longest_length)
    try:
        return total.exact_div(divisor)
    except DivisionError:
        raise ValueError("inputs are not in the parabolic bimodule: division left a remainder") from None
