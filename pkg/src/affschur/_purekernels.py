"""Pure-Python hot kernels.

A Laurent polynomial travels through these functions as a pair
``(low, coeffs)``: ``coeffs[k]`` is the coefficient of ``v**(low + k)``.
The tuple is trimmed (no zero at either end) and the zero polynomial is
``(0, ())``.  The compiled module ``_ckernels`` exposes the same names.
"""

from __future__ import annotations

ZERO = (0, ())


def _trim(low: int, c: list) -> tuple:
    a, b = 0, len(c)
    while a < b and c[a] == 0:
        a += 1
    while b > a and c[b - 1] == 0:
        b -= 1
    if a == b:
        return ZERO
    return (low + a, tuple(c[a:b]))


def poly_add(la: int, ca: tuple, lb: int, cb: tuple) -> tuple:
    if not ca:
        return (lb, cb) if cb else ZERO
    if not cb:
        return (la, ca)
    low = min(la, lb)
    high = max(la + len(ca), lb + len(cb))
    out = [0] * (high - low)
    off = la - low
    for k, x in enumerate(ca):
        out[off + k] = x
    off = lb - low
    for k, x in enumerate(cb):
        out[off + k] += x
    return _trim(low, out)


def poly_sub(la: int, ca: tuple, lb: int, cb: tuple) -> tuple:
    return poly_add(la, ca, lb, tuple(-x for x in cb))


def poly_mul(la: int, ca: tuple, lb: int, cb: tuple) -> tuple:
    if not ca or not cb:
        return ZERO
    out = [0] * (len(ca) + len(cb) - 1)
    for i, x in enumerate(ca):
        for j, y in enumerate(cb):
            out[i + j] += x * y
    return _trim(la + lb, out)


def poly_twist(l: int, c: tuple) -> tuple:
    """Multiply by ``v**-1 - v``."""
    if not c:
        return ZERO
    n = len(c)
    out = [0] * (n + 2)
    for k in range(n):
        out[k] += c[k]
        out[k + 2] -= c[k]
    return _trim(l - 1, out)


def _acc(out: dict, key: int, pair: tuple) -> None:
    old = out.get(key)
    if old is None:
        out[key] = pair
    else:
        s = poly_add(old[0], old[1], pair[0], pair[1])
        if s[1]:
            out[key] = s
        else:
            del out[key]


def hecke_rmul_gen(terms: dict, image, longer) -> dict:
    """Right-multiply ``sum terms[w] H_w`` by ``H_s``.

    ``terms`` maps element ids to raw polynomial pairs.  ``image[w]`` is the id
    of ``w*s`` (negative when it lies outside the enumerated range) and
    ``longer[w]`` says whether ``w*s`` is longer than ``w``.
    """
    out: dict = {}
    for w, p in terms.items():
        ws = image[w]
        if ws < 0:
            raise LookupError(w)
        _acc(out, ws, p)
        if not longer[w]:
            _acc(out, w, poly_twist(p[0], p[1]))
    return out
