# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the kernels in ``_purekernels``.

Coefficients are multiplied in 64-bit machine integers whenever the
magnitudes make overflow impossible; otherwise the Python-int path is used.
"""

from libc.stdlib cimport malloc, free

ZERO = (0, ())

cdef long long _SAFE = 1LL << 62


cdef tuple _trim_obj(long low, list c):
    cdef Py_ssize_t a = 0, b = len(c)
    while a < b and c[a] == 0:
        a += 1
    while b > a and c[b - 1] == 0:
        b -= 1
    if a == b:
        return ZERO
    return (low + a, tuple(c[a:b]))


cdef object _maxabs(tuple c):
    cdef object m = 0
    for x in c:
        if x < 0:
            x = -x
        if x > m:
            m = x
    return m


def poly_add(long la, tuple ca, long lb, tuple cb):
    if not ca:
        return (lb, cb) if cb else ZERO
    if not cb:
        return (la, ca)
    cdef long low = la if la < lb else lb
    cdef long ha = la + len(ca)
    cdef long hb = lb + len(cb)
    cdef long high = ha if ha > hb else hb
    cdef list out = [0] * (high - low)
    cdef Py_ssize_t k
    cdef long off = la - low
    for k in range(len(ca)):
        out[off + k] = ca[k]
    off = lb - low
    for k in range(len(cb)):
        out[off + k] = out[off + k] + cb[k]
    return _trim_obj(low, out)


def poly_sub(long la, tuple ca, long lb, tuple cb):
    return poly_add(la, ca, lb, tuple([-x for x in cb]))


def poly_mul(long la, tuple ca, long lb, tuple cb):
    if not ca or not cb:
        return ZERO
    cdef Py_ssize_t na = len(ca), nb = len(cb), n = na + nb - 1
    cdef Py_ssize_t i, j
    cdef object ma = _maxabs(ca)
    cdef object mb = _maxabs(cb)
    cdef list out
    cdef long long *a
    cdef long long *b
    cdef long long *r
    if ma * mb * (na if na < nb else nb) < _SAFE:
        a = <long long *> malloc(na * sizeof(long long))
        b = <long long *> malloc(nb * sizeof(long long))
        r = <long long *> malloc(n * sizeof(long long))
        try:
            for i in range(na):
                a[i] = ca[i]
            for j in range(nb):
                b[j] = cb[j]
            for i in range(n):
                r[i] = 0
            for i in range(na):
                if a[i] == 0:
                    continue
                for j in range(nb):
                    r[i + j] += a[i] * b[j]
            out = [r[i] for i in range(n)]
        finally:
            free(a)
            free(b)
            free(r)
        return _trim_obj(la + lb, out)
    out = [0] * n
    for i in range(na):
        x = ca[i]
        for j in range(nb):
            out[i + j] = out[i + j] + x * cb[j]
    return _trim_obj(la + lb, out)


def poly_twist(long l, tuple c):
    if not c:
        return ZERO
    cdef Py_ssize_t n = len(c), k
    cdef list out = [0] * (n + 2)
    for k in range(n):
        out[k] = out[k] + c[k]
        out[k + 2] = out[k + 2] - c[k]
    return _trim_obj(l - 1, out)


cdef inline void _acc(dict out, object key, tuple pair):
    old = out.get(key)
    if old is None:
        out[key] = pair
        return
    s = poly_add(old[0], old[1], pair[0], pair[1])
    if s[1]:
        out[key] = s
    else:
        del out[key]


def hecke_rmul_gen(dict terms, image, longer):
    cdef dict out = {}
    cdef long ws
    for w, p in terms.items():
        ws = image[w]
        if ws < 0:
            raise LookupError(w)
        _acc(out, ws, p)
        if not longer[w]:
            _acc(out, w, poly_twist(p[0], p[1]))
    return out
