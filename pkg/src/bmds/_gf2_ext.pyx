# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(2)[x] kernels.

Same signatures as ``bmds._gf2_py``.  Python ints cross the boundary as
little-endian byte strings and are worked on as uint64 word arrays.
"""
import sys

from libc.stdint cimport uint64_t
from libc.stdlib cimport calloc, free
from libc.string cimport memcpy

if sys.byteorder != "little":
    raise ImportError("compiled kernels assume a little-endian host")

cdef extern from *:
    int __builtin_clzll(unsigned long long x) nogil


cdef inline Py_ssize_t _nwords(object a):
    return (a.bit_length() + 63) >> 6


cdef uint64_t* _load(object a, Py_ssize_t cap) except NULL:
    cdef uint64_t* w = <uint64_t*>calloc(cap if cap > 0 else 1, 8)
    if w == NULL:
        raise MemoryError()
    cdef Py_ssize_t nb = (a.bit_length() + 7) >> 3
    cdef bytes raw
    if nb:
        raw = a.to_bytes(nb, "little")
        memcpy(w, <char*>raw, nb)
    return w


cdef object _store(uint64_t* w, Py_ssize_t nw):
    while nw > 0 and w[nw - 1] == 0:
        nw -= 1
    if nw == 0:
        return 0
    return int.from_bytes((<char*>w)[:nw * 8], "little")


cdef inline Py_ssize_t _bitlen(uint64_t* w, Py_ssize_t nw) nogil:
    while nw > 0 and w[nw - 1] == 0:
        nw -= 1
    if nw == 0:
        return 0
    return (nw - 1) * 64 + 64 - __builtin_clzll(w[nw - 1])


cdef inline void _xor_shifted(uint64_t* dst, const uint64_t* src,
                              Py_ssize_t ns, Py_ssize_t shift) nogil:
    # dst ^= src << shift; dst needs ns + shift/64 + 1 words
    cdef Py_ssize_t ws = shift >> 6
    cdef int bs = shift & 63
    cdef Py_ssize_t i
    if bs == 0:
        for i in range(ns):
            dst[i + ws] ^= src[i]
    else:
        for i in range(ns):
            dst[i + ws] ^= src[i] << bs
            dst[i + ws + 1] ^= src[i] >> (64 - bs)


def clmul(a, b):
    if a == 0 or b == 0:
        return 0
    if a.bit_length() < b.bit_length():
        a, b = b, a
    cdef Py_ssize_t na = _nwords(a), nb = _nwords(b)
    cdef Py_ssize_t tw = na + 1
    cdef uint64_t* wa = _load(a, na)
    cdef uint64_t* wb = _load(b, nb)
    cdef uint64_t* table = <uint64_t*>calloc(16 * tw, 8)
    cdef uint64_t* r = <uint64_t*>calloc(na + nb + 1, 8)
    cdef Py_ssize_t i, j, k
    cdef int nib
    cdef uint64_t word
    try:
        if table == NULL or r == NULL:
            raise MemoryError()
        # table[k] = a * k for every 4-bit k
        for k in range(1, 16):
            for j in range(4):
                if (k >> j) & 1:
                    _xor_shifted(table + k * tw, wa, na, j)
        with nogil:
            for i in range(nb):
                word = wb[i]
                for nib in range(16):
                    k = (word >> (4 * nib)) & 15
                    if k:
                        _xor_shifted(r, table + k * tw, tw, i * 64 + 4 * nib)
        return _store(r, na + nb + 1)
    finally:
        free(wa)
        free(wb)
        free(table)
        free(r)


def polymod(a, m):
    if m == 0:
        raise ZeroDivisionError("polynomial modulus is zero")
    cdef Py_ssize_t dm = m.bit_length()
    if a.bit_length() < dm:
        return a
    cdef Py_ssize_t na = _nwords(a), nm = _nwords(m)
    cdef uint64_t* wa = _load(a, na + 1)
    cdef uint64_t* wm = _load(m, nm)
    cdef Py_ssize_t da
    try:
        with nogil:
            da = _bitlen(wa, na)
            while da >= dm:
                _xor_shifted(wa, wm, nm, da - dm)
                da = _bitlen(wa, (da + 63) >> 6)
        return _store(wa, na)
    finally:
        free(wa)
        free(wm)


def polydivmod(a, m):
    if m == 0:
        raise ZeroDivisionError("polynomial modulus is zero")
    cdef Py_ssize_t dm = m.bit_length()
    if a.bit_length() < dm:
        return 0, a
    cdef Py_ssize_t na = _nwords(a), nm = _nwords(m)
    cdef uint64_t* wa = _load(a, na + 1)
    cdef uint64_t* wm = _load(m, nm)
    cdef uint64_t* wq = <uint64_t*>calloc(na + 1, 8)
    cdef Py_ssize_t da, s
    try:
        if wq == NULL:
            raise MemoryError()
        with nogil:
            da = _bitlen(wa, na)
            while da >= dm:
                s = da - dm
                wq[s >> 6] |= (<uint64_t>1) << (s & 63)
                _xor_shifted(wa, wm, nm, s)
                da = _bitlen(wa, (da + 63) >> 6)
        return _store(wq, na + 1), _store(wa, na)
    finally:
        free(wa)
        free(wm)
        free(wq)


def cycmul(a, b, n):
    r = clmul(a, b)
    return (r & ((1 << n) - 1)) ^ (r >> n)


def polygcd(a, b):
    if a == 0 or b == 0:
        return a | b
    cdef Py_ssize_t nw = max(_nwords(a), _nwords(b)) + 1
    cdef uint64_t* u = _load(a, nw)
    cdef uint64_t* v = _load(b, nw)
    cdef Py_ssize_t du, dv
    try:
        with nogil:
            du = _bitlen(u, nw)
            dv = _bitlen(v, nw)
            while du and dv:
                if du >= dv:
                    _xor_shifted(u, v, (dv + 63) >> 6, du - dv)
                    du = _bitlen(u, (du + 63) >> 6)
                else:
                    _xor_shifted(v, u, (du + 63) >> 6, dv - du)
                    dv = _bitlen(v, (dv + 63) >> 6)
        return _store(u, nw) if du else _store(v, nw)
    finally:
        free(u)
        free(v)


def polyinv(a, m):
    """Inverse of a modulo m, or 0 when gcd(a, m) != 1."""
    a = polymod(a, m)
    if a == 0:
        return 0
    cdef Py_ssize_t nw = _nwords(m) + 2
    cdef uint64_t* u = _load(a, nw)
    cdef uint64_t* v = _load(m, nw)
    cdef uint64_t* g1 = <uint64_t*>calloc(nw, 8)
    cdef uint64_t* g2 = <uint64_t*>calloc(nw, 8)
    cdef uint64_t* tmp
    cdef Py_ssize_t du, dv, j, t
    cdef bint ok = True
    try:
        if g1 == NULL or g2 == NULL:
            raise MemoryError()
        g1[0] = 1
        with nogil:
            du = _bitlen(u, nw)
            dv = _bitlen(v, nw)
            while du != 1:
                if du == 0:
                    ok = False
                    break
                j = du - dv
                if j < 0:
                    tmp = u; u = v; v = tmp
                    tmp = g1; g1 = g2; g2 = tmp
                    t = du; du = dv; dv = t
                    j = -j
                _xor_shifted(u, v, (dv + 63) >> 6, j)
                # deg(g2) + j < deg(m), so nw words suffice
                _xor_shifted(g1, g2, (_bitlen(g2, nw) + 63) >> 6, j)
                du = _bitlen(u, (du + 63) >> 6)
        if not ok:
            return 0
        return polymod(_store(g1, nw), m)
    finally:
        free(u)
        free(v)
        free(g1)
        free(g2)
