"""Pure-Python GF(2)[x] kernels.

Polynomials are Python ints: bit i holds the coefficient of x^i.  This module
is the reference backend and the fallback when the compiled extension is not
built.  Every function here has a twin with the same signature in
``_gf2_ext.pyx``.
"""


def clmul(a: int, b: int) -> int:
    """Carry-less product of two polynomials."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    i = 0
    while b:
        if b & 1:
            r ^= a << i
        b >>= 1
        i += 1
    return r


def cycmul(a: int, b: int, n: int) -> int:
    """Product modulo 1 + x^n, with a and b of degree < n."""
    r = clmul(a, b)
    mask = (1 << n) - 1
    return (r & mask) ^ (r >> n)


def polymod(a: int, m: int) -> int:
    if m == 0:
        raise ZeroDivisionError("polynomial modulus is zero")
    dm = m.bit_length()
    da = a.bit_length()
    while da >= dm:
        a ^= m << (da - dm)
        da = a.bit_length()
    return a


def polydivmod(a: int, m: int) -> tuple[int, int]:
    if m == 0:
        raise ZeroDivisionError("polynomial modulus is zero")
    dm = m.bit_length()
    q = 0
    da = a.bit_length()
    while da >= dm:
        s = da - dm
        q |= 1 << s
        a ^= m << s
        da = a.bit_length()
    return q, a


def polygcd(a: int, b: int) -> int:
    while a and b:
        da = a.bit_length()
        db = b.bit_length()
        if da >= db:
            a ^= b << (da - db)
        else:
            b ^= a << (db - da)
    return a | b


def polyinv(a: int, m: int) -> int:
    """Inverse of a modulo m, or 0 when gcd(a, m) != 1."""
    u = polymod(a, m)
    v = m
    g1, g2 = 1, 0
    while u != 1:
        if u == 0:
            return 0
        j = u.bit_length() - v.bit_length()
        if j < 0:
            u, v = v, u
            g1, g2 = g2, g1
            j = -j
        u ^= v << j
        g1 ^= g2 << j
    return polymod(g1, m)
