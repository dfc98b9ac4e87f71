"""Arithmetic in R = F2[x]/(1 + x^(p*tau)) and its ideal C of multiples of 1 + x^tau.

A ring element is a bit-vector of exactly p*tau coefficients held in a Python
int, bit l being the coefficient of x^l.  Multiplying by x is a cyclic shift.
C is isomorphic to F2[x]/(h(x)) with h(x) = 1 + x^tau + ... + x^((p-1)tau),
and e(x) = 1 + h(x) is its multiplicative identity.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

from . import gf2
from .errors import DimensionError, DomainError, NotInvertibleError


@dataclass(frozen=True)
class RingElement:
    coeffs: int
    n: int

    def __post_init__(self):
        if self.n <= 0:
            raise DimensionError(f"modulus length must be positive, got {self.n}")
        if self.coeffs < 0 or self.coeffs >> self.n:
            raise DimensionError(f"coefficients do not fit in {self.n} bits")

    @classmethod
    def zero(cls, n: int) -> RingElement:
        return cls(0, n)

    @classmethod
    def monomial(cls, e: int, n: int) -> RingElement:
        return cls(1 << (e % n), n)

    @classmethod
    def from_exponents(cls, exponents, n: int) -> RingElement:
        v = 0
        for e in exponents:
            v ^= 1 << (e % n)
        return cls(v, n)

    def coeff(self, i: int) -> int:
        return (self.coeffs >> (i % self.n)) & 1

    def exponents(self) -> list[int]:
        return [i for i in range(self.n) if (self.coeffs >> i) & 1]

    def weight(self) -> int:
        return bin(self.coeffs).count("1")

    def __bool__(self):
        return self.coeffs != 0

    def __add__(self, other: RingElement) -> RingElement:
        return add(self, other)

    __xor__ = __add__

    def __mul__(self, other: RingElement) -> RingElement:
        return mul(self, other)

    def __repr__(self):
        terms = ["1" if e == 0 else ("x" if e == 1 else f"x^{e}") for e in self.exponents()]
        return f"RingElement({' + '.join(terms) or '0'} mod 1+x^{self.n})"


@dataclass(frozen=True)
class RingContext:
    p: int
    tau: int

    def __post_init__(self):
        if self.p < 2 or self.tau < 1:
            raise DimensionError(f"need p >= 2 and tau >= 1, got p={self.p}, tau={self.tau}")

    @property
    def n(self) -> int:
        return self.p * self.tau

    @property
    def stored_bits(self) -> int:
        return (self.p - 1) * self.tau

    @cached_property
    def h_poly(self) -> int:
        v = 0
        for i in range(self.p):
            v |= 1 << (i * self.tau)
        return v

    @cached_property
    def h(self) -> RingElement:
        return RingElement(self.h_poly, self.n)

    @cached_property
    def e(self) -> RingElement:
        return RingElement(self.h_poly ^ 1, self.n)

    @property
    def check_poly(self) -> RingElement:
        return self.h

    @property
    def identity(self) -> RingElement:
        return self.e

    def element(self, coeffs: int) -> RingElement:
        return RingElement(coeffs, self.n)


@dataclass
class XorCounter:
    """Opt-in tally of bit XORs performed by an instrumented routine."""

    count: int = 0


def _check_same(a: RingElement, b: RingElement):
    if a.n != b.n:
        raise DimensionError(f"ring elements have different lengths ({a.n} vs {b.n})")


def add(a: RingElement, b: RingElement) -> RingElement:
    _check_same(a, b)
    return RingElement(a.coeffs ^ b.coeffs, a.n)


def mul(a: RingElement, b: RingElement) -> RingElement:
    _check_same(a, b)
    return RingElement(gf2.cycmul(a.coeffs, b.coeffs, a.n), a.n)


def rotate(v: int, e: int, n: int) -> int:
    """Cyclic left rotation of an n-bit vector by e positions."""
    e %= n
    if e == 0:
        return v
    return ((v << e) | (v >> (n - e))) & ((1 << n) - 1)


def shift(a: RingElement, e: int) -> RingElement:
    """Multiply by x^e, i.e. move coefficient l to (l + e) mod n."""
    return RingElement(rotate(a.coeffs, e, a.n), a.n)


def fold(v: int, tau: int, chunks: int) -> int:
    """XOR of the first `chunks` consecutive tau-bit chunks of v."""
    mask = (1 << tau) - 1
    acc = 0
    for i in range(chunks):
        acc ^= (v >> (i * tau)) & mask
    return acc


def in_ideal(a: RingElement, ctx: RingContext) -> bool:
    if a.n != ctx.n:
        raise DimensionError(f"element length {a.n} does not match ring length {ctx.n}")
    return fold(a.coeffs, ctx.tau, ctx.p) == 0


def theta(a: RingElement, ctx: RingContext) -> tuple[int, int]:
    """CRT split of a into (a mod 1 + x^tau, a mod h(x)), both as plain polynomials."""
    if a.n != ctx.n:
        raise DimensionError(f"element length {a.n} does not match ring length {ctx.n}")
    # x^tau == 1 mod 1 + x^tau, so the first residue is the chunk fold
    return fold(a.coeffs, ctx.tau, ctx.p), gf2.polymod(a.coeffs, ctx.h_poly)


def phi(a: int, b: int, ctx: RingContext) -> RingElement:
    """Inverse of theta: (a*h + b*e) mod 1 + x^(p*tau)."""
    if a.bit_length() > ctx.tau or b.bit_length() > ctx.stored_bits:
        raise DimensionError("residue degree out of range")
    n = ctx.n
    v = gf2.cycmul(a, ctx.h_poly, n) ^ gf2.cycmul(b, ctx.h_poly ^ 1, n)
    return RingElement(v, n)


def _binomial_check(b: int, ctx: RingContext) -> int:
    if not 1 <= b < ctx.n:
        raise NotInvertibleError(f"binomial exponent must satisfy 1 <= b < {ctx.n}, got {b}")
    if gcd(b, ctx.p) != 1:
        raise NotInvertibleError(f"1 + x^{b} is not e(x)-invertible: gcd({b}, {ctx.p}) != 1")
    return gcd(b, ctx.tau)


def _inverse_indices(a: int, ctx: RingContext) -> list[int]:
    # i over [m*tau/a, (m+1)*tau/a) for odd m = 1, 3, ..., p-2
    step = ctx.tau // a
    out = []
    for m in range(1, ctx.p - 1, 2):
        out.extend(range(m * step, (m + 1) * step))
    return out


def e_inverse_binomial(b: int, ctx: RingContext) -> RingElement:
    """The element u with (1 + x^b) * u = e(x)."""
    a = _binomial_check(b, ctx)
    n = ctx.n
    return RingElement.from_exponents((i * b for i in _inverse_indices(a, ctx)), n)


def divide_by_binomial(f: RingElement, b: int, ctx: RingContext,
                       counter: XorCounter | None = None) -> RingElement:
    """Solve (1 + x^b) g = f inside C.

    The first gcd(b, tau) coefficients are seeded from the closed-form inverse,
    the rest follow from g[m] = f[m] + g[m - b] along each coset of b.
    """
    a = _binomial_check(b, ctx)
    if not in_ideal(f, ctx):
        raise DomainError("dividend is not in the ideal generated by 1 + x^tau")
    n = ctx.n
    fv = f.coeffs
    fb = [(fv >> i) & 1 for i in range(n)]
    g = [0] * n
    idx = _inverse_indices(a, ctx)
    xors = 0
    for j in range(a):
        acc = 0
        for i in idx:
            acc ^= fb[(j - i * b) % n]
        g[j] = acc
        xors += len(idx) - 1
    for j in range(a):
        prev = j
        for ell in range(1, n // a):
            cur = (b * ell + j) % n
            g[cur] = fb[cur] ^ g[prev]
            prev = cur
        xors += n // a - 1
    if counter is not None:
        counter.count += xors
    return RingElement(sum(bit << i for i, bit in enumerate(g) if bit), n)
