"""Encoding and erasure decoding for both code families.

Columns are held as ints of L = (p-1)*tau stored bits.  Before any arithmetic
a column is lifted into the ring by appending its tau extra bits, which makes
it an element of the ideal C; after arithmetic it is dropped back to L bits.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from . import gf2
from .code import CodeParams, Family, build_check_matrix, build_encoding_matrix
from .errors import DimensionError, DomainError, NotMDSError, ParameterError, UnrecoverableError
from .ring import RingContext, RingElement, divide_by_binomial, fold, in_ideal, rotate


def lift(column: int, ctx: RingContext) -> RingElement:
    """Append the tau extra bits, each the XOR of its p-1 stored partners."""
    L = ctx.stored_bits
    if column < 0 or column >> L:
        raise DimensionError(f"column does not fit in {L} stored bits")
    return RingElement(column | (fold(column, ctx.tau, ctx.p - 1) << L), ctx.n)


def drop(a: RingElement, ctx: RingContext) -> int:
    if not in_ideal(a, ctx):
        raise DomainError("element is not a valid lifted column")
    return a.coeffs & ((1 << ctx.stored_bits) - 1)


def _lift_raw(column: int, ctx: RingContext) -> int:
    return column | (fold(column, ctx.tau, ctx.p - 1) << ctx.stored_bits)


@dataclass
class ColumnSet:
    """One codeword: n columns, each an int of L bits or None when erased."""

    params: CodeParams
    columns: list = field(default_factory=list)

    def __post_init__(self):
        if len(self.columns) != self.params.n:
            raise DimensionError(f"expected {self.params.n} columns, got {len(self.columns)}")
        L = self.params.stored_bits
        for i, c in enumerate(self.columns):
            if c is not None and (c < 0 or c >> L):
                raise DimensionError(f"column {i + 1} does not fit in {L} bits")

    @property
    def erased(self) -> list[int]:
        return [i for i, c in enumerate(self.columns) if c is None]

    @property
    def present(self) -> list[int]:
        return [i for i, c in enumerate(self.columns) if c is not None]

    def erase(self, positions: Sequence[int]) -> ColumnSet:
        """Copy with the given 0-based positions erased."""
        cols = list(self.columns)
        for i in positions:
            cols[i] = None
        return ColumnSet(self.params, cols)

    def data(self) -> list[int]:
        return [self.columns[i] for i in self.params.data_positions()]

    def copy(self) -> ColumnSet:
        return ColumnSet(self.params, list(self.columns))


def _check_data(data: Sequence[int], params: CodeParams):
    if len(data) != params.k:
        raise ParameterError(f"expected {params.k} data columns, got {len(data)}")
    L = params.stored_bits
    for c in data:
        if c < 0 or c >> L:
            raise DimensionError(f"data column does not fit in {L} bits")


def encode_c1(data: Sequence[int], params: CodeParams) -> ColumnSet:
    if params.family is not Family.C1:
        raise ParameterError("encode_c1 needs C1 parameters")
    _check_data(data, params)
    ctx = params.ctx
    n, L = ctx.n, ctx.stored_bits
    P = build_encoding_matrix(params)
    lifted = [_lift_raw(c, ctx) for c in data]
    parities = []
    for j in range(params.r):
        acc = 0
        for i in range(params.k):
            acc ^= rotate(lifted[i], P[i, j], n)
        parities.append(acc & ((1 << L) - 1))
    return ColumnSet(params, list(data) + parities)


def _encode_c2_r4(data: Sequence[int], params: CodeParams) -> ColumnSet:
    ctx = params.ctx
    n, tau, k = ctx.n, ctx.tau, params.k
    H = build_check_matrix(params)
    cols: list[Optional[int]] = [None, None] + list(data) + [None, None]
    lifted = {c: RingElement(_lift_raw(cols[c], ctx), n) for c in range(2, k + 2)}

    def partial(row):
        acc = 0
        for c, v in lifted.items():
            acc ^= rotate(v.coeffs, H[row, c], n)
        return RingElement(acc, n)

    # first two columns from check rows 1 and 2: x(1+x) s2 = x p1 + p2
    p1, p2 = partial(0), partial(1)
    xs2 = divide_by_binomial(RingElement(rotate(p1.coeffs, 1, n), n) + p2, 1, ctx)
    s2 = rotate(xs2.coeffs, -1, n)
    s1 = s2 ^ p1.coeffs
    # last two from rows 3 and 4: x^2 (1 + x^(tau-1)) s_{n-1} = q1 + x q2
    q1, q2 = partial(2), partial(3)
    try:
        g = divide_by_binomial(q1 + RingElement(rotate(q2.coeffs, 1, n), n), tau - 1, ctx)
    except ArithmeticError as exc:
        raise NotMDSError(f"coded columns {k + 3},{k + 4} cannot be solved for {params}: {exc}",
                          erased=(k + 2, k + 3)) from None
    s3 = rotate(g.coeffs, -2, n)
    s4 = q2.coeffs ^ rotate(s3, tau, n)
    mask = (1 << ctx.stored_bits) - 1
    cols[0], cols[1], cols[k + 2], cols[k + 3] = s1 & mask, s2 & mask, s3 & mask, s4 & mask
    return ColumnSet(params, cols)


def encode_c2(data: Sequence[int], params: CodeParams, method: str = "auto") -> ColumnSet:
    """Systematic encoding with data in positions r/2+1 .. r/2+k (1-based).

    ``method`` is "explicit" (r = 4 only), "generic" (solve with the coded
    columns treated as erasures) or "auto".
    """
    if params.family is not Family.C2:
        raise ParameterError("encode_c2 needs C2 parameters")
    _check_data(data, params)
    if method == "auto":
        method = "explicit" if params.r == 4 else "generic"
    if method == "explicit":
        if params.r != 4:
            raise ParameterError("the explicit encoder covers r = 4 only")
        return _encode_c2_r4(data, params)
    if method != "generic":
        raise ValueError(f"unknown method {method!r}")
    cols: list[Optional[int]] = [None] * params.n
    for pos, c in zip(params.data_positions(), data):
        cols[pos] = c
    return decode(ColumnSet(params, cols))


def encode(data: Sequence[int], params: CodeParams) -> ColumnSet:
    if params.family is Family.C1:
        return encode_c1(data, params)
    return encode_c2(data, params)


@lru_cache(maxsize=256)
def decode_matrix(params: CodeParams, erased: tuple, present: tuple) -> tuple:
    """Ring coefficients T with lift(s_e) = sum_t T[e][t] * lift(s_present[t]).

    Solved over F2[x]/(h) by row reduction where each pivot is first brought to
    the gcd of its column (Euclid over F2[x]) and then inverted mod h.
    """
    ctx = params.ctx
    h, n = ctx.h_poly, ctx.n
    H = build_check_matrix(params)
    cols = list(erased) + list(present)
    mono = {}

    def entry(e):
        if e is None:
            return 0
        if e not in mono:
            mono[e] = gf2.polymod(1 << e, h)
        return mono[e]

    M = [[entry(H[j, c]) for c in cols] for j in range(H.rows)]
    m, width = len(M), len(cols)

    def axpy(dst, coef, src):
        # dst += coef * src, entries reduced mod h
        return [a ^ gf2.polymod(gf2.clmul(coef, b), h) if b else a for a, b in zip(dst, src)]

    for c in range(len(erased)):
        while True:
            nz = [i for i in range(c, m) if M[i][c]]
            if not nz:
                raise NotMDSError(f"erasure pattern {[e + 1 for e in erased]} is not decodable",
                                  erased=erased)
            piv = min(nz, key=lambda i: M[i][c].bit_length())
            M[c], M[piv] = M[piv], M[c]
            clean = True
            for i in range(c + 1, m):
                if M[i][c]:
                    q, rem = gf2.polydivmod(M[i][c], M[c][c])
                    M[i] = axpy(M[i], q, M[c])
                    clean = clean and rem == 0
            if clean:
                break
        inv = gf2.polyinv(M[c][c], h)
        if inv == 0:
            raise NotMDSError(f"erasure pattern {[e + 1 for e in erased]} is not decodable",
                              erased=erased)
        M[c] = [gf2.polymod(gf2.clmul(inv, v), h) if v else 0 for v in M[c]]
        for i in range(m):
            if i != c and M[i][c]:
                M[i] = axpy(M[i], M[i][c], M[c])
    e_poly = h ^ 1
    k0 = len(erased)
    return tuple(
        tuple(gf2.cycmul(M[i][k0 + t], e_poly, n) if M[i][k0 + t] else 0 for t in range(width - k0))
        for i in range(k0)
    )


def decode(cs: ColumnSet) -> ColumnSet:
    """Restore every erased column of ``cs`` from the present ones."""
    params = cs.params
    erased, present = tuple(cs.erased), tuple(cs.present)
    if not erased:
        return cs.copy()
    if len(erased) > params.r:
        raise UnrecoverableError(f"{len(erased)} columns erased but only {params.r} can be recovered")
    T = decode_matrix(params, erased, present)
    ctx = params.ctx
    n, mask = ctx.n, (1 << ctx.stored_bits) - 1
    lifted = [_lift_raw(cs.columns[c], ctx) for c in present]
    out = list(cs.columns)
    for row, e in zip(T, erased):
        acc = 0
        for coef, v in zip(row, lifted):
            if coef and v:
                acc ^= gf2.cycmul(coef, v, n)
        out[e] = drop(RingElement(acc, n), ctx) & mask
    return ColumnSet(params, out)


def syndrome(cs: ColumnSet) -> list[int]:
    """H times the lifted codeword, one ring element per check row; all zero for codewords."""
    params = cs.params
    if cs.erased:
        raise UnrecoverableError("syndrome needs every column present")
    ctx = params.ctx
    H = build_check_matrix(params)
    lifted = [_lift_raw(c, ctx) for c in cs.columns]
    out = []
    for j in range(H.rows):
        acc = 0
        for c in range(params.n):
            if H[j, c] is not None:
                acc ^= rotate(lifted[c], H[j, c], ctx.n)
        out.append(acc)
    return out


def is_codeword(cs: ColumnSet) -> bool:
    return not any(syndrome(cs))


def information_set(params: CodeParams) -> tuple:
    """0-based positions to hold data.

    The family's default placement when it is decodable, otherwise the first
    decodable k-subset in lexicographic order of the complementary r-subset.
    """
    default = tuple(params.data_positions())
    candidates = itertools.chain(
        [tuple(c for c in range(params.n) if c not in default)],
        itertools.combinations(range(params.n), params.r),
    )
    for erased in candidates:
        present = tuple(c for c in range(params.n) if c not in erased)
        try:
            decode_matrix(params, erased, present)
        except NotMDSError:
            continue
        return present
    raise NotMDSError(f"{params} has no information set")


def encode_at(data: Sequence[int], params: CodeParams, positions: Sequence[int]) -> ColumnSet:
    """Encode with data in the given 0-based positions."""
    positions = tuple(positions)
    if positions == tuple(params.data_positions()):
        return encode(data, params)
    _check_data(data, params)
    if len(set(positions)) != params.k:
        raise ParameterError(f"need {params.k} distinct data positions")
    cols: list[Optional[int]] = [None] * params.n
    for pos, c in zip(positions, data):
        cols[pos] = c
    return decode(ColumnSet(params, cols))


def random_codeword(params: CodeParams, rng: random.Random | None = None) -> ColumnSet:
    """A uniformly random codeword, built from random data on an information set."""
    rng = rng or random.Random()
    data = [rng.getrandbits(params.stored_bits) for _ in range(params.k)]
    return encode_at(data, params, information_set(params))
