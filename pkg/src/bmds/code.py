"""Code parameters and the monomial encoding/check matrices of both families."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Optional, Sequence

from .errors import ParameterError
from .ring import RingContext


class Family(str, enum.Enum):
    C1 = "C1"
    C2 = "C2"

    @classmethod
    def parse(cls, value) -> Family:
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise ParameterError(f"unknown code family {value!r} (expected c1 or c2)") from None


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def multiplicative_order(a: int, p: int) -> int:
    x, order = a % p, 1
    while x != 1:
        x = x * a % p
        order += 1
    return order


def is_two_primitive(p: int) -> bool:
    if not is_prime(p):
        raise ParameterError(f"{p} is not prime")
    if p == 2:
        return False
    return multiplicative_order(2, p) == p - 1


@dataclass(frozen=True)
class CodeParams:
    family: Family
    k: int
    r: int
    p: int

    @property
    def d(self) -> int:
        if self.family is Family.C1:
            return self.k + (self.r - 1) // 2
        return self.k + self.r // 2 - 1

    @property
    def eta(self) -> int:
        return self.d - self.k + 1

    @property
    def tau(self) -> int:
        if self.family is Family.C1:
            return self.eta ** (self.k - 2)
        return self.eta ** (self.d - 1)

    @property
    def n(self) -> int:
        return self.k + self.r

    @property
    def stored_bits(self) -> int:
        return (self.p - 1) * self.tau

    L = stored_bits

    @cached_property
    def ctx(self) -> RingContext:
        return RingContext(self.p, self.tau)

    def data_positions(self) -> list[int]:
        """0-based column positions holding data, in data order."""
        if self.family is Family.C1:
            return list(range(self.k))
        h = self.r // 2
        return list(range(h, h + self.k))

    def coded_positions(self) -> list[int]:
        data = set(self.data_positions())
        return [c for c in range(self.n) if c not in data]

    def describe(self) -> str:
        return f"d={self.d} eta={self.eta} tau={self.tau} L={self.stored_bits}"

    def __str__(self):
        return f"{self.family.value}(k={self.k}, r={self.r}, d={self.d}, p={self.p})"


def validate(family, k: int, r: int, p: int, min_k: int = 4) -> CodeParams:
    """Check (family, k, r, p) and derive the remaining parameters.

    All violations are collected and raised together as one ParameterError.
    ``min_k`` can be lowered for MDS-table work on tiny codes.
    """
    fam = Family.parse(family)
    problems = []
    if k < min_k:
        problems.append(f"k must be >= {min_k}, got {k}")
    if fam is Family.C1:
        if r < 3 or r % 2 == 0:
            problems.append(f"C1 needs odd r >= 3, got r={r}")
    else:
        if r < 4 or r % 2:
            problems.append(f"C2 needs even r >= 4, got r={r}")
    if not is_prime(p):
        problems.append(f"p={p} is not prime")
    elif not is_two_primitive(p):
        problems.append(f"2 not primitive mod {p} (order of 2 is {multiplicative_order(2, p)})")
    if not problems:
        params = CodeParams(fam, k, r, p)
        if fam is Family.C1 and p <= params.d - k:
            problems.append(f"C1 needs p > d-k = {params.d - k}, got p={p}")
        if fam is Family.C2 and p <= params.eta:
            problems.append(f"C2 needs p > r/2 = {params.eta}, got p={p}")
    if problems:
        raise ParameterError(problems)
    return params


@dataclass(frozen=True)
class MonomialMatrix:
    """Matrix whose entries are 0 (None) or a monomial x^e with 0 <= e < modulus."""

    entries: tuple[tuple[Optional[int], ...], ...]
    modulus: int

    def __post_init__(self):
        widths = {len(row) for row in self.entries}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        for row in self.entries:
            for e in row:
                if e is not None and not 0 <= e < self.modulus:
                    raise ValueError(f"exponent {e} outside [0, {self.modulus})")

    @classmethod
    def build(cls, grid: Sequence[Sequence[Optional[int]]], modulus: int) -> MonomialMatrix:
        return cls(tuple(tuple(None if e is None else e % modulus for e in row) for row in grid),
                   modulus)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij) -> Optional[int]:
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> list[Optional[int]]:
        return [row[j] for row in self.entries]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> MonomialMatrix:
        return MonomialMatrix(tuple(tuple(self.entries[i][j] for j in cols) for i in rows),
                              self.modulus)

    def transpose(self) -> MonomialMatrix:
        return MonomialMatrix(tuple(zip(*self.entries)), self.modulus)

    def as_polys(self) -> list[list[int]]:
        """Entries as F2[x] polynomials encoded in ints."""
        return [[0 if e is None else 1 << e for e in row] for row in self.entries]

    def __str__(self):
        def cell(e):
            if e is None:
                return "0"
            return {0: "1", 1: "x"}.get(e, f"x^{e}")
        return "\n".join("[" + ", ".join(cell(e) for e in row) + "]" for row in self.entries)


@lru_cache(maxsize=None)
def build_encoding_matrix(params: CodeParams) -> MonomialMatrix:
    """The k x r matrix P of a C1 code: parity j = sum_i P[i][j] * data_i."""
    if params.family is not Family.C1:
        raise ParameterError("encoding matrix is defined for C1 only")
    k, eta = params.k, params.eta
    grid = [[0] * params.r for _ in range(k)]
    for j in range(2, eta + 1):
        for i in range(1, k):
            grid[i - 1][j - 1] = (j - 1) * eta ** (i - 1)
    # the remaining block is the first block rotated by 180 degrees
    for c in range(1, params.d - k + 1):
        for i in range(2, k + 1):
            grid[i - 1][eta + c - 1] = (eta - c) * eta ** (k - i)
    return MonomialMatrix.build(grid, params.ctx.n)


@lru_cache(maxsize=None)
def build_check_matrix(params: CodeParams) -> MonomialMatrix:
    """The r x n check matrix H with H * codeword = 0.

    For C1 this is [P^T | I]; for C2 it is the family's defining matrix.
    """
    if params.family is Family.C1:
        P = build_encoding_matrix(params)
        grid = []
        for j in range(params.r):
            row = list(P.column(j)) + [None] * params.r
            row[params.k + j] = 0
            grid.append(row)
        return MonomialMatrix.build(grid, params.ctx.n)
    r, n, d, eta = params.r, params.n, params.d, params.eta
    grid = [[None] * n for _ in range(r)]
    for j in range(1, eta + 1):
        for c in range(1, d + 1):
            grid[j - 1][c - 1] = (j - 1) * eta ** (c - 1)
        grid[j - 1][d] = 0
    for j in range(eta + 1, r + 1):
        grid[j - 1][eta] = 0
        for c in range(eta + 2, n + 1):
            if j < r:
                grid[j - 1][c - 1] = (r - j) * eta ** (n - c)
            else:
                grid[j - 1][c - 1] = (n - c) * eta ** (d - 1)
    return MonomialMatrix.build(grid, params.ctx.n)
