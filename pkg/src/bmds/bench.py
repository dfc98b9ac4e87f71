"""Compiled vs pure-Python kernel benchmark.

Times the raw GF(2)[x] kernels on operands of ring size, then a full
encode / erase-r / decode / repair cycle with each backend in turn.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from math import gcd

from . import gf2
from .code import CodeParams
from .codec import ColumnSet, decode, decode_matrix, encode, random_codeword
from .repair import execute_repair, plan_repair
from .ring import RingElement, XorCounter, divide_by_binomial


@dataclass
class BenchRow:
    name: str
    python_us: float
    compiled_us: float | None

    @property
    def speedup(self) -> float | None:
        if self.compiled_us is None or self.compiled_us == 0:
            return None
        return self.python_us / self.compiled_us

    def line(self) -> str:
        comp = "n/a" if self.compiled_us is None else f"{self.compiled_us:10.1f}"
        sp = "n/a" if self.speedup is None else f"{self.speedup:5.2f}x"
        return f"{self.name:<16} {self.python_us:10.1f} {comp:>10} {sp:>7}"


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(3):
        t = time.perf_counter()
        for _ in range(repeat):
            fn()
        best = min(best, (time.perf_counter() - t) / repeat)
    return best * 1e6


def _kernels(params: CodeParams, rng: random.Random):
    ctx = params.ctx
    n, h = ctx.n, ctx.h_poly
    a, b = rng.getrandbits(n), rng.getrandbits(n)
    return {
        "clmul": lambda m: m.clmul(a, b),
        "cycmul": lambda m: m.cycmul(a, b, n),
        "polymod": lambda m: m.polymod(a, h),
        "polygcd": lambda m: m.polygcd(a, h),
        "polyinv": lambda m: m.polyinv(a, h),
    }


def _cycle(params: CodeParams, cw: ColumnSet):
    erased = list(range(params.r))
    decode_matrix.cache_clear()
    decode(cw.erase(erased))
    encode(cw.data(), params)
    plan = plan_repair(params, 1)
    execute_repair(cw.erase([0]), plan)


def run(params: CodeParams, repeat: int = 200, seed: int = 0) -> list[BenchRow]:
    rng = random.Random(seed)
    rows = []
    for name, fn in _kernels(params, rng).items():
        py = _time(lambda: fn(gf2.pure), repeat)
        comp = _time(lambda: fn(gf2.compiled), repeat) if gf2.compiled is not None else None
        rows.append(BenchRow(name, py, comp))
    cw = random_codeword(params, rng)
    cyc = max(1, repeat // 50)
    with gf2.use_backend("python"):
        py = _time(lambda: _cycle(params, cw), cyc)
    comp = None
    if gf2.compiled is not None:
        with gf2.use_backend("compiled"):
            comp = _time(lambda: _cycle(params, cw), cyc)
    rows.append(BenchRow("codec-cycle", py, comp))
    return rows


def count_xors(params: CodeParams, b: int = 1, seed: int = 0) -> tuple[int, int]:
    """XORs spent by divide_by_binomial on a random ideal element, and the closed form."""
    ctx = params.ctx
    rng = random.Random(seed)
    f = RingElement(gf2.cycmul(rng.getrandbits(ctx.n), (1 << ctx.tau) | 1, ctx.n), ctx.n)
    counter = XorCounter()
    divide_by_binomial(f, b, ctx, counter)
    a = gcd(b, ctx.tau)
    return counter.count, (3 * ctx.n - ctx.tau - 4 * a) // 2
