"""Single-column repair: symbolic plans, bandwidth accounting and execution.

A plan assigns every stored bit of the failed column to one check row.  Row j
says sum_c x^(e_jc) s_c = 0, so bit l of the failed column f is

    s[l, f] = sum over c != f of s[l + e_jf - e_jc, c]      (indices mod p*tau)

A referenced index >= L is an extra bit and is synthesized from its p-1
stored partners in the same column.  Downloads are the union of stored bits
referenced per helper column.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .code import CodeParams, Family, build_check_matrix
from .codec import ColumnSet
from .errors import RepairError
from .fileformat import bits_to_int, int_to_bits


@dataclass(frozen=True)
class RepairStep:
    target: int
    row: int
    sources: tuple  # (column, index) pairs, index may point at an extra bit


@dataclass(frozen=True)
class RepairPlan:
    params: CodeParams
    failed: int  # 1-based
    helpers: tuple  # (1-based column, sorted tuple of stored-bit indices)
    recipe: tuple
    method: str = "algorithm"

    @property
    def bandwidth(self) -> int:
        return sum(len(ix) for _, ix in self.helpers)

    @property
    def helper_columns(self) -> list[int]:
        return [c for c, _ in self.helpers]

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.bandwidth) / msr_lower_bound(self.params)


@dataclass
class ReadCounter:
    """Counts stored bits actually read from helper columns."""

    bits: int = 0


def msr_lower_bound(params: CodeParams):
    b = Fraction(params.d * params.stored_bits, params.d - params.k + 1)
    return int(b) if b.denominator == 1 else b


def _row_choices(params: CodeParams, f: int) -> tuple[int, list[int]]:
    """Grouping modulus and, per group t, the 1-based check row repairing it."""
    eta = params.eta
    if params.family is Family.C1:
        k, dk = params.k, params.d - params.k
        if f <= (k + 1) // 2:
            return eta ** f, [1] + [dk - t + 2 for t in range(1, dk + 1)]
        return eta ** (k + 1 - f), [1] + [dk + t + 1 for t in range(1, dk + 1)]
    n, r = params.n, params.r
    if f <= (n + 1) // 2:
        return eta ** f, [1] + [eta - t + 1 for t in range(1, eta)]
    return eta ** (n + 1 - f), [r] + [eta + t for t in range(1, eta)]


def _build_plan(params: CodeParams, f: int, assign, method: str) -> RepairPlan:
    ctx = params.ctx
    N, L, tau = ctx.n, ctx.stored_bits, ctx.tau
    H = build_check_matrix(params)
    fi = f - 1
    wanted: dict[int, set] = {}
    steps = []
    for ell in range(L):
        j = assign(ell)
        row = H.entries[j]
        ef = row[fi]
        sources = []
        for c, ec in enumerate(row):
            if c == fi or ec is None:
                continue
            m = (ell + ef - ec) % N
            sources.append((c + 1, m))
            bucket = wanted.setdefault(c + 1, set())
            if m < L:
                bucket.add(m)
            else:
                mu = m - L
                bucket.update(t * tau + mu for t in range(params.p - 1))
        steps.append(RepairStep(ell, j + 1, tuple(sources)))
    helpers = tuple((c, tuple(sorted(ix))) for c, ix in sorted(wanted.items()))
    return RepairPlan(params, f, helpers, tuple(steps), method)


@lru_cache(maxsize=128)
def plan_repair(params: CodeParams, f: int) -> RepairPlan:
    """Repair plan for the 1-based column f.

    C1 information columns and every C2 column follow the family's repair
    algorithm.  A C1 parity column is rebuilt from its own check row, which
    reads all k information columns.
    """
    if not 1 <= f <= params.n:
        raise RepairError(f"column {f} out of range 1..{params.n}")
    if params.family is Family.C1 and f > params.k:
        row = f - params.k - 1
        return _build_plan(params, f, lambda ell: row, "parity-row")
    modulus, rows = _row_choices(params, f)
    low = modulus // params.eta
    return _build_plan(params, f, lambda ell: rows[(ell % modulus) // low] - 1, "algorithm")


def plan_repair_c1(f: int, params: CodeParams) -> RepairPlan:
    if params.family is not Family.C1:
        raise RepairError("plan_repair_c1 needs C1 parameters")
    if not 1 <= f <= params.k:
        raise RepairError(f"the C1 repair algorithm covers information columns 1..{params.k}, got {f}")
    return plan_repair(params, f)


def plan_repair_c2(f: int, params: CodeParams) -> RepairPlan:
    if params.family is not Family.C2:
        raise RepairError("plan_repair_c2 needs C2 parameters")
    return plan_repair(params, f)


def expected_bandwidth(params: CodeParams, f: int) -> int:
    """Closed-form bandwidth of the plan for column f."""
    p, eta, d, k, n = params.p, params.eta, params.d, params.k, params.n
    if params.family is Family.C1:
        if f > k:
            return k * params.stored_bits
        if f <= (k + 1) // 2:
            return (p - 1) * ((d + 1) * eta ** (k - 3) - eta ** (k - f - 2))
        return (p - 1) * ((d + 1) * eta ** (k - 3) - eta ** (f - 3))
    base = d * (p - 1) * eta ** (d - 2)
    ex = d - f - 1 if f <= (n + 1) // 2 else d - n + f - 2
    return base + (p - 1) * (eta ** (d - 2) - eta ** ex)


@lru_cache(maxsize=128)
def _compiled(plan: RepairPlan):
    # 0/1 matrix mapping downloaded bits to the restored column
    params = plan.params
    L, tau = params.stored_bits, params.tau
    offset, base = {}, 0
    for c, ix in plan.helpers:
        offset[c] = (base, {m: i for i, m in enumerate(ix)})
        base += len(ix)
    M = np.zeros((L, base), dtype=np.uint8)
    for step in plan.recipe:
        row = M[step.target]
        for c, m in step.sources:
            start, pos = offset[c]
            if m < L:
                row[start + pos[m]] ^= 1
            else:
                mu = m - L
                for t in range(params.p - 1):
                    row[start + pos[t * tau + mu]] ^= 1
    return M


def execute_repair(cs: ColumnSet, plan: RepairPlan, counter: ReadCounter | None = None) -> int:
    """Rebuild column plan.failed of ``cs`` reading only the planned bits."""
    params = plan.params
    if cs.params != params:
        raise RepairError(f"plan is for {params}, codeword is {cs.params}")
    L = params.stored_bits
    parts = []
    for c, ix in plan.helpers:
        col = cs.columns[c - 1]
        if col is None:
            raise RepairError(f"helper column {c} is missing")
        parts.append(int_to_bits(col, L)[list(ix)])
        if counter is not None:
            counter.bits += len(ix)
    v = np.concatenate(parts) if parts else np.zeros(0, dtype=np.uint8)
    M = _compiled(plan)
    restored = (M.astype(np.uint32) @ v.astype(np.uint32)) & 1
    return bits_to_int(restored.astype(np.uint8))


@dataclass(frozen=True)
class BandwidthRow:
    f: int
    bandwidth: int
    bound: object
    ratio: float
    method: str


def bandwidth_report(params: CodeParams, include_fallback: bool = False) -> list[BandwidthRow]:
    """Per-column repair bandwidth against the MSR bound.

    Raises RepairError if an algorithmic repair is not below (d+1)/d times the bound.
    """
    bound = msr_lower_bound(params)
    limit = Fraction(params.d + 1, params.d)
    last = params.k if params.family is Family.C1 and not include_fallback else params.n
    rows = []
    for f in range(1, last + 1):
        plan = plan_repair(params, f)
        ratio = Fraction(plan.bandwidth) / Fraction(bound)
        if plan.method == "algorithm" and ratio >= limit:
            raise RepairError(f"column {f}: ratio {float(ratio):.4f} not below {float(limit):.4f}")
        rows.append(BandwidthRow(f, plan.bandwidth, bound, float(ratio), plan.method))
    return rows
