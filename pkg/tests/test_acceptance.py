"""End-to-end acceptance checks, each with its own wall-clock limit."""
import itertools
import random
import time
from contextlib import contextmanager

import pytest

from bmds.code import validate
from bmds.codec import decode, random_codeword
from bmds.errors import NotMDSError
from bmds.mdscheck import Verdict, check_mds, sufficient_bound, table1_scan
from bmds.repair import execute_repair, expected_bandwidth, msr_lower_bound, plan_repair, ReadCounter
from bmds.ring import (
    RingContext,
    RingElement,
    XorCounter,
    divide_by_binomial,
    e_inverse_binomial,
    in_ideal,
    phi,
    theta,
)
from fractions import Fraction
from math import gcd

TABLE1 = {
    2: {3: False, 5: False, 11: True, 13: True, 19: True},
    3: {11: True, 13: False, 19: True},
    4: {19: True, 29: False, 37: True},
}
C1_R3 = [(4, 11), (4, 13), (5, 11), (6, 11)]


@contextmanager
def within(seconds, label):
    t = time.perf_counter()
    yield
    elapsed = time.perf_counter() - t
    print(f"{label}: {elapsed:.2f}s (limit {seconds}s)")
    assert elapsed < seconds, f"{label} took {elapsed:.1f}s"


def test_criterion_1_example1_bandwidths():
    with within(1, "criterion 1"):
        params = validate("C1", 4, 3, 3)
        got = tuple(plan_repair(params, f).bandwidth for f in range(1, 5))
        assert got == (20, 22, 22, 20)
        assert got == tuple(expected_bandwidth(params, f) for f in range(1, 5))


def test_criterion_2_example2_bandwidth():
    with within(1, "criterion 2"):
        params = validate("C2", 4, 4, 3)
        plan = plan_repair(params, 1)
        assert plan.bandwidth == 80
        assert plan.ratio == 1


def test_criterion_3_table1():
    with within(60, "criterion 3"):
        for k, expected in TABLE1.items():
            got = {p: v is Verdict.MDS for p, v in table1_scan(k, sorted(expected))}
            assert got == expected, k


def test_criterion_4_c1_r3_mds():
    with within(300, "criterion 4"):
        for k, p in C1_R3:
            assert check_mds(validate("C1", k, 3, p)).verdict is Verdict.MDS, (k, p)


def _all_patterns_decode(params, rng) -> bool:
    ok = True
    for erased in itertools.combinations(range(params.n), params.r):
        cw = random_codeword(params, rng)
        try:
            restored = decode(cw.erase(erased))
        except NotMDSError:
            ok = False
            continue
        assert restored.columns == cw.columns, erased
    return ok


def _oracle_sets():
    for k, expected in TABLE1.items():
        for p in expected:
            yield validate("C2", k, 4, p, min_k=2)
    for k, p in C1_R3:
        yield validate("C1", k, 3, p)


def test_criterion_5_oracle_equivalence():
    rng = random.Random(2024)
    with within(600, "criterion 5"):
        for params in _oracle_sets():
            report = check_mds(params)
            assert report.verdict is not Verdict.UNKNOWN
            assert (report.verdict is Verdict.MDS) == _all_patterns_decode(params, rng), str(params)


@pytest.mark.parametrize("family,k,r,p", [("C1", 4, 3, 11), ("C2", 4, 4, 19)])
def test_criterion_6_repair_property(family, k, r, p):
    params = validate(family, k, r, p)
    columns = range(1, params.k + 1) if family == "C1" else range(1, params.n + 1)
    limit = Fraction(params.d + 1, params.d)
    rng = random.Random(7)
    with within(600, f"criterion 6 {params}"):
        plans = {f: plan_repair(params, f) for f in columns}
        for f, plan in plans.items():
            assert plan.bandwidth == expected_bandwidth(params, f)
            assert Fraction(plan.bandwidth) / Fraction(msr_lower_bound(params)) < limit
        for _ in range(100):
            cw = random_codeword(params, rng)
            for f, plan in plans.items():
                counter = ReadCounter()
                assert execute_repair(cw.erase([f - 1]), plan, counter) == cw.columns[f - 1]
                assert counter.bits == plan.bandwidth


def test_criterion_7_ring_suite():
    rng = random.Random(11)
    with within(60, "criterion 7"):
        for p, tau in [(3, 1), (3, 2), (3, 4), (5, 1), (5, 2), (11, 1)]:
            ctx = RingContext(p, tau)
            for v in range(1 << ctx.n):
                a = RingElement(v, ctx.n)
                assert phi(*theta(a, ctx), ctx) == a
        for p, tau in [(3, 2), (5, 2), (3, 4)]:
            ctx = RingContext(p, tau)
            for b in range(1, ctx.n):
                if gcd(b, p) != 1:
                    continue
                u = e_inverse_binomial(b, ctx)
                assert RingElement((1 << b) | 1, ctx.n) * u == ctx.e
        for i in range(1000):
            p, tau = rng.choice([(3, 2), (5, 2), (3, 4), (11, 4), (13, 8)])
            ctx = RingContext(p, tau)
            b = rng.choice([b for b in range(1, ctx.n) if gcd(b, p) == 1])
            f = RingElement(rng.getrandbits(ctx.n), ctx.n) * RingElement((1 << tau) | 1, ctx.n)
            counter = XorCounter()
            g = divide_by_binomial(f, b, ctx, counter)
            assert in_ideal(g, ctx)
            assert RingElement((1 << b) | 1, ctx.n) * g == f
            a = gcd(b, tau)
            assert counter.count == (3 * p * tau - tau - 4 * a) // 2


def test_criterion_8_bounds():
    with within(1, "criterion 8"):
        assert sufficient_bound(validate("C2", 6, 4, 3)) == 337
        assert sufficient_bound(validate("C2", 7, 4, 3)) == 785
