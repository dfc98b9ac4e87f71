import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from bmds.errors import DimensionError, DomainError, NotInvertibleError
from bmds.ring import (
    RingContext,
    RingElement,
    XorCounter,
    add,
    divide_by_binomial,
    e_inverse_binomial,
    in_ideal,
    mul,
    phi,
    shift,
    theta,
)


def el(exps, n):
    return RingElement.from_exponents(exps, n)


def naive_cyclic(a, b):
    # O(n^2) convolution over F2 with wrap-around
    n = a.n
    out = [0] * n
    for i in range(n):
        for j in range(n):
            out[(i + j) % n] ^= a.coeff(i) & b.coeff(j)
    return RingElement(sum(bit << i for i, bit in enumerate(out)), n)


CTX = [RingContext(3, 2), RingContext(5, 2), RingContext(3, 4), RingContext(5, 4), RingContext(11, 8)]


def ideal_element(ctx, rng):
    g = RingElement(rng.getrandbits(ctx.n), ctx.n)
    return mul(g, el([0, ctx.tau], ctx.n))


class TestElements:
    def test_length_checked(self):
        with pytest.raises(DimensionError):
            RingElement(1 << 6, 6)
        with pytest.raises(DimensionError):
            add(RingElement(1, 6), RingElement(1, 8))
        with pytest.raises(DimensionError):
            mul(RingElement(1, 6), RingElement(1, 8))

    def test_add(self):
        a = el([0, 1], 6)
        assert a + a == RingElement.zero(6)
        assert a + RingElement.zero(6) == a
        assert el([0, 1], 6) + el([1, 2], 6) == el([0, 2], 6)

    def test_mul_example(self):
        a = el([2, 4, 6], 10)
        b = el([2, 4, 6, 8], 10)
        assert mul(a, b) == el([0, 8], 10)
        assert mul(a, RingElement.zero(10)) == RingElement.zero(10)

    def test_mul_matches_convolution(self):
        rng = random.Random(3)
        for n in (12, 30, 77):
            for _ in range(30):
                a, b = RingElement(rng.getrandbits(n), n), RingElement(rng.getrandbits(n), n)
                assert mul(a, b) == naive_cyclic(a, b)

    def test_shift(self):
        a = el([0, 1], 6)
        assert shift(a, 0) == a
        assert shift(a, 6) == a
        assert shift(a, 2) == el([2, 3], 6)
        assert shift(a, 2) == mul(a, RingElement.monomial(2, 6))
        assert shift(a, -1) == el([5, 0], 6)

    def test_repr(self):
        assert "1 + x + x^3" in repr(el([0, 1, 3], 6))


class TestContext:
    @pytest.mark.parametrize("ctx", CTX, ids=str)
    def test_h_and_e(self, ctx):
        assert ctx.h.weight() == ctx.p
        assert ctx.e.weight() == ctx.p - 1
        assert ctx.e == ctx.h + RingElement(1, ctx.n)
        assert ctx.check_poly == ctx.h and ctx.identity == ctx.e

    @pytest.mark.parametrize("ctx", CTX, ids=str)
    def test_identity_and_annihilator(self, ctx):
        rng = random.Random(ctx.n)
        for _ in range(50):
            b = ideal_element(ctx, rng)
            assert mul(ctx.e, b) == b
            assert mul(ctx.h, b) == RingElement.zero(ctx.n)

    def test_invalid(self):
        with pytest.raises(DimensionError):
            RingContext(1, 2)


class TestIdeal:
    def test_examples(self):
        ctx = RingContext(3, 4)
        assert not in_ideal(ctx.h, ctx)
        assert in_ideal(el([0, 4], 12), ctx)
        assert in_ideal(RingElement.zero(12), ctx)

    @pytest.mark.parametrize("ctx", CTX[:4], ids=str)
    def test_three_way_agreement(self, ctx):
        rng = random.Random(11)
        for _ in range(200):
            a = RingElement(rng.getrandbits(ctx.n), ctx.n)
            if rng.random() < 0.5:
                a = mul(a, el([0, ctx.tau], ctx.n))
            flags = {in_ideal(a, ctx), theta(a, ctx)[0] == 0, not mul(ctx.h, a)}
            assert len(flags) == 1


class TestCrt:
    def test_worked_example(self):
        ctx = RingContext(5, 2)
        a = el([0, 8], 10)
        assert theta(a, ctx) == (0, 0b1010100)
        assert phi(0, 0b1010100, ctx) == a

    def test_trivial(self):
        ctx = RingContext(3, 2)
        assert theta(RingElement.zero(6), ctx) == (0, 0)
        assert phi(0, 0, ctx) == RingElement.zero(6)

    @pytest.mark.parametrize("p,tau", [(3, 2), (3, 4), (5, 2), (3, 1), (5, 1), (7, 1), (11, 1)])
    def test_theta_of_h(self, p, tau):
        ctx = RingContext(p, tau)
        assert theta(ctx.h, ctx) == (1, 0)

    @pytest.mark.parametrize("p,tau", [(3, 2), (3, 4), (5, 2), (3, 3), (11, 1)])
    def test_roundtrip_exhaustive(self, p, tau):
        ctx = RingContext(p, tau)
        for v in range(1 << ctx.n):
            a = RingElement(v, ctx.n)
            assert phi(*theta(a, ctx), ctx) == a

    def test_residue_range_checked(self):
        with pytest.raises(DimensionError):
            phi(1 << 2, 0, RingContext(3, 2))


class TestBinomialInverse:
    def test_small_example(self):
        ctx = RingContext(3, 2)
        u = e_inverse_binomial(1, ctx)
        assert u == el([2, 3], 6)
        assert mul(el([0, 1], 6), u) == ctx.e

    def test_a_equal_one(self):
        ctx = RingContext(5, 2)
        u = e_inverse_binomial(3, ctx)
        assert u == el([3 * i for i in (2, 3, 6, 7)], 10)
        assert mul(el([0, 3], 10), u) == ctx.e

    @pytest.mark.parametrize("p,tau", [(3, 2), (5, 2), (3, 4), (5, 4), (11, 4)])
    def test_multiply_back_all_b(self, p, tau):
        ctx = RingContext(p, tau)
        for b in range(1, ctx.n):
            if gcd(b, p) != 1:
                with pytest.raises(NotInvertibleError):
                    e_inverse_binomial(b, ctx)
                continue
            assert mul(el([0, b], ctx.n), e_inverse_binomial(b, ctx)) == ctx.e

    def test_out_of_range(self):
        ctx = RingContext(3, 2)
        for b in (0, 6, 3):
            with pytest.raises(NotInvertibleError):
                e_inverse_binomial(b, ctx)


class TestDivide:
    def test_zero(self):
        ctx = RingContext(3, 2)
        assert divide_by_binomial(RingElement.zero(6), 1, ctx) == RingElement.zero(6)

    def test_rejects_outside_ideal(self):
        ctx = RingContext(3, 2)
        with pytest.raises(DomainError):
            divide_by_binomial(ctx.h, 1, ctx)
        with pytest.raises(NotInvertibleError):
            divide_by_binomial(RingElement.zero(6), 3, ctx)

    @pytest.mark.parametrize("p,tau", [(3, 2), (5, 2), (3, 4), (5, 8), (11, 16)])
    def test_multiply_back(self, p, tau):
        ctx = RingContext(p, tau)
        rng = random.Random(p * tau)
        for _ in range(40):
            b = rng.choice([b for b in range(1, ctx.n) if gcd(b, p) == 1])
            f = ideal_element(ctx, rng)
            g = divide_by_binomial(f, b, ctx)
            assert in_ideal(g, ctx)
            assert mul(el([0, b], ctx.n), g) == f
            assert g == mul(f, e_inverse_binomial(b, ctx))

    def test_recovers_ideal_element(self):
        ctx = RingContext(3, 2)
        rng = random.Random(5)
        for _ in range(50):
            g0 = ideal_element(ctx, rng)
            f = mul(el([0, 1], 6), g0)
            assert divide_by_binomial(f, 1, ctx) == g0

    def test_xor_count_example(self):
        ctx = RingContext(3, 2)
        c = XorCounter()
        divide_by_binomial(el([0, 2], 6), 1, ctx, c)
        assert c.count == 6

    @pytest.mark.parametrize("p,tau", [(3, 2), (5, 2), (3, 4), (5, 4), (11, 8), (13, 6)])
    def test_xor_count_formula(self, p, tau):
        ctx = RingContext(p, tau)
        for b in range(1, ctx.n):
            if gcd(b, p) != 1:
                continue
            c = XorCounter()
            divide_by_binomial(RingElement.zero(ctx.n), b, ctx, c)
            a = gcd(b, tau)
            assert 2 * c.count == 3 * p * tau - tau - 4 * a


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([(3, 2), (5, 2), (3, 4), (11, 4)]), st.data())
def test_theta_phi_property(pt, data):
    ctx = RingContext(*pt)
    a = RingElement(data.draw(st.integers(0, (1 << ctx.n) - 1)), ctx.n)
    first, second = theta(a, ctx)
    assert first.bit_length() <= ctx.tau and second.bit_length() <= ctx.stored_bits
    assert phi(first, second, ctx) == a


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([(3, 2), (5, 2), (3, 4), (13, 4)]), st.data())
def test_divide_property(pt, data):
    ctx = RingContext(*pt)
    g = RingElement(data.draw(st.integers(0, (1 << ctx.n) - 1)), ctx.n)
    f = mul(g, el([0, ctx.tau], ctx.n))
    b = data.draw(st.sampled_from([b for b in range(1, ctx.n) if gcd(b, ctx.p) == 1]))
    assert mul(el([0, b], ctx.n), divide_by_binomial(f, b, ctx)) == f
