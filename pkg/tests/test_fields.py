import random

import pytest

from ovoidcodes.fields import FieldContext, GuardExceeded, context_for_order, factor_prime_power, make_context

from helpers import ctx


def test_factor_prime_power():
    assert factor_prime_power(8) == (2, 3)
    assert factor_prime_power(9) == (3, 2)
    assert factor_prime_power(7) == (7, 1)
    for bad in (0, 1, 6, 12, 100):
        with pytest.raises(ValueError):
            factor_prime_power(bad)


def test_context_guard():
    with pytest.raises((GuardExceeded, ValueError)):
        make_context(2, 11)
    with pytest.raises(ValueError):
        make_context(4, 1)


def test_q2_context_frozen():
    d = ctx(2).to_json_dict()
    assert d["p"] == 2 and d["m"] == 1
    # cubic modulus s^3 + s + 1, the smallest irreducible cubic over F_2
    assert d["cubic_modulus"] == [[1], [1], [0], [1]]
    assert d["theta"] == [[0], [1], [0]]
    assert d["alpha"] == [1]


def test_q4_base_modulus_frozen():
    d = ctx(4).to_json_dict()
    # t^2 + t + 1 is the only irreducible monic quadratic over F_2
    assert d["base_modulus"] == [1, 1, 1]


def test_enumeration_order():
    c = ctx(4)
    assert c.q == 4 and c.q3 == 64
    # packed indices: zero first, one second, digits low-first
    assert c.digits3(0) == (0, 0, 0)
    assert c.digits3(1) == (1, 0, 0)
    assert c.digits3(c.q) == (0, 1, 0)
    seen = {c.encode3(*c.digits3(i)) for i in range(64)}
    assert seen == set(range(64))


def test_trace_norm_linearity_exhaustive():
    for q in (2, 3, 4):
        c = ctx(q)
        for x in range(c.q3):
            for y in range(c.q3):
                assert c.trace(c.add3(x, y)) == c.addq(c.trace(x), c.trace(y))
                assert c.norm(c.mul3(x, y)) == c.mulq(c.norm(x), c.norm(y))


def test_fiber_sizes():
    for q in (2, 3, 4, 5):
        c = ctx(q)
        tr = {}
        nm = {}
        for x in range(c.q3):
            tr[c.trace(x)] = tr.get(c.trace(x), 0) + 1
            nm[c.norm(x)] = nm.get(c.norm(x), 0) + 1
        assert all(tr[v] == q * q for v in range(q))
        assert nm[0] == 1
        assert all(nm[v] == q * q + q + 1 for v in range(1, q))


def test_theta_generates():
    for q in (2, 3, 4):
        c = ctx(q)
        powers = set()
        acc = 1
        for _ in range(c.q3 - 1):
            powers.add(acc)
            acc = c.mul3(acc, c.theta)
        assert len(powers) == c.q3 - 1
        assert acc == 1
    # order-divisor route for a larger field
    c = ctx(5)
    n = c.q3 - 1
    for prime in (2, 31):
        assert n % prime == 0
        assert c.pow3(c.theta, n // prime) != 1


def test_alpha_has_no_root():
    for q in (2, 3, 4, 5, 7):
        c = ctx(q)
        for x in range(q):
            # x^2 - x - alpha restricted to the subfield
            val = c.subq(c.subq(c.mulq(x, x), x), c.alpha)
            assert val != 0
        for smaller in range(c.alpha):
            if any(c.subq(c.subq(c.mulq(x, x), x), smaller) == 0 for x in range(q)):
                continue
            raise AssertionError(f"alpha {c.alpha} is not minimal at q={q}")


def test_frobenius():
    c = ctx(2)
    assert c.frobenius(2, 1) == 4  # s -> s^2 in F_8
    rng = random.Random(11)
    for q in (2, 3, 4, 5):
        c = ctx(q)
        for _ in range(50):
            x, y = rng.randrange(c.q3), rng.randrange(c.q3)
            assert c.frobenius(c.frobenius(c.frobenius(x, 1), 1), 1) == x
            assert c.frobenius(x, 0) == x
            assert c.frobenius(c.mul3(x, y), 1) == c.mul3(c.frobenius(x, 1), c.frobenius(y, 1))
        with pytest.raises(ValueError):
            c.frobenius(1, 3)


def test_trace_norm_point_values():
    for q in (2, 3, 4, 5):
        c = ctx(q)
        assert c.trace(0) == 0 and c.norm(0) == 0
        assert c.norm(1) == 1
        three = c.addq(c.addq(1, 1), 1)
        assert c.trace(1) == three


def test_multiplication_against_schoolbook():
    for q in (2, 3, 4):
        c = ctx(q)
        for x in range(c.q3):
            for y in range(c.q3):
                assert c.mul3(x, y) == c._mul3_poly(x, y)


def test_inverses_exhaustive():
    for q in (2, 3, 4):
        c = ctx(q)
        for x in range(1, c.q3):
            assert c.mul3(x, c.inv3(x)) == 1
        with pytest.raises(ZeroDivisionError):
            c.inv3(0)


def test_subfield_embedding():
    rng = random.Random(5)
    for q in (3, 4, 5):
        c = ctx(q)
        assert all(c.in_subfield(x) for x in range(q))
        for _ in range(100):
            a, b = rng.randrange(q), rng.randrange(q)
            assert c.add3(a, b) == c.addq(a, b)
            assert c.mul3(a, b) == c.mulq(a, b)


def test_frob_product_and_digits():
    rng = random.Random(13)
    for q in (2, 3, 4, 5):
        c = ctx(q)
        for _ in range(60):
            x = rng.randrange(c.q3)
            assert c.frob_product(x) == c.mul3(c.frobenius(x, 1), c.frobenius(x, 2))
            assert c.encode3(*c.digits3(x)) == x
