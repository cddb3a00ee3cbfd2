import random
from fractions import Fraction

import pytest

from qlaumon.scalars import (Jet, PRIME, PrimeScalar, spow)
from qlaumon.params import sample_params


def test_rational_basics():
    assert Fraction(1, 3) + Fraction(1, 6) == Fraction(1, 2)


def test_jet_multiplication_kills_h_squared():
    assert Jet(1, 1) * Jet(1, -1) == Jet(1)


def test_jet_inverse():
    x = Jet(Fraction(3, 4), Fraction(5, 2))
    assert x * x.inv() == Jet(1)
    with pytest.raises(ZeroDivisionError):
        Jet(0, 1).inv()


def test_prime_field_inverse():
    rng = random.Random(0)
    for _ in range(20):
        x = PrimeScalar(rng.randrange(1, PRIME))
        assert x * (1 / x) == PrimeScalar(1)
    with pytest.raises(ZeroDivisionError):
        1 / PrimeScalar(0)


def test_prime_field_pow():
    x = PrimeScalar(12345)
    assert x ** 3 == x * x * x
    assert x ** -2 == 1 / (x * x)


def test_jet_agrees_with_rational_on_constant_parts():
    rng = random.Random(1)
    ops = "+-*/"
    for _ in range(1000):
        a = Fraction(rng.randrange(-9, 10), rng.randrange(1, 10))
        b = Fraction(rng.randrange(-9, 10), rng.randrange(1, 10))
        ja = Jet(a, Fraction(rng.randrange(-5, 6)))
        jb = Jet(b, Fraction(rng.randrange(-5, 6)))
        op = ops[rng.randrange(4)]
        if op == "/" and (b == 0):
            continue
        if op == "+":
            r, j = a + b, ja + jb
        elif op == "-":
            r, j = a - b, ja - jb
        elif op == "*":
            r, j = a * b, ja * jb
        else:
            r, j = a / b, ja / jb
        assert j.a == r


def test_spow_negative():
    assert spow(Fraction(2, 3), -2) == Fraction(9, 4)
    assert spow(PrimeScalar(7), -1) * PrimeScalar(7) == PrimeScalar(1)


def test_sampling_deterministic():
    a = sample_params(1, 2)
    b = sample_params(1, 2)
    assert a.sqrt_q == b.sqrt_q and a.sqrt_b == b.sqrt_b
    assert a.q == b.q and a.b(0) == b.b(0)


def test_sampling_seed_sensitive():
    assert sample_params(1, 2).sqrt_q != sample_params(2, 2).sqrt_q


def test_sampling_generic():
    ps = sample_params(7, 3)
    one = ps.field.one
    assert ps.q and ps.q != one and ps.q != -one
    assert ps.b(0) * ps.b(1) * ps.b(2)


def test_sampling_rejects_zero_rank():
    with pytest.raises(ValueError):
        sample_params(1, 0)


def test_square_root_accessors_square_correctly():
    for mode in ("rational", "prime"):
        ps = sample_params(3, 3, mode)
        assert ps.sqrt_q * ps.sqrt_q == ps.q
        assert ps.sqrt_kappa ** 2 == ps.kappa
        for i in range(3):
            assert ps.sqrt_b[i] ** 2 == ps.b(i)
            assert ps.sqrt_mass(i) ** 2 == ps.d(i) * ps.dbar(i)
        total = ps.field.one
        for i in range(3):
            total = total * ps.sqrt_mass(i)
        assert total * total == ps.mass_product()


def test_t_accessor_is_inverse_kappa_power():
    ps = sample_params(4, 3)
    assert ps.t * spow(ps.kappa, 3) == ps.field.one


def test_prime_mode_elements_live_in_prime_field():
    ps = sample_params(5, 2, "prime")
    assert isinstance(ps.q, PrimeScalar)
