import random
from itertools import product

import pytest

from xadic import FpElement, Prime


def test_prime_validation():
    Prime(2)
    Prime(7)
    Prime(2147483647)
    for bad in (0, 1, 4, 9, 15, 2 ** 31):
        with pytest.raises(ValueError):
            Prime(bad)
    with pytest.raises(TypeError):
        Prime(3.0)


def test_addition_examples():
    assert FpElement(3, Prime(5)) + FpElement(4, Prime(5)) == 2
    assert FpElement(1, Prime(2)) + FpElement(1, Prime(2)) == 0
    three = Prime(3)
    for x in range(3):
        assert three.zero + FpElement(x, three) == x


def test_mul_inv_pow_examples():
    assert FpElement(2, Prime(5)).inverse() == 3
    assert FpElement(3, Prime(7)) ** 6 == 1
    assert FpElement(1, Prime(2)) * FpElement(1, Prime(2)) == 1
    assert FpElement(2, Prime(5)) ** -1 == 3


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_field_axioms_exhaustive(p):
    prime = Prime(p)
    elems = [FpElement(i, prime) for i in range(p)]
    for a, b, c in product(elems, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
    for a, b in product(elems, repeat=2):
        assert a + b == b + a
        assert a * b == b * a
    one, zero = prime.one, prime.zero
    for a in elems:
        assert a + zero == a
        assert a * one == a
        assert a + (-a) == zero
        if a:
            assert a * a.inverse() == one


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_frobenius_fixes_prime_field(p):
    prime = Prime(p)
    for a in range(p):
        assert FpElement(a, prime) ** p == a


def test_large_modulus_random_ops():
    p = 2147483647
    prime = Prime(p)
    rng = random.Random(7)
    for _ in range(50):
        a, b = rng.randrange(p), rng.randrange(p)
        assert FpElement(a, prime) + FpElement(b, prime) == (a + b) % p
        assert FpElement(a, prime) * FpElement(b, prime) == (a * b) % p


def test_errors():
    with pytest.raises(ValueError):
        FpElement(1, Prime(2)) + FpElement(1, Prime(3))
    with pytest.raises(ZeroDivisionError):
        FpElement(0, Prime(5)).inverse()
    with pytest.raises(ZeroDivisionError):
        FpElement(0, Prime(5)) ** -2
    with pytest.raises(ZeroDivisionError):
        FpElement(3, Prime(5)) / FpElement(0, Prime(5))
