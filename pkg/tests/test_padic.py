import math
from itertools import product

import pytest

from conftest import P2, P3, P5
from xadic import PadicInt, ParseError, PrecisionError, filtration_index, \
    parse_padic


def test_reduction_examples():
    assert PadicInt(P2, -1, 3).value == 7
    assert (PadicInt(P3, 4, 2) + PadicInt(P3, 7, 2)).value == 2
    assert PadicInt(P5, 0) * PadicInt(P5, 123, 4) == PadicInt(P5, 0)


def test_reduction_commutes_with_ring_ops():
    for prime in (P2, P3):
        p = prime.p
        for k in range(1, 5):
            mod = p ** k
            for a, b in product(range(-6, 7), repeat=2):
                ea, eb = PadicInt(prime, a), PadicInt(prime, b)
                assert (ea + eb).reduce(k) == ea.reduce(k) + eb.reduce(k)
                assert (ea * eb).reduce(k) == ea.reduce(k) * eb.reduce(k)
                assert (ea + eb).reduce(k).value == (a + b) % mod


def test_vp():
    assert PadicInt(P2, 12).vp() == 2
    assert PadicInt(P3, 0).vp() == math.inf
    assert PadicInt(P2, 8, 4).vp() == 3
    assert PadicInt(P2, -12).vp() == 2
    with pytest.raises(PrecisionError):
        PadicInt(P2, 16, 4).vp()  # residue 0 mod 2^4


def test_vp_additive_on_products():
    for prime in (P2, P3):
        for a, b in product([1, 2, 3, 4, 6, 9, 12, -8], repeat=2):
            va = PadicInt(prime, a).vp()
            vb = PadicInt(prime, b).vp()
            assert PadicInt(prime, a * b).vp() == va + vb


def test_filtration_index():
    assert filtration_index(P3, 1, 4) == 27
    assert filtration_index(P2, 5, 5) == 1
    for k in range(4):
        assert filtration_index(P5, k, k + 1) == 5
    with pytest.raises(ValueError):
        filtration_index(P2, 3, 1)
    with pytest.raises(ValueError):
        filtration_index(P2, -1, 2)


def test_filtration_index_by_enumeration():
    # residues of 3Z inside Z/3^4 fall into 27 classes mod 3^4 in 3Z
    p, a, b = 3, 1, 4
    residues = {r for r in range(p ** b) if r % p ** a == 0}
    assert len(residues) == filtration_index(P3, a, b)


def test_precision_tracking():
    t = PadicInt(P3, 4, 2) + PadicInt(P3, 1)
    assert t.precision == 2 and t.value == 5
    with pytest.raises(PrecisionError):
        PadicInt(P3, 4, 2).reduce(5)
    with pytest.raises(ValueError):
        PadicInt(P3, 4, 0)


def test_modulus_mismatch():
    with pytest.raises(ValueError):
        PadicInt(P2, 1) + PadicInt(P3, 1)


def test_parse_padic():
    assert parse_padic(P2, "42") == PadicInt(P2, 42)
    assert parse_padic(P2, "-1") == PadicInt(P2, -1)
    assert parse_padic(P3, "5 mod 3^2") == PadicInt(P3, 5, 2)
    with pytest.raises(ParseError):
        parse_padic(P3, "5 mod 2^2")
    with pytest.raises(ParseError):
        parse_padic(P3, "abc")
