"""Shared helpers: seeded random generators for series-valued test data."""

from __future__ import annotations

import random

from xadic import AnalyticMap, LaurentSeries, Prime

P2 = Prime(2)
P3 = Prime(3)
P5 = Prime(5)
P7 = Prime(7)


def random_series(rng: random.Random, prime: Prime, *, lo: int = -4,
                  hi: int = 16, max_terms: int = 8,
                  forms: str = "etz") -> LaurentSeries:
    """A random series whose shape is drawn from ``forms``:
    e = exact, t = truncated, z = exact zero / all-unknown mixed in."""
    shape = rng.choice(forms)
    if shape == "z":
        if rng.random() < 0.5:
            return LaurentSeries.zero(prime)
        return LaurentSeries.unknown(prime, rng.randrange(lo, hi + 1))
    coeffs = {}
    for _ in range(rng.randrange(1, max_terms + 1)):
        coeffs[rng.randrange(lo, hi)] = rng.randrange(1, prime.p)
    if shape == "e":
        return LaurentSeries(prime, coeffs)
    precision = rng.randrange(lo + 1, hi + 4)
    return LaurentSeries(prime, coeffs, precision)


def random_nonzero(rng, prime, **kw) -> LaurentSeries:
    while True:
        f = random_series(rng, prime, **kw)
        if f.support:
            return f


def random_unit(rng, prime, *, width: int = 10,
                exact: bool = False) -> LaurentSeries:
    """A random principal unit 1 + (valuation >= 1 tail)."""
    coeffs = {0: 1}
    v = rng.randrange(1, 4)
    coeffs[v] = rng.randrange(1, prime.p)
    for _ in range(rng.randrange(0, 5)):
        coeffs.setdefault(rng.randrange(v, v + width), rng.randrange(1, prime.p))
    if exact:
        return LaurentSeries(prime, coeffs)
    return LaurentSeries(prime, coeffs, v + width)


def random_disk_point(rng, prime, *, max_terms: int = 3,
                      hi: int = 6) -> LaurentSeries:
    """A random exact nonzero point of the open unit disk."""
    coeffs = {rng.randrange(1, hi): rng.randrange(1, prime.p)}
    for _ in range(rng.randrange(0, max_terms)):
        coeffs.setdefault(rng.randrange(1, hi + 3), rng.randrange(1, prime.p))
    return LaurentSeries(prime, coeffs)


def random_map(rng, prime, *, max_index: int = 32, scalar: bool = True,
               zprec: int | None = None, terms: int = 6,
               support_multiple: int = 1, constant: bool = False
               ) -> AnalyticMap:
    """A random disk map with integral coefficients.

    ``support_multiple`` forces all argument exponents into its multiples;
    scalar=False mixes in small polynomial coefficients.
    """
    coeffs = {}
    lo = 0 if constant else 1
    choices = [k for k in range(lo, max_index)
               if k % support_multiple == 0 and k > 0] or [support_multiple]
    for _ in range(rng.randrange(1, terms + 1)):
        k = rng.choice(choices)
        if scalar or rng.random() < 0.5:
            coeffs[k] = LaurentSeries(prime, {0: rng.randrange(1, prime.p)})
        else:
            c = {rng.randrange(0, 4): rng.randrange(1, prime.p)}
            coeffs[k] = LaurentSeries(prime, c)
    if constant:
        coeffs[0] = LaurentSeries(prime, {0: rng.randrange(1, prime.p)})
    return AnalyticMap(prime, coeffs, zprec)


def assert_agree(a: LaurentSeries, b: LaurentSeries, context: str = "") -> None:
    cmp = a.compare(b)
    assert cmp.verdict != "unequal", \
        f"{context} differ at X^{cmp.witness_exponent}: {a} vs {b}"
