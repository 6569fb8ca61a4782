import random

import pytest

from conftest import P2, P3, P5, random_map
from xadic import (AnalyticMap, LaurentSeries, MultiplesOfWitness,
                   PowersOfTwoWitness, PrecisionError, ZeroAtPrecision,
                   certify_multiples_of, certify_powers_of_two, leading_term,
                   normalize, parse_series, support_p_level,
                   verify_multiples_of, verify_powers_of_two,
                   witness_multiples_of, witness_powers_of_two)


def S(prime, text):
    return parse_series(prime, text)


# -- normalization -------------------------------------------------------------

def test_normalize_constant_only():
    trace, g = normalize(S(P5, "3 + X^1"))
    assert trace.subtracted_constant == S(P5, "3")
    assert trace.argument_scale == 0
    assert g.support == (1,) and g.coefficient(1) == S(P5, "1")


def test_normalize_scales_bad_coefficient():
    f = AnalyticMap(P2, {1: S(P2, "X^-2")})
    trace, g = normalize(f)
    assert trace.argument_scale == 2
    assert g.coefficient(1) == S(P2, "1")
    # mixed case: worst coefficient dictates the scale
    f = AnalyticMap(P3, {1: S(P3, "X^-1"), 2: S(P3, "X^-5")})
    trace, g = normalize(f)
    assert trace.argument_scale == 3  # ceil(5/2)
    for k in g.support:
        assert g.coefficient(k)._val_lb() >= 0


def test_normalize_idempotent():
    trace, g = normalize(S(P2, "X^1 + X^3"))
    trace2, g2 = normalize(g)
    assert trace2.argument_scale == 0
    assert trace2.subtracted_constant.is_exact_zero
    assert g2 == g


def test_normalize_rejects_unknown_constant():
    with pytest.raises(PrecisionError):
        normalize(LaurentSeries.unknown(P2, 6))


# -- leading term and support level ---------------------------------------------

def test_leading_term_examples():
    lead = leading_term(AnalyticMap.from_series(S(P2, "X^3 + X^5")))
    assert (lead.index, lead.xshift) == (3, 0)
    assert lead.unit_part == S(P2, "1")
    lead = leading_term(AnalyticMap(P3, {2: S(P3, "X^2"), 4: 1}))
    assert (lead.index, lead.xshift) == (2, 2)
    assert lead.unit_part == S(P3, "1")
    assert leading_term(AnalyticMap(P2, {}, zprec=5)) is None


def test_support_p_level():
    assert support_p_level(AnalyticMap.from_series(S(P3, "X^3 + X^6"))) == 1
    assert support_p_level(AnalyticMap.from_series(S(P2, "X^4 + X^8"))) == 2
    assert support_p_level(AnalyticMap.from_series(S(P2, "X^1"))) == 0


# -- powers-of-two witness -------------------------------------------------------

def test_powers_witness_hand_cases():
    rep = witness_powers_of_two(S(P2, "X^1"))
    assert isinstance(rep, PowersOfTwoWitness)
    assert (rep.leading.index, rep.leading.xshift, rep.n) == (1, 0, 3)
    assert rep.offending_exponent == 3
    assert rep.evaluated == S(P2, "X^3")

    rep = witness_powers_of_two(S(P2, "X^2"))
    assert rep.n == 3 and rep.offending_exponent == 6

    # leading coefficient X * z: n starts at xshift + 1 = 2
    rep = witness_powers_of_two(AnalyticMap(P2, {1: S(P2, "X^1")}))
    assert rep.leading.xshift == 1
    assert rep.n >= 2
    assert rep.offending_exponent == rep.n + 1
    assert not (rep.offending_exponent & (rep.offending_exponent - 1) == 0
                and rep.offending_exponent >= 1)


def test_powers_witness_zero_at_precision():
    rep = witness_powers_of_two(AnalyticMap(P2, {}, zprec=9))
    assert isinstance(rep, ZeroAtPrecision) and rep.precision == 9


def test_powers_witness_requires_normalization():
    with pytest.raises(ValueError):
        witness_powers_of_two(S(P2, "1 + X^1"))
    with pytest.raises(ValueError):
        witness_powers_of_two(AnalyticMap(P2, {1: S(P2, "X^-1")}))


def test_powers_witness_insufficient_precision():
    # unknown coefficient below the leading one blocks the evaluation
    g = AnalyticMap(P2, {1: LaurentSeries.unknown(P2, 2), 3: 1})
    with pytest.raises(PrecisionError):
        witness_powers_of_two(g)


def test_powers_witness_random_soundness():
    rng = random.Random(33)
    for prime in (P2, P3):
        for _ in range(50):
            g = random_map(rng, prime, scalar=False, zprec=64)
            rep = witness_powers_of_two(g)
            assert isinstance(rep, PowersOfTwoWitness)
            assert verify_powers_of_two(g, rep)


# -- multiples-of witness --------------------------------------------------------

def test_multiples_witness_hand_cases():
    rep = witness_multiples_of(S(P2, "X^1"), 3)
    assert isinstance(rep, MultiplesOfWitness)
    assert (rep.branch, rep.q, rep.tau, rep.shift) == ("A", 1, 0, 1)
    assert rep.delta == S(P2, "X^1")
    assert rep.offending_valuation == 1

    rep = witness_multiples_of(S(P2, "X^2"), 3)
    assert (rep.branch, rep.root_level, rep.q) == ("B", 1, 2)
    assert (rep.tau, rep.shift) == (0, 1)
    assert rep.delta == S(P2, "X^2")
    assert rep.offending_valuation == 2

    rep = witness_multiples_of(S(P3, "X^3"), 2)
    assert (rep.branch, rep.q, rep.tau, rep.shift) == ("B", 3, 0, 1)
    assert rep.delta == S(P3, "X^3")
    assert rep.offending_valuation == 3


def test_multiples_witness_two_shift_fallback():
    # tau = 4 at the base point, so the minimal shift gives 4 + 5 = 9,
    # a multiple of 3; the engine must fall back to the second shift
    g = AnalyticMap(P2, {3: S(P2, "X^2")})
    rep = witness_multiples_of(g, 3)
    assert (rep.tau, rep.shift) == (4, 6)
    assert rep.offending_valuation == 10
    assert rep.delta == S(P2, "X^10 + X^15 + X^20")
    assert verify_multiples_of(g, rep)


def test_multiples_witness_validation():
    with pytest.raises(ValueError):
        witness_multiples_of(S(P2, "X^1"), 2)  # ell not coprime to p
    with pytest.raises(ValueError):
        witness_multiples_of(S(P2, "X^1"), 1)
    with pytest.raises(ValueError):
        witness_multiples_of(S(P2, "1 + X^1"), 3)  # not normalized
    rep = witness_multiples_of(AnalyticMap(P3, {}, zprec=4), 2)
    assert isinstance(rep, ZeroAtPrecision)


def test_multiples_witness_blocked_root():
    g = AnalyticMap(P2, {2: 1, 1: LaurentSeries.unknown(P2, 3)})
    with pytest.raises(PrecisionError):
        witness_multiples_of(g, 3)


def test_multiples_witness_tail_parity_not_assumed():
    # known support is even, but the O(z^12) tail could hide odd indices
    # whose contribution lands below the root-branch prediction; the
    # engine must refuse rather than certify
    g = AnalyticMap(P2, {10: S(P2, "X^7 + X^13 + X^15")}, zprec=12)
    with pytest.raises(PrecisionError):
        witness_multiples_of(g, 5)
    # with an exact map (no tail) the same data certifies fine
    exact = AnalyticMap(P2, {10: S(P2, "X^7 + X^13 + X^15")})
    rep = witness_multiples_of(exact, 5)
    assert verify_multiples_of(exact, rep)


def test_multiples_witness_random_soundness():
    rng = random.Random(35)
    for prime, ell in ((P2, 3), (P3, 2), (P2, 5)):
        branch_b = 0
        for i in range(50):
            forced = prime.p if i % 2 else 1
            g = random_map(rng, prime, scalar=False,
                           support_multiple=forced)
            rep = witness_multiples_of(g, ell)
            assert isinstance(rep, MultiplesOfWitness)
            assert rep.offending_valuation % ell != 0
            assert verify_multiples_of(g, rep)
            branch_b += rep.branch == "B"
        assert branch_b >= 10


def test_branch_a_valuation_law():
    # v(f(z0 + X^j) - f(z0)) = tau + j for every shift j > tau
    rng = random.Random(47)
    checked = 0
    for _ in range(40):
        prime = rng.choice((P2, P3))
        g = random_map(rng, prime, scalar=False, max_index=9)
        if support_p_level(g) != 0:
            continue
        rep = witness_multiples_of(g, 3 if prime.p == 2 else 2)
        z0 = rep.base_point
        for j in range(rep.tau + 1, rep.tau + 5):
            delta = g.evaluate(z0 + LaurentSeries.monomial(prime, j)) \
                - g.evaluate(z0)
            assert delta.valuation().value == rep.tau + j
            checked += 1
    assert checked > 20


def test_multiples_witness_series_coefficient_base_search():
    # leading derivative coefficient carries an X-power, so tau > 0
    g = AnalyticMap(P2, {1: S(P2, "X^4"), 3: 1})
    rep = witness_multiples_of(g, 3)
    assert verify_multiples_of(g, rep)
    assert rep.offending_valuation % 3 != 0


# -- drivers and transport --------------------------------------------------------

def test_certify_transports_to_original():
    rng = random.Random(37)
    for _ in range(30):
        prime = rng.choice((P2, P3))
        f = random_map(rng, prime, scalar=False, constant=True)
        # plant one deep coefficient so the map is never constant
        f = AnalyticMap(prime, {**{k: f.coefficient(k) for k in f.support},
                                7: S(prime, "X^-3")})
        trace, rep = certify_powers_of_two(f)
        assert isinstance(rep, PowersOfTwoWitness)
        assert trace.argument_scale >= 1  # X^-3 at z^7 forces a rescale
        ell = 3 if prime.p == 2 else 2
        trace2, rep2 = certify_multiples_of(f, ell)
        assert isinstance(rep2, MultiplesOfWitness)


def test_certify_zero_map():
    trace, rep = certify_powers_of_two(S(P2, "1 + O(X^6)"))
    assert isinstance(rep, ZeroAtPrecision) and rep.precision == 6
    trace, rep = certify_multiples_of(S(P3, "2"), 2)
    assert isinstance(rep, ZeroAtPrecision) and rep.precision is None


def test_completeness_at_precision():
    # every nonzero normalized input yields a certificate or a precise
    # precision failure, never a silent wrong answer
    rng = random.Random(39)
    outcomes = {"cert": 0, "precision": 0}
    for _ in range(60):
        prime = rng.choice((P2, P3))
        zprec = rng.choice((None, 8, 16))
        g = random_map(rng, prime, scalar=False, zprec=zprec, max_index=7)
        ell = 3 if prime.p == 2 else 2
        for engine in (witness_powers_of_two,
                       lambda m: witness_multiples_of(m, ell)):
            try:
                rep = engine(g)
            except PrecisionError:
                outcomes["precision"] += 1
                continue
            assert not isinstance(rep, ZeroAtPrecision)
            outcomes["cert"] += 1
    assert outcomes["cert"] > 0
