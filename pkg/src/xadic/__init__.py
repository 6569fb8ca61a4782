"""Exact X-adic arithmetic over prime fields with witness certificates.

The package implements the local field of formal Laurent series over F_p
at explicit finite precision, disk maps with series coefficients, p-adic
exponents for principal units, support-defined subgroups, and engines
that turn a claimed containment of a nonconstant map in such a subgroup
into a concrete, independently checkable counterexample.
"""

from .analytic import AnalyticMap
from .errors import ParseError, PrecisionError
from .ff import FpElement, Prime
from .padic import PadicInt, filtration_index, parse_padic
from .series import (DEFAULT_PRECISION, Comparison, LaurentSeries, Valuation,
                     binomial_mod, parse_series)
from .stdgroup import (ContradictionReport, GroupLaw1D, ball_index,
                       contraction_constant, enumerate_ball_cosets,
                       index_gap_demo, law_check, pth_power)
from .subgroups import (ExplicitSet, ExponentSet, MembershipVerdict,
                        MultiplesOf, PowersOfTwo, member,
                        reindex_powers_of_two)
from .units import ClosureReport, UnitDecomposition, closure_enum, decompose, \
    padic_pow
from .witness import (LeadingTerm, MultiplesOfWitness, NormalizationTrace,
                      PowersOfTwoWitness, WitnessReport, ZeroAtPrecision,
                      certify_multiples_of, certify_powers_of_two,
                      leading_term, normalize, support_p_level,
                      verify_multiples_of, verify_powers_of_two,
                      witness_multiples_of, witness_powers_of_two)

__version__ = "0.1.0"

__all__ = [
    "AnalyticMap", "ClosureReport", "Comparison", "ContradictionReport",
    "DEFAULT_PRECISION", "ExplicitSet", "ExponentSet", "FpElement",
    "GroupLaw1D", "LaurentSeries", "LeadingTerm", "MembershipVerdict",
    "MultiplesOf", "MultiplesOfWitness", "NormalizationTrace", "PadicInt",
    "ParseError", "PowersOfTwo", "PowersOfTwoWitness", "PrecisionError",
    "Prime", "UnitDecomposition", "Valuation", "WitnessReport",
    "ZeroAtPrecision", "ball_index", "binomial_mod", "certify_multiples_of",
    "certify_powers_of_two", "closure_enum", "contraction_constant",
    "decompose", "enumerate_ball_cosets", "filtration_index",
    "index_gap_demo", "law_check", "leading_term", "member", "normalize",
    "padic_pow", "parse_padic", "parse_series", "pth_power",
    "reindex_powers_of_two", "support_p_level", "verify_multiples_of",
    "verify_powers_of_two", "witness_multiples_of", "witness_powers_of_two",
]
