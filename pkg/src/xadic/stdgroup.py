"""One-dimensional analytic group laws on balls, and the index obstruction.

A group law is a bivariate series F(z, w) over F_p with F(z,0) = z,
F(0,w) = w and associativity, all checked at total-degree precision.  Two
laws are built in: the additive one (z + w) and the multiplicative one
(z + w + z*w, the chart 1 + z of the principal units).

From a law we form the p-fold power map f(z) = z * ... * z, whose linear
term always vanishes in characteristic p.  The contraction constant C
bounds it by |f(z)| <= C |z|^2 on a ball of radius r, which pushes the
image of a closed ball two levels deeper than the ball itself; comparing
the resulting index p^2 with the index p of the corresponding step in the
p-adic filtration refutes the existence of a compatible analytic group
structure on a group isomorphic to the p-adic integers.  ``index_gap_demo``
packages that argument as a checkable report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import PrecisionError
from .ff import Prime
from .padic import filtration_index
from .series import LaurentSeries
from .units import closure_enum

_Exp = tuple[int, ...]


def _mp_mul(a: dict[_Exp, int], b: dict[_Exp, int], p: int,
            cap: int | None) -> dict[_Exp, int]:
    out: dict[_Exp, int] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            if cap is not None and sum(e) >= cap:
                continue
            out[e] = (out.get(e, 0) + c1 * c2) % p
    return {e: c for e, c in out.items() if c}


def _mp_substitute(law: dict[tuple[int, int], int], a: dict[_Exp, int],
                   b: dict[_Exp, int], p: int, cap: int | None,
                   nvars: int) -> dict[_Exp, int]:
    """Sum c_ij * a^i * b^j over the law's terms, with memoized powers."""
    one = {(0,) * nvars: 1}
    apow, bpow = {0: one}, {0: one}

    def power(cache, base, e):
        while e not in cache:
            k = max(cache)
            cache[k + 1] = _mp_mul(cache[k], base, p, cap)
        return cache[e]

    out: dict[_Exp, int] = {}
    for (i, j), c in law.items():
        term = _mp_mul(power(apow, a, i), power(bpow, b, j), p, cap)
        for e, v in term.items():
            out[e] = (out.get(e, 0) + c * v) % p
    return {e: c for e, c in out.items() if c}


class GroupLaw1D:
    """A bivariate series F(z, w) meant to be a group multiplication.

    ``coeffs`` maps (i, j) to the scalar coefficient of z^i w^j;
    ``total_precision`` None means the law is an exact polynomial,
    otherwise terms of total degree >= T are unknown.
    """

    __slots__ = ("prime", "coeffs", "total_precision")

    def __init__(self, prime: Prime, coeffs, total_precision: int | None = None):
        d = {}
        for (i, j), c in dict(coeffs).items():
            if i < 0 or j < 0:
                raise ValueError("law exponents must be nonnegative")
            if total_precision is not None and i + j >= total_precision:
                continue
            c %= prime.p
            if c:
                d[(i, j)] = c
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "coeffs", d)
        object.__setattr__(self, "total_precision", total_precision)

    def __setattr__(self, name, value):
        raise AttributeError("GroupLaw1D is immutable")

    @classmethod
    def additive(cls, prime: Prime) -> GroupLaw1D:
        return cls(prime, {(1, 0): 1, (0, 1): 1})

    @classmethod
    def multiplicative(cls, prime: Prime) -> GroupLaw1D:
        """(z, w) |-> z + w + z*w, i.e. (1+z)(1+w) - 1."""
        return cls(prime, {(1, 0): 1, (0, 1): 1, (1, 1): 1})

    def __repr__(self) -> str:
        return f"GroupLaw1D({self.coeffs!r} mod {self.prime.p})"


def law_check(law: GroupLaw1D) -> bool:
    """Unit laws F(z,0) = z, F(0,w) = w and associativity, at the law's
    total-degree precision."""
    edge_z = {i: c for (i, j), c in law.coeffs.items() if j == 0}
    edge_w = {j: c for (i, j), c in law.coeffs.items() if i == 0}
    if edge_z != {1: 1} or edge_w != {1: 1}:
        return False
    p, cap = law.prime.p, law.total_precision
    z = {(1, 0, 0): 1}
    w = {(0, 1, 0): 1}
    u = {(0, 0, 1): 1}
    f_zw = _mp_substitute(law.coeffs, z, w, p, cap, 3)
    f_wu = _mp_substitute(law.coeffs, w, u, p, cap, 3)
    left = _mp_substitute(law.coeffs, f_zw, u, p, cap, 3)
    right = _mp_substitute(law.coeffs, z, f_wu, p, cap, 3)
    return left == right


def _apply_law(law: GroupLaw1D, a: LaurentSeries,
               b: LaurentSeries) -> LaurentSeries:
    """F(a, b) for series arguments of valuation >= 1."""
    acc = LaurentSeries.zero(law.prime)
    apow, bpow = {0: LaurentSeries.one(law.prime)}, \
                 {0: LaurentSeries.one(law.prime)}

    def power(cache, base, e):
        while e not in cache:
            k = max(cache)
            cache[k + 1] = cache[k] * base
        return cache[e]

    for (i, j), c in sorted(law.coeffs.items()):
        acc = acc + (power(apow, a, i) * power(bpow, b, j)).scaled(c)
    if law.total_precision is not None:
        acc = acc.truncate(law.total_precision)
    return acc


def pth_power(law: GroupLaw1D, precision: int) -> LaurentSeries:
    """The p-fold iterated law z * z * ... * z as a univariate series
    mod z^precision.  Exact laws give exact results when no terms are cut."""
    if not law_check(law):
        raise ValueError("not a group law at its precision")
    if law.total_precision is not None and law.total_precision < precision:
        raise PrecisionError(
            f"law known to total degree {law.total_precision} cannot "
            f"support precision {precision}")
    z = LaurentSeries.monomial(law.prime, 1)
    acc = z
    for _ in range(law.prime.p - 1):
        acc = _apply_law(law, acc, z)
    if acc.precision is None and \
            (not acc._coeffs or max(acc._coeffs) < precision):
        return acc
    return acc.truncate(precision)


def contraction_constant(f: LaurentSeries,
                         r: Fraction | None = None) -> Fraction:
    """C = M / r^2 with M the sum of |a_k| r^k over the known terms of
    degree >= 2, plus the tail bound r^N for a truncated series.

    Requires zero constant and linear terms (so that |f(z)| <= C |z|^2
    on the ball of radius r).  The ultrametric max would be sharper than
    the sum; the sum is kept as the stated contract.
    """
    p = f.prime.p
    if r is None:
        r = Fraction(1, p)
    if not 0 < r <= 1:
        raise ValueError("radius must lie in (0, 1]")
    if f.precision is not None and f.precision < 2:
        raise PrecisionError(
            "cannot check that constant and linear terms vanish")
    for e in f.support:
        if e < 0:
            raise ValueError("coefficients must lie in the valuation ring")
        if e < 2:
            raise ValueError(f"nonzero low-order term at X^{e}")
    m = sum((r ** e for e in f.support), Fraction(0))
    if f.precision is not None:
        m += r ** f.precision
    return m / r ** 2


def ball_index(prime: Prime, n: int, k: int, l: int) -> int:
    """Index of the closed ball of radius p^-l inside the one of radius
    p^-k in n-dimensional space: p^(n*(l-k)), for l >= k."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if l < k:
        raise ValueError(f"need l >= k, got k={k}, l={l}")
    return prime.p ** (n * (l - k))


def enumerate_ball_cosets(prime: Prime, n: int, k: int,
                          l: int) -> list[tuple[LaurentSeries, ...]]:
    """All coset representatives of the radius-p^-l ball inside the
    radius-p^-k ball: n-tuples of series supported on exponents [k, l).

    Representatives are pairwise inequivalent (two tuples agree mod the
    smaller ball iff they are identical), so the list length realizes the
    ball index by brute force.
    """
    if l < k:
        raise ValueError(f"need l >= k, got k={k}, l={l}")
    exps = range(k, l)
    single = [LaurentSeries(prime, dict(zip(exps, digits)))
              for digits in product(range(prime.p), repeat=l - k)]
    return [tuple(combo) for combo in product(single, repeat=n)]


@dataclass(frozen=True)
class ContradictionReport:
    """Checkable record of the incompatibility argument.

    The p-th power map of the law contracts the closed ball at level
    ball_exponent+1 into the one at level ball_exponent+3 (verified on
    every coset of the level ball_exponent+4 sub-ball), so its image has
    index >= ambient_index = p^2 there; but in a group isomorphic to the
    p-adic integers the same map has image of index zp_index = p.
    """

    law: str
    p: int
    generator_exponent: int
    power_map: LaurentSeries = field(repr=False)
    linear_term_zero: bool
    contraction: Fraction
    ball_exponent: int
    inclusion_verified: bool
    ambient_index: int
    zp_index: int
    inequality_refuted: str


def index_gap_demo(prime: Prime, generator_exponent: int,
                   precision: int = 16) -> ContradictionReport:
    """Run the whole obstruction pipeline for the multiplicative law and
    the closure generated by 1 + X^generator_exponent."""
    p = prime.p
    if generator_exponent < 2 or math.gcd(generator_exponent, p) != 1:
        raise ValueError("generator exponent must be >= 2 and coprime to p")
    law = GroupLaw1D.multiplicative(prime)
    f = pth_power(law, precision)
    c = contraction_constant(f)
    r = Fraction(1, p)
    ell = 1
    while c * Fraction(1, p ** ell) > Fraction(1, p ** 2) or \
            Fraction(1, p ** ell) > r:
        ell += 1
    reps = enumerate_ball_cosets(prime, 1, ell + 1, ell + 4)
    inclusion = True
    for (rep,) in reps:
        lb = f.evaluate(rep)._val_lb()
        if lb is not None and lb < ell + 3:
            inclusion = False
            break
    ambient = ball_index(prime, 1, ell + 1, ell + 3)
    zp = filtration_index(prime, 0, 1)
    level_one = closure_enum(prime, generator_exponent,
                             generator_exponent + 1)
    if len(level_one.residues) != zp:
        raise RuntimeError("internal: closure level-1 residue count != p")
    text = (f"a compatible analytic structure would force "
            f"{zp} = [W : pW] >= (q^n)^2 = {ambient}; "
            f"impossible since {zp} < {ambient}")
    return ContradictionReport(law="multiplicative", p=p,
                               generator_exponent=generator_exponent,
                               power_map=f,
                               linear_term_zero=f.coefficient(1) == 0,
                               contraction=c, ball_exponent=ell,
                               inclusion_verified=inclusion,
                               ambient_index=ambient, zp_index=zp,
                               inequality_refuted=text)
