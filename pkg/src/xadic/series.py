"""Precision-tracked formal Laurent series over a prime field.

A series is a sparse map from integer exponents to nonzero residues mod p,
together with an optional precision bound N read as an O(X^N) error term:
coefficients below N are exactly the stored ones, everything from N on is
unknown.  ``precision None`` means the stored support is the whole series.
Four shapes fall out of the pair (support, precision):

* exact zero   -- no terms, no O-term
* exact        -- terms only
* truncated    -- terms plus O(X^N); the leading term is known
* all unknown  -- O(X^N) alone, i.e. only "divisible by X^N" is known

Binary operations propagate precision by min-style rules stated on each
method; results never claim more than the inputs justify, and coefficient
queries beyond the bound raise PrecisionError instead of guessing.
Equality questions are answered three-valued through :meth:`compare`.

The variable name is never consulted: an exponent-rescaled copy of the
field (used when extracting q-th roots, q a power of p) lives in the same
representation via :meth:`frobenius_embed` / :meth:`qth_root`.

The element grammar used by the command line is implemented here::

    series := term ("+" term)* ["+" "O(X^" int ")"]
    term   := coeff ["*" "X^" int] | "X^" int
    coeff  := integer (reduced mod p)

Exponents may be negative.  Printing is canonical: ascending exponents,
reduced nonzero coefficients, no O-term on exact series.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import ParseError, PrecisionError
from .ff import FpElement, Prime

#: Fallback absolute precision for operations whose exact result would be an
#: infinite series (inverting a non-monomial exact series, negative powers).
DEFAULT_PRECISION = 64


def _pmin(a: int | None, b: int | None) -> int | None:
    """None-aware min, None meaning +infinity."""
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _padd(a: int | None, b: int) -> int | None:
    return None if a is None else a + b


def binomial_mod(n: int, k: int, p: int) -> int:
    """Binomial coefficient C(n, k) mod p by Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    r = 1
    while k:
        np_, kp = n % p, k % p
        if kp > np_:
            return 0
        r = r * math.comb(np_, kp) % p
        n //= p
        k //= p
    return r


@dataclass(frozen=True)
class Valuation:
    """X-adic valuation: a known integer, +infinity, or a lower bound.

    ``kind`` is one of "finite", "infinite" (the exact zero series) or
    "at_least" (an all-unknown series, which only promises v >= value).
    """

    kind: str
    value: int | None = None

    @classmethod
    def finite(cls, v: int) -> Valuation:
        return cls("finite", v)

    @classmethod
    def infinite(cls) -> Valuation:
        return cls("infinite", None)

    @classmethod
    def at_least(cls, n: int) -> Valuation:
        return cls("at_least", n)

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def __str__(self) -> str:
        if self.kind == "finite":
            return str(self.value)
        if self.kind == "infinite":
            return "+inf"
        return f">={self.value}"


@dataclass(frozen=True)
class Comparison:
    """Three-valued equality verdict between two series.

    "equal" is certain (both exact, same support).  "equal_at_precision"
    means all commonly-known coefficients agree but nothing can be said
    past ``precision``.  "unequal" carries the first differing exponent.
    """

    verdict: str
    precision: int | None = None
    witness_exponent: int | None = None


class LaurentSeries:
    """An element of the Laurent series field over F_p, at finite or exact
    precision.  Instances are immutable; all operations return new values."""

    __slots__ = ("prime", "_coeffs", "_prec")

    def __init__(self, prime: Prime, coeffs: Mapping[int, int] | None = None,
                 precision: int | None = None):
        p = prime.p
        d: dict[int, int] = {}
        if coeffs:
            for e, c in coeffs.items():
                if not isinstance(e, int):
                    raise TypeError("exponents must be ints")
                c = int(c) % p
                if c and (precision is None or e < precision):
                    d[e] = c
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "_coeffs", d)
        object.__setattr__(self, "_prec", precision)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, prime: Prime) -> LaurentSeries:
        return cls(prime)

    @classmethod
    def one(cls, prime: Prime) -> LaurentSeries:
        return cls(prime, {0: 1})

    @classmethod
    def monomial(cls, prime: Prime, exponent: int, coeff: int = 1,
                 precision: int | None = None) -> LaurentSeries:
        return cls(prime, {exponent: coeff}, precision)

    @classmethod
    def unknown(cls, prime: Prime, precision: int) -> LaurentSeries:
        """The all-unknown series O(X^precision)."""
        return cls(prime, None, precision)

    # -- shape -------------------------------------------------------------

    @property
    def precision(self) -> int | None:
        return self._prec

    @property
    def is_exact(self) -> bool:
        return self._prec is None

    @property
    def is_exact_zero(self) -> bool:
        return self._prec is None and not self._coeffs

    @property
    def is_indeterminate(self) -> bool:
        return self._prec is not None and not self._coeffs

    @property
    def support(self) -> tuple[int, ...]:
        """Exponents of the known nonzero coefficients, ascending."""
        return tuple(sorted(self._coeffs))

    def coefficient(self, exponent: int) -> int:
        """Residue at X^exponent; raises PrecisionError past the bound."""
        if self._prec is not None and exponent >= self._prec:
            raise PrecisionError(
                f"coefficient at X^{exponent} not determined (O(X^{self._prec}))")
        return self._coeffs.get(exponent, 0)

    def fp_coefficient(self, exponent: int) -> FpElement:
        return FpElement(self.coefficient(exponent), self.prime)

    def _val_lb(self) -> int | None:
        """Valuation lower bound: None means +infinity (exact zero)."""
        if self._coeffs:
            return min(self._coeffs)
        return self._prec

    def valuation(self) -> Valuation:
        if self._coeffs:
            return Valuation.finite(min(self._coeffs))
        if self._prec is None:
            return Valuation.infinite()
        return Valuation.at_least(self._prec)

    def abs_value(self) -> Fraction:
        """|f| = p^(-v).  The exact zero has |f| = 0; for an all-unknown
        series this is the upper bound p^(-N)."""
        v = self._val_lb()
        if v is None:
            return Fraction(0)
        p = self.prime.p
        return Fraction(1, p ** v) if v >= 0 else Fraction(p ** (-v))

    # -- structural helpers --------------------------------------------------

    def _require_same_prime(self, other: LaurentSeries) -> None:
        if not isinstance(other, LaurentSeries):
            raise TypeError(f"expected LaurentSeries, got {type(other).__name__}")
        if other.prime != self.prime:
            raise ValueError(
                f"modulus mismatch: {self.prime.p} vs {other.prime.p}")

    def truncate(self, precision: int | None) -> LaurentSeries:
        """Weaken to O(X^precision) (no-op when already weaker)."""
        if precision is None:
            return self
        return LaurentSeries(self.prime, self._coeffs,
                             _pmin(self._prec, precision))

    def shifted(self, k: int) -> LaurentSeries:
        """Multiply by X^k (exponent translation)."""
        if k == 0:
            return self
        return LaurentSeries(self.prime,
                             {e + k: c for e, c in self._coeffs.items()},
                             _padd(self._prec, k))

    def scaled(self, c: int | FpElement) -> LaurentSeries:
        """Multiply by the scalar c.  Scaling by 0 gives the exact zero."""
        c = int(c) % self.prime.p
        if c == 0:
            return LaurentSeries.zero(self.prime)
        if c == 1:
            return self
        return LaurentSeries(self.prime,
                             {e: v * c for e, v in self._coeffs.items()},
                             self._prec)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: LaurentSeries) -> LaurentSeries:
        """Coefficientwise sum; precision = min of the operands'."""
        self._require_same_prime(other)
        prec = _pmin(self._prec, other._prec)
        d = dict(self._coeffs)
        for e, c in other._coeffs.items():
            d[e] = d.get(e, 0) + c
        return LaurentSeries(self.prime, d, prec)

    def __neg__(self) -> LaurentSeries:
        return self.scaled(self.prime.p - 1)

    def __sub__(self, other: LaurentSeries) -> LaurentSeries:
        return self + (-other)

    def __mul__(self, other: LaurentSeries) -> LaurentSeries:
        """Cauchy product; precision = min(prec(f)+v(g), prec(g)+v(f))."""
        self._require_same_prime(other)
        if self.is_exact_zero or other.is_exact_zero:
            return LaurentSeries.zero(self.prime)
        prec = _pmin(_padd(self._prec, other._val_lb()),
                     _padd(other._prec, self._val_lb()))
        p = self.prime.p
        d: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = e1 + e2
                if prec is not None and e >= prec:
                    continue
                d[e] = (d.get(e, 0) + c1 * c2) % p
        return LaurentSeries(self.prime, d, prec)

    def __pow__(self, exponent: int) -> LaurentSeries:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = LaurentSeries.one(self.prime)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self, precision: int | None = None) -> LaurentSeries:
        """Multiplicative inverse.

        The leading coefficient must be known and nonzero.  For a series
        truncated at N with valuation v the result carries its natural
        precision N - 2v.  For exact input the inverse is exact when the
        input is a monomial and otherwise an infinite series, computed to
        the requested absolute ``precision`` (DEFAULT_PRECISION if omitted).
        An explicit ``precision`` always caps the result.
        """
        if not self._coeffs:
            if self._prec is None:
                raise ZeroDivisionError("cannot invert the zero series")
            raise PrecisionError(
                f"cannot invert a series only known to be O(X^{self._prec})")
        p = self.prime.p
        v = min(self._coeffs)
        lc_inv = pow(self._coeffs[v], -1, p)
        if len(self._coeffs) == 1 and self._prec is None:
            out = LaurentSeries.monomial(self.prime, -v, lc_inv)
            return out.truncate(precision)
        # u = 1 + h with v(h) >= 1, known to relative precision R
        rel = {e - v: c * lc_inv % p for e, c in self._coeffs.items()}
        natural = _padd(self._prec, -v)
        requested = None if precision is None else precision + v
        rp = _pmin(natural, requested)
        if rp is None:
            rp = DEFAULT_PRECISION + v
        rp = max(rp, 1)  # always resolve at least the leading coefficient
        h = [0] * rp
        for e, c in rel.items():
            if 0 < e < rp:
                h[e] = c
        b = [0] * rp
        b[0] = 1
        for n in range(1, rp):
            acc = 0
            for i in range(1, n + 1):
                if h[i]:
                    acc += h[i] * b[n - i]
            b[n] = (-acc) % p
        coeffs = {i - v: c * lc_inv % p for i, c in enumerate(b) if c}
        return LaurentSeries(self.prime, coeffs, rp - v)

    def __truediv__(self, other: LaurentSeries) -> LaurentSeries:
        self._require_same_prime(other)
        return self * other.inverse()

    def derivative(self) -> LaurentSeries:
        """Termwise k*a_k at exponent k-1, with k reduced mod p."""
        p = self.prime.p
        d = {e - 1: c * (e % p) % p for e, c in self._coeffs.items()}
        return LaurentSeries(self.prime, d, _padd(self._prec, -1))

    # -- substitution --------------------------------------------------------

    def compose(self, argument: LaurentSeries) -> LaurentSeries:
        """Substitute ``argument`` for the variable.

        The receiver is read as a disk map (so it must have no negative
        exponents) and the argument must have valuation >= 1.  Precision
        follows the termwise min rules plus an O(X^(N*v(arg))) tail when
        the receiver is truncated at N.
        """
        self._require_same_prime(argument)
        _check_disk_map(self)
        _check_disk_argument(argument)
        return _evaluate_terms(self.prime, self._coeffs.items(), self._prec,
                               argument)

    def evaluate(self, point: LaurentSeries) -> LaurentSeries:
        """Value at a point of the open unit disk; same rules as compose."""
        return self.compose(point)

    __call__ = evaluate

    def taylor_shift(self, center: LaurentSeries,
                     terms: int | None = None) -> list[LaurentSeries]:
        """Re-expansion coefficients c_i with f(center + h) = sum c_i h^i.

        c_0 = f(center), c_1 = f'(center).  Computed by binomial
        re-expansion with binomials taken mod p.  For a series truncated
        at N only the first N coefficients are determined; asking for more
        raises PrecisionError.
        """
        self._require_same_prime(center)
        _check_disk_map(self)
        _check_disk_argument(center)
        out = _taylor_terms(self.prime, self._coeffs.items(), self._prec,
                            center)
        if terms is None:
            if self._prec is not None:
                terms = self._prec
            else:
                terms = max(self._coeffs) + 1 if self._coeffs else 1
        elif self._prec is not None and terms > self._prec:
            raise PrecisionError(
                f"only {self._prec} shift coefficients are determined "
                f"(O(z^{self._prec}) tail)")
        zero = LaurentSeries.zero(self.prime)
        return [out.get(i, zero) for i in range(terms)]

    # -- characteristic-p exponent surgery ------------------------------------

    def frobenius_embed(self, q: int) -> LaurentSeries:
        """Multiply every exponent by q = p^n, n >= 1 (coefficients kept).

        Over the prime field this is the q-th power map; read with the
        rescaled absolute value it embeds the field into its index-q
        extension downstairs.  Precision scales to q*N.
        """
        q = _check_prime_power(self.prime, q)
        return LaurentSeries(self.prime,
                             {e * q: c for e, c in self._coeffs.items()},
                             None if self._prec is None else self._prec * q)

    def qth_root(self, q: int) -> LaurentSeries:
        """The unique g with g^q = f, for q = p^n.

        Requires every known nonzero coefficient to sit at an exponent
        divisible by q; coefficient roots are the coefficients themselves
        over the prime field.  Precision drops to floor(N/q).
        """
        q = _check_prime_power(self.prime, q)
        for e in self._coeffs:
            if e % q:
                raise ValueError(
                    f"support not contained in {q}Z: exponent {e}")
        return LaurentSeries(self.prime,
                             {e // q: c for e, c in self._coeffs.items()},
                             None if self._prec is None else self._prec // q)

    # -- comparison ----------------------------------------------------------

    def compare(self, other: LaurentSeries) -> Comparison:
        self._require_same_prime(other)
        prec = _pmin(self._prec, other._prec)
        exps = set(self._coeffs) | set(other._coeffs)
        for e in sorted(exps):
            if prec is not None and e >= prec:
                break
            if self._coeffs.get(e, 0) != other._coeffs.get(e, 0):
                return Comparison("unequal", witness_exponent=e)
        if prec is None:
            return Comparison("equal")
        return Comparison("equal_at_precision", precision=prec)

    def agrees_with(self, other: LaurentSeries) -> bool:
        """True unless the two series provably differ."""
        return self.compare(other).verdict != "unequal"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.prime == other.prime and self._prec == other._prec
                and self._coeffs == other._coeffs)

    def __hash__(self) -> int:
        return hash((self.prime.p, self._prec,
                     frozenset(self._coeffs.items())))

    # -- formatting ----------------------------------------------------------

    def __str__(self) -> str:
        parts = []
        for e in sorted(self._coeffs):
            c = self._coeffs[e]
            if e == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"X^{e}")
            else:
                parts.append(f"{c}*X^{e}")
        if self._prec is not None:
            parts.append(f"O(X^{self._prec})")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"<{self} mod {self.prime.p}>"


# -- shared substitution machinery (also backs maps with series coefficients) --

Coefficient = Union[int, LaurentSeries]


def _check_disk_map(f: LaurentSeries) -> None:
    lb = f._val_lb()
    if lb is not None and lb < 0:
        raise ValueError(
            "series with negative exponents cannot act as a map on the "
            "open unit disk; normalize first")


def _check_disk_argument(z0: LaurentSeries) -> None:
    lb = z0._val_lb()
    if lb is not None and lb < 1:
        raise ValueError("argument must lie in the open unit disk "
                         "(valuation >= 1)")


def _term(coeff: Coefficient, zpow: LaurentSeries) -> LaurentSeries:
    if isinstance(coeff, int):
        return zpow.scaled(coeff)
    return coeff * zpow


def _evaluate_terms(prime: Prime, items: Iterable[tuple[int, Coefficient]],
                    zprec: int | None, z0: LaurentSeries) -> LaurentSeries:
    """Sum coeff_k * z0^k plus the O(z^zprec) tail bound."""
    acc = LaurentSeries.zero(prime)
    zpow = LaurentSeries.one(prime)
    last = 0
    for k, coeff in sorted(items, key=lambda kv: kv[0]):
        if k != last:
            zpow = zpow * z0 ** (k - last)
            last = k
        acc = acc + _term(coeff, zpow)
    if zprec is not None:
        lb = z0._val_lb()
        if lb is not None:
            acc = acc.truncate(zprec * lb)
    return acc


def _taylor_terms(prime: Prime, items: Iterable[tuple[int, Coefficient]],
                  zprec: int | None,
                  z0: LaurentSeries) -> dict[int, LaurentSeries]:
    """Coefficients of f(z0 + h) as a map in h, indexed by h-exponent.

    When the map is truncated at zprec, the unknown tail contributes
    O(X^((zprec-i)*v(z0))) to every c_i; those bounds are folded in, so
    absent indices below zprec really are exact zeros.
    """
    p = prime.p
    items = sorted(items, key=lambda kv: kv[0])
    maxk = items[-1][0] if items else 0
    zpows = [LaurentSeries.one(prime)]
    for _ in range(maxk):
        zpows.append(zpows[-1] * z0)
    out: dict[int, LaurentSeries] = {}
    zero = LaurentSeries.zero(prime)
    for k, coeff in items:
        for i in range(k + 1):
            b = binomial_mod(k, i, p)
            if not b:
                continue
            t = _term(coeff, zpows[k - i]).scaled(b)
            out[i] = out.get(i, zero) + t
    if zprec is not None:
        lb = z0._val_lb()
        if lb is not None:
            for i in range(zprec):
                out[i] = out.get(i, zero).truncate((zprec - i) * lb)
    return {i: c for i, c in out.items() if not c.is_exact_zero}


def _check_prime_power(prime: Prime, q: int) -> int:
    if not isinstance(q, int) or q < prime.p:
        raise ValueError(f"{q} is not a positive power of {prime.p}")
    m = q
    while m % prime.p == 0:
        m //= prime.p
    if m != 1:
        raise ValueError(f"{q} is not a positive power of {prime.p}")
    return q


# -- text grammar ------------------------------------------------------------

_TERM_COEFF_X = re.compile(r"^(-?\d+)\*X\^(-?\d+)$")
_TERM_X = re.compile(r"^X\^(-?\d+)$")
_TERM_CONST = re.compile(r"^(-?\d+)$")
_TERM_ORDER = re.compile(r"^O\(X\^(-?\d+)\)$")


def parse_series(prime: Prime, text: str) -> LaurentSeries:
    """Parse the series grammar; inverse of ``str`` on canonical output."""
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise ParseError("empty series")
    tokens = compact.split("+")
    coeffs: dict[int, int] = {}
    precision: int | None = None
    for pos, tok in enumerate(tokens):
        if not tok:
            raise ParseError(f"empty term in {text!r}")
        m = _TERM_ORDER.match(tok)
        if m:
            if pos != len(tokens) - 1:
                raise ParseError("O(...) must be the last term")
            precision = int(m.group(1))
            continue
        m = _TERM_COEFF_X.match(tok)
        if m:
            c, e = int(m.group(1)), int(m.group(2))
        else:
            m = _TERM_X.match(tok)
            if m:
                c, e = 1, int(m.group(1))
            else:
                m = _TERM_CONST.match(tok)
                if m:
                    c, e = int(m.group(1)), 0
                else:
                    raise ParseError(f"bad term {tok!r}")
        coeffs[e] = coeffs.get(e, 0) + c
    return LaurentSeries(prime, coeffs, precision)
