"""p-adic integers at finite precision.

A value is either an exact (arbitrary-size, possibly negative) integer or
a residue known mod p^k.  These serve as exponents for principal units;
only ring structure and the divisibility filtration are provided, no
division.
"""

from __future__ import annotations

import math
import re

from .errors import ParseError, PrecisionError
from .ff import Prime


class PadicInt:
    """An element of the p-adic integers, exact or known mod p^k."""

    __slots__ = ("prime", "value", "precision")

    def __init__(self, prime: Prime, value: int, precision: int | None = None):
        if not isinstance(value, int):
            raise TypeError("value must be an int")
        if precision is not None:
            if precision < 1:
                raise ValueError("precision must be >= 1")
            value %= prime.p ** precision
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "precision", precision)

    def __setattr__(self, name, value):
        raise AttributeError("PadicInt is immutable")

    @property
    def is_exact(self) -> bool:
        return self.precision is None

    def reduce(self, k: int) -> PadicInt:
        """Reduction mod p^k (weakening precision)."""
        if self.precision is not None and k > self.precision:
            raise PrecisionError(
                f"value only known mod {self.prime.p}^{self.precision}")
        return PadicInt(self.prime, self.value, k)

    def _combine_precision(self, other: PadicInt) -> int | None:
        if other.prime != self.prime:
            raise ValueError(
                f"modulus mismatch: {self.prime.p} vs {other.prime.p}")
        if self.precision is None:
            return other.precision
        if other.precision is None:
            return self.precision
        return min(self.precision, other.precision)

    def __add__(self, other: PadicInt) -> PadicInt:
        prec = self._combine_precision(other)
        return PadicInt(self.prime, self.value + other.value, prec)

    def __mul__(self, other: PadicInt) -> PadicInt:
        prec = self._combine_precision(other)
        if (self.is_exact and self.value == 0) or \
                (other.is_exact and other.value == 0):
            return PadicInt(self.prime, 0)
        return PadicInt(self.prime, self.value * other.value, prec)

    def __neg__(self) -> PadicInt:
        return PadicInt(self.prime, -self.value, self.precision)

    def __sub__(self, other: PadicInt) -> PadicInt:
        return self + (-other)

    def vp(self) -> int | float:
        """Largest k with p^k dividing the value (+inf for exact zero).

        For a truncated value with residue 0 nothing can be said and a
        PrecisionError is raised.
        """
        if self.value == 0:
            if self.precision is None:
                return math.inf
            raise PrecisionError(
                f"valuation undecidable: 0 mod {self.prime.p}^{self.precision}")
        v, n = 0, abs(self.value)
        while n % self.prime.p == 0:
            n //= self.prime.p
            v += 1
        return v

    def __eq__(self, other) -> bool:
        if not isinstance(other, PadicInt):
            return NotImplemented
        return (self.prime == other.prime and self.precision == other.precision
                and self.value == other.value)

    def __hash__(self) -> int:
        return hash((self.prime.p, self.value, self.precision))

    def __repr__(self) -> str:
        if self.precision is None:
            return f"Zp({self.value})"
        return f"Zp({self.value} mod {self.prime.p}^{self.precision})"


def filtration_index(prime: Prime, a: int, b: int) -> int:
    """Index of the b-th filtration subgroup p^b Z_p inside p^a Z_p.

    Equals p^(b-a); requires b >= a >= 0.
    """
    if a < 0 or b < a:
        raise ValueError(f"need b >= a >= 0, got a={a}, b={b}")
    return prime.p ** (b - a)


_PADIC_MOD = re.compile(r"^(-?\d+)\s*mod\s*(\d+)\^(\d+)$")
_PADIC_INT = re.compile(r"^-?\d+$")


def parse_padic(prime: Prime, text: str) -> PadicInt:
    """Parse a decimal integer or the truncated form "r mod p^k"."""
    s = text.strip()
    m = _PADIC_MOD.match(s)
    if m:
        r, base, k = int(m.group(1)), int(m.group(2)), int(m.group(3))
        if base != prime.p:
            raise ParseError(f"exponent base {base} does not match p={prime.p}")
        return PadicInt(prime, r, k)
    if _PADIC_INT.match(s):
        return PadicInt(prime, int(s))
    raise ParseError(f"bad p-adic exponent {text!r}")
