"""Arithmetic in the prime field F_p.

Residues are stored canonically reduced to [0, p).  The modulus is a
`Prime`, checked by trial division at construction; two elements combine
only when their moduli agree.  All values are immutable and operations
are pure, so they are safe to share between threads.
"""

from __future__ import annotations


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Prime:
    """A verified prime modulus.

    Bounded to 31 bits so trial division stays instantaneous; the library
    is built for very small characteristics anyway.
    """

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int):
            raise TypeError("prime modulus must be an int")
        if p < 2 or p >= 1 << 31:
            raise ValueError(f"modulus out of range: {p}")
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Prime is immutable")

    def element(self, value: int) -> FpElement:
        return FpElement(value, self)

    @property
    def zero(self) -> FpElement:
        return FpElement(0, self)

    @property
    def one(self) -> FpElement:
        return FpElement(1, self)

    def __int__(self) -> int:
        return self.p

    def __eq__(self, other) -> bool:
        return isinstance(other, Prime) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Prime", self.p))

    def __repr__(self) -> str:
        return f"Prime({self.p})"


class FpElement:
    """A residue mod p supporting field arithmetic.

    Integers mix freely on either side of an operator and are reduced
    first, e.g. ``FpElement(3, five) + 4 == FpElement(2, five)``.
    """

    __slots__ = ("residue", "prime")

    def __init__(self, value: int, prime: Prime):
        object.__setattr__(self, "residue", value % prime.p)
        object.__setattr__(self, "prime", prime)

    def __setattr__(self, name, value):
        raise AttributeError("FpElement is immutable")

    def _coerce(self, other) -> int:
        if isinstance(other, FpElement):
            if other.prime != self.prime:
                raise ValueError(
                    f"modulus mismatch: {self.prime.p} vs {other.prime.p}")
            return other.residue
        if isinstance(other, int):
            return other % self.prime.p
        return NotImplemented

    def __add__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return NotImplemented
        return FpElement(self.residue + r, self.prime)

    __radd__ = __add__

    def __sub__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return NotImplemented
        return FpElement(self.residue - r, self.prime)

    def __rsub__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return NotImplemented
        return FpElement(r - self.residue, self.prime)

    def __mul__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return NotImplemented
        return FpElement(self.residue * r, self.prime)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement(-self.residue, self.prime)

    def inverse(self) -> FpElement:
        if self.residue == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return FpElement(pow(self.residue, -1, self.prime.p), self.prime)

    def __truediv__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return NotImplemented
        return self * FpElement(r, self.prime).inverse()

    def __rtruediv__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return NotImplemented
        return FpElement(r, self.prime) * self.inverse()

    def __pow__(self, exponent: int) -> FpElement:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0 and self.residue == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return FpElement(pow(self.residue, exponent, self.prime.p), self.prime)

    def __bool__(self) -> bool:
        return self.residue != 0

    def __int__(self) -> int:
        return self.residue

    def __eq__(self, other) -> bool:
        if isinstance(other, FpElement):
            return self.prime == other.prime and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.prime.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.prime.p, self.residue))

    def __repr__(self) -> str:
        return f"F{self.prime.p}({self.residue})"
