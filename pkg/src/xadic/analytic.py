"""Analytic maps on the open unit disk with Laurent-series coefficients.

A map z |-> sum a_k z^k is stored as a sparse dict from nonnegative
argument exponents to coefficient series, plus an optional argument
precision: coefficients at indices >= zprec are unknown (an O(z^zprec)
tail), absent indices below it are exactly zero.  A plain series promotes
to the map with the same scalar coefficients via :meth:`from_series`.

The witness machinery works with maps whose coefficients all have
valuation >= 0; evaluation and re-expansion enforce that.  Extracting the
coefficient-wise q-th root (q a power of p) reinterprets the result over
the exponent-rescaled field, which shares the series representation, so
no second value type appears.
"""

from __future__ import annotations

from typing import Mapping, Union

from .errors import PrecisionError
from .ff import Prime
from .series import (LaurentSeries, _check_disk_argument, _check_prime_power,
                     _evaluate_terms, _taylor_terms)


class AnalyticMap:
    """A disk map given by its coefficient series.  Immutable."""

    __slots__ = ("prime", "_coeffs", "_zprec")

    def __init__(self, prime: Prime,
                 coeffs: Mapping[int, Union[int, LaurentSeries]],
                 zprec: int | None = None):
        d: dict[int, LaurentSeries] = {}
        for k, c in coeffs.items():
            if not isinstance(k, int) or k < 0:
                raise ValueError("argument exponents must be nonnegative ints")
            if isinstance(c, int):
                c = LaurentSeries(prime, {0: c})
            if c.prime != prime:
                raise ValueError(f"modulus mismatch: {prime.p} vs {c.prime.p}")
            if zprec is not None and k >= zprec:
                continue
            if c.is_exact_zero:
                continue
            d[k] = c
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "_coeffs", d)
        object.__setattr__(self, "_zprec", zprec)

    def __setattr__(self, name, value):
        raise AttributeError("AnalyticMap is immutable")

    @classmethod
    def from_series(cls, f: LaurentSeries) -> AnalyticMap:
        """Read a plain series as the map with those scalar coefficients."""
        if f.is_indeterminate:
            raise PrecisionError(
                "an all-unknown series determines no map coefficients")
        lb = f._val_lb()
        if lb is not None and lb < 0:
            raise ValueError(
                "series with negative exponents cannot act as a disk map")
        return cls(f.prime,
                   {k: LaurentSeries(f.prime, {0: c})
                    for k, c in f._coeffs.items()},
                   f.precision)

    # -- shape ---------------------------------------------------------------

    @property
    def zprec(self) -> int | None:
        """Argument precision: coefficients at indices >= zprec are unknown."""
        return self._zprec

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self._coeffs))

    @property
    def known_nonzero_support(self) -> tuple[int, ...]:
        """Indices whose coefficient has a known nonzero term."""
        return tuple(sorted(k for k, c in self._coeffs.items() if c.support))

    @property
    def is_zero_at_precision(self) -> bool:
        return not self.known_nonzero_support

    def coefficient(self, k: int) -> LaurentSeries:
        if self._zprec is not None and k >= self._zprec:
            raise PrecisionError(
                f"coefficient at z^{k} not determined (O(z^{self._zprec}))")
        return self._coeffs.get(k, LaurentSeries.zero(self.prime))

    def _items(self):
        return self._coeffs.items()

    def _check_integral(self) -> None:
        for k, c in self._coeffs.items():
            lb = c._val_lb()
            if lb is not None and lb < 0:
                raise ValueError(
                    f"coefficient at z^{k} has negative valuation; "
                    "normalize first")

    # -- operations ----------------------------------------------------------

    def evaluate(self, z0: LaurentSeries) -> LaurentSeries:
        """sum a_k z0^k for z0 in the open unit disk."""
        self._check_integral()
        _check_disk_argument(z0)
        return _evaluate_terms(self.prime, self._items(), self._zprec, z0)

    __call__ = evaluate

    def evaluate_difference(self, z0: LaurentSeries,
                            shift: LaurentSeries) -> LaurentSeries:
        """f(z0 + shift) - f(z0), with shared unknowns cancelled exactly.

        Subtracting two separate evaluations loses the cancellation of each
        coefficient's unknown tail against itself; summing the per-term
        brackets a_k * ((z0+shift)^k - z0^k) keeps it, so the difference
        resolves everything the inputs determine.
        """
        self._check_integral()
        _check_disk_argument(z0)
        _check_disk_argument(shift)
        z1 = z0 + shift
        acc = LaurentSeries.zero(self.prime)
        pow0 = pow1 = LaurentSeries.one(self.prime)
        last = 0
        for k, c in sorted(self._coeffs.items()):
            pow0 = pow0 * z0 ** (k - last)
            pow1 = pow1 * z1 ** (k - last)
            last = k
            acc = acc + c * (pow1 - pow0)
        d = shift._val_lb()
        if self._zprec is not None and d is not None:
            # unknown integral tail: each bracket has valuation at least
            # v(shift) + (k-1)*min(v(z0), v(shift))
            a = z0._val_lb()
            step = d if a is None else min(a, d)
            acc = acc.truncate(d + max(self._zprec - 1, 0) * step)
        return acc

    def derivative(self) -> AnalyticMap:
        p = self.prime.p
        d = {k - 1: c.scaled(k % p) for k, c in self._coeffs.items() if k >= 1}
        zp = self._zprec
        return AnalyticMap(self.prime, d,
                           None if zp is None else max(zp - 1, 0))

    def taylor_shift(self, z0: LaurentSeries) -> AnalyticMap:
        """The map h |-> f(z0 + h); its 0th coefficient is f(z0)."""
        self._check_integral()
        _check_disk_argument(z0)
        out = _taylor_terms(self.prime, self._items(), self._zprec, z0)
        return AnalyticMap(self.prime, out, self._zprec)

    def rescale_argument(self, s: int) -> AnalyticMap:
        """The map z |-> f(X^s z): coefficient a_k picks up X^(s*k)."""
        if s < 0:
            raise ValueError("argument scale must be >= 0")
        if s == 0:
            return self
        return AnalyticMap(self.prime,
                           {k: c.shifted(s * k)
                            for k, c in self._coeffs.items()},
                           self._zprec)

    def drop_constant(self) -> AnalyticMap:
        """Remove the index-0 coefficient (making the map vanish at 0)."""
        d = {k: c for k, c in self._coeffs.items() if k != 0}
        return AnalyticMap(self.prime, d, self._zprec)

    def qth_root(self, q: int) -> AnalyticMap:
        """Coefficient-wise q-th root, q = p^n.

        Argument exponents divide by q.  Every stored coefficient must sit
        at an index divisible by q: a known-nonzero straggler is a support
        error, a partially-known one is a precision error (it could hide a
        nonzero coefficient).  Over the prime field the coefficient root
        keeps the stored data and is read over the exponent-rescaled field.
        """
        q = _check_prime_power(self.prime, q)
        for k, c in self._coeffs.items():
            if k % q:
                if c.support:
                    raise ValueError(
                        f"map support not contained in {q}Z: index {k}")
                raise PrecisionError(
                    f"coefficient at z^{k} only known as O(X^{c.precision}); "
                    f"cannot certify divisibility of the support by {q}")
        zp = self._zprec
        return AnalyticMap(self.prime,
                           {k // q: c for k, c in self._coeffs.items()},
                           None if zp is None else -(-zp // q))

    def __eq__(self, other) -> bool:
        if not isinstance(other, AnalyticMap):
            return NotImplemented
        return (self.prime == other.prime and self._zprec == other._zprec
                and self._coeffs == other._coeffs)

    def __hash__(self) -> int:
        return hash((self.prime.p, self._zprec,
                     frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        inner = ", ".join(f"z^{k}: ({c})" for k, c in sorted(self._coeffs.items()))
        tail = "" if self._zprec is None else f" + O(z^{self._zprec})"
        return f"<map {{{inner}}}{tail} mod {self.prime.p}>"
