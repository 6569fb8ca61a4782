"""Shared exception types."""


class PrecisionError(ArithmeticError):
    """A result is not determined at the available precision."""


class ParseError(ValueError):
    """A series or exponent string does not match the input grammar."""
