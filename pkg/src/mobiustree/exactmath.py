"""Exact unbounded-integer and rational arithmetic.

Everything is plain ``int`` math: no floats, no fixed-width fast paths.
``Ratio`` is an exact nonnegative rational kept in lowest terms, with a
single +infinity sentinel (1/0) that exists only as the upper endpoint
of the root interval.  All values are immutable and all functions pure.
"""

from __future__ import annotations

import math
import re

from . import kernels

__all__ = [
    "DomainError",
    "Ratio",
    "INFINITY",
    "gcd",
    "ext_gcd",
    "euclid_quotients",
    "ratio_cmp",
]


class DomainError(ValueError):
    """An input violates a documented precondition."""


def _check_int(name, value):
    if not isinstance(value, int):
        raise TypeError(f"{name} must be an int, got {type(value).__name__}")


def gcd(a: int, b: int) -> int:
    """Greatest common divisor with gcd(n, 0) = n; (0, 0) is an error."""
    _check_int("a", a)
    _check_int("b", b)
    if a < 0 or b < 0:
        raise DomainError("gcd arguments must be nonnegative")
    if a == 0 and b == 0:
        raise DomainError("gcd(0, 0) is undefined")
    return math.gcd(a, b)


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: return (g, x, y) with a*x + b*y = g = gcd(a, b).

    The coefficients are the standard back-substitution pair, which is
    minimal in magnitude (|x| <= b/(2g), |y| <= a/(2g) away from the
    degenerate cases).  The tie at a == b resolves to (g, 1, 0).
    """
    _check_int("a", a)
    _check_int("b", b)
    if a < 0 or b < 0:
        raise DomainError("ext_gcd arguments must be nonnegative")
    if a == 0 and b == 0:
        raise DomainError("ext_gcd(0, 0) is undefined")
    if a == b:
        return a, 1, 0
    return kernels.ext_gcd_raw(a, b)


def euclid_quotients(a: int, b: int) -> list[int]:
    """Quotient sequence of the Euclidean algorithm on (a, b).

    Requires a >= b >= 1 and gcd(a, b) = 1.  The result is the canonical
    continued-fraction expansion of a/b: every term >= 1, and the last
    term >= 2 whenever b >= 2.
    """
    _check_int("a", a)
    _check_int("b", b)
    if b < 1 or a < b:
        raise DomainError(f"need a >= b >= 1, got ({a}, {b})")
    quotients, g = kernels.euclid_quotients_raw(a, b)
    if g != 1:
        raise DomainError(f"{a} and {b} are not coprime (gcd {g})")
    return quotients


_RATIO_RE = re.compile(r"([0-9]+)(?:/([0-9]+))?\Z")


class Ratio:
    """Exact nonnegative rational in lowest terms.

    The constructor normalizes, so 10/4 and 5/2 are the same value.
    A zero denominator is the +infinity sentinel: it normalizes to 1/0,
    compares greater than every finite value, and prints as "inf".
    0/0 is rejected.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int = 1):
        _check_int("num", num)
        _check_int("den", den)
        if num < 0 or den < 0:
            raise DomainError("Ratio parts must be nonnegative")
        if num == 0 and den == 0:
            raise DomainError("0/0 is not a Ratio")
        g = math.gcd(num, den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)

    def __setattr__(self, name, value):
        raise AttributeError("Ratio is immutable")

    @property
    def is_infinite(self) -> bool:
        return self.den == 0

    @classmethod
    def parse(cls, text: str) -> "Ratio":
        """Parse "num/den" (any terms; normalized), "num", or "inf"."""
        text = text.strip()
        if text == "inf":
            return cls(1, 0)
        m = _RATIO_RE.match(text)
        if m is None:
            raise DomainError(f"invalid ratio text: {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        return cls(num, den)

    def __str__(self):
        if self.den == 0:
            return "inf"
        return f"{self.num}/{self.den}"

    def __repr__(self):
        return f"Ratio({self.num}, {self.den})"

    def __hash__(self):
        return hash((self.num, self.den))

    def __eq__(self, other):
        if not isinstance(other, Ratio):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __lt__(self, other):
        if not isinstance(other, Ratio):
            return NotImplemented
        return kernels.cmp_raw(self.num, self.den, other.num, other.den) < 0

    def __le__(self, other):
        if not isinstance(other, Ratio):
            return NotImplemented
        return kernels.cmp_raw(self.num, self.den, other.num, other.den) <= 0

    def __gt__(self, other):
        if not isinstance(other, Ratio):
            return NotImplemented
        return kernels.cmp_raw(self.num, self.den, other.num, other.den) > 0

    def __ge__(self, other):
        if not isinstance(other, Ratio):
            return NotImplemented
        return kernels.cmp_raw(self.num, self.den, other.num, other.den) >= 0


INFINITY = Ratio(1, 0)


def ratio_cmp(p: Ratio, q: Ratio) -> int:
    """Total order on Ratios: -1 if p < q, 0 if equal, 1 if p > q.

    Cross-multiplication on normalized parts; the infinity sentinel
    orders above every finite value.
    """
    return kernels.cmp_raw(p.num, p.den, q.num, q.den)
