"""Exact arithmetic in a real quadratic field Q(sqrt(d)).

An :class:`ExactReal` stores ``(p + q*sqrt(d)) / r`` with integer components.
Sign, floor and comparison are decided with integer arithmetic only, so
every order decision made elsewhere in the package is exact.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Union

__all__ = [
    "ExactReal",
    "MixedRadicand",
    "ExactParseError",
    "exact",
    "sign",
    "compare",
    "floor",
    "frac",
]


class MixedRadicand(ValueError):
    """Raised when two irrational operands live in different fields."""


class ExactParseError(ValueError):
    pass


@lru_cache(maxsize=None)
def _squarefree_split(d: int) -> tuple[int, int]:
    """Return ``(k, s)`` with ``d == k*k*s`` and ``s`` squarefree."""
    k, s = 1, d
    f = 2
    while f * f <= s:
        while s % (f * f) == 0:
            s //= f * f
            k *= f
        f += 1
    return k, s


def _sign_parts(p: int, q: int, d: int) -> int:
    # sign of p + q*sqrt(d), with d squarefree (so the value is 0 only if p == q == 0)
    if q == 0 or d == 0:
        return (p > 0) - (p < 0)
    if p == 0:
        return (q > 0) - (q < 0)
    if p > 0 and q > 0:
        return 1
    if p < 0 and q < 0:
        return -1
    diff = p * p - q * q * d
    if p > 0:
        return 1 if diff > 0 else -1
    return -1 if diff > 0 else 1


Number = Union["ExactReal", int, Fraction]


class ExactReal:
    """An element ``(p + q*sqrt(d)) / r`` of a real quadratic field.

    The stored form is canonical: ``r > 0``, ``gcd(p, q, r) == 1``, ``d``
    squarefree and ``q == 0`` exactly when ``d == 0``.  Rationals use d = 0
    and combine freely with any field.
    """

    __slots__ = ("p", "q", "d", "r")

    def __init__(self, p: int = 0, q: int = 0, d: int = 0, r: int = 1):
        p, q, d, r = int(p), int(q), int(d), int(r)
        if r == 0:
            raise ZeroDivisionError("denominator is zero")
        if d < 0:
            raise ValueError("radicand must be non-negative")
        if q != 0 and d != 0:
            k, d = _squarefree_split(d)
            q *= k
            if d == 1:
                p, q, d = p + q, 0, 0
        else:
            q, d = 0, 0
        if r < 0:
            p, q, r = -p, -q, -r
        g = math.gcd(p, q, r)
        if g > 1:
            p, q, r = p // g, q // g, r // g
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "r", r)

    def __setattr__(self, name, value):
        raise AttributeError("ExactReal is immutable")

    # -- construction -----------------------------------------------------

    @classmethod
    def coerce(cls, value: Number) -> ExactReal:
        if isinstance(value, ExactReal):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a number here")
        if isinstance(value, int):
            return cls(value)
        if isinstance(value, Rational):
            return cls(value.numerator, 0, 0, value.denominator)
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(f"cannot convert {type(value).__name__} to ExactReal")

    @classmethod
    def sqrt(cls, d: int) -> ExactReal:
        return cls(0, 1, d, 1)

    _DEN = re.compile(r"(?P<body>.*?)\s*/\s*(?P<den>[+-]?\d+)")
    _TERM = re.compile(r"([+-]?)(\d*)(\*?)(sqrt\((\d+)\))?")

    @classmethod
    def parse(cls, text: str) -> ExactReal:
        """Parse ``p``, ``p/r`` or ``(p+q*sqrt(d))/r``.

        Decimal forms are rejected; no float ever reaches a decision.
        """
        body = text.strip()
        den = 1
        m = cls._DEN.fullmatch(body)
        if m:
            body, den = m.group("body"), int(m.group("den"))
            if den == 0:
                raise ExactParseError(f"zero denominator in {text!r}")
        body = body.replace(" ", "")
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        if not body:
            raise ExactParseError(f"not an exact number: {text!r}")
        p = q = d = 0
        pos = 0
        while pos < len(body):
            t = cls._TERM.match(body, pos)
            if t.end() == pos:
                raise ExactParseError(f"cannot parse {text!r} at {body[pos:]!r}")
            sgn, coef, star, rad, rad_d = t.groups()
            if pos > 0 and not sgn:
                raise ExactParseError(f"missing operator in {text!r}")
            s = -1 if sgn == "-" else 1
            if rad is None:
                if not coef or star:
                    raise ExactParseError(f"bad term in {text!r}")
                p += s * int(coef)
            else:
                if star and not coef:
                    raise ExactParseError(f"bad term in {text!r}")
                if d and int(rad_d) != d:
                    raise ExactParseError(f"two radicands in {text!r}")
                d = int(rad_d)
                q += s * (int(coef) if coef else 1)
            pos = t.end()
        return cls(p, q, d, den)

    # -- basic predicates -------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if self.q:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.p, self.r)

    def _field(self, other: ExactReal) -> int:
        if self.q and other.q and self.d != other.d:
            raise MixedRadicand(f"sqrt({self.d}) and sqrt({other.d}) do not mix")
        return self.d or other.d

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: Number) -> ExactReal:
        try:
            o = ExactReal.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._field(o)
        return ExactReal(self.p * o.r + o.p * self.r, self.q * o.r + o.q * self.r, d, self.r * o.r)

    __radd__ = __add__

    def __neg__(self) -> ExactReal:
        return ExactReal(-self.p, -self.q, self.d, self.r)

    def __pos__(self) -> ExactReal:
        return self

    def __sub__(self, other: Number) -> ExactReal:
        try:
            o = ExactReal.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._field(o)
        return ExactReal(self.p * o.r - o.p * self.r, self.q * o.r - o.q * self.r, d, self.r * o.r)

    def __rsub__(self, other: Number) -> ExactReal:
        return ExactReal.coerce(other) - self

    def __mul__(self, other: Number) -> ExactReal:
        try:
            o = ExactReal.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._field(o)
        return ExactReal(
            self.p * o.p + self.q * o.q * d,
            self.p * o.q + self.q * o.p,
            d,
            self.r * o.r,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> ExactReal:
        try:
            o = ExactReal.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._field(o)
        norm = o.p * o.p - o.q * o.q * d
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        # (p1 + q1 s)/r1 * r2 (p2 - q2 s) / norm
        return ExactReal(
            o.r * (self.p * o.p - self.q * o.q * d),
            o.r * (self.q * o.p - self.p * o.q),
            d,
            self.r * norm,
        )

    def __rtruediv__(self, other: Number) -> ExactReal:
        return ExactReal.coerce(other) / self

    def __abs__(self) -> ExactReal:
        return -self if self.sign() < 0 else self

    # -- order ------------------------------------------------------------

    def sign(self) -> int:
        return _sign_parts(self.p, self.q, self.d)

    def compare(self, other: Number) -> int:
        """Return -1, 0 or 1 as ``self`` is less than, equal to or greater than ``other``."""
        o = ExactReal.coerce(other)
        d = self._field(o)
        return _sign_parts(self.p * o.r - o.p * self.r, self.q * o.r - o.q * self.r, d)

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactReal):
            return (self.p, self.q, self.d, self.r) == (other.p, other.q, other.d, other.r)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.q == 0 and Fraction(self.p, self.r) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.q == 0:
            return hash(Fraction(self.p, self.r))
        return hash((self.p, self.q, self.d, self.r))

    def __lt__(self, other: Number) -> bool:
        return self.compare(other) < 0

    def __le__(self, other: Number) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other: Number) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other: Number) -> bool:
        return self.compare(other) >= 0

    def __bool__(self) -> bool:
        return self.p != 0 or self.q != 0

    # -- integer part -----------------------------------------------------

    def __floor__(self) -> int:
        if self.q == 0:
            return self.p // self.r
        # s = floor(|q| sqrt(d)) and |q| sqrt(d) is irrational, so
        # p + q sqrt(d) lies strictly inside (n, n + 1) for the integer n below;
        # such an open unit interval never straddles a multiple of r.
        s = math.isqrt(self.q * self.q * self.d)
        n = self.p + s if self.q > 0 else self.p - s - 1
        return n // self.r

    def __ceil__(self) -> int:
        return -math.floor(-self)

    def floor(self) -> int:
        return math.floor(self)

    def ceil(self) -> int:
        return math.ceil(self)

    def frac(self) -> ExactReal:
        """Fractional part ``self - floor(self)``, always in [0, 1)."""
        return self - math.floor(self)

    # -- conversions ------------------------------------------------------

    def __float__(self) -> float:
        # display only
        return (self.p + self.q * math.sqrt(self.d)) / self.r

    def decimal(self, digits: int = 6) -> str:
        """Decimal expansion truncated toward zero, for human-readable hints."""
        scaled = math.floor(abs(self) * 10**digits)
        whole, rest = divmod(scaled, 10**digits)
        body = f"{whole}.{rest:0{digits}d}" if digits else str(whole)
        return "-" + body if self.sign() < 0 else body

    def __str__(self) -> str:
        if self.q == 0:
            return str(self.p) if self.r == 1 else f"{self.p}/{self.r}"
        op = "+" if self.q > 0 else "-"
        return f"({self.p}{op}{abs(self.q)}*sqrt({self.d}))/{self.r}"

    def __repr__(self) -> str:
        return f"ExactReal({self.p}, {self.q}, {self.d}, {self.r})"

    def __reduce__(self):
        return (ExactReal, (self.p, self.q, self.d, self.r))


def exact(value: Number | str) -> ExactReal:
    """Coerce an int, Fraction, exact text form or ExactReal."""
    return ExactReal.coerce(value)


def sign(a: Number) -> int:
    return exact(a).sign()


def compare(a: Number, b: Number) -> int:
    return exact(a).compare(b)


def floor(a: Number) -> int:
    return math.floor(exact(a))


def frac(a: Number) -> ExactReal:
    return exact(a).frac()
