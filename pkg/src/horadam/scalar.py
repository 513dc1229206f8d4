"""Exact rational scalars, binomial coefficients, and 2x2 rational matrices."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ParameterError, SingularMatrixError

# The universal scalar type. fractions.Fraction already guarantees the
# canonical form this package relies on: positive denominator, lowest terms,
# zero stored as 0/1, and str() rendering "n" or "n/d".
Rational = Fraction

_RATIONAL_TEXT = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def rat(num: int, den: int = 1) -> Rational:
    """Build a canonical Rational; den must be nonzero."""
    if den == 0:
        raise ParameterError("rational denominator must be nonzero")
    return Fraction(num, den)


def rat_from_text(text: str) -> Rational:
    """Parse 'n' or 'n/d' (no decimals, no exponents); den must be nonzero."""
    s = text.strip()
    if not _RATIONAL_TEXT.match(s):
        raise ParameterError(f"not a rational literal: {text!r} (expected 'n' or 'n/d')")
    if "/" in s:
        num, den = s.split("/")
        return rat(int(num), int(den))
    return Fraction(int(s))


def rat_text(value) -> str:
    """Canonical text form: lowest terms, 'n' when integral, sign on the numerator."""
    return str(Fraction(value))


def binom(k: int, j: int) -> int:
    """Binomial coefficient; 0 outside 0 <= j <= k; k must be non-negative."""
    if k < 0:
        raise DomainError(f"binom needs k >= 0, got k={k}")
    if j < 0 or j > k:
        return 0
    return math.comb(k, j)


def m1(e: int) -> int:
    """(-1)**e for any integer e, including negative e."""
    # int ** negative-int would produce a float; parity keeps this exact.
    return -1 if e % 2 else 1


@dataclass(frozen=True)
class Mat2:
    """Immutable 2x2 matrix over the exact rationals."""

    a11: Rational
    a12: Rational
    a21: Rational
    a22: Rational

    def __mul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )

    def det(self) -> Rational:
        return self.a11 * self.a22 - self.a12 * self.a21

    def inverse(self) -> "Mat2":
        d = self.det()
        if d == 0:
            raise SingularMatrixError("matrix is singular, no inverse")
        return Mat2(self.a22 / d, -self.a12 / d, -self.a21 / d, self.a11 / d)


MAT2_IDENTITY = Mat2(Fraction(1), Fraction(0), Fraction(0), Fraction(1))


def mat2(a11, a12, a21, a22) -> Mat2:
    """Convenience constructor accepting ints, Fractions, or rational text."""
    def coerce(x):
        return rat_from_text(x) if isinstance(x, str) else Fraction(x)
    return Mat2(coerce(a11), coerce(a12), coerce(a21), coerce(a22))


def mat_pow(m: Mat2, n: int) -> Mat2:
    """Exact n-th power by binary exponentiation; negative n needs det != 0."""
    if n < 0:
        return mat_pow(m.inverse(), -n)
    result = MAT2_IDENTITY
    base = m
    e = n
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result
