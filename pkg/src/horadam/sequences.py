"""Second-order linear recurrence sequences over the exact rationals.

A sequence is defined by coefficients (p, q) with G(n) = p*G(n-1) + q*G(n-2)
and initial terms (G(0), G(1)). Negative indices extend the recurrence
backwards: G(n-2) = (G(n) - p*G(n-1)) / q, which is always defined since
q is required to be nonzero.
"""

from __future__ import annotations

import difflib
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import ParameterError, RangeError, UsageError
from .scalar import Rational

__all__ = [
    "RecurrenceParams",
    "Sequence",
    "make_sequence",
    "term",
    "term_range",
    "term_iterative_oracle",
    "named_sequences",
    "get_named",
    "NAME_ALIASES",
    "term_fn",
]


@dataclass(frozen=True)
class RecurrenceParams:
    """The coefficient pair (p, q); q must be nonzero.

    Negative indices come from G(n-2) = (G(n) - p*G(n-1))/q, so a zero q
    would make the extension undefined; p may be anything, including zero.
    """

    p: Rational
    q: Rational

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))
        if self.q == 0:
            raise ParameterError("recurrence coefficient q must be nonzero")


@dataclass(frozen=True)
class Sequence:
    """Immutable sequence handle: coefficients plus initial terms (not both zero)."""

    params: RecurrenceParams
    g0: Rational
    g1: Rational
    name: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "g0", Fraction(self.g0))
        object.__setattr__(self, "g1", Fraction(self.g1))
        if self.g0 == 0 and self.g1 == 0:
            raise ParameterError("initial terms must not both be zero")

def make_sequence(p, q, g0, g1, name: Optional[str] = None) -> Sequence:
    """Validate and build a Sequence from rational-like inputs."""
    return Sequence(RecurrenceParams(Fraction(p), Fraction(q)), Fraction(g0), Fraction(g1), name)


@functools.lru_cache(maxsize=None)
def _build_engine(params: RecurrenceParams):
    """Precompute the integer-scaled companion matrix and its scaled adjugate.

    With s = lcm of the coefficient denominators, M = [[p, q], [1, 0]] = N/s
    for an integer matrix N, so M**e = N**e / s**e for e >= 0. For e < 0,
    M**-1 = B/t with B = s*adj(M) (integer) and t = s*det(M) = -q*s (integer,
    nonzero), so M**e = B**|e| / t**|e|. Integer-only products avoid
    per-step gcd normalization.
    """
    p, q = params.p, params.q
    s = math.lcm(p.denominator, q.denominator)
    ps = int(p * s)
    qs = int(q * s)
    fwd = (ps, qs, s, 0)          # N
    bwd = (0, -qs, -s, ps)        # s * adj(M)
    return s, fwd, -qs, bwd


def _int_mat_pow(m: tuple, e: int) -> tuple:
    """e-th power (e >= 0) of a 2x2 integer matrix given as (a11, a12, a21, a22)."""
    r11, r12, r21, r22 = 1, 0, 0, 1
    b11, b12, b21, b22 = m
    while e:
        if e & 1:
            r11, r12, r21, r22 = (
                r11 * b11 + r12 * b21,
                r11 * b12 + r12 * b22,
                r21 * b11 + r22 * b21,
                r21 * b12 + r22 * b22,
            )
        e >>= 1
        if e:
            b11, b12, b21, b22 = (
                b11 * b11 + b12 * b21,
                b11 * b12 + b12 * b22,
                b21 * b11 + b22 * b21,
                b21 * b12 + b22 * b22,
            )
    return r11, r12, r21, r22


def term(s: Sequence, n: int) -> Rational:
    """Exact G(n) for any integer n in O(log |n|) big-integer multiplications."""
    scale, fwd, t, bwd = _build_engine(s.params)
    if n >= 0:
        _, _, m21, m22 = _int_mat_pow(fwd, n)
        den = scale ** n
    else:
        _, _, m21, m22 = _int_mat_pow(bwd, -n)
        den = t ** (-n)
    num = m21 * s.g1 + m22 * s.g0
    return num if den == 1 else num / den


def term_range(s: Sequence, lo: int, hi: int) -> list:
    """[G(lo), ..., G(hi)] by one seeded iteration; requires lo <= hi."""
    if lo > hi:
        raise RangeError(f"term_range needs lo <= hi, got {lo}..{hi}")
    p, q = s.params.p, s.params.q
    a, b = term(s, lo), term(s, lo + 1)
    out = [a]
    for _ in range(hi - lo):
        out.append(b)
        a, b = b, p * b + q * a
    return out


def term_iterative_oracle(s: Sequence, n: int) -> Rational:
    """G(n) by an |n|-step iteration; the independent reference for term()."""
    p, q = s.params.p, s.params.q
    ints = (
        p.denominator == 1
        and q.denominator == 1
        and s.g0.denominator == 1
        and s.g1.denominator == 1
    )
    if n >= 0:
        if ints:
            pi, qi, a, b = int(p), int(q), int(s.g0), int(s.g1)
            for _ in range(n):
                a, b = b, pi * b + qi * a
            return Fraction(a)
        a, b = s.g0, s.g1
        for _ in range(n):
            a, b = b, p * b + q * a
        return a
    a, b = s.g0, s.g1
    for _ in range(-n):
        a, b = (b - p * a) / q, a
    return a


_NAMED_SPECS = (
    ("fibonacci", 1, 1, 0, 1),
    ("lucas", 1, 1, 2, 1),
    ("pell", 2, 1, 0, 1),
    ("pell-lucas", 2, 1, 2, 2),
    ("jacobsthal", 1, 2, 0, 1),
    ("jacobsthal-lucas", 1, 2, 2, 1),
)

_REGISTRY = {
    name: make_sequence(p, q, g0, g1, name) for name, p, q, g0, g1 in _NAMED_SPECS
}

# Short aliases used by the identity DSL; 'j' and 'J' are distinct on purpose.
NAME_ALIASES = {
    "F": "fibonacci",
    "L": "lucas",
    "P": "pell",
    "Q": "pell-lucas",
    "J": "jacobsthal",
    "j": "jacobsthal-lucas",
    "fibonacci": "fibonacci",
    "lucas": "lucas",
    "pell": "pell",
    "pell-lucas": "pell-lucas",
    "pell_lucas": "pell-lucas",
    "jacobsthal": "jacobsthal",
    "jacobsthal-lucas": "jacobsthal-lucas",
    "jacobsthal_lucas": "jacobsthal-lucas",
}


def named_sequences() -> dict:
    """Copy of the built-in registry, keyed by canonical name."""
    return dict(_REGISTRY)


def get_named(name: str) -> Sequence:
    """Look up a built-in sequence by canonical name or alias."""
    canonical = NAME_ALIASES.get(name)
    if canonical is None:
        close = difflib.get_close_matches(name, sorted(NAME_ALIASES), n=1)
        hint = f"; did you mean {close[0]!r}?" if close else ""
        raise UsageError(f"unknown sequence name {name!r}{hint}")
    return _REGISTRY[canonical]


def term_fn(s: Sequence) -> Callable[[int], object]:
    """Memoized accessor n -> G(n); integral values are stored as ints.

    Grid sweeps revisit the same few indices many times; plain-int values keep
    the inner arithmetic on the fast integer path.
    """
    cache: dict = {}

    def t(n: int):
        v = cache.get(n)
        if v is None:
            f = term(s, n)
            v = f.numerator if f.denominator == 1 else f
            cache[n] = v
        return v

    return t
