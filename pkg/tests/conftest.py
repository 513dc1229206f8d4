"""Shared fixtures and reference data for the test suite."""

import random
import sys
from fractions import Fraction

import pytest

from horadam import RecurrenceParams, Sequence, make_sequence

# A few tests print integers with tens of thousands of digits.
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

# Reference values for the six named sequences at n = -5..8, in canonical
# rational text. Column order: fibonacci, lucas, pell, pell-lucas,
# jacobsthal, jacobsthal-lucas.
TABLE_COLUMNS = (
    "fibonacci",
    "lucas",
    "pell",
    "pell-lucas",
    "jacobsthal",
    "jacobsthal-lucas",
)

EXPECTED_TABLE = {
    -5: ("5", "-11", "29", "-82", "11/32", "-31/32"),
    -4: ("-3", "7", "-12", "34", "-5/16", "17/16"),
    -3: ("2", "-4", "5", "-14", "3/8", "-7/8"),
    -2: ("-1", "3", "-2", "6", "-1/4", "5/4"),
    -1: ("1", "-1", "1", "-2", "1/2", "-1/2"),
    0: ("0", "2", "0", "2", "0", "2"),
    1: ("1", "1", "1", "2", "1", "1"),
    2: ("1", "3", "2", "6", "1", "5"),
    3: ("2", "4", "5", "14", "3", "7"),
    4: ("3", "7", "12", "34", "5", "17"),
    5: ("5", "11", "29", "82", "11", "31"),
    6: ("8", "18", "70", "198", "21", "65"),
    7: ("13", "29", "169", "478", "43", "127"),
    8: ("21", "47", "408", "1154", "85", "257"),
}


def random_rational(rng: random.Random, allow_zero: bool = True) -> Fraction:
    """Small random rational; denominators kept tiny so grids stay fast."""
    num = rng.randint(-6, 6)
    if not allow_zero:
        while num == 0:
            num = rng.randint(-6, 6)
    den = rng.choice((1, 1, 1, 2, 3))
    return Fraction(num, den)


def random_sequence(rng: random.Random, params: RecurrenceParams = None) -> Sequence:
    """Random sequence with nonzero q and not both initial terms zero."""
    if params is None:
        p = random_rational(rng)
        q = random_rational(rng, allow_zero=False)
    else:
        p, q = params.p, params.q
    g0 = random_rational(rng)
    g1 = random_rational(rng)
    while g0 == 0 and g1 == 0:
        g1 = random_rational(rng)
    return make_sequence(p, q, g0, g1)


def random_pair(rng: random.Random) -> tuple:
    """Two random sequences sharing one random recurrence."""
    g = random_sequence(rng)
    h = random_sequence(rng, params=g.params)
    return g, h


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260825)
