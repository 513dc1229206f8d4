"""Kernel form, basis solver, and exact checkers for the generic identities.

The antisymmetric kernel over a sequence G is
    f_g(u, v; s, t) = G(u-s)*G(v-t) - G(u-t)*G(v-s).
Every checker here evaluates both sides of its identity exactly and reports
equality; nothing is rounded. Checkers for the two generic summation
theorems skip (rather than fail) cases where a kernel value in a denominator
position vanishes, since the statements hypothesize those values nonzero.
The k = 0 instance of each summation identity has no denominator, so it is
always checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import DegeneracyError, DomainError, PreconditionError, UsageError
from .grid import GridSpec
from .report import VerificationReport, run_grid, single_case_report
from .scalar import Rational, m1
from .sequences import Sequence, term, term_fn

__all__ = [
    "KernelArgs",
    "ThreeTermRelation",
    "f_g",
    "basis_coefficients",
    "check_theorem1",
    "check_corollary",
    "check_lemma1",
    "check_lemma2",
    "check_lemma3",
    "check_sum_ordinary",
    "check_sum_binomial",
    "identity_variables",
    "identity_outcome",
    "verify_identity_grid",
    "IDENTITY_NAMES",
]


@dataclass(frozen=True)
class KernelArgs:
    """Index quadruple (u, v; s, t) for the kernel form."""

    u: int
    v: int
    s: int
    t: int


@dataclass(frozen=True)
class ThreeTermRelation:
    """Relation X(n) = f1*X(n-a) + f2*X(n-b) with f1, f2 nonzero and a != b."""

    f1: Rational
    f2: Rational
    a: int
    b: int

    def __post_init__(self):
        object.__setattr__(self, "f1", Fraction(self.f1))
        object.__setattr__(self, "f2", Fraction(self.f2))
        if self.f1 == 0 or self.f2 == 0:
            raise UsageError("relation coefficients f1 and f2 must be nonzero")
        if self.a == self.b:
            raise UsageError("relation shifts a and b must differ")


def _fg(gt: Callable[[int], object], u: int, v: int, s: int, t: int):
    return gt(u - s) * gt(v - t) - gt(u - t) * gt(v - s)


def f_g(g: Sequence, args) -> Rational:
    """Exact kernel value; args is a KernelArgs or a (u, v, s, t) tuple."""
    if isinstance(args, KernelArgs):
        u, v, s, t = args.u, args.v, args.s, args.t
    else:
        u, v, s, t = args
    value = _fg(lambda i: term(g, i), u, v, s, t)
    return value if isinstance(value, Fraction) else Fraction(value)


def _div(a, b) -> Fraction:
    # Exact quotient; int/int would fall back to float division.
    return Fraction(a) / b


def _require_same_params(g: Sequence, h: Sequence) -> None:
    if g.params != h.params:
        raise UsageError(
            "sequences must share one recurrence: "
            f"(p={g.params.p}, q={g.params.q}) vs (p={h.params.p}, q={h.params.q})"
        )


def _require_vars(case: dict, names: tuple) -> None:
    missing = [v for v in names if v not in case]
    if missing:
        raise UsageError(f"case is missing variables: {', '.join(missing)}")
    extra = [v for v in case if v not in names]
    if extra:
        raise UsageError(f"case has unused variables: {', '.join(sorted(extra))}")


def basis_coefficients(
    g: Sequence,
    h: Sequence,
    n: int,
    a: int,
    b: int,
    c: int,
    d: int,
    verify_window: Optional[tuple] = None,
):
    """Solve H(n+m) = l1*G(m-a) + l2*G(m-b) from the instances m = c and m = d.

    The 2x2 system is solvable iff f_g(d, c; b, a) != 0. When verify_window
    = (lo, hi) is supplied, the decomposition is re-checked for every m in
    that window.
    """
    _require_same_params(g, h)
    gt, ht = term_fn(g), term_fn(h)
    det = _fg(gt, d, c, b, a)
    if det == 0:
        raise DegeneracyError(
            f"basis system is singular: f_g(d={d}, c={c}; b={b}, a={a}) = 0"
        )
    hc, hd = ht(n + c), ht(n + d)
    l1 = _div(hc * gt(d - b) - hd * gt(c - b), det)
    l2 = _div(gt(c - a) * hd - gt(d - a) * hc, det)
    if verify_window is not None:
        lo, hi = verify_window
        for m in range(lo, hi + 1):
            if ht(n + m) != l1 * gt(m - a) + l2 * gt(m - b):
                raise PreconditionError(
                    f"basis decomposition fails at m={m} for n={n}, a={a}, b={b}"
                )
    return l1, l2


# ---------------------------------------------------------------------------
# Outcome builders. Each returns a function binding -> None | (lhs, rhs);
# the single-case check_* wrappers and the grid runner share these, so one
# formula has exactly one implementation.


def _theorem1_outcome(g: Sequence, h: Sequence) -> Callable[[dict], tuple]:
    _require_same_params(g, h)
    gt, ht = term_fn(g), term_fn(h)

    def outcome(case: dict):
        n, m = case["n"], case["m"]
        a, b, c, d = case["a"], case["b"], case["c"], case["d"]
        lhs = _fg(gt, d, c, b, a) * ht(n + m)
        rhs = _fg(gt, d, m, b, a) * ht(n + c) + _fg(gt, c, m, a, b) * ht(n + d)
        return lhs, rhs

    return outcome


def _corollary_outcome(g: Sequence, h: Sequence) -> Callable[[dict], tuple]:
    _require_same_params(g, h)
    gt, ht = term_fn(g), term_fn(h)

    def outcome(case: dict):
        n, m, a, b = case["n"], case["m"], case["a"], case["b"]
        g0 = gt(0)
        lhs = (gt(a - b) * gt(b - a) - g0 * g0) * ht(n + m)
        rhs = (gt(b - a) * gt(m - b) - g0 * gt(m - a)) * ht(n + a) + (
            gt(a - b) * gt(m - a) - g0 * gt(m - b)
        ) * ht(n + b)
        return lhs, rhs

    return outcome


def _check_relation_window(xt, yt, rel: ThreeTermRelation, anchors) -> None:
    """Every summand rewrite uses X(s) = f1*X(s-a) + f2*Y(s-b) at some anchor s;
    verify those instances up front so a wrong relation surfaces as a clear error."""
    f1, f2, a, b = rel.f1, rel.f2, rel.a, rel.b
    for s in anchors:
        if xt(s) != f1 * xt(s - a) + f2 * yt(s - b):
            raise PreconditionError(
                f"relation X(n) = f1*X(n-{a}) + f2*Y(n-{b}) fails at n={s}"
            )


def _lemma1_outcome(x: Sequence, y: Sequence, rel: ThreeTermRelation) -> Callable[[dict], tuple]:
    xt, yt = term_fn(x), term_fn(y)
    f1, f2, a, b = rel.f1, rel.f2, rel.a, rel.b

    def outcome(case: dict):
        n, k = case["n"], case["k"]
        if k < 0:
            raise DomainError(f"summation bound k must be non-negative, got {k}")
        _check_relation_window(xt, yt, rel, (n - j * a for j in range(k + 1)))
        lhs = f2 * sum(yt(n - k * a - b + a * j) / f1 ** j for j in range(k + 1))
        rhs = xt(n) / f1 ** k - f1 * xt(n - (k + 1) * a)
        return lhs, rhs

    return outcome


def _lemma2_outcome(x: Sequence, rel: ThreeTermRelation, variant: int) -> Callable[[dict], tuple]:
    xt = term_fn(x)
    f1, f2, a, b = rel.f1, rel.f2, rel.a, rel.b

    def outcome(case: dict):
        n, k = case["n"], case["k"]
        if k < 0:
            raise DomainError(f"summation bound k must be non-negative, got {k}")
        if variant == 1:
            _check_relation_window(xt, xt, rel, (n - j * a for j in range(k + 1)))
            lhs = f2 * sum(xt(n - k * a - b + a * j) / f1 ** j for j in range(k + 1))
            rhs = xt(n) / f1 ** k - f1 * xt(n - (k + 1) * a)
        elif variant == 2:
            _check_relation_window(xt, xt, rel, (n - j * b for j in range(k + 1)))
            lhs = f1 * sum(xt(n - k * b - a + b * j) / f2 ** j for j in range(k + 1))
            rhs = xt(n) / f2 ** k - f2 * xt(n - (k + 1) * b)
        else:
            _check_relation_window(xt, xt, rel, (n - j * (a - b) + b for j in range(k + 1)))
            r = -f1 / f2
            lhs = sum(xt(n - (a - b) * k + b + (a - b) * j) / r ** j for j in range(k + 1))
            rhs = f2 * xt(n) / r ** k + f1 * xt(n - (k + 1) * (a - b))
        return lhs, rhs

    return outcome


def _lemma3_outcome(x: Sequence, rel: ThreeTermRelation, variant: int) -> Callable[[dict], tuple]:
    xt = term_fn(x)
    f1, f2, a, b = rel.f1, rel.f2, rel.a, rel.b

    def anchors(n: int, k: int):
        # Indices where the relation gets substituted while expanding k times.
        if variant == 1:
            return (n - j * a - l * b for j in range(k) for l in range(k - j))
        if variant == 2:
            return (n + (a - b) * j + l * a + a for j in range(k) for l in range(k - j))
        return (n - (a - b) * j + l * b + b for j in range(k) for l in range(k - j))

    def outcome(case: dict):
        n, k = case["n"], case["k"]
        if k < 0:
            raise DomainError(f"summation bound k must be non-negative, got {k}")
        _check_relation_window(xt, xt, rel, anchors(n, k))
        if variant == 1:
            r = f1 / f2
            lhs = sum(
                math.comb(k, j) * r ** j * xt(n - b * k + (b - a) * j) for j in range(k + 1)
            )
            rhs = xt(n) / f2 ** k
        elif variant == 2:
            lhs = sum(
                math.comb(k, j) * xt(n + (a - b) * k + b * j) / (-f2) ** j
                for j in range(k + 1)
            )
            rhs = (-f1 / f2) ** k * xt(n)
        else:
            lhs = sum(
                math.comb(k, j) * xt(n + (b - a) * k + a * j) / (-f1) ** j
                for j in range(k + 1)
            )
            rhs = (-f2 / f1) ** k * xt(n)
        return lhs, rhs

    return outcome


def _sum_ordinary_outcome(g: Sequence, h: Sequence, variant: int) -> Callable[[dict], Optional[tuple]]:
    _require_same_params(g, h)
    gt, ht = term_fn(g), term_fn(h)

    def outcome(case: dict):
        n, m = case["n"], case["m"]
        a, b, c, d, k = case["a"], case["b"], case["c"], case["d"], case["k"]
        if k < 0:
            raise DomainError(f"summation bound k must be non-negative, got {k}")
        A = _fg(gt, d, c, b, a)
        B = _fg(gt, d, m, b, a)
        C = _fg(gt, c, m, a, b)
        if variant == 1:
            if k == 0:
                return C * ht(n - (m - d)), A * ht(n) - B * ht(n - (m - c))
            if B == 0:
                return None
            r = _div(A, B)
            lhs = C * sum(
                r ** j * ht(n - (m - c) * k - (m - d) + (m - c) * j) for j in range(k + 1)
            )
            rhs = _div(A ** (k + 1), B ** k) * ht(n) - B * ht(n - (m - c) * (k + 1))
            return lhs, rhs
        if variant == 2:
            if k == 0:
                return B * ht(n - (m - c)), A * ht(n) - C * ht(n - (m - d))
            if C == 0:
                return None
            r = _div(A, C)
            lhs = B * sum(
                r ** j * ht(n - (m - d) * k - (m - c) + (m - d) * j) for j in range(k + 1)
            )
            rhs = _div(A ** (k + 1), C ** k) * ht(n) - C * ht(n - (m - d) * (k + 1))
            return lhs, rhs
        if k == 0:
            return A * ht(n + (m - c)), B * ht(n) + C * ht(n - (c - d))
        if C == 0:
            return None
        r = _div(-B, C)
        lhs = A * sum(
            r ** j * ht(n - (c - d) * k + (m - c) + (c - d) * j) for j in range(k + 1)
        )
        rhs = m1(k) * _div(B ** (k + 1), C ** k) * ht(n) + C * ht(n - (c - d) * (k + 1))
        return lhs, rhs

    return outcome


def _sum_binomial_outcome(g: Sequence, h: Sequence, variant: int) -> Callable[[dict], Optional[tuple]]:
    _require_same_params(g, h)
    gt, ht = term_fn(g), term_fn(h)

    def outcome(case: dict):
        n, m = case["n"], case["m"]
        a, b, c, d, k = case["a"], case["b"], case["c"], case["d"], case["k"]
        if k < 0:
            raise DomainError(f"summation bound k must be non-negative, got {k}")
        if k == 0:
            value = ht(n)
            return value, value
        A = _fg(gt, d, c, b, a)
        B = _fg(gt, d, m, b, a)
        C = _fg(gt, c, m, a, b)
        if variant == 1:
            if C == 0:
                return None
            r = _div(B, C)
            lhs = sum(
                math.comb(k, j) * r ** j * ht(n - (m - d) * k + (c - d) * j)
                for j in range(k + 1)
            )
            rhs = _div(A, C) ** k * ht(n)
            return lhs, rhs
        if variant == 2:
            if C == 0:
                return None
            r = _div(-A, C)
            lhs = sum(
                math.comb(k, j) * r ** j * ht(n - (c - d) * k + (m - d) * j)
                for j in range(k + 1)
            )
            rhs = _div(-B, C) ** k * ht(n)
            return lhs, rhs
        if B == 0:
            return None
        r = _div(-A, B)
        lhs = sum(
            math.comb(k, j) * r ** j * ht(n + (c - d) * k + (m - c) * j)
            for j in range(k + 1)
        )
        rhs = _div(-C, B) ** k * ht(n)
        return lhs, rhs

    return outcome


# ---------------------------------------------------------------------------
# Public single-case checkers.


def check_theorem1(g: Sequence, h: Sequence, case: dict) -> VerificationReport:
    """Three-term kernel identity at one binding {n, m, a, b, c, d}.

    Checked as stated even when the kernel coefficient of H(n+m) vanishes;
    no case is ever skipped.
    """
    _require_vars(case, ("n", "m", "a", "b", "c", "d"))
    return single_case_report("theorem1", case, _theorem1_outcome(g, h))


def check_corollary(g: Sequence, h: Sequence, case: dict) -> VerificationReport:
    """Two-shift specialization of the kernel identity at one binding {n, m, a, b}."""
    _require_vars(case, ("n", "m", "a", "b"))
    return single_case_report("corollary", case, _corollary_outcome(g, h))


def check_lemma1(
    x: Sequence, y: Sequence, rel: ThreeTermRelation, n: int, k: int
) -> VerificationReport:
    """Telescoping sum for a two-sequence relation X(n) = f1*X(n-a) + f2*Y(n-b)."""
    return single_case_report("lemma1", {"n": n, "k": k}, _lemma1_outcome(x, y, rel))


def check_lemma2(
    x: Sequence, rel: ThreeTermRelation, variant: int, n: int, k: int
) -> VerificationReport:
    """Single-sequence ordinary sums (variants 1-3)."""
    _require_variant(variant)
    return single_case_report(
        f"lemma2:{variant}", {"n": n, "k": k}, _lemma2_outcome(x, rel, variant)
    )


def check_lemma3(
    x: Sequence, rel: ThreeTermRelation, variant: int, n: int, k: int
) -> VerificationReport:
    """Single-sequence binomial sums (variants 1-3)."""
    _require_variant(variant)
    return single_case_report(
        f"lemma3:{variant}", {"n": n, "k": k}, _lemma3_outcome(x, rel, variant)
    )


def check_sum_ordinary(g: Sequence, h: Sequence, variant: int, case: dict) -> VerificationReport:
    """Generic ordinary-summation identity at one binding {n, m, a, b, c, d, k}."""
    _require_variant(variant)
    _require_vars(case, ("n", "m", "a", "b", "c", "d", "k"))
    return single_case_report(
        f"sum-ordinary:{variant}", case, _sum_ordinary_outcome(g, h, variant)
    )


def check_sum_binomial(g: Sequence, h: Sequence, variant: int, case: dict) -> VerificationReport:
    """Generic binomial-summation identity at one binding {n, m, a, b, c, d, k}."""
    _require_variant(variant)
    _require_vars(case, ("n", "m", "a", "b", "c", "d", "k"))
    return single_case_report(
        f"sum-binomial:{variant}", case, _sum_binomial_outcome(g, h, variant)
    )


def _require_variant(variant: int) -> None:
    if variant not in (1, 2, 3):
        raise UsageError(f"variant must be 1, 2, or 3, got {variant}")


# ---------------------------------------------------------------------------
# Grid-level driver shared by the CLI and the test suite.

_IDENTITY_VARS = {
    "theorem1": ("a", "b", "c", "d", "m", "n"),
    "corollary": ("a", "b", "m", "n"),
    "lemma1": ("k", "n"),
    "lemma2:1": ("k", "n"),
    "lemma2:2": ("k", "n"),
    "lemma2:3": ("k", "n"),
    "lemma3:1": ("k", "n"),
    "lemma3:2": ("k", "n"),
    "lemma3:3": ("k", "n"),
    "sum-ordinary:1": ("a", "b", "c", "d", "k", "m", "n"),
    "sum-ordinary:2": ("a", "b", "c", "d", "k", "m", "n"),
    "sum-ordinary:3": ("a", "b", "c", "d", "k", "m", "n"),
    "sum-binomial:1": ("a", "b", "c", "d", "k", "m", "n"),
    "sum-binomial:2": ("a", "b", "c", "d", "k", "m", "n"),
    "sum-binomial:3": ("a", "b", "c", "d", "k", "m", "n"),
}

IDENTITY_NAMES = tuple(sorted(_IDENTITY_VARS))


def identity_variables(identity: str) -> tuple:
    """Grid variables an identity consumes."""
    try:
        return _IDENTITY_VARS[identity]
    except KeyError:
        raise UsageError(f"unknown identity {identity!r}") from None


def identity_outcome(
    identity: str,
    g: Sequence,
    h: Sequence,
    rel: Optional[ThreeTermRelation] = None,
):
    """Outcome function for one identity bound to concrete sequences."""
    if identity == "theorem1":
        return _theorem1_outcome(g, h)
    if identity == "corollary":
        return _corollary_outcome(g, h)
    if identity == "lemma1":
        return _lemma1_outcome(g, h, _default_rel(g, rel))
    if identity.startswith("lemma2:"):
        return _lemma2_outcome(g, _default_rel(g, rel), int(identity[-1]))
    if identity.startswith("lemma3:"):
        return _lemma3_outcome(g, _default_rel(g, rel), int(identity[-1]))
    if identity.startswith("sum-ordinary:"):
        return _sum_ordinary_outcome(g, h, int(identity[-1]))
    if identity.startswith("sum-binomial:"):
        return _sum_binomial_outcome(g, h, int(identity[-1]))
    raise UsageError(f"unknown identity {identity!r}")


def _default_rel(g: Sequence, rel: Optional[ThreeTermRelation]) -> ThreeTermRelation:
    # The defining recurrence itself, as shifts (1, 2).
    if rel is not None:
        return rel
    return ThreeTermRelation(g.params.p, g.params.q, 1, 2)


def verify_identity_grid(
    identity: str,
    g: Sequence,
    h: Sequence,
    grid: GridSpec,
    rel: Optional[ThreeTermRelation] = None,
) -> VerificationReport:
    """Sweep one identity over a grid; grid variables must match exactly."""
    needed = identity_variables(identity)
    have = grid.var_names
    if tuple(sorted(have)) != needed:
        raise UsageError(
            f"identity {identity!r} needs grid variables {{{', '.join(needed)}}},"
            f" got {{{', '.join(have)}}}"
        )
    return run_grid(identity, grid, identity_outcome(identity, g, h, rel))
