"""Named registry of the family identity specializations.

Entry ids are "<family>.<identity>" with families fib, pell, jac. Entries
marked generalized take a companion sequence H sharing the family recurrence
but with caller-chosen initial terms; the base sequence supplies the
coefficient terms. All checkers here are polynomial in sequence terms
(division-free), so no case is ever skipped.

Every entry also carries its identity rendered in the DSL (field dsl_texts),
which the test suite verifies against the native checker case by case; the
two routes share no evaluation code.
"""

from __future__ import annotations

import difflib
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Optional

from .errors import UsageError
from .grid import GridSpec, parse_grid
from .report import VerificationReport, run_grid
from .scalar import m1
from .sequences import Sequence, get_named, make_sequence, term_fn

__all__ = ["CatalogEntry", "catalog_list", "catalog_run", "catalog_entry"]


def _neg_q_pow(q: Fraction):
    """Evaluator for (-q)**e, exact for any integer e."""
    if q == 1:
        return m1
    mq = -q

    def p(e: int):
        return mq ** e

    return p


def _q_pow(q: Fraction):
    """Evaluator for q**e, exact for any integer e."""
    if q == 1:
        return lambda e: 1

    def p(e: int):
        return q ** e

    return p


def _powers(x, k: int) -> list:
    """[x**0, ..., x**k] by running products."""
    out = [1] * (k + 1)
    acc = 1
    for i in range(1, k + 1):
        acc = acc * x
        out[i] = acc
    return out


# ---------------------------------------------------------------------------
# Native checkers. Each builder takes the term accessors for the base (gt)
# and companion (ht) sequences plus the family q, and returns a function
# binding -> (lhs, rhs) (or a pair of equations for the odd/even split).


def _t_master(gt, ht, q):
    sp = _neg_q_pow(q)

    def oc(case):
        n, m, a, b = case["n"], case["m"], case["a"], case["b"]
        lhs = gt(a - b) * ht(n + m)
        rhs = gt(m - b) * ht(n + a) - sp(a - b) * gt(m - a) * ht(n + b)
        return lhs, rhs

    return oc


def _t_master_dual(gt, ht, q):
    sp = _neg_q_pow(q)

    def oc(case):
        n, m, a, b = case["n"], case["m"], case["a"], case["b"]
        lhs = gt(a - b) * ht(n + m)
        rhs = ht(m - b) * gt(n + a) - sp(a - b) * ht(m - a) * gt(n + b)
        return lhs, rhs

    return oc


def _t_catalan_general(gt, ht, q):
    sp = _neg_q_pow(q)

    def oc(case):
        n, m = case["n"], case["m"]
        lhs = gt(n - m) * ht(n + m)
        rhs = gt(n) * ht(n) - sp(n - m) * gt(m) * ht(m)
        return lhs, rhs

    return oc


def _t_catalan(gt, ht, q):
    qp = _q_pow(q)

    def oc(case):
        n, m = case["n"], case["m"]
        lhs = gt(n - m) * gt(n + m)
        gm = gt(m)
        rhs = gt(n) * gt(n) + m1(n + m + 1) * qp(n - m) * gm * gm
        return lhs, rhs

    return oc


def _t_double_shift(gt, ht, q):
    qp = _q_pow(q)

    def oc(case):
        n, m, a = case["n"], case["m"], case["a"]
        lhs = gt(2 * a) * ht(n + m)
        rhs = gt(m + a) * ht(n + a) - qp(2 * a) * gt(m - a) * ht(n - a)
        return lhs, rhs

    return oc


def _t_halton(gt, ht, q):
    q2 = q * q
    q2 = q2.numerator if q2.denominator == 1 else q2

    def oc(case):
        n, m = case["n"], case["m"]
        lhs = gt(2) * ht(n + m)
        rhs = gt(m + 1) * ht(n + 1) - q2 * gt(m - 1) * ht(n - 1)
        return lhs, rhs

    return oc


def _t_odd_even_split(gt, ht, q):
    qp = _q_pow(q)

    def oc(case):
        n, m, k = case["n"], case["m"], case["k"]
        lhs1 = gt(2 * k - 1) * ht(n + m)
        rhs1 = qp(2 * k - 1) * gt(m - 2 * k) * ht(n + 1) + gt(m - 1) * ht(n + 2 * k)
        if lhs1 != rhs1:
            return lhs1, rhs1
        lhs2 = gt(2 * k) * ht(n + m)
        rhs2 = gt(m) * ht(n + 2 * k) - qp(2 * k) * gt(m - 2 * k) * ht(n)
        if lhs2 != rhs2:
            return lhs2, rhs2
        return lhs1, rhs1

    return oc


def _t_vajda8(gt, ht, q):
    qv = q.numerator if q.denominator == 1 else q

    def oc(case):
        n, m = case["n"], case["m"]
        lhs = ht(n + m)
        rhs = gt(m) * ht(n + 1) + qv * gt(m - 1) * ht(n)
        return lhs, rhs

    return oc


def _t_double_index(gt, ht, q):
    qp = _q_pow(q)

    def oc(case):
        n, m = case["n"], case["m"]
        lhs = gt(2 * m) * ht(2 * n)
        rhs = gt(n + m) * ht(n + m) - qp(2 * m) * gt(n - m) * ht(n - m)
        return lhs, rhs

    return oc


def _t_sum_ordinary(variant: int):
    def build(gt, ht, q):
        sp = _neg_q_pow(q)
        qp = _q_pow(q)

        def oc(case):
            n, m = case["n"], case["m"]
            a, b, k = case["a"], case["b"], case["k"]
            gab, gma, gmb = gt(a - b), gt(m - a), gt(m - b)
            if variant == 1:
                base, step = n - (m - a) * k - (m - b), m - a
                mb = _powers(gmb, k)
                tot = 0
                ab_j = 1
                for j in range(k + 1):
                    tot += mb[k - j] * ab_j * ht(base + step * j)
                    ab_j = ab_j * gab
                lhs = -sp(a - b) * gma * tot
                rhs = ab_j * ht(n) - mb[k] * gmb * ht(n - (m - a) * (k + 1))
                return lhs, rhs
            if variant == 2:
                u = -sp(a - b) * gma
                base, step = n - (m - b) * k - (m - a), m - b
                up = _powers(u, k)
                tot = 0
                ab_j = 1
                for j in range(k + 1):
                    tot += up[k - j] * ab_j * ht(base + step * j)
                    ab_j = ab_j * gab
                lhs = gmb * tot
                rhs = ab_j * ht(n) - up[k] * u * ht(n - (m - b) * (k + 1))
                return lhs, rhs
            u = qp(a - b) * gma
            s0 = m1(a + b)
            base, step = n - (a - b) * k + (m - a), a - b
            up = _powers(u, k)
            tot = 0
            mb_j = 1
            sgn = 1
            for j in range(k + 1):
                tot += sgn * up[k - j] * mb_j * ht(base + step * j)
                mb_j = mb_j * gmb
                sgn = sgn * s0
            lhs = gab * tot
            rhs = m1((a + b) * k) * mb_j * ht(n) + m1(a + b + 1) * up[k] * u * ht(
                n - (a - b) * (k + 1)
            )
            return lhs, rhs

        return oc

    return build


def _t_sum_binomial(variant: int):
    def build(gt, ht, q):
        qp = _q_pow(q)

        def oc(case):
            n, m = case["n"], case["m"]
            a, b, k = case["a"], case["b"], case["k"]
            gab, gma, gmb = gt(a - b), gt(m - a), gt(m - b)
            if variant == 1:
                u = m1(a + b + 1) * qp(a - b) * gma
                base, step = n - (m - b) * k, a - b
                up = _powers(u, k)
                tot = 0
                mb_j = 1
                for j in range(k + 1):
                    tot += comb(k, j) * up[k - j] * mb_j * ht(base + step * j)
                    mb_j = mb_j * gmb
                lhs = tot
                rhs = _powers(gab, k)[k] * ht(n)
                return lhs, rhs
            if variant == 2:
                u = qp(a - b) * gma
                v = m1(a + b) * gab
                base, step = n - (a - b) * k, m - b
                up = _powers(u, k)
                tot = 0
                v_j = 1
                for j in range(k + 1):
                    tot += comb(k, j) * up[k - j] * v_j * ht(base + step * j)
                    v_j = v_j * v
                lhs = tot
                rhs = m1((a + b) * k) * _powers(gmb, k)[k] * ht(n)
                return lhs, rhs
            v = -gab
            base, step = n + (a - b) * k, m - a
            up = _powers(gmb, k)
            tot = 0
            v_j = 1
            for j in range(k + 1):
                tot += comb(k, j) * up[k - j] * v_j * ht(base + step * j)
                v_j = v_j * v
            lhs = tot
            rhs = m1((a + b) * k) * qp((a - b) * k) * _powers(gma, k)[k] * ht(n)
            return lhs, rhs

        return oc

    return build


def _t_double_shift_lucas(gt, ht, q):
    def oc(case):
        n, m, a = case["n"], case["m"], case["a"]
        lhs = gt(2 * a) * ht(n + m)
        rhs = gt(m + a) * ht(n + a) - gt(m - a) * ht(n - a)
        return lhs, rhs

    return oc


def _t_halton_lucas(gt, ht, q):
    def oc(case):
        n, m = case["n"], case["m"]
        lhs = 2 * ht(n + m)
        rhs = gt(m + 1) * ht(n + 1) - gt(m - 1) * ht(n - 1)
        return lhs, rhs

    return oc


# ---------------------------------------------------------------------------
# The same identities rendered as DSL text. B is the base-sequence letter;
# q distinguishes the unit-q families (fib, pell) from jac (q = 2).


def _neg_base(q: int) -> str:
    return "(-1)" if q == 1 else "(-2)"


def _qf(q: int, e: str) -> str:
    """Multiplicative factor q^(e), omitted entirely when q = 1."""
    return "" if q == 1 else f"2^({e})*"


def _d_master(B, q):
    return (f"{B}[a-b]*H[n+m] = {B}[m-b]*H[n+a] - {_neg_base(q)}^(a-b)*{B}[m-a]*H[n+b]",)


def _d_master_dual(B, q):
    return (f"{B}[a-b]*H[n+m] = H[m-b]*{B}[n+a] - {_neg_base(q)}^(a-b)*H[m-a]*{B}[n+b]",)


def _d_catalan_general(B, q):
    return (f"{B}[n-m]*H[n+m] = {B}[n]*H[n] - {_neg_base(q)}^(n-m)*{B}[m]*H[m]",)


def _d_catalan(B, q):
    return (
        f"{B}[n-m]*{B}[n+m] = {B}[n]^(2) + (-1)^(n+m+1)*{_qf(q, 'n-m')}{B}[m]^(2)",
    )


def _d_double_shift(B, q):
    return (
        f"{B}[2*a]*H[n+m] = {B}[m+a]*H[n+a] - {_qf(q, '2*a')}{B}[m-a]*H[n-a]",
    )


def _d_halton(B, q):
    factor = "" if q == 1 else "4*"
    return (f"{B}[2]*H[n+m] = {B}[m+1]*H[n+1] - {factor}{B}[m-1]*H[n-1]",)


def _d_odd_even_split(B, q):
    return (
        f"{B}[2*k-1]*H[n+m] = {_qf(q, '2*k-1')}{B}[m-2*k]*H[n+1] + {B}[m-1]*H[n+2*k]",
        f"{B}[2*k]*H[n+m] = {B}[m]*H[n+2*k] - {_qf(q, '2*k')}{B}[m-2*k]*H[n]",
    )


def _d_vajda8(B, q):
    factor = "" if q == 1 else "2*"
    return (f"H[n+m] = {B}[m]*H[n+1] + {factor}{B}[m-1]*H[n]",)


def _d_double_index(B, q):
    return (
        f"{B}[2*m]*H[2*n] = {B}[n+m]*H[n+m] - {_qf(q, '2*m')}{B}[n-m]*H[n-m]",
    )


def _d_sum_ordinary(variant):
    def render(B, q):
        if variant == 1:
            return (
                f"(-1)^(a-b+1)*{_qf(q, 'a-b')}{B}[m-a]"
                f"*sum(j,0,k,{B}[m-b]^(k-j)*{B}[a-b]^(j)*H[n-(m-a)*k-(m-b)+(m-a)*j])"
                f" = {B}[a-b]^(k+1)*H[n] - {B}[m-b]^(k+1)*H[n-(m-a)*(k+1)]",
            )
        if variant == 2:
            return (
                f"{B}[m-b]*sum(j,0,k,(-1)^((a-b+1)*(k-j))*{_qf(q, '(a-b)*(k-j)')}"
                f"{B}[m-a]^(k-j)*{B}[a-b]^(j)*H[n-(m-b)*k-(m-a)+(m-b)*j])"
                f" = {B}[a-b]^(k+1)*H[n]"
                f" - (-1)^((a-b+1)*(k+1))*{_qf(q, '(a-b)*(k+1)')}{B}[m-a]^(k+1)*H[n-(m-b)*(k+1)]",
            )
        return (
            f"{B}[a-b]*sum(j,0,k,(-1)^((a+b)*j)*{_qf(q, '(a-b)*(k-j)')}"
            f"{B}[m-a]^(k-j)*{B}[m-b]^(j)*H[n-(a-b)*k+(m-a)+(a-b)*j])"
            f" = (-1)^((a+b)*k)*{B}[m-b]^(k+1)*H[n]"
            f" + (-1)^(a+b+1)*{_qf(q, '(a-b)*(k+1)')}{B}[m-a]^(k+1)*H[n-(a-b)*(k+1)]",
        )

    return render


def _d_sum_binomial(variant):
    def render(B, q):
        if variant == 1:
            return (
                f"sum(j,0,k,(-1)^((a+b+1)*(k-j))*{_qf(q, '(a-b)*(k-j)')}binom(k,j)"
                f"*{B}[m-b]^(j)*{B}[m-a]^(k-j)*H[n-(m-b)*k+(a-b)*j])"
                f" = {B}[a-b]^(k)*H[n]",
            )
        if variant == 2:
            return (
                f"sum(j,0,k,(-1)^((a+b)*j)*binom(k,j)*{B}[a-b]^(j)"
                f"*{_qf(q, '(a-b)*(k-j)')}{B}[m-a]^(k-j)*H[n-(a-b)*k+(m-b)*j])"
                f" = (-1)^((a+b)*k)*{B}[m-b]^(k)*H[n]",
            )
        return (
            f"sum(j,0,k,(-1)^(j)*binom(k,j)*{B}[a-b]^(j)*{B}[m-b]^(k-j)"
            f"*H[n+(a-b)*k+(m-a)*j])"
            f" = (-1)^((a+b)*k)*{_qf(q, '(a-b)*k')}{B}[m-a]^(k)*H[n]",
        )

    return render


def _d_double_shift_lucas(B, q):
    return ("P[2*a]*Q[n+m] = P[m+a]*Q[n+a] - P[m-a]*Q[n-a]",)


def _d_halton_lucas(B, q):
    return ("2*Q[n+m] = P[m+1]*Q[n+1] - P[m-1]*Q[n-1]",)


# ---------------------------------------------------------------------------
# Entry table.


@dataclass(frozen=True)
class CatalogEntry:
    """One registered identity: metadata plus its native checker and DSL form."""

    id: str
    description: str
    family: str
    free_vars: tuple
    generalized: bool
    citation: str
    default_grid: str
    dsl_texts: tuple
    builder: Callable = field(repr=False, compare=False)

    def make_outcome(self, h0=None, h1=None) -> Callable[[dict], tuple]:
        """Bind the checker to concrete sequences (fresh term caches)."""
        base = get_named(self.family)
        gt = term_fn(base)
        if self.generalized:
            companion = make_sequence(
                base.params.p, base.params.q, 0 if h0 is None else h0, 1 if h1 is None else h1
            )
            ht = term_fn(companion)
        elif self.family == "pell" and self.id.endswith("-lucas"):
            ht = term_fn(get_named("pell-lucas"))
        else:
            ht = gt
        return self.builder(gt, ht, base.params.q)


_GRID_NMAB = "a=-4..4,b=-4..4,m=-4..4,n=-4..4"
_GRID_NM = "m=-4..4,n=-4..4"
_GRID_NMA = "a=-4..4,m=-4..4,n=-4..4"
_GRID_NMK = "k=0..6,m=-4..4,n=-4..4"
_GRID_SUM = "a=-4..4,b=-4..4,k=0..6,m=-4..4,n=-4..4"

# (suffix, free vars, generalized, default grid, builder, dsl renderer,
#  description template, citation template)
_TEMPLATES = (
    (
        "master",
        ("a", "b", "m", "n"),
        True,
        _GRID_NMAB,
        _t_master,
        _d_master,
        "Three-term expansion of H(n+m) by {base} multipliers at shifts a and b",
        "",
    ),
    (
        "master-dual",
        ("a", "b", "m", "n"),
        True,
        _GRID_NMAB,
        _t_master_dual,
        _d_master_dual,
        "Mirror of the master expansion with base and companion roles swapped",
        "",
    ),
    (
        "catalan-general",
        ("m", "n"),
        True,
        _GRID_NM,
        _t_catalan_general,
        _d_catalan_general,
        "Catalan-type relation among H(n+m), H(n), H(m) with {base} multipliers",
        "Catalan's identity (generalized companion form)",
    ),
    (
        "catalan",
        ("m", "n"),
        False,
        _GRID_NM,
        _t_catalan,
        _d_catalan,
        "Catalan's identity for {base} numbers",
        "Catalan's identity",
    ),
    (
        "double-shift",
        ("a", "m", "n"),
        True,
        _GRID_NMA,
        _t_double_shift,
        _d_double_shift,
        "Symmetric shift of both H indices by a with {base} coefficients",
        "",
    ),
    (
        "halton",
        ("m", "n"),
        True,
        _GRID_NM,
        _t_halton,
        _d_halton,
        "Unit-shift instance of the symmetric double shift over {base}",
        "Halton's identity (63), companion form",
    ),
    (
        "odd-even-split",
        ("k", "m", "n"),
        True,
        _GRID_NMK,
        _t_odd_even_split,
        _d_odd_even_split,
        "Splits H(n+m) with an odd (2k-1) and an even (2k) {base} shift",
        "",
    ),
    (
        "vajda8",
        ("m", "n"),
        True,
        _GRID_NM,
        _t_vajda8,
        _d_vajda8,
        "Addition rule: H(n+m) from H(n) and H(n+1) with {base} coefficients",
        "Vajda's formula (8)",
    ),
    (
        "double-index",
        ("m", "n"),
        True,
        _GRID_NM,
        _t_double_index,
        _d_double_index,
        "Index doubling: H(2n) against {base} terms at n+m and n-m",
        "",
    ),
    (
        "sum.ordinary.1",
        ("a", "b", "k", "m", "n"),
        True,
        _GRID_SUM,
        _t_sum_ordinary(1),
        _d_sum_ordinary(1),
        "Power-weighted ordinary sum over H, variant 1, {base} weights",
        "",
    ),
    (
        "sum.ordinary.2",
        ("a", "b", "k", "m", "n"),
        True,
        _GRID_SUM,
        _t_sum_ordinary(2),
        _d_sum_ordinary(2),
        "Power-weighted ordinary sum over H, variant 2, {base} weights",
        "",
    ),
    (
        "sum.ordinary.3",
        ("a", "b", "k", "m", "n"),
        True,
        _GRID_SUM,
        _t_sum_ordinary(3),
        _d_sum_ordinary(3),
        "Power-weighted ordinary sum over H, variant 3, {base} weights",
        "",
    ),
    (
        "sum.binomial.1",
        ("a", "b", "k", "m", "n"),
        True,
        _GRID_SUM,
        _t_sum_binomial(1),
        _d_sum_binomial(1),
        "Binomial-weighted sum over H, variant 1, {base} weights",
        "",
    ),
    (
        "sum.binomial.2",
        ("a", "b", "k", "m", "n"),
        True,
        _GRID_SUM,
        _t_sum_binomial(2),
        _d_sum_binomial(2),
        "Binomial-weighted sum over H, variant 2, {base} weights",
        "",
    ),
    (
        "sum.binomial.3",
        ("a", "b", "k", "m", "n"),
        True,
        _GRID_SUM,
        _t_sum_binomial(3),
        _d_sum_binomial(3),
        "Binomial-weighted sum over H, variant 3, {base} weights",
        "",
    ),
)

_FAMILIES = (
    ("fib", "fibonacci", "F", 1, "Fibonacci"),
    ("pell", "pell", "P", 1, "Pell"),
    ("jac", "jacobsthal", "J", 2, "Jacobsthal"),
)


def _build_entries() -> dict:
    entries = {}
    for prefix, family, letter, q, base_name in _FAMILIES:
        for suffix, free_vars, generalized, grid, builder, renderer, desc, cite in _TEMPLATES:
            entry_id = f"{prefix}.{suffix}"
            entries[entry_id] = CatalogEntry(
                id=entry_id,
                description=desc.format(base=base_name),
                family=family,
                free_vars=free_vars,
                generalized=generalized,
                citation=cite,
                default_grid=grid,
                dsl_texts=renderer(letter, q),
                builder=builder,
            )
    entries["pell.double-shift-lucas"] = CatalogEntry(
        id="pell.double-shift-lucas",
        description="Symmetric double shift pairing Pell and Pell-Lucas terms",
        family="pell",
        free_vars=("a", "m", "n"),
        generalized=False,
        citation="",
        default_grid=_GRID_NMA,
        dsl_texts=_d_double_shift_lucas("P", 1),
        builder=_t_double_shift_lucas,
    )
    entries["pell.halton-lucas"] = CatalogEntry(
        id="pell.halton-lucas",
        description="Unit-offset double shift pairing Pell and Pell-Lucas terms",
        family="pell",
        free_vars=("m", "n"),
        generalized=False,
        citation="Halton's identity (63), Pell-Lucas pairing",
        default_grid=_GRID_NM,
        dsl_texts=_d_halton_lucas("P", 1),
        builder=_t_halton_lucas,
    )
    return entries


_ENTRIES = _build_entries()


def catalog_list() -> list:
    """All entries, alphabetical by id."""
    return [_ENTRIES[k] for k in sorted(_ENTRIES)]


def catalog_entry(entry_id: str) -> CatalogEntry:
    """Look up one entry; unknown ids get a nearest-match hint."""
    entry = _ENTRIES.get(entry_id)
    if entry is None:
        close = difflib.get_close_matches(entry_id, sorted(_ENTRIES), n=1)
        hint = f"; did you mean {close[0]!r}?" if close else ""
        raise UsageError(f"unknown catalog id {entry_id!r}{hint}")
    return entry


def catalog_run(
    entry_id: str,
    grid=None,
    generalized_initials: Optional[tuple] = None,
) -> VerificationReport:
    """Verify one catalog entry over a grid (default grid when omitted).

    generalized_initials = (h0, h1) selects the companion sequence for
    generalized entries; it defaults to (0, 1) and is rejected for entries
    without a companion slot.
    """
    entry = catalog_entry(entry_id)
    if grid is None:
        grid = parse_grid(entry.default_grid)
    elif isinstance(grid, str):
        grid = parse_grid(grid)
    if tuple(sorted(grid.var_names)) != entry.free_vars:
        raise UsageError(
            f"catalog entry {entry_id!r} needs grid variables"
            f" {{{', '.join(entry.free_vars)}}}, got {{{', '.join(grid.var_names)}}}"
        )
    if generalized_initials is not None and not entry.generalized:
        raise UsageError(f"catalog entry {entry_id!r} takes no companion initials")
    h0, h1 = generalized_initials if generalized_initials is not None else (None, None)
    return run_grid(entry.id, grid, entry.make_outcome(h0, h1))
