"""Exact arithmetic and identity verification for second-order linear recurrences.

Sequences follow G(n) = p*G(n-1) + q*G(n-2) from initial terms G(0), G(1),
extended to negative indices via G(n-2) = (G(n) - p*G(n-1))/q. Everything is
computed over exact rationals; an identity "holds" only when both sides are
equal as rationals at every checked grid case.
"""

from .catalog import CatalogEntry, catalog_entry, catalog_list, catalog_run
from .cli import REPORT_JSON_SCHEMA
from .dsl import (
    IdentityAst,
    default_registry,
    eval_expr,
    parse_expression,
    parse_identity,
    pretty_print,
    verify_over_grid,
)
from .errors import (
    DegeneracyError,
    DomainError,
    EvalError,
    HoradamError,
    ParameterError,
    ParseError,
    PreconditionError,
    RangeError,
    SingularMatrixError,
    UsageError,
)
from .grid import GridSpec, make_grid, parse_grid
from .kernel import (
    IDENTITY_NAMES,
    KernelArgs,
    ThreeTermRelation,
    basis_coefficients,
    check_corollary,
    check_lemma1,
    check_lemma2,
    check_lemma3,
    check_sum_binomial,
    check_sum_ordinary,
    check_theorem1,
    f_g,
    identity_variables,
    verify_identity_grid,
)
from .report import VerificationReport, run_grid
from .scalar import Mat2, Rational, binom, m1, mat_pow, rat, rat_from_text, rat_text
from .sequences import (
    RecurrenceParams,
    Sequence,
    get_named,
    make_sequence,
    named_sequences,
    term,
    term_fn,
    term_iterative_oracle,
    term_range,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # scalar core
    "Rational", "rat", "rat_from_text", "rat_text", "binom", "m1", "Mat2", "mat_pow",
    # sequences
    "RecurrenceParams", "Sequence", "make_sequence", "get_named", "named_sequences",
    "term", "term_fn", "term_range", "term_iterative_oracle",
    # grids and reports
    "GridSpec", "make_grid", "parse_grid", "VerificationReport", "run_grid",
    "REPORT_JSON_SCHEMA",
    # identity kernel
    "KernelArgs", "ThreeTermRelation", "f_g", "basis_coefficients",
    "check_theorem1", "check_corollary", "check_lemma1", "check_lemma2",
    "check_lemma3", "check_sum_ordinary", "check_sum_binomial",
    "IDENTITY_NAMES", "identity_variables", "verify_identity_grid",
    # catalog
    "CatalogEntry", "catalog_entry", "catalog_list", "catalog_run",
    # DSL
    "IdentityAst", "parse_identity", "parse_expression", "pretty_print",
    "eval_expr", "verify_over_grid", "default_registry",
    # errors
    "HoradamError", "ParameterError", "DomainError", "RangeError",
    "SingularMatrixError", "DegeneracyError", "PreconditionError",
    "UsageError", "ParseError", "EvalError",
]
