"""Expression language for writing sequence identities as text.

Grammar (whitespace insensitive; '#' is not a comment character):

    identity  := expr "=" expr
    expr      := ["-"] term (("+" | "-") term)*
    term      := factor ("*" factor)*
    factor    := base ("^" "(" indexExpr ")")?
    base      := INT | IDENT | SEQNAME "[" indexExpr "]" | "(" expr ")"
               | "binom" "(" indexExpr "," indexExpr ")"
               | "sum" "(" IDENT "," indexExpr "," indexExpr "," expr ")"
    indexExpr := ["-"] indexTerm (("+" | "-") indexTerm)*
    indexTerm := indexAtom ("*" indexAtom)*
    indexAtom := INT | IDENT | "(" indexExpr ")"

INT is a non-negative digit run; IDENT is a letter/underscore word. An IDENT
directly followed by "[" is a sequence name, resolved against the registry at
evaluation time; otherwise it is a free integer variable. "binom" and "sum"
are reserved. Exponents and index expressions always evaluate to integers;
exponents may be negative when the base is nonzero. There is no division
operator, so evaluation is total apart from 0^(negative).

sum(var, lo, hi, body) sums body for var = lo..hi inclusive and is empty
(zero) when lo > hi; the bound variable must not shadow any other variable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .errors import EvalError, ParseError, UsageError
from .grid import GridSpec
from .report import VerificationReport, run_grid
from .scalar import Rational, binom
from .sequences import NAME_ALIASES, Sequence, get_named, term_fn

__all__ = [
    "IntLit", "Var", "Neg", "Add", "Sub", "Mul", "Pow", "SeqTerm", "Binom",
    "Sum", "IdentityAst", "parse_identity", "parse_expression", "pretty_print",
    "eval_expr", "verify_over_grid", "default_registry",
]

_RESERVED = ("binom", "sum")


# ---------------------------------------------------------------------------
# Syntax tree. pos is the 1-based (line, column) of the node's first token;
# it never takes part in equality, so round-tripped trees compare equal.


@dataclass(frozen=True)
class IntLit:
    value: int
    pos: tuple = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Var:
    name: str
    pos: tuple = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Neg:
    operand: object
    pos: tuple = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Add:
    left: object
    right: object
    pos: tuple = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Sub:
    left: object
    right: object
    pos: tuple = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Mul:
    left: object
    right: object
    pos: tuple = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: object
    pos: tuple = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class SeqTerm:
    seq: str
    index: object
    pos: tuple = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Binom:
    first: object
    second: object
    pos: tuple = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Sum:
    var: str
    lo: object
    hi: object
    body: object
    pos: tuple = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class IdentityAst:
    lhs: object
    rhs: object
    free_vars: tuple
    pos: tuple = field(default=(1, 1), compare=False, repr=False)


# ---------------------------------------------------------------------------
# Tokenizer.

_SYMBOLS = "+-*^()[],="


@dataclass(frozen=True)
class _Token:
    kind: str  # "int" | "ident" | one of _SYMBOLS | "eof"
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list:
    tokens = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c in _SYMBOLS:
            tokens.append(_Token(c, c, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {c!r}", line, col)
    tokens.append(_Token("eof", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# Parser (recursive descent, one token of lookahead).


class _Parser:
    def __init__(self, text: str):
        self._tokens = _tokenize(text)
        self._i = 0

    def _peek(self) -> _Token:
        return self._tokens[self._i]

    def _next(self) -> _Token:
        tok = self._tokens[self._i]
        if tok.kind != "eof":
            self._i += 1
        return tok

    def _expect(self, kind: str, what: str) -> _Token:
        tok = self._peek()
        if tok.kind != kind:
            got = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise ParseError(f"expected {what}, found {got}", tok.line, tok.col)
        return self._next()

    def _ident(self, what: str) -> _Token:
        tok = self._expect("ident", what)
        if tok.text in _RESERVED:
            raise ParseError(
                f"{tok.text!r} is reserved and cannot name a {what}", tok.line, tok.col
            )
        return tok

    # -- value-level expressions ------------------------------------------

    def parse_identity(self) -> IdentityAst:
        lhs = self.parse_expr()
        self._expect("=", "'='")
        rhs = self.parse_expr()
        tok = self._peek()
        if tok.kind != "eof":
            raise ParseError(f"unexpected trailing {tok.text!r}", tok.line, tok.col)
        free = _validate(lhs, rhs)
        return IdentityAst(lhs, rhs, free, pos=_pos(lhs))

    def parse_expr(self):
        tok = self._peek()
        if tok.kind == "-":
            self._next()
            node = Neg(self.parse_term(), pos=(tok.line, tok.col))
        else:
            node = self.parse_term()
        while self._peek().kind in ("+", "-"):
            op = self._next()
            right = self.parse_term()
            cls = Add if op.kind == "+" else Sub
            node = cls(node, right, pos=_pos(node))
        return node

    def parse_term(self):
        node = self.parse_factor()
        while self._peek().kind == "*":
            self._next()
            node = Mul(node, self.parse_factor(), pos=_pos(node))
        return node

    def parse_factor(self):
        node = self.parse_base()
        if self._peek().kind == "^":
            self._next()
            self._expect("(", "'(' after '^'")
            exponent = self.parse_index_expr()
            self._expect(")", "')' closing the exponent")
            node = Pow(node, exponent, pos=_pos(node))
        return node

    def parse_base(self):
        tok = self._peek()
        if tok.kind == "int":
            self._next()
            return IntLit(int(tok.text), pos=(tok.line, tok.col))
        if tok.kind == "(":
            self._next()
            inner = self.parse_expr()
            self._expect(")", "')'")
            return inner
        if tok.kind == "ident":
            self._next()
            if tok.text == "binom":
                self._expect("(", "'(' after 'binom'")
                first = self.parse_index_expr()
                self._expect(",", "','")
                second = self.parse_index_expr()
                self._expect(")", "')'")
                return Binom(first, second, pos=(tok.line, tok.col))
            if tok.text == "sum":
                self._expect("(", "'(' after 'sum'")
                var = self._ident("summation variable")
                self._expect(",", "','")
                lo = self.parse_index_expr()
                self._expect(",", "','")
                hi = self.parse_index_expr()
                self._expect(",", "','")
                body = self.parse_expr()
                self._expect(")", "')'")
                return Sum(var.text, lo, hi, body, pos=(tok.line, tok.col))
            if self._peek().kind == "[":
                self._next()
                index = self.parse_index_expr()
                self._expect("]", "']'")
                return SeqTerm(tok.text, index, pos=(tok.line, tok.col))
            return Var(tok.text, pos=(tok.line, tok.col))
        got = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"expected an expression, found {got}", tok.line, tok.col)

    # -- index-level expressions (integers only, no ^) ---------------------

    def parse_index_expr(self):
        tok = self._peek()
        if tok.kind == "-":
            self._next()
            node = Neg(self.parse_index_term(), pos=(tok.line, tok.col))
        else:
            node = self.parse_index_term()
        while self._peek().kind in ("+", "-"):
            op = self._next()
            right = self.parse_index_term()
            cls = Add if op.kind == "+" else Sub
            node = cls(node, right, pos=_pos(node))
        return node

    def parse_index_term(self):
        node = self.parse_index_atom()
        while self._peek().kind == "*":
            self._next()
            node = Mul(node, self.parse_index_atom(), pos=_pos(node))
        return node

    def parse_index_atom(self):
        tok = self._peek()
        if tok.kind == "int":
            self._next()
            return IntLit(int(tok.text), pos=(tok.line, tok.col))
        if tok.kind == "ident":
            if tok.text in _RESERVED:
                raise ParseError(
                    f"{tok.text!r} is reserved and cannot be an index variable",
                    tok.line,
                    tok.col,
                )
            self._next()
            return Var(tok.text, pos=(tok.line, tok.col))
        if tok.kind == "(":
            self._next()
            inner = self.parse_index_expr()
            self._expect(")", "')'")
            return inner
        got = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"expected an index expression, found {got}", tok.line, tok.col)


def _pos(node) -> tuple:
    return node.pos


def _validate(lhs, rhs) -> tuple:
    """Collect free variables in first-occurrence order; ban sum shadowing."""
    free: list = []
    sum_vars: list = []

    def walk(node, bound: tuple):
        t = type(node)
        if t is Var:
            if node.name not in bound and node.name not in free:
                free.append(node.name)
        elif t is Neg:
            walk(node.operand, bound)
        elif t in (Add, Sub, Mul):
            walk(node.left, bound)
            walk(node.right, bound)
        elif t is Pow:
            walk(node.base, bound)
            walk(node.exponent, bound)
        elif t is SeqTerm:
            walk(node.index, bound)
        elif t is Binom:
            walk(node.first, bound)
            walk(node.second, bound)
        elif t is Sum:
            if node.var in bound:
                raise ParseError(
                    f"sum variable {node.var!r} shadows an enclosing sum variable",
                    *node.pos,
                )
            walk(node.lo, bound)
            walk(node.hi, bound)
            walk(node.body, bound + (node.var,))
            sum_vars.append((node.var, node.pos))

    walk(lhs, ())
    walk(rhs, ())
    for name, pos in sum_vars:
        if name in free:
            raise ParseError(
                f"sum variable {name!r} shadows a free variable of the identity", *pos
            )
    return tuple(free)


def parse_identity(text: str) -> IdentityAst:
    """Parse "lhs = rhs" into a syntax tree with its free variables."""
    return _Parser(text).parse_identity()


def parse_expression(text: str):
    """Parse a single expression (no '=') into a syntax tree."""
    parser = _Parser(text)
    node = parser.parse_expr()
    tok = parser._peek()
    if tok.kind != "eof":
        raise ParseError(f"unexpected trailing {tok.text!r}", tok.line, tok.col)
    _validate(node, IntLit(0))
    return node


# ---------------------------------------------------------------------------
# Pretty printer. Output re-parses to a tree equal to the input.

_PREC = {Add: 1, Sub: 1, Neg: 1, Mul: 2, Pow: 3}


def _prec(node) -> int:
    return _PREC.get(type(node), 4)


def _render(node, min_prec: int, index_level: bool) -> str:
    t = type(node)
    if t is IntLit:
        return str(node.value)
    if t is Var:
        return node.name
    if t is SeqTerm:
        return f"{node.seq}[{_render(node.index, 1, True)}]"
    if t is Binom:
        return f"binom({_render(node.first, 1, True)},{_render(node.second, 1, True)})"
    if t is Sum:
        return (
            f"sum({node.var},{_render(node.lo, 1, True)},{_render(node.hi, 1, True)},"
            f"{_render(node.body, 1, False)})"
        )
    if t is Pow:
        # a power's base must be an atom in the grammar; anything else
        # (including another power) needs explicit parentheses
        base = _render(node.base, 4, index_level)
        text = f"{base}^({_render(node.exponent, 1, True)})"
    elif t is Neg:
        text = "-" + _render(node.operand, 2, index_level)
    elif t is Mul:
        text = (
            _render(node.left, 2, index_level) + "*" + _render(node.right, 3, index_level)
        )
    elif t in (Add, Sub):
        op = "+" if t is Add else "-"
        joiner = op if index_level else f" {op} "
        text = (
            _render(node.left, 1, index_level)
            + joiner
            + _render(node.right, 2, index_level)
        )
    else:
        raise TypeError(f"not a DSL node: {node!r}")
    if _prec(node) < min_prec:
        return f"({text})"
    return text


def pretty_print(node) -> str:
    """Canonical text for a node or whole identity."""
    if isinstance(node, IdentityAst):
        return f"{_render(node.lhs, 1, False)} = {_render(node.rhs, 1, False)}"
    return _render(node, 1, False)


# ---------------------------------------------------------------------------
# Evaluation.

_MISSING = object()


def default_registry() -> dict:
    """Every built-in sequence under every accepted spelling."""
    return {alias: get_named(alias) for alias in NAME_ALIASES}


class _Evaluator:
    def __init__(self, registry: Mapping[str, Sequence]):
        self._registry = dict(registry)
        self._terms: dict = {}

    def _term(self, node: SeqTerm):
        fn = self._terms.get(node.seq)
        if fn is None:
            seq = self._registry.get(node.seq)
            if seq is None:
                raise EvalError(f"unknown sequence name {node.seq!r}")
            fn = term_fn(seq)
            self._terms[node.seq] = fn
        return fn

    @staticmethod
    def _int(value, node, what: str) -> int:
        if isinstance(value, int):
            return value
        if isinstance(value, Fraction) and value.denominator == 1:
            return value.numerator
        raise EvalError(f"{what} did not evaluate to an integer: {value}")

    def eval(self, node, bindings: dict):
        t = type(node)
        if t is IntLit:
            return node.value
        if t is Var:
            value = bindings.get(node.name, _MISSING)
            if value is _MISSING:
                raise EvalError(f"unbound variable {node.name!r}")
            return value
        if t is Add:
            return self.eval(node.left, bindings) + self.eval(node.right, bindings)
        if t is Sub:
            return self.eval(node.left, bindings) - self.eval(node.right, bindings)
        if t is Mul:
            return self.eval(node.left, bindings) * self.eval(node.right, bindings)
        if t is Neg:
            return -self.eval(node.operand, bindings)
        if t is SeqTerm:
            fn = self._term(node)
            return fn(self._int(self.eval(node.index, bindings), node, "sequence index"))
        if t is Pow:
            base = self.eval(node.base, bindings)
            exponent = self._int(self.eval(node.exponent, bindings), node, "exponent")
            if exponent >= 0:
                return base ** exponent
            if base == 0:
                raise EvalError("zero raised to a negative power")
            return Fraction(base) ** exponent
        if t is Sum:
            lo = self._int(self.eval(node.lo, bindings), node, "sum lower bound")
            hi = self._int(self.eval(node.hi, bindings), node, "sum upper bound")
            total = 0
            saved = bindings.get(node.var, _MISSING)
            try:
                for value in range(lo, hi + 1):
                    bindings[node.var] = value
                    total = total + self.eval(node.body, bindings)
            finally:
                if saved is _MISSING:
                    bindings.pop(node.var, None)
                else:
                    bindings[node.var] = saved
            return total
        if t is Binom:
            return binom(
                self._int(self.eval(node.first, bindings), node, "binom argument"),
                self._int(self.eval(node.second, bindings), node, "binom argument"),
            )
        raise TypeError(f"not a DSL node: {node!r}")


def eval_expr(node, bindings: Mapping[str, int], registry: Mapping[str, Sequence]) -> Rational:
    """Evaluate one expression tree exactly under integer bindings."""
    value = _Evaluator(registry).eval(node, dict(bindings))
    return value if isinstance(value, Fraction) else Fraction(value)


def verify_over_grid(
    ast: IdentityAst,
    grid: GridSpec,
    registry: Optional[Mapping[str, Sequence]] = None,
    identity_label: Optional[str] = None,
) -> VerificationReport:
    """Check lhs = rhs exactly at every grid case; nothing is ever skipped."""
    if registry is None:
        registry = default_registry()
    grid_vars = set(grid.var_names)
    free = set(ast.free_vars)
    if grid_vars != free:
        missing = sorted(free - grid_vars)
        extra = sorted(grid_vars - free)
        parts = []
        if missing:
            parts.append(f"missing {', '.join(missing)}")
        if extra:
            parts.append(f"unused {', '.join(extra)}")
        raise UsageError(f"grid variables do not match identity: {'; '.join(parts)}")
    evaluator = _Evaluator(registry)

    def outcome(case: dict):
        return evaluator.eval(ast.lhs, case), evaluator.eval(ast.rhs, case)

    label = identity_label if identity_label is not None else pretty_print(ast)
    return run_grid(label, grid, outcome)
