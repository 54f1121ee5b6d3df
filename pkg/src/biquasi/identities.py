"""A tiny DSL for two-operation equational identities.

Grammar (whitespace insignificant):

    equation := side '=' side
    side     := operand (op operand)?
    operand  := variable | '(' side ')'
    op       := 'o' | '*'          # circ and star
    variable := 'x' | 'y' | 'z' | 'u' | 'w'

Every application must be parenthesized except the outermost one on each
side of '=', so "a o b o c" is rejected rather than silently grouped.
Canonical rendering is fully parenthesized; parse(render(eq)) == eq.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Optional, Union

import numpy as np

from .core import Biquasigroup

__all__ = [
    "Var",
    "App",
    "Term",
    "IdentityEquation",
    "CheckResult",
    "Counterexample",
    "ParseError",
    "VARIABLES",
    "BUILTIN_IDENTITIES",
    "parse_identity",
    "builtin",
    "render",
    "render_term",
    "eval_term",
    "check",
    "ops_used",
    "compile_full",
]

VARIABLES = ("x", "y", "z", "u", "w")
OPS = {"o": "circ", "*": "star"}
OP_SYMBOL = {"circ": "o", "star": "*"}


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class App:
    op: str  # "circ" | "star"
    left: "Term"
    right: "Term"


Term = Union[Var, App]


def _collect_vars(term: Term, seen: list[str]) -> None:
    if isinstance(term, Var):
        if term.name not in seen:
            seen.append(term.name)
    else:
        _collect_vars(term.left, seen)
        _collect_vars(term.right, seen)


@dataclass(frozen=True)
class IdentityEquation:
    """An equation between two terms; vars in first-occurrence order."""

    lhs: Term
    rhs: Term
    vars: tuple[str, ...] = ()

    def __post_init__(self):
        seen: list[str] = []
        _collect_vars(self.lhs, seen)
        _collect_vars(self.rhs, seen)
        object.__setattr__(self, "vars", tuple(seen))


class ParseError(ValueError):
    """Rejected identity text; position is a 0-based character offset."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")


class _Token(NamedTuple):
    kind: str  # var | op | lparen | rparen | eq
    value: str
    pos: int


def _lex(text: str) -> list[_Token]:
    tokens = []
    for i, c in enumerate(text):
        if c.isspace():
            continue
        if c in VARIABLES:
            tokens.append(_Token("var", c, i))
        elif c in OPS:
            tokens.append(_Token("op", OPS[c], i))
        elif c == "(":
            tokens.append(_Token("lparen", c, i))
        elif c == ")":
            tokens.append(_Token("rparen", c, i))
        elif c == "=":
            tokens.append(_Token("eq", c, i))
        else:
            raise ParseError(f"unknown token {c!r}", i)
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], end: int):
        self.tokens = tokens
        self.i = 0
        self.end = end  # offset to report when input stops short

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.end)
        self.i += 1
        return tok

    def parse_side(self) -> Term:
        term = self.parse_term()
        tok = self.peek()
        if tok is not None:
            if tok.kind == "op":
                raise ParseError("unparenthesized application", tok.pos)
            if tok.kind == "rparen":
                raise ParseError("unbalanced parentheses", tok.pos)
            raise ParseError(f"unexpected {tok.value!r}", tok.pos)
        return term

    def parse_term(self) -> Term:
        left = self.parse_operand()
        tok = self.peek()
        if tok is not None and tok.kind == "op":
            self.take()
            right = self.parse_operand()
            return App(tok.value, left, right)
        return left

    def parse_operand(self) -> Term:
        tok = self.take()
        if tok.kind == "var":
            return Var(tok.value)
        if tok.kind == "lparen":
            term = self.parse_term()
            nxt = self.peek()
            if nxt is None:
                raise ParseError("unbalanced parentheses", self.end)
            if nxt.kind == "op":
                raise ParseError("unparenthesized application", nxt.pos)
            if nxt.kind != "rparen":
                raise ParseError(f"unexpected {nxt.value!r}", nxt.pos)
            self.take()
            return term
        if tok.kind == "rparen":
            raise ParseError("unbalanced parentheses", tok.pos)
        raise ParseError(f"expected a variable or '(', got {tok.value!r}", tok.pos)


def parse_identity(text: str) -> IdentityEquation:
    """Parse an equation like "(x o z) * (y o z) = x * y"."""
    tokens = _lex(text)
    eq_idxs = [i for i, t in enumerate(tokens) if t.kind == "eq"]
    if not eq_idxs:
        raise ParseError("missing '='", len(text))
    if len(eq_idxs) > 1:
        raise ParseError("more than one '='", tokens[eq_idxs[1]].pos)
    cut = eq_idxs[0]
    lhs = _Parser(tokens[:cut], tokens[cut].pos).parse_side()
    rhs = _Parser(tokens[cut + 1 :], len(text)).parse_side()
    return IdentityEquation(lhs, rhs)


def render_term(term: Term) -> str:
    if isinstance(term, Var):
        return term.name
    return (
        f"({render_term(term.left)} {OP_SYMBOL[term.op]} {render_term(term.right)})"
    )


def render(eq: IdentityEquation) -> str:
    """Canonical fully-parenthesized text of an equation."""
    return f"{render_term(eq.lhs)} = {render_term(eq.rhs)}"


# The nine Ward-type identities plus the classical structural ones.
BUILTIN_IDENTITIES = {
    "e1": "(x o z) o (y o z) = x o y",
    "e2": "(x o z) * (y o z) = x * y",
    "e3": "(x o z) o (y o z) = x o y",
    "e4": "(x o z) o (y o z) = x * y",
    "e5": "(x o z) o (y * z) = x o y",
    "e6": "(x o z) * (y o z) = x o y",
    "e7": "(x o z) o (y * z) = x * y",
    "e8": "(x o z) * (y * z) = x o y",
    "e9": "(x o z) * (y * z) = x * y",
    "medial_circ": "(x o y) o (z o w) = (x o z) o (y o w)",
    "medial_star": "(x * y) * (z * w) = (x * z) * (y * w)",
    "paramedial_circ": "(x o y) o (z o u) = (u o y) o (z o x)",
    "paramedial_star": "(x * y) * (z * u) = (u * y) * (z * x)",
    "left_modular": "x o (y o z) = z o (y o x)",
}


@lru_cache(maxsize=None)
def builtin(name: str) -> IdentityEquation:
    """A named builtin identity, parsed from its display form."""
    try:
        source = BUILTIN_IDENTITIES[name]
    except KeyError:
        raise ValueError(
            f"unknown identity {name!r}; known: {', '.join(BUILTIN_IDENTITIES)}"
        ) from None
    return parse_identity(source)


def ops_used(eq: IdentityEquation) -> frozenset[str]:
    ops: set[str] = set()

    def walk(t: Term) -> None:
        if isinstance(t, App):
            ops.add(t.op)
            walk(t.left)
            walk(t.right)

    walk(eq.lhs)
    walk(eq.rhs)
    return frozenset(ops)


def eval_term(term: Term, biq: Biquasigroup, assignment: dict[str, int]) -> int:
    """Evaluate a term by recursive table lookup."""
    if isinstance(term, Var):
        try:
            return assignment[term.name]
        except KeyError:
            raise ValueError(f"unbound variable {term.name!r}") from None
    left = eval_term(term.left, biq, assignment)
    right = eval_term(term.right, biq, assignment)
    rows = biq.circ.rows if term.op == "circ" else biq.star.rows
    return int(rows[left, right])


@dataclass(frozen=True)
class Counterexample:
    assignment: dict[str, int]
    lhs: int
    rhs: int


@dataclass(frozen=True)
class CheckResult:
    holds: bool
    counterexample: Optional[Counterexample] = None


def check(biq: Biquasigroup, eq: IdentityEquation) -> CheckResult:
    """Decide an identity by evaluating every assignment.

    Assignments run in lexicographic order over eq.vars (first-occurrence
    order), so the reported counterexample is reproducible.
    """
    n = biq.order
    names = eq.vars
    for values in itertools.product(range(n), repeat=len(names)):
        assignment = dict(zip(names, values))
        lhs = eval_term(eq.lhs, biq, assignment)
        rhs = eval_term(eq.rhs, biq, assignment)
        if lhs != rhs:
            return CheckResult(False, Counterexample(assignment, lhs, rhs))
    return CheckResult(True, None)


def compile_full(eq: IdentityEquation, n: int):
    """Vectorized all-assignments checker: f(circ_rows, star_rows) -> bool.

    The assignment cube is materialized once per (equation, order), so
    repeated calls over many table pairs stay cheap.
    """
    k = len(eq.vars)
    grids = np.indices((n,) * k) if k else np.zeros((0,), dtype=np.int64)
    env = dict(zip(eq.vars, grids))

    def run(circ_rows: np.ndarray, star_rows: np.ndarray) -> bool:
        def ev(t: Term):
            if isinstance(t, Var):
                return env[t.name]
            left = ev(t.left)
            right = ev(t.right)
            rows = circ_rows if t.op == "circ" else star_rows
            return rows[left, right]

        return bool(np.array_equal(ev(eq.lhs), ev(eq.rhs)))

    return run
