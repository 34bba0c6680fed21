"""Formula syntax: AST nodes, parser and canonical printer.

Grammar tokens: ``~`` involutive negation, ``!`` Godel negation, ``&``,
``|``, ``->`` Godel implication, ``=>L`` Lukasiewicz implication, ``=>F``
falsity-tolerant implication, ``<->`` biconditional, ``D`` delta, ``0``/``1``
constants.  Precedence (tightest first): unary, ``&``, ``|``, the three
implications (right-associative), ``<->`` (left-associative).

Formulas are immutable trees; parse(print(f)) is structurally f.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InputError, ParseError


class Formula:
    """Base class; subclasses are frozen dataclasses, so formulas hash and
    compare structurally."""

    def __str__(self) -> str:
        return print_formula(self)

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __invert__(self) -> "Formula":
        return Inv(self)


@dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class GImp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class LukImp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class FTImp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Inv(Formula):
    arg: Formula


@dataclass(frozen=True)
class GNeg(Formula):
    arg: Formula


@dataclass(frozen=True)
class Delta(Formula):
    arg: Formula


@dataclass(frozen=True)
class TableConn:
    """A connective defined semantically rather than by a term.

    ``threshold`` gives the value-table: the connective maps an argument
    with rational value x to top when x < threshold and to 0 otherwise.
    Keeping the rational (instead of a fixed-size table) lets the same
    connective restrict to subchains of other sizes, which is how it acts
    on the components of a product.
    """

    name: str
    arity: int
    threshold: Fraction

    def table_for(self, size: int) -> tuple[int, ...]:
        """Materialize the value table on a chain of the given size."""
        top = size - 1
        return tuple(
            0 if Fraction(a, top) >= self.threshold else top for a in range(size)
        )


@dataclass(frozen=True)
class TableApp(Formula):
    conn: TableConn
    arg: Formula


BINARY = (And, Or, GImp, LukImp, FTImp, Iff)
UNARY = (Inv, GNeg, Delta)


def variables(f: Formula) -> set[str]:
    out: set[str] = set()
    seen: set[int] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if id(g) in seen:
            continue
        seen.add(id(g))
        match g:
            case Var(name):
                out.add(name)
            case Bot() | Top():
                pass
            case Inv(a) | GNeg(a) | Delta(a) | TableApp(_, a):
                stack.append(a)
            case (And(a, b) | Or(a, b) | GImp(a, b) | LukImp(a, b)
                  | FTImp(a, b) | Iff(a, b)):
                stack.append(a)
                stack.append(b)
            case _:
                raise InputError(f"not a formula: {g!r}")
    return out


def variables_of(fs: Iterable[Formula]) -> list[str]:
    """Sorted variable set of a batch of formulas (the enumeration order)."""
    out: set[str] = set()
    for f in fs:
        out |= variables(f)
    return sorted(out)


def subst(f: Formula, env: Mapping[str, Formula]) -> Formula:
    """Uniform substitution of formulas for variables."""
    match f:
        case Var(name):
            return env.get(name, f)
        case Bot() | Top():
            return f
        case Inv(a):
            return Inv(subst(a, env))
        case GNeg(a):
            return GNeg(subst(a, env))
        case Delta(a):
            return Delta(subst(a, env))
        case TableApp(c, a):
            return TableApp(c, subst(a, env))
        case And(a, b):
            return And(subst(a, env), subst(b, env))
        case Or(a, b):
            return Or(subst(a, env), subst(b, env))
        case GImp(a, b):
            return GImp(subst(a, env), subst(b, env))
        case LukImp(a, b):
            return LukImp(subst(a, env), subst(b, env))
        case FTImp(a, b):
            return FTImp(subst(a, env), subst(b, env))
        case Iff(a, b):
            return Iff(subst(a, env), subst(b, env))
    raise InputError(f"not a formula: {f!r}")


def rename_apart(f: Formula, suffix: str) -> Formula:
    """Freshen every variable with a suffix (for disjoint-variable combos)."""
    return subst(f, {v: Var(v + suffix) for v in variables(f)})


def expand_derived(f: Formula) -> Formula:
    """Rewrite derived connectives into the core {&, ->, ~, 0, Var}.

    Or, Godel negation, delta, biconditional and the top constant unfold
    to their defining terms; the Lukasiewicz and falsity-tolerant
    implications and table connectives are primitive in their own
    signatures and are kept.  Shared subtrees expand once, so the result
    is a compact DAG even though its tree size is exponential.
    """
    return _expand(f, {})


def _expand(f: Formula, memo: dict[int, Formula]) -> Formula:
    key = id(f)
    if key in memo:
        return memo[key]
    match f:
        case Var(_) | Bot():
            out = f
        case Top():
            out = GImp(Bot(), Bot())
        case And(a, b):
            out = And(_expand(a, memo), _expand(b, memo))
        case Or(a, b):
            ea, eb = _expand(a, memo), _expand(b, memo)
            out = And(GImp(GImp(ea, eb), eb), GImp(GImp(eb, ea), ea))
        case GImp(a, b):
            out = GImp(_expand(a, memo), _expand(b, memo))
        case GNeg(a):
            out = GImp(_expand(a, memo), Bot())
        case Inv(a):
            out = Inv(_expand(a, memo))
        case Delta(a):
            out = GImp(Inv(_expand(a, memo)), Bot())
        case Iff(a, b):
            ea, eb = _expand(a, memo), _expand(b, memo)
            out = And(GImp(ea, eb), GImp(eb, ea))
        case LukImp(a, b):
            out = LukImp(_expand(a, memo), _expand(b, memo))
        case FTImp(a, b):
            out = FTImp(_expand(a, memo), _expand(b, memo))
        case TableApp(c, a):
            out = TableApp(c, _expand(a, memo))
        case _:
            raise InputError(f"not a formula: {f!r}")
    memo[key] = out
    return out


# -- printing ---------------------------------------------------------------

_PREC_IFF = 1
_PREC_IMP = 2
_PREC_OR = 3
_PREC_AND = 4
_PREC_UNARY = 5
_PREC_ATOM = 6

_IMP_TOKEN = {GImp: "->", LukImp: "=>L", FTImp: "=>F"}


def _print(f: Formula, ctx: int) -> str:
    match f:
        case Var(name):
            return name
        case Bot():
            return "0"
        case Top():
            return "1"
        case Inv(a):
            return "~" + _print(a, _PREC_UNARY)
        case GNeg(a):
            return "!" + _print(a, _PREC_UNARY)
        case Delta(a):
            inner = _print(a, _PREC_UNARY)
            if isinstance(a, (Var, Bot, Top)):
                return "D " + inner
            if inner.startswith("("):
                return "D" + inner
            return "D(" + _print(a, 0) + ")"
        case TableApp(c, a):
            return f"{c.name}({_print(a, 0)})"
        case And(a, b):
            s = f"{_print(a, _PREC_AND)} & {_print(b, _PREC_AND + 1)}"
            return f"({s})" if ctx > _PREC_AND else s
        case Or(a, b):
            s = f"{_print(a, _PREC_OR)} | {_print(b, _PREC_OR + 1)}"
            return f"({s})" if ctx > _PREC_OR else s
        case GImp(a, b) | LukImp(a, b) | FTImp(a, b):
            tok = _IMP_TOKEN[type(f)]
            s = f"{_print(a, _PREC_IMP + 1)} {tok} {_print(b, _PREC_IMP)}"
            return f"({s})" if ctx > _PREC_IMP else s
        case Iff(a, b):
            s = f"{_print(a, _PREC_IFF)} <-> {_print(b, _PREC_IFF + 1)}"
            return f"({s})" if ctx > _PREC_IFF else s
    raise InputError(f"not a formula: {f!r}")


def print_formula(f: Formula) -> str:
    """Canonical parenthesized rendering; inverse of parse()."""
    return _print(f, 0)


# -- parsing ----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<imp><->|->|=>L|=>F)|(?P<punct>[~!&|(),])|(?P<const>[01])"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos:].lstrip()[0]!r}",
                             len(text) - len(text[pos:].lstrip()))
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, connectives: Mapping[str, TableConn]):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.connectives = connectives

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        tok = self.take()
        if tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1]!r}", tok[2])

    def parse(self) -> Formula:
        f = self.iff()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"trailing input {tok[1]!r}", tok[2])
        return f

    def iff(self) -> Formula:
        f = self.imp()
        while (tok := self.peek()) and tok[1] == "<->":
            self.take()
            f = Iff(f, self.imp())
        return f

    def imp(self) -> Formula:
        f = self.disj()
        tok = self.peek()
        if tok and tok[1] in ("->", "=>L", "=>F"):
            self.take()
            rhs = self.imp()
            node = {"->": GImp, "=>L": LukImp, "=>F": FTImp}[tok[1]]
            return node(f, rhs)
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while (tok := self.peek()) and tok[1] == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while (tok := self.peek()) and tok[1] == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        _, value, pos = tok
        if value == "~":
            self.take()
            return Inv(self.unary())
        if value == "!":
            self.take()
            return GNeg(self.unary())
        if value == "D":
            self.take()
            return Delta(self.unary())
        if value in self.connectives:
            self.take()
            self.expect("(")
            arg = self.iff()
            self.expect(")")
            return TableApp(self.connectives[value], arg)
        return self.atom()

    def atom(self) -> Formula:
        kind, value, pos = self.take()
        if value == "(":
            f = self.iff()
            self.expect(")")
            return f
        if kind == "const":
            return Bot() if value == "0" else Top()
        if kind == "name":
            return Var(value)
        raise ParseError(f"unexpected token {value!r}", pos)


def parse(text: str, connectives: Mapping[str, TableConn] | None = None) -> Formula:
    """Parse a formula.  ``connectives`` registers named table connectives
    so that their printed form round-trips."""
    return _Parser(text, connectives or {}).parse()


def parse_formula_set(text: str,
                      connectives: Mapping[str, TableConn] | None = None) -> list[Formula]:
    """Parse a comma-separated premise list; the empty string is the empty set."""
    if not text.strip():
        return []
    parts = _split_top_level(text)
    return [parse(p, connectives) for p in parts]


def _split_top_level(text: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts
