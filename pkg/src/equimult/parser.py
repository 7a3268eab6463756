"""Text syntax for polynomials and families, and the canonical printer.

Grammar (whitespace is insignificant, implicit multiplication is rejected)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | factor
    factor := base ('^' nat)?
    base   := name | integer | '(' expr ')'

Division is only allowed by a nonzero constant, which covers rational
literals such as ``3/4``. The names ``t`` and ``a`` are reserved for the
deformation parameter and a symbolic constant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .fields import QQ, Field, RationalFunction
from .polynomial import MonomialOrder, Polynomial, Ring

RESERVED = ("t", "a")
SYMBOLIC_CONSTANT = "a"


class ParseError(ValueError):
    """Input text could not be read; ``position`` is a 0-based column."""

    def __init__(self, message: str, position: int | None = None, line: int | None = None) -> None:
        self.message = message
        self.position = position
        self.line = line
        super().__init__(str(self))

    def __str__(self) -> str:
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.position is not None:
            where.append(f"column {self.position + 1}")
        return f"{self.message} ({', '.join(where)})" if where else self.message


class ExprSyntaxError(ParseError):
    pass


class UnknownVariable(ParseError):
    pass


class NegativeExponent(ParseError):
    pass


class TDegreeZeroMissing(ParseError):
    pass


class EmptyFamily(ParseError):
    pass


# -- AST ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Name:
    name: str
    pos: int


@dataclass(frozen=True)
class Number:
    value: int
    pos: int


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"
    pos: int


@dataclass(frozen=True)
class Power:
    base: "Expr"
    exponent: int
    pos: int


Expr = Union[Name, Number, Neg, BinOp, Power]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def tokenize(src: str) -> list[tuple[str, object, int]]:
    out = []
    pos = 0
    n = len(src)
    while pos < n:
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            out.append(("num", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExprSyntaxError(f"unexpected character {ch!r}", m.start(3))
            out.append(("op", ch, m.start(3)))
        pos = m.end()
    out.append(("end", None, n))
    return out


class _Parser:
    def __init__(self, src: str) -> None:
        self.tokens = tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def accept(self, op: str) -> bool:
        kind, val, _ = self.peek()
        if kind == "op" and val == op:
            self.i += 1
            return True
        return False

    def parse(self) -> Expr:
        kind, _, pos = self.peek()
        if kind == "end":
            raise ExprSyntaxError("empty expression", pos)
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            if kind in ("name", "num") or val == "(":
                raise ExprSyntaxError("implicit multiplication is not allowed; use '*'", pos)
            raise ExprSyntaxError(f"unexpected {val!r}", pos)
        return node

    def expr(self) -> Expr:
        node = self.term()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.i += 1
                node = BinOp(val, node, self.term(), pos)
            else:
                return node

    def term(self) -> Expr:
        node = self.unary()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.i += 1
                node = BinOp(val, node, self.unary(), pos)
            else:
                return node

    def unary(self) -> Expr:
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.i += 1
            return Neg(self.unary(), pos)
        if kind == "op" and val == "+":
            self.i += 1
            return self.unary()
        return self.factor()

    def factor(self) -> Expr:
        base = self.base()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.i += 1
            kind, val, epos = self.next()
            if kind == "op" and val == "-":
                raise NegativeExponent("exponents must be non-negative integers", epos)
            if kind != "num":
                raise ExprSyntaxError("expected a non-negative integer exponent", epos)
            nkind, nval, npos = self.peek()
            if nkind == "op" and nval == "^":
                raise ExprSyntaxError("chained exponents are ambiguous; add parentheses", npos)
            return Power(base, val, pos)
        return base

    def base(self) -> Expr:
        kind, val, pos = self.next()
        if kind == "num":
            return Number(val, pos)
        if kind == "name":
            return Name(val, pos)
        if kind == "op" and val == "(":
            node = self.expr()
            if not self.accept(")"):
                _, _, p = self.peek()
                raise ExprSyntaxError("expected ')'", p)
            return node
        if kind == "end":
            raise ExprSyntaxError("unexpected end of input", pos)
        raise ExprSyntaxError(f"unexpected {val!r}", pos)


def parse_expression(src: str) -> Expr:
    return _Parser(src).parse()


def names_in(node: Expr) -> set[str]:
    if isinstance(node, Name):
        return {node.name}
    if isinstance(node, Number):
        return set()
    if isinstance(node, Neg):
        return names_in(node.operand)
    if isinstance(node, Power):
        return names_in(node.base)
    return names_in(node.left) | names_in(node.right)


def evaluate(node: Expr, ring: Ring) -> Polynomial:
    if isinstance(node, Number):
        return ring.const(node.value)
    if isinstance(node, Name):
        if node.name in ring.vars:
            return ring.gen(node.name)
        if node.name == ring.field.param:
            return ring.const(ring.field.gen())
        raise UnknownVariable(f"unknown variable {node.name!r}", node.pos)
    if isinstance(node, Neg):
        return -evaluate(node.operand, ring)
    if isinstance(node, Power):
        return evaluate(node.base, ring) ** node.exponent
    left = evaluate(node.left, ring)
    right = evaluate(node.right, ring)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if not right.is_constant() or not right:
        raise ExprSyntaxError("division is only allowed by a nonzero constant", node.pos)
    return left.scale(1 / right.constant_coefficient())


def parse_polynomial(src: str, ring: Ring) -> Polynomial:
    """Read ``src`` as an element of ``ring``."""
    if not src.strip():
        raise ExprSyntaxError("empty expression", 0)
    return evaluate(parse_expression(src), ring)


# -- printing -----------------------------------------------------------------------


def _monomial_text(ring: Ring, e: tuple) -> str:
    parts = []
    for v, k in zip(ring.vars, e):
        if k == 1:
            parts.append(v)
        elif k:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def _split_sign(c) -> tuple[bool, str, bool]:
    """(negative, magnitude text, magnitude is one) for a coefficient."""
    if isinstance(c, RationalFunction):
        if c.is_constant():
            c = c.constant_value()
        elif c.den.degree == 0 and sum(1 for x in c.num.coeffs if x) == 1:
            lead = c.num.coeffs[-1]
            mag = -c if lead < 0 else c
            return lead < 0, str(mag), False
        else:
            return False, f"({c})", False
    c = Fraction(c)
    return c < 0, str(abs(c)), abs(c) == 1


def print_polynomial(p: Polynomial) -> str:
    """Canonical text: terms in descending degrevlex order."""
    if not p.terms:
        return "0"
    out = []
    for e, c in p.sorted_terms(MonomialOrder.DEGREVLEX):
        neg, mag, unit = _split_sign(c)
        mono = _monomial_text(p.ring, e)
        if not mono:
            body = mag
        elif unit:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def print_family(F) -> str:
    lines = [f"vars: {', '.join(F.ring.vars)}", f"f: {print_polynomial(F.f.poly)}"]
    for k, g in F.deformations.items():
        lines.append(f"g[{k}]: {print_polynomial(g.poly)}")
    return "\n".join(lines)


# -- family documents -----------------------------------------------------------------

_LINE = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9.]*)(?:\[(\s*\d+\s*)\])?\s*:\s*(.*?)\s*$")
_META = re.compile(r"^\s*(name|description)\s*:")
_KEYS = {"vars", "name", "description", "F", "f", "g", "lambda"}


@dataclass
class FamilyDocument:
    """Content of a family file: the family plus optional metadata."""

    ring: Ring
    family: object
    greuel: object | None = None
    name: str | None = None
    description: str | None = None
    expect: dict[str, str] = field(default_factory=dict)


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _split_entries(src: str) -> list[tuple[int, str]]:
    entries = []
    for lineno, raw in enumerate(src.splitlines(), 1):
        text = _strip_comment(raw)
        if _META.match(text):
            # free text: ';' does not separate entries here
            entries.append((lineno, text))
            continue
        for chunk in text.split(";"):
            if chunk.strip():
                entries.append((lineno, chunk))
    return entries


def parse_document(src: str) -> FamilyDocument:
    from .family import Family, FamilyError, GreuelFamily, regroup

    entries = _split_entries(src)
    meta: dict[str, str] = {}
    expect: dict[str, str] = {}
    exprs: dict[tuple[str, int | None], tuple[int, int, Expr]] = {}
    vars_decl: list[str] | None = None
    for lineno, text in entries:
        m = _LINE.match(text)
        if m is None:
            raise ExprSyntaxError("expected 'key: value'", 0, lineno)
        key, idx, value = m.group(1), m.group(2), m.group(3)
        offset = m.start(3)
        if key.startswith("expect."):
            expect[key[len("expect.") :]] = value
            continue
        if key not in _KEYS:
            raise ExprSyntaxError(f"unknown entry {key!r}", m.start(1), lineno)
        if key in ("name", "description"):
            meta[key] = value
            continue
        if key == "vars":
            vars_decl = [v.strip() for v in value.split(",") if v.strip()]
            for v in vars_decl:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                    raise ExprSyntaxError(f"bad variable name {v!r}", offset, lineno)
                if v in RESERVED:
                    raise ExprSyntaxError(f"{v!r} is reserved and cannot be a ring variable", offset, lineno)
            continue
        if (idx is None) != (key in ("F", "f")):
            raise ExprSyntaxError(
                f"{key} takes {'no index' if key in ('F', 'f') else 'an index like ' + key + '[1]'}",
                m.start(1),
                lineno,
            )
        k = int(idx) if idx is not None else None
        if (key, k) in exprs:
            raise ExprSyntaxError(f"duplicate entry {key}{'' if k is None else f'[{k}]'}", m.start(1), lineno)
        try:
            node = parse_expression(value)
        except ParseError as exc:
            raise type(exc)(exc.message, (exc.position or 0) + offset, lineno) from None
        exprs[(key, k)] = (lineno, offset, node)

    kinds = {key for key, _ in exprs}
    if not kinds & {"F", "f", "g", "lambda"}:
        raise EmptyFamily("no family given: expected an 'F:' line or 'f:'/'g[k]:' lines")
    if "F" in kinds and kinds - {"F"}:
        raise ExprSyntaxError("give either 'F:' or 'f:'/'g[k]:' lines, not both")

    used: set[str] = set()
    for _, _, node in exprs.values():
        used |= names_in(node)
    field_ = Field(SYMBOLIC_CONSTANT) if SYMBOLIC_CONSTANT in used else QQ
    if vars_decl is None:
        vars_decl = sorted(used - set(RESERVED))
    zring = Ring(vars_decl, field_)
    tring = zring.extend("t")

    def ev(key: str, k: int | None, ring: Ring) -> Polynomial:
        lineno, offset, node = exprs[(key, k)]
        try:
            return evaluate(node, ring)
        except ParseError as exc:
            raise type(exc)(exc.message, (exc.position or 0) + offset, lineno) from None

    greuel = None
    try:
        if "F" in kinds:
            total = ev("F", None, tring)
            if not any(e[-1] == 0 for e in total.terms):
                raise TDegreeZeroMissing("F has no t^0 part f", None, exprs[("F", None)][0])
            family = Family.from_total(total)
        else:
            if ("f", None) not in exprs:
                raise TDegreeZeroMissing("missing 'f:' line (the t^0 part)")
            f = ev("f", None, zring)
            if not f:
                raise TDegreeZeroMissing("f is zero", None, exprs[("f", None)][0])
            if "lambda" in kinds:
                lam_ring = Ring(("t",), field_)
                js = sorted({k for key, k in exprs if key in ("lambda", "g")})
                pairs = []
                for j in js:
                    if ("lambda", j) not in exprs or ("g", j) not in exprs:
                        raise ExprSyntaxError(f"lambda[{j}] and g[{j}] must both be given")
                    pairs.append((ev("lambda", j, lam_ring), ev("g", j, zring)))
                greuel = GreuelFamily.from_polynomials(f, pairs)
                family = regroup(greuel)
            else:
                gs = {k: ev("g", k, zring) for key, k in exprs if key == "g"}
                family = Family.from_polynomials(f, gs)
    except FamilyError as exc:
        raise ParseError(str(exc)) from None
    return FamilyDocument(
        ring=zring,
        family=family,
        greuel=greuel,
        name=meta.get("name"),
        description=meta.get("description"),
        expect=expect,
    )


def parse_family(src: str):
    """Read a family; Greuel-form input is regrouped by powers of ``t``."""
    return parse_document(src).family


def parse_greuel_family(src: str):
    doc = parse_document(src)
    if doc.greuel is None:
        raise ParseError("not a Greuel-form family (no 'lambda[j]:' lines)")
    return doc.greuel
