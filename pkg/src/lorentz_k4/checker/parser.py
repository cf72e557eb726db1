"""Line-oriented parser for ``.refl`` reflection-charge files.

Grammar::

    file  := line*
    line  := [decl | eq] ['#' comment]
    decl  := 'charge' NAME '=' ('1' | 'P' | 'T' | 'PT' | '?')
    eq    := 'eq' NAME ':' side '=' side
    side  := ['+' | '-'] term (('+' | '-') term)*
    term  := factor ('*' factor)*
    factor:= NAME | '0'
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping

from ..k4 import K4Charge

__all__ = ["ParseError", "UNKNOWN", "Term", "Equation", "Model", "parse", "PRELUDE", "builtin_prelude"]


class _Unknown:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNKNOWN"

    def __str__(self) -> str:
        return "?"


UNKNOWN = _Unknown()

PRELUDE: dict[str, K4Charge] = {
    "ddt": K4Charge.T,
    "grad": K4Charge.P,
    "E": K4Charge.P,
    "B": K4Charge.T,
    "rho": K4Charge.ONE,
    "J": K4Charge.PT,
}


def builtin_prelude() -> dict[str, K4Charge]:
    return dict(PRELUDE)


class ParseError(Exception):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Term:
    factors: tuple[str, ...]
    sign: int = 1

    @property
    def is_zero(self) -> bool:
        return "0" in self.factors

    def __str__(self) -> str:
        return "*".join(self.factors)


@dataclass(frozen=True)
class Equation:
    name: str
    lhs: tuple[Term, ...]
    rhs: tuple[Term, ...]
    line: int = 0

    @property
    def terms(self) -> tuple[Term, ...]:
        return self.lhs + self.rhs


@dataclass
class Model:
    declarations: dict[str, object] = field(default_factory=dict)
    equations: list[Equation] = field(default_factory=list)

    @property
    def unknowns(self) -> list[str]:
        return [n for n, c in self.declarations.items() if c is UNKNOWN]


_TOKEN = re.compile(
    r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<num>\d+)|(?P<op>[=:+\-*?]))"
)


def _tokenize(text: str, lineno: int) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[col - 1]!r}", lineno, col)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return tokens


class _LineParser:
    def __init__(self, tokens, lineno: int, line_len: int):
        self.tokens = tokens
        self.i = 0
        self.lineno = lineno
        self.end_col = line_len + 1

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def error(self, message: str):
        tok = self.peek()
        col = tok[2] if tok else self.end_col
        raise ParseError(message, self.lineno, col)

    def expect(self, kind: str, value: str | None = None):
        tok = self.peek()
        if tok is None or tok[0] != kind or (value is not None and tok[1] != value):
            want = repr(value) if value else kind
            got = repr(tok[1]) if tok else "end of line"
            self.error(f"expected {want}, got {got}")
        self.i += 1
        return tok

    def at_end(self) -> bool:
        return self.i >= len(self.tokens)

    def declaration(self) -> tuple[str, object, int]:
        name = self.expect("name")
        self.expect("op", "=")
        tok = self.peek()
        if tok is None:
            self.error("expected a charge (1, P, T, PT or ?)")
        if tok == ("op", "?", tok[2]):
            charge = UNKNOWN
        elif tok[1] in ("1", "P", "T", "PT"):
            charge = K4Charge.parse(tok[1])
        else:
            self.error(f"expected a charge (1, P, T, PT or ?), got {tok[1]!r}")
        self.i += 1
        if not self.at_end():
            self.error("trailing input after declaration")
        return name[1], charge, name[2]

    def factor(self) -> tuple[str, int]:
        tok = self.peek()
        if tok is not None and tok[0] == "name":
            self.i += 1
            return tok[1], tok[2]
        if tok is not None and tok[0] == "num":
            if tok[1] != "0":
                self.error(f"only the literal 0 is allowed, got {tok[1]!r}")
            self.i += 1
            return "0", tok[2]
        self.error("expected a symbol or 0")

    def term(self, sign: int, refs: list) -> Term:
        factors = []
        name, col = self.factor()
        factors.append(name)
        refs.append((name, col))
        while (tok := self.peek()) is not None and tok[:2] == ("op", "*"):
            self.i += 1
            name, col = self.factor()
            factors.append(name)
            refs.append((name, col))
        return Term(tuple(factors), sign)

    def side(self, refs: list) -> tuple[Term, ...]:
        sign = 1
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] in "+-":
            sign = -1 if tok[1] == "-" else 1
            self.i += 1
        terms = [self.term(sign, refs)]
        while (tok := self.peek()) is not None and tok[0] == "op" and tok[1] in "+-":
            self.i += 1
            terms.append(self.term(-1 if tok[1] == "-" else 1, refs))
        return tuple(terms)

    def equation(self, lineno: int) -> tuple[Equation, list]:
        name = self.expect("name")[1]
        self.expect("op", ":")
        refs: list = []
        lhs = self.side(refs)
        self.expect("op", "=")
        rhs = self.side(refs)
        if not self.at_end():
            self.error("trailing input after equation")
        return Equation(name, lhs, rhs, lineno), refs


def parse(source: str, prelude: Mapping[str, K4Charge] | None = None) -> Model:
    """Parse ``source`` into a :class:`Model`.

    Symbols from ``prelude`` are visible unless the file redeclares them;
    a file's own declaration always wins.
    """
    model = Model()
    if prelude:
        model.declarations.update(prelude)
    declared_here: set[str] = set()
    eq_names: set[str] = set()
    pending_refs = []
    for lineno, raw in enumerate(source.splitlines(), start=1):
        text = raw.split("#", 1)[0]
        tokens = _tokenize(text, lineno)
        if not tokens:
            continue
        p = _LineParser(tokens, lineno, len(text.rstrip()))
        head = tokens[0]
        if head[:2] == ("name", "charge"):
            p.i = 1
            name, charge, col = p.declaration()
            if name in declared_here:
                raise ParseError(f"duplicate declaration of {name!r}", lineno, col)
            declared_here.add(name)
            model.declarations[name] = charge
        elif head[:2] == ("name", "eq"):
            p.i = 1
            eq, refs = p.equation(lineno)
            if eq.name in eq_names:
                raise ParseError(f"duplicate equation name {eq.name!r}", lineno, tokens[1][2])
            eq_names.add(eq.name)
            model.equations.append(eq)
            pending_refs.extend((lineno, n, c) for n, c in refs)
        else:
            raise ParseError(f"expected 'charge' or 'eq', got {head[1]!r}", lineno, head[2])
    for lineno, name, col in pending_refs:
        if name != "0" and name not in model.declarations:
            raise ParseError(f"undeclared symbol {name!r}", lineno, col)
    return model
