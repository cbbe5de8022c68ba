"""Expression grammar: parsing and canonical printing of algebra elements.

    element  := ['-'] term (('+' | '-') term)*
    term     := unit ('*' unit)*
    unit     := rational | 'e(' rational ')' | 'E(' int ')' | factor
    factor   := 'u[' int ']' ('^' int)? | '(' element ')' | 'adj(' element ')'
    rational := int ('/' posint)?

e(q) denotes e^(2*pi*i*q); E(m) denotes the symbolic e^(2*pi*i*m*beta),
which the printer only emits for irrational beta (for rational beta it folds
into an angle on input).  Parsing canonicalizes immediately: the result is a
normal-ordered element, and printing emits one grammar term per (word,
reduced phase) pair with words sorted, so parse(print(x)) == x.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Element, TorusAlgebra
from .deformation import InputError
from .scalars import PhaseCoefficient


class ParseError(InputError):
    """Syntax error with source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class _Token:
    kind: str
    value: str
    line: int
    column: int


_PUNCT = set("[]()^*+-/")


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            tokens.append(_Token("nat", text[start:i], line, col))
            col += i - start
            continue
        if ch.isalpha():
            start = i
            while i < n and text[i].isalpha():
                i += 1
            tokens.append(_Token("name", text[start:i], line, col))
            col += i - start
            continue
        if ch in _PUNCT:
            tokens.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], algebra: TorusAlgebra):
        self.tokens = tokens
        self.pos = 0
        self.algebra = algebra

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            shown = tok.value or "end of input"
            raise ParseError(f"expected {kind!r}, found {shown!r}", tok.line, tok.column)
        return self.advance()

    def fail(self, message: str):
        tok = self.peek()
        raise ParseError(message, tok.line, tok.column)

    def parse(self) -> Element:
        x = self.element()
        tok = self.peek()
        if tok.kind != "end":
            self.fail(f"unexpected {tok.value!r} after the expression")
        return x

    def element(self) -> Element:
        negate = False
        if self.peek().kind == "-":
            self.advance()
            negate = True
        x = self.term()
        if negate:
            x = -x
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            t = self.term()
            x = x + t if op == "+" else x - t
        return x

    def term(self) -> Element:
        x = self.unit()
        while True:
            tok = self.peek()
            if tok.kind == "*":
                self.advance()
                x = x * self.unit()
            elif tok.kind == "^":
                self.fail("exponent is only allowed on a generator u[...]")
            else:
                return x

    def unit(self) -> Element:
        tok = self.peek()
        if tok.kind == "nat":
            return self.algebra.scalar(self.rational())
        if tok.kind == "name":
            if tok.value == "u":
                return self.generator()
            if tok.value == "e":
                self.advance()
                self.expect("(")
                q = self.rational()
                self.expect(")")
                return self.algebra.scalar(PhaseCoefficient.unit_angle(q))
            if tok.value == "E":
                self.advance()
                self.expect("(")
                m = self.integer()
                self.expect(")")
                return self.algebra.scalar(self.algebra.twist_phase(m))
            if tok.value == "adj":
                self.advance()
                self.expect("(")
                inner = self.element()
                self.expect(")")
                return inner.adjoint()
            self.fail(f"unknown name {tok.value!r}")
        if tok.kind == "(":
            self.advance()
            inner = self.element()
            self.expect(")")
            return inner
        self.fail(f"expected a term, found {tok.value or 'end of input'!r}")

    def generator(self) -> Element:
        self.expect("name")
        self.expect("[")
        index = self.integer()
        self.expect("]")
        exponent = 1
        if self.peek().kind == "^":
            self.advance()
            exponent = self.integer()
        return self.algebra.u(index, exponent)

    def integer(self) -> int:
        sign = 1
        if self.peek().kind == "-":
            self.advance()
            sign = -1
        tok = self.expect("nat")
        return sign * int(tok.value)

    def rational(self) -> Fraction:
        num = self.integer()
        if self.peek().kind == "/":
            self.advance()
            tok = self.expect("nat")
            den = int(tok.value)
            if den == 0:
                raise ParseError("zero denominator", tok.line, tok.column)
            return Fraction(num, den)
        return Fraction(num)


def parse(text: str, algebra: TorusAlgebra) -> Element:
    """Parse an expression into a canonical (normal-ordered) element."""
    return _Parser(_tokenize(text), algebra).parse()


def _format_word(word) -> str:
    return "*".join(
        f"u[{i}]" if e == 1 else f"u[{i}]^{e}" for i, e in word
    )


def _format_term(word, angle: Fraction, power: int, weight: Fraction) -> str:
    bits: list[str] = []
    if angle:
        bits.append(f"e({angle})")
    if power:
        bits.append(f"E({power})")
    if word:
        bits.append(_format_word(word))
    if weight != 1 or not bits:
        bits.insert(0, str(weight))
    return "*".join(bits)


def format_element(x: Element) -> str:
    """Canonical text form: words sorted, phases reduced, grammar-parseable."""
    parts: list[str] = []
    for word, coeff in x.terms():
        for angle, power, weight in coeff.canonical_terms():
            parts.append(_format_term(word, angle, power, weight))
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


def format_complex(z: complex, digits: int = 12) -> str:
    """Fixed-significant-digit rendering, stable for diffing."""
    re = f"{z.real:.{digits}g}"
    if z.imag == 0:
        return re
    im = f"{abs(z.imag):.{digits}g}"
    sign = "+" if z.imag > 0 else "-"
    return f"{re}{sign}{im}i"
