"""Recursive-descent parser for polynomial expressions and system files.

Grammar (whitespace insignificant, variables are x1..xn):

    expression := sign* term (sign+ term)*
    term       := coefficient ['*'] factor ('*' factor)*
                | factor ('*' factor)*
                | coefficient
    factor     := 'x' index ['^' exponent]
    sign       := '+' | '-'

Coefficients are decimal literals with optional exponent notation
(signs are handled as prefix operators); exponents are non-negative
integers.
"""

from __future__ import annotations

import re
from typing import Iterable, TextIO

from .exceptions import ParseError
from .polynomials import Monomial, Polynomial, PolySystem, format_polynomial

_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_VARIABLE = re.compile(r"x(\d+)")
_INTEGER = re.compile(r"\d+")


class _Tokens:
    """Token stream over the input text; kinds: num, var, op, end."""

    def __init__(self, text: str):
        self.text = text
        self.items: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            ch = text[pos]
            if ch.isspace():
                pos += 1
                continue
            if ch in "+-*^":
                self.items.append(("op", ch, pos))
                pos += 1
                continue
            m = _NUMBER.match(text, pos)
            if m:
                self.items.append(("num", m.group(), pos))
                pos = m.end()
                continue
            m = _VARIABLE.match(text, pos)
            if m:
                self.items.append(("var", m.group(1), pos))
                pos = m.end()
                continue
            raise ParseError(f"unexpected character {ch!r}", pos)
        self.items.append(("end", "", len(text)))
        self.index = 0

    def peek(self) -> tuple[str, str, int]:
        return self.items[self.index]

    def next(self) -> tuple[str, str, int]:
        tok = self.items[self.index]
        self.index += 1
        return tok


def parse_polynomial(text: str, nvars: int) -> Polynomial:
    """Parse an expression into a Polynomial, collecting like terms and
    dropping exact-zero coefficients."""
    if nvars < 1:
        raise ValueError("nvars must be >= 1")
    tokens = _Tokens(text)
    terms: dict[Monomial, float] = {}

    def read_signs(require: bool) -> float:
        sign = 1.0
        seen = False
        while tokens.peek()[0] == "op" and tokens.peek()[1] in "+-":
            if tokens.next()[1] == "-":
                sign = -sign
            seen = True
        if require and not seen:
            kind, value, pos = tokens.peek()
            raise ParseError(f"expected '+' or '-', found {value!r}", pos)
        return sign

    def read_factor(exps: list[int]) -> None:
        kind, value, pos = tokens.next()
        if kind != "var":
            raise ParseError(f"expected a variable, found {value or 'end of input'!r}", pos)
        index = int(value)
        if not 1 <= index <= nvars:
            raise ParseError(f"variable index {index} out of range 1..{nvars}", pos)
        exponent = 1
        if tokens.peek()[:2] == ("op", "^"):
            tokens.next()
            kind, value, pos = tokens.next()
            if kind != "num" or not _INTEGER.fullmatch(value):
                raise ParseError("exponent must be a non-negative integer", pos)
            exponent = int(value)
        exps[index - 1] += exponent

    def read_term(sign: float) -> None:
        coeff = sign
        exps = [0] * nvars
        kind, value, pos = tokens.peek()
        if kind == "num":
            tokens.next()
            coeff *= float(value)
            kind, value, pos = tokens.peek()
            if kind == "op" and value == "*":
                tokens.next()
                read_factor(exps)
            elif kind == "var":
                read_factor(exps)
            else:
                _store(coeff, exps)
                return
        else:
            read_factor(exps)
        while tokens.peek()[:2] == ("op", "*"):
            tokens.next()
            read_factor(exps)
        _store(coeff, exps)

    def _store(coeff: float, exps: list[int]) -> None:
        mono = tuple(exps)
        terms[mono] = terms.get(mono, 0.0) + coeff

    sign = read_signs(require=False)
    read_term(sign)
    while tokens.peek()[0] != "end":
        sign = read_signs(require=True)
        read_term(sign)
    return Polynomial(nvars, terms)


_NVARS_LINE = re.compile(r"nvars\s*=\s*(\d+)\s*$")


def read_system(stream: Iterable[str]) -> PolySystem:
    """Read the system file format: an 'nvars = n' header line followed by
    one polynomial expression per non-empty line; '#' starts a comment."""
    nvars = None
    polys: list[Polynomial] = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if nvars is None:
            m = _NVARS_LINE.fullmatch(line)
            if not m:
                raise ParseError(f"line {lineno}: expected 'nvars = n' header, got {line!r}", 0)
            nvars = int(m.group(1))
            if nvars < 1:
                raise ParseError(f"line {lineno}: nvars must be >= 1", 0)
            continue
        try:
            polys.append(parse_polynomial(line, nvars))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc.args[0]}", exc.position) from None
    if nvars is None:
        raise ParseError("missing 'nvars = n' header", 0)
    try:
        return PolySystem(tuple(polys))
    except ValueError as exc:
        raise ParseError(f"invalid system: {exc}", 0) from None


def read_system_file(path) -> PolySystem:
    with open(path, "r", encoding="ascii") as handle:
        return read_system(handle)


def write_system(system: PolySystem, stream: TextIO) -> None:
    """Write the system file format; coefficients round-trip exactly."""
    stream.write(f"nvars = {system.nvars}\n")
    for poly in system.polys:
        stream.write(format_polynomial(poly) + "\n")


def write_system_file(system: PolySystem, path) -> None:
    with open(path, "w", encoding="ascii") as handle:
        write_system(system, handle)
