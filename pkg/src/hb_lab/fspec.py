"""A small expression language for test functions on the disk.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*")? unary)*          # juxtaposition multiplies: "2z", "z(1-z)"
    unary  := "-" unary | power
    power  := atom ("^" signed_number)?
    atom   := number | "z" | "(" expr ")"

Integer exponents are allowed on any base. Non-integer exponents need a base
``c0 + c1 z`` with ``c0 != 0`` and ``|c1| <= |c0|``, covering ``(1 - z)^gamma``
and its rescalings, taken on the principal branch.

``parse_fspec(text)`` returns a function ``M -> coefficients`` that evaluates
the first ``M`` Taylor coefficients exactly (up to rounding).
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .disk import CoeffSeries, binomial_series, cauchy_product

_TOKEN = re.compile(r"\s*(?:(\d+\.?\d*(?:[eE][-+]?\d+)?|\.\d+(?:[eE][-+]?\d+)?)|(z)|(\*\*|[-+*^()]))")


class FSpecError(ValueError):
    """Malformed or unsupported function expression."""


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Add:
    left: object
    right: object
    sign: int


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: float


def _tokenize(text: str) -> list:
    tokens, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FSpecError(f"unexpected character {text[pos]!r} at position {pos}")
        num, var, op = m.groups()
        if num is not None:
            tokens.append(("num", float(num)))
        elif var is not None:
            tokens.append(("z", None))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise FSpecError(f"expected {op!r}")

    def expr(self):
        node = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            node = Add(node, self.term(), 1 if op == "+" else -1)
        return node

    def term(self):
        node = self.unary()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                node = Mul(node, self.unary())
            elif kind in ("num", "z") or (kind == "op" and val == "("):
                node = Mul(node, self.unary())
            else:
                return node

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return Mul(Const(-1.0), self.unary())
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1.0
            while self.peek() in (("op", "-"), ("op", "+")):
                sign *= -1.0 if self.take()[1] == "-" else 1.0
            kind, val = self.take()
            if kind != "num":
                raise FSpecError("exponent must be a number")
            return Pow(base, sign * val)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return Const(val)
        if kind == "z":
            return Var()
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise FSpecError("unexpected end of expression" if kind is None else f"unexpected token {val!r}")


def polynomial_coeffs(node) -> np.ndarray | None:
    """Exact coefficients when ``node`` is a polynomial, else ``None``."""
    if isinstance(node, Const):
        return np.array([node.value], dtype=complex)
    if isinstance(node, Var):
        return np.array([0, 1], dtype=complex)
    if isinstance(node, Add):
        a, b = polynomial_coeffs(node.left), polynomial_coeffs(node.right)
        if a is None or b is None:
            return None
        out = np.zeros(max(a.size, b.size), dtype=complex)
        out[: a.size] += a
        out[: b.size] += node.sign * b
        return out
    if isinstance(node, Mul):
        a, b = polynomial_coeffs(node.left), polynomial_coeffs(node.right)
        return None if a is None or b is None else np.convolve(a, b)
    if isinstance(node, Pow):
        base = polynomial_coeffs(node.base)
        e = node.exponent
        if base is None or e < 0 or e != int(e):
            return None
        out = np.array([1], dtype=complex)
        for _ in range(int(e)):
            out = np.convolve(out, base)
        return out
    raise TypeError(node)


def _trim(c: np.ndarray) -> np.ndarray:
    nz = np.nonzero(c)[0]
    return c[: nz[-1] + 1] if nz.size else c[:1]


def _series(node, M: int) -> np.ndarray:
    poly = polynomial_coeffs(node)
    if poly is not None:
        return CoeffSeries(poly).resized(M).coeffs
    if isinstance(node, Add):
        return _series(node.left, M) + node.sign * _series(node.right, M)
    if isinstance(node, Mul):
        return cauchy_product(CoeffSeries(_series(node.left, M)), CoeffSeries(_series(node.right, M)), M).coeffs
    if isinstance(node, Pow):
        e = node.exponent
        base_poly = polynomial_coeffs(node.base)
        if base_poly is not None:
            base_poly = _trim(base_poly)
        if e == int(e) and e >= 0:
            out = np.zeros(M, dtype=complex)
            out[0] = 1
            base = CoeffSeries(_series(node.base, M))
            for _ in range(int(e)):
                out = cauchy_product(CoeffSeries(out), base, M).coeffs
            return out
        if base_poly is None or base_poly.size > 2:
            raise FSpecError("non-integer powers need a base of the form c0 + c1*z")
        c0 = base_poly[0]
        c1 = base_poly[1] if base_poly.size > 1 else 0
        if c0 == 0:
            raise FSpecError("non-integer power of a base vanishing at 0")
        if abs(c1) > abs(c0):
            raise FSpecError("base of a non-integer power must not vanish in the open disk")
        ratio = -c1 / c0
        scale = np.power(complex(c0), e) if c0.real <= 0 or c0.imag else complex(c0.real ** e)
        return scale * binomial_series(e, M).coeffs * ratio ** np.arange(M)
    raise TypeError(node)


class FSpec:
    """Parsed expression; calling it with ``M`` returns ``M`` Taylor coefficients."""

    def __init__(self, text: str):
        self.text = text
        tokens = _tokenize(text)
        if not tokens:
            raise FSpecError("empty expression")
        parser = _Parser(tokens)
        self.tree = parser.expr()
        if parser.i != len(tokens):
            raise FSpecError(f"trailing input after position {parser.i}")
        _series(self.tree, 4)

    def __call__(self, M: int) -> np.ndarray:
        return _series(self.tree, M)

    @property
    def is_polynomial(self) -> bool:
        return polynomial_coeffs(self.tree) is not None

    def __repr__(self):
        return f"FSpec({self.text!r})"


def parse_fspec(text: str) -> FSpec:
    return FSpec(text)


def degree(spec: FSpec) -> int | None:
    poly = polynomial_coeffs(spec.tree)
    return None if poly is None else int(_trim(poly).size - 1)


def power_of_one_minus_z(gamma: float) -> FSpec:
    return FSpec(f"(1-z)^{gamma!r}")
