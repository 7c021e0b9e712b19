"""Stock lattices, sums and products, and a small expression language.

Indexing is deterministic.  In both sums the left operand keeps its indices
and glued elements take the left operand's index; the remaining elements of
the right operand follow in their original order.  A product element
``(i, j)`` gets index ``i * |M| + j``.

Expressions accept the compact infix form ``chain:2 + (chain:3|chain:3)``
(``+`` ordinal sum, ``|`` horizontal sum, ``*`` product; ``*`` binds
tightest, ``+`` loosest) as well as calls such as
``osum(chain(2), hsum(chain(3), chain(3)))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import ParseError, TrivialSummand
from .lattice import FiniteLattice, dual, interval, validate


def chain(k: int) -> FiniteLattice:
    if k < 1:
        raise ValueError("chain needs k >= 1")
    idx = np.arange(k)
    return validate(idx[:, None] <= idx[None, :])


def boolean(k: int) -> FiniteLattice:
    """C_2^k on subsets of a k-set encoded as bitmasks; boolean(0) is C_1."""
    if k < 0:
        raise ValueError("boolean needs k >= 0")
    idx = np.arange(1 << k)
    return validate((idx[:, None] & idx[None, :]) == idx[:, None])


def m_kappa(k: int) -> FiniteLattice:
    """Length-3 modular lattice with k atoms: 0, atoms 1..k, top k+1."""
    if k < 1:
        raise ValueError("m_kappa needs k >= 1")
    n = k + 2
    leq = np.eye(n, dtype=bool)
    leq[0, :] = True
    leq[:, n - 1] = True
    return validate(leq)


def n5() -> FiniteLattice:
    """The pentagon with elements 0, a, b, c, 1 at indices 0..4 and b < c."""
    leq = np.eye(5, dtype=bool)
    leq[0, :] = True
    leq[:, 4] = True
    leq[2, 3] = True
    return validate(leq)


def _embed(n: int, parts: list[tuple[np.ndarray, list[int]]]) -> np.ndarray:
    """Combine order matrices living on sub-index-sets of ``0..n-1``."""
    leq = np.zeros((n, n), dtype=bool)
    for sub, where in parts:
        leq[np.ix_(where, where)] |= sub
    return leq


def ordinal_sum_maps(lat: FiniteLattice, top: FiniteLattice) -> tuple[list[int], list[int]]:
    """Index maps of the two summands into ``ordinal_sum(lat, top)``."""
    left = list(range(lat.n))
    right = [0] * top.n
    nxt = lat.n
    for y in range(top.n):
        if y == top.bottom:
            right[y] = lat.top
        else:
            right[y] = nxt
            nxt += 1
    return left, right


def ordinal_sum(lat: FiniteLattice, top: FiniteLattice) -> FiniteLattice:
    """``lat`` below ``top`` with the top of ``lat`` glued to the bottom of ``top``."""
    n = lat.n + top.n - 1
    left, right = ordinal_sum_maps(lat, top)
    leq = _embed(n, [(lat.leq, left), (top.leq, right)])
    leq[np.ix_(left, right)] = True
    return validate(leq)


def horizontal_sum_maps(lat: FiniteLattice, other: FiniteLattice) -> tuple[list[int], list[int]]:
    left = list(range(lat.n))
    right = [0] * other.n
    nxt = lat.n
    for y in range(other.n):
        if y == other.bottom:
            right[y] = lat.bottom
        elif y == other.top:
            right[y] = lat.top
        else:
            right[y] = nxt
            nxt += 1
    return left, right


def horizontal_sum(lat: FiniteLattice, other: FiniteLattice) -> FiniteLattice:
    """Glue bottoms and tops; the interiors stay mutually incomparable."""
    if lat.n < 2 or other.n < 2:
        raise TrivialSummand("horizontal sums need summands with at least two elements")
    n = lat.n + other.n - 2
    left, right = horizontal_sum_maps(lat, other)
    return validate(_embed(n, [(lat.leq, left), (other.leq, right)]))


def product(lat: FiniteLattice, other: FiniteLattice) -> FiniteLattice:
    return validate(np.kron(lat.leq, other.leq).astype(bool))


def osum_all(*lats: FiniteLattice) -> FiniteLattice:
    out = lats[0]
    for lat in lats[1:]:
        out = ordinal_sum(out, lat)
    return out


def hsum_all(*lats: FiniteLattice) -> FiniteLattice:
    out = lats[0]
    for lat in lats[1:]:
        out = horizontal_sum(out, lat)
    return out


# --- expressions -----------------------------------------------------------

_LEAVES = {"chain": chain, "bool": boolean, "boolean": boolean, "mk": m_kappa, "m_kappa": m_kappa}
_BINARY = {"osum": "+", "hsum": "|", "product": "*"}
_SYMBOL = {"+": "osum", "|": "hsum", "*": "product"}


@dataclass(frozen=True)
class Expr:
    """Expression tree.

    ``op`` is one of ``chain``, ``bool``, ``mk``, ``n5`` (leaves with integer
    ``args``), ``osum``, ``hsum``, ``product``, ``dual`` (nodes with
    expression ``args``) or ``interval`` (an expression followed by two
    element indices).
    """

    op: str
    args: tuple = ()

    def eval(self) -> FiniteLattice:
        return evaluate(self)

    def __str__(self) -> str:
        if self.op == "n5":
            return "n5"
        if self.op in ("chain", "bool", "mk"):
            return f"{self.op}:{self.args[0]}"
        if self.op in _BINARY:
            return f"({self.args[0]} {_BINARY[self.op]} {self.args[1]})"
        if self.op == "dual":
            return f"dual({self.args[0]})"
        return f"interval({self.args[0]}, {self.args[1]}, {self.args[2]})"


def evaluate(expr: Expr) -> FiniteLattice:
    op, args = expr.op, expr.args
    if op == "chain":
        return chain(args[0])
    if op == "bool":
        return boolean(args[0])
    if op == "mk":
        return m_kappa(args[0])
    if op == "n5":
        return n5()
    if op == "osum":
        return ordinal_sum(evaluate(args[0]), evaluate(args[1]))
    if op == "hsum":
        return horizontal_sum(evaluate(args[0]), evaluate(args[1]))
    if op == "product":
        return product(evaluate(args[0]), evaluate(args[1]))
    if op == "dual":
        return dual(evaluate(args[0]))
    if op == "interval":
        return interval(evaluate(args[0]), args[1], args[2])
    raise ParseError(f"unknown constructor {op!r}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace is left
            break
        tokens.append(m.group(m.lastindex))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            want = f"{expected!r}" if expected else "a token"
            raise ParseError(f"expected {want} at token {self.pos} in {self.text!r}, got {tok!r}")
        self.pos += 1
        return tok

    def integer(self) -> int:
        tok = self.take()
        if not tok.isdigit():
            raise ParseError(f"expected an integer in {self.text!r}, got {tok!r}")
        return int(tok)

    def parse(self) -> Expr:
        expr = self.binary(("+", "|", "*"))
        if self.peek() is not None:
            raise ParseError(f"unexpected {self.peek()!r} in {self.text!r}")
        return expr

    def binary(self, levels: tuple[str, ...]) -> Expr:
        if not levels:
            return self.atom()
        sym, rest = levels[0], levels[1:]
        expr = self.binary(rest)
        while self.peek() == sym:
            self.take()
            expr = Expr(_SYMBOL[sym], (expr, self.binary(rest)))
        return expr

    def atom(self) -> Expr:
        tok = self.take()
        if tok == "(":
            expr = self.binary(("+", "|", "*"))
            self.take(")")
            return expr
        if tok == "n5":
            if self.peek() == "(":
                self.take("(")
                self.take(")")
            return Expr("n5")
        if tok in _LEAVES:
            name = {"boolean": "bool", "m_kappa": "mk"}.get(tok, tok)
            if self.peek() == ":":
                self.take(":")
                k = self.integer()
            else:
                self.take("(")
                k = self.integer()
                self.take(")")
            if k < 1 and name != "bool":
                raise ParseError(f"{name} needs a parameter >= 1")
            return Expr(name, (k,))
        if tok in _BINARY or tok == "dual" or tok == "interval":
            self.take("(")
            first = self.binary(("+", "|", "*"))
            if tok == "dual":
                self.take(")")
                return Expr("dual", (first,))
            self.take(",")
            if tok == "interval":
                a = self.integer()
                self.take(",")
                b = self.integer()
                self.take(")")
                return Expr("interval", (first, a, b))
            second = self.binary(("+", "|", "*"))
            self.take(")")
            return Expr(tok, (first, second))
        raise ParseError(f"unexpected {tok!r} in {self.text!r}")


def parse(text: str) -> Expr:
    return _Parser(text).parse()


def build(text: str) -> FiniteLattice:
    """Parse and evaluate an expression."""
    return evaluate(parse(text))
