"""Group expressions: ``C2 x D8``, ``gens: (0 1 2 3), (0 2)``, ``(S3 x C2) x C2``.

Grammar::

    expr := term ("x" term)*
    term := FAMILY INT ["^" INT] | "gens:" [perm ("," perm)*] | "(" expr ")"
    perm := cycle+          cycle := "(" INT* ")"

Families are C, D, S, A, Q and E (``E p^k``), case-insensitive.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .groups import (
    ORDER_CAP,
    FiniteGroup,
    GroupError,
    Permutation,
    builtin,
    direct_product,
    group_from_generators,
)

FAMILIES = "CDSAQE"


class ParseError(GroupError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Family:
    kind: str
    n: int
    k: int | None = None

    def __str__(self) -> str:
        return f"{self.kind}{self.n}" if self.k is None else f"{self.kind}{self.n}^{self.k}"


@dataclass(frozen=True)
class Gens:
    perms: tuple[tuple[tuple[int, ...], ...], ...]

    def __str__(self) -> str:
        if not self.perms:
            return "gens:"
        body = ", ".join("".join("(" + " ".join(map(str, c)) + ")" for c in p) for p in self.perms)
        return f"gens: {body}"


@dataclass(frozen=True)
class Product:
    left: GroupExpr
    right: GroupExpr

    def __str__(self) -> str:
        right = f"({self.right})" if isinstance(self.right, Product) else str(self.right)
        return f"{self.left} x {right}"


GroupExpr = Family | Gens | Product

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<gens>gens\s*:)|(?P<times>[xX×])|(?P<fam>[A-Za-z])|(?P<punct>[(),^]))",
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        rest = text[pos:].lstrip()
        if not rest:
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {rest[0]!r}", len(text) - len(rest))
        kind = m.lastgroup
        start = m.start(kind)
        val = m.group(kind)
        if kind == "fam" and val.upper() not in FAMILIES:
            raise ParseError(f"unknown family {val!r}", start)
        if kind == "punct":
            kind = val
        out.append((kind, val, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, offset: int = 0):
        return self.toks[min(self.i + offset, len(self.toks) - 1)]

    def take(self, kind: str):
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> GroupExpr:
        node = self.term()
        while self.peek()[0] == "times":
            self.i += 1
            node = Product(node, self.term())
        return node

    def term(self) -> GroupExpr:
        kind, val, pos = self.peek()
        if kind == "fam":
            self.i += 1
            n = int(self.take("int")[1])
            k = None
            if self.peek()[0] == "^":
                self.i += 1
                k = int(self.take("int")[1])
            if k is not None and val.upper() != "E":
                raise ParseError("exponent only allowed for E p^k", pos)
            return Family(val.upper(), n, k)
        if kind == "gens":
            self.i += 1
            return Gens(self.perm_list())
        if kind == "(":
            self.i += 1
            node = self.expr()
            self.take(")")
            return node
        raise ParseError(f"expected a group term, found {val or 'end of input'!r}", pos)

    def _at_cycle(self) -> bool:
        if self.peek()[0] != "(":
            return False
        nxt = self.peek(1)[0]
        return nxt in ("int", ")")

    def perm_list(self) -> tuple:
        perms = []
        if not self._at_cycle():
            return ()
        perms.append(self.perm())
        while self.peek()[0] == ",":
            self.i += 1
            if not self._at_cycle():
                tok = self.peek()
                raise ParseError("bad cycle notation", tok[2])
            perms.append(self.perm())
        return tuple(perms)

    def perm(self) -> tuple:
        cycles = []
        while self._at_cycle():
            start = self.take("(")[2]
            pts = []
            while self.peek()[0] == "int":
                pts.append(int(self.take("int")[1]))
            self.take(")")
            if len(set(pts)) != len(pts):
                raise ParseError("repeated point in cycle", start)
            cycles.append(tuple(pts))
        return tuple(cycles)


def parse_group_expr(text: str) -> GroupExpr:
    p = _Parser(text)
    node = p.expr()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {val!r}", pos)
    return node


def build_group(expr: GroupExpr | str, cap: int = ORDER_CAP) -> FiniteGroup:
    if isinstance(expr, str):
        expr = parse_group_expr(expr)
    if isinstance(expr, Family):
        G = builtin(f"{expr.kind} {expr.n}" + (f"^{expr.k}" if expr.k is not None else ""), cap)
    elif isinstance(expr, Gens):
        degree = max((p + 1 for perm in expr.perms for c in perm for p in c), default=0)
        G = group_from_generators([Permutation.from_cycles(perm, degree) for perm in expr.perms], cap=cap)
    else:
        G = direct_product(build_group(expr.left, cap), build_group(expr.right, cap), cap=cap)
    G.label = str(expr)
    return G
