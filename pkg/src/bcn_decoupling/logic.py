"""Boolean expression parsing and compilation to structure matrices.

Concrete syntax::

    variables   X1..Xn (states), U1..Um (inputs)
    constants   0 1 TRUE FALSE
    NOT         !  NOT  ~
    AND         &  AND
    OR          |  OR          (same level as XOR, left-associative)
    XOR         ^  XOR
    IFF         <->  IFF       (loosest, left-associative)

Keywords are case-insensitive.  Truth is encoded as ``delta_2^1`` and
composite assignments are ordered most-significant variable first, so the
first column of a structure matrix is the all-true assignment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .stp import LogicalMatrix

__all__ = [
    "ParseError",
    "BindingError",
    "Var",
    "Const",
    "Not",
    "And",
    "Or",
    "Xor",
    "Iff",
    "BoolExpr",
    "NetworkDefinition",
    "parse",
    "variables_of",
    "evaluate",
    "structure_matrix",
    "build_algebraic_form",
]


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, text: str = ""):
        self.offset = offset
        self.text = text
        super().__init__(f"{message} at offset {offset}")


class BindingError(ValueError):
    pass


@dataclass(frozen=True)
class Var:
    kind: str  # "X" (state) or "U" (input)
    index: int

    def __str__(self):
        return f"{self.kind}{self.index}"


@dataclass(frozen=True)
class Const:
    value: bool

    def __str__(self):
        return "1" if self.value else "0"


@dataclass(frozen=True)
class Not:
    operand: "BoolExpr"

    def __str__(self):
        return f"!{self.operand}"


@dataclass(frozen=True)
class _Binary:
    left: "BoolExpr"
    right: "BoolExpr"
    symbol = "?"

    def __str__(self):
        return f"({self.left} {self.symbol} {self.right})"


class And(_Binary):
    symbol = "&"


class Or(_Binary):
    symbol = "|"


class Xor(_Binary):
    symbol = "^"


class Iff(_Binary):
    symbol = "<->"


BoolExpr = Union[Var, Const, Not, And, Or, Xor, Iff]

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<var>[XxUu][0-9]+)
  | (?P<iff><->)
  | (?P<not>!|~)
  | (?P<and>&)
  | (?P<or>\|)
  | (?P<xor>\^)
  | (?P<lpar>\()
  | (?P<rpar>\))
  | (?P<word>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<num>[0-9]+)
""", re.VERBOSE)

_KEYWORDS = {"NOT": "not", "AND": "and", "OR": "or", "XOR": "xor", "IFF": "iff",
             "TRUE": "const", "FALSE": "const"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unknown token {text[pos]!r}", pos, text)
        kind = m.lastgroup
        value = m.group()
        if kind == "word":
            kind = _KEYWORDS.get(value.upper())
            if kind is None:
                raise ParseError(f"unknown token {value!r}", pos, text)
        elif kind == "num":
            if value not in ("0", "1"):
                raise ParseError(f"unknown token {value!r}", pos, text)
            kind = "const"
        if kind != "ws":
            tokens.append((kind, value, pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected {kind}, found {what}", tok[2], self.text)
        self.i += 1
        return tok

    def parse(self) -> BoolExpr:
        if self.peek()[0] == "eof":
            raise ParseError("empty expression", 0, self.text)
        expr = self.iff()
        tok = self.peek()
        if tok[0] != "eof":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2], self.text)
        return expr

    def iff(self):
        left = self.disj()
        while self.peek()[0] == "iff":
            self.take()
            left = Iff(left, self.disj())
        return left

    def disj(self):
        left = self.conj()
        while self.peek()[0] in ("or", "xor"):
            kind = self.take()[0]
            right = self.conj()
            left = Or(left, right) if kind == "or" else Xor(left, right)
        return left

    def conj(self):
        left = self.unary()
        while self.peek()[0] == "and":
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self):
        kind, value, pos = self.peek()
        if kind == "not":
            self.take()
            return Not(self.unary())
        if kind == "lpar":
            self.take()
            inner = self.iff()
            self.take("rpar")
            return inner
        if kind == "var":
            self.take()
            index = int(value[1:])
            if index < 1:
                raise ParseError(f"variable index must be positive in {value!r}", pos, self.text)
            return Var(value[0].upper(), index)
        if kind == "const":
            self.take()
            return Const(value.upper() in ("1", "TRUE"))
        what = "end of input" if kind == "eof" else repr(value)
        raise ParseError(f"expected an operand, found {what}", pos, self.text)


def parse(text: str) -> BoolExpr:
    """Parse a Boolean expression into an AST."""
    return _Parser(text).parse()


def variables_of(expr: BoolExpr) -> set[Var]:
    if isinstance(expr, Var):
        return {expr}
    if isinstance(expr, Const):
        return set()
    if isinstance(expr, Not):
        return variables_of(expr.operand)
    return variables_of(expr.left) | variables_of(expr.right)


def evaluate(expr: BoolExpr, env):
    """Evaluate over ``env`` mapping Var -> bool or Boolean numpy array."""
    if isinstance(expr, Var):
        return env[expr]
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Not):
        return np.logical_not(evaluate(expr.operand, env))
    a = evaluate(expr.left, env)
    b = evaluate(expr.right, env)
    if isinstance(expr, And):
        return np.logical_and(a, b)
    if isinstance(expr, Or):
        return np.logical_or(a, b)
    if isinstance(expr, Xor):
        return np.logical_xor(a, b)
    return np.logical_not(np.logical_xor(a, b))


def _assignment_columns(k: int) -> np.ndarray:
    """Rows of Boolean values for each of k ordered variables over all 2^k columns."""
    c = np.arange(2 ** k)
    shifts = np.arange(k - 1, -1, -1)[:, None]
    # bit 0 encodes true (delta_2^1)
    return ((c[None, :] >> shifts) & 1) == 0


def _as_var(v) -> Var:
    if isinstance(v, Var):
        return v
    e = parse(v) if isinstance(v, str) else None
    if not isinstance(e, Var):
        raise BindingError(f"not a variable: {v!r}")
    return e


def structure_matrix(f: BoolExpr | str, order: Sequence) -> LogicalMatrix:
    """Structure matrix ``L_f`` in L_{2 x 2^k} over the given variable order."""
    if isinstance(f, str):
        f = parse(f)
    order = [_as_var(v) for v in order]
    if len(set(order)) != len(order):
        raise BindingError("duplicate variable in order")
    missing = variables_of(f) - set(order)
    if missing:
        names = ", ".join(sorted(map(str, missing)))
        raise BindingError(f"unbound variable(s): {names}")
    values = _assignment_columns(len(order))
    env = {v: values[q] for q, v in enumerate(order)}
    out = np.broadcast_to(evaluate(f, env), (2 ** len(order),))
    return LogicalMatrix(2, np.where(out, 1, 2))


@dataclass(frozen=True)
class NetworkDefinition:
    """A BCN written as update and output expressions."""

    n: int
    m: int
    p: int
    updates: tuple
    outputs: tuple

    def __post_init__(self):
        updates = tuple(parse(e) if isinstance(e, str) else e for e in self.updates)
        outputs = tuple(parse(e) if isinstance(e, str) else e for e in self.outputs)
        object.__setattr__(self, "updates", updates)
        object.__setattr__(self, "outputs", outputs)
        if min(self.n, self.m, self.p) < 1:
            raise BindingError("n, m and p must be positive")
        if len(updates) != self.n:
            raise BindingError(f"expected {self.n} update expressions, got {len(updates)}")
        if len(outputs) != self.p:
            raise BindingError(f"expected {self.p} output expressions, got {len(outputs)}")
        for i, e in enumerate(updates, 1):
            self._bind(e, f"update X{i}", allow_inputs=True)
        for j, e in enumerate(outputs, 1):
            self._bind(e, f"output Y{j}", allow_inputs=False)

    def _bind(self, e, where, allow_inputs):
        for v in variables_of(e):
            if v.kind == "X" and v.index > self.n:
                raise BindingError(f"{where}: X{v.index} exceeds n={self.n}")
            if v.kind == "U":
                if not allow_inputs:
                    raise BindingError(f"{where}: outputs may only depend on states, found U{v.index}")
                if v.index > self.m:
                    raise BindingError(f"{where}: U{v.index} exceeds m={self.m}")


def build_algebraic_form(defn: NetworkDefinition):
    """Compile a definition into ``x(t+1) = L u x``, ``y_j = H_j x``."""
    from .bcn import BCNet

    states = [Var("X", i) for i in range(1, defn.n + 1)]
    inputs = [Var("U", i) for i in range(1, defn.m + 1)]
    order = inputs + states
    values = _assignment_columns(len(order))
    env = {v: values[q] for q, v in enumerate(order)}
    idx = np.zeros(2 ** len(order), dtype=np.int64)
    for f in defn.updates:
        bit = ~np.broadcast_to(evaluate(f, env), idx.shape)
        idx = 2 * idx + bit.astype(np.int64)
    L = LogicalMatrix(2 ** defn.n, idx + 1)
    H = tuple(structure_matrix(g, states) for g in defn.outputs)
    return BCNet(defn.n, defn.m, defn.p, L, H)
