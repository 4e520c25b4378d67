"""Scalar fields on R^m: expression trees, a parser/printer, and second-order jets.

Fields are immutable trees built from constants, variables ``x1 .. xm`` and a
handful of operations. :func:`eval_jet2` pushes (value, gradient, Hessian)
triples forward through the tree, so derivatives carry no truncation error.

>>> f = parse_field("x1^2 + x2^2", 2)
>>> jet = eval_jet2(f, [1.0, 2.0])
>>> jet.value, jet.gradient.tolist()
(5.0, [2.0, 4.0])
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from .errors import DomainError, ParseError

MAX_EXPONENT = 64

class Expr:
    """Base node. Supports ``+ - * / **`` and unary minus for building trees."""

    __slots__ = ()

    @property
    def dimension(self) -> int:
        """Largest variable index in the tree (0 for a constant field)."""
        return max((node.index for node in self.walk() if isinstance(node, Var)), default=0)

    def walk(self):
        yield self
        for child in self.children():
            yield from child.walk()

    def children(self) -> tuple[Expr, ...]:
        return ()

    def __str__(self) -> str:
        return to_text(self)

    def __add__(self, other):
        return Add(self, as_expr(other))

    def __radd__(self, other):
        return Add(as_expr(other), self)

    def __sub__(self, other):
        return Sub(self, as_expr(other))

    def __rsub__(self, other):
        return Sub(as_expr(other), self)

    def __mul__(self, other):
        return Mul(self, as_expr(other))

    def __rmul__(self, other):
        return Mul(as_expr(other), self)

    def __truediv__(self, other):
        return Div(self, as_expr(other))

    def __rtruediv__(self, other):
        return Div(as_expr(other), self)

    def __pow__(self, k: int):
        return Pow(self, k)

    def __neg__(self):
        return Neg(self)


@dataclass(frozen=True, eq=True, slots=True)
class Const(Expr):
    value: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"constant must be finite, got {self.value!r}")
        object.__setattr__(self, "value", float(self.value))


@dataclass(frozen=True, eq=True, slots=True)
class Var(Expr):
    index: int  # 1-based

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"variable index must be >= 1, got {self.index}")


@dataclass(frozen=True, eq=True, slots=True)
class Neg(Expr):
    arg: Expr

    def children(self):
        return (self.arg,)


@dataclass(frozen=True, eq=True, slots=True)
class _Binary(Expr):
    left: Expr
    right: Expr

    def children(self):
        return (self.left, self.right)


class Add(_Binary):
    __slots__ = ()


class Sub(_Binary):
    __slots__ = ()


class Mul(_Binary):
    __slots__ = ()


class Div(_Binary):
    __slots__ = ()


@dataclass(frozen=True, eq=True, slots=True)
class Pow(Expr):
    base: Expr
    exponent: int

    def __post_init__(self):
        if not isinstance(self.exponent, (int, np.integer)) or isinstance(self.exponent, bool):
            raise TypeError("exponent must be an integer")
        if abs(self.exponent) > MAX_EXPONENT:
            raise ValueError(f"|exponent| must be <= {MAX_EXPONENT}, got {self.exponent}")
        object.__setattr__(self, "exponent", int(self.exponent))

    def children(self):
        return (self.base,)


@dataclass(frozen=True, eq=True, slots=True)
class Sqrt(Expr):
    arg: Expr

    def children(self):
        return (self.arg,)


@dataclass(frozen=True, eq=True, slots=True)
class Abs(Expr):
    arg: Expr

    def children(self):
        return (self.arg,)


def as_expr(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, float, np.floating, np.integer)) and not isinstance(value, bool):
        return Const(float(value))
    raise TypeError(f"cannot convert {type(value).__name__} to Expr")


def x(i: int) -> Var:
    """Shorthand for the ambient coordinate ``x_i`` (1-based)."""
    return Var(i)


def total(terms: Sequence[Expr]) -> Expr:
    return reduce(Add, terms)


def product(factors: Sequence[Expr]) -> Expr:
    return reduce(Mul, factors)


def squared_norm(indices: Sequence[int]) -> Expr:
    """``x_i^2 + x_j^2 + ...`` over the given 1-based indices."""
    return total([Pow(Var(i), 2) for i in indices])


def substitute(expr: Expr, mapping: dict[int, Expr]) -> Expr:
    """Replace variables by expressions, keyed by 1-based index."""
    if isinstance(expr, Var):
        return mapping.get(expr.index, expr)
    if isinstance(expr, Const):
        return expr
    if isinstance(expr, _Binary):
        return type(expr)(substitute(expr.left, mapping), substitute(expr.right, mapping))
    if isinstance(expr, Pow):
        return Pow(substitute(expr.base, mapping), expr.exponent)
    return type(expr)(substitute(expr.arg, mapping))


# ---------------------------------------------------------------------------
# Parsing

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<func>sqrt|abs)(?=\s*\()
  | (?P<ident>x\d+)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, dimension: int | None):
        self.tokens = _tokenize(text)
        self.i = 0
        self.dimension = dimension

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, text, pos = self.take()
        if text != value or kind == "end":
            found = "end of input" if kind == "end" else repr(text)
            raise ParseError(f"expected {value!r}, found {found}", pos)

    def parse(self) -> Expr:
        node = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {text!r}", pos)
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            right = self.term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            right = self.factor()
            node = Mul(node, right) if op == "*" else Div(node, right)
        return node

    def factor(self) -> Expr:
        node = self.base()
        if self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[1] in ("-", "+"):
                sign = -1 if self.take()[1] == "-" else 1
            kind, text, pos = self.take()
            if kind != "number" or not text.isdigit():
                found = "end of input" if kind == "end" else repr(text)
                raise ParseError(f"expected integer exponent, found {found}", pos)
            k = sign * int(text)
            if abs(k) > MAX_EXPONENT:
                raise ParseError(f"exponent {k} exceeds {MAX_EXPONENT} in magnitude", pos)
            node = Pow(node, k)
        return node

    def base(self) -> Expr:
        kind, text, pos = self.take()
        if kind == "number":
            return Const(float(text))
        if kind == "ident":
            index = int(text[1:])
            if index < 1:
                raise ParseError(f"variable {text} out of range (indices start at 1)", pos)
            if self.dimension is not None and index > self.dimension:
                raise ParseError(
                    f"variable {text} out of range for dimension {self.dimension}", pos
                )
            return Var(index)
        if kind == "func":
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return Sqrt(inner) if text == "sqrt" else Abs(inner)
        if text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if text == "-":
            return Neg(self.base())
        found = "end of input" if kind == "end" else repr(text)
        raise ParseError(f"unexpected {found}", pos)


def parse_field(text: str, dimension: int | None = None) -> Expr:
    """Parse ``text`` into an expression over ``x1 .. x<dimension>``.

    With ``dimension=None`` any positive variable index is accepted; callers
    then read the ambient dimension back from :attr:`Expr.dimension`.
    """
    if dimension is not None and dimension < 1:
        raise ValueError(f"dimension must be >= 1, got {dimension}")
    return _Parser(text, dimension).parse()


# ---------------------------------------------------------------------------
# Canonical printer. parse_field(to_text(e)) == e for every parsed tree.


def _number(v: float) -> str:
    a = abs(v)
    s = str(int(a)) if a.is_integer() and a < 1e15 else repr(a)
    return "-" + s if v < 0 else s


def _p_expr(e: Expr) -> str:
    if isinstance(e, Add):
        return f"{_p_expr(e.left)} + {_p_term(e.right)}"
    if isinstance(e, Sub):
        return f"{_p_expr(e.left)} - {_p_term(e.right)}"
    return _p_term(e)


def _p_term(e: Expr) -> str:
    if isinstance(e, Mul):
        return f"{_p_term(e.left)}*{_p_factor(e.right)}"
    if isinstance(e, Div):
        return f"{_p_term(e.left)}/{_p_factor(e.right)}"
    return _p_factor(e)


def _p_factor(e: Expr) -> str:
    if isinstance(e, Pow):
        return f"{_p_base(e.base)}^{e.exponent}"
    return _p_base(e)


def _p_base(e: Expr) -> str:
    if isinstance(e, Const):
        return _number(e.value)
    if isinstance(e, Var):
        return f"x{e.index}"
    if isinstance(e, Neg):
        return "-" + _p_base(e.arg)
    if isinstance(e, Sqrt):
        return f"sqrt({_p_expr(e.arg)})"
    if isinstance(e, Abs):
        return f"abs({_p_expr(e.arg)})"
    return f"({_p_expr(e)})"


def to_text(expr: Expr) -> str:
    return _p_expr(expr)


# ---------------------------------------------------------------------------
# Evaluation


def _as_point(p, expr: Expr) -> np.ndarray:
    pt = np.asarray(p, dtype=float)
    if pt.ndim != 1:
        raise ValueError("point must be a 1-D sequence of coordinates")
    if not np.all(np.isfinite(pt)):
        raise ValueError("point coordinates must be finite")
    if pt.size < expr.dimension:
        raise ValueError(
            f"point has {pt.size} coordinates but the field uses x{expr.dimension}"
        )
    return pt


def evaluate(expr: Expr, p) -> float:
    """Value of the field at ``p`` (no derivatives)."""
    pt = _as_point(p, expr)
    try:
        v = _value(expr, pt)
    except (ZeroDivisionError, OverflowError) as exc:
        raise DomainError(f"overflow: {exc}") from exc
    if not math.isfinite(v):
        raise DomainError("value is not finite at this point")
    return v


def _value(e: Expr, p: np.ndarray) -> float:
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        return float(p[e.index - 1])
    if isinstance(e, Neg):
        return -_value(e.arg, p)
    if isinstance(e, Add):
        return _value(e.left, p) + _value(e.right, p)
    if isinstance(e, Sub):
        return _value(e.left, p) - _value(e.right, p)
    if isinstance(e, Mul):
        return _value(e.left, p) * _value(e.right, p)
    if isinstance(e, Div):
        den = _value(e.right, p)
        if den == 0.0:
            raise DomainError("division by zero")
        return _value(e.left, p) / den
    if isinstance(e, Pow):
        b = _value(e.base, p)
        if b == 0.0 and e.exponent < 0:
            raise DomainError("zero raised to a negative power")
        return b**e.exponent
    if isinstance(e, Sqrt):
        u = _value(e.arg, p)
        if u < 0.0:
            raise DomainError("square root of a negative number")
        return math.sqrt(u)
    if isinstance(e, Abs):
        return abs(_value(e.arg, p))
    raise TypeError(f"unknown node {type(e).__name__}")


@dataclass(frozen=True)
class Jet2:
    """Value, gradient and (symmetric) Hessian of a field at one point."""

    value: float
    gradient: np.ndarray
    hessian: np.ndarray

    @property
    def dimension(self) -> int:
        return self.gradient.shape[0]


class _J:
    # Mutable working jet; Jet2 is the frozen public result.
    __slots__ = ("v", "g", "h")

    def __init__(self, v, g, h):
        self.v = v
        self.g = g
        self.h = h


def _jconst(c: float, m: int) -> _J:
    return _J(c, np.zeros(m), np.zeros((m, m)))


def _jmul(a: _J, b: _J) -> _J:
    cross = np.outer(a.g, b.g)
    return _J(a.v * b.v, a.v * b.g + b.v * a.g, a.v * b.h + b.v * a.h + (cross + cross.T))


def _jchain(a: _J, f0: float, f1: float, f2: float) -> _J:
    """Compose a univariate map (value f0, first/second derivative f1, f2) with a."""
    return _J(f0, f1 * a.g, f1 * a.h + f2 * np.outer(a.g, a.g))


def _jrecip(a: _J) -> _J:
    if a.v == 0.0:
        raise DomainError("division by zero")
    r = 1.0 / a.v
    return _jchain(a, r, -r * r, 2.0 * r * r * r)


def _jpow(a: _J, k: int) -> _J:
    if k < 0:
        if a.v == 0.0:
            raise DomainError("zero raised to a negative power")
        return _jrecip(_jpow(a, -k))
    result = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else _jmul(result, base)
        k >>= 1
        if k:
            base = _jmul(base, base)
    return result if result is not None else _jconst(1.0, a.g.shape[0])


def _jet(e: Expr, p: np.ndarray, m: int) -> _J:
    if isinstance(e, Const):
        return _jconst(e.value, m)
    if isinstance(e, Var):
        g = np.zeros(m)
        g[e.index - 1] = 1.0
        return _J(float(p[e.index - 1]), g, np.zeros((m, m)))
    if isinstance(e, Neg):
        a = _jet(e.arg, p, m)
        return _J(-a.v, -a.g, -a.h)
    if isinstance(e, (Add, Sub)):
        a = _jet(e.left, p, m)
        b = _jet(e.right, p, m)
        if isinstance(e, Add):
            return _J(a.v + b.v, a.g + b.g, a.h + b.h)
        return _J(a.v - b.v, a.g - b.g, a.h - b.h)
    if isinstance(e, Mul):
        return _jmul(_jet(e.left, p, m), _jet(e.right, p, m))
    if isinstance(e, Div):
        num = _jet(e.left, p, m)
        return _jmul(num, _jrecip(_jet(e.right, p, m)))
    if isinstance(e, Pow):
        return _jpow(_jet(e.base, p, m), e.exponent)
    if isinstance(e, Sqrt):
        a = _jet(e.arg, p, m)
        if a.v < 0.0:
            raise DomainError("square root of a negative number")
        if a.v == 0.0:
            raise DomainError("square root is not differentiable at 0")
        s = math.sqrt(a.v)
        return _jchain(a, s, 0.5 / s, -0.25 / (a.v * s))
    if isinstance(e, Abs):
        a = _jet(e.arg, p, m)
        if a.v == 0.0:
            raise DomainError("abs is not differentiable at 0")
        sign = 1.0 if a.v > 0.0 else -1.0
        return _J(sign * a.v, sign * a.g, sign * a.h)
    raise TypeError(f"unknown node {type(e).__name__}")


def eval_jet2(field: Expr, p) -> Jet2:
    """Exact value, gradient and Hessian of ``field`` at ``p``.

    The jet has the dimension of ``p`` (which may exceed ``field.dimension``).
    Raises :class:`DomainError` where the field or a derivative is undefined.
    """
    pt = _as_point(p, field)
    try:
        with np.errstate(all="ignore"):
            j = _jet(field, pt, pt.size)
    except (ZeroDivisionError, OverflowError) as exc:
        raise DomainError(f"derivative overflow: {exc}") from exc
    if not (math.isfinite(j.v) and np.all(np.isfinite(j.g)) and np.all(np.isfinite(j.h))):
        raise DomainError("jet is not finite at this point")
    h = 0.5 * (j.h + j.h.T)
    return Jet2(float(j.v), np.array(j.g, dtype=float), h)
