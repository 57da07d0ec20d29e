"""
nodes.py – Immutable expression trees for meromorphic functions of one variable ``z``.

Nodes are frozen dataclasses. Trees are built through the module-level builders
(``add``, ``mul``, ``power`` ...) or the operator overloads on ``Expr``; both do
local constant folding only, never global simplification.

Log, Sqrt and Pow share branch bookkeeping: their branch is the branch of
``log(argument)``, keyed by the canonical source of the argument. ``ExpIntegral``
stands for ``c * exp(integral from z0 to z of form)`` when no elementary
primitive is available; it is evaluated by quadrature and is the only node the
parser never produces.
"""

from __future__ import annotations

import cmath
from collections.abc import Iterator
from dataclasses import dataclass
from functools import cached_property
from typing import Union

Number = Union[int, float, complex]


class Expr:
    """Base class for expression nodes."""

    @cached_property
    def source(self) -> str:
        """Canonical, fully parenthesized source text."""
        return self._render()

    def _render(self) -> str:  # pragma: no cover - abstract
        raise NotImplementedError

    def children(self) -> tuple["Expr", ...]:
        return ()

    def __str__(self) -> str:
        return self.source

    # ── Operator overloads ────────────────────────────────────────────────────

    def __add__(self, other: Union["Expr", Number]) -> "Expr":
        return add(self, as_expr(other))

    def __radd__(self, other: Number) -> "Expr":
        return add(as_expr(other), self)

    def __sub__(self, other: Union["Expr", Number]) -> "Expr":
        return sub(self, as_expr(other))

    def __rsub__(self, other: Number) -> "Expr":
        return sub(as_expr(other), self)

    def __mul__(self, other: Union["Expr", Number]) -> "Expr":
        return mul(self, as_expr(other))

    def __rmul__(self, other: Number) -> "Expr":
        return mul(as_expr(other), self)

    def __truediv__(self, other: Union["Expr", Number]) -> "Expr":
        return div(self, as_expr(other))

    def __rtruediv__(self, other: Number) -> "Expr":
        return div(as_expr(other), self)

    def __neg__(self) -> "Expr":
        return neg(self)

    def __pow__(self, other: Union["Expr", Number]) -> "Expr":
        return power(self, as_expr(other))


# ── Leaves ────────────────────────────────────────────────────────────────────

def format_number(value: complex) -> str:
    """Source text for a complex constant that the parser reads back exactly."""
    re, im = float(value.real), float(value.imag)

    def signed(x: float) -> str:
        return f"(-{abs(x)!r})" if x < 0 else repr(abs(x))

    if im == 0:
        return signed(re)
    im_text = f"{abs(im)!r}*i"
    if re == 0:
        return f"(-{im_text})" if im < 0 else f"({im_text})"
    sign = "-" if im < 0 else "+"
    re_text = f"-{abs(re)!r}" if re < 0 else repr(abs(re))
    return f"({re_text}{sign}{im_text})"


@dataclass(frozen=True)
class Const(Expr):
    value: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", complex(self.value))

    def _render(self) -> str:
        return format_number(self.value)


@dataclass(frozen=True)
class Var(Expr):
    """The coordinate ``z``."""

    def _render(self) -> str:
        return "z"


# ── Arithmetic ────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr

    def children(self) -> tuple[Expr, ...]:
        return (self.left, self.right)

    def _render(self) -> str:
        return f"({self.left.source} + {self.right.source})"


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr

    def children(self) -> tuple[Expr, ...]:
        return (self.left, self.right)

    def _render(self) -> str:
        return f"({self.left.source} - {self.right.source})"


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr

    def children(self) -> tuple[Expr, ...]:
        return (self.left, self.right)

    def _render(self) -> str:
        return f"({self.left.source} * {self.right.source})"


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr

    def children(self) -> tuple[Expr, ...]:
        return (self.left, self.right)

    def _render(self) -> str:
        return f"({self.left.source} / {self.right.source})"


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr

    def children(self) -> tuple[Expr, ...]:
        return (self.arg,)

    def _render(self) -> str:
        return f"(-{self.arg.source})"


@dataclass(frozen=True)
class IntPow(Expr):
    base: Expr
    exponent: int

    def children(self) -> tuple[Expr, ...]:
        return (self.base,)

    def _render(self) -> str:
        n = self.exponent
        exp_text = f"(-{abs(n)})" if n < 0 else str(n)
        return f"({self.base.source} ^ {exp_text})"


# ── Multivalued and transcendental ────────────────────────────────────────────

@dataclass(frozen=True)
class Pow(Expr):
    """``base ** exponent`` for a constant non-integer exponent, on a tracked branch."""

    base: Expr
    exponent: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponent", complex(self.exponent))

    def children(self) -> tuple[Expr, ...]:
        return (self.base,)

    def _render(self) -> str:
        return f"pow({self.base.source}, {format_number(self.exponent)})"


@dataclass(frozen=True)
class Exp(Expr):
    arg: Expr

    def children(self) -> tuple[Expr, ...]:
        return (self.arg,)

    def _render(self) -> str:
        return f"exp({self.arg.source})"


@dataclass(frozen=True)
class Log(Expr):
    arg: Expr

    def children(self) -> tuple[Expr, ...]:
        return (self.arg,)

    def _render(self) -> str:
        return f"log({self.arg.source})"


@dataclass(frozen=True)
class Sqrt(Expr):
    arg: Expr

    def children(self) -> tuple[Expr, ...]:
        return (self.arg,)

    def _render(self) -> str:
        return f"sqrt({self.arg.source})"


@dataclass(frozen=True)
class ExpIntegral(Expr):
    """
    ``c * exp(integral_{z0}^{z} form(t) dt)``, continued along the evaluation path.

    Attributes
    ----------
    form:
        Coefficient of the 1-form being integrated.
    z0:
        Base point of the integral.
    c:
        Value at ``z0``.
    """

    form: Expr
    z0: complex
    c: complex = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "z0", complex(self.z0))
        object.__setattr__(self, "c", complex(self.c))

    def children(self) -> tuple[Expr, ...]:
        return (self.form,)

    def _render(self) -> str:
        return f"xi[{self.form.source}; {format_number(self.z0)}; {format_number(self.c)}]"


LOG_TYPES = (Log, Sqrt, Pow)

Z = Var()


# ── Tree helpers ──────────────────────────────────────────────────────────────

def as_expr(x: Union[Expr, Number]) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, float, complex)):
        return Const(x)
    raise TypeError(f"Cannot convert {type(x).__name__} to an expression")


def branch_argument(node: Expr) -> Expr:
    """Argument whose logarithm fixes the branch of a Log, Sqrt or Pow node."""
    if isinstance(node, Pow):
        return node.base
    if isinstance(node, (Log, Sqrt)):
        return node.arg
    raise TypeError(f"{type(node).__name__} has no branch argument")


def branch_key(node: Expr) -> str:
    """Key under which a multivalued node's branch is stored in a BranchState."""
    if isinstance(node, ExpIntegral):
        return "int:" + node.source
    return "log:" + branch_argument(node).source


def walk(e: Expr) -> Iterator[Expr]:
    """Pre-order traversal."""
    stack = [e]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


def is_multivalued(e: Expr) -> bool:
    return any(isinstance(n, (*LOG_TYPES, ExpIntegral)) for n in walk(e))


def depends_on_z(e: Expr) -> bool:
    return any(isinstance(n, (Var, ExpIntegral)) for n in walk(e))


def _is_const(e: Expr, value: complex | None = None) -> bool:
    return isinstance(e, Const) and (value is None or e.value == value)


def _integer_exponent(value: complex) -> int | None:
    if value.imag == 0 and float(value.real).is_integer() and abs(value.real) < 1e6:
        return int(value.real)
    return None


# ── Builders (local constant folding) ─────────────────────────────────────────

def add(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    if _is_const(a, 0):
        return b
    if _is_const(b, 0):
        return a
    return Add(a, b)


def sub(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    if _is_const(b, 0):
        return a
    if _is_const(a, 0):
        return neg(b)
    return Sub(a, b)


def mul(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    if _is_const(a, 0) or _is_const(b, 0):
        return Const(0)
    if _is_const(a, 1):
        return b
    if _is_const(b, 1):
        return a
    return Mul(a, b)


def div(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const) and b.value != 0:
        return Const(a.value / b.value)
    if _is_const(b, 1):
        return a
    if _is_const(a, 0) and not _is_const(b, 0):
        return Const(0)
    return Div(a, b)


def neg(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def int_power(b: Expr, n: int) -> Expr:
    if n == 0:
        return Const(1)
    if n == 1:
        return b
    if isinstance(b, Const) and (b.value != 0 or n > 0):
        return Const(b.value ** n)
    return IntPow(b, n)


def power(b: Expr, e: Expr) -> Expr:
    """``b ** e``; integer constant exponents give IntPow, other constants Pow."""
    if isinstance(e, Const):
        n = _integer_exponent(e.value)
        if n is not None:
            return int_power(b, n)
        if isinstance(b, Const) and b.value != 0:
            return Const(cmath.exp(e.value * cmath.log(b.value)))
        return Pow(b, e.value)
    return exp(mul(e, log(b)))


def exp(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(cmath.exp(a.value))
    return Exp(a)


def log(a: Expr) -> Expr:
    if isinstance(a, Const) and a.value != 0:
        return Const(cmath.log(a.value))
    return Log(a)


def sqrt(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(cmath.sqrt(a.value))
    return Sqrt(a)


def to_source(e: Expr) -> str:
    """Canonical source text; ``parse_expr(to_source(e))`` prints identically."""
    return e.source
