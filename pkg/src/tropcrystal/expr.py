"""Subtraction-free rational expressions and their max-plus shadows.

A :class:`PosExpr` is a tree over positive rational constants and named
variables built from sums, products and quotients only.  Tropicalization
is the structural map

    constant -> 0,  a * b -> a + b,  a / b -> a - b,  a + b -> max(a, b)

into :class:`TropExpr` trees, which evaluate over the integers.

Text forms are fully parenthesized infix.  Rational constants print as
``(p/q)`` and are recognised on input when the slash has no surrounding
spaces; ``(a / b)`` with spaces is always a quotient node.
"""

from __future__ import annotations

import ast
import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from tropcrystal.errors import MissingBinding, ResourceCap
from tropcrystal.fundrep import check_rank

_NAME = re.compile(r"^(c|x\d+)$")

DEFAULT_BOX_CAP = 10**7


# -- positive expressions ----------------------------------------------------


class PosExpr:
    """Base class; supports ``+ * /`` so trees can serve as field scalars."""

    __slots__ = ()

    def __add__(self, other):
        return Sum((self, lift(other)))

    def __radd__(self, other):
        return Sum((lift(other), self))

    def __mul__(self, other):
        return Prod((self, lift(other)))

    def __rmul__(self, other):
        return Prod((lift(other), self))

    def __truediv__(self, other):
        return Quot(self, lift(other))

    def __rtruediv__(self, other):
        return Quot(lift(other), self)

    def free_vars(self) -> frozenset[str]:
        raise NotImplementedError


@dataclass(frozen=True, eq=True)
class Const(PosExpr):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if self.value <= 0:
            raise ValueError(f"constants must be strictly positive, got {self.value}")

    def free_vars(self):
        return frozenset()

    def __str__(self):
        v = self.value
        return str(v.numerator) if v.denominator == 1 else f"({v.numerator}/{v.denominator})"


@dataclass(frozen=True, eq=True)
class Var(PosExpr):
    name: str

    def __post_init__(self):
        if not _NAME.match(self.name):
            raise ValueError(f"bad variable name {self.name!r}")

    def free_vars(self):
        return frozenset((self.name,))

    def __str__(self):
        return self.name


@dataclass(frozen=True, eq=True)
class Sum(PosExpr):
    args: tuple[PosExpr, ...]

    def free_vars(self):
        return frozenset().union(*(a.free_vars() for a in self.args))

    def __str__(self):
        return "(" + " + ".join(map(str, self.args)) + ")"


@dataclass(frozen=True, eq=True)
class Prod(PosExpr):
    args: tuple[PosExpr, ...]

    def free_vars(self):
        return frozenset().union(*(a.free_vars() for a in self.args))

    def __str__(self):
        return "(" + " * ".join(map(str, self.args)) + ")"


@dataclass(frozen=True, eq=True)
class Quot(PosExpr):
    num: PosExpr
    den: PosExpr

    def free_vars(self):
        return self.num.free_vars() | self.den.free_vars()

    def __str__(self):
        return f"({self.num} / {self.den})"


def lift(value) -> PosExpr:
    if isinstance(value, PosExpr):
        return value
    if isinstance(value, (int, Fraction)):
        return Const(Fraction(value))
    raise TypeError(f"cannot use {type(value).__name__} in a positive expression")


def psum(terms: Iterable[PosExpr]) -> PosExpr:
    """Sum node, collapsing a single summand to itself."""
    terms = tuple(terms)
    if not terms:
        raise ValueError("empty sum has no positive value")
    return terms[0] if len(terms) == 1 else Sum(terms)


def pprod(factors: Iterable[PosExpr]) -> PosExpr:
    factors = tuple(factors)
    if not factors:
        return Const(Fraction(1))
    return factors[0] if len(factors) == 1 else Prod(factors)


def eval_pos(e: PosExpr, a: Mapping[str, Fraction | int]) -> Fraction:
    """Exact value of ``e``; raises MissingBinding or ZeroDivisionError."""
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        try:
            return Fraction(a[e.name])
        except KeyError:
            raise MissingBinding(e.name) from None
    if isinstance(e, Sum):
        return sum((eval_pos(t, a) for t in e.args), Fraction(0))
    if isinstance(e, Prod):
        return math.prod((eval_pos(t, a) for t in e.args), start=Fraction(1))
    if isinstance(e, Quot):
        return eval_pos(e.num, a) / eval_pos(e.den, a)
    raise TypeError(f"not a positive expression: {e!r}")


# -- tropical expressions ----------------------------------------------------


class TropExpr:
    __slots__ = ()

    def free_vars(self) -> frozenset[str]:
        raise NotImplementedError


@dataclass(frozen=True, eq=True)
class TConst(TropExpr):
    value: int

    def free_vars(self):
        return frozenset()

    def __str__(self):
        return str(self.value) if self.value >= 0 else f"({self.value})"


@dataclass(frozen=True, eq=True)
class TVar(TropExpr):
    name: str

    def free_vars(self):
        return frozenset((self.name,))

    def __str__(self):
        return self.name


@dataclass(frozen=True, eq=True)
class TMax(TropExpr):
    args: tuple[TropExpr, ...]

    def free_vars(self):
        return frozenset().union(*(a.free_vars() for a in self.args))

    def __str__(self):
        return "max(" + ", ".join(map(str, self.args)) + ")"


@dataclass(frozen=True, eq=True)
class TPlus(TropExpr):
    args: tuple[TropExpr, ...]

    def free_vars(self):
        return frozenset().union(*(a.free_vars() for a in self.args))

    def __str__(self):
        return "(" + " + ".join(map(str, self.args)) + ")"


@dataclass(frozen=True, eq=True)
class TMinus(TropExpr):
    left: TropExpr
    right: TropExpr

    def free_vars(self):
        return self.left.free_vars() | self.right.free_vars()

    def __str__(self):
        return f"({self.left} - {self.right})"


def tropicalize(e: PosExpr) -> TropExpr:
    if isinstance(e, Const):
        return TConst(0)
    if isinstance(e, Var):
        return TVar(e.name)
    if isinstance(e, Sum):
        return TMax(tuple(tropicalize(t) for t in e.args))
    if isinstance(e, Prod):
        return TPlus(tuple(tropicalize(t) for t in e.args))
    if isinstance(e, Quot):
        return TMinus(tropicalize(e.num), tropicalize(e.den))
    raise TypeError(f"not a positive expression: {e!r}")


def eval_trop(e: TropExpr, a: Mapping[str, int]) -> int:
    if isinstance(e, TConst):
        return e.value
    if isinstance(e, TVar):
        try:
            return a[e.name]
        except KeyError:
            raise MissingBinding(e.name) from None
    if isinstance(e, TMax):
        return max(eval_trop(t, a) for t in e.args)
    if isinstance(e, TPlus):
        return sum(eval_trop(t, a) for t in e.args)
    if isinstance(e, TMinus):
        return eval_trop(e.left, a) - eval_trop(e.right, a)
    raise TypeError(f"not a tropical expression: {e!r}")


def _py_source(e: TropExpr) -> str:
    if isinstance(e, TConst):
        return f"({e.value})"
    if isinstance(e, TVar):
        return e.name
    if isinstance(e, TMax):
        inner = ", ".join(_py_source(t) for t in e.args)
        return f"max({inner})" if len(e.args) > 1 else f"({inner})"
    if isinstance(e, TPlus):
        return "(" + " + ".join(_py_source(t) for t in e.args) + ")"
    if isinstance(e, TMinus):
        return f"({_py_source(e.left)} - {_py_source(e.right)})"
    raise TypeError(f"not a tropical expression: {e!r}")


def compile_trop(e: TropExpr, names: Sequence[str]) -> Callable[..., int]:
    """Compile ``e`` to a Python function taking ``names`` positionally.

    Used for large box scans; :func:`eval_trop` stays the reference
    interpreter and the test suite checks the two agree.
    """
    missing = e.free_vars() - set(names)
    if missing:
        raise MissingBinding(sorted(missing)[0])
    src = f"lambda {', '.join(names)}: {_py_source(e)}" if names else f"lambda: {_py_source(e)}"
    return eval(compile(src, "<tropexpr>", "eval"), {"__builtins__": {}, "max": max})


def box_size(box: Mapping[str, tuple[int, int]]) -> int:
    return math.prod(max(0, hi - lo + 1) for lo, hi in box.values())


def trop_equal_on_box(
    e1: TropExpr,
    e2: TropExpr,
    box: Mapping[str, tuple[int, int]],
    cap: int = DEFAULT_BOX_CAP,
) -> dict[str, int] | None:
    """Compare two max-plus expressions on every point of an integer box.

    Returns None when they agree everywhere, otherwise the first
    disagreeing assignment in lexicographic scan order.
    """
    names = sorted(box)
    uncovered = (e1.free_vars() | e2.free_vars()) - set(names)
    if uncovered:
        raise MissingBinding(sorted(uncovered)[0])
    size = box_size(box)
    if size > cap:
        raise ResourceCap(f"box has {size} points, cap is {cap}")
    f1, f2 = compile_trop(e1, names), compile_trop(e2, names)
    ranges = [range(box[v][0], box[v][1] + 1) for v in names]
    for point in itertools.product(*ranges):
        if f1(*point) != f2(*point):
            return dict(zip(names, point))
    return None


# -- text parsing ------------------------------------------------------------


def _parse_tree(text: str) -> ast.expr:
    try:
        return ast.parse(text.strip(), mode="eval").body
    except SyntaxError as exc:
        raise ValueError(f"cannot parse expression {text!r}: {exc.msg}") from None


def _int_literal(node: ast.expr) -> int | None:
    if isinstance(node, ast.Constant) and type(node.value) is int:
        return node.value
    return None


def parse_pos(text: str) -> PosExpr:
    """Parse the infix text form of a positive expression."""
    source = text.strip()

    def walk(node: ast.expr) -> PosExpr:
        if isinstance(node, ast.Name):
            return Var(node.id)
        if (v := _int_literal(node)) is not None:
            return Const(Fraction(v))
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Div):
                p, q = _int_literal(node.left), _int_literal(node.right)
                segment = ast.get_source_segment(source, node) or ""
                if p is not None and q is not None and " " not in segment:
                    return Const(Fraction(p, q))
                return Quot(walk(node.left), walk(node.right))
            if isinstance(node.op, (ast.Add, ast.Mult)):
                kind = Sum if isinstance(node.op, ast.Add) else Prod
                args = []
                # a + b + c parses left-nested; flatten only unparenthesized chains
                left = node.left
                if isinstance(left, ast.BinOp) and type(left.op) is type(node.op) and not _parenthesized(node, left):
                    args.extend(walk(left).args)
                else:
                    args.append(walk(left))
                args.append(walk(node.right))
                return kind(tuple(args))
        raise ValueError(f"unsupported syntax in positive expression: {ast.dump(node)}")

    return walk(_parse_tree(source))


def _parenthesized(parent: ast.expr, left: ast.expr) -> bool:
    """True if the left operand of ``parent`` carries its own parentheses."""
    return (left.lineno, left.col_offset) != (parent.lineno, parent.col_offset)


def parse_trop(text: str) -> TropExpr:
    source = text.strip()

    def walk(node: ast.expr) -> TropExpr:
        if isinstance(node, ast.Name):
            if not _NAME.match(node.id):
                raise ValueError(f"bad variable name {node.id!r}")
            return TVar(node.id)
        if (v := _int_literal(node)) is not None:
            return TConst(v)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            if (v := _int_literal(node.operand)) is not None:
                return TConst(-v)
            return TMinus(TConst(0), walk(node.operand))
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "max":
            if not node.args or node.keywords:
                raise ValueError("max() needs positional arguments")
            return TMax(tuple(walk(a) for a in node.args))
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Sub):
                return TMinus(walk(node.left), walk(node.right))
            if isinstance(node.op, ast.Add):
                left = node.left
                args = []
                if isinstance(left, ast.BinOp) and isinstance(left.op, ast.Add) and not _parenthesized(node, left):
                    args.extend(walk(left).args)
                else:
                    args.append(walk(left))
                args.append(walk(node.right))
                return TPlus(tuple(args))
        raise ValueError(f"unsupported syntax in tropical expression: {ast.dump(node)}")

    return walk(_parse_tree(source))


# -- formulas of the geometric crystal on V_1 ---------------------------------


def catalog(n: int) -> dict[str, PosExpr]:
    """Subtraction-free forms of gamma_i, eps_i and e_i^c on the V_1 chart.

    Keys are ``gamma{i}``, ``eps{i}`` and ``e{i}:x{k}`` (the k-th coordinate
    of e_i^c(x)), for i in 0..n and k in 2..2n-1.  The variable ``c`` is the
    action parameter.  Coordinates x_1 and x_{2n}, which the generic formulas
    mention at the ends of the index range, are the constant 1.
    """
    check_rank(n)
    one = Const(Fraction(1))
    c = Var("c")

    def x(k: int) -> PosExpr:
        if k in (1, 2 * n):
            return one
        if not 2 <= k <= 2 * n - 1:
            raise IndexError(k)
        return Var(f"x{k}")

    def ratio(j: int) -> PosExpr:
        return x(j) / x(n + j - 1)

    def head(k: int) -> PosExpr:  # X_k = sum_{j=2}^{k} x_j / x_{n+j-1}
        return psum(ratio(j) for j in range(2, k + 1))

    def tail(k: int) -> PosExpr:  # sum_{j=k+1}^{n}
        return psum(ratio(j) for j in range(k + 1, n + 1))

    whole = head(n)
    out: dict[str, PosExpr] = {}

    out["gamma0"] = one / (x(n) * x(n + 1))
    out["eps0"] = x(n + 1) * whole
    for i in range(1, n + 1):
        if i == 1:
            out["gamma1"] = (x(n + 1) * x(n + 1)) / (x(2) * x(n + 2))
        elif i == n:
            out[f"gamma{i}"] = (x(n) * x(n)) / (x(n - 1) * x(2 * n - 1))
        else:
            out[f"gamma{i}"] = pprod([x(i), x(i), x(n + i), x(n + i)]) / pprod(
                [x(i - 1), x(i + 1), x(n + i - 1), x(n + i + 1)]
            )
        if i == 1:
            out["eps1"] = x(n + 2) / x(n + 1)
        elif i == n:
            out[f"eps{i}"] = x(2 * n - 1) / x(n)
        elif i == n - 1:
            out[f"eps{i}"] = one / x(2 * n - 1) + pprod([x(n), x(2 * n - 2)]) / pprod(
                [x(n - 1), x(2 * n - 1), x(2 * n - 1)]
            )
        else:
            out[f"eps{i}"] = x(n + i + 1) / x(n + i) + pprod([x(i + 1), x(n + i - 1), x(n + i + 1)]) / pprod(
                [x(i), x(n + i), x(n + i)]
            )

    coords = range(2, 2 * n)
    for i in range(0, n + 1):
        new: dict[int, PosExpr] = {k: x(k) for k in coords}
        if i == 0:
            for k in range(2, n):
                new[k] = x(k) * whole / (c * head(k) + tail(k))
            new[n] = x(n) / c
            new[n + 1] = x(n + 1) / c
            for l in range(2, n):
                new[n + l] = x(n + l) * (c * head(l) + tail(l)) / (c * whole)
        elif i == 1:
            new[n + 1] = c * x(n + 1)
        elif i == n:
            new[n] = c * x(n)
        else:
            left = x(i) * x(n + i)
            right = x(i + 1) * x(n + i - 1)
            ci = c * (left + right) / (c * left + right)
            new[i] = ci * x(i)
            new[n + i] = (c / ci) * x(n + i)
        for k in coords:
            out[f"e{i}:x{k}"] = new[k]
    return out


def catalog_variables(n: int, with_c: bool = True) -> list[str]:
    names = [f"x{k}" for k in range(2, 2 * n)]
    return (["c"] if with_c else []) + names
