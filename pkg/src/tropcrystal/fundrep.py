"""Cartan data of A_n^(1) and the fundamental representation W(varpi_2).

The basis of W(varpi_2) is the set of pairs (i, j) with 1 <= i < j <= n+1.
Vectors are sparse maps from basis labels to scalars.  The scalar type is
whatever exact field the caller supplies: ``fractions.Fraction`` for numeric
work, or :class:`tropcrystal.expr.PosExpr` for building the subtraction-free
coefficient formulas symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Iterator, Mapping, Sequence

from tropcrystal.errors import InvalidRank, SingularPoint

Label = tuple[int, int]


def check_rank(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise InvalidRank(f"rank must be an integer >= 2, got {n!r}")


def check_index(k: int, n: int) -> None:
    if not isinstance(k, int) or not 0 <= k <= n:
        raise IndexError(f"Dynkin index must lie in 0..{n}, got {k!r}")


# -- rationals on the wire -------------------------------------------------


def format_rational(q: Fraction | int) -> str:
    """Canonical ``"p/q"`` text, always with an explicit denominator."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str | int | Fraction) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    return Fraction(text.strip())


# -- Cartan data -------------------------------------------------------------


@dataclass(frozen=True)
class CartanData:
    n: int
    a: tuple[tuple[int, ...], ...]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.a[i][j]


def cartan_matrix(n: int) -> CartanData:
    """Generalized Cartan matrix of A_n^(1), indexed 0..n."""
    check_rank(n)
    size = n + 1
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            if i == j:
                row.append(2)
            elif (i - j) % size in (1, size - 1):
                row.append(-1)
            else:
                row.append(0)
        rows.append(tuple(row))
    return CartanData(n, tuple(rows))


# -- the module W(varpi_2) ---------------------------------------------------


def basis_labels(n: int) -> list[Label]:
    check_rank(n)
    return [(i, j) for i in range(1, n + 2) for j in range(i + 1, n + 2)]


def _valid_label(label: Label, n: int) -> bool:
    i, j = label
    return 1 <= i < j <= n + 1


def weight_pairing(label: Label, k: int, n: int) -> int:
    """<wt(i, j), alpha_k^vee>, reading fundamental-weight indices mod n+1."""
    check_index(k, n)
    i, j = label
    size = n + 1

    def delta(a: int) -> int:
        return 1 if a % size == k else 0

    return delta(i) - delta(i - 1) + delta(j) - delta(j - 1)


def f_label(k: int, label: Label, n: int) -> Label | None:
    """Image of a basis vector under f_k, or None when it is killed."""
    check_index(k, n)
    i, j = label
    if k == 0:
        if j == n + 1 and i != 1:
            return (1, i)
        return None
    if i == k < j - 1:
        return (i + 1, j)
    if j == k:
        return (i, j + 1)
    return None


def e_label(k: int, label: Label, n: int) -> Label | None:
    check_index(k, n)
    i, j = label
    if k == 0:
        # transpose of f_0; the printed side condition "i != 1" is vacuous here
        if i == 1 and 2 <= j <= n:
            return (j, n + 1)
        return None
    if i == k + 1:
        return (i - 1, j)
    if i < j - 1 == k:
        return (i, j - 1)
    return None


def _is_zero(value: Any) -> bool:
    return isinstance(value, (int, Fraction)) and value == 0


class FundVector:
    """Immutable sparse vector in W(varpi_2); zero coefficients are dropped."""

    __slots__ = ("n", "_coeffs")

    def __init__(self, n: int, coeffs: Mapping[Label, Any] | Iterable[tuple[Label, Any]] = ()):
        check_rank(n)
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        store: dict[Label, Any] = {}
        for label, value in items:
            label = (int(label[0]), int(label[1]))
            if not _valid_label(label, n):
                raise ValueError(f"basis label {label} out of range for n={n}")
            if label in store:
                value = store[label] + value
            store[label] = value
        self.n = n
        self._coeffs = {lab: v for lab, v in sorted(store.items()) if not _is_zero(v)}

    @classmethod
    def unit(cls, n: int, label: Label) -> FundVector:
        return cls(n, {label: Fraction(1)})

    def __getitem__(self, label: Label) -> Any:
        return self._coeffs.get(label, 0)

    def __iter__(self) -> Iterator[Label]:
        return iter(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def support(self) -> list[Label]:
        return list(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FundVector):
            return NotImplemented
        return self.n == other.n and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.n, tuple(self._coeffs.items())))

    def __add__(self, other: FundVector) -> FundVector:
        if self.n != other.n:
            raise ValueError("rank mismatch")
        return FundVector(self.n, list(self.items()) + list(other.items()))

    def scale(self, s: Any) -> FundVector:
        return FundVector(self.n, {lab: v * s for lab, v in self.items()})

    def __repr__(self) -> str:
        body = " + ".join(f"{v}*{lab}" for lab, v in self.items()) or "0"
        return f"FundVector(n={self.n}: {body})"

    # JSON form: {"n": int, "coeffs": [{"i", "j", "value"}, ...]}
    def to_json(self) -> dict:
        out = []
        for (i, j), v in self.items():
            text = format_rational(v) if isinstance(v, (int, Fraction)) else str(v)
            out.append({"i": i, "j": j, "value": text})
        return {"n": self.n, "coeffs": out}

    @classmethod
    def from_json(cls, data: Mapping) -> FundVector:
        from tropcrystal.expr import parse_pos  # deferred: expr builds on fundrep

        coeffs = []
        for entry in data["coeffs"]:
            raw = entry["value"]
            try:
                value: Any = parse_rational(raw)
            except (ValueError, ZeroDivisionError):
                value = parse_pos(raw)
            coeffs.append(((entry["i"], entry["j"]), value))
        return cls(int(data["n"]), coeffs)


def apply_f(k: int, v: FundVector) -> FundVector:
    return FundVector(v.n, [(lab2, c) for lab, c in v.items() if (lab2 := f_label(k, lab, v.n))])


def apply_e(k: int, v: FundVector) -> FundVector:
    return FundVector(v.n, [(lab2, c) for lab, c in v.items() if (lab2 := e_label(k, lab, v.n))])


def _power_scale(value: Any, c: Any, p: int) -> Any:
    for _ in range(p):
        value = value * c
    for _ in range(-p):
        value = value / c
    return value


def apply_Y(k: int, c: Any, v: FundVector) -> FundVector:
    """Y_k(c) = (1 + f_k / c) alpha_k^vee(c), using f_k^2 = 0 on W(varpi_2)."""
    check_index(k, v.n)
    if _is_zero(c):
        raise SingularPoint(f"Y_{k}(c) needs c != 0")
    scaled = FundVector(v.n, {lab: _power_scale(val, c, weight_pairing(lab, k, v.n)) for lab, val in v.items()})
    lowered = apply_f(k, scaled)
    return scaled + FundVector(v.n, {lab: val / c for lab, val in lowered.items()})


# -- the two charts V_1, V_2 -------------------------------------------------


def v1_letters(n: int) -> list[tuple[int, int]]:
    """(Dynkin index, x-coordinate index) of each Y factor of V_1, left to right."""
    first = [(k, n + k) for k in range(n - 1, 0, -1)]
    second = [(k, k) for k in range(n, 1, -1)]
    return first + second


def v2_letters(n: int) -> list[tuple[int, int]]:
    """(Dynkin index, y-coordinate index) of each Y factor of V_2, left to right."""
    first = [(k, n + k) for k in range(n - 2, -1, -1)]
    second = [(k, k) for k in range(n - 1, 0, -1)]
    return first + second


def _coord_map(n: int, coords: Sequence[Any], offset: int) -> dict[int, Any]:
    if len(coords) != 2 * n - 2:
        raise ValueError(f"expected {2 * n - 2} coordinates for n={n}, got {len(coords)}")
    return {offset + t: value for t, value in enumerate(coords)}


def build_V1(n: int, x: Sequence[Any]) -> FundVector:
    """Apply the Y-word of V_1 to (1,2); ``x`` lists x_2 .. x_{2n-1}."""
    check_rank(n)
    xs = _coord_map(n, x, 2)
    v = FundVector.unit(n, (1, 2))
    for k, idx in reversed(v1_letters(n)):
        v = apply_Y(k, xs[idx], v)
    return v


def build_V2(n: int, y: Sequence[Any]) -> FundVector:
    """Apply the Y-word of V_2 to (1,n+1); ``y`` lists y_1 .. y_{2n-2}."""
    check_rank(n)
    ys = _coord_map(n, y, 1)
    v = FundVector.unit(n, (1, n + 1))
    for k, idx in reversed(v2_letters(n)):
        v = apply_Y(k, ys[idx], v)
    return v


def _one_like(value: Any) -> Any:
    if isinstance(value, (int, Fraction)):
        return Fraction(1)
    from tropcrystal.expr import Const

    return Const(Fraction(1))


def _chain(v: dict[int, Any], head: int, lo: int, hi: int, pivot: int, n: int) -> Any:
    """v_head + sum_{t=lo}^{hi} v_t * v_pivot / v_{n+t-1}."""
    total = v[head]
    for t in range(lo, hi + 1):
        total = total + v[t] * v[pivot] / v[n + t - 1]
    return total


def closed_form_X(n: int, x: Sequence[Any]) -> dict[Label, Any]:
    check_rank(n)
    xs = _coord_map(n, x, 2)
    one = _one_like(x[0])
    out: dict[Label, Any] = {}
    for i, j in basis_labels(n):
        if i == n:
            out[(i, j)] = one
        elif j == n + 1:
            out[(i, j)] = xs[n + i]
        elif j == n:
            out[(i, j)] = _chain(xs, i + 1, i + 2, n, n + i, n)
        else:
            out[(i, j)] = xs[n + j] * _chain(xs, i + 1, i + 2, j, n + i, n)
    return out


def closed_form_Y(n: int, y: Sequence[Any]) -> dict[Label, Any]:
    check_rank(n)
    ys = _coord_map(n, y, 1)
    one = _one_like(y[0])
    out: dict[Label, Any] = {}
    for i, j in basis_labels(n):
        if i == n:
            out[(i, j)] = ys[n]
        elif i == n - 1 and j == n:
            out[(i, j)] = one
        elif i == n - 1:
            out[(i, j)] = _chain(ys, 1, 2, n - 1, n, n)
        elif j == n + 1:
            out[(i, j)] = ys[n + i] * _chain(ys, 1, 2, i, n, n)
        elif j == n:
            out[(i, j)] = ys[n + i]
        elif j == n - 1:
            out[(i, j)] = _chain(ys, i + 1, i + 2, n - 1, n + i, n)
        else:
            out[(i, j)] = ys[n + j] * _chain(ys, i + 1, i + 2, j, n + i, n)
    return out
