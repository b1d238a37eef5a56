"""The positive geometric crystal V(A_n^(1)) on the V_1 chart.

Points are tuples of nonzero rationals x_2, ..., x_{2n-1}.  Three routes to
the structure maps live here, and the verification suites play them off
against each other:

* the generic Schubert-cell formulas for e_i^c, eps_i, gamma_i on a word
  Y_{i_1}(c_1) ... Y_{i_k}(c_k);
* the closed forms on V_1, including the affine node 0;
* e_0 defined by conjugating the y_n-scaling on V_2 with sigma_bar.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from tropcrystal.errors import SingularPoint
from tropcrystal.fundrep import (
    CartanData,
    build_V1,
    build_V2,
    cartan_matrix,
    check_index,
    check_rank,
    format_rational,
    parse_rational,
    v1_letters,
    v2_letters,
)

SUITES = ("axioms", "lemma41", "sigma-commute", "eq43")


@dataclass(frozen=True)
class TorusPoint:
    """A point of (C^x)^{2n-2} with exact rational coordinates.

    The same container holds x-chart points (read with :meth:`x`, indices
    2..2n-1) and y-chart points (read with :meth:`y`, indices 1..2n-2).
    """

    n: int
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        check_rank(self.n)
        coords = tuple(Fraction(v) for v in self.coords)
        if len(coords) != 2 * self.n - 2:
            raise ValueError(f"expected {2 * self.n - 2} coordinates for n={self.n}, got {len(coords)}")
        if any(v == 0 for v in coords):
            raise SingularPoint("torus coordinates must be nonzero")
        object.__setattr__(self, "coords", coords)

    def x(self, k: int) -> Fraction:
        # x_1 and x_{2n} stand for 1 at the ends of the generic formulas
        if k == 1 or k == 2 * self.n:
            return Fraction(1)
        if not 2 <= k <= 2 * self.n - 1:
            raise IndexError(f"x_{k} is not a coordinate for n={self.n}")
        return self.coords[k - 2]

    def y(self, k: int) -> Fraction:
        if k == 2 * self.n - 1:
            return Fraction(1)
        if not 1 <= k <= 2 * self.n - 2:
            raise IndexError(f"y_{k} is not a coordinate for n={self.n}")
        return self.coords[k - 1]

    @classmethod
    def from_x(cls, n: int, values: dict[int, Fraction]) -> TorusPoint:
        return cls(n, tuple(values[k] for k in range(2, 2 * n)))

    @classmethod
    def from_y(cls, n: int, values: dict[int, Fraction]) -> TorusPoint:
        return cls(n, tuple(values[k] for k in range(1, 2 * n - 1)))

    def x_dict(self) -> dict[int, Fraction]:
        return {k: self.coords[k - 2] for k in range(2, 2 * self.n)}

    def to_json(self) -> dict:
        return {"n": self.n, "x": [format_rational(v) for v in self.coords]}

    @classmethod
    def from_json(cls, data: dict) -> TorusPoint:
        return cls(int(data["n"]), tuple(parse_rational(v) for v in data["x"]))

    @classmethod
    def parse(cls, n: int, text: str) -> TorusPoint:
        return cls(n, tuple(parse_rational(t) for t in text.split(",")))


def _div(a: Fraction, b: Fraction) -> Fraction:
    if b == 0:
        raise SingularPoint("vanishing denominator")
    return a / b


# -- generic Schubert-cell formulas -----------------------------------------


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]
    cartan: CartanData

    def __post_init__(self):
        for k in self.letters:
            check_index(k, self.cartan.n)


def _terms(w: Word, cvec: Sequence[Fraction], i: int) -> dict[int, Fraction]:
    """m -> 1 / (c_1^{a_{i_1,i}} ... c_{m-1}^{a_{i_{m-1},i}} c_m) for i_m = i."""
    if len(cvec) != len(w.letters):
        raise ValueError("word and coordinate vector differ in length")
    out = {}
    prefix = Fraction(1)
    for m, (letter, cm) in enumerate(zip(w.letters, cvec)):
        if cm == 0:
            raise SingularPoint("word coordinates must be nonzero")
        if letter == i:
            out[m] = 1 / (prefix * cm)
        prefix *= Fraction(cm) ** w.cartan[letter, i]
    return out


def schubert_e(w: Word, cvec: Sequence[Fraction], i: int, c: Fraction) -> list[Fraction]:
    terms = _terms(w, cvec, i)
    out = []
    for j, cj in enumerate(cvec):
        num = sum((c * t if m <= j else t for m, t in terms.items()), Fraction(0))
        den = sum((c * t if m < j else t for m, t in terms.items()), Fraction(0))
        out.append(Fraction(cj) * _div(num, den))
    return out


def schubert_eps(w: Word, cvec: Sequence[Fraction], i: int) -> Fraction:
    return sum(_terms(w, cvec, i).values(), Fraction(0))


def schubert_gamma(w: Word, cvec: Sequence[Fraction], i: int) -> Fraction:
    _terms(w, cvec, i)  # validates
    return math.prod((Fraction(cm) ** w.cartan[k, i] for k, cm in zip(w.letters, cvec)), start=Fraction(1))


def v1_word(n: int) -> Word:
    return Word(tuple(k for k, _ in v1_letters(n)), cartan_matrix(n))


def v2_word(n: int) -> Word:
    return Word(tuple(k for k, _ in v2_letters(n)), cartan_matrix(n))


def v1_cvec(x: TorusPoint) -> list[Fraction]:
    return [x.x(idx) for _, idx in v1_letters(x.n)]


def v2_cvec(y: TorusPoint) -> list[Fraction]:
    return [y.y(idx) for _, idx in v2_letters(y.n)]


def schubert_e_v1(i: int, c: Fraction, x: TorusPoint) -> TorusPoint:
    """e_i^c on V_1 through the word formulas (i in 1..n)."""
    new = schubert_e(v1_word(x.n), v1_cvec(x), i, Fraction(c))
    return TorusPoint.from_x(x.n, {idx: v for (_, idx), v in zip(v1_letters(x.n), new)})


def schubert_e_v2(i: int, c: Fraction, y: TorusPoint) -> TorusPoint:
    """e-bar_i^c on V_2 through the word formulas (i in 0..n-1)."""
    new = schubert_e(v2_word(y.n), v2_cvec(y), i, Fraction(c))
    return TorusPoint.from_y(y.n, {idx: v for (_, idx), v in zip(v2_letters(y.n), new)})


# -- closed forms on V_1 -----------------------------------------------------


def _ratio_sum(x: TorusPoint, lo: int, hi: int) -> Fraction:
    """sum_{j=lo}^{hi} x_j / x_{n+j-1}."""
    n = x.n
    return sum((x.x(j) / x.x(n + j - 1) for j in range(lo, hi + 1)), Fraction(0))


def c_factor(i: int, c: Fraction, x: TorusPoint) -> Fraction:
    """The multiplier c_i of x_i in e_i^c for 2 <= i <= n-1."""
    n = x.n
    left = x.x(i) * x.x(n + i)
    right = x.x(i + 1) * x.x(n + i - 1)
    return _div(c * (left + right), c * left + right)


def geom_e(i: int, c: Fraction, x: TorusPoint) -> TorusPoint:
    n = x.n
    check_index(i, n)
    c = Fraction(c)
    if c == 0:
        raise SingularPoint("e_i^c needs c != 0")
    new = x.x_dict()
    if i == 0:
        whole = _ratio_sum(x, 2, n)
        for k in range(2, n):
            new[k] = x.x(k) * _div(whole, c * _ratio_sum(x, 2, k) + _ratio_sum(x, k + 1, n))
        new[n] = x.x(n) / c
        new[n + 1] = x.x(n + 1) / c
        for l in range(2, n):
            new[n + l] = x.x(n + l) * _div(c * _ratio_sum(x, 2, l) + _ratio_sum(x, l + 1, n), c * whole)
    elif i == 1:
        new[n + 1] = c * x.x(n + 1)
    elif i == n:
        new[n] = c * x.x(n)
    else:
        ci = c_factor(i, c, x)
        new[i] = ci * x.x(i)
        new[n + i] = c / ci * x.x(n + i)
    return TorusPoint.from_x(n, new)


def geom_gamma(i: int, x: TorusPoint) -> Fraction:
    n = x.n
    check_index(i, n)
    X = x.x
    if i == 0:
        return 1 / (X(n) * X(n + 1))
    if i == 1:
        return X(n + 1) ** 2 / (X(2) * X(n + 2))
    if i == n:
        return X(n) ** 2 / (X(n - 1) * X(2 * n - 1))
    return (X(i) * X(n + i)) ** 2 / (X(i - 1) * X(i + 1) * X(n + i - 1) * X(n + i + 1))


def geom_eps(i: int, x: TorusPoint) -> Fraction:
    n = x.n
    check_index(i, n)
    X = x.x
    if i == 0:
        return X(n + 1) * _ratio_sum(x, 2, n)
    if i == 1:
        return X(n + 2) / X(n + 1)
    if i == n:
        return X(2 * n - 1) / X(n)
    if i == n - 1:
        return 1 / X(2 * n - 1) + X(n) * X(2 * n - 2) / (X(n - 1) * X(2 * n - 1) ** 2)
    return X(n + i + 1) / X(n + i) + X(i + 1) * X(n + i - 1) * X(n + i + 1) / (X(i) * X(n + i) ** 2)


# -- sigma_bar and the affine node ------------------------------------------


def sigma_bar(x: TorusPoint) -> TorusPoint:
    """The y-coordinates with V_2(y) = V_1(x) / x_n."""
    n = x.n
    y: dict[int, Fraction] = {1: 1 / _nonzero(_ratio_sum(x, 2, n))}
    for k in range(2, n):
        y[k] = x.x(k) / _nonzero(_ratio_sum(x, k + 1, n))
    y[n] = 1 / x.x(n)
    for l in range(1, n - 1):
        y[n + l] = x.x(n + l) / x.x(n) * _ratio_sum(x, l + 1, n)
    return TorusPoint.from_y(n, y)


def _nonzero(v: Fraction) -> Fraction:
    if v == 0:
        raise SingularPoint("vanishing sum")
    return v


def sigma_bar_multiplier(x: TorusPoint) -> Fraction:
    """a(x) in V_2(sigma_bar x) = a(x) V_1(x)."""
    return 1 / x.x(x.n)


def sigma_bar_inv(y: TorusPoint) -> TorusPoint:
    n = y.n
    Y = y.y

    def partial(k: int) -> Fraction:  # y_1/y_n + ... + y_k/y_{n+k-1}
        return _nonzero(sum((Y(j) / Y(n + j - 1) for j in range(1, k + 1)), Fraction(0)))

    x: dict[int, Fraction] = {}
    for k in range(2, n):
        x[k] = Y(k) / Y(n) / partial(k)
    x[n] = 1 / Y(n)
    for l in range(1, n - 1):
        x[n + l] = Y(n + l) * partial(l)
    x[2 * n - 1] = partial(n - 1)
    return TorusPoint.from_x(n, x)


def bar_e0(c: Fraction, y: TorusPoint) -> TorusPoint:
    """e-bar_0^c on V_2: scale y_n by c."""
    values = {k: y.y(k) for k in range(1, 2 * y.n - 1)}
    values[y.n] *= Fraction(c)
    return TorusPoint.from_y(y.n, values)


def bar_gamma0(y: TorusPoint) -> Fraction:
    n = y.n
    return y.y(n) ** 2 / (y.y(1) * y.y(n + 1))


def bar_eps0(y: TorusPoint) -> Fraction:
    n = y.n
    return y.y(n + 1) / y.y(n)


def geom_e0_via_conjugation(c: Fraction, x: TorusPoint) -> TorusPoint:
    return sigma_bar_inv(bar_e0(c, sigma_bar(x)))


# -- verification suites -----------------------------------------------------


@dataclass
class GeomReport:
    suite: str
    n: int
    trials: int
    seed: int
    checks: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, identity: str, point: TorusPoint, **params) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(
                {
                    "identity": identity,
                    "point": [format_rational(v) for v in point.coords],
                    "params": {k: format_rational(v) if isinstance(v, (int, Fraction)) else v for k, v in params.items()},
                }
            )

    def merge(self, other: GeomReport) -> GeomReport:
        self.checks += other.checks
        self.failures.extend(other.failures)
        return self

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "checks": self.checks,
            "failures": self.failures,
        }


def random_positive(rng: random.Random, lo: int = 1, hi: int = 1000) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(lo, hi))


def random_point(n: int, rng: random.Random) -> TorusPoint:
    return TorusPoint(n, tuple(random_positive(rng) for _ in range(2 * n - 2)))


def _seeded_trials(n: int, trials: int, seed: int, extra: int) -> Iterable[tuple[TorusPoint, list[Fraction]]]:
    rng = random.Random(seed)
    for _ in range(trials):
        x = random_point(n, rng)
        yield x, [random_positive(rng) for _ in range(extra)]


def _check_axioms(report: GeomReport, x: TorusPoint, c1: Fraction, c2: Fraction) -> None:
    n = x.n
    a = cartan_matrix(n)
    e = geom_e
    idx = range(n + 1)
    w1, cv = v1_word(n), v1_cvec(x)
    for i in range(1, n + 1):
        report.check(schubert_e_v1(i, c1, x) == e(i, c1, x), f"word-e[i={i}]", x, c=c1)
        report.check(schubert_gamma(w1, cv, i) == geom_gamma(i, x), f"word-gamma[i={i}]", x)
        report.check(schubert_eps(w1, cv, i) == geom_eps(i, x), f"word-eps[i={i}]", x)
    for i in idx:
        report.check(e(i, c1, e(i, c2, x)) == e(i, c1 * c2, x), f"action[i={i}]", x, c1=c1, c2=c2)
        report.check(e(i, 1, x) == x, f"unit[i={i}]", x)
        moved = e(i, c1, x)
        for j in idx:
            report.check(
                geom_gamma(j, moved) == c1 ** a[i, j] * geom_gamma(j, x), f"gamma[i={i},j={j}]", x, c=c1
            )
        report.check(geom_eps(i, moved) == geom_eps(i, x) / c1, f"eps-scale[i={i}]", x, c=c1)
        for j in idx:
            if i == j:
                continue
            if a[i, j] == 0 and a[j, i] == 0:
                report.check(
                    e(i, c1, e(j, c2, x)) == e(j, c2, e(i, c1, x)), f"commute[i={i},j={j}]", x, c1=c1, c2=c2
                )
                report.check(geom_eps(i, e(j, c1, x)) == geom_eps(i, x), f"eps-invariant[i={i},j={j}]", x, c=c1)
            elif a[i, j] == -1 and a[j, i] == -1 and i < j:
                lhs = e(i, c1, e(j, c1 * c2, e(i, c2, x)))
                rhs = e(j, c2, e(i, c1 * c2, e(j, c1, x)))
                report.check(lhs == rhs, f"verma[i={i},j={j}]", x, c1=c1, c2=c2)


def _check_lemma41(report: GeomReport, x: TorusPoint) -> None:
    n = x.n
    y = sigma_bar(x)
    lhs = build_V2(n, list(y.coords))
    rhs = build_V1(n, list(x.coords)).scale(sigma_bar_multiplier(x))
    report.check(lhs == rhs, "V2(sigma x) = a(x) V1(x)", x)
    report.check(sigma_bar_multiplier(x) == 1 / x.x(n), "a(x) = 1/x_n", x)
    report.check(sigma_bar_inv(y) == x, "sigma_inv o sigma = id", x)
    report.check(sigma_bar(sigma_bar_inv(x)) == x, "sigma o sigma_inv = id", x)
    report.check(bar_gamma0(y) == geom_gamma(0, x), "gamma0 = gamma-bar0 o sigma", x)
    report.check(bar_eps0(y) == geom_eps(0, x), "eps0 = eps-bar0 o sigma", x)
    w2 = v2_word(n)
    report.check(schubert_gamma(w2, v2_cvec(y), 0) == bar_gamma0(y), "gamma-bar0 word form", x)
    report.check(schubert_eps(w2, v2_cvec(y), 0) == bar_eps0(y), "eps-bar0 word form", x)


def _check_sigma_commute(report: GeomReport, x: TorusPoint, c: Fraction) -> None:
    n = x.n
    for i in range(1, n):
        lhs = sigma_bar(geom_e(i, c, x))
        rhs = schubert_e_v2(i, c, sigma_bar(x))
        report.check(lhs == rhs, f"sigma o e_{i} = e-bar_{i} o sigma", x, c=c)
    report.check(
        geom_e0_via_conjugation(c, x) == geom_e(0, c, x), "e0 closed form = conjugation", x, c=c
    )
    report.check(schubert_e_v2(0, c, sigma_bar(x)) == bar_e0(c, sigma_bar(x)), "e-bar0 word form", x, c=c)


def _check_eq43(report: GeomReport, x: TorusPoint, c: Fraction) -> None:
    n = x.n
    if c == 1:
        return
    moved = geom_e(0, c, x)
    whole = _ratio_sum(x, 2, n)

    def shifted(k: int) -> Fraction:  # c X_k + X~_k
        return c * _ratio_sum(x, 2, k) + _ratio_sum(x, k + 1, n)

    for k in range(3, n):
        lhs = moved.x(k) / moved.x(k + n - 1)
        rhs = c * whole**2 / (c - 1) * (1 / shifted(k - 1) - 1 / shifted(k))
        report.check(lhs == rhs, f"eq43[k={k}]", x, c=c)


def run_suite(suite: str, n: int, trials: int, seed: int) -> GeomReport:
    """Run one named identity suite at ``trials`` seeded random points."""
    check_rank(n)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    report = GeomReport(suite, n, trials, seed)
    if suite == "axioms":
        for x, (c1, c2) in _seeded_trials(n, trials, seed, 2):
            _check_axioms(report, x, c1, c2)
    elif suite == "lemma41":
        for x, _ in _seeded_trials(n, trials, seed, 0):
            _check_lemma41(report, x)
    elif suite == "sigma-commute":
        for x, (c,) in _seeded_trials(n, trials, seed, 1):
            _check_sigma_commute(report, x, c)
    elif suite == "eq43":
        for x, (c,) in _seeded_trials(n, trials, seed, 1):
            _check_eq43(report, x, c if c != 1 else Fraction(2))
    else:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    return report


def verify_axioms(n: int, trials: int, seed: int, suites: Sequence[str] = SUITES) -> GeomReport:
    """All geometric-crystal identity suites merged into one report."""
    report = GeomReport("all" if tuple(suites) == SUITES else "+".join(suites), n, trials, seed)
    for offset, suite in enumerate(suites):
        report.merge(run_suite(suite, n, trials, seed + offset))
    return report
