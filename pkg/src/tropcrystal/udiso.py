"""The ultra-discretized crystal X = UD(V) on Z^{2n-2} and the map Omega.

Points are integer tuples x_2, ..., x_{2n-1}; as on the geometric side,
x_1 and x_{2n} read as 0 (the tropical image of the constant 1) wherever a
generic formula reaches past the ends of the range.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from tropcrystal import pcrystal
from tropcrystal.expr import catalog, catalog_variables, compile_trop, tropicalize
from tropcrystal.fundrep import check_index, check_rank
from tropcrystal.pcrystal import INF, CrystalElt


@dataclass(frozen=True)
class LatticePoint:
    n: int
    coords: tuple[int, ...]

    def __post_init__(self):
        check_rank(self.n)
        coords = tuple(int(v) for v in self.coords)
        if len(coords) != 2 * self.n - 2:
            raise ValueError(f"expected {2 * self.n - 2} coordinates for n={self.n}, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    def x(self, k: int) -> int:
        if k == 1 or k == 2 * self.n:
            return 0
        if not 2 <= k <= 2 * self.n - 1:
            raise IndexError(f"x_{k} is not a coordinate for n={self.n}")
        return self.coords[k - 2]

    def beta(self, k: int) -> int:
        """beta_k = x_k - x_{n+k-1}, 2 <= k <= n."""
        return self.x(k) - self.x(self.n + k - 1)

    def shifted(self, changes: dict[int, int]) -> LatticePoint:
        coords = list(self.coords)
        for k, d in changes.items():
            coords[k - 2] += d
        return LatticePoint(self.n, tuple(coords))

    def to_json(self) -> dict:
        return {"n": self.n, "x": list(self.coords)}

    @classmethod
    def from_json(cls, data: dict) -> LatticePoint:
        return cls(int(data["n"]), tuple(data["x"]))

    @classmethod
    def parse(cls, n: int, text: str) -> LatticePoint:
        return cls(n, tuple(int(t) for t in text.split(",")))


def ud_wt(i: int, p: LatticePoint) -> int:
    n = p.n
    check_index(i, n)
    x = p.x
    if i == 0:
        return -x(n) - x(n + 1)
    if i == 1:
        return -x(2) + 2 * x(n + 1) - x(n + 2)
    if i == n:
        return -x(n - 1) + 2 * x(n) - x(2 * n - 1)
    if i == 2:
        return 2 * x(2) - x(3) - x(n + 1) + 2 * x(n + 2) - x(n + 3)
    return -x(i - 1) + 2 * x(i) - x(i + 1) - x(n + i - 1) + 2 * x(n + i) - x(n + i + 1)


def ud_eps(i: int, p: LatticePoint) -> int:
    n = p.n
    check_index(i, n)
    x = p.x
    if i == 0:
        return x(n + 1) + max(p.beta(k) for k in range(2, n + 1))
    if i == 1:
        return -x(n + 1) + x(n + 2)
    if i == n:
        return -x(n) + x(2 * n - 1)
    if i == n - 1:
        return max(-x(2 * n - 1), -x(n - 1) + x(n) + x(2 * n - 2) - 2 * x(2 * n - 1))
    return max(x(n + i + 1) - x(n + i), -x(i) + x(i + 1) + x(n + i - 1) - 2 * x(n + i) + x(n + i + 1))


def ud_phi(i: int, p: LatticePoint) -> int:
    return ud_wt(i, p) + ud_eps(i, p)


def ud_e(i: int, c: int, p: LatticePoint) -> LatticePoint:
    """Tropical image of e_i^c; c = 1 gives e-tilde_i and c = -1 gives f-tilde_i."""
    n = p.n
    check_index(i, n)
    x = p.x
    if i == 0:
        betas = {j: p.beta(j) for j in range(2, n + 1)}
        top = max(betas.values())

        def big_c(k: int) -> int:
            below = max(c + betas[j] for j in range(2, k + 1))
            above = max(betas[j] for j in range(k + 1, n + 1))
            return top - max(below, above)

        changes = {n: -c, n + 1: -c}
        for k in range(2, n):
            ck = big_c(k)
            changes[k] = ck
            changes[n + k] = -c - ck
        return p.shifted(changes)
    if i == 1:
        return p.shifted({n + 1: c})
    if i == n:
        return p.shifted({n: c})
    left = x(i) + x(n + i)
    right = x(i + 1) + x(n + i - 1)
    cbar = c + max(left, right) - max(c + left, right)
    return p.shifted({i: cbar, n + i: c - cbar})


def phi_condition(p: LatticePoint, j: int) -> bool:
    """beta_2, ..., beta_{j-1} <= beta_j > beta_{j+1}, ..., beta_n."""
    bj = p.beta(j)
    return all(p.beta(k) <= bj for k in range(2, j)) and all(bj > p.beta(k) for k in range(j + 1, p.n + 1))


def ud_f_tilde(i: int, p: LatticePoint) -> LatticePoint:
    """f-tilde_i from the explicit piecewise-linear displays."""
    n = p.n
    check_index(i, n)
    if i == 0:
        hits = [j for j in range(2, n + 1) if phi_condition(p, j)]
        assert len(hits) == 1, f"expected a unique j, got {hits} at {p}"
        j = hits[0]
        betas = [p.beta(k) for k in range(2, n + 1)]
        assert j == 2 + max(k for k, v in enumerate(betas) if v == max(betas))
        return p.shifted({k: 1 for k in range(j, n + j)})
    if i == 1:
        return p.shifted({n + 1: -1})
    if i == n:
        return p.shifted({n: -1})
    if p.beta(i) > p.beta(i + 1):
        return p.shifted({n + i: -1})
    return p.shifted({i: -1})


def ud_e_tilde(i: int, p: LatticePoint) -> LatticePoint:
    return ud_e(i, 1, p)


# -- Omega --------------------------------------------------------------------


def omega(p: LatticePoint) -> CrystalElt:
    n = p.n
    x = p.x
    b1 = [x(n + 1)] + [x(n + i) - x(n + i - 1) for i in range(2, n)] + [-x(2 * n - 1)]
    b2 = [x(2)] + [x(i) - x(i - 1) for i in range(3, n + 1)] + [-x(n)]
    return CrystalElt(n, INF, tuple(b1), tuple(b2))


def omega_inv(b: CrystalElt) -> LatticePoint:
    if not b.is_limit:
        raise ValueError("omega_inv is defined on B^(2,inf) only")
    if not b.is_valid():
        raise ValueError("rows of a B^(2,inf) element must sum to zero")
    n = b.n
    values = {}
    for i in range(2, n + 1):
        values[i] = sum(b.b(2, k) for k in range(2, i + 1))
    for i in range(1, n):
        values[n + i] = sum(b.b(1, k) for k in range(1, i + 1))
    return LatticePoint(n, tuple(values[k] for k in range(2, 2 * n)))


# -- regions and reports ---------------------------------------------------------


@dataclass(frozen=True)
class Region:
    """Either the full box [-box, box]^{2n-2} or ``trials`` seeded samples."""

    box: int | None = None
    trials: int | None = None
    seed: int | None = None
    radius: int = 50

    def __post_init__(self):
        if (self.box is None) == (self.trials is None):
            raise ValueError("give exactly one of box or trials")
        if self.trials is not None and self.seed is None:
            raise ValueError("sampled regions need an explicit seed")

    def points(self, n: int) -> Iterator[LatticePoint]:
        dim = 2 * n - 2
        if self.box is not None:
            span = range(-self.box, self.box + 1)
            for coords in itertools.product(span, repeat=dim):
                yield LatticePoint(n, coords)
        else:
            rng = random.Random(self.seed)
            for _ in range(self.trials):
                yield LatticePoint(n, tuple(rng.randint(-self.radius, self.radius) for _ in range(dim)))

    def to_json(self) -> dict:
        if self.box is not None:
            return {"box": self.box}
        return {"trials": self.trials, "seed": self.seed, "radius": self.radius}


def default_region(n: int) -> Region:
    if n == 2:
        return Region(box=4)
    if n == 3:
        return Region(box=3)
    return Region(trials=10_000, seed=0)


@dataclass
class PLCrystalReport:
    suite: str
    n: int
    region: Region
    checks: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, identity: str, p: LatticePoint, **params) -> None:
        self.checks += 1
        if not ok:
            self.failures.append({"identity": identity, "point": list(p.coords), "params": params})

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "n": self.n,
            "region": self.region.to_json(),
            "checks": self.checks,
            "failures": self.failures,
        }


def verify_iso(n: int, region: Region | None = None) -> PLCrystalReport:
    """Omega commutes with every e-tilde_i, f-tilde_i and carries wt_i, eps_i."""
    check_rank(n)
    region = region or default_region(n)
    report = PLCrystalReport("iso", n, region)
    for p in region.points(n):
        b = omega(p)
        report.check(omega_inv(b) == p, "omega_inv o omega = id", p)
        for i in range(n + 1):
            report.check(omega(ud_f_tilde(i, p)) == pcrystal.f_op(i, b), f"omega f[i={i}]", p)
            report.check(omega(ud_e_tilde(i, p)) == pcrystal.e_op(i, b), f"omega e[i={i}]", p)
            report.check(pcrystal.wt(i, b) == ud_wt(i, p), f"wt[i={i}]", p)
            report.check(pcrystal.eps(i, b) == ud_eps(i, p), f"eps[i={i}]", p)
    return report


def verify_ud_mechanical(n: int, region: Region | None = None, cs: Sequence[int] = (-2, -1, 0, 1, 2)) -> PLCrystalReport:
    """Tropicalized geometric formulas against the hand-written tropical ones."""
    check_rank(n)
    region = region or default_region(n)
    report = PLCrystalReport("mechanical", n, region)
    names = catalog_variables(n)
    cat = catalog(n)
    compiled = {key: compile_trop(tropicalize(e), names) for key, e in cat.items()}
    coords = range(2, 2 * n)
    actions = {i: [(k, compiled[f"e{i}:x{k}"]) for k in coords] for i in range(n + 1)}
    for p in region.points(n):
        xs = p.coords
        for i in range(n + 1):
            report.check(compiled[f"gamma{i}"](0, *xs) == ud_wt(i, p), f"wt[i={i}]", p)
            report.check(compiled[f"eps{i}"](0, *xs) == ud_eps(i, p), f"eps[i={i}]", p)
            for c in cs:
                moved = ud_e(i, c, p)
                ok = all(fn(c, *xs) == moved.x(k) for k, fn in actions[i])
                report.check(ok, f"e[i={i}]", p, c=c)
    return report
