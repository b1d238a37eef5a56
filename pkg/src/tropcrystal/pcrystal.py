"""The A_n^(1) perfect crystals B^{2,l} and their limit B^{2,inf}.

An element is a two-row integer array; row 1 holds b_{1,1..n} and row 2
holds b_{2,2..n+1}.  Finite-level elements are column-strict counts of a
2 x l rectangular tableau.  Limit elements have zero row sums and arbitrary
integer entries.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Sequence

from tropcrystal.errors import ResourceCap
from tropcrystal.fundrep import cartan_matrix, check_index, check_rank

INF = "inf"
DEFAULT_ENUM_CAP = 10**6


@dataclass(frozen=True, order=True)
class CrystalElt:
    n: int
    level: int | str  # positive int, or INF for B^{2,inf}
    b1: tuple[int, ...]
    b2: tuple[int, ...]

    def __post_init__(self):
        check_rank(self.n)
        object.__setattr__(self, "b1", tuple(int(v) for v in self.b1))
        object.__setattr__(self, "b2", tuple(int(v) for v in self.b2))
        if len(self.b1) != self.n or len(self.b2) != self.n:
            raise ValueError(f"both rows need {self.n} entries")
        if self.level != INF and not (isinstance(self.level, int) and self.level >= 1):
            raise ValueError(f"level must be a positive integer or {INF!r}, got {self.level!r}")

    @property
    def is_limit(self) -> bool:
        return self.level == INF

    def b(self, j: int, i: int) -> int:
        """Entry b_{ji}: row j in {1, 2}, columns 1..n for row 1 and 2..n+1 for row 2."""
        if j == 1 and 1 <= i <= self.n:
            return self.b1[i - 1]
        if j == 2 and 2 <= i <= self.n + 1:
            return self.b2[i - 2]
        raise IndexError(f"b_{j},{i} out of range")

    def is_valid(self) -> bool:
        l = 0 if self.is_limit else self.level
        if sum(self.b1) != l or sum(self.b2) != l:
            return False
        if self.is_limit:
            return True
        if min(self.b1 + self.b2) < 0:
            return False
        top = bottom = 0
        for t in range(self.n):
            top += self.b1[t]
            bottom += self.b2[t]
            if top < bottom:
                return False
        return True

    def moved(self, changes: dict[tuple[int, int], int]) -> CrystalElt:
        b1, b2 = list(self.b1), list(self.b2)
        for (j, i), d in changes.items():
            if j == 1:
                b1[i - 1] += d
            else:
                b2[i - 2] += d
        return CrystalElt(self.n, self.level, tuple(b1), tuple(b2))

    def to_json(self) -> dict:
        return {"n": self.n, "level": self.level, "b1": list(self.b1), "b2": list(self.b2)}

    @classmethod
    def from_json(cls, data: dict) -> CrystalElt:
        level = data["level"]
        return cls(int(data["n"]), level if level == INF else int(level), tuple(data["b1"]), tuple(data["b2"]))


def b_infinity(n: int) -> CrystalElt:
    return CrystalElt(n, INF, (0,) * n, (0,) * n)


# -- the 0-node bookkeeping ----------------------------------------------------


def z_values(b: CrystalElt) -> dict[int, int]:
    """z_i = b_{1i} - b_{2,i+1} for 2 <= i <= n-1."""
    return {i: b.b(1, i) - b.b(2, i + 1) for i in range(2, b.n)}


def condition_F(b: CrystalElt, m: int) -> bool:
    z = z_values(b)
    n = b.n
    left = all(sum(z[t] for t in range(k, m)) <= 0 for k in range(2, m))
    right = all(sum(z[t] for t in range(m, k + 1)) > 0 for k in range(m, n))
    return left and right


def condition_E(b: CrystalElt, m: int) -> bool:
    z = z_values(b)
    n = b.n
    left = all(sum(z[t] for t in range(k, m)) < 0 for k in range(2, m))
    right = all(sum(z[t] for t in range(m, k + 1)) >= 0 for k in range(m, n))
    return left and right


def _unique_m(b: CrystalElt, cond) -> int:
    hits = [m for m in range(2, b.n + 1) if cond(b, m)]
    assert len(hits) == 1, f"expected exactly one m, got {hits} for {b}"
    return hits[0]


def delta_m(b: CrystalElt, m: int) -> int:
    return sum(b.b(1, i) for i in range(2, m)) + sum(b.b(2, i) for i in range(m + 1, b.n + 1))


def delta(b: CrystalElt) -> int:
    return min(delta_m(b, m) for m in range(2, b.n + 1))


# -- Kashiwara operators ---------------------------------------------------------


def _finish(b: CrystalElt, changes: dict[tuple[int, int], int]) -> CrystalElt | None:
    out = b.moved(changes)
    if not out.is_limit and not out.is_valid():
        return None
    return out


def f_op(k: int, b: CrystalElt) -> CrystalElt | None:
    n = b.n
    check_index(k, n)
    if k == 0:
        m = _unique_m(b, condition_F)
        return _finish(b, {(1, 1): 1, (1, m): -1, (2, m): 1, (2, n + 1): -1})
    if k == 1:
        return _finish(b, {(1, 1): -1, (1, 2): 1})
    if k == n:
        return _finish(b, {(2, n): -1, (2, n + 1): 1})
    if b.b(1, k) > b.b(2, k + 1):
        return _finish(b, {(1, k): -1, (1, k + 1): 1})
    return _finish(b, {(2, k): -1, (2, k + 1): 1})


def e_op(k: int, b: CrystalElt) -> CrystalElt | None:
    n = b.n
    check_index(k, n)
    if k == 0:
        m = _unique_m(b, condition_E)
        return _finish(b, {(1, 1): -1, (1, m): 1, (2, m): -1, (2, n + 1): 1})
    if k == 1:
        return _finish(b, {(1, 1): 1, (1, 2): -1})
    if k == n:
        return _finish(b, {(2, n): 1, (2, n + 1): -1})
    if b.b(1, k) >= b.b(2, k + 1):
        return _finish(b, {(1, k): 1, (1, k + 1): -1})
    return _finish(b, {(2, k): 1, (2, k + 1): -1})


def _level(b: CrystalElt) -> int:
    return 0 if b.is_limit else b.level


def eps(k: int, b: CrystalElt) -> int:
    n = b.n
    check_index(k, n)
    if k == 0:
        return _level(b) - b.b(2, n + 1) - delta(b)
    if k == 1:
        return b.b(1, 2)
    if k == n:
        return b.b(2, n + 1) - b.b(1, n)
    return b.b(1, k + 1) + max(b.b(2, k + 1) - b.b(1, k), 0)


def phi(k: int, b: CrystalElt) -> int:
    n = b.n
    check_index(k, n)
    if k == 0:
        return _level(b) - b.b(1, 1) - delta(b)
    if k == 1:
        return b.b(1, 1) - b.b(2, 2)
    if k == n:
        return b.b(2, n)
    return b.b(2, k) + max(b.b(1, k) - b.b(2, k + 1), 0)


def wt(k: int, b: CrystalElt) -> int:
    """wt_k from the closed list; equals phi - eps."""
    n = b.n
    check_index(k, n)
    if k == 0:
        return b.b(2, n + 1) - b.b(1, 1)
    if k == 1:
        return b.b(1, 1) - b.b(1, 2) - b.b(2, 2)
    if k == n:
        return b.b(1, n) + b.b(2, n) - b.b(2, n + 1)
    return (b.b(1, k) - b.b(1, k + 1)) + (b.b(2, k) - b.b(2, k + 1))


# -- enumeration and graphs --------------------------------------------------------


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` parts, lexicographic."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def enumerate_crystal(n: int, l: int, cap: int = DEFAULT_ENUM_CAP) -> list[CrystalElt]:
    """All elements of B^{2,l}, sorted lexicographically on (b1, b2)."""
    check_rank(n)
    if not isinstance(l, int) or l < 1:
        raise ValueError(f"level must be a positive integer, got {l!r}")
    out = []
    rows = list(_compositions(l, n))
    for b1, b2 in itertools.product(rows, rows):
        elt = CrystalElt(n, l, b1, b2)
        if elt.is_valid():
            out.append(elt)
            if len(out) > cap:
                raise ResourceCap(f"B^(2,{l}) for n={n} has more than {cap} elements")
    return out


@dataclass
class CrystalGraph:
    nodes: list[CrystalElt]
    edges: list[tuple[int, int, int]]  # (source index, target index, color)

    def to_json(self) -> dict:
        return {
            "nodes": [b.to_json() for b in self.nodes],
            "edges": [{"source": s, "target": t, "color": i} for s, t, i in self.edges],
        }

    @classmethod
    def from_json(cls, data: dict) -> CrystalGraph:
        nodes = [CrystalElt.from_json(d) for d in data["nodes"]]
        edges = [(e["source"], e["target"], e["color"]) for e in data["edges"]]
        return cls(nodes, edges)

    def to_dot(self) -> str:
        lines = ["digraph crystal {"]
        for idx, b in enumerate(self.nodes):
            label = json.dumps(b.to_json(), separators=(",", ":")).replace('"', '\\"')
            lines.append(f'  b{idx} [label="{label}"];')
        for s, t, i in self.edges:
            lines.append(f"  b{s} -> b{t} [label={i}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def crystal_graph(n: int, l: int, cap: int = DEFAULT_ENUM_CAP) -> CrystalGraph:
    nodes = enumerate_crystal(n, l, cap)
    where = {b: idx for idx, b in enumerate(nodes)}
    edges = []
    for idx, b in enumerate(nodes):
        for k in range(n + 1):
            target = f_op(k, b)
            if target is not None:
                edges.append((idx, where[target], k))
    return CrystalGraph(nodes, edges)


def graph_export(n: int, l: int, fmt: str = "dot", cap: int = DEFAULT_ENUM_CAP) -> str:
    graph = crystal_graph(n, l, cap)
    if fmt == "dot":
        return graph.to_dot()
    if fmt == "json":
        return json.dumps(graph.to_json(), indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


# -- verification ----------------------------------------------------------------


@dataclass
class CrystalReport:
    suite: str
    n: int
    level: int
    checks: int = 0
    failures: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, identity: str, b: CrystalElt, **params) -> None:
        self.checks += 1
        if not ok:
            self.failures.append({"identity": identity, "element": b.to_json(), "params": params})

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "n": self.n,
            "level": self.level,
            "checks": self.checks,
            "failures": self.failures,
            **self.details,
        }


def string_length(op, k: int, b: CrystalElt, limit: int) -> int:
    steps = 0
    while (b := op(k, b)) is not None:
        steps += 1
        if steps > limit:
            raise RuntimeError("string does not terminate")
    return steps


def check_crystal_axioms(n: int, l: int, cap: int = DEFAULT_ENUM_CAP) -> CrystalReport:
    """Partial inverses, string lengths and weight shifts on all of B^{2,l}."""
    a = cartan_matrix(n)
    report = CrystalReport("axioms", n, l)
    elements = enumerate_crystal(n, l, cap)
    members = set(elements)
    for b in elements:
        for k in range(n + 1):
            report.check(wt(k, b) == phi(k, b) - eps(k, b), f"wt=phi-eps[k={k}]", b)
            report.check(string_length(e_op, k, b, 2 * l) == eps(k, b), f"eps=string[k={k}]", b)
            report.check(string_length(f_op, k, b, 2 * l) == phi(k, b), f"phi=string[k={k}]", b)
            fb = f_op(k, b)
            if fb is not None:
                report.check(fb in members, f"f closed[k={k}]", b)
                report.check(e_op(k, fb) == b, f"e.f=id[k={k}]", b)
                report.check(eps(k, fb) == eps(k, b) + 1, f"eps+1[k={k}]", b)
                report.check(phi(k, fb) == phi(k, b) - 1, f"phi-1[k={k}]", b)
                for j in range(n + 1):
                    report.check(wt(j, fb) == wt(j, b) - a[j, k], f"wt shift[j={j},k={k}]", b)
            eb = e_op(k, b)
            if eb is not None:
                report.check(eb in members, f"e closed[k={k}]", b)
                report.check(f_op(k, eb) == b, f"f.e=id[k={k}]", b)
    return report


def dominant_weights(n: int, l: int) -> list[tuple[int, ...]]:
    """Level-l dominant classical weights as tuples (m_0, ..., m_n)."""
    return sorted(_compositions(l, n + 1))


def perfectness_check(n: int, l: int, cap: int = DEFAULT_ENUM_CAP) -> CrystalReport:
    """Minimal elements and the eps/phi bijections onto level-l dominant weights.

    Also verifies that every element has level <c, eps(b)> >= l and that the
    crystal is a union of i-strings.
    """
    report = CrystalReport("perfect", n, l)
    elements = enumerate_crystal(n, l, cap)
    targets = set(dominant_weights(n, l))
    minimal = []
    for b in elements:
        eps_vec = tuple(eps(k, b) for k in range(n + 1))
        report.check(sum(eps_vec) >= l, "level >= l", b)
        if sum(eps_vec) == l:
            minimal.append(b)
        for k in range(n + 1):
            fb = f_op(k, b)
            if fb is not None:
                report.check(e_op(k, fb) == b, f"string[k={k}]", b)
    eps_image = [tuple(eps(k, b) for k in range(n + 1)) for b in minimal]
    phi_image = [tuple(phi(k, b) for k in range(n + 1)) for b in minimal]
    for name, image in (("eps", eps_image), ("phi", phi_image)):
        report.checks += 1
        if len(set(image)) != len(image) or set(image) != targets:
            report.failures.append(
                {"identity": f"{name} bijection onto dominant weights", "element": None,
                 "params": {"image": sorted(map(list, set(image))), "expected": len(targets)}}
            )
    report.details = {
        "elements": len(elements),
        "minimal": len(minimal),
        "dominant_weights": len(targets),
        "expected_minimal": comb(n + l, n),
    }
    return report
