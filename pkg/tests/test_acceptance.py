"""Acceptance criteria 1-10, each at its stated scale and time budget.

Every test prints one PASS/FAIL line (also collected into the terminal
summary) so the suite doubles as an acceptance report.
"""

import itertools
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from math import comb

import pytest

from conftest import ACCEPTANCE_LINES
from tropcrystal import geom, pcrystal, udiso
from tropcrystal.fundrep import build_V1, build_V2, closed_form_X, closed_form_Y


@contextmanager
def criterion(number: int, title: str, budget: float):
    start = time.perf_counter()
    ok = False
    note = ""
    try:
        yield
        ok = True
    except AssertionError as exc:
        note = f" ({str(exc).splitlines()[0][:120]})" if str(exc) else ""
        raise
    finally:
        elapsed = time.perf_counter() - start
        if ok and elapsed > budget:
            ok, note = False, f" (over budget {budget:.0f}s)"
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'} {elapsed:7.2f}s  {title}{note}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    assert elapsed <= budget, f"took {elapsed:.1f}s, budget {budget}s"


def test_c01_closed_forms_match_products():
    with criterion(1, "closed-form coefficients equal the constructive products, n=2..6 x 200", 30):
        for n in range(2, 7):
            rng = random.Random(1000 + n)
            for _ in range(200):
                coords = list(geom.random_point(n, rng).coords)
                assert dict(build_V1(n, coords).items()) == closed_form_X(n, coords), f"V1 n={n} {coords}"
                assert dict(build_V2(n, coords).items()) == closed_form_Y(n, coords), f"V2 n={n} {coords}"


def test_c02_chart_change():
    with criterion(2, "V2(sigma x) = V1(x)/x_n and sigma_inv o sigma = id, n=2..6 x 200", 30):
        for n in range(2, 7):
            report = geom.run_suite("lemma41", n, trials=200, seed=2000 + n)
            assert report.passed, report.failures[:2]


def test_c03_geometric_crystal_identities():
    with criterion(3, "geometric crystal axioms, proof relations, eq43, sigma-commutation, n=2..5 x 100", 120):
        for n in range(2, 6):
            report = geom.verify_axioms(n, trials=100, seed=3000 + 10 * n)
            assert report.passed, report.failures[:2]


def test_c04_e0_conjugation():
    with criterion(4, "e0 closed form equals the conjugation route, n=2..5 x 100", 10):
        for n in range(2, 6):
            rng = random.Random(4000 + n)
            for _ in range(100):
                x = geom.random_point(n, rng)
                c = geom.random_positive(rng)
                assert geom.geom_e0_via_conjugation(c, x) == geom.geom_e(0, c, x), f"n={n} {x} c={c}"


def test_c05_mechanical_tropicalization():
    with criterion(5, "tropicalized catalog equals the hand formulas on the default regions", 120):
        for n in range(2, 6):
            report = udiso.verify_ud_mechanical(n, udiso.default_region(n))
            assert report.passed, report.failures[:2]


def test_c06_isomorphism():
    with criterion(6, "Omega is a crystal isomorphism on the default regions", 120):
        for n in range(2, 6):
            report = udiso.verify_iso(n, udiso.default_region(n))
            assert report.passed, report.failures[:2]


def test_c07_crystal_axioms():
    with criterion(7, "crystal axioms on B^(2,l) for the five small (n, l)", 30):
        for n, l in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)]:
            report = pcrystal.check_crystal_axioms(n, l)
            assert report.passed, report.failures[:2]


def test_c08_perfectness():
    with criterion(8, "minimal elements biject onto level-l dominant weights", 30):
        for n, l, expected in [(2, 1, 3), (2, 2, 6), (3, 1, 4), (3, 2, 10)]:
            report = pcrystal.perfectness_check(n, l)
            assert report.passed, report.failures[:2]
            assert report.details["minimal"] == expected == comb(n + l, n)


def test_c09_cardinalities():
    def brute(n: int) -> int:
        count = 0
        for flat in itertools.product(range(2), repeat=2 * n):
            b1, b2 = flat[:n], flat[n:]
            if sum(b1) == sum(b2) == 1 and all(sum(b1[:t]) >= sum(b2[:t]) for t in range(1, n + 1)):
                count += 1
        return count

    with criterion(9, "|B^(2,1)| = binomial(n+1, 2) for n=2..5", 10):
        sizes = [len(pcrystal.enumerate_crystal(n, 1)) for n in range(2, 6)]
        assert sizes == [brute(n) for n in range(2, 6)] == [comb(n + 1, 2) for n in range(2, 6)] == [3, 6, 10, 15]


INVOCATIONS = [
    ["crystal", "enum", "--n", "3", "--l", "2"],
    ["crystal", "graph", "--n", "3", "--l", "1", "--format", "dot"],
    ["geom", "verify", "--suite", "all", "--n", "3", "--trials", "20", "--seed", "7"],
    ["ud", "check", "--suite", "iso", "--n", "4", "--trials", "200", "--seed", "5"],
    ["ud", "tropicalize", "--target", "e0:5", "--n", "3"],
]


@pytest.mark.parametrize("argv", INVOCATIONS, ids=lambda a: " ".join(a[:2]))
def test_c10_cli_determinism(argv):
    with criterion(10, f"byte-identical stdout over 3 runs: {' '.join(argv)}", 60):
        outputs = set()
        for _ in range(3):
            proc = subprocess.run([sys.executable, "-m", "tropcrystal.cli", *argv], capture_output=True, check=False)
            assert proc.returncode == 0, proc.stderr.decode()
            outputs.add(proc.stdout)
        assert len(outputs) == 1
