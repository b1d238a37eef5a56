from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def positive_fractions(hi: int = 50):
    return st.builds(Fraction, st.integers(1, hi), st.integers(1, hi))


@st.composite
def torus_points(draw, n_values=(2, 3, 4, 5)):
    from tropcrystal.geom import TorusPoint

    n = draw(st.sampled_from(n_values))
    coords = draw(st.lists(positive_fractions(), min_size=2 * n - 2, max_size=2 * n - 2))
    return TorusPoint(n, tuple(coords))


@st.composite
def lattice_points(draw, n_values=(2, 3, 4, 5, 6), bound: int = 30):
    from tropcrystal.udiso import LatticePoint

    n = draw(st.sampled_from(n_values))
    coords = draw(st.lists(st.integers(-bound, bound), min_size=2 * n - 2, max_size=2 * n - 2))
    return LatticePoint(n, tuple(coords))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
