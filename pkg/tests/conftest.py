from __future__ import annotations

import random

import pytest

from jacplane import atlas
from jacplane.linalg import ExactMatrix, PrimeField, rank
from jacplane.poly import HomogPoly, parse_poly, reduced_check

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_perturbed_binomials(count: int = 50, seed: int = 20240607) -> list[HomogPoly]:
    """Reduced curves y^d + x^k z^(d-k) + (terms vanishing to order 2 at [0:0:1]).

    The added terms keep [0:0:1] singular; the list is deterministic.
    """
    rng = random.Random(seed)
    out: list[HomogPoly] = []
    seen = set()
    while len(out) < count:
        d = rng.randint(3, 8)
        k = rng.randint(1, d - 1)
        coeffs = {(0, d, 0): 1, (k, 0, d - k): rng.choice([1, -1, 2])}
        for _ in range(rng.randint(1, 3)):
            a = rng.randint(0, d)
            b = rng.randint(max(0, 2 - a), d - a)
            if a + b < 2:
                continue
            coeffs[(a, b, d - a - b)] = coeffs.get((a, b, d - a - b), 0) + rng.randint(-3, 3)
        f = HomogPoly(d, coeffs)
        if f in seen or len(f) < 2 or not reduced_check(f, seed=1):
            continue
        seen.add(f)
        out.append(f)
    return out


def reference_corpus() -> list[HomogPoly]:
    curves = [atlas.named_example(n) for n in sorted(atlas.NAMED_EXAMPLES)]
    for d in range(6, 13):
        curves += [atlas.binomial_curve(d, k) for k in atlas.admissible_k(d)]
    curves += [atlas.b_plus_curve(3), atlas.b_plus_curve(5)]
    return curves


@pytest.fixture(scope="session")
def warm_jit():
    # compile the elimination kernel outside any timed region
    rank(ExactMatrix([[1, 2], [3, 4]], PrimeField(2_147_483_647)))
    return True


@pytest.fixture(scope="session")
def quartic_c():
    return parse_poly("y^4 - x*z^3")


@pytest.fixture(scope="session")
def quartic_cprime():
    return parse_poly("y^4 - x*z^3 - y^3*z")


@pytest.fixture(scope="session")
def quintic():
    return atlas.named_example("quintic_4cusp")


@pytest.fixture(scope="session")
def fermat3():
    return parse_poly("x^3 + y^3 + z^3")


@pytest.fixture(scope="session")
def fermat4():
    return parse_poly("x^4 + y^4 + z^4")


GENERIC_SIX_A = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3), (1, 3, 7))
GENERIC_SIX_B = ((1, 2, 5), (2, -1, 3), (3, 1, -4), (1, -3, 2), (4, 1, 1), (2, 5, -1))
