import cmath
import math

import pytest

from harmonic_trinomial.core import HarmonicTrinomial
from harmonic_trinomial.triangle import omega_star
from harmonic_trinomial.counting import resolve_jumps
from harmonic_trinomial.oracle import find_all_roots

SQRT2 = math.sqrt(2.0)
SQRT5 = math.sqrt(5.0)
SQRT7 = math.sqrt(7.0)


@pytest.fixture
def e1():
    return HarmonicTrinomial(1, 1, 1, 2, 1)


@pytest.fixture
def e3():
    return HarmonicTrinomial(1, 3, 1, 2, 1)


@pytest.fixture
def e10i():
    return HarmonicTrinomial(1, 10j, 1, 3, 1)


def singular_instance(k: int = 0) -> HarmonicTrinomial:
    """``z**2 + 2 e^{i beta} conj(z) + 2`` with a root on ``|z| = r0 = 1``.

    With ``|a| = 1, |b| = |c| = 2`` the critical radius is 1 and lies inside the
    region, so ``omega_star`` bottoms out there; ``beta`` is chosen so that
    ``P - omega_star(1)`` is the integer ``k``.  On ``|z| = 1`` the Jacobian
    ``|2 z|**2 - |b|**2`` vanishes, so the root found there is singular.
    """
    dip = omega_star(HarmonicTrinomial(1, 2, 2, 2, 1), 1.0)
    beta = (2 * math.pi * (dip + k) + 3 * math.pi) / 2
    return HarmonicTrinomial(1, 2 * cmath.exp(1j * beta), 2, 2, 1)


@pytest.fixture
def cold_caches():
    """Empty the memo caches so timings include the real work."""
    resolve_jumps.cache_clear()
    find_all_roots.cache_clear()
    yield


# one PASS/FAIL line per acceptance criterion in the terminal summary

_CRITERIA: dict[str, str] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1].split("[")[0]  # parametrized cases share one line
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    if report.when == "call" or report.failed:
        prev = _CRITERIA.get(name)
        if prev != "FAIL":
            _CRITERIA[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA):
        num = name.split("_")[2]
        label = " ".join(name.split("_")[3:])
        terminalreporter.write_line(f"criterion {int(num):2d} {label}: {_CRITERIA[name]}")
