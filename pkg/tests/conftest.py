"""Shared fixtures: the closed-form counterexample chain and the
acceptance-criteria recorder that prints one PASS/FAIL line per criterion."""

from types import SimpleNamespace

import numpy as np
import pytest

from mrdist import chain, cli

# Closed-form quantities of the built-in 3-state birth-death counterexample,
# derived by hand. First-step analysis for the hitting times, e.g. target 2
# from state 1: h = 1 + 0.9 h so h = 10; target 3 from 1: h1 = 1 + 0.9 h1
# + 0.1 h2 and h2 = 1 + 0.5 h1 give h1 = 22, h2 = 12. Omega via
# pi[j] E_i(tau_j) + pi[i] E_j(tau_i); eigenvalues from trace 1.8 and
# determinant -0.09 of the transition matrix.
CE_PI = np.array([5.0, 1.0, 5.0]) / 11.0
CE_H = np.array([[0.0, 10.0, 22.0], [12.0, 0.0, 12.0], [22.0, 10.0, 0.0]])
CE_T_AV = 120.0 / 11.0
CE_OMEGA = np.array(
    [
        [0.0, 70.0 / 11.0, 20.0],
        [70.0 / 11.0, 0.0, 70.0 / 11.0],
        [20.0, 70.0 / 11.0, 0.0],
    ]
)
CE_EIGENVALUES = np.array([1.0, 0.9, -0.1])


@pytest.fixture
def ce():
    """Counterexample chain bundled with its frozen closed-form values."""
    return SimpleNamespace(
        chain=cli.counterexample_chain(),
        pi=CE_PI,
        H=CE_H,
        t_av=CE_T_AV,
        omega=CE_OMEGA,
        eigenvalues=CE_EIGENVALUES,
    )


@pytest.fixture
def two_state():
    """Factory for the 2-state chain [[1-a, a], [b, 1-b]]."""

    def make(a, b):
        return chain.validate([[1.0 - a, a], [b, 1.0 - b]])

    return make


# ---------------------------------------------------------------------------
# acceptance criteria reporting

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record a named acceptance criterion verdict, then assert it."""

    def record(name: str, passed, detail: str = ""):
        ACCEPTANCE_RESULTS.append((name, bool(passed), str(detail)))
        assert passed, f"{name}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        verdict = "PASS" if ok else "FAIL"
        suffix = f"  ({detail})" if detail else ""
        terminalreporter.write_line(f"[{verdict}] {name}{suffix}")
