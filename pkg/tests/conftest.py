import re

import numpy as np
import pytest

_ACCEPTANCE: list = []


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for the acceptance summary."""

    def report(number, title, ok, detail=""):
        _ACCEPTANCE.append((number, title, bool(ok), detail))
        assert ok, f"criterion {number} ({title}) failed: {detail}"

    return report


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(_ACCEPTANCE, key=lambda r: _order(r[0])):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {str(number):>3}. {title}  {detail}")


def _order(number):
    m = re.match(r"(\d+)(.*)", str(number))
    return int(m.group(1)), m.group(2)


# Brute-force oracles: explicit Kronecker-delta loops, 1-based like the formulas.

def kron(a, b):
    return 1.0 if a == b else 0.0


def brute_rotation(i, j, n):
    m = np.zeros((n, n))
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            m[k - 1, l - 1] = kron(i, l) * kron(j, k) - kron(i, k) * kron(j, l)
    return m


def brute_translation(i, n):
    m = np.zeros((n + 1, n + 1))
    for j in range(1, n + 2):
        for k in range(1, n + 2):
            m[j - 1, k - 1] = kron(i, j) * kron(n + 1, k)
    return m


def eta_entry(a, b):
    if a != b:
        return 0.0
    return -1.0 if a == 0 else 1.0


def brute_boost(i, n):
    m = np.zeros((n + 1, n + 1))
    for a in range(n + 1):
        for b in range(n + 1):
            m[a, b] = kron(a, 0) * eta_entry(i, b) - kron(a, i) * eta_entry(0, b)
    return m


def brute_lorentz_rotation(i, j, n):
    m = np.zeros((n + 1, n + 1))
    for a in range(n + 1):
        for b in range(n + 1):
            m[a, b] = kron(a, j) * eta_entry(i, b) - kron(a, i) * eta_entry(j, b)
    return m


def brute_poincare_translation(mu, n):
    # indices alpha, beta run 0..n+1
    m = np.zeros((n + 2, n + 2))
    for a in range(n + 2):
        for b in range(n + 2):
            m[a, b] = kron(mu, a) * kron(n + 1, b)
    return m


def levi_civita(i, j, k):
    return float((i - j) * (j - k) * (k - i) / 2)


def random_killing_omega(metric, rng):
    """omega = eta S with S antisymmetric, so that eta omega = S is antisymmetric."""
    d = metric.d
    S = rng.standard_normal((d, d))
    S = S - S.T
    return metric.diagonal[:, None] * S
