import math
import pathlib
import sys

import numpy as np
import pytest

ROOT = pathlib.Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "tests" / "fixtures"
SCENES = ROOT / "scenes"


def ball(rng, vmax, n=None):
    """Uniform samples in the closed ball of radius ``vmax``."""
    size = 1 if n is None else n
    d = rng.normal(size=(size, 3))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    r = vmax * rng.random(size) ** (1 / 3)
    out = d * r[:, None]
    return out[0] if n is None else out


def oracle_boost(v, c=1.0):
    # textbook form with (gamma - 1)/|v|^2; fine away from v = 0
    v = np.asarray(v, dtype=float)
    v2 = v @ v
    g = 1.0 / math.sqrt(1.0 - v2 / c**2)
    m = np.eye(4)
    m[0, 0] = g
    m[0, 1:] = -g * v / c**2
    m[1:, 0] = -g * v
    if v2 > 0:
        m[1:, 1:] += (g - 1.0) * np.outer(v, v) / v2
    return m


def oracle_sum(u, v, c=1.0):
    """Velocity of boost(u) o boost(v), read off the matrix product."""
    m = oracle_boost(u, c) @ oracle_boost(v, c)
    return -c**2 * m[0, 1:] / m[0, 0]


def oracle_rotation(u, v, c=1.0):
    m = oracle_boost(u, c) @ oracle_boost(v, c) @ np.linalg.inv(oracle_boost(oracle_sum(u, v, c), c))
    return m[1:, 1:]


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.RESULTS[n])
