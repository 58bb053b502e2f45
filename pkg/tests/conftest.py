import numpy as np
import pytest

from tsmengine.engine import CycleSpec

PI = np.pi
P_BETA_1 = 0.2689414213699951  # 1/(1+e), checked with mpmath in test_qops


def random_density_matrix(dim, rng):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def gauss(theta, beta_M, **kw):
    return CycleSpec.build(theta=theta, measurement="gauss", beta_M=beta_M, **kw)


def proj(theta, phi, **kw):
    return CycleSpec.build(theta=theta, measurement="proj", phi=phi, **kw)


def aug(theta, phi, **kw):
    return CycleSpec.build(theta=theta, measurement="proj", phi=phi, unitary="augmented", **kw)


# Specs from the figures with Monte Carlo markers plus a spread of other
# (theta, phi / beta_M) points; all have unique invariant states.
REPRESENTATIVE = [
    gauss(PI / 2, 2.0),
    gauss(PI / 3, 5.0),
    gauss(3 * PI / 4, 0.5),
    proj(PI / 4, PI / 4),
    proj(PI / 2, PI / 8),
    proj(3 * PI / 4, PI / 3),
    proj(PI / 3, 0.0),
    aug(PI / 2, PI / 8),
    aug(PI / 3, PI / 4),
    aug(2 * PI / 3, 3 * PI / 8),
]


ACCEPTANCE_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_LINES] = []


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
