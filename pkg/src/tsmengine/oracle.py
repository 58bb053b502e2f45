"""Closed-form populations, work and variance for the two-qubit engine.

Three scenarios are covered:

* ``GAUSS_SWAP``: Gaussian sigma_x POVM with the partial swap.
* ``PROJ_SWAP``: projective measurement along ``cos(phi) x + sin(phi) z``
  with the partial swap.
* ``PROJ_AUGMENTED``: same measurement, partial swap preceded by a
  Hadamard on A.

These expressions are independent of the matrix pipeline in ``engine`` and
``stats`` and are used to cross-check it. The augmented-scenario unmonitored
population and work bound were rederived by hand from the cycle map; tests
compare them with the numerical fixed point across parameter grids.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .qops import excited_population

SINGULAR_TOL = 1e-12


class SingularPointError(ArithmeticError):
    """Closed form has a vanishing denominator; use the numeric solver."""


class Scenario(enum.Enum):
    GAUSS_SWAP = "gauss"
    PROJ_SWAP = "proj"
    PROJ_AUGMENTED = "augmented"


class WorkKind(enum.Enum):
    UNMONITORED = "um"
    MONITORED = "m"
    COHERENT = "coherent"


@dataclass(frozen=True)
class ScenarioParams:
    scenario: Scenario
    theta: float
    phi: float = 0.0
    beta_M: float = 0.0
    beta: float = 1.0
    omega_A: float = 2.0
    omega_B: float = 1.0

    def __post_init__(self):
        vals = (self.theta, self.phi, self.beta_M, self.beta, self.omega_A, self.omega_B)
        if not all(np.isfinite(v) for v in vals):
            raise ValueError("scenario parameters must be finite")

    @property
    def p_beta(self) -> float:
        return excited_population(self.omega_B, self.beta)


def _check(den: float, what: str) -> float:
    if abs(den) <= SINGULAR_TOL:
        raise SingularPointError(f"{what}: denominator {den:.3g} vanishes")
    return den


def oracle_populations(p: ScenarioParams) -> tuple[float, float, float]:
    """``(p_um, c_R, p_m)``: unmonitored population and coherence, monitored population."""
    pb = p.p_beta
    th, ph = p.theta, p.phi
    if p.scenario is Scenario.GAUSS_SWAP:
        e = np.exp(p.beta_M / 2)
        den = _check(1 - 2 * e + np.cos(2 * th), "gauss population")
        pop = pb - 2 * (0.5 - pb) * (e - 1) / den
        return pop, 0.0, pop

    if p.scenario is Scenario.PROJ_SWAP:
        den_um = _check(2 + 2 * np.cos(th) * np.sin(ph) ** 2, "unmonitored population")
        p_um = pb + (1 - 2 * pb) * np.cos(ph) ** 2 / den_um
        c_r = (2 * pb - 1) * np.cos(th / 2) ** 2 * np.sin(2 * ph) / den_um
        den_m = _check(3 + np.cos(2 * ph) - 2 * np.cos(2 * th) * np.sin(ph) ** 2,
                       "monitored population")
        p_m = pb + 2 * (1 - 2 * pb) * np.cos(ph) ** 2 / den_m
        return p_um, c_r, p_m

    s2p = np.sin(2 * ph)
    mix = np.cos(2 * th) + 2 * np.cos(2 * ph) * np.sin(th) ** 2
    den = _check(-4 + 2 * np.cos(th) * (1 + np.cos(th)) * s2p, "augmented population")
    f = (-3 - 2 * pb + (2 * pb - 1) * mix) / 2 + np.cos(th) * (1 + np.cos(th)) * s2p
    p_um = f / den
    c_r = (1 - 2 * pb) * np.sin(th) ** 2 * s2p / den
    p_m = (3 + 2 * pb + (1 - 2 * pb) * mix) / 8
    return p_um, c_r, p_m


def _swap_work(pop, pb, gap, theta):
    return -(pop - pb) * gap * np.sin(theta) ** 2


def oracle_work(p: ScenarioParams, which: WorkKind) -> float:
    """Average TMA work for the chosen reference state, or the coherent work.

    Negative values mean the engine outputs work.
    """
    p_um, c_r, p_m = oracle_populations(p)
    pb, th = p.p_beta, p.theta
    gap = p.omega_A - p.omega_B
    pop = p_m if which is WorkKind.MONITORED else p_um
    w = _swap_work(pop, pb, gap, th)
    if p.scenario is Scenario.PROJ_AUGMENTED:
        weight = p.omega_A * np.cos(th) ** 2 + p.omega_B * np.sin(th) ** 2
        w += (0.5 - pop) * weight
        if which is WorkKind.COHERENT:
            w += c_r * weight
    return float(w)


def oracle_positive_work_bound(p: ScenarioParams, which: WorkKind) -> float:
    """Largest ``omega_B / omega_A`` for which the cycle outputs work.

    For the swap scenarios any ``omega_A > omega_B`` works (bound 1) as long
    as the measurement heats A; for the augmented scenario the bound depends
    on ``theta`` and ``phi``.
    """
    th, ph = p.theta, p.phi
    if p.scenario is not Scenario.PROJ_AUGMENTED:
        p_um, _, p_m = oracle_populations(p)
        pop = p_m if which is WorkKind.MONITORED else p_um
        # no heating or no exchange: no ratio gives output
        return 1.0 if (pop - p.p_beta) * np.sin(th) ** 2 > 1e-14 else 0.0
    if which is WorkKind.MONITORED:
        return float(np.cos(ph) ** 2)
    if which is WorkKind.UNMONITORED:
        s2p = np.sin(2 * ph)
        num = 2 * np.cos(ph) ** 2 - np.cos(th) * (1 + np.cos(th)) * s2p
        den = _check(2 - np.cos(th) * (1 + np.cos(th)) * s2p, "unmonitored bound")
        return float(num / den)
    # cot/tan form multiplied through by sin*cos so phi = 0 and pi/2 are finite
    s, c = np.sin(ph), np.cos(ph)
    num = c * c - np.cos(th) * s * c
    den = _check(1 - (1 + np.cos(th)) * s * c, "coherent bound")
    return float(num / den)


def oracle_variance_swap(p_M: float, p_beta: float, theta: float, omega_gap: float) -> float:
    """Work variance of a partial-swap cycle started from ``diag(p_M, 1-p_M)``."""
    for q in (p_M, p_beta):
        if not 0.0 <= q <= 1.0:
            raise ValueError(f"population {q} outside [0, 1]")
    s2 = np.sin(theta) ** 2
    return float(omega_gap ** 2 * s2
                 * (p_M + p_beta - 2 * p_M * p_beta - (p_M - p_beta) ** 2 * s2))
