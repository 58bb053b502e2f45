"""Two-stroke cycle maps and their invariant reference states.

The unmonitored cycle on qubit A is ``rho -> Phi_M(Tr_B[U (rho x rho_B) U^+])``
with B reset to its Gibbs state every cycle. The monitored cycle inserts
projective energy measurements around the unitary, which collapses the
dynamics onto a 2x2 column-stochastic matrix over A's energy levels.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .channels import (
    Channel,
    UnitaryKind,
    UnitarySpec,
    build_unitary,
    gaussian_povm_channel,
    projective_channel,
)
from .qops import (
    ENERGY_PROJECTORS,
    PAULIS,
    ThermalParams,
    check_density_matrix,
    excited_population,
    from_bloch,
    partial_trace_B,
    qubit_state,
    tensor,
    thermal_state,
)

DEGENERACY_TOL = 1e-10


class MeasurementKind(enum.Enum):
    GAUSSIAN = "gauss"
    PROJECTIVE = "proj"


@dataclass(frozen=True)
class Measurement:
    """``GAUSSIAN`` uses ``beta_M``; ``PROJECTIVE`` uses ``phi``."""

    kind: MeasurementKind
    beta_M: float = 0.0
    phi: float = 0.0

    @classmethod
    def gaussian(cls, beta_M: float) -> "Measurement":
        return cls(MeasurementKind.GAUSSIAN, beta_M=float(beta_M))

    @classmethod
    def projective(cls, phi: float) -> "Measurement":
        return cls(MeasurementKind.PROJECTIVE, phi=float(phi))

    def channel(self) -> Channel:
        if self.kind is MeasurementKind.GAUSSIAN:
            return gaussian_povm_channel(self.beta_M)
        return projective_channel(self.phi)


@dataclass(frozen=True)
class CycleSpec:
    omega_A: float
    beta: float
    unitary: UnitarySpec
    measurement: Measurement
    omega_B: float = 1.0

    def __post_init__(self):
        if not self.omega_A > 0 or not self.omega_B > 0:
            raise ValueError("level spacings must be positive")
        if not self.beta >= 0:
            raise ValueError(f"beta must be nonnegative, got {self.beta}")

    @classmethod
    def build(cls, *, omega_A=2.0, beta=1.0, theta=np.pi / 2, unitary="swap",
              measurement="gauss", beta_M=0.0, phi=0.0, omega_B=1.0) -> "CycleSpec":
        """Convenience constructor from flat keyword values."""
        meas = (Measurement.gaussian(beta_M) if MeasurementKind(measurement)
                is MeasurementKind.GAUSSIAN else Measurement.projective(phi))
        return cls(float(omega_A), float(beta),
                   UnitarySpec(UnitaryKind(unitary), float(theta)), meas,
                   float(omega_B))

    @property
    def p_beta(self) -> float:
        return excited_population(self.omega_B, self.beta)

    @cached_property
    def U(self) -> np.ndarray:
        return build_unitary(self.unitary)

    @cached_property
    def channel(self) -> Channel:
        return self.measurement.channel()

    @cached_property
    def rho_B(self) -> np.ndarray:
        return thermal_state(ThermalParams(self.omega_B, self.beta))


@dataclass(frozen=True)
class InvariantStateResult:
    state: np.ndarray
    unique: bool
    residual: float

    @property
    def population(self) -> float:
        return float(self.state[0, 0].real)

    @property
    def coherence(self) -> float:
        """Real part of the energy-basis coherence ``<z+|rho|z->``."""
        return float(self.state[0, 1].real)


def unmonitored_cycle_map(rho_A: np.ndarray, spec: CycleSpec) -> np.ndarray:
    """One unmonitored cycle applied to A's state."""
    rho_A = check_density_matrix(rho_A)
    return _unmonitored(rho_A, spec)


def _unmonitored(rho_A, spec):
    joint = spec.U @ tensor(rho_A, spec.rho_B) @ spec.U.conj().T
    return spec.channel(partial_trace_B(joint, validate=False))


def unmonitored_bloch_affine(spec: CycleSpec) -> tuple[np.ndarray, np.ndarray]:
    """``(M, v)`` such that one unmonitored cycle maps ``r -> M r + v``.

    The cycle map is linear on operators, so push ``I/2`` and the Paulis
    through it.
    """
    def lin(op):
        joint = spec.U @ tensor(op, spec.rho_B) @ spec.U.conj().T
        return spec.channel(np.einsum("ijkj->ik", joint.reshape(2, 2, 2, 2)))

    half_identity = lin(0.5 * np.eye(2, dtype=complex))
    v = np.array([np.trace(s @ half_identity).real for s in PAULIS])
    m = np.array([[0.5 * np.trace(si @ lin(sj)).real for sj in PAULIS] for si in PAULIS])
    return m, v


def _solve_fixed_point(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, bool]:
    # min-norm least squares doubles as the representative for singular a
    sv = np.linalg.svd(a, compute_uv=False)
    unique = sv.min() > DEGENERACY_TOL * max(1.0, sv.max())
    if unique:
        return np.linalg.solve(a, b), True
    x, *_ = np.linalg.lstsq(a, b, rcond=DEGENERACY_TOL)
    return x, False


def unmonitored_invariant(spec: CycleSpec) -> InvariantStateResult:
    m, v = unmonitored_bloch_affine(spec)
    r, unique = _solve_fixed_point(np.eye(3) - m, v)
    state = from_bloch(r)
    residual = float(np.abs(_unmonitored(state, spec) - state).max())
    return InvariantStateResult(state, unique, residual)


def measurement_transfer(spec: CycleSpec) -> np.ndarray:
    """``C[l, n] = Tr[Pi_l Phi_M(Pi_n)]``: level change caused by the measurement."""
    return np.array([[np.trace(pl @ spec.channel(pn)).real for pn in ENERGY_PROJECTORS]
                     for pl in ENERGY_PROJECTORS])


def joint_transition_probabilities(spec: CycleSpec) -> np.ndarray:
    """``P[n, m] = |<n|U|m>|^2`` over the four joint energy states."""
    return np.abs(spec.U) ** 2


def monitored_transition_matrix(spec: CycleSpec) -> np.ndarray:
    """Column-stochastic ``T[l, m] = P(A ends in l | A starts in m)``."""
    pu = joint_transition_probabilities(spec).reshape(2, 2, 2, 2)  # nA nB mA mB
    pb = np.array([spec.p_beta, 1.0 - spec.p_beta])
    # marginal over B's start (thermal) and B's end (discarded)
    unitary_step = np.einsum("abmc,c->am", pu, pb)
    return measurement_transfer(spec) @ unitary_step


def monitored_invariant(spec: CycleSpec) -> InvariantStateResult:
    t = monitored_transition_matrix(spec)
    # 2x2 stochastic matrix: eigenvalues 1 and t00 + t11 - 1
    gap = 2.0 - t[0, 0] - t[1, 1]
    unique = gap > DEGENERACY_TOL
    if unique:
        pop = t[0, 1] / gap
    else:
        pop = 0.5  # T = I, every diagonal state is stationary
    state = qubit_state(pop)
    residual = float(np.abs(t @ np.array([pop, 1 - pop]) - [pop, 1 - pop]).max())
    return InvariantStateResult(state, unique, residual)


def iterate_unmonitored(rho_A: np.ndarray, spec: CycleSpec, n_cycles: int) -> list[np.ndarray]:
    """States after 0..n_cycles unmonitored cycles."""
    states = [check_density_matrix(rho_A)]
    for _ in range(n_cycles):
        states.append(_unmonitored(states[-1], spec))
    return states


def iterate_monitored(pop0: float, spec: CycleSpec, n_cycles: int) -> np.ndarray:
    """Excited populations after 0..n_cycles monitored cycles."""
    t = monitored_transition_matrix(spec)
    vec = np.array([pop0, 1 - pop0])
    out = [vec[0]]
    for _ in range(n_cycles):
        vec = t @ vec
        out.append(vec[0])
    return np.array(out)

