"""Dense linear algebra for one and two qubits.

Operators are plain ``numpy`` complex arrays. The single-qubit basis is the
energy eigenbasis with the excited state first, ``(|z+>, |z->)``, and the
joint basis is ``|z+z+>, |z+z->, |z-z+>, |z-z->`` (qubit A is the left
tensor factor). Energies are in units of ``omega_B``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
EIG_TOL = 1e-10


class DimensionError(ValueError):
    """Operator shape does not match what the operation needs."""


class InvalidStateError(ValueError):
    """Matrix is not a valid density matrix."""


I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
# raising: |z+><z-|
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)
SIGMA_MINUS = SIGMA_PLUS.T.copy()
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

# energy projectors, index 0 = excited
PROJ_EXCITED = np.diag([1.0, 0.0]).astype(complex)
PROJ_GROUND = np.diag([0.0, 1.0]).astype(complex)
ENERGY_PROJECTORS = (PROJ_EXCITED, PROJ_GROUND)

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)

for _m in (I2, I4, SIGMA_X, SIGMA_Y, SIGMA_Z, SIGMA_PLUS, SIGMA_MINUS,
           PROJ_EXCITED, PROJ_GROUND, HADAMARD):
    _m.setflags(write=False)


@dataclass(frozen=True)
class ThermalParams:
    omega: float
    beta: float

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if not self.beta >= 0:
            raise ValueError(f"beta must be nonnegative, got {self.beta}")

    @property
    def excited_population(self) -> float:
        return excited_population(self.omega, self.beta)


def excited_population(omega: float, beta: float) -> float:
    """Thermal excited-state population ``1 / (1 + exp(beta*omega))``."""
    x = beta * omega
    if np.isinf(x):
        return 0.0
    # expit without the scipy import; stable for large x
    return float(np.exp(-np.logaddexp(0.0, x)))


def hamiltonian(omega: float) -> np.ndarray:
    """Single-qubit Hamiltonian ``omega/2 * sigma_z``."""
    return 0.5 * omega * SIGMA_Z


def level_energies(omega: float) -> np.ndarray:
    """Energies of ``(|z+>, |z->)``."""
    return np.array([0.5 * omega, -0.5 * omega])


def joint_energies(omega_A: float, omega_B: float) -> np.ndarray:
    """Diagonal of ``H_A (x) I + I (x) H_B`` in the joint basis."""
    ea, eb = level_energies(omega_A), level_energies(omega_B)
    return (ea[:, None] + eb[None, :]).ravel()


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise DimensionError(
            f"tensor expects two 2x2 operators, got {a.shape} and {b.shape}")
    return np.kron(a, b)


def partial_trace_B(rho: np.ndarray, validate: bool = True) -> np.ndarray:
    """Trace out qubit B from a 4x4 joint operator."""
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise DimensionError(f"expected a 4x4 operator, got {rho.shape}")
    if validate:
        check_density_matrix(rho)
    return np.einsum("ijkj->ik", rho.reshape(2, 2, 2, 2))


def thermal_state(p: ThermalParams) -> np.ndarray:
    pe = p.excited_population
    return np.diag([pe, 1.0 - pe]).astype(complex)


def check_density_matrix(rho: np.ndarray) -> np.ndarray:
    """Raise :class:`InvalidStateError` unless ``rho`` is a density matrix.

    Returns ``rho`` unchanged so it can be used inline.
    """
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] not in (2, 4):
        raise DimensionError(f"density matrix must be 2x2 or 4x4, got {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise InvalidStateError("density matrix has non-finite entries")
    if abs(np.trace(rho) - 1.0) > TRACE_TOL:
        raise InvalidStateError(f"trace is {np.trace(rho)}, expected 1")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
        raise InvalidStateError("density matrix is not Hermitian")
    if np.linalg.eigvalsh(rho).min() < -EIG_TOL:
        raise InvalidStateError("density matrix has a negative eigenvalue")
    return rho


def is_density_matrix(rho: np.ndarray) -> bool:
    try:
        check_density_matrix(rho)
    except ValueError:
        return False
    return True


def bloch_vector(rho: np.ndarray) -> np.ndarray:
    """Real 3-vector ``r`` with ``rho = (I + r . sigma) / 2``."""
    rho = np.asarray(rho)
    if rho.shape != (2, 2):
        raise DimensionError(f"Bloch vector needs a 2x2 operator, got {rho.shape}")
    return np.array([np.trace(rho @ s).real for s in PAULIS])


def from_bloch(r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise DimensionError(f"Bloch vector must have 3 components, got {r.shape}")
    if np.linalg.norm(r) > 1 + EIG_TOL:
        raise InvalidStateError(f"Bloch vector norm {np.linalg.norm(r)} exceeds 1")
    return 0.5 * (I2 + r[0] * SIGMA_X + r[1] * SIGMA_Y + r[2] * SIGMA_Z)


def qubit_state(p_excited: float, coherence: complex = 0.0) -> np.ndarray:
    """``[[p, c], [conj(c), 1-p]]`` validated as a density matrix."""
    rho = np.array([[p_excited, coherence],
                    [np.conj(coherence), 1.0 - p_excited]], dtype=complex)
    return check_density_matrix(rho)


def dephase(rho: np.ndarray) -> np.ndarray:
    """Drop energy-basis coherences."""
    return np.diag(np.diag(rho))


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    return 0.5 * float(np.abs(np.linalg.eigvalsh(a - b)).sum())

