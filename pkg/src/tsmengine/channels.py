"""Measurement channels on qubit A and the work-stroke unitaries."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .qops import (
    HADAMARD,
    I2,
    PAULIS,
    SIGMA_X,
    SIGMA_Z,
    DimensionError,
    check_density_matrix,
)


@dataclass(frozen=True)
class Channel:
    """CPTP map ``rho -> sum_k w_k K_k rho K_k^dagger``.

    ``bloch_matrix`` and ``bloch_offset`` give the same map on Bloch vectors,
    ``r -> M r + v``.
    """

    kraus: tuple[tuple[float, np.ndarray], ...]
    bloch_matrix: np.ndarray
    bloch_offset: np.ndarray = field(default_factory=lambda: np.zeros(3))
    name: str = ""

    @property
    def dim(self) -> int:
        return self.kraus[0][1].shape[0]

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        return _apply(self, rho)


def _apply(ch: Channel, rho: np.ndarray) -> np.ndarray:
    out = np.zeros_like(rho, dtype=complex)
    for w, k in ch.kraus:
        out += w * (k @ rho @ k.conj().T)
    return out


def apply_channel(ch: Channel, rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho)
    if rho.shape != (ch.dim, ch.dim):
        raise DimensionError(f"channel acts on dim {ch.dim}, state has shape {rho.shape}")
    check_density_matrix(rho)
    return _apply(ch, rho)


def identity_channel() -> Channel:
    return Channel(((1.0, I2),), np.eye(3), name="identity")


def gaussian_povm_channel(beta_M: float) -> Channel:
    """Non-selective Gaussian weak measurement of ``sigma_x`` on qubit A.

    Integrating the Gaussian POVM over its outcomes leaves the x-basis
    populations untouched and scales x-basis coherences by the overlap
    ``exp(-beta_M / 2)``, where ``beta_M = q0**2 / sigma**2``. Equivalently
    ``rho -> (1+k)/2 rho + (1-k)/2 X rho X`` with ``k`` the overlap.
    """
    beta_M = float(beta_M)
    if not np.isfinite(beta_M) or beta_M < 0:
        raise ValueError(f"beta_M must be finite and nonnegative, got {beta_M}")
    k = np.exp(-0.5 * beta_M)
    kraus = ((0.5 * (1 + k), I2), (0.5 * (1 - k), SIGMA_X))
    return Channel(kraus, np.diag([1.0, k, k]), name=f"gauss(beta_M={beta_M:g})")


def measurement_axis(phi: float) -> np.ndarray:
    """Bloch direction ``cos(phi) e_x + sin(phi) e_z``."""
    return np.array([np.cos(phi), 0.0, np.sin(phi)])


def projective_channel(phi: float) -> Channel:
    """Non-selective projective measurement of ``cos(phi) X + sin(phi) Z``."""
    n = measurement_axis(phi)
    sigma_n = n[0] * SIGMA_X + n[2] * SIGMA_Z
    proj_plus = 0.5 * (I2 + sigma_n)
    proj_minus = 0.5 * (I2 - sigma_n)
    return Channel(((1.0, proj_plus), (1.0, proj_minus)), np.outer(n, n),
                   name=f"proj(phi={phi:g})")


def kraus_completeness(ch: Channel) -> np.ndarray:
    """``sum_k w_k K_k^dagger K_k``; the identity for a trace-preserving map."""
    return sum(w * (k.conj().T @ k) for w, k in ch.kraus)


def choi_matrix(ch: Channel) -> np.ndarray:
    d = ch.dim
    choi = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = 1.0
            choi += np.kron(e, _apply(ch, e))
    return choi


def bloch_affine_from_kraus(ch: Channel) -> tuple[np.ndarray, np.ndarray]:
    """Recover ``(M, v)`` by pushing Pauli operators through the Kraus form."""
    if ch.dim != 2:
        raise DimensionError("Bloch representation only exists for qubits")
    m = np.array([[0.5 * np.trace(si @ _apply(ch, sj)).real for sj in PAULIS]
                  for si in PAULIS])
    v = np.array([0.5 * np.trace(si @ _apply(ch, I2)).real for si in PAULIS])
    return m, v


class UnitaryKind(enum.Enum):
    PARTIAL_SWAP = "swap"
    AUGMENTED_SWAP = "augmented"


@dataclass(frozen=True)
class UnitarySpec:
    kind: UnitaryKind
    theta: float


def partial_swap(theta: float) -> np.ndarray:
    """``exp(i theta (s+ s- + s- s+))`` on the joint basis.

    Identity on ``|z+z+>`` and ``|z-z->``; rotates the single-excitation
    block by ``[[cos, i sin], [i sin, cos]]``.
    """
    c, s = np.cos(theta), np.sin(theta)
    u = np.eye(4, dtype=complex)
    u[1, 1] = u[2, 2] = c
    u[1, 2] = u[2, 1] = 1j * s
    return u


def build_unitary(spec: UnitarySpec) -> np.ndarray:
    u = partial_swap(spec.theta)
    if spec.kind is UnitaryKind.AUGMENTED_SWAP:
        # Hadamard acts on A before the swap
        u = u @ np.kron(HADAMARD, I2)
    return u
