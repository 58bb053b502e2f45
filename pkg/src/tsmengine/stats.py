"""Two-projective-measurement (TMA) work statistics.

Energy is measured on both qubits before and after the unitary stroke. The
work ``w`` is the change of total bare energy and ``dE_A`` the change of A's
energy. With four joint levels there are at most 16 outcome pairs, so the
joint distribution is enumerated exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .engine import CycleSpec, joint_transition_probabilities
from .qops import check_density_matrix, hamiltonian, joint_energies, level_energies, tensor

MERGE_TOL = 1e-12
ZERO_VARIANCE = 1e-28


@dataclass(frozen=True)
class WorkDistribution:
    """Atoms of ``p(w, dE_A)``, sorted by ``(w, dE_A)``."""

    w: np.ndarray
    dE_A: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        if abs(self.p.sum() - 1.0) > 1e-12 or (self.p < 0).any():
            raise ValueError("atom probabilities must be nonnegative and sum to 1")

    def __len__(self):
        return len(self.p)

    @property
    def atoms(self) -> list[tuple[float, float, float]]:
        return list(zip(self.w.tolist(), self.dE_A.tolist(), self.p.tolist()))

    @classmethod
    def from_atoms(cls, w, dE_A, p, tol: float = MERGE_TOL) -> "WorkDistribution":
        """Build from raw atoms, merging keys that agree within ``tol``."""
        w, dE_A, p = (np.asarray(x, dtype=float) for x in (w, dE_A, p))
        keep = p > 0
        w, dE_A, p = w[keep], dE_A[keep], p[keep]
        order = np.lexsort((dE_A, w))
        w, dE_A, p = w[order], dE_A[order], p[order]
        mw, md, mp = [], [], []
        for wi, di, pi in zip(w, dE_A, p):
            if mw and abs(wi - mw[-1]) <= tol and abs(di - md[-1]) <= tol:
                mp[-1] += pi
            else:
                mw.append(wi)
                md.append(di)
                mp.append(pi)
        return cls(np.array(mw), np.array(md), np.array(mp))


@dataclass(frozen=True)
class EngineMetrics:
    avg_w: float
    avg_dE_A: float
    avg_E_M: float
    avg_Q_c: float
    var_w: float
    reliability: Optional[float]  # None where the variance vanishes

    @property
    def work_output(self) -> float:
        return -self.avg_w


def tma_distribution(rho_A0: np.ndarray, spec: CycleSpec) -> WorkDistribution:
    """Exact joint distribution of ``(w, dE_A)`` for ``rho_A0 (x) rho_B``.

    Only the populations of ``rho_A0`` enter; the first energy measurement
    removes its coherences.
    """
    rho_A0 = check_density_matrix(rho_A0)
    pop_A = np.diag(rho_A0).real
    p0 = np.kron(pop_A, [spec.p_beta, 1.0 - spec.p_beta])
    pu = joint_transition_probabilities(spec)
    energy = joint_energies(spec.omega_A, spec.omega_B)
    ea = np.repeat(level_energies(spec.omega_A), 2)
    prob = pu * p0[None, :]                       # [n, m]
    w = energy[:, None] - energy[None, :]
    dE = ea[:, None] - ea[None, :]
    return WorkDistribution.from_atoms(w.ravel(), dE.ravel(), prob.ravel())


def characteristic_fn(dist: WorkDistribution, lam: float, mu: float) -> complex:
    """``sum p exp(i (lam w + mu dE_A))``.

    The real part is formed as ``sum p - 2 sum p sin^2(x/2)`` in one correctly rounded
    sum so that finite differences near the origin keep their digits.
    """
    x = lam * dist.w + mu * dist.dE_A
    re = math.fsum(np.concatenate([dist.p, -2.0 * dist.p * np.sin(x / 2) ** 2]))
    return complex(re, math.fsum(dist.p * np.sin(x)))


def moments(dist: WorkDistribution, j: int, k: int) -> float:
    """``<w**j dE_A**k>``."""
    if j < 0 or k < 0:
        raise ValueError("moment orders must be nonnegative")
    return float(np.sum(dist.p * dist.w ** j * dist.dE_A ** k))


def engine_metrics(dist: WorkDistribution) -> EngineMetrics:
    avg_w = moments(dist, 1, 0)
    avg_dE = moments(dist, 0, 1)
    # central form stays >= 0 under round-off
    var_w = float(np.sum(dist.p * (dist.w - avg_w) ** 2))
    rel = -avg_w / np.sqrt(var_w) if var_w > ZERO_VARIANCE else None
    return EngineMetrics(avg_w, avg_dE, -avg_dE, avg_dE - avg_w, var_w, rel)


def coherent_work(rho_A0: np.ndarray, spec: CycleSpec) -> float:
    """Average bare-energy change over the unitary, coherences included."""
    rho0 = tensor(check_density_matrix(rho_A0), spec.rho_B)
    h = tensor(hamiltonian(spec.omega_A), np.eye(2)) + tensor(np.eye(2), hamiltonian(spec.omega_B))
    u = spec.U
    return float(np.trace(h @ (u @ rho0 @ u.conj().T - rho0)).real)
