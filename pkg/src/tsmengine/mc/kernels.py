"""Trajectory kernels for the monitored cycle.

Each kernel has a numba ``@njit`` version and a vectorized numpy version that
produce bit-identical output. Random numbers come from a counter-based hash
of ``(seed, trajectory, cycle, slot)``, so a trajectory's draws do not depend
on how trajectories are scheduled.

Set ``TSM_DISABLE_NUMBA=1`` to force the numpy path.
"""

from __future__ import annotations

import os
import warnings

import numpy as np

try:
    import numba
    from numba.core.errors import NumbaWarning
except ImportError:  # pragma: no cover
    numba = None
else:
    # numba falls back to omp/workqueue on its own; the notice is noise here
    warnings.filterwarnings("ignore", message="The TBB threading layer", category=NumbaWarning)

NUMBA_AVAILABLE = numba is not None
_DISABLED = os.environ.get("TSM_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

# draws per cycle: A level, B level, joint outcome after U
SLOT_A, SLOT_B, SLOT_U = 0, 1, 2
SLOTS = 4

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S30, _S27, _S31, _S11 = np.uint64(30), np.uint64(27), np.uint64(31), np.uint64(11)
_TO_UNIT = 1.0 / 9007199254740992.0  # 2**-53


def default_backend() -> str:
    return "numba" if NUMBA_AVAILABLE and not _DISABLED else "numpy"


# -- numpy path ------------------------------------------------------------

def _splitmix_np(x):
    with np.errstate(over="ignore"):
        z = x + _GOLDEN
        z = (z ^ (z >> _S30)) * _MIX1
        z = (z ^ (z >> _S27)) * _MIX2
    return z ^ (z >> _S31)


def uniforms_np(seed, traj, counter):
    """Uniforms in [0, 1) for arrays of trajectory indices at one counter."""
    h = _splitmix_np(np.uint64(seed))
    h = _splitmix_np(h ^ traj.astype(np.uint64))
    h = _splitmix_np(h ^ np.uint64(counter))
    return (h >> _S11).astype(np.float64) * _TO_UNIT


def _draw_np(cdf_rows, u):
    # index of first cdf entry above u; last column is the catch-all
    return np.sum(u[:, None] >= cdf_rows[:, :-1], axis=1)


def monitored_kernel_np(seed, n_samples, n_cycles, cdf_init, cdf_b, cdf_u, cdf_c,
                        energies, energies_a):
    traj = np.arange(n_samples, dtype=np.uint64)
    w = np.empty((n_samples, n_cycles))
    de = np.empty((n_samples, n_cycles))
    level_a = np.zeros(n_samples, dtype=np.int64)
    for c in range(n_cycles):
        u = uniforms_np(seed, traj, c * SLOTS + SLOT_A)
        if c == 0:
            level_a = _draw_np(np.broadcast_to(cdf_init, (n_samples, 2)), u)
        else:
            level_a = _draw_np(cdf_c[level_a], u)
        u = uniforms_np(seed, traj, c * SLOTS + SLOT_B)
        level_b = _draw_np(np.broadcast_to(cdf_b, (n_samples, 2)), u)
        m = 2 * level_a + level_b
        u = uniforms_np(seed, traj, c * SLOTS + SLOT_U)
        n = _draw_np(cdf_u[m], u)
        w[:, c] = energies[n] - energies[m]
        de[:, c] = energies_a[n // 2] - energies_a[level_a]
        level_a = n // 2
    u = uniforms_np(seed, traj, n_cycles * SLOTS + SLOT_A)
    final = _draw_np(cdf_c[level_a], u)
    return w, de, final


# -- numba path ------------------------------------------------------------

if NUMBA_AVAILABLE:

    @numba.njit(cache=True, inline="always")
    def _splitmix_nb(x):
        z = x + _GOLDEN
        z = (z ^ (z >> _S30)) * _MIX1
        z = (z ^ (z >> _S27)) * _MIX2
        return z ^ (z >> _S31)

    @numba.njit(cache=True, inline="always")
    def _uniform_nb(seed_hash, traj, counter):
        h = _splitmix_nb(seed_hash ^ np.uint64(traj))
        h = _splitmix_nb(h ^ np.uint64(counter))
        return np.float64(h >> _S11) * _TO_UNIT

    @numba.njit(cache=True, inline="always")
    def _draw_nb(cdf, row, u):
        k = 0
        last = cdf.shape[1] - 1
        while k < last and u >= cdf[row, k]:
            k += 1
        return k

    @numba.njit(cache=True, parallel=True)
    def monitored_kernel_nb(seed, n_samples, n_cycles, cdf_init, cdf_b, cdf_u, cdf_c,
                            energies, energies_a):
        seed_hash = _splitmix_nb(seed)
        w = np.empty((n_samples, n_cycles))
        de = np.empty((n_samples, n_cycles))
        final = np.empty(n_samples, dtype=np.int64)
        init = cdf_init.reshape(1, 2)
        bath = cdf_b.reshape(1, 2)
        for t in numba.prange(n_samples):
            a = 0
            for c in range(n_cycles):
                u = _uniform_nb(seed_hash, t, c * SLOTS + SLOT_A)
                if c == 0:
                    a = _draw_nb(init, 0, u)
                else:
                    a = _draw_nb(cdf_c, a, u)
                u = _uniform_nb(seed_hash, t, c * SLOTS + SLOT_B)
                b = _draw_nb(bath, 0, u)
                m = 2 * a + b
                u = _uniform_nb(seed_hash, t, c * SLOTS + SLOT_U)
                n = _draw_nb(cdf_u, m, u)
                w[t, c] = energies[n] - energies[m]
                de[t, c] = energies_a[n // 2] - energies_a[a]
                a = n // 2
            u = _uniform_nb(seed_hash, t, n_cycles * SLOTS + SLOT_A)
            final[t] = _draw_nb(cdf_c, a, u)
        return w, de, final


def monitored_kernel(seed, n_samples, n_cycles, cdf_init, cdf_b, cdf_u, cdf_c,
                     energies, energies_a, backend=None):
    """Sample ``n_samples`` monitored trajectories of ``n_cycles`` cycles.

    ``cdf_init``/``cdf_b`` are cumulative level distributions of A (first
    cycle) and B; ``cdf_u[m]`` is the cumulative distribution of the joint
    outcome after the unitary given joint level ``m``; ``cdf_c[n_A]`` that of
    A's level after the measurement stroke. Returns per-cycle work and A
    energy change arrays of shape ``(n_samples, n_cycles)`` and A's level
    after the last cycle.
    """
    backend = backend or default_backend()
    args = (int(seed) & 0xFFFFFFFFFFFFFFFF, int(n_samples), int(n_cycles),
            *(np.ascontiguousarray(x, dtype=np.float64)
              for x in (cdf_init, cdf_b, cdf_u, cdf_c, energies, energies_a)))
    if backend == "numba":
        if not NUMBA_AVAILABLE:
            raise RuntimeError("numba backend requested but numba is not installed")
        return monitored_kernel_nb(np.uint64(args[0]), *args[1:])
    if backend == "numpy":
        return monitored_kernel_np(*args)
    raise ValueError(f"unknown backend {backend!r}")
