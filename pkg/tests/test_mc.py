import os
import subprocess
import sys

import numpy as np
import pytest

from tsmengine.engine import monitored_invariant, unmonitored_invariant
from tsmengine.mc import NUMBA_AVAILABLE, SimConfig, default_backend, run_monitored, run_unmonitored
from tsmengine.mc.kernels import uniforms_np
from tsmengine.qops import qubit_state
from tsmengine.stats import engine_metrics, tma_distribution

import reference_values as ref
from conftest import PI, REPRESENTATIVE, aug, gauss, proj

BACKENDS = ["numpy"] + (["numba"] if NUMBA_AVAILABLE else [])


def exact_w(spec, state):
    return engine_metrics(tma_distribution(state, spec)).avg_w


def test_fixed_point_start_stays_put():
    spec = proj(PI / 4, PI / 4)
    inv = unmonitored_invariant(spec).state
    for n in (1, 7, 20):
        res = run_unmonitored(SimConfig(spec, n_cycles=n, n_samples=10, initial_state=inv))
        assert np.abs(res.final_state - inv).max() < 1e-12


def test_gauss_relaxation_to_reference():
    res = run_unmonitored(SimConfig(gauss(PI / 2, 2.0), n_cycles=20, n_samples=10))
    assert abs(res.final_state[0, 0].real - ref.GAUSS_P) < 1e-8


@pytest.mark.parametrize("spec", REPRESENTATIVE[:4], ids=str)
def test_unmonitored_mean_within_four_stderr(spec):
    res = run_unmonitored(SimConfig(spec, seed=11))
    want = exact_w(spec, res.final_state)
    assert res.stderr_w > 0
    assert abs(res.mean_w - want) <= 4 * res.stderr_w


@pytest.mark.parametrize("backend", BACKENDS)
def test_identity_cycle_records_no_work(backend):
    res = run_monitored(SimConfig(proj(0.0, 0.3), n_cycles=5, n_samples=500), backend=backend)
    assert not res.w_samples.any()
    assert not res.per_cycle_mean_w.any()
    assert res.stderr_w == 0.0


def test_projective_monitored_terminal_mean():
    spec = proj(PI / 4, PI / 4)
    res = run_monitored(SimConfig(spec, seed=3))
    assert abs(ref.PROJ_W_M * (spec.omega_A - spec.omega_B) - res.mean_w) <= 4 * res.stderr_w
    assert res.per_cycle_mean_w.shape == (20,)


@pytest.mark.parametrize("spec", [proj(PI / 4, PI / 4), aug(PI / 3, PI / 4), gauss(PI / 3, 5.0)], ids=str)
def test_final_occupation_matches_stationary(spec):
    n = 20000
    res = run_monitored(SimConfig(spec, n_samples=n, seed=5))
    p = monitored_invariant(spec).population
    se = np.sqrt(p * (1 - p) / n)
    assert res.final_level_counts.sum() == n
    assert abs(res.final_level_counts[0] / n - p) <= 4 * se


def test_random_specs_monitored_consistency():
    rng = np.random.default_rng(99)
    hits = 0
    for i in range(10):
        theta = rng.uniform(0.1, PI - 0.1)
        kind = i % 3
        if kind == 0:
            spec = gauss(theta, rng.uniform(0, 10))
        elif kind == 1:
            spec = proj(theta, rng.uniform(0, PI / 2))
        else:
            spec = aug(theta, rng.uniform(0, PI / 2))
        res = run_monitored(SimConfig(spec, seed=int(rng.integers(2 ** 63))))
        want = exact_w(spec, monitored_invariant(spec).state)
        hits += abs(res.mean_w - want) <= 4 * res.stderr_w
    assert hits >= 9


@pytest.mark.parametrize("backend", BACKENDS)
def test_same_seed_same_result(backend):
    cfg = SimConfig(aug(PI / 2, PI / 8), n_cycles=6, n_samples=3000, seed=2 ** 63 + 17)
    a, b = run_monitored(cfg, backend=backend), run_monitored(cfg, backend=backend)
    np.testing.assert_array_equal(a.w_samples, b.w_samples)
    np.testing.assert_array_equal(a.per_cycle_mean_w, b.per_cycle_mean_w)
    assert a.mean_w == b.mean_w and a.stderr_w == b.stderr_w
    c = run_monitored(SimConfig(cfg.spec, 6, 3000, seed=18), backend=backend)
    assert not np.array_equal(a.w_samples, c.w_samples)


@pytest.mark.skipif(not NUMBA_AVAILABLE, reason="numba not installed")
@pytest.mark.parametrize("spec", REPRESENTATIVE[::3], ids=str)
def test_backends_bit_identical(spec):
    cfg = SimConfig(spec, n_cycles=8, n_samples=2500, seed=42, initial_state=qubit_state(1.0))
    a, b = run_monitored(cfg, backend="numpy"), run_monitored(cfg, backend="numba")
    np.testing.assert_array_equal(a.w_samples, b.w_samples)
    np.testing.assert_array_equal(a.per_cycle_mean_w, b.per_cycle_mean_w)
    np.testing.assert_array_equal(a.final_level_counts, b.final_level_counts)
    u1 = run_unmonitored(cfg, backend="numpy")
    u2 = run_unmonitored(cfg, backend="numba")
    assert u1.mean_w == u2.mean_w


def test_trajectory_draws_do_not_depend_on_batch():
    traj = np.arange(100, dtype=np.uint64)
    full = uniforms_np(7, traj, 13)
    np.testing.assert_array_equal(uniforms_np(7, traj[40:60], 13), full[40:60])
    assert ((full >= 0) & (full < 1)).all()
    assert len(np.unique(full)) == 100


def test_prefix_of_trajectories_is_stable():
    spec = proj(PI / 2, PI / 8)
    small = run_monitored(SimConfig(spec, n_cycles=4, n_samples=100, seed=1))
    large = run_monitored(SimConfig(spec, n_cycles=4, n_samples=1000, seed=1))
    np.testing.assert_array_equal(small.w_samples, large.w_samples[:100])


def test_env_flag_selects_numpy():
    code = "from tsmengine.mc import default_backend; print(default_backend())"
    env = dict(os.environ, TSM_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
    if NUMBA_AVAILABLE and os.environ.get("TSM_DISABLE_NUMBA", "") in ("", "0"):
        assert default_backend() == "numba"


def test_config_validation():
    with pytest.raises(ValueError):
        SimConfig(gauss(1.0, 1.0), n_cycles=0)
    with pytest.raises(ValueError):
        SimConfig(gauss(1.0, 1.0), n_samples=0)
    with pytest.raises(ValueError):
        run_monitored(SimConfig(gauss(1.0, 1.0), n_samples=5), backend="cuda")
