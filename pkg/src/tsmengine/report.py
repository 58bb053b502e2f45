"""One table row per parameter point: invariant states, work, reliability."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .engine import CycleSpec, monitored_invariant, unmonitored_invariant
from .mc import SimConfig, run_monitored, run_unmonitored
from .oracle import (
    Scenario,
    ScenarioParams,
    SingularPointError,
    WorkKind,
    oracle_populations,
    oracle_variance_swap,
    oracle_work,
)
from .stats import coherent_work, engine_metrics, tma_distribution

PARAM_COLUMNS = ("measurement", "unitary", "omega_A", "omega_B", "beta", "theta", "phi", "beta_M")
RESULT_COLUMNS = ("p_um", "c_R", "p_m", "avg_w_um", "avg_w_m", "avg_w_coherent",
                  "var_w", "var_w_m", "reliability_um", "reliability_m",
                  "unique_um", "unique_m", "oracle_status")
MC_COLUMNS = ("mc_mean_w_um", "mc_stderr_w_um", "mc_mean_w_m", "mc_stderr_w_m", "seed")
VERIFY_TOL = 1e-8


@dataclass(frozen=True)
class MCSettings:
    cycles: int = 20
    samples: int = 20000
    seed: int = 0


def spec_from_params(params: dict) -> CycleSpec:
    keys = ("omega_A", "omega_B", "beta", "theta", "unitary", "measurement", "beta_M", "phi")
    return CycleSpec.build(**{k: params[k] for k in keys if k in params})


def scenario_of(spec: CycleSpec) -> Optional[Scenario]:
    kinds = (spec.measurement.kind.value, spec.unitary.kind.value)
    return {("gauss", "swap"): Scenario.GAUSS_SWAP,
            ("proj", "swap"): Scenario.PROJ_SWAP,
            ("proj", "augmented"): Scenario.PROJ_AUGMENTED}.get(kinds)


def scenario_params(spec: CycleSpec) -> Optional[ScenarioParams]:
    scen = scenario_of(spec)
    if scen is None:
        return None
    return ScenarioParams(scen, spec.unitary.theta, spec.measurement.phi,
                          spec.measurement.beta_M, spec.beta, spec.omega_A, spec.omega_B)


def oracle_values(spec: CycleSpec) -> Optional[dict]:
    """Closed-form counterparts of the numeric columns (``None`` if unavailable).

    Raises :class:`SingularPointError` at singular parameter points.
    """
    sp = scenario_params(spec)
    if sp is None:
        return None
    p_um, c_r, p_m = oracle_populations(sp)
    out = {"p_um": p_um, "c_R": c_r, "p_m": p_m,
           "avg_w_um": oracle_work(sp, WorkKind.UNMONITORED),
           "avg_w_m": oracle_work(sp, WorkKind.MONITORED),
           "avg_w_coherent": oracle_work(sp, WorkKind.COHERENT)}
    if sp.scenario is not Scenario.PROJ_AUGMENTED:
        gap = spec.omega_A - spec.omega_B
        out["var_w"] = oracle_variance_swap(p_um, spec.p_beta, spec.unitary.theta, gap)
        out["var_w_m"] = oracle_variance_swap(p_m, spec.p_beta, spec.unitary.theta, gap)
    return out


def analyze(params: dict, mc: Optional[MCSettings] = None) -> dict:
    spec = spec_from_params(params)
    um = unmonitored_invariant(spec)
    m = monitored_invariant(spec)
    met_um = engine_metrics(tma_distribution(um.state, spec))
    met_m = engine_metrics(tma_distribution(m.state, spec))
    row = {
        "measurement": spec.measurement.kind.value,
        "unitary": spec.unitary.kind.value,
        "omega_A": spec.omega_A,
        "omega_B": spec.omega_B,
        "beta": spec.beta,
        "theta": spec.unitary.theta,
        "phi": spec.measurement.phi,
        "beta_M": spec.measurement.beta_M,
        "p_um": um.population,
        "c_R": um.coherence,
        "p_m": m.population,
        "avg_w_um": met_um.avg_w,
        "avg_w_m": met_m.avg_w,
        "avg_w_coherent": coherent_work(um.state, spec),
        "var_w": met_um.var_w,
        "var_w_m": met_m.var_w,
        "reliability_um": met_um.reliability,
        "reliability_m": met_m.reliability,
        "unique_um": bool(um.unique),
        "unique_m": bool(m.unique),
    }
    try:
        row["oracle_status"] = "ok" if scenario_of(spec) else "none"
        if row["oracle_status"] == "ok":
            oracle_values(spec)
    except SingularPointError:
        row["oracle_status"] = "singular"
    if mc is not None:
        cfg = SimConfig(spec, mc.cycles, mc.samples, mc.seed)
        r_um, r_m = run_unmonitored(cfg), run_monitored(cfg)
        row.update(mc_mean_w_um=r_um.mean_w, mc_stderr_w_um=r_um.stderr_w,
                   mc_mean_w_m=r_m.mean_w, mc_stderr_w_m=r_m.stderr_w, seed=mc.seed)
    return row


def verify_row(row: dict, tol: float = VERIFY_TOL) -> list[str]:
    """Compare a row with the closed forms; returns mismatch descriptions."""
    if row["oracle_status"] != "ok":
        return []
    expected = oracle_values(spec_from_params(row))
    problems = []
    for key, val in expected.items():
        if key in ("p_um", "c_R", "avg_w_um", "avg_w_coherent", "var_w") and not row["unique_um"]:
            continue
        if key in ("p_m", "avg_w_m", "var_w_m") and not row["unique_m"]:
            continue
        if not np.isclose(row[key], val, rtol=0, atol=tol):
            problems.append(f"{key}: numeric {row[key]!r} vs closed form {val!r}")
    return problems
