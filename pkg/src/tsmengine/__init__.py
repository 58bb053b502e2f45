"""Two-stroke quantum heat engine fuelled by a non-selective measurement."""

from .channels import (
    Channel,
    UnitaryKind,
    UnitarySpec,
    apply_channel,
    build_unitary,
    gaussian_povm_channel,
    projective_channel,
)
from .engine import (
    CycleSpec,
    InvariantStateResult,
    Measurement,
    MeasurementKind,
    monitored_invariant,
    monitored_transition_matrix,
    unmonitored_cycle_map,
    unmonitored_invariant,
)
from .stats import (
    EngineMetrics,
    WorkDistribution,
    characteristic_fn,
    coherent_work,
    engine_metrics,
    moments,
    tma_distribution,
)

__version__ = "0.1.0"
