from .kernels import NUMBA_AVAILABLE, default_backend
from .simulate import SimConfig, SimResult, run_monitored, run_unmonitored

__all__ = ["NUMBA_AVAILABLE", "SimConfig", "SimResult", "default_backend",
           "run_monitored", "run_unmonitored"]
