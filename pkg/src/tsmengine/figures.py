"""Parameter grids behind each figure of the engine study.

Every figure fixes ``beta = 1`` (inverse temperature in units of
``1/omega_B``) and ``omega_A = 2``. Swept axes use 64 points; figures with
Monte Carlo markers use a coarser 13-point marker grid and enable sampling.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

GRID_POINTS = 64
MARKER_POINTS = 13
PI = np.pi


@dataclass(frozen=True)
class FigureGrid:
    description: str
    base: dict
    axes: tuple[tuple[str, tuple[float, ...]], ...]
    mc: bool = False
    defaults: dict = field(default_factory=lambda: {"omega_A": 2.0, "beta": 1.0})

    def points(self):
        """Yield parameter dicts in row-major order over ``axes``."""
        names = [a for a, _ in self.axes]
        for combo in itertools.product(*(v for _, v in self.axes)):
            yield {**self.defaults, **self.base, **dict(zip(names, combo))}


def _lin(a, b, n=GRID_POINTS):
    return tuple(np.linspace(a, b, n).tolist())


GAUSS = {"measurement": "gauss", "unitary": "swap"}
PROJ = {"measurement": "proj", "unitary": "swap"}
AUG = {"measurement": "proj", "unitary": "augmented"}

FIGURES: dict[str, FigureGrid] = {
    "fig2a": FigureGrid("Gaussian POVM: work vs measurement strength", GAUSS,
                        (("theta", (PI / 6, PI / 4, PI / 3, PI / 2)), ("beta_M", _lin(0, 10)))),
    "fig2b": FigureGrid("Gaussian POVM: work vs swap angle", GAUSS,
                        (("beta_M", (0.5, 1.0, 2.0, 5.0)), ("theta", _lin(0, PI)))),
    "fig2c": FigureGrid("Gaussian POVM at theta=pi/2 with Monte Carlo", {**GAUSS, "theta": PI / 2},
                        (("beta_M", _lin(0, 10, MARKER_POINTS)),), mc=True),
    "fig3a": FigureGrid("Projective: unmonitored work vs measurement direction", PROJ,
                        (("theta", (PI / 4, PI / 2, 3 * PI / 4)), ("phi", _lin(0, PI / 2)))),
    "fig3b": FigureGrid("Projective: monitored work vs measurement direction", PROJ,
                        (("theta", (PI / 4, PI / 2, 3 * PI / 4)), ("phi", _lin(0, PI / 2)))),
    "fig3c": FigureGrid("Projective at theta=pi/4 with Monte Carlo", {**PROJ, "theta": PI / 4},
                        (("phi", _lin(0, PI / 2, MARKER_POINTS)),), mc=True),
    "fig4a": FigureGrid("Projective: unmonitored work vs swap angle", PROJ,
                        (("phi", (PI / 8, PI / 4, 3 * PI / 8)), ("theta", _lin(0, PI)))),
    "fig4b": FigureGrid("Projective: monitored work vs swap angle", PROJ,
                        (("phi", (PI / 8, PI / 4, 3 * PI / 8)), ("theta", _lin(0, PI)))),
    "fig4c": FigureGrid("Projective at phi=pi/4 with Monte Carlo", {**PROJ, "phi": PI / 4},
                        (("theta", _lin(0, PI, MARKER_POINTS)),), mc=True),
    "fig5a": FigureGrid("Augmented swap: unmonitored work over (theta, phi)", AUG,
                        (("theta", _lin(0, PI)), ("phi", _lin(0, PI / 2)))),
    "fig5b": FigureGrid("Augmented swap: monitored work over (theta, phi)", AUG,
                        (("theta", _lin(0, PI)), ("phi", _lin(0, PI / 2)))),
    "fig5c": FigureGrid("Augmented swap: coherent work over (theta, phi)", AUG,
                        (("theta", _lin(0, PI)), ("phi", _lin(0, PI / 2)))),
    "fig6": FigureGrid("Augmented swap at phi=pi/8 with Monte Carlo", {**AUG, "phi": PI / 8},
                       (("theta", _lin(0, PI, MARKER_POINTS)),), mc=True),
    "fig7a": FigureGrid("Gaussian POVM: reliability vs measurement strength", GAUSS,
                        (("theta", (PI / 8, PI / 4, 3 * PI / 8, PI / 2)), ("beta_M", _lin(0, 10)))),
    "fig7b": FigureGrid("Projective: reliability vs direction at theta=3pi/4",
                        {**PROJ, "theta": 3 * PI / 4}, (("phi", _lin(0, PI / 2)),)),
    "fig7c": FigureGrid("Projective: reliability vs swap angle at phi=pi/3",
                        {**PROJ, "phi": PI / 3}, (("theta", _lin(0, PI)),)),
}
