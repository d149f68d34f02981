"""Named parameter sets reproducing the survey figures of the model.

Each preset expands to one or more jobs; a job is a single chain plus the
task to run on it.  File suffixes keep multi-curve presets apart; the
manifest written next to each file carries the exact parameters.
"""

from dataclasses import dataclass, field

import numpy as np

_THETA6 = float(np.pi / 6)


@dataclass(frozen=True)
class PresetJob:
    suffix: str
    command: str  # "potential" | "states" | "piv" | "parametric"
    theta: float
    seed: str
    j: int = 0
    epsilon: complex | None = None
    nu: complex = 0j
    order: int = 1
    extremal: int | None = None
    levels: tuple = field(default_factory=tuple)
    created: tuple = field(default_factory=tuple)
    grid: tuple | None = None  # None: command default for the chain domain


PRESETS = {
    "fig3": tuple(
        PresetJob(f"_j{j}", "potential", _THETA6, "bound-even", j=j) for j in (1, 2, 3)
    ),
    "fig4": (
        PresetJob("", "states", _THETA6, "bound-even", j=1, levels=(0, 1, 3)),
    ),
    "fig5": tuple(
        PresetJob(f"_j{j}", "potential", _THETA6, "bound-odd", j=j) for j in (1, 2, 3)
    ),
    "fig6": (
        PresetJob("", "states", _THETA6, "bound-odd", j=1, levels=(0, 2, 3)),
    ),
    "fig7": tuple(
        PresetJob(f"_nu{i + 1}", "potential", _THETA6, "ams", nu=nu)
        for i, nu in enumerate((-0.6 + 0.3j, 0.3j, 0.6 + 0.3j))
    ),
    "fig8": (
        PresetJob("", "states", _THETA6, "ams", nu=0.6 + 0.3j, levels=(0, 1, 2)),
    ),
    "fig9": tuple(
        PresetJob(f"_nu{i + 1}", "potential", _THETA6, "ams", nu=nu, order=2)
        for i, nu in enumerate((0.1 + 0.4j, 0.5 + 0.4j, 0.9 + 0.4j))
    ),
    "fig10": (
        PresetJob(
            "", "states", _THETA6, "ams", nu=0.9 + 0.4j, order=2, levels=(0, 1, 2), created=(1, 2)
        ),
    ),
    "fig11": tuple(
        PresetJob(f"_e{i + 1}", "piv", _THETA6, "general", epsilon=eps, nu=0.8 + 0.5j, extremal=2)
        for i, eps in enumerate((0.01 + 1j, 1 + 1j, 2 + 1j))
    ),
    "fig12": (
        PresetJob(
            "",
            "parametric",
            _THETA6,
            "general",
            epsilon=2 + 1j,
            nu=0.8 + 0.5j,
            extremal=2,
            grid=(-10.0, 10.0, 801),
        ),
    ),
    "fig13": tuple(
        PresetJob(f"_e{i + 1}", "piv", _THETA6, "general", epsilon=eps, nu=0.8 + 0.5j, order=2)
        for i, eps in enumerate((0.01 + 1j, 1 + 1j, 2 + 1j))
    ),
}
