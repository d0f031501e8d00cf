from __future__ import annotations

from hahn_paths import ModelParams


def sweep_models(n_max: int = 3, t_max: int = 6) -> list[ModelParams]:
    """All models with N <= n_max, S <= T <= t_max."""
    return [
        ModelParams(n, s, t)
        for t in range(1, t_max + 1)
        for s in range(t + 1)
        for n in range(1, n_max + 1)
    ]


def small_sweep() -> list[ModelParams]:
    """A fast sweep used by unit tests; the acceptance suite runs the full one."""
    return sweep_models(2, 4)
