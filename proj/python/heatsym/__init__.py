"""Symmetry-preserving finite-difference schemes for u_t = (K(u) u_x)_x + Q(u)."""

from ._core import (
    HeatModel,
    HeatsymError,
    Layer,
    generators,
    init_mass_mesh,
    invariance_defect,
    kernel_value,
    list_models,
    log_time_mesh,
    max_residual,
    read_csv,
    representative_model,
    run,
    schemes,
    transform,
    uniform_layer,
    uniform_time,
    write_csv,
)

__all__ = [
    "HeatModel",
    "HeatsymError",
    "Layer",
    "generators",
    "init_mass_mesh",
    "invariance_defect",
    "kernel_value",
    "list_models",
    "log_time_mesh",
    "max_residual",
    "read_csv",
    "representative_model",
    "run",
    "schemes",
    "transform",
    "uniform_layer",
    "uniform_time",
    "write_csv",
]
