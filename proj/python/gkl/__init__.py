"""Ornstein-Uhlenbeck Poisson kernel, bound kernels and verification suites."""

from ._core import (
    ConfigError,
    LogValue,
    PipelineDisagreement,
    QuadratureError,
    dt_poisson_kernel,
    dx_poisson_kernel,
    glip_profile,
    in_epsilon_set,
    in_sharpness_set,
    k2_tilde_1d,
    k_bound,
    lip_constant,
    poisson_kernel,
    run_suites,
    set_thread_count,
    suite_names,
    z_bound,
)

__all__ = [
    "ConfigError",
    "LogValue",
    "PipelineDisagreement",
    "QuadratureError",
    "dt_poisson_kernel",
    "dx_poisson_kernel",
    "glip_profile",
    "in_epsilon_set",
    "in_sharpness_set",
    "k2_tilde_1d",
    "k_bound",
    "lip_constant",
    "poisson_kernel",
    "run_suites",
    "set_thread_count",
    "suite_names",
    "z_bound",
]
