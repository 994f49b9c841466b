"""ASEP current fluctuations, the Tracy-Widom GUE law and exact oracles."""

from ._core import (
    OutOfAsymptoticRange,
    ResourceCapExceeded,
    airy,
    airy_kernel,
    cli,
    exact_current_law,
    exact_law,
    f2_cdf,
    f2_cdf_painleve,
    f2_error_estimate,
    invert_sigma,
    kpz_constants,
    ks_distance_to_limit_law,
    limit_law_current,
    m_of,
    run_ensemble,
    scaling_constants,
    sigma_series,
    simulate_positions,
    strong_law_density,
    truncation_size,
)

__all__ = [name for name in dir() if not name.startswith("_")]
