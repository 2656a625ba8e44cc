"""Block-extrema GEV analysis: fitting, return levels, bootstrap and the command-line runner."""

from ._core import (
    BlockExtremes,
    FitMethod,
    FitResult,
    GevParams,
    Orientation,
    annual_maxima,
    annual_minima,
    block_size_diagnostic,
    bootstrap_fit,
    cdf,
    density,
    fit_ml,
    fit_pwm,
    generate_daily,
    multi_year_extremes,
    neg_log_likelihood,
    pwm_moments,
    quantile,
    return_level,
    run_command,
    sample,
    segment_experiment,
    survival,
)

__all__ = [
    "BlockExtremes",
    "FitMethod",
    "FitResult",
    "GevParams",
    "Orientation",
    "annual_maxima",
    "annual_minima",
    "block_size_diagnostic",
    "bootstrap_fit",
    "cdf",
    "density",
    "fit_ml",
    "fit_pwm",
    "generate_daily",
    "multi_year_extremes",
    "neg_log_likelihood",
    "pwm_moments",
    "quantile",
    "return_level",
    "run_command",
    "sample",
    "segment_experiment",
    "survival",
]
