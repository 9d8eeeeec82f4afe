"""Inequality, trend and diversity statistics for software metrics."""

from ._swstat import (
    AnalysisError,
    InputError,
    __version__,
    atkinson,
    build_series,
    evenness,
    extract_file,
    gini,
    gini_simpson,
    halstead_counts,
    halstead_measures,
    inequality_report,
    kendall_tau_b,
    load_csv,
    load_manifest,
    lorenz_points,
    mk_s,
    mk_test,
    mk_variance,
    pietra,
    run_pipeline,
    sen_slope,
    shannon,
    simpson,
    slice_distribution,
    theil,
    tokenize,
    TokenCounts,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
