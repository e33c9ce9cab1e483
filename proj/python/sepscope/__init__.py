"""Minkowski-difference linear separability measures."""

from ._core import (
    ConfigError,
    ConvergenceError,
    DataError,
    DegenerateError,
    Error,
    FormatError,
    LabelError,
    ParseError,
    ShapeError,
    SingularError,
    TrainingError,
    UnsupportedError,
    act_eval,
    approx_weight,
    depth_study,
    exact_weight,
    f_sigma,
    f_sigma_grid,
    greedy_maxls,
    load_labels,
    load_matrix,
    make_synthetic,
    md_gram,
    md_sum,
    measure,
    measure_at,
    measure_sets,
    pair_stats,
    run_cli,
    spearman,
    width_study,
    write_labels,
    write_matrix,
)

__version__ = "0.1.0"
