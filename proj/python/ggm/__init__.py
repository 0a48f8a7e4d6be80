"""Simultaneous tests for absent edges in Gaussian graphical models."""

from ._ggm import (
    GGMError,
    build_precision,
    generate,
    lasso,
    lasso_with_loadings,
    min_eigenvalue,
    null_edges,
    penalty_level,
    post_lasso,
    simulate,
    sqrt_lasso,
    std_normal_cdf,
    std_normal_quantile,
    test_edges,
)

__all__ = [
    "GGMError",
    "build_precision",
    "generate",
    "lasso",
    "lasso_with_loadings",
    "min_eigenvalue",
    "null_edges",
    "penalty_level",
    "post_lasso",
    "simulate",
    "sqrt_lasso",
    "std_normal_cdf",
    "std_normal_quantile",
    "test_edges",
]
