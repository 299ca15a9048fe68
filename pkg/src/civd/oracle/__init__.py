"""Exact references and validation sweeps for small instances."""
from .exact import (
    BRUTE_FORCE_CAP,
    brute_max_vector,
    density_scan_max,
    hyperplane_max_vector,
    is_hyperplane_separable,
    is_maximal_pair,
    max_influence,
)
from .validation import OracleReport, ValidationSummary, check_query, sample_queries, summarize, validate_civd

__all__ = [
    "BRUTE_FORCE_CAP",
    "OracleReport",
    "ValidationSummary",
    "brute_max_vector",
    "check_query",
    "density_scan_max",
    "hyperplane_max_vector",
    "is_hyperplane_separable",
    "is_maximal_pair",
    "max_influence",
    "sample_queries",
    "summarize",
    "validate_civd",
]
