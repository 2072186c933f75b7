"""Overlap-free scatterplot layout."""

from ._core import (
    check_mutual_exclusion,
    curve_test_vectors,
    evaluate_curve,
    layout,
    layout_json,
    metrics,
    pack,
    tangent_position,
    transcribe,
)

__all__ = [
    "check_mutual_exclusion",
    "curve_test_vectors",
    "evaluate_curve",
    "layout",
    "layout_json",
    "metrics",
    "pack",
    "tangent_position",
    "transcribe",
]
