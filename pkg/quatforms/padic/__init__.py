from .residue import PrecCtx, Residue, hensel_root, symmetric_int, symmetric_lift, val_int, valuation
from .mat2 import Mat2
from .series import (
    PadicPoly,
    TruncSeries,
    check_monoid,
    polynomial_block,
    series_compose,
    series_invert,
    weight_action,
    weight_block,
)
from .linalg import (
    SolveResult,
    as_matrix,
    charpoly,
    evaluate_matrix_poly,
    hessenberg_form,
    kernel_vector_2x2,
    mat_mul,
    min_valuation,
    pivot_valuations,
    solve_pivoted,
    strip_zero_rows,
)
from .newton import Slope, expand_slopes, lower_hull, newton_slopes

__all__ = [
    "PrecCtx",
    "Residue",
    "Mat2",
    "PadicPoly",
    "TruncSeries",
    "SolveResult",
    "Slope",
    "valuation",
    "val_int",
    "symmetric_lift",
    "symmetric_int",
    "hensel_root",
    "check_monoid",
    "series_invert",
    "series_compose",
    "weight_action",
    "weight_block",
    "polynomial_block",
    "as_matrix",
    "mat_mul",
    "min_valuation",
    "charpoly",
    "evaluate_matrix_poly",
    "hessenberg_form",
    "strip_zero_rows",
    "pivot_valuations",
    "solve_pivoted",
    "kernel_vector_2x2",
    "newton_slopes",
    "expand_slopes",
    "lower_hull",
]
