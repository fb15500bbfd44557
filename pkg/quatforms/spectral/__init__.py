from .charpoly_int import (
    IntCharpoly,
    binomial_row_bound,
    charpoly_int,
    eigenvalue_bound,
    has_factor,
    int_poly,
    required_precision,
)
from .slopes import SlopeSpectrum, slope_spectrum
from .eigenforms import (
    EigenApprox,
    EigenvalueReading,
    IterationResult,
    SharedEigenvalues,
    extract_eigenvalue,
    power_iterate,
    shared_eigenvalues,
    split_by_W,
)
from .classicality import ClassicalityVerdict, classicality_evidence, ramanujan_bound

__all__ = [
    "IntCharpoly",
    "binomial_row_bound",
    "charpoly_int",
    "eigenvalue_bound",
    "has_factor",
    "int_poly",
    "required_precision",
    "SlopeSpectrum",
    "slope_spectrum",
    "EigenApprox",
    "EigenvalueReading",
    "IterationResult",
    "SharedEigenvalues",
    "extract_eigenvalue",
    "power_iterate",
    "shared_eigenvalues",
    "split_by_W",
    "ClassicalityVerdict",
    "classicality_evidence",
    "ramanujan_bound",
]
