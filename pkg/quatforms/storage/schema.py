"""
Report schemas for the command-line tools.

Residues are written as decimal strings next to the prime and precision
they live at. ``generated_at`` is the only field that changes between
identical runs.
"""

import json
from datetime import datetime, timezone
from typing import Dict, List, Optional

from pydantic import BaseModel, Field


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class LevelHeader(BaseModel):
    p: int = Field(..., description="Level prime")
    n: int = Field(..., description="Level exponent at p")
    e: int = Field(..., description="Exponent of the level structure 1 + m^e at 2")
    gamma_style: str = Field(..., description="unit-column (U1) or projective (U0)")
    precision: int = Field(..., description="Coefficient precision N")
    truncation: Optional[int] = Field(None, description="Series truncation M (overconvergent runs)")
    character: Optional[int] = Field(None, description="Exponent a of the nebentypus omega^a, when projected")


class ClassRepEntry(BaseModel):
    s: List[int] = Field(..., description="Invariant at p, a vector mod p^n")
    y: int = Field(..., description="Index of the class in Y_e")
    y_representative: List[int] = Field(..., description="Doubled coordinates of the Y_e representative")
    stab_order: int
    lift: List[str] = Field(..., description="Lifted matrix (a, b, c, d) mod p^N")


class ClassSetReport(BaseModel):
    level: LevelHeader
    recipe: str
    size: int
    reps: List[ClassRepEntry]
    kernel_class_count: int = Field(..., description="Orbits of unit_subgroup(e) on G.x alone")
    generated_at: str = Field(default_factory=_now)


class SlopeEntry(BaseModel):
    value: str = Field(..., description="Slope as a fraction string")
    multiplicity: int
    reliable: bool


class HeckeReport(BaseModel):
    level: LevelHeader
    operator: str
    weight: int
    model: str
    dim: int
    transpose_action: bool = False
    matrix: Optional[List[List[str]]] = None
    charpoly: Optional[List[str]] = Field(None, description="det(x - T) mod p^N, lowest degree first")
    charpoly_int: Optional[List[str]] = Field(None, description="Integer lift, lowest degree first")
    charpoly_int_text: Optional[str] = None
    lift_precision: Optional[int] = None
    slopes: Optional[List[SlopeEntry]] = None
    factor_checks: Dict[str, bool] = Field(default_factory=dict)
    generated_at: str = Field(default_factory=_now)


class SlopeReport(BaseModel):
    level: LevelHeader
    weight: int
    slopes: List[SlopeEntry]
    lowest: List[str]
    reliable_below: int
    stable: bool
    stable_count: int
    generated_at: str = Field(default_factory=_now)


class EigenformEntry(BaseModel):
    eigenvalues: Dict[str, str] = Field(..., description="Operator label to eigenvalue mod p^precision")
    precision: int
    precision_loss: int
    blocks: List[List[str]] = Field(..., description="Coefficient blocks f(d_1), ..., f(d_m)")


class ClassicalityEntry(BaseModel):
    operator: str
    bound: int
    dmax: int
    matches: List[List[int]]
    verdict: str


class EigenformReport(BaseModel):
    level: LevelHeader
    weight: int
    model: str
    iterations: int
    slope: int
    seeds: List[int]
    forms: List[EigenformEntry]
    split: bool = Field(..., description="Whether W split the span")
    shared: Optional[bool] = Field(None, description="All forms share every extracted eigenvalue")
    classicality: List[ClassicalityEntry] = Field(default_factory=list)
    generated_at: str = Field(default_factory=_now)


class CriterionResult(BaseModel):
    id: str
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0


class VerifyReport(BaseModel):
    results: List[CriterionResult]
    all_passed: bool
    generated_at: str = Field(default_factory=_now)


def dump_report(report: BaseModel) -> str:
    """Stable JSON text of a report."""
    return json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2)
