from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator
from sympy import Poly, SympifyError, isprime, sympify

from quatforms.classes.level import MAX_TWO_ADIC_EXPONENT
from quatforms.errors import ConfigValidationError, QuatFormsError
from quatforms.hecke.descriptor import HeckeDescriptor
from quatforms.spectral.charpoly_int import x


class Command(str, Enum):
    CLASSSET = "classset"
    HECKE = "hecke"
    SLOPES = "slopes"
    EIGENFORM = "eigenform"
    VERIFY = "verify"


class GammaStyle(str, Enum):
    UNIT_COLUMN = "unit-column"
    PROJECTIVE = "projective"


class SpaceModel(str, Enum):
    CLASSICAL = "classical"
    OVERCONVERGENT = "overconvergent"


class OutputFormat(str, Enum):
    JSON = "json"
    TABLE = "table"


def parse_factor(text: str) -> Poly:
    """An integer polynomial in x, written like ``x^2-14*x+121``."""
    try:
        poly = Poly(sympify(text.replace("^", "**")), x)
    except (SympifyError, TypeError, ValueError) as exc:
        raise ValueError(f"cannot read polynomial {text!r}: {exc}") from exc
    if not all(c.is_integer for c in poly.all_coeffs()):
        raise ValueError(f"polynomial {text!r} must have integer coefficients")
    if poly.LC() != 1:
        raise ValueError(f"polynomial {text!r} must be monic")
    return poly


class JobConfig(BaseModel):
    """One CLI invocation, validated before any computation starts."""

    command: Command
    p: int = Field(..., description="Odd prime for the level at p")
    n: int = Field(1, description="Level exponent at p")
    e: int = Field(0, description="Level structure 1 + m^e at 2")
    gamma_style: GammaStyle = Field(GammaStyle.UNIT_COLUMN, description="U1 (unit-column) or U0 (projective)")
    weight: int = Field(2, description="Weight k")
    model: SpaceModel = Field(SpaceModel.CLASSICAL, description="Coefficient model of the form space")
    precision: int = Field(20, description="Coefficient precision N")
    truncation: int = Field(20, description="Series truncation M")
    ops: List[str] = Field(default_factory=list, description="Operator labels such as T3, U11, W")
    iters: Optional[int] = Field(None, description="Power-iteration count K (None: precision)")
    seeds: List[int] = Field(default_factory=lambda: [1, 2], description="PRNG seeds for power iteration")
    dim: int = Field(1, description="Expected dimension of the slope part in eigenform runs")
    slope: int = Field(0, description="Integer slope extracted by eigenform runs")
    character: Optional[int] = Field(None, description="Exponent a of the nebentypus omega^a at p")
    recipe: str = Field("diagonal", description="Class-set recipe")
    cache_dir: Optional[Path] = None
    out: Optional[Path] = None
    format: OutputFormat = OutputFormat.JSON
    charpoly: bool = False
    lift: bool = False
    matrix: bool = False
    expect_factors: List[str] = Field(default_factory=list, description="Monic integer factors to test for")

    @field_validator("p")
    @classmethod
    def _odd_prime(cls, v: int) -> int:
        if v < 3 or not isprime(v):
            raise ValueError(f"p must be an odd prime, got {v}")
        return v

    @field_validator("n")
    @classmethod
    def _level_exponent(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"n must be >= 1, got {v}")
        return v

    @field_validator("e")
    @classmethod
    def _two_adic_exponent(cls, v: int) -> int:
        if not 0 <= v <= MAX_TWO_ADIC_EXPONENT:
            raise ValueError(f"e must lie in [0, {MAX_TWO_ADIC_EXPONENT}], got {v}")
        return v

    @field_validator("ops")
    @classmethod
    def _operator_labels(cls, v: List[str]) -> List[str]:
        labels = []
        for label in v:
            try:
                labels.append(HeckeDescriptor.parse(label).label)
            except QuatFormsError as exc:
                raise ValueError(str(exc)) from exc
        return labels

    @field_validator("expect_factors")
    @classmethod
    def _factors(cls, v: List[str]) -> List[str]:
        for text in v:
            parse_factor(text)
        return v

    @model_validator(mode="after")
    def _preconditions(self) -> "JobConfig":
        if self.precision <= self.n:
            raise ValueError(f"precision N={self.precision} must exceed n={self.n}")
        if self.truncation < 1:
            raise ValueError(f"truncation M must be >= 1, got {self.truncation}")
        if self.weight < 1:
            raise ValueError(f"weight must be >= 1, got {self.weight}")
        if self.model == SpaceModel.CLASSICAL and self.weight < 2:
            raise ValueError("the classical model needs weight >= 2")
        if self.gamma_style == GammaStyle.PROJECTIVE and self.weight != 2:
            raise ValueError("projective (U0) levels are only supported in weight 2")
        if self.dim < 1 or self.slope < 0:
            raise ValueError("dim must be >= 1 and slope >= 0")
        for label in self.ops:
            HeckeDescriptor.parse(label).check_level(self.p)
        if self.lift and self.model != SpaceModel.CLASSICAL:
            raise ValueError("integer lifts need the classical model")
        if self.character is not None:
            if self.gamma_style != GammaStyle.UNIT_COLUMN or self.n != 1:
                raise ValueError("a nebentypus character needs a unit-column level with n = 1")
            if not 0 <= self.character < self.p - 1:
                raise ValueError(f"character exponent must lie in [0, {self.p - 2}], got {self.character}")
        return self

    @property
    def descriptors(self) -> List[HeckeDescriptor]:
        return [HeckeDescriptor.parse(label) for label in self.ops]

    @classmethod
    def from_sources(cls, command: Command, defaults: Dict[str, Any], flags: Dict[str, Any]) -> "JobConfig":
        """
        Merge configuration defaults with explicit flags (flags win).

        Raises:
            ConfigValidationError: when the merged values violate a precondition
        """
        values = {k: v for k, v in defaults.items() if k in cls.model_fields}
        values.update({k: v for k, v in flags.items() if v is not None})
        values["command"] = command
        try:
            return cls(**values)
        except ValidationError as exc:
            problems = "; ".join(err["msg"] for err in exc.errors())
            raise ConfigValidationError(problems) from exc
