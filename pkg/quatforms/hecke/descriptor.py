import re
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator
from sympy import isprime

from quatforms.errors import ConfigValidationError

_LABEL = re.compile(r"^\s*(?:(?P<kind>[TtUuDd])\s*(?P<site>\d+)|(?P<w>[Ww]))\s*$")


class ConventionProfile(BaseModel):
    """
    Frozen choice of how local matrices act on coefficient blocks.

    The default acts by gamma itself, the calibration that reproduces the
    weight-5 T3 polynomial at level U1(7). ``transpose_action`` acts on
    Sym^(k-2) by the transposed matrix instead; it only exists in the
    classical model and serves as the negative control.
    """

    model_config = ConfigDict(frozen=True)

    transpose_action: bool = Field(False, description="Act by the transpose of each local matrix")


class HeckeDescriptor(BaseModel):
    """
    A Hecke operator: T_l at a good odd prime, U_p at the level prime,
    W = [U(1+i)U], or the diamond operator <d> = [U t_d U] with
    t_d = (1 0; 0 d) at p for d prime to p.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["Tl", "Up", "W", "D"] = Field(..., description="Operator family")
    site: Optional[int] = Field(None, description="Prime l for Tl, p for Up, d for D, unused for W")

    @model_validator(mode="after")
    def _check_site(self):
        if self.kind == "W":
            if self.site not in (None, 2):
                raise ValueError("W lives at 2 and takes no site")
            return self
        if self.kind == "D":
            if self.site is None or self.site < 1:
                raise ValueError(f"D needs a positive integer d, got {self.site!r}")
            return self
        if self.site is None or not isprime(self.site) or self.site == 2:
            raise ValueError(f"{self.kind} needs an odd prime site, got {self.site!r}")
        return self

    @classmethod
    def parse(cls, label: str) -> "HeckeDescriptor":
        """Read ``T3``, ``U11``, ``D2`` or ``W``."""
        match = _LABEL.match(label)
        if not match:
            raise ConfigValidationError(f"cannot parse operator {label!r}; expected T<l>, U<p>, D<d> or W")
        try:
            if match.group("w"):
                return cls(kind="W")
            kind = {"T": "Tl", "U": "Up", "D": "D"}[match.group("kind").upper()]
            return cls(kind=kind, site=int(match.group("site")))
        except ValidationError as exc:
            raise ConfigValidationError(f"invalid operator {label!r}: {exc.errors()[0]['msg']}") from exc

    @property
    def label(self) -> str:
        if self.kind == "W":
            return "W"
        prefix = {"Tl": "T", "Up": "U", "D": "D"}[self.kind]
        return f"{prefix}{self.site}"

    def check_level(self, p: int) -> None:
        """Raise ConfigValidationError if the operator is not defined at level prime p."""
        if self.kind == "Tl" and self.site == p:
            raise ConfigValidationError(f"T{p} is not a good-prime operator at level p={p}; use U{p}")
        if self.kind == "Up" and self.site != p:
            raise ConfigValidationError(f"U{self.site} does not match the level prime p={p}")
        if self.kind == "D" and self.site % p == 0:
            raise ConfigValidationError(f"<{self.site}> needs d prime to p={p}")

    def __str__(self):
        return self.label
