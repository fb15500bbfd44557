"""
Spaces of automorphic forms on the class set.

A form is determined by its values f(d_1), ..., f(d_m) on the class
representatives; each value is a polynomial of degree <= k - 2 (classical
model) or a power series truncated mod z^M (overconvergent model). Forms are
stored as one flat coefficient vector, block j holding f(d_j).
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

import numpy as np

from quatforms.classes.class_set import ClassSet
from quatforms.errors import ConfigValidationError
from quatforms.padic.linalg import min_valuation
from quatforms.padic.residue import PrecCtx
from quatforms.padic.series import PadicPoly, TruncSeries

MODELS = ("classical", "overconvergent")


@dataclass
class FormSpace:
    cs: ClassSet
    k: int
    model: str = "classical"
    character: Optional[int] = None

    def __post_init__(self):
        if self.model not in MODELS:
            raise ConfigValidationError(f"model must be one of {MODELS}, got {self.model!r}")
        if self.k < 1:
            raise ConfigValidationError(f"weight must be >= 1, got {self.k}")
        if self.model == "classical" and self.k < 2:
            raise ConfigValidationError("the classical model needs weight >= 2")
        if self.cs.level.projective and self.k != 2:
            raise ConfigValidationError("projective (U0) levels are only supported in weight 2")
        if self.character is not None:
            level = self.cs.level
            if level.projective or level.n != 1:
                raise ConfigValidationError("a nebentypus character needs a unit-column level with n = 1")
            if not 0 <= self.character < level.p - 1:
                raise ConfigValidationError(f"character exponent must lie in [0, {level.p - 2}], got {self.character}")

    @property
    def ctx(self) -> PrecCtx:
        return self.cs.ctx

    @property
    def block_dim(self) -> int:
        return self.k - 1 if self.model == "classical" else self.ctx.M

    @property
    def num_classes(self) -> int:
        return len(self.cs)

    @property
    def dim(self) -> int:
        return self.num_classes * self.block_dim

    def with_context(self, N: Optional[int] = None, M: Optional[int] = None) -> "FormSpace":
        """The same space at another coefficient precision or truncation."""
        ctx = self.ctx
        if N is not None:
            ctx = ctx.with_precision(N)
        if M is not None:
            ctx = ctx.with_truncation(M)
        return FormSpace(self.cs.with_context(ctx), self.k, self.model, self.character)

    def block_slice(self, j: int) -> slice:
        b = self.block_dim
        return slice(j * b, (j + 1) * b)

    def describe(self) -> str:
        chi = "" if self.character is None else f" with character omega^{self.character}"
        return f"weight {self.k} {self.model} forms on {self.cs.level.describe()}{chi} (dim {self.dim})"


@dataclass
class AutForm:
    """A form as its flat coefficient vector over Z/p^N."""

    space: FormSpace
    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.array([int(c) % self.space.ctx.modulus for c in self.coeffs], dtype=object)
        if arr.shape != (self.space.dim,):
            raise ValueError(f"form needs {self.space.dim} coefficients, got {arr.shape}")
        self.coeffs = arr

    @classmethod
    def zero(cls, space: FormSpace) -> "AutForm":
        return cls(space, np.zeros(space.dim, dtype=object))

    @classmethod
    def basis(cls, space: FormSpace, index: int) -> "AutForm":
        v = np.zeros(space.dim, dtype=object)
        v[index] = 1
        return cls(space, v)

    @classmethod
    def constant(cls, space: FormSpace, value: int = 1) -> "AutForm":
        """The form with value `value` (a constant polynomial) at every class."""
        v = np.zeros(space.dim, dtype=object)
        for j in range(space.num_classes):
            v[j * space.block_dim] = value
        return cls(space, v)

    @classmethod
    def from_blocks(cls, space: FormSpace, blocks: Sequence[Union[PadicPoly, TruncSeries, Sequence[int]]]) -> "AutForm":
        if len(blocks) != space.num_classes:
            raise ValueError(f"expected {space.num_classes} blocks, got {len(blocks)}")
        v = np.zeros(space.dim, dtype=object)
        for j, block in enumerate(blocks):
            cs = list(block.coeffs if hasattr(block, "coeffs") else block)
            if len(cs) > space.block_dim:
                raise ValueError(f"block {j} has {len(cs)} coefficients, more than {space.block_dim}")
            v[j * space.block_dim : j * space.block_dim + len(cs)] = cs
        return cls(space, v)

    @classmethod
    def random(cls, space: FormSpace, rng: np.random.Generator, support: Optional[int] = None) -> "AutForm":
        """
        Random coefficients mod p^N, drawn digit by digit in base p.

        With ``support`` set, only that class block is filled and the others
        are zero.
        """
        p, N = space.ctx.p, space.ctx.N
        digits = rng.integers(0, p, size=(space.dim, N))
        v = np.array([sum(int(d) * p**i for i, d in enumerate(row)) for row in digits], dtype=object)
        if support is not None:
            mask = np.zeros(space.dim, dtype=bool)
            mask[space.block_slice(support)] = True
            v[~mask] = 0
        return cls(space, v)

    def block(self, j: int) -> Union[PadicPoly, TruncSeries]:
        cs = tuple(int(c) for c in self.coeffs[self.space.block_slice(j)])
        if self.space.model == "classical":
            return PadicPoly(cs, self.space.ctx)
        return TruncSeries(cs, self.space.ctx)

    def blocks(self) -> List[Union[PadicPoly, TruncSeries]]:
        return [self.block(j) for j in range(self.space.num_classes)]

    def __add__(self, other: "AutForm") -> "AutForm":
        return AutForm(self.space, self.coeffs + other.coeffs)

    def __sub__(self, other: "AutForm") -> "AutForm":
        return AutForm(self.space, self.coeffs - other.coeffs)

    def scale(self, c: int) -> "AutForm":
        return AutForm(self.space, self.coeffs * int(c))

    def valuation(self) -> int:
        return min_valuation(self.coeffs, self.space.ctx)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, AutForm) and other.space is self.space and list(self.coeffs) == list(other.coeffs)
