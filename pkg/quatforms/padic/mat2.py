from dataclasses import dataclass
from typing import Sequence, Tuple

from quatforms.errors import ConfigValidationError, NonUnitConstantTerm
from quatforms.padic.residue import PrecCtx, Residue


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix (a b; c d) over Z/p^N. Entries are stored as reduced ints."""

    a: int
    b: int
    c: int
    d: int
    ctx: PrecCtx

    def __post_init__(self):
        q = self.ctx.modulus
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, int(getattr(self, name)) % q)

    @classmethod
    def identity(cls, ctx: PrecCtx) -> "Mat2":
        return cls(1, 0, 0, 1, ctx)

    @classmethod
    def from_tuple(cls, entries: Sequence[int], ctx: PrecCtx) -> "Mat2":
        a, b, c, d = entries
        return cls(a, b, c, d, ctx)

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def entries(self) -> Tuple[Residue, Residue, Residue, Residue]:
        return tuple(Residue(x, self.ctx) for x in self.as_tuple())

    def __matmul__(self, other: "Mat2") -> "Mat2":
        if other.ctx.modulus != self.ctx.modulus:
            raise ConfigValidationError(f"cannot multiply matrices mod {self.ctx.modulus} and mod {other.ctx.modulus}")
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.ctx,
        )

    def scale(self, s: int) -> "Mat2":
        return Mat2(self.a * s, self.b * s, self.c * s, self.d * s, self.ctx)

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.ctx.modulus

    def adjugate(self) -> "Mat2":
        return Mat2(self.d, -self.b, -self.c, self.a, self.ctx)

    def inverse(self) -> "Mat2":
        det = self.det()
        if not self.ctx.is_unit(det):
            raise NonUnitConstantTerm(f"determinant {det} is not a unit mod {self.ctx.p}")
        return self.adjugate().scale(pow(det, -1, self.ctx.modulus))

    def transpose(self) -> "Mat2":
        return Mat2(self.a, self.c, self.b, self.d, self.ctx)

    def apply(self, vec: Sequence[int]) -> Tuple[int, int]:
        x, y = vec
        q = self.ctx.modulus
        return ((self.a * x + self.b * y) % q, (self.c * x + self.d * y) % q)

    def column(self, index: int) -> Tuple[int, int]:
        return (self.a, self.c) if index == 0 else (self.b, self.d)

    def reduce(self, ctx: PrecCtx) -> "Mat2":
        """Same matrix read in a (usually coarser) context."""
        return Mat2(self.a, self.b, self.c, self.d, ctx)
