from dataclasses import dataclass
from typing import List, Tuple

from sympy import isprime

from quatforms.errors import ConfigValidationError
from quatforms.padic.mat2 import Mat2
from quatforms.padic.residue import PrecCtx

GAMMA_STYLES = ("unit-column", "projective")
MAX_TWO_ADIC_EXPONENT = 4

Vector = Tuple[int, int]


@dataclass(frozen=True)
class LevelSpec:
    """
    Level U = U_p x (1 + m^e) x (maximal elsewhere).

    At p, ``unit-column`` is the group of matrices with c = 0 and d = 1
    mod p^n; ``projective`` drops the condition on d.
    """

    p: int
    n: int = 1
    e: int = 0
    gamma_style: str = "unit-column"

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 3 or not isprime(self.p):
            raise ConfigValidationError(f"p must be an odd prime, got {self.p!r}")
        if self.n < 1:
            raise ConfigValidationError(f"level exponent n must be >= 1, got {self.n}")
        if not 0 <= self.e <= MAX_TWO_ADIC_EXPONENT:
            raise ConfigValidationError(f"e must lie in [0, {MAX_TWO_ADIC_EXPONENT}], got {self.e}")
        if self.gamma_style not in GAMMA_STYLES:
            raise ConfigValidationError(f"gamma_style must be one of {GAMMA_STYLES}, got {self.gamma_style!r}")

    @property
    def modulus(self) -> int:
        return self.p**self.n

    @property
    def level_ctx(self) -> PrecCtx:
        """Context of the invariants s, which live mod p^n."""
        return PrecCtx(self.p, self.n)

    @property
    def projective(self) -> bool:
        return self.gamma_style == "projective"

    def gx_size(self) -> int:
        p, n = self.p, self.n
        if self.projective:
            return p**n + p ** (n - 1)
        return p ** (2 * n) - p ** (2 * n - 2)

    def normalize(self, s: Vector) -> Vector:
        """Reduce s mod p^n; in projective style also scale the line to (1, y) or (x, 1)."""
        q = self.modulus
        x, y = s[0] % q, s[1] % q
        if not self.projective:
            return (x, y)
        if x % self.p:
            return (1, y * pow(x, -1, q) % q)
        return (x * pow(y, -1, q) % q, 1)

    def invariant(self, g: Mat2) -> Vector:
        """
        Coset invariant of g in GL_2(Z_p)/U_p.

        For unit-column style this is det(g)^-1 * g * e1 mod p^n, for
        projective style the line through g * e1.
        """
        q = self.modulus
        x, y = g.a % q, g.c % q
        if self.projective:
            return self.normalize((x, y))
        d_inv = pow(g.det() % q, -1, q)
        return (x * d_inv % q, y * d_inv % q)

    def describe(self) -> str:
        style = "U1" if not self.projective else "U0"
        suffix = f" x (1+m^{self.e})" if self.e else ""
        return f"{style}({self.p}^{self.n}){suffix}"


def build_gx(p: int, n: int, gamma_style: str = "unit-column") -> List[Vector]:
    """
    Column vectors mod p^n with a unit coordinate, sorted.

    In projective style one normalised vector per line is returned, so the
    list has p^n + p^(n-1) entries instead of p^(2n) - p^(2n-2).
    """
    level = LevelSpec(p=p, n=n, gamma_style=gamma_style)
    q = level.modulus
    if level.projective:
        lines = [(1, y) for y in range(q)] + [(x, 1) for x in range(0, q, p)]
        return sorted(lines)
    return [(x, y) for x in range(q) for y in range(q) if x % p or y % p]
