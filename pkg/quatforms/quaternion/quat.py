from dataclasses import dataclass
from typing import Tuple

from quatforms.errors import ConfigValidationError


@dataclass(frozen=True, order=True)
class Quat:
    """
    Hurwitz quaternion in doubled coordinates.

    Stores (x0, x1, x2, x3) representing (x0 + x1*i + x2*j + x3*k) / 2 in the
    Hamiltonian algebra (i^2 = j^2 = -1, ij = k). All four coordinates share
    a parity: all even is a Lipschitz element, all odd a half-integral one.
    """

    x0: int
    x1: int
    x2: int
    x3: int

    def __post_init__(self):
        parities = {self.x0 & 1, self.x1 & 1, self.x2 & 1, self.x3 & 1}
        if len(parities) != 1:
            raise ConfigValidationError(f"doubled coordinates {self.coords} are not a Hurwitz quaternion")

    @classmethod
    def from_integral(cls, a: int, b: int = 0, c: int = 0, d: int = 0) -> "Quat":
        """The Lipschitz element a + b*i + c*j + d*k."""
        return cls(2 * a, 2 * b, 2 * c, 2 * d)

    @property
    def coords(self) -> Tuple[int, int, int, int]:
        return (self.x0, self.x1, self.x2, self.x3)

    def __mul__(self, other: "Quat") -> "Quat":
        a0, a1, a2, a3 = self.coords
        b0, b1, b2, b3 = other.coords
        r0 = a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3
        r1 = a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2
        r2 = a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1
        r3 = a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0
        # (A/2)(B/2) = (AB/2)/2
        return Quat(r0 // 2, r1 // 2, r2 // 2, r3 // 2)

    def __add__(self, other: "Quat") -> "Quat":
        return Quat(*(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "Quat") -> "Quat":
        return Quat(*(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "Quat":
        return Quat(-self.x0, -self.x1, -self.x2, -self.x3)

    def conj(self) -> "Quat":
        return Quat(self.x0, -self.x1, -self.x2, -self.x3)

    def norm(self) -> int:
        return (self.x0**2 + self.x1**2 + self.x2**2 + self.x3**2) // 4

    def trace(self) -> int:
        """Reduced trace q + conj(q), i.e. twice the real part, which is x0."""
        return self.x0

    def is_lipschitz(self) -> bool:
        return self.x0 % 2 == 0

    def divide_exact(self, n: int) -> "Quat":
        """self / n for a rational integer n dividing self in the Hurwitz order."""
        if any(x % n for x in self.coords):
            raise ValueError(f"{self} is not divisible by {n} in doubled coordinates")
        return Quat(*(x // n for x in self.coords))

    def inverse_unit(self) -> "Quat":
        if self.norm() != 1:
            raise ValueError(f"{self} is not a unit")
        return self.conj()

    def __str__(self):
        return "(" + " + ".join(f"{x}{e}" for x, e in zip(self.coords, ("", "i", "j", "k"))) + ")/2"


ONE = Quat(2, 0, 0, 0)
I = Quat(0, 2, 0, 0)
J = Quat(0, 0, 2, 0)
K = Quat(0, 0, 0, 2)
ONE_PLUS_I = Quat(2, 2, 0, 0)


def quat_mul(a: Quat, b: Quat) -> Quat:
    return a * b


def quat_conj(a: Quat) -> Quat:
    return a.conj()


def quat_norm(a: Quat) -> int:
    return a.norm()


def quat_trace(a: Quat) -> int:
    return a.trace()
