"""
Fixed-precision residues in Z/p^N.

Everything above this module works with plain Python ints reduced into
``[0, p^N)`` for speed; :class:`Residue` is the user-facing wrapper that
carries its :class:`PrecCtx`.
"""

from dataclasses import dataclass, field, replace
from typing import Union

from sympy import isprime

from quatforms.errors import (
    ConfigValidationError,
    NoLiftInBound,
    NonUnitConstantTerm,
    PrecisionInsufficient,
)


@dataclass(frozen=True)
class PrecCtx:
    """
    Precision context.

    Args:
        p: odd prime, never 2 (the quaternion algebra is ramified there)
        N: coefficient precision exponent, residues live in Z/p^N
        M: number of retained powers of z in truncated series
    """

    p: int
    N: int
    M: int = 1
    modulus: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 3 or not isprime(self.p):
            raise ConfigValidationError(f"p must be an odd prime, got {self.p!r}")
        if self.N < 1:
            raise ConfigValidationError(f"precision N must be >= 1, got {self.N}")
        if self.M < 1:
            raise ConfigValidationError(f"truncation M must be >= 1, got {self.M}")
        object.__setattr__(self, "modulus", self.p**self.N)

    def with_precision(self, N: int) -> "PrecCtx":
        return replace(self, N=N)

    def with_truncation(self, M: int) -> "PrecCtx":
        return replace(self, M=M)

    def reduce(self, x: int) -> int:
        return x % self.modulus

    def valuation(self, x: int) -> int:
        """p-adic valuation of an int, capped at N (N means 'zero to this precision')."""
        return val_int(x, self.p, self.N)

    def is_unit(self, x: int) -> bool:
        return x % self.p != 0

    def inverse(self, x: int) -> int:
        if x % self.p == 0:
            raise NonUnitConstantTerm(f"{x} is not a unit mod {self.p}")
        return pow(x, -1, self.modulus)

    def residue(self, x: int) -> "Residue":
        return Residue(x, self)


def val_int(x: int, p: int, cap: int) -> int:
    """Largest v <= cap with p^v | x."""
    if x == 0:
        return cap
    v = 0
    while v < cap and x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class Residue:
    """An element of Z/p^N."""

    value: int
    ctx: PrecCtx

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.ctx.modulus)

    def _coerce(self, other: Union["Residue", int]) -> int:
        if isinstance(other, Residue):
            if other.ctx.p != self.ctx.p or other.ctx.N != self.ctx.N:
                raise ValueError("residues from different precision contexts")
            return other.value
        return int(other)

    def __add__(self, other):
        return Residue(self.value + self._coerce(other), self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        return Residue(self.value - self._coerce(other), self.ctx)

    def __rsub__(self, other):
        return Residue(self._coerce(other) - self.value, self.ctx)

    def __mul__(self, other):
        return Residue(self.value * self._coerce(other), self.ctx)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.ctx)

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return Residue(pow(self.value, exponent, self.ctx.modulus), self.ctx)

    def __truediv__(self, other):
        return self * Residue(self._coerce(other), self.ctx).inverse()

    def __int__(self):
        return self.value

    def inverse(self) -> "Residue":
        return Residue(self.ctx.inverse(self.value), self.ctx)

    def valuation(self) -> int:
        return valuation(self)

    def is_unit(self) -> bool:
        return self.ctx.is_unit(self.value)

    def __str__(self):
        return str(self.value)


def valuation(r: Residue) -> int:
    """Returns max v <= N with p^v | value; N stands for 'valuation at least N'."""
    return val_int(r.value, r.ctx.p, r.ctx.N)


def symmetric_lift(r: Residue, bound: int) -> int:
    """
    Recover an integer from its residue.

    Args:
        r: the residue mod p^N
        bound: bound on the absolute value of the integer sought

    Returns:
        The unique c with |c| <= bound and c = r mod p^N.

    Raises:
        PrecisionInsufficient: if p^N <= 2 * bound (the answer would not be unique)
        NoLiftInBound: if the symmetric representative exceeds bound
    """
    q = r.ctx.modulus
    if q <= 2 * bound:
        raise PrecisionInsufficient(f"p^N = {q} does not exceed 2*bound = {2 * bound}")
    c = r.value if r.value <= q // 2 else r.value - q
    if abs(c) > bound:
        raise NoLiftInBound(f"symmetric representative {c} exceeds bound {bound}")
    return c


def symmetric_int(x: int, modulus: int) -> int:
    """Representative of x mod modulus in (-modulus/2, modulus/2]."""
    x %= modulus
    return x if x <= modulus // 2 else x - modulus


def hensel_root(coeffs, ctx: PrecCtx, root_mod_p: int) -> int:
    """
    Lift a simple root of an integer polynomial from Z/p to Z/p^N.

    Args:
        coeffs: polynomial coefficients, lowest degree first
        ctx: target precision
        root_mod_p: a root mod p with nonzero derivative mod p
    """
    q = ctx.modulus

    def evaluate(cs, x):
        acc = 0
        for c in reversed(cs):
            acc = (acc * x + c) % q
        return acc

    deriv = [i * c for i, c in enumerate(coeffs)][1:]
    if evaluate(deriv, root_mod_p) % ctx.p == 0:
        raise ValueError("root is not simple mod p")
    x = root_mod_p % q
    precision = 1
    while precision < ctx.N:
        x = (x - evaluate(coeffs, x) * pow(evaluate(deriv, x), -1, q)) % q
        precision *= 2
    return x
