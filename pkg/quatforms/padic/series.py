"""
Polynomials and truncated power series over Z/p^N, and the weight-k action

    (h | g)(z) = (cz + d)^(k-2) * h((az + b) / (cz + d))

of matrices g = (a b; c d) with p | c (or c = 0) and d a unit.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np

from quatforms.errors import InvalidMonoidElement, NegativeWeightOnPolynomial, NonUnitConstantTerm
from quatforms.padic.mat2 import Mat2
from quatforms.padic.residue import PrecCtx, Residue


def _mul_trunc(a: Sequence[int], b: Sequence[int], length: int, q: int) -> List[int]:
    out = [0] * length
    for i, ai in enumerate(a[:length]):
        if ai == 0:
            continue
        for j, bj in enumerate(b[: length - i]):
            out[i + j] += ai * bj
    return [x % q for x in out]


def _mul_poly(a: Sequence[int], b: Sequence[int], q: int) -> List[int]:
    if not a or not b:
        return []
    return _mul_trunc(a, b, len(a) + len(b) - 1, q)


def _invert_trunc(s: Sequence[int], length: int, ctx: PrecCtx) -> List[int]:
    q = ctx.modulus
    if ctx.valuation(s[0]) > 0:
        raise NonUnitConstantTerm(f"constant term {s[0]} is divisible by {ctx.p}")
    inv0 = pow(s[0], -1, q)
    out = [0] * length
    out[0] = inv0
    for n in range(1, length):
        acc = 0
        for i in range(1, min(n, len(s) - 1) + 1):
            acc += s[i] * out[n - i]
        out[n] = (-acc * inv0) % q
    return out


@dataclass(frozen=True)
class PadicPoly:
    """Polynomial over Z/p^N, coefficients lowest degree first; the degree is len(coeffs) - 1."""

    coeffs: Tuple[int, ...]
    ctx: PrecCtx

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) % self.ctx.modulus for c in self.coeffs))

    @classmethod
    def from_residues(cls, residues: Sequence[Residue]) -> "PadicPoly":
        return cls(tuple(r.value for r in residues), residues[0].ctx)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def residues(self) -> List[Residue]:
        return [Residue(c, self.ctx) for c in self.coeffs]

    def __add__(self, other: "PadicPoly") -> "PadicPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return PadicPoly(tuple(x + y for x, y in zip(a, b)), self.ctx)

    def __mul__(self, other: Union["PadicPoly", int]) -> "PadicPoly":
        if isinstance(other, PadicPoly):
            return PadicPoly(tuple(_mul_poly(self.coeffs, other.coeffs, self.ctx.modulus)), self.ctx)
        return PadicPoly(tuple(c * int(other) for c in self.coeffs), self.ctx)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.ctx.modulus
        return acc

    def valuations(self) -> List[int]:
        return [self.ctx.valuation(c) for c in self.coeffs]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1


@dataclass(frozen=True)
class TruncSeries:
    """Power series mod (p^N, z^M); always exactly ctx.M coefficients."""

    coeffs: Tuple[int, ...]
    ctx: PrecCtx

    def __post_init__(self):
        cs = [int(c) % self.ctx.modulus for c in self.coeffs[: self.ctx.M]]
        cs += [0] * (self.ctx.M - len(cs))
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def constant(cls, c: int, ctx: PrecCtx) -> "TruncSeries":
        return cls((c,), ctx)

    @classmethod
    def variable(cls, ctx: PrecCtx) -> "TruncSeries":
        return cls((0, 1), ctx)

    def __add__(self, other: Union["TruncSeries", int]) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return TruncSeries(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)), self.ctx)
        return TruncSeries((self.coeffs[0] + int(other),) + self.coeffs[1:], self.ctx)

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(tuple(-c for c in self.coeffs), self.ctx)

    def __sub__(self, other):
        return self + (-other if isinstance(other, TruncSeries) else -int(other))

    def __mul__(self, other: Union["TruncSeries", int]) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return TruncSeries(tuple(_mul_trunc(self.coeffs, other.coeffs, self.ctx.M, self.ctx.modulus)), self.ctx)
        return TruncSeries(tuple(c * int(other) for c in self.coeffs), self.ctx)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "TruncSeries":
        base = self if exponent >= 0 else series_invert(self)
        result = TruncSeries.constant(1, self.ctx)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def residues(self) -> List[Residue]:
        return [Residue(c, self.ctx) for c in self.coeffs]


def series_invert(s: TruncSeries) -> TruncSeries:
    """
    Multiplicative inverse mod (p^N, z^M).

    Raises:
        NonUnitConstantTerm: if the constant term is divisible by p
    """
    return TruncSeries(tuple(_invert_trunc(s.coeffs, s.ctx.M, s.ctx)), s.ctx)


def series_compose(h: TruncSeries, mu: TruncSeries) -> TruncSeries:
    """h(mu(z)) mod (p^N, z^M) by Horner's rule; mu may have any constant term."""
    result = TruncSeries.constant(0, h.ctx)
    for c in reversed(h.coeffs):
        result = result * mu + c
    return result


def check_monoid(g: Mat2) -> None:
    """Weight action precondition: d a unit and c = 0 or p | c."""
    ctx = g.ctx
    if not ctx.is_unit(g.d) or ctx.is_unit(g.c):
        raise InvalidMonoidElement(f"{g.as_tuple()} is not in the monoid (need p | c and d a unit)")


def _mobius_series(g: Mat2, length: int) -> Tuple[List[int], List[int]]:
    """Return ((cz+d)^-1, (az+b)/(cz+d)) as coefficient lists of the given length."""
    ctx = g.ctx
    q = ctx.modulus
    d_inv = pow(g.d, -1, q)
    ratio = (-g.c * d_inv) % q
    inv = [0] * length
    term = d_inv
    for m in range(length):
        inv[m] = term
        term = term * ratio % q
    mu = _mul_trunc([g.b, g.a], inv, length, q)
    return inv, mu


def weight_block(g: Mat2, k: int, length: int) -> np.ndarray:
    """
    Matrix of h -> h | g on coefficient vectors of the given length.

    Entry [m_out, m_in] is the coefficient of z^m_out in (z^m_in) | g. For a
    classical weight (k >= 2, length == k - 1) the block is exact; otherwise
    it is the action on series truncated mod z^length.
    """
    check_monoid(g)
    ctx = g.ctx
    q = ctx.modulus
    if k >= 2 and length == k - 1:
        return polynomial_block(g, k)
    inv, mu = _mobius_series(g, length)
    if k - 2 >= 0:
        jac = [1] + [0] * (length - 1)
        for _ in range(k - 2):
            jac = _mul_trunc(jac, [g.d, g.c], length, q)
    else:
        jac = [1] + [0] * (length - 1)
        for _ in range(2 - k):
            jac = _mul_trunc(jac, inv, length, q)
    toeplitz = np.zeros((length, length), dtype=object)
    for i in range(length):
        for j in range(i + 1):
            toeplitz[i, j] = mu[i - j]
    block = np.zeros((length, length), dtype=object)
    column = np.array(jac, dtype=object)
    for m in range(length):
        block[:, m] = column
        if m + 1 < length:
            column = toeplitz.dot(column) % q
    return block


def polynomial_block(g: Mat2, k: int) -> np.ndarray:
    """
    Matrix of the weight-k polynomial action of any 2x2 matrix g.

    Column m holds the coefficients of (az + b)^m (cz + d)^(k - 2 - m). Nothing
    is inverted, so g need not lie in the monoid.
    """
    q = g.ctx.modulus
    dim = k - 1
    block = np.zeros((dim, dim), dtype=object)
    lin_num = [g.b, g.a]
    lin_den = [g.d, g.c]
    for m in range(dim):
        poly = [1]
        for _ in range(m):
            poly = _mul_poly(poly, lin_num, q)
        for _ in range(k - 2 - m):
            poly = _mul_poly(poly, lin_den, q)
        for i, c in enumerate(poly):
            block[i, m] = c % q
    return block


def weight_action(h: Union[TruncSeries, PadicPoly], g: Mat2, k: int) -> Union[TruncSeries, PadicPoly]:
    """
    Right action of g in weight k.

    Raises:
        InvalidMonoidElement: if d is not a unit or c is a nonzero unit
        NegativeWeightOnPolynomial: for a polynomial input with k < 2
    """
    if isinstance(h, PadicPoly):
        if k < 2:
            raise NegativeWeightOnPolynomial(f"weight {k} has no polynomial model")
        if h.degree > k - 2:
            raise ValueError(f"polynomial of degree {h.degree} exceeds k - 2 = {k - 2}")
        check_monoid(g)
        q = h.ctx.modulus
        padded = list(h.coeffs) + [0] * (k - 1 - len(h.coeffs))
        out = [0] * (k - 1)
        for m, hm in enumerate(padded):
            if hm == 0:
                continue
            poly = [1]
            for _ in range(m):
                poly = _mul_poly(poly, [g.b, g.a], q)
            for _ in range(k - 2 - m):
                poly = _mul_poly(poly, [g.d, g.c], q)
            for i, c in enumerate(poly):
                out[i] += hm * c
        return PadicPoly(tuple(out), h.ctx)
    check_monoid(g)
    ctx = h.ctx
    _, mu = _mobius_series(g, ctx.M)
    factor = TruncSeries((g.d, g.c), ctx) ** (k - 2)
    return factor * series_compose(h, TruncSeries(tuple(mu), ctx))

