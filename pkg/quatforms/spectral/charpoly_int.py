"""
Integer characteristic polynomials of Hecke operators on classical spaces.

The operators preserve an integral structure, so det(x - T) has integer
coefficients; they are recovered from p-adic ones by symmetric lifting once
p^N exceeds twice an a priori coefficient bound.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

from sympy import Poly, binomial, div, symbols

from quatforms.config import get_config
from quatforms.errors import PrecisionInsufficient, UnstableLift
from quatforms.hecke.descriptor import ConventionProfile, HeckeDescriptor
from quatforms.hecke.operator import HeckeOperator
from quatforms.hecke.space import FormSpace
from quatforms.padic.residue import Residue, symmetric_lift

logger = logging.getLogger(__name__)

x = symbols("x")


def binomial_row_bound(n: int, R: int) -> int:
    """max_i C(n, i) R^i: bounds every coefficient of a degree-n polynomial whose roots have |root| <= R."""
    return max(int(binomial(n, i)) * R**i for i in range(n + 1))


def eigenvalue_bound(desc: HeckeDescriptor, k: int, p: int) -> int:
    """Archimedean bound on the eigenvalues of the operator in weight k."""
    if desc.kind == "Tl":
        return desc.site ** (k - 1) + 1
    if desc.kind == "Up":
        return p ** (k - 1)
    return 2 ** (k - 1)


def required_precision(p: int, bound: int) -> int:
    """Least N with p^N > 2 * bound."""
    N = 1
    while p**N <= 2 * bound:
        N += 1
    return N


@dataclass
class IntCharpoly:
    """Integer characteristic polynomial, coefficients lowest degree first."""

    coeffs: List[int]
    precision: int
    bound: int

    def as_poly(self) -> Poly:
        return int_poly(self.coeffs)

    def __str__(self):
        return str(self.as_poly().as_expr())


def int_poly(coeffs_low_first: Sequence[int]) -> Poly:
    return Poly(list(reversed([int(c) for c in coeffs_low_first])), x)


def has_factor(poly: Poly, factor: Poly) -> bool:
    """Exact divisibility over Z (the factor is monic)."""
    _, remainder = div(poly, factor, x)
    return remainder.is_zero


def _lift(space: FormSpace, desc: HeckeDescriptor, bound: int, convention: Optional[ConventionProfile]) -> List[int]:
    f = HeckeOperator(desc, space, convention=convention).matrix().charpoly()
    return [symmetric_lift(Residue(c, space.ctx), bound) for c in f.coeffs]


def charpoly_int(
    desc: HeckeDescriptor,
    space: FormSpace,
    coeff_bound: Optional[int] = None,
    auto_precision: bool = True,
    convention: Optional[ConventionProfile] = None,
) -> IntCharpoly:
    """
    Integer characteristic polynomial of an operator on a classical space.

    Args:
        desc: the operator
        space: classical form space; its precision is raised as needed when
            auto_precision is set
        coeff_bound: bound on the absolute values of the coefficients
            (default from the eigenvalue bound and the dimension)
        auto_precision: pick N from the bound instead of requiring the
            space's precision to suffice
        convention: convention profile passed to the operator

    Raises:
        PrecisionInsufficient: if auto_precision is off and p^N <= 2 * bound
        UnstableLift: if the lift changes when the precision is raised
    """
    p = space.ctx.p
    bound = coeff_bound or binomial_row_bound(space.dim, eigenvalue_bound(desc, space.k, p))
    needed = required_precision(p, bound)
    if auto_precision:
        space = space.with_context(N=max(space.ctx.N, needed))
    elif space.ctx.N < needed:
        raise PrecisionInsufficient(f"{p}^{space.ctx.N} does not exceed 2 * {bound}; need N >= {needed}")
    extra = get_config()["lift_recheck_extra"]
    coeffs = _lift(space, desc, bound, convention)
    recheck = _lift(space.with_context(N=space.ctx.N + extra), desc, bound, convention)
    if coeffs != recheck:
        raise UnstableLift(f"{desc.label}: lift at N={space.ctx.N} differs from N={space.ctx.N + extra}")
    logger.info("%s on %s: integer charpoly at N=%d", desc.label, space.describe(), space.ctx.N)
    return IntCharpoly(coeffs=coeffs, precision=space.ctx.N, bound=bound)
