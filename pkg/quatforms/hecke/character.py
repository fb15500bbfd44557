"""
Nebentypus characters at p and the projection onto their eigenspaces.

Characters of (Z/p)^x are powers omega^a of the Teichmuller character, with
omega(d) = d^(p^(N-1)) mod p^N. On a unit-column level with n = 1 the diamond
operators <d> commute with every Hecke operator, and

    P_a = (p - 1)^-1 * sum over d of omega(d)^-a <d>

cuts out the forms with <d> f = omega(d)^a f. On truncated series spaces the
diamonds are compressed like every other operator, so P_a is idempotent only
up to the truncation error.
"""

import logging
from typing import TYPE_CHECKING, List, Optional, Tuple

import numpy as np

from quatforms.errors import ConfigValidationError
from quatforms.hecke.descriptor import HeckeDescriptor
from quatforms.hecke.operator import HeckeOperator
from quatforms.hecke.space import AutForm, FormSpace
from quatforms.padic.linalg import zero_matrix
from quatforms.padic.residue import PrecCtx

if TYPE_CHECKING:
    from quatforms.storage.cache import JsonCache

logger = logging.getLogger(__name__)


def teichmuller(d: int, ctx: PrecCtx) -> int:
    """The (p - 1)-st root of unity mod p^N congruent to d mod p."""
    if d % ctx.p == 0:
        raise ConfigValidationError(f"{d} is not a unit mod {ctx.p}")
    return pow(d, ctx.p ** (ctx.N - 1), ctx.modulus)


def character_value(exponent: int, d: int, ctx: PrecCtx) -> int:
    return pow(teichmuller(d, ctx), exponent, ctx.modulus)


def quadratic_character(p: int) -> int:
    """Exponent a with omega^a the Legendre symbol mod p."""
    return (p - 1) // 2


class CharacterProjector:
    """The projector P_a on a form space, as a weighted sum of diamond operators."""

    def __init__(
        self,
        space: FormSpace,
        exponent: Optional[int] = None,
        max_workers: Optional[int] = None,
        cache: Optional["JsonCache"] = None,
    ):
        exponent = space.character if exponent is None else exponent
        if exponent is None:
            raise ConfigValidationError("no character exponent given and the space carries none")
        level = space.cs.level
        if level.projective or level.n != 1:
            raise ConfigValidationError("character projection needs a unit-column level with n = 1")
        ctx = space.ctx
        q = ctx.modulus
        scale = pow(ctx.p - 1, -1, q)
        self.space = space
        self.exponent = exponent % (ctx.p - 1)
        self.terms: List[Tuple[int, HeckeOperator]] = []
        for d in range(1, ctx.p):
            coeff = scale * pow(character_value(self.exponent, d, ctx), -1, q) % q
            op = HeckeOperator(HeckeDescriptor(kind="D", site=d), space, max_workers=max_workers, cache=cache)
            self.terms.append((coeff, op))

    def matrix(self) -> np.ndarray:
        q = self.space.ctx.modulus
        P = zero_matrix(self.space.dim, self.space.dim)
        for coeff, op in self.terms:
            P = (P + op.matrix().A * coeff) % q
        logger.debug("projector onto omega^%d on %s assembled", self.exponent, self.space.describe())
        return P

    def apply(self, f: AutForm) -> AutForm:
        out = AutForm.zero(f.space)
        for coeff, op in self.terms:
            out = out + op.apply(f).scale(coeff)
        return out
