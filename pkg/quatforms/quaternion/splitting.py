"""
Splitting of the Hurwitz order at an odd prime p.

With a^2 + b^2 = -1 in Z/p^N, the assignment

    i -> (a  b; b -a),   j -> (0 1; -1 0),   k -> (-b a; a b)

extends to a ring isomorphism R tensor Z/p^N -> M_2(Z/p^N).
"""

import logging
from functools import lru_cache
from typing import Tuple

from quatforms.errors import ComputationDefect
from quatforms.padic.mat2 import Mat2
from quatforms.padic.residue import PrecCtx, Residue, hensel_root
from quatforms.quaternion.quat import Quat

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _solve_ab(p: int, N: int) -> Tuple[int, int]:
    ctx = PrecCtx(p, N)
    for b in range(p):
        for a in range(p):
            if (a * a + b * b + 1) % p:
                continue
            if a % p:
                a = hensel_root([b * b + 1, 0, 1], ctx, a)
            else:
                b = hensel_root([a * a + 1, 0, 1], ctx, b)
            logger.debug("solve_ab(p=%d, N=%d): a=%d b=%d", p, N, a, b)
            return a, b
    raise ComputationDefect(f"no solution of a^2 + b^2 = -1 mod {p}")


def solve_ab(ctx: PrecCtx) -> Tuple[Residue, Residue]:
    """
    A solution of a^2 + b^2 = -1 in Z/p^N.

    The base solution mod p is the first one met scanning b = 0, 1, ... and
    within each b, a = 0, 1, ...; it is then Hensel-lifted in a when a is a
    unit and in b otherwise, so the output is deterministic in (p, N).
    """
    a, b = _solve_ab(ctx.p, ctx.N)
    return Residue(a, ctx), Residue(b, ctx)


def split_p(alpha: Quat, ctx: PrecCtx) -> Mat2:
    """Image of alpha under the splitting fixed by solve_ab(ctx)."""
    a, b = _solve_ab(ctx.p, ctx.N)
    q = ctx.modulus
    inv2 = pow(2, -1, q)
    x0, x1, x2, x3 = alpha.coords
    return Mat2(
        inv2 * (x0 + a * x1 - b * x3),
        inv2 * (b * x1 + x2 + a * x3),
        inv2 * (b * x1 - x2 + a * x3),
        inv2 * (x0 - a * x1 + b * x3),
        ctx,
    )
