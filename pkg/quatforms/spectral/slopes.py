import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from quatforms.config import get_config
from quatforms.errors import ConfigValidationError
from quatforms.hecke.descriptor import ConventionProfile, HeckeDescriptor
from quatforms.hecke.character import CharacterProjector
from quatforms.hecke.operator import HeckeOperator
from quatforms.hecke.space import FormSpace
from quatforms.padic.linalg import charpoly, mat_mul
from quatforms.padic.newton import Slope, expand_slopes, newton_slopes

logger = logging.getLogger(__name__)


@dataclass
class SlopeSpectrum:
    """
    Newton slopes of U_p on a truncated overconvergent space.

    ``slopes`` lists segments at truncation M; ``stable`` records whether
    the reliable slopes (those below ``reliable_below``), or the lowest few
    of them, agree with the ones found at truncation 2M.
    """

    slopes: List[Slope]
    reliable_below: int
    truncation: int
    precision: int
    stable: bool
    stable_count: int

    def values(self) -> List[Fraction]:
        return expand_slopes(self.slopes)

    def reliable_values(self) -> List[Fraction]:
        return [s for s in self.values() if s < self.reliable_below]

    def lowest(self, count: int) -> List[Fraction]:
        return self.values()[:count]


def _reliable(space: FormSpace, desc: HeckeDescriptor, cap: int, convention: Optional[ConventionProfile]):
    up = HeckeOperator(desc, space, convention=convention).matrix()
    if space.character is None:
        f = up.charpoly()
    else:
        # the complement of the character part shows up as zero eigenvalues, above the cap
        P = CharacterProjector(space).matrix()
        f = charpoly(mat_mul(up.A, P, space.ctx), space.ctx)
    slopes = newton_slopes(f, reliable_cap=cap)
    return slopes, [s for s in expand_slopes(slopes) if s < cap]


def slope_spectrum(
    space: FormSpace,
    M: Optional[int] = None,
    N: Optional[int] = None,
    check_stability: bool = True,
    convention: Optional[ConventionProfile] = None,
    stable_prefix: Optional[int] = None,
) -> SlopeSpectrum:
    """
    Slopes of U_p at truncation M and precision N, compared against truncation 2M.

    With ``stable_prefix`` set only that many of the lowest reliable slopes
    have to agree at 2M; otherwise every reliable slope does.

    Raises:
        ConfigValidationError: if the space is not in the overconvergent model
    """
    if space.model != "overconvergent":
        raise ConfigValidationError("slope spectra are computed on overconvergent spaces")
    space = space.with_context(N=N, M=M)
    desc = HeckeDescriptor(kind="Up", site=space.ctx.p)
    cap = space.ctx.N - get_config()["reliable_cap_offset"]
    slopes, reliable = _reliable(space, desc, cap, convention)
    stable, count = True, len(reliable)
    if check_stability:
        _, doubled = _reliable(space.with_context(M=2 * space.ctx.M), desc, cap, convention)
        count = 0
        for a, b in zip(reliable, doubled):
            if a != b:
                break
            count += 1
        if stable_prefix is None:
            stable = reliable == doubled
        else:
            wanted = reliable[:stable_prefix]
            stable = doubled[: len(wanted)] == wanted
    logger.info(
        "U%d slopes on %s at M=%d: %s%s",
        space.ctx.p,
        space.describe(),
        space.ctx.M,
        [str(s) for s in reliable[:8]],
        "" if stable else " (unstable)",
    )
    return SlopeSpectrum(
        slopes=slopes,
        reliable_below=cap,
        truncation=space.ctx.M,
        precision=space.ctx.N,
        stable=stable,
        stable_count=count,
    )
