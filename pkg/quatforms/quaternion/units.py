"""
Units of the Hurwitz order and enumeration of elements of a given norm.
"""

import logging
from functools import lru_cache
from itertools import product
from math import isqrt
from typing import TYPE_CHECKING, List, Optional, Tuple

from quatforms.padic.residue import val_int
from quatforms.quaternion.quat import ONE, Quat

if TYPE_CHECKING:
    from quatforms.storage.cache import JsonCache

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _units() -> Tuple[Quat, ...]:
    out = []
    for axis in range(4):
        for sign in (2, -2):
            coords = [0, 0, 0, 0]
            coords[axis] = sign
            out.append(Quat(*coords))
    for signs in product((1, -1), repeat=4):
        out.append(Quat(*signs))
    return tuple(sorted(out))


def hurwitz_units() -> List[Quat]:
    """The 24 units: +-1, +-i, +-j, +-k and (+-1 +-i +-j +-k)/2, in ascending coordinate order."""
    return list(_units())


def _v2_norm_minus_one(u: Quat, cap: int) -> int:
    # doubled coordinates, so the sum of squares is 4 N(u - 1)
    n4 = sum((a - b) ** 2 for a, b in zip(u.coords, ONE.coords))
    return val_int(n4, 2, cap + 2) - 2 if n4 else cap


def unit_subgroup(e: int) -> List[Quat]:
    """
    Units congruent to 1 modulo the e-th power of the maximal ideal over 2,
    i.e. those with v_2(N(u - 1)) >= e.

    The filtration is R^x (e = 0), the Lipschitz units {+-1, +-i, +-j, +-k}
    (e = 1), {+-1} (e = 2) and the trivial group for e >= 3.
    """
    if e < 0:
        raise ValueError(f"e must be >= 0, got {e}")
    return [u for u in _units() if _v2_norm_minus_one(u, e) >= e]


def _enumerate(n: int) -> List[Quat]:
    target = 4 * n
    bound = isqrt(target)
    found = []
    for x0 in range(-bound, bound + 1):
        r0 = target - x0 * x0
        b1 = isqrt(r0)
        for x1 in range(-b1, b1 + 1):
            if (x1 - x0) & 1:
                continue
            r1 = r0 - x1 * x1
            b2 = isqrt(r1)
            for x2 in range(-b2, b2 + 1):
                if (x2 - x0) & 1:
                    continue
                r2 = r1 - x2 * x2
                x3 = isqrt(r2)
                if x3 * x3 != r2 or (x3 - x0) & 1:
                    continue
                found.append(Quat(x0, x1, x2, x3))
                if x3:
                    found.append(Quat(x0, x1, x2, -x3))
    return sorted(found)


def enumerate_norm(n: int, cache: Optional["JsonCache"] = None) -> List[Quat]:
    """
    Every Hurwitz quaternion of norm n, sorted by doubled coordinates.

    Each doubled coordinate is bounded by 2*sqrt(n), so the search is finite.
    A JsonCache, when given, stores the list under the key ("norm", n).
    """
    if n < 1:
        raise ValueError(f"norm must be positive, got {n}")
    if cache is not None:
        hit = cache.get("norm", {"n": n})
        if hit is not None:
            return [Quat(*c) for c in hit]
    found = _enumerate(n)
    logger.debug("enumerate_norm(%d): %d elements", n, len(found))
    if cache is not None:
        cache.put("norm", {"n": n}, [list(q.coords) for q in found])
    return found


def left_unit_class(alpha: Quat) -> Quat:
    """Canonical representative of R^x * alpha: the least element of the orbit."""
    return min(u * alpha for u in _units())


def left_unit_classes(elements: List[Quat]) -> List[Quat]:
    """Canonical representatives of the classes R^x * alpha met in `elements`, sorted."""
    return sorted({left_unit_class(a) for a in elements})


def norm_class_reps(n: int, cache: Optional["JsonCache"] = None) -> List[Quat]:
    """Representatives of R^x \\ {norm n}; for a prime n there are n + 1 of them."""
    return left_unit_classes(enumerate_norm(n, cache=cache))
