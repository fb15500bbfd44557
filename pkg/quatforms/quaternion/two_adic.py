"""
The finite quotients Y_e = R^x / (1 + m^e) of the units of the Hurwitz
order completed at 2, where m = (1 + i) is the maximal ideal.

Two odd-norm elements x, y land in the same class when v_2(N(x - y)) >= e.
Classes are found by running through doubled coordinates in the box
[0, 2^(f+1))^4 with f = max(1, ceil(e/2)): such tuples cover R / 2^f R,
and 2^f R lies inside m^e, so every class is met.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, List, Tuple

from quatforms.errors import ComputationDefect, EvenNorm
from quatforms.padic.residue import val_int
from quatforms.quaternion.quat import ONE, ONE_PLUS_I, Quat

logger = logging.getLogger(__name__)

_V2_CAP = 64


@dataclass(frozen=True)
class TwoAdicClass:
    """Class of an odd-norm quaternion in Y_e; index 0 is the class of 1."""

    e: int
    index: int
    representative: Quat


def two_adic_size(e: int) -> int:
    """|Y_e| = 3 * 4^(e-1) for e >= 1, and 1 for e = 0."""
    return 1 if e == 0 else 3 * 4 ** (e - 1)


def _box_exponent(e: int) -> int:
    return max(1, (e + 1) // 2)


def _v2_norm_diff(x: Tuple[int, ...], y: Tuple[int, ...]) -> int:
    n4 = sum((a - b) ** 2 for a, b in zip(x, y))
    # n4 is four times the norm
    return val_int(n4, 2, _V2_CAP + 2) - 2 if n4 else _V2_CAP


class TwoAdicQuotient:
    """Lookup tables for Y_e."""

    def __init__(self, e: int):
        if e < 0:
            raise ValueError(f"e must be >= 0, got {e}")
        self.e = e
        self.box = 2 ** (_box_exponent(e) + 1)
        box_tuples = [
            t
            for t in product(range(self.box), repeat=4)
            if len({c & 1 for c in t}) == 1 and (sum(c * c for c in t) // 4) % 2 == 1
        ]
        one_key = self._key(ONE)
        leaders: List[Tuple[int, ...]] = [one_key]
        lookup: Dict[Tuple[int, ...], int] = {}
        for t in [one_key] + box_tuples:
            if t in lookup:
                continue
            for idx, lead in enumerate(leaders):
                if _v2_norm_diff(t, lead) >= e:
                    lookup[t] = idx
                    break
            else:
                leaders.append(t)
                lookup[t] = len(leaders) - 1
        # class of 1 first, the rest ordered by their least box tuple
        order = [0] + sorted(range(1, len(leaders)), key=leaders.__getitem__)
        renumber = {old: new for new, old in enumerate(order)}
        self._lookup = {t: renumber[i] for t, i in lookup.items()}
        reps = [None] * len(leaders)
        for old, lead in enumerate(leaders):
            reps[renumber[old]] = ONE if old == 0 else self._from_key(lead)
        self.representatives: List[Quat] = reps
        if len(reps) != two_adic_size(e):
            raise ComputationDefect(f"found {len(reps)} classes in Y_{e}, expected {two_adic_size(e)}")
        logger.debug("Y_%d: %d classes from a box of side %d", e, len(reps), self.box)

    def __len__(self):
        return len(self.representatives)

    def _key(self, q: Quat) -> Tuple[int, ...]:
        return tuple(c % self.box for c in q.coords)

    def _from_key(self, key: Tuple[int, ...]) -> Quat:
        return Quat(*key)

    def index(self, q: Quat) -> int:
        """
        Class index of an odd-norm quaternion.

        Raises:
            EvenNorm: if N(q) is even (q is not a unit at 2)
        """
        if q.norm() % 2 == 0:
            raise EvenNorm(f"{q} has even norm {q.norm()}")
        return self._lookup[self._key(q)]

    def reduce(self, q: Quat) -> TwoAdicClass:
        idx = self.index(q)
        return TwoAdicClass(e=self.e, index=idx, representative=self.representatives[idx])

    def left_multiply(self, q: Quat, idx: int) -> int:
        """Class of q * y for y in class idx."""
        return self.index(q * self.representatives[idx])

    def conjugate_by_one_plus_i(self, idx: int) -> int:
        """Class of (1 + i) y (1 + i)^-1; conjugation by a normaliser of the level."""
        y = self.representatives[idx]
        return self.index((ONE_PLUS_I * y * ONE_PLUS_I.conj()).divide_exact(2))


@lru_cache(maxsize=None)
def two_adic_quotient(e: int) -> TwoAdicQuotient:
    return TwoAdicQuotient(e)


def two_adic_reduce(alpha: Quat, e: int) -> TwoAdicClass:
    """
    Reduce an odd-norm quaternion to its class in Y_e.

    Raises:
        EvenNorm: if N(alpha) is even
    """
    return two_adic_quotient(e).reduce(alpha)
