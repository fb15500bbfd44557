import logging
from dataclasses import dataclass
from itertools import product
from math import isqrt
from typing import List, Optional

from sympy import binomial

from quatforms.errors import ConfigValidationError
from quatforms.padic.residue import Residue

logger = logging.getLogger(__name__)

MAX_DEGREE = 4


@dataclass
class ClassicalityVerdict:
    """
    Result of the bounded algebraic search.

    ``matches`` holds monic integer polynomials (lowest degree first) with
    lambda as a root mod p^N. An empty list is evidence, not proof, that
    lambda is not the eigenvalue of a classical form.
    """

    matches: List[List[int]]
    bound: int
    dmax: int
    precision: int

    @property
    def verdict(self) -> str:
        return "bounded algebraic match" if self.matches else "no bounded algebraic match"


def ramanujan_bound(ell: int, k: int) -> int:
    """ceil(2 * ell^((k-1)/2)), the archimedean bound on a classical T_ell eigenvalue."""
    if (k - 1) % 2 == 0:
        return 2 * ell ** ((k - 1) // 2)
    # 2 * ell^((k-1)/2) = sqrt(4 * ell^(k-1))
    square = 4 * ell ** (k - 1)
    root = isqrt(square)
    return root if root * root == square else root + 1


def classicality_evidence(
    lam: Residue,
    k: int,
    ell: int,
    dmax: int = 2,
    bound: Optional[int] = None,
) -> ClassicalityVerdict:
    """
    Search monic integer polynomials of degree <= dmax with lam as a root.

    A classical eigenvalue is an algebraic integer whose conjugates all have
    absolute value <= B, so its minimal polynomial of degree d has
    |c_(d-i)| <= C(d, i) B^i. The constant term is solved for rather than
    enumerated.

    Args:
        lam: the p-adic eigenvalue
        k: weight
        ell: the prime at which lam is a Hecke eigenvalue
        dmax: largest degree searched (at most 4)
        bound: archimedean bound B (default: Ramanujan bound for ell and k)
    """
    if not 1 <= dmax <= MAX_DEGREE:
        raise ConfigValidationError(f"dmax must lie in [1, {MAX_DEGREE}], got {dmax}")
    B = ramanujan_bound(ell, k) if bound is None else bound
    ctx = lam.ctx
    q = ctx.modulus
    x = lam.value
    matches = []
    for d in range(1, dmax + 1):
        limits = [int(binomial(d, i)) * B**i for i in range(d + 1)]
        # coefficients of x^(d-1), ..., x^1; the constant term c_0 has limit limits[d]
        ranges = [range(-limits[i], limits[i] + 1) for i in range(1, d)]
        powers = [pow(x, m, q) for m in range(d + 1)]
        for upper in product(*ranges):
            partial = powers[d]
            for i, c in enumerate(upper, start=1):
                partial += c * powers[d - i]
            c0 = -partial % q
            lo = -limits[d]
            start = lo + (c0 - lo) % q
            for candidate in range(start, limits[d] + 1, q):
                matches.append([candidate] + list(reversed(upper)) + [1])
    logger.info("classicality search for %s (B=%d, dmax=%d): %d matches", lam, B, dmax, len(matches))
    return ClassicalityVerdict(matches=matches, bound=B, dmax=dmax, precision=ctx.N)
