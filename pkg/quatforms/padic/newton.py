from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from quatforms.padic.series import PadicPoly


@dataclass(frozen=True)
class Slope:
    """One Newton polygon segment: `multiplicity` roots of valuation `value`."""

    value: Fraction
    multiplicity: int
    reliable: bool


def lower_hull(points: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
    """Vertices of the lower convex hull of points sorted by abscissa."""
    hull: List[Tuple[int, int]] = []
    for x, y in sorted(points):
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle vertex unless it lies strictly below the chord
            if (y2 - y1) * (x - x1) >= (y - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append((x, y))
    return hull


def newton_slopes(f: PadicPoly, reliable_cap: Optional[int] = None) -> List[Slope]:
    """
    Valuations of the roots of f, read off its Newton polygon.

    Args:
        f: monic polynomial over Z/p^N
        reliable_cap: slopes >= this are flagged unreliable, since
            coefficient valuations near N may be saturated (default N - 2)

    Returns:
        Segments ordered by increasing root valuation. Roots accounted for
        by low coefficients that vanish mod p^N are reported as one
        unreliable segment of value N.
    """
    N = f.ctx.N
    cap = N - 2 if reliable_cap is None else reliable_cap
    vals = f.valuations()
    first = next(i for i, v in enumerate(vals) if v < N) if any(v < N for v in vals) else len(vals) - 1
    points = [(i, v) for i, v in enumerate(vals) if i >= first]
    hull = lower_hull(points)
    slopes = []
    if first:
        slopes.append(Slope(value=Fraction(N), multiplicity=first, reliable=False))
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        value = Fraction(y0 - y1, x1 - x0)
        slopes.append(Slope(value=value, multiplicity=x1 - x0, reliable=value < cap))
    slopes.sort(key=lambda s: s.value)
    return slopes


def expand_slopes(slopes: List[Slope]) -> List[Fraction]:
    """Flatten segments into the nondecreasing multiset of root valuations."""
    out: List[Fraction] = []
    for s in slopes:
        out.extend([s.value] * s.multiplicity)
    return out
