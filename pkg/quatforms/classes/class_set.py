"""
Class sets D^x \\ D_f^x / U for the Hurwitz order.

The Hurwitz order has class number one, so the class set is the orbit set
of the 24 units acting diagonally on G.x x Y_e, where G.x is the set of
coset invariants at p (see LevelSpec.invariant) and Y_e = R_2^x / (1 + m^e).
"""

import logging
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Dict, List, Optional, Tuple, Union

from tqdm import tqdm

from quatforms.classes.level import LevelSpec, Vector, build_gx
from quatforms.errors import ConfigValidationError, DecompositionFailed, NoUnitCoordinate
from quatforms.padic.mat2 import Mat2
from quatforms.padic.residue import PrecCtx
from quatforms.quaternion.quat import Quat
from quatforms.quaternion.splitting import split_p
from quatforms.quaternion.two_adic import TwoAdicClass, TwoAdicQuotient, two_adic_quotient
from quatforms.quaternion.units import hurwitz_units, unit_subgroup

if TYPE_CHECKING:
    from quatforms.storage.cache import JsonCache

logger = logging.getLogger(__name__)

RECIPES = ("diagonal", "kernel")

Element = Tuple[Vector, int]


@dataclass(frozen=True)
class ClassRep:
    s: Vector
    y: TwoAdicClass


@dataclass
class ClassSet:
    """
    Orbit representatives with their lifts.

    ``table`` sends every element (s, y) of G.x x Y_e to (j, u) where u is
    the index into ``units`` of a unit carrying the element to rep j.
    """

    level: LevelSpec
    ctx: PrecCtx
    recipe: str
    reps: List[ClassRep]
    stab_orders: List[int]
    lifts: List[Mat2]
    units: List[Quat]
    table: Dict[Element, Tuple[int, int]] = field(repr=False)
    quotient: TwoAdicQuotient = field(repr=False)

    def __len__(self):
        return len(self.reps)

    @property
    def group_order(self) -> int:
        return len(self.units)

    def with_context(self, ctx: PrecCtx) -> "ClassSet":
        """Same orbit table, lifts recomputed in another precision context."""
        if ctx.p != self.level.p or ctx.N <= self.level.n:
            raise ConfigValidationError(f"context {ctx} does not fit level {self.level.describe()}")
        return replace(self, ctx=ctx, lifts=[lift_rep(r.s, ctx) for r in self.reps])

    def lookup(self, s: Vector, y: int) -> Tuple[int, Quat]:
        """(j, g) with g . (s, y) = rep j."""
        key = (self.level.normalize(s), y)
        if key not in self.table:
            raise DecompositionFailed(f"element {key} is missing from the orbit table of {self.level.describe()}")
        j, u = self.table[key]
        return j, self.units[u]


def lift_rep(s: Vector, ctx: PrecCtx) -> Mat2:
    """
    Determinant-one matrix over Z/p^N whose first column is s.

    (x, y) with x a unit lifts to (x 0; y x^-1), otherwise to (x -y^-1; y 0).

    Raises:
        NoUnitCoordinate: if neither coordinate of s is a unit
    """
    x, y = s
    q = ctx.modulus
    if ctx.is_unit(x):
        return Mat2(x, 0, y, pow(x, -1, q), ctx)
    if ctx.is_unit(y):
        return Mat2(x, -pow(y, -1, q), y, 0, ctx)
    raise NoUnitCoordinate(f"{s} has no unit coordinate mod {ctx.p}")


class _UnitAction:
    """Action of a list of units on G.x x Y_e through the splitting and Y_e tables."""

    def __init__(self, level: LevelSpec, units: List[Quat], quotient: TwoAdicQuotient):
        self.level = level
        lctx = level.level_ctx
        self.mats = [split_p(u, lctx) for u in units]
        self.on_y = [[quotient.left_multiply(u, y) for y in range(len(quotient))] for u in units]

    def act(self, u: int, element: Element) -> Element:
        s, y = element
        return self.level.normalize(self.mats[u].apply(s)), self.on_y[u][y]


def _inverse_index(units: List[Quat]) -> List[int]:
    position = {u: i for i, u in enumerate(units)}
    return [position[u.conj()] for u in units]


def _diagonal_orbits(level: LevelSpec, units: List[Quat], quotient: TwoAdicQuotient, progress: bool):
    action = _UnitAction(level, units, quotient)
    inverse = _inverse_index(units)
    gx = build_gx(level.p, level.n, level.gamma_style)
    elements = [(s, y) for y in range(len(quotient)) for s in gx]
    table: Dict[Element, Tuple[int, int]] = {}
    reps: List[Element] = []
    stab_orders: List[int] = []
    for element in tqdm(elements, desc="orbits", disable=not progress):
        if element in table:
            continue
        j = len(reps)
        reps.append(element)
        size = 0
        for u in range(len(units)):
            image = action.act(u, element)
            if image not in table:
                table[image] = (j, inverse[u])
                size += 1
        stab_orders.append(len(units) // size)
    return reps, stab_orders, table


def kernel_orbits(level: LevelSpec) -> List[List[Vector]]:
    """Orbits of unit_subgroup(e) on G.x alone, each sorted, in order of their least element."""
    kernel = unit_subgroup(level.e)
    lctx = level.level_ctx
    mats = [split_p(u, lctx) for u in kernel]
    seen = set()
    orbits = []
    for s in build_gx(level.p, level.n, level.gamma_style):
        if s in seen:
            continue
        orbit = sorted({level.normalize(m.apply(s)) for m in mats})
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def kernel_class_count(level: LevelSpec) -> int:
    return len(kernel_orbits(level))


def _kernel_table(level: LevelSpec, units: List[Quat], quotient: TwoAdicQuotient):
    unit_classes = [quotient.index(u) for u in units]
    if len(set(unit_classes)) != len(quotient):
        raise ConfigValidationError(
            f"the kernel recipe needs the units to surject onto Y_{level.e}; "
            f"they reach {len(set(unit_classes))} of {len(quotient)} classes"
        )
    kernel = set(unit_subgroup(level.e))
    position = {u: i for i, u in enumerate(units)}
    kernel_idx = [position[k] for k in sorted(kernel)]
    action = _UnitAction(level, units, quotient)
    orbits = kernel_orbits(level)
    orbit_of: Dict[Vector, int] = {}
    for j, orbit in enumerate(orbits):
        for s in orbit:
            orbit_of[s] = j
    reps = [(orbit[0], 0) for orbit in orbits]
    stab_orders = [len(kernel) // len(orbit) for orbit in orbits]
    # first unit reaching each class of Y_e
    lifter: Dict[int, int] = {}
    for i, y in enumerate(unit_classes):
        lifter.setdefault(y, i)
    inverse = _inverse_index(units)
    table: Dict[Element, Tuple[int, int]] = {}
    for y in range(len(quotient)):
        u_inv = inverse[lifter[y]]
        for s in build_gx(level.p, level.n, level.gamma_style):
            t, y0 = action.act(u_inv, (s, y))
            j = orbit_of[t]
            target = reps[j][0]
            for k in kernel_idx:
                if action.act(k, (t, y0))[0] == target:
                    g = units[k] * units[u_inv]
                    table[(s, y)] = (j, position[g])
                    break
            else:
                raise DecompositionFailed(f"no kernel element carries {t} to {target}")
    return reps, stab_orders, table


def class_set(
    level: LevelSpec,
    ctx: PrecCtx,
    recipe: str = "diagonal",
    cache: Optional["JsonCache"] = None,
    progress: bool = False,
) -> ClassSet:
    """
    Compute the class set of a level.

    Args:
        level: the level
        ctx: precision of the lifted representatives (ctx.p must equal level.p)
        recipe: "diagonal" runs the 24 units over G.x x Y_e; "kernel" takes
            orbits of unit_subgroup(e) on G.x and extends them through the
            unit image in Y_e, which needs that image to be all of Y_e
        cache: optional JsonCache for the orbit table
        progress: show a tqdm bar over G.x x Y_e

    Representatives are the first element of each orbit in the order
    (Y_e index, s), so the class of 1 in Y_e comes first.
    """
    if ctx.p != level.p:
        raise ConfigValidationError(f"precision context is for p={ctx.p}, level for p={level.p}")
    if recipe not in RECIPES:
        raise ConfigValidationError(f"recipe must be one of {RECIPES}, got {recipe!r}")
    if ctx.N <= level.n:
        raise ConfigValidationError(f"precision N={ctx.N} must exceed the level exponent n={level.n}")
    units = hurwitz_units()
    quotient = two_adic_quotient(level.e)
    key = {"p": level.p, "n": level.n, "e": level.e, "gamma_style": level.gamma_style, "recipe": recipe}
    cached = cache.get("classset", key) if cache is not None else None
    if cached is not None:
        reps = [(tuple(s), y) for s, y in cached["reps"]]
        stab_orders = list(cached["stab_orders"])
        table = {((s0, s1), y): (j, u) for s0, s1, y, j, u in cached["table"]}
    elif recipe == "diagonal":
        reps, stab_orders, table = _diagonal_orbits(level, units, quotient, progress)
    else:
        reps, stab_orders, table = _kernel_table(level, units, quotient)
    if cache is not None and cached is None:
        cache.put(
            "classset",
            key,
            {
                "reps": [[list(s), y] for s, y in reps],
                "stab_orders": stab_orders,
                "table": [[s[0], s[1], y, j, u] for (s, y), (j, u) in sorted(table.items())],
            },
        )
    cs = ClassSet(
        level=level,
        ctx=ctx,
        recipe=recipe,
        reps=[ClassRep(s=s, y=quotient.reduce(quotient.representatives[y])) for s, y in reps],
        stab_orders=stab_orders,
        lifts=[lift_rep(s, ctx) for s, _ in reps],
        units=units,
        table=table,
        quotient=quotient,
    )
    logger.info("class set of %s (%s recipe): %d classes", level.describe(), recipe, len(cs))
    return cs


def decompose(gp: Mat2, g2: Union[TwoAdicClass, int, Quat], cs: ClassSet) -> Tuple[Quat, int, Mat2]:
    """
    Write an element as gamma . d_j . u.

    Args:
        gp: the component at p, invertible mod p
        g2: the component at 2, as a Y_e class, class index or odd-norm quaternion
        cs: the class set

    Returns:
        (gamma, j, u_p): a Hurwitz unit gamma and class index j with
        (gp, g2) = gamma . (d_j, y_j) . u, and u_p = d_j^-1 split(gamma)^-1 gp,
        which lies in U_p mod p^n.

    Raises:
        DecompositionFailed: if u_p does not have the shape of U_p
    """
    level = cs.level
    if isinstance(g2, Quat):
        y = cs.quotient.index(g2)
    elif isinstance(g2, TwoAdicClass):
        y = g2.index
    else:
        y = int(g2)
    j, g = cs.lookup(level.invariant(gp), y)
    gamma = g.conj()
    lift = cs.lifts[j] if cs.ctx.modulus == gp.ctx.modulus else lift_rep(cs.reps[j].s, gp.ctx)
    u_p = lift.inverse() @ split_p(g, gp.ctx) @ gp
    q = level.modulus
    if u_p.c % q or (not level.projective and (u_p.d - 1) % q):
        raise DecompositionFailed(f"u_p = {u_p.as_tuple()} is not in U_p mod {level.p}^{level.n}")
    return gamma, j, u_p
