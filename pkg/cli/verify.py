"""
Acceptance suite behind ``quatforms verify``.

Each check returns (passed, detail). Checks share one cache directory, so a
second run reuses the class sets and witness tables of the first.
"""

import logging
import time
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple, Union

import numpy as np
from sympy import Poly, expand, primerange

from quatforms.classes import LevelSpec, class_set
from quatforms.errors import QuatFormsError
from quatforms.hecke import (
    AutForm,
    ConventionProfile,
    FormSpace,
    HeckeDescriptor,
    HeckeOperator,
    quadratic_character,
)
from quatforms.padic import Mat2, PrecCtx, expand_slopes, mat_mul, newton_slopes, weight_block
from quatforms.quaternion import enumerate_norm, norm_class_reps
from quatforms.quaternion.two_adic import two_adic_size
from quatforms.spectral import (
    charpoly_int,
    classicality_evidence,
    extract_eigenvalue,
    has_factor,
    power_iterate,
    shared_eigenvalues,
    slope_spectrum,
    split_by_W,
)
from quatforms.spectral.charpoly_int import x
from quatforms.storage import CriterionResult, JsonCache, VerifyReport, open_cache

logger = logging.getLogger(__name__)

Check = Callable[[Optional[JsonCache]], Tuple[bool, str]]

T3_WEIGHT5 = Poly(expand((x**4 + 288 * x**2 + 20448) * (x**4 + 18 * x**3 + 39 * x**2 - 1242 * x + 4761)), x)
U11_WEIGHT3 = Poly(expand((x**2 - 14 * x + 121) * (x**2 + 22 * x + 121) ** 2), x)
U5_WEIGHT2 = Poly(
    expand(
        (x**2 - 4 * x + 5) ** 4
        * (x**2 + 2 * x + 5) ** 2
        * (x**2 - 2 * x + 5) ** 3
        * (x - 1) ** 3
        * (x + 1) ** 2
        * (x - 5)
    ),
    x,
)
SLOPE0_EIGENVALUE_P7 = 1 + 5 * 7 + 4 * 7**2 + 5 * 7**3


def _space(
    p: int,
    e: int,
    k: int,
    N: int,
    cache,
    model: str = "classical",
    M: int = 1,
    gamma_style: str = "unit-column",
    character: Optional[int] = None,
):
    level = LevelSpec(p=p, n=1, e=e, gamma_style=gamma_style)
    return FormSpace(class_set(level, PrecCtx(p, N, M), cache=cache), k, model, character)


def check_classset_u1_7(cache) -> Tuple[bool, str]:
    cs = class_set(LevelSpec(p=7), PrecCtx(7, 5), cache=cache)
    j0, _ = cs.lookup((0, 1), 0)
    j1, _ = cs.lookup((1, 4), 0)
    return len(cs) == 2 and j0 != j1, f"{len(cs)} classes; (0,1) -> {j0}, (1,4) -> {j1}"


def check_t3_weight5(cache) -> Tuple[bool, str]:
    lifted = charpoly_int(HeckeDescriptor.parse("T3"), _space(7, 0, 5, 10, cache))
    return lifted.as_poly() == T3_WEIGHT5, f"{lifted} (N={lifted.precision})"


def check_t3_negative_control(cache) -> Tuple[bool, str]:
    space = _space(7, 0, 5, 10, cache)
    desc = HeckeDescriptor.parse("T3")
    calibrated = HeckeOperator(desc, space, cache=cache).matrix().charpoly()
    flipped = ConventionProfile(transpose_action=True)
    other = HeckeOperator(desc, space, convention=flipped, cache=cache).matrix().charpoly()
    detected = other.coeffs != calibrated.coeffs
    differing = [i for i, (a, b) in enumerate(zip(other.coeffs, calibrated.coeffs)) if a != b]
    return detected, f"flipped convention changes the charpoly mod 7^10 in degrees {differing}"


def check_u11_weight3(cache) -> Tuple[bool, str]:
    lifted = charpoly_int(HeckeDescriptor.parse("U11"), _space(11, 1, 3, 8, cache))
    found = has_factor(lifted.as_poly(), U11_WEIGHT3)
    return found, f"degree {lifted.as_poly().degree()}; product divides: {found}"


def check_u5_weight2(cache) -> Tuple[bool, str]:
    desc = HeckeDescriptor.parse("U5")
    details, ok = [], True
    for style in ("unit-column", "projective"):
        poly = charpoly_int(desc, _space(5, 3, 2, 10, cache, gamma_style=style)).as_poly()
        norm_factor = has_factor(poly, Poly(x - 5, x))
        full = poly.degree() >= U5_WEIGHT2.degree() and has_factor(poly, U5_WEIGHT2)
        ok = ok and norm_factor
        details.append(f"{style}: degree {poly.degree()}, x-5 {norm_factor}, degree-24 product {full}")
    return ok, "; ".join(details)


def check_slopes_p11(cache) -> Tuple[bool, str]:
    space = _space(11, 1, 1, 20, cache, model="overconvergent", M=20, character=quadratic_character(11))
    spectrum = slope_spectrum(space, M=20, N=20, stable_prefix=6)
    lowest = [str(s) for s in spectrum.lowest(6)]
    return lowest == ["0", "0", "1", "2", "2", "2"] and spectrum.stable, f"{lowest}, stable {spectrum.stable}"


def check_slopes_p7(cache) -> Tuple[bool, str]:
    space = _space(7, 0, 1, 20, cache, model="overconvergent", M=20)
    spectrum = slope_spectrum(space, M=20, N=20, stable_prefix=6)
    lowest = [str(s) for s in spectrum.lowest(6)]
    up = HeckeOperator(HeckeDescriptor(kind="Up", site=7), space, cache=cache)
    result = power_iterate(space, 1, operator=up)
    reading = extract_eigenvalue(result.forms[0], up, known_loss=result.precision_loss)
    digits = reading.value.value % 7**4
    ok = lowest == ["0", "1", "1", "2", "2", "2"] and reading.precision >= 4 and digits == SLOPE0_EIGENVALUE_P7
    return ok, f"{lowest}; slope-0 eigenvalue {digits} mod 7^4 ({reading.precision} digits)"


def check_pair_p11(cache) -> Tuple[bool, str]:
    space = _space(11, 1, 1, 15, cache, model="overconvergent", M=15, character=quadratic_character(11))
    up = HeckeOperator(HeckeDescriptor(kind="Up", site=11), space, cache=cache)
    w = HeckeOperator(HeckeDescriptor(kind="W"), space, cache=cache)
    result = power_iterate(space, 2, iters=15, seeds=[1, 2], operator=up)
    approxs = split_by_W(result.forms, w, known_loss=result.precision_loss, strict=True)
    ops = [HeckeOperator(HeckeDescriptor.parse(label), space, cache=cache) for label in ("T3", "T5")] + [up]
    shared = shared_eigenvalues(approxs, ops)
    expected = {"T3": -1, "T5": -1, "U11": 1}
    modulus = 11**10
    ok = shared.agree and shared.precision >= 10
    for label, value in expected.items():
        ok = ok and all((r.value.value - value) % modulus == 0 for r in shared.table[label])
    return ok, f"shared {shared.agree} to {shared.precision} digits"


def _commutes(a: HeckeOperator, b: HeckeOperator) -> bool:
    ctx = a.space.ctx
    A, B = a.matrix().A, b.matrix().A
    return bool(np.all((mat_mul(A, B, ctx) - mat_mul(B, A, ctx)) % ctx.modulus == 0))


def check_properties(cache) -> Tuple[bool, str]:
    failures: List[str] = []
    for space in (_space(7, 0, 5, 10, cache), _space(11, 1, 3, 8, cache)):
        p = space.ctx.p
        labels = ("T3", "T13", f"U{p}", "W", "D2")
        t3, t13, up, w, d2 = (HeckeOperator(HeckeDescriptor.parse(label), space, cache=cache) for label in labels)
        pairs = [(t3, t13), (t3, up), (w, t3), (w, up), (d2, up), (d2, t3)]
        for a, b in pairs:
            if not _commutes(a, b):
                failures.append(f"{a.desc.label} does not commute with {b.desc.label} at p={p}")
    for ell in primerange(3, 51):
        if len(enumerate_norm(ell, cache=cache)) != 24 * (ell + 1) or len(norm_class_reps(ell, cache=cache)) != ell + 1:
            failures.append(f"norm {ell} count")
    weight2 = _space(7, 0, 2, 10, cache)
    one = AutForm.constant(weight2)
    for label, value in (("T3", 4), ("T5", 6), ("U7", 7)):
        if HeckeOperator(HeckeDescriptor.parse(label), weight2, cache=cache).apply(one) != one.scale(value):
            failures.append(f"constant form under {label}")
    for p, e in ((7, 0), (11, 1), (5, 3)):
        cs = class_set(LevelSpec(p=p, e=e), PrecCtx(p, 4), cache=cache)
        if sum(cs.group_order // s for s in cs.stab_orders) != cs.level.gx_size() * two_adic_size(e):
            failures.append(f"class-set accounting at ({p}, 1, {e})")
    f = HeckeOperator(HeckeDescriptor.parse("U11"), _space(11, 1, 3, 8, cache), cache=cache).matrix().charpoly()
    values = expand_slopes(newton_slopes(f))
    if len(values) != f.degree or values != sorted(values):
        failures.append("Newton polygon")
    if not _right_action_law(PrecCtx(7, 6), seed=0):
        failures.append("weight action law")
    if [-1, 1] not in classicality_evidence(PrecCtx(7, 10).residue(1), 2, 3, dmax=1).matches:
        failures.append("classicality finds x-1")
    if classicality_evidence(PrecCtx(7, 4).residue(SLOPE0_EIGENVALUE_P7), 1, 3, dmax=2, bound=2).matches:
        failures.append("classicality on the 7-adic eigenvalue")
    return not failures, ", ".join(failures) or "all properties hold"


def random_monoid_matrix(rng: np.random.Generator, ctx: PrecCtx) -> Mat2:
    """A matrix with p | c and d a unit."""
    q = ctx.modulus
    a, b = (int(v) for v in rng.integers(0, q, size=2))
    c = ctx.p * int(rng.integers(0, q // ctx.p))
    d = int(rng.integers(1, ctx.p)) + ctx.p * int(rng.integers(0, q // ctx.p))
    return Mat2(a, b, c, d, ctx)


def _right_action_law(ctx: PrecCtx, seed: int, trials: int = 5) -> bool:
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        g1, g2 = random_monoid_matrix(rng, ctx), random_monoid_matrix(rng, ctx)
        for k, length in ((3, 2), (5, 4), (7, 6)):
            lhs = weight_block(g1 @ g2, k, length)
            rhs = mat_mul(weight_block(g2, k, length), weight_block(g1, k, length), ctx)
            if not np.all((lhs - rhs) % ctx.modulus == 0):
                return False
    return True


CRITERIA: Dict[str, Tuple[str, Check]] = {
    "1": ("Class set of U1(7)", check_classset_u1_7),
    "2": ("T3 weight 5 integer charpoly at (7,1,0)", check_t3_weight5),
    "2n": ("Negative control: flipped convention changes T3", check_t3_negative_control),
    "3": ("U11 weight 3 product divides charpoly at (11,1,1)", check_u11_weight3),
    "4": ("U5 weight 2 at (5,1,3) contains x-5", check_u5_weight2),
    "5": ("U11 weight 1 slopes 0,0,1,2,2,2 on the quadratic character", check_slopes_p11),
    "6": ("U7 weight 1 slopes and slope-0 eigenvalue", check_slopes_p7),
    "7": ("Weight 1 eigenform pair at p=11, quadratic character", check_pair_p11),
    "8": ("Property suite", check_properties),
}


def run_verify(
    ids: Optional[List[str]] = None,
    cache_dir: Optional[Union[str, Path]] = None,
    negative_control: bool = True,
) -> VerifyReport:
    """Run the selected checks; a check that raises counts as failed."""
    cache = open_cache(cache_dir)
    selected = [i for i in (ids or list(CRITERIA)) if negative_control or i != "2n"]
    results = []
    for cid in selected:
        name, check = CRITERIA[cid]
        start = time.perf_counter()
        try:
            passed, detail = check(cache)
        except QuatFormsError as exc:
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        seconds = time.perf_counter() - start
        logger.info("criterion %s %s in %.1fs: %s", cid, "passed" if passed else "FAILED", seconds, detail)
        results.append(CriterionResult(id=cid, name=name, passed=passed, detail=detail, seconds=round(seconds, 2)))
    return VerifyReport(results=results, all_passed=all(r.passed for r in results))
