"""
Approximate eigenforms by power iteration of U_p.

Repeated application of U_p scales each slope-s component by p^s, so after
K steps a random form agrees with its slope-0 projection mod p^K. A second
operator W then splits a multi-dimensional slope-0 space into lines.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
from tqdm import tqdm

from quatforms.config import get_config
from quatforms.errors import (
    ConfigValidationError,
    InconsistentRatios,
    IndistinctRoots,
    PrecisionInsufficient,
    RankDeficient,
)
from quatforms.hecke.character import CharacterProjector
from quatforms.hecke.descriptor import HeckeDescriptor
from quatforms.hecke.operator import HeckeOperator
from quatforms.hecke.space import AutForm, FormSpace
from quatforms.padic.linalg import kernel_vector_2x2, pivot_valuations, solve_pivoted
from quatforms.padic.residue import Residue, hensel_root

logger = logging.getLogger(__name__)


@dataclass
class EigenvalueReading:
    """An eigenvalue read off a form; ``value`` is meaningful mod p^precision."""

    value: Residue
    precision: int
    loss: int


@dataclass
class EigenApprox:
    form: AutForm
    eigenvalues: Dict[str, Residue] = field(default_factory=dict)
    precision_loss: int = 0
    seeds: List[int] = field(default_factory=list)
    split: bool = True

    @property
    def precision(self) -> int:
        return self.form.space.ctx.N - self.precision_loss


@dataclass
class IterationResult:
    forms: List[AutForm]
    seeds: List[int]
    precision_loss: int
    pivots: List[int]


def _apply_poly(op: HeckeOperator, f: AutForm, roots: Sequence[int]) -> AutForm:
    for lam in roots:
        f = op.apply(f) - f.scale(lam)
    return f


def _divide(f: AutForm, power: int) -> AutForm:
    """f / p^power for f divisible by p^power; the result is known mod p^(N - power)."""
    if power == 0:
        return f
    scale = f.space.ctx.p**power
    if f.valuation() < power:
        raise RankDeficient(f"iterate has valuation {f.valuation()}, expected at least {power}")
    return AutForm(f.space, np.array([int(c) // scale for c in f.coeffs], dtype=object))


def power_iterate(
    space: FormSpace,
    target_dim: int,
    iters: Optional[int] = None,
    seeds: Optional[Sequence[int]] = None,
    slope: int = 0,
    lower_eigenvalues: Sequence[int] = (),
    operator: Optional[HeckeOperator] = None,
    progress: bool = False,
) -> IterationResult:
    """
    Spanning forms for the slope-`slope` part of U_p, by iteration.

    Each start vector comes from numpy's default_rng (PCG64) seeded with one
    of ``seeds`` and is supported on a single class block; on a space with
    a character it is then projected onto the character part. For slope
    s > 0 the components of the given lower-slope eigenvalues are removed
    first, and after K steps the iterate is divided by p^(sK), costing sK
    digits.

    Args:
        space: form space (overconvergent or classical)
        target_dim: expected dimension r of the slope part
        iters: K, defaults to the configured iteration count or N
        seeds: PRNG seeds, one per start vector (defaults from config)
        slope: integer slope s to extract
        lower_eigenvalues: U_p eigenvalues (as ints mod p^N) of smaller slope to kill
        operator: prebuilt U_p operator on the space
        progress: show a tqdm bar over the iterations

    Raises:
        RankDeficient: if r independent iterates are not found after the
            configured number of retries
    """
    config = get_config()
    ctx = space.ctx
    K = iters or config["iterations"] or ctx.N
    loss = slope * K
    if loss >= ctx.N:
        raise ConfigValidationError(f"slope {slope} with K={K} iterations leaves no precision at N={ctx.N}")
    op = operator or HeckeOperator(HeckeDescriptor(kind="Up", site=ctx.p), space)
    projector = CharacterProjector(space, cache=op.cache) if space.character is not None else None
    base_seeds = list(seeds) if seeds is not None else list(config["seeds"])
    while len(base_seeds) < target_dim:
        base_seeds.append(base_seeds[-1] + 1 if base_seeds else 1)
    base_seeds = base_seeds[:target_dim]
    retries = config["rank_retries"]
    for attempt in range(retries + 1):
        used = [s + 1000 * attempt for s in base_seeds]
        forms = []
        for i, seed in enumerate(used):
            rng = np.random.default_rng(seed)
            f = AutForm.random(space, rng, support=i % space.num_classes)
            if projector is not None:
                f = projector.apply(f)
            f = _apply_poly(op, f, lower_eigenvalues)
            for _ in tqdm(range(K), desc=f"U{ctx.p} iteration", disable=not progress):
                f = op.apply(f)
            forms.append(_divide(f, loss))
        pivots = pivot_valuations(np.array([f.coeffs for f in forms], dtype=object).T, ctx)
        good = [v for v in pivots if v < ctx.N - loss]
        if len(good) == target_dim:
            logger.info("power iteration: %d forms, K=%d, seeds %s, pivots %s", target_dim, K, used, pivots)
            return IterationResult(forms=forms, seeds=used, precision_loss=loss + max(good, default=0), pivots=pivots)
        logger.warning("power iteration attempt %d: rank %d < %d, retrying", attempt + 1, len(good), target_dim)
    raise RankDeficient(f"iterates did not reach rank {target_dim} after {retries + 1} attempts")


def extract_eigenvalue(
    f: AutForm,
    op: HeckeOperator,
    min_agreement: int = 1,
    known_loss: int = 0,
) -> EigenvalueReading:
    """
    Eigenvalue of op on an (approximate) eigenform.

    The ratio is read at the first coordinate of least valuation v and the
    whole residual op(f) - lambda f is then checked; the reading is good to
    min(N - v, agreement) digits, less ``known_loss``.

    Raises:
        ValueError: if f vanishes
        InconsistentRatios: if the residual agrees with zero to fewer than
            min_agreement digits
    """
    ctx = f.space.ctx
    p, N = ctx.p, ctx.N
    vals = [ctx.valuation(int(c)) for c in f.coeffs]
    v = min(vals)
    if v >= N:
        raise ValueError("cannot read an eigenvalue off the zero form")
    i = vals.index(v)
    g = op.apply(f)
    if ctx.valuation(int(g.coeffs[i])) < v:
        raise InconsistentRatios(f"{op.desc.label}(f) has smaller valuation than f at coordinate {i}")
    low = ctx.with_precision(N - v)
    scale = p**v
    lam = (int(g.coeffs[i]) // scale) * low.inverse(int(f.coeffs[i]) // scale) % low.modulus
    residual = g - f.scale(lam)
    agreement = residual.valuation()
    if agreement < min_agreement:
        raise InconsistentRatios(
            f"{op.desc.label}: f is not an eigenform (residual valuation {agreement} < {min_agreement})"
        )
    precision = max(0, min(N - v, agreement) - known_loss)
    return EigenvalueReading(value=Residue(lam, ctx), precision=precision, loss=N - precision)


def _roots_mod_p(trace: int, det: int, p: int) -> List[int]:
    return [r for r in range(p) if (r * r - trace * r + det) % p == 0]


def split_by_W(
    forms: Sequence[AutForm],
    w_op: HeckeOperator,
    known_loss: int = 0,
    strict: bool = False,
) -> List[EigenApprox]:
    """
    Split a W-stable span of one or two forms into W-eigenlines.

    When W's characteristic polynomial on a two-dimensional span lacks two
    distinct roots mod p the forms come back unchanged with ``split`` unset,
    unless ``strict`` asks for an error.

    Raises:
        IndistinctRoots: with ``strict``, if the roots mod p are not distinct
        PrecisionInsufficient: if solving for W on the span uses up every digit
        SingularToPrecision: if the forms are dependent to working precision
    """
    if not forms:
        return []
    space = forms[0].space
    ctx = space.ctx
    if len(forms) == 1:
        reading = extract_eigenvalue(forms[0], w_op, known_loss=known_loss)
        return [EigenApprox(form=forms[0], eigenvalues={"W": reading.value}, precision_loss=reading.loss)]
    if len(forms) != 2:
        raise ConfigValidationError(f"split_by_W handles spans of dimension 1 or 2, got {len(forms)}")
    V = np.array([f.coeffs for f in forms], dtype=object).T
    WV = np.array([w_op.apply(f).coeffs for f in forms], dtype=object).T
    solved = solve_pivoted(V, WV, ctx)
    loss = solved.loss + known_loss
    if loss >= ctx.N:
        raise PrecisionInsufficient(f"W on the span loses {loss} of {ctx.N} digits; raise the precision")
    low = ctx.with_precision(ctx.N - loss)
    X = solved.X % low.modulus
    (a, b), (c, d) = [[int(e) for e in row] for row in X]
    trace, det = (a + d) % low.modulus, (a * d - b * c) % low.modulus
    roots = _roots_mod_p(trace, det, ctx.p)
    if len(roots) != 2:
        message = f"W on the span has char poly x^2 - {trace}x + {det} without distinct roots mod {ctx.p}"
        if strict:
            raise IndistinctRoots(message)
        logger.warning("%s; keeping the span unsplit", message)
        return [EigenApprox(form=f, precision_loss=loss, split=False) for f in forms]
    out = []
    for r in roots:
        lam = hensel_root([det, -trace, 1], low, r)
        kx, ky = kernel_vector_2x2([[a - lam, b], [c, d - lam]], low)
        form = forms[0].scale(kx) + forms[1].scale(ky)
        out.append(EigenApprox(form=form, eigenvalues={"W": Residue(lam, ctx)}, precision_loss=loss))
    logger.info("W split the span with eigenvalues %s (loss %d)", [str(e.eigenvalues["W"]) for e in out], loss)
    return out


@dataclass
class SharedEigenvalues:
    table: Dict[str, List[EigenvalueReading]]
    agree: bool
    precision: int


def shared_eigenvalues(approxs: Sequence[EigenApprox], ops: Sequence[HeckeOperator], min_agreement: int = 1) -> SharedEigenvalues:
    """
    Read every operator's eigenvalue off every form and compare.

    Readings are also stored on each EigenApprox. ``agree`` holds when, for
    each operator, all readings coincide mod p^precision, the least
    precision seen.
    """
    table: Dict[str, List[EigenvalueReading]] = {}
    for op in ops:
        readings = []
        for approx in approxs:
            reading = extract_eigenvalue(approx.form, op, min_agreement=min_agreement, known_loss=approx.precision_loss)
            approx.eigenvalues[op.desc.label] = reading.value
            readings.append(reading)
        table[op.desc.label] = readings
    precision = min((r.precision for rs in table.values() for r in rs), default=0)
    agree = True
    if approxs:
        p = approxs[0].form.space.ctx.p
        modulus = p**precision
        for readings in table.values():
            if len({r.value.value % modulus for r in readings}) > 1:
                agree = False
    return SharedEigenvalues(table=table, agree=agree, precision=precision)
