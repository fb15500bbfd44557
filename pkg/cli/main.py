from functools import wraps
from pathlib import Path
from typing import Any, Dict, List, Optional

import typer
from dotenv import load_dotenv
from rich.panel import Panel

# Load environment variables from .env file
load_dotenv()

from cli.models import Command, GammaStyle, JobConfig, OutputFormat, SpaceModel, parse_factor
from cli.utils import (
    build_class_set,
    build_space,
    console,
    emit,
    job_cache,
    level_header,
    render_classset,
    render_eigenform,
    render_hecke,
    render_slopes,
    render_verify,
    signed,
    slope_entries,
)
from cli.verify import CRITERIA, run_verify
from quatforms.classes import kernel_class_count
from quatforms.config import get_config, load_config_file, set_config
from quatforms.errors import ConfigValidationError, QuatFormsError
from quatforms.hecke import ConventionProfile, HeckeDescriptor, HeckeOperator
from quatforms.logging_utils import setup_logging
from quatforms.padic import newton_slopes
from quatforms.spectral import (
    EigenApprox,
    charpoly_int,
    classicality_evidence,
    has_factor,
    power_iterate,
    shared_eigenvalues,
    slope_spectrum,
    split_by_W,
)
from quatforms.storage import (
    ClassicalityEntry,
    ClassRepEntry,
    ClassSetReport,
    EigenformEntry,
    EigenformReport,
    HeckeReport,
    SlopeReport,
)

app = typer.Typer(
    name="quatforms",
    help="quatforms CLI: quaternionic automorphic forms, Hecke operators and p-adic slopes",
    add_completion=True,
)

VERIFY_FAILED = 3


def handle_errors(func):
    """Turn library errors into a rich panel and the error's exit code."""

    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except QuatFormsError as exc:
            kind = "Invalid input" if exc.exit_code == 1 else "Computation defect"
            console.print(Panel(str(exc), title=f"{kind}: {type(exc).__name__}", border_style="red"))
            raise typer.Exit(code=exc.exit_code)

    return wrapper


def _defaults(config_path: Optional[Path]) -> Dict[str, Any]:
    if config_path is not None:
        set_config(load_config_file(config_path))
    config = get_config()
    config.setdefault("iters", config.get("iterations"))
    return config


def make_job(command: Command, config_path: Optional[Path], verbose: bool, **flags) -> JobConfig:
    """Configuration defaults, then the config file, then explicit flags."""
    defaults = _defaults(config_path)
    setup_logging("DEBUG" if verbose else defaults["log_level"])
    return JobConfig.from_sources(command, defaults, flags)


P_OPTION = typer.Option(..., "--p", help="Odd prime of the level at p")
N_OPTION = typer.Option(None, "--n", help="Level exponent at p (default 1)")
E_OPTION = typer.Option(None, "--e", help="Level structure 1 + m^e at 2 (0 to 4)")
STYLE_OPTION = typer.Option(None, "--gamma-style", help="unit-column (U1) or projective (U0)")
WEIGHT_OPTION = typer.Option(None, "--weight", help="Weight k")
PRECISION_OPTION = typer.Option(None, "--precision", help="Coefficient precision N")
TRUNCATION_OPTION = typer.Option(None, "--truncation", help="Series truncation M")
CACHE_OPTION = typer.Option(None, "--cache-dir", help="Directory for on-disk caches")
OUT_OPTION = typer.Option(None, "--out", help="Write the JSON report to this file")
FORMAT_OPTION = typer.Option(OutputFormat.JSON, "--format", help="json or table")
CONFIG_OPTION = typer.Option(None, "--config", help="key = value file with defaults")
CHARACTER_OPTION = typer.Option(
    None, "--character", help="Exponent a of the nebentypus omega^a at p; (p-1)/2 is the Legendre symbol"
)
VERBOSE_OPTION = typer.Option(False, "--verbose", "-v", help="Debug logging")


@app.command()
@handle_errors
def classset(
    p: int = P_OPTION,
    n: Optional[int] = N_OPTION,
    e: Optional[int] = E_OPTION,
    gamma_style: Optional[GammaStyle] = STYLE_OPTION,
    precision: Optional[int] = PRECISION_OPTION,
    recipe: Optional[str] = typer.Option(None, "--recipe", help="diagonal or kernel"),
    cache_dir: Optional[Path] = CACHE_OPTION,
    out: Optional[Path] = OUT_OPTION,
    format: OutputFormat = FORMAT_OPTION,
    config: Optional[Path] = CONFIG_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Class set representatives, stabilizers and lifts for a level."""
    job = make_job(
        Command.CLASSSET, config, verbose,
        p=p, n=n, e=e, gamma_style=gamma_style, precision=precision, recipe=recipe,
        cache_dir=cache_dir, out=out, format=format,
    )
    cs = build_class_set(job, progress=verbose)
    reps = [
        ClassRepEntry(
            s=list(rep.s),
            y=rep.y.index,
            y_representative=list(rep.y.representative.coords),
            stab_order=stab,
            lift=[str(v) for v in lift.as_tuple()],
        )
        for rep, stab, lift in zip(cs.reps, cs.stab_orders, cs.lifts)
    ]
    report = ClassSetReport(
        level=level_header(job),
        recipe=cs.recipe,
        size=len(cs),
        reps=reps,
        kernel_class_count=kernel_class_count(cs.level),
    )
    emit(report, job.format.value, job.out, render_classset(report))


@app.command()
@handle_errors
def hecke(
    op: str = typer.Option(..., "--op", help="Operator: T<l>, U<p>, W or the diamond D<d>"),
    p: int = P_OPTION,
    n: Optional[int] = N_OPTION,
    e: Optional[int] = E_OPTION,
    gamma_style: Optional[GammaStyle] = STYLE_OPTION,
    weight: Optional[int] = WEIGHT_OPTION,
    model: Optional[SpaceModel] = typer.Option(None, "--model", help="classical or overconvergent"),
    precision: Optional[int] = PRECISION_OPTION,
    truncation: Optional[int] = TRUNCATION_OPTION,
    matrix: bool = typer.Option(False, "--matrix", help="Include the matrix"),
    charpoly: bool = typer.Option(False, "--charpoly", help="Characteristic polynomial mod p^N"),
    lift: bool = typer.Option(False, "--lift", help="Integer characteristic polynomial"),
    slopes: bool = typer.Option(False, "--slopes", help="Newton slopes of the characteristic polynomial"),
    expect_factor: Optional[List[str]] = typer.Option(None, "--expect-factor", help="Monic factor to test for, e.g. x-5"),
    transpose_action: bool = typer.Option(False, "--transpose-action", help="Act by transposed matrices"),
    cache_dir: Optional[Path] = CACHE_OPTION,
    out: Optional[Path] = OUT_OPTION,
    format: OutputFormat = FORMAT_OPTION,
    config: Optional[Path] = CONFIG_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Matrix, characteristic polynomial and integer lift of a Hecke operator."""
    factors = expect_factor or []
    job = make_job(
        Command.HECKE, config, verbose,
        p=p, n=n, e=e, gamma_style=gamma_style, weight=weight, model=model,
        precision=precision, truncation=truncation, ops=[op],
        charpoly=charpoly, lift=lift or bool(factors), matrix=matrix, expect_factors=factors,
        cache_dir=cache_dir, out=out, format=format,
    )
    desc = job.descriptors[0]
    convention = ConventionProfile(transpose_action=True) if transpose_action else None
    space = build_space(job, progress=verbose)
    operator = HeckeOperator(desc, space, convention=convention, cache=job_cache(job))
    A = operator.matrix()
    report = HeckeReport(
        level=level_header(job, truncation=space.ctx.M if space.model == "overconvergent" else None),
        operator=desc.label,
        weight=job.weight,
        model=job.model.value,
        dim=A.dim,
        transpose_action=transpose_action,
    )
    if job.matrix:
        report.matrix = [[str(v) for v in row] for row in A.rows()]
    if job.charpoly or slopes:
        f = A.charpoly()
        if job.charpoly:
            report.charpoly = [str(c) for c in f.coeffs]
        if slopes:
            cap = space.ctx.N - get_config()["reliable_cap_offset"]
            report.slopes = slope_entries(newton_slopes(f, reliable_cap=cap))
    if job.lift:
        lifted = charpoly_int(desc, space, convention=convention)
        report.charpoly_int = [str(c) for c in lifted.coeffs]
        report.charpoly_int_text = str(lifted)
        report.lift_precision = lifted.precision
        poly = lifted.as_poly()
        report.factor_checks = {text: has_factor(poly, parse_factor(text)) for text in job.expect_factors}
    emit(report, job.format.value, job.out, render_hecke(report))


@app.command()
@handle_errors
def slopes(
    p: int = P_OPTION,
    n: Optional[int] = N_OPTION,
    e: Optional[int] = E_OPTION,
    weight: Optional[int] = WEIGHT_OPTION,
    precision: Optional[int] = PRECISION_OPTION,
    truncation: Optional[int] = TRUNCATION_OPTION,
    character: Optional[int] = CHARACTER_OPTION,
    count: int = typer.Option(6, "--count", help="How many of the lowest slopes to list"),
    check_stability: bool = typer.Option(True, "--stability/--no-stability", help="Compare against truncation 2M"),
    cache_dir: Optional[Path] = CACHE_OPTION,
    out: Optional[Path] = OUT_OPTION,
    format: OutputFormat = FORMAT_OPTION,
    config: Optional[Path] = CONFIG_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Newton slopes of U_p on overconvergent forms, checked at truncation 2M."""
    job = make_job(
        Command.SLOPES, config, verbose,
        p=p, n=n, e=e, gamma_style=GammaStyle.UNIT_COLUMN, weight=weight, model=SpaceModel.OVERCONVERGENT,
        precision=precision, truncation=truncation, character=character,
        cache_dir=cache_dir, out=out, format=format,
    )
    space = build_space(job, progress=verbose)
    spectrum = slope_spectrum(
        space, M=job.truncation, N=job.precision, check_stability=check_stability, stable_prefix=count
    )
    report = SlopeReport(
        level=level_header(job, truncation=spectrum.truncation),
        weight=job.weight,
        slopes=slope_entries(spectrum.slopes),
        lowest=[str(s) for s in spectrum.lowest(count)],
        reliable_below=spectrum.reliable_below,
        stable=spectrum.stable,
        stable_count=spectrum.stable_count,
    )
    emit(report, job.format.value, job.out, render_slopes(report))


@app.command()
@handle_errors
def eigenform(
    p: int = P_OPTION,
    n: Optional[int] = N_OPTION,
    e: Optional[int] = E_OPTION,
    gamma_style: Optional[GammaStyle] = STYLE_OPTION,
    weight: Optional[int] = WEIGHT_OPTION,
    model: Optional[SpaceModel] = typer.Option(None, "--model", help="classical or overconvergent (default)"),
    precision: Optional[int] = PRECISION_OPTION,
    truncation: Optional[int] = TRUNCATION_OPTION,
    character: Optional[int] = CHARACTER_OPTION,
    op: Optional[List[str]] = typer.Option(None, "--op", help="Operators whose eigenvalues are read off"),
    iters: Optional[int] = typer.Option(None, "--iters", help="Power-iteration count K"),
    seed: Optional[List[int]] = typer.Option(None, "--seed", help="PRNG seed, one per start vector"),
    dim: Optional[int] = typer.Option(None, "--dim", help="Dimension of the slope part"),
    slope: Optional[int] = typer.Option(None, "--slope", help="Integer slope to extract"),
    classicality: bool = typer.Option(False, "--classicality", help="Bounded algebraic search on T_l eigenvalues"),
    dmax: int = typer.Option(2, "--dmax", help="Largest degree for the classicality search"),
    cache_dir: Optional[Path] = CACHE_OPTION,
    out: Optional[Path] = OUT_OPTION,
    format: OutputFormat = FORMAT_OPTION,
    config: Optional[Path] = CONFIG_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Approximate eigenforms by U_p power iteration, split by W when two-dimensional."""
    job = make_job(
        Command.EIGENFORM, config, verbose,
        p=p, n=n, e=e, gamma_style=gamma_style, weight=weight, model=model or SpaceModel.OVERCONVERGENT,
        precision=precision, truncation=truncation, ops=op or [f"U{p}"], iters=iters, seeds=seed,
        dim=dim, slope=slope, character=character, cache_dir=cache_dir, out=out, format=format,
    )
    space = build_space(job, progress=verbose)
    cache = job_cache(job)
    up = HeckeOperator(HeckeDescriptor(kind="Up", site=job.p), space, cache=cache)
    result = power_iterate(
        space, job.dim, iters=job.iters, seeds=job.seeds, slope=job.slope, operator=up, progress=verbose
    )
    if job.dim == 2:
        w = HeckeOperator(HeckeDescriptor(kind="W"), space, cache=cache)
        approxs = split_by_W(result.forms, w, known_loss=result.precision_loss)
    else:
        approxs = [EigenApprox(form=f, precision_loss=result.precision_loss) for f in result.forms]
    for approx in approxs:
        approx.seeds = list(result.seeds)
    split = all(approx.split for approx in approxs)
    ops = [up if d.kind == "Up" else HeckeOperator(d, space, cache=cache) for d in job.descriptors]
    # an unsplit span holds no eigenforms, so nothing is read off it
    shared = shared_eigenvalues(approxs, ops if split else [])
    forms = []
    for i, approx in enumerate(approxs):
        readings = {label: readings[i] for label, readings in shared.table.items()}
        entry_precision = min((r.precision for r in readings.values()), default=approx.precision)
        eigenvalues = {label: signed(r.value.value, job.p, r.precision) for label, r in readings.items()}
        if "W" in approx.eigenvalues and "W" not in eigenvalues:
            eigenvalues["W"] = signed(approx.eigenvalues["W"].value, job.p, approx.precision)
        forms.append(
            EigenformEntry(
                eigenvalues=eigenvalues,
                precision=entry_precision,
                precision_loss=approx.precision_loss,
                blocks=[[str(int(c)) for c in approx.form.coeffs[space.block_slice(j)]] for j in range(space.num_classes)],
            )
        )
    evidence = []
    if classicality:
        for desc in job.descriptors:
            if desc.kind != "Tl" or desc.label not in shared.table:
                continue
            for reading in shared.table[desc.label][:1]:
                if reading.precision < 1:
                    continue
                low = reading.value.ctx.with_precision(reading.precision)
                verdict = classicality_evidence(low.residue(reading.value.value), job.weight, desc.site, dmax=dmax)
                evidence.append(
                    ClassicalityEntry(
                        operator=desc.label,
                        bound=verdict.bound,
                        dmax=verdict.dmax,
                        matches=verdict.matches,
                        verdict=verdict.verdict,
                    )
                )
    report = EigenformReport(
        level=level_header(job, truncation=space.ctx.M if space.model == "overconvergent" else None),
        weight=job.weight,
        model=job.model.value,
        iterations=job.iters or job.precision,
        slope=job.slope,
        seeds=list(result.seeds),
        forms=forms,
        split=job.dim == 2 and split,
        shared=shared.agree if len(approxs) > 1 and split else None,
        classicality=evidence,
    )
    emit(report, job.format.value, job.out, render_eigenform(report))


@app.command()
@handle_errors
def verify(
    only: Optional[List[str]] = typer.Option(None, "--only", help="Criterion ids to run (default: all)"),
    negative_control: bool = typer.Option(True, "--negative-control/--no-negative-control", help="Run the flipped-convention control"),
    cache_dir: Optional[Path] = CACHE_OPTION,
    out: Optional[Path] = OUT_OPTION,
    format: OutputFormat = FORMAT_OPTION,
    config: Optional[Path] = CONFIG_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Replay every acceptance criterion; exit code 3 if any fails."""
    defaults = _defaults(config)
    setup_logging("DEBUG" if verbose else defaults["log_level"])
    ids = list(only) if only else list(CRITERIA)
    unknown = [i for i in ids if i not in CRITERIA]
    if unknown:
        raise ConfigValidationError(f"unknown criteria {unknown}; choose from {list(CRITERIA)}")
    report = run_verify(ids, cache_dir=cache_dir or defaults.get("cache_dir"), negative_control=negative_control)
    emit(report, format.value, out, render_verify(report))
    if not report.all_passed:
        raise typer.Exit(code=VERIFY_FAILED)


if __name__ == "__main__":
    app()
