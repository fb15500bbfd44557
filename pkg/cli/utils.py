from pathlib import Path
from typing import List, Optional, Sequence

import typer
from pydantic import BaseModel
from rich import box
from rich.console import Console
from rich.table import Table

from cli.models import JobConfig
from quatforms.classes import ClassSet, LevelSpec, class_set
from quatforms.hecke import FormSpace
from quatforms.padic import PrecCtx, Slope
from quatforms.padic.residue import symmetric_int
from quatforms.storage import (
    ClassSetReport,
    EigenformReport,
    HeckeReport,
    JsonCache,
    LevelHeader,
    SlopeEntry,
    SlopeReport,
    VerifyReport,
    dump_report,
    open_cache,
)

console = Console()


def job_cache(job: JobConfig) -> Optional[JsonCache]:
    return open_cache(job.cache_dir)


def build_level(job: JobConfig) -> LevelSpec:
    return LevelSpec(p=job.p, n=job.n, e=job.e, gamma_style=job.gamma_style.value)


def build_class_set(job: JobConfig, progress: bool = False) -> ClassSet:
    ctx = PrecCtx(job.p, job.precision, job.truncation)
    return class_set(build_level(job), ctx, recipe=job.recipe, cache=job_cache(job), progress=progress)


def build_space(job: JobConfig, progress: bool = False) -> FormSpace:
    return FormSpace(build_class_set(job, progress=progress), job.weight, job.model.value, job.character)


def level_header(job: JobConfig, truncation: Optional[int] = None) -> LevelHeader:
    return LevelHeader(
        p=job.p,
        n=job.n,
        e=job.e,
        gamma_style=job.gamma_style.value,
        precision=job.precision,
        truncation=truncation,
        character=job.character,
    )


def slope_entries(slopes: Sequence[Slope]) -> List[SlopeEntry]:
    return [SlopeEntry(value=str(s.value), multiplicity=s.multiplicity, reliable=s.reliable) for s in slopes]


def signed(value: int, p: int, precision: int) -> str:
    """Decimal string of the symmetric representative mod p^precision."""
    if precision <= 0:
        return "O(1)"
    return str(symmetric_int(int(value), p**precision))


def _level_title(level: LevelHeader) -> str:
    chi = "" if level.character is None else f" chi=omega^{level.character}"
    return f"p={level.p} n={level.n} e={level.e} {level.gamma_style} N={level.precision}{chi}"


def render_classset(report: ClassSetReport) -> Table:
    table = Table(
        title=f"Class set ({_level_title(report.level)}): {report.size} classes",
        show_header=True,
        header_style="bold magenta",
        box=box.SIMPLE_HEAD,
    )
    table.add_column("j", style="cyan", justify="right")
    table.add_column("s", style="green")
    table.add_column("Y_e", style="green", justify="right")
    table.add_column("stab", style="yellow", justify="right")
    table.add_column("lift (a, b, c, d)")
    for j, rep in enumerate(report.reps):
        table.add_row(str(j), str(tuple(rep.s)), str(rep.y), str(rep.stab_order), ", ".join(rep.lift))
    return table


def render_hecke(report: HeckeReport) -> Table:
    table = Table(
        title=f"{report.operator} on weight {report.weight} {report.model} forms ({_level_title(report.level)})",
        show_header=True,
        header_style="bold magenta",
        box=box.SIMPLE_HEAD,
    )
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", style="green")
    table.add_row("dimension", str(report.dim))
    if report.charpoly is not None:
        table.add_row("charpoly mod p^N", ", ".join(report.charpoly))
    if report.charpoly_int_text is not None:
        table.add_row(f"integer charpoly (N={report.lift_precision})", report.charpoly_int_text)
    if report.slopes is not None:
        table.add_row("slopes", _slope_text(report.slopes))
    for factor, found in report.factor_checks.items():
        table.add_row(f"divisible by {factor}", "[green]yes[/green]" if found else "[red]no[/red]")
    return table


def _slope_text(slopes: Sequence[SlopeEntry]) -> str:
    parts = []
    for s in slopes:
        text = f"{s.value} (x{s.multiplicity})"
        parts.append(text if s.reliable else f"[dim]{text}?[/dim]")
    return ", ".join(parts)


def render_slopes(report: SlopeReport) -> Table:
    table = Table(
        title=f"U{report.level.p} slopes, weight {report.weight} (M={report.level.truncation}, N={report.level.precision})",
        show_header=True,
        header_style="bold magenta",
        box=box.SIMPLE_HEAD,
    )
    table.add_column("Slope", style="cyan", justify="right")
    table.add_column("Multiplicity", style="green", justify="right")
    table.add_column("Reliable", style="yellow", justify="center")
    for s in report.slopes:
        table.add_row(s.value, str(s.multiplicity), "yes" if s.reliable else "no")
    table.caption = f"lowest: {', '.join(report.lowest)}; stable at 2M: {report.stable} ({report.stable_count} agree)"
    return table


def render_eigenform(report: EigenformReport) -> Table:
    table = Table(
        title=f"Eigenforms of slope {report.slope}, weight {report.weight} ({_level_title(report.level)})",
        show_header=True,
        header_style="bold magenta",
        box=box.SIMPLE_HEAD,
    )
    labels = sorted({label for form in report.forms for label in form.eigenvalues})
    table.add_column("form", style="cyan", justify="right")
    for label in labels:
        table.add_column(label, style="green", justify="right")
    table.add_column("digits", style="yellow", justify="right")
    for i, form in enumerate(report.forms):
        table.add_row(str(i), *[form.eigenvalues.get(label, "-") for label in labels], str(form.precision))
    caption = f"seeds {report.seeds}, K={report.iterations}"
    if report.shared is not None:
        caption += f", shared eigenvalues: {report.shared}"
    if len(report.forms) == 2 and not report.split:
        caption += "\n[red]W has no distinct roots mod p on the span; the forms are not eigenforms[/red]"
    for entry in report.classicality:
        caption += f"\n{entry.operator}: {entry.verdict} (B={entry.bound}, degree <= {entry.dmax})"
    table.caption = caption
    return table


def render_verify(report: VerifyReport) -> Table:
    table = Table(
        title="Verification suite",
        show_header=True,
        header_style="bold magenta",
        box=box.SIMPLE_HEAD,
    )
    table.add_column("#", style="cyan", justify="right")
    table.add_column("Criterion", style="cyan")
    table.add_column("Status", justify="center")
    table.add_column("Seconds", justify="right")
    table.add_column("Detail", style="dim")
    for r in report.results:
        status = "[green]pass[/green]" if r.passed else "[red]FAIL[/red]"
        table.add_row(r.id, r.name, status, f"{r.seconds:.1f}", r.detail)
    return table


def emit(report: BaseModel, job_format: str, out: Optional[Path], table: Table) -> None:
    """Write the JSON report to ``out`` (if given) and show it as JSON or a table."""
    text = dump_report(report)
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w", encoding="utf-8") as f:
            f.write(text + "\n")
    if job_format == "table":
        console.print(table)
        if out is not None:
            console.print(f"[dim]report written to {out}[/dim]")
    elif out is None:
        typer.echo(text)
