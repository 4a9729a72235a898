"""CLI commands for apolar."""

from __future__ import annotations

import functools
import json
import logging
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any, TypeVar

import click
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from apolar.algebra.field import FieldSpec
from apolar.algebra.parser import format_poly, parse_poly
from apolar.algebra.polynomial import Poly, Role
from apolar.errors import ApolarError

console = Console()
err_console = Console(stderr=True)
logger = logging.getLogger(__name__)

EXIT_DISAGREEMENT = 4

C = TypeVar("C", bound=Callable[..., Any])


def setup_logging(verbose: bool) -> None:
    """Configure logging based on verbosity; records go to stderr."""
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )


def reports_errors(func: C) -> C:
    """Turn apolar errors into a red message and the error's exit code."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except ApolarError as e:
            ctx = click.get_current_context()
            if (ctx.find_root().obj or {}).get("verbose"):
                logger.exception(f"{type(e).__name__} in {ctx.info_name}")
            err_console.print(f"[red]✗ {type(e).__name__}:[/red] {escape(str(e))}")
            sys.exit(e.exit_code)

    return wrapper  # type: ignore[return-value]


def field_option(func: C) -> C:
    return click.option(
        "--field",
        "field_flag",
        default="q",
        show_default=True,
        help="Coefficient field: 'q' for the rationals, 'p:<prime>' for a prime field",
    )(func)


def nvars_option(func: C) -> C:
    return click.option(
        "--nvars", type=int, default=None, help="Number of variables (default: largest index)"
    )(func)


def json_option(func: C) -> C:
    return click.option("--json", "as_json", is_flag=True, help="Print machine-readable JSON")(func)


def _parse(text: str, field_flag: str, nvars: int | None) -> Poly:
    return parse_poly(text, FieldSpec.parse(field_flag), nvars=nvars, role=Role.DUAL)


def _echo_json(data: dict[str, Any]) -> None:
    click.echo(json.dumps(data, sort_keys=True, ensure_ascii=False))


@click.group()
@click.version_option(package_name="apolar")
@click.option("-v", "--verbose", is_flag=True, help="Enable verbose logging")
@click.pass_context
def main(ctx: click.Context, verbose: bool) -> None:
    """apolar - Annihilators, complete intersections and Lefschetz witnesses.

    Polynomials in the dual space are written with uppercase variables,
    e.g. "X1^2*X2 - 3*X2^3". Use 'apolar COMMAND --help' for details.
    """
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    setup_logging(verbose)


@main.command()
@click.argument("poly")
@field_option
@nvars_option
@json_option
@click.option("--check-truncation", is_flag=True, help="Recompute at degree D+2 and compare")
@reports_errors
def ann(poly: str, field_flag: str, nvars: int | None, as_json: bool, check_truncation: bool) -> None:
    """Compute Ann(F): minimal generators, CI verdict and Hilbert function.

    Examples:

        apolar ann "X1 - X2"

        apolar ann "X1*X2 - X3*X4" --json
    """
    from apolar.core.apolarity import analyze

    F = _parse(poly, field_flag, nvars)
    report = analyze(F, check_truncation=check_truncation)
    data = {
        "input": format_poly(F),
        "field": F.field.flag,
        "n_vars": report.n_vars,
        "mu": report.mu,
        "is_ci": report.is_ci,
        "minimal_generators": [format_poly(g) for g in report.minimal_generators],
        "socle_degree": report.socle_degree,
        "colength": report.colength,
        "hilbert": report.hilbert,
        "truncation_stable": report.truncation_stable,
    }
    if as_json:
        _echo_json(data)
        return

    console.print(f"[blue]Ann({escape(data['input'])}) over {F.field}[/blue]\n")
    table = Table(title="Minimal generators")
    table.add_column("#", style="cyan")
    table.add_column("Generator")
    for k, g in enumerate(data["minimal_generators"], 1):
        table.add_row(str(k), g)
    console.print(table)
    verdict = "[green]✓ complete intersection[/green]" if report.is_ci else "[yellow]not a complete intersection[/yellow]"
    console.print(f"μ = {report.mu} (N = {report.n_vars}): {verdict}")
    console.print(f"socle degree {report.socle_degree}, colength {report.colength}")
    if report.hilbert is not None:
        console.print(f"Hilbert function {tuple(report.hilbert)}")
    if report.truncation_stable is not None:
        console.print(f"truncation stable: {report.truncation_stable}")


@main.command()
@click.argument("poly")
@field_option
@nvars_option
@json_option
@reports_errors
def classify(poly: str, field_flag: str, nvars: int | None, as_json: bool) -> None:
    """Classify a binomial and print the predicted generators.

    Examples:

        apolar classify "X1^2*X2^2*X3^3 - X1*X2*X3^5"
    """
    from apolar.core.apolarity import analyze
    from apolar.core.binomial import (
        BinomialNormalForm,
        canonical_generators,
        construct_annihilator,
        normalize,
    )
    from apolar.core.binomial import classify as classify_nf

    F = _parse(poly, field_flag, nvars)
    nf = normalize(F)
    cls = classify_nf(nf)
    data: dict[str, Any] = {
        "input": format_poly(F),
        "field": F.field.flag,
        "normal_form": nf.summary() if isinstance(nf, BinomialNormalForm) else None,
        "verdict": cls.verdict.value,
        "case": cls.case,
        "v": cls.v,
        "w": cls.w,
        "details": cls.details,
        "generators": None,
        "fallback": None,
    }
    if cls.is_ci or not isinstance(nf, BinomialNormalForm):
        data["generators"] = [format_poly(g) for g in canonical_generators(construct_annihilator(nf, cls))]
    if not cls.theorem_applies:
        report = analyze(F)
        data["fallback"] = {
            "mu": report.mu,
            "is_ci": report.is_ci,
            "minimal_generators": [format_poly(g) for g in report.minimal_generators],
        }
    if as_json:
        _echo_json(data)
        return

    console.print(f"[blue]{escape(data['input'])}[/blue]")
    if data["normal_form"] is not None:
        summary = data["normal_form"]
        console.print(
            f"  a={summary['a']} b_left={summary['b_left']} b_right={summary['b_right']} "
            f"c1={summary['c1']} c2={summary['c2']} d1={summary['d1']} d2={summary['d2']}"
        )
    w = "-" if cls.w is None else cls.w
    console.print(f"  verdict [bold]{cls.verdict.value}[/bold] (v={cls.v}, w={w}, case {cls.case or '-'})")
    if data["generators"]:
        for g in data["generators"]:
            console.print(f"  [green]✓[/green] {g}")
    if data["fallback"] is not None:
        fb = data["fallback"]
        console.print("[yellow]Outside the theorem's hypotheses; answered by the oracle[/yellow]")
        console.print(f"  μ = {fb['mu']}, CI = {fb['is_ci']}")
        for g in fb["minimal_generators"]:
            console.print(f"  {g}")


@main.command()
@click.argument("poly")
@field_option
@nvars_option
@json_option
@click.option("--slp", "with_slp", is_flag=True, help="Search for a strong Lefschetz witness")
@click.option("--slp-override", is_flag=True, help="Allow the SLP search over prime fields")
@click.option("--trials", type=click.IntRange(min=0), default=8, show_default=True, help="Random SLP candidates")
@click.option("--check-truncation", is_flag=True, help="Recompute the oracle at degree D+2")
@click.option("--timings", is_flag=True, help="Record wall-clock time per stage")
@reports_errors
def verify(
    poly: str,
    field_flag: str,
    nvars: int | None,
    as_json: bool,
    with_slp: bool,
    slp_override: bool,
    trials: int,
    check_truncation: bool,
    timings: bool,
) -> None:
    """Cross-check classifier, constructed generators and oracle on one binomial.

    Exits with status 4 on any disagreement.

    Examples:

        apolar verify "X1 - X2" --slp
    """
    from apolar.config.schema import SlpOptions
    from apolar.corpus.verify import verify_binomial

    F = _parse(poly, field_flag, nvars)
    options = SlpOptions(enabled=with_slp, trials=trials, override=slp_override)
    if with_slp and not F.field.is_rational and not slp_override:
        err_console.print("[yellow]SLP search skipped over a prime field (use --slp-override)[/yellow]")
    record = verify_binomial(F, slp=options, check_truncation=check_truncation, timings=timings)

    if as_json:
        click.echo(record.to_json())
    else:
        _print_record(record)
    if not record.ok:
        sys.exit(EXIT_DISAGREEMENT)


def _print_record(record: Any) -> None:
    table = Table(title=f"verify {record.input}")
    table.add_column("Check", style="cyan")
    table.add_column("Result")
    table.add_row("verdict", f"{record.verdict} (case {record.case or '-'})")
    table.add_row("oracle μ", f"{record.oracle_mu} of {record.n_vars}")
    if record.agreement is None:
        table.add_row("agreement", "[yellow]theorem does not apply; oracle answer used[/yellow]")
    else:
        mark = "[green]✓[/green]" if record.agreement else "[red]✗[/red]"
        table.add_row("agreement", mark)
    if record.ideal_equality is not None:
        mark = "[green]✓[/green]" if record.ideal_equality == "Equal" else "[red]✗[/red]"
        table.add_row("ideal equality", f"{mark} {record.ideal_equality}")
    if record.generators:
        table.add_row("generators", "\n".join(record.generators))
    if record.det_certificate is not None:
        table.add_row("det certificate", record.det_certificate)
    if record.membership is not None:
        table.add_row("membership facts", str(record.membership))
    if record.certificate_error:
        table.add_row("certificate", f"[red]{escape(record.certificate_error)}[/red]")
    if record.slp is not None:
        table.add_row("SLP", record.slp["message"])
    console.print(table)


@main.command()
@click.argument("poly")
@field_option
@nvars_option
@json_option
@reports_errors
def hilbert(poly: str, field_flag: str, nvars: int | None, as_json: bool) -> None:
    """Hilbert function of R/Ann(F) for homogeneous F."""
    from apolar.core.apolarity import hilbert_function

    F = _parse(poly, field_flag, nvars)
    h = hilbert_function(F)
    symmetric = h == h[::-1]
    if as_json:
        _echo_json({"input": format_poly(F), "hilbert": h, "symmetric": symmetric})
        return
    console.print(f"h = {tuple(h)}")
    if not symmetric:
        console.print("[red]✗ Hilbert function is not symmetric[/red]")


@main.command()
@click.argument("poly")
@field_option
@nvars_option
@json_option
@click.option(
    "--trials", type=click.IntRange(min=0), default=8, show_default=True, help="Random candidates after x1+...+xN"
)
@click.option("--seed", default=0, show_default=True, help="Seed for the random candidates")
@click.option("--slp-override", is_flag=True, help="Allow the search over prime fields")
@reports_errors
def slp(
    poly: str,
    field_flag: str,
    nvars: int | None,
    as_json: bool,
    trials: int,
    seed: int,
    slp_override: bool,
) -> None:
    """Search for a strong Lefschetz element of R/Ann(F).

    A found witness proves the property; a failed search is only evidence.
    """
    from apolar.core.lefschetz import build_graded_quotient, find_slp_witness
    from apolar.corpus.verify import slp_summary

    F = _parse(poly, field_flag, nvars)
    algebra = build_graded_quotient(F)
    report = find_slp_witness(
        algebra, trials=trials, seed=seed, allow_positive_characteristic=slp_override
    )
    data = {"input": format_poly(F), "hilbert": algebra.h, **slp_summary(report)}
    if as_json:
        _echo_json(data)
        return
    console.print(f"h = {tuple(algebra.h)}")
    if report.found:
        console.print(f"[green]✓[/green] {report.message}")
    else:
        console.print(f"[yellow]{report.message}[/yellow]")
        for i, d, achieved, best in report.failed_pairs:
            console.print(f"  ×ℓ^{d}: A_{i} -> A_{i + d} has rank {achieved}, expected {best}")


@main.command()
@click.option("--config", "config_path", type=click.Path(path_type=Path), help="YAML or TOML corpus spec")
@click.option("--count", type=int, default=None, help="Number of binomials")
@click.option("--seed", type=int, default=None, help="Generator seed")
@click.option("--field", "field_flag", default=None, help="'q' or 'p:<prime>'")
@click.option("--max-a", type=int, default=None, help="Bound on shared exponents")
@click.option("--max-b", type=int, default=None, help="Bound on residual exponents")
@click.option("--homogeneous", is_flag=True, default=None, help="Only homogeneous binomials")
@click.option("--workers", type=int, default=None, help="Worker processes")
@click.option("--slp", "with_slp", is_flag=True, default=None, help="Run the SLP search")
@click.option("--slp-override", is_flag=True, default=None, help="Allow SLP over prime fields")
@click.option("--trials", type=click.IntRange(min=0), default=None, help="Random SLP candidates")
@click.option("--check-truncation", is_flag=True, default=None, help="Recompute at degree D+2")
@click.option("--out", "out_path", type=click.Path(path_type=Path), help="JSON Lines output file")
@click.option("--summary", "summary_path", type=click.Path(path_type=Path), help="Summary JSON file")
@click.option("--timings", is_flag=True, help="Record wall-clock time per stage")
@json_option
@reports_errors
def corpus(
    config_path: Path | None,
    count: int | None,
    seed: int | None,
    field_flag: str | None,
    max_a: int | None,
    max_b: int | None,
    homogeneous: bool | None,
    workers: int | None,
    with_slp: bool | None,
    slp_override: bool | None,
    trials: int | None,
    check_truncation: bool | None,
    out_path: Path | None,
    summary_path: Path | None,
    timings: bool,
    as_json: bool,
) -> None:
    """Generate binomials and cross-check every one of them.

    Exits with status 4 if any record disagrees.

    Examples:

        apolar corpus --count 500 --seed 7 --out corpus.jsonl

        apolar corpus --config corpus.yaml --workers 4 --slp
    """
    from pydantic import ValidationError

    from apolar.config.loader import ConfigError, load_corpus_spec
    from apolar.config.schema import SlpOptions
    from apolar.corpus.runner import run_corpus, write_summary

    overrides = {
        "count": count,
        "seed": seed,
        "field": field_flag,
        "max_a": max_a,
        "max_b": max_b,
        "homogeneous_only": homogeneous,
        "workers": workers,
        "check_truncation": check_truncation,
    }
    spec = load_corpus_spec(config_path if config_path else {}, overrides)
    slp_updates = {
        k: v
        for k, v in {"enabled": with_slp, "override": slp_override, "trials": trials}.items()
        if v is not None
    }
    if slp_updates:
        try:
            slp_options = SlpOptions.model_validate({**spec.slp.model_dump(), **slp_updates})
        except ValidationError as e:
            raise ConfigError(f"Invalid SLP options: {e}") from e
        spec = spec.model_copy(update={"slp": slp_options})

    summary = run_corpus(spec, out_path, timings=timings, echo=click.echo)
    if summary_path is not None:
        write_summary(summary, summary_path)

    if out_path is None or as_json:
        _echo_json({"summary": summary.to_dict()})
    else:
        _print_summary(summary, out_path)
    if not summary.ok:
        sys.exit(EXIT_DISAGREEMENT)


def _print_summary(summary: Any, out_path: Path) -> None:
    table = Table(title=f"Corpus summary ({out_path})")
    table.add_column("Verdict", style="cyan")
    table.add_column("Count", justify="right")
    for verdict, n in sorted(summary.verdicts.items()):
        table.add_row(verdict, str(n))
    console.print(table)
    console.print(f"records: {summary.total}, oracle fallbacks: {summary.fallbacks}")
    if summary.slp_attempted:
        console.print(f"SLP searches: {summary.slp_attempted}, without witness: {len(summary.slp_failures)}")
    if summary.ok:
        console.print("[green]✓ no disagreements[/green]")
    else:
        console.print(
            f"[red]✗ {len(summary.disagreements)} disagreements, "
            f"{len(summary.equality_failures)} equality failures, "
            f"{len(summary.certificate_failures)} certificate failures[/red]"
        )
