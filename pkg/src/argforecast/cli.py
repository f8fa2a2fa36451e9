"""Batch command line: dataset analysis, debate coherence, variant tooling,
statistics and the HTTP server.

Exit codes: 0 success, 1 validation or input error, 2 usage error.  Numbers
are printed with 6 significant digits.
"""

from __future__ import annotations

import json
import random
import sys

import click

from . import datasets, reporting, stats
from .coherence import ThresholdConfig, check_coherence
from .coherence import aggregate_forecast as _aggregate_forecast
from .errors import ArgForecastError
from .variants import ComplexityProfile, VariantSpec, classify
from .variants import generate as _generate


def _fail(message: str) -> "click.exceptions.Exit":
    click.echo(f"error: {message}", err=True)
    return click.exceptions.Exit(1)


def _num(value: float | None) -> str:
    return "-" if value is None else f"{value:.6g}"


@click.group()
def main() -> None:
    """Argumentation-based forecasting toolkit."""


@main.command()
@click.argument("dataset", type=click.Path(exists=True, dir_okay=False))
@click.option("--xi1", default=0.5, show_default=True, help="Strength midpoint in (0,1).")
@click.option("--xi2", default="0.5", show_default=True,
              help="Expected likelihood in (0,1), or 'auto' to read per-question priors.")
@click.option("--xi2-map", type=click.Path(exists=True, dir_okay=False),
              help="JSON map question id -> prior; required with --xi2 auto.")
@click.option("--eps", default=0.05, show_default=True, help="Slack at the strength midpoint.")
@click.option("--base", default=0.5, show_default=True, help="Base score of the claim.")
@click.option("--report-dir", type=click.Path(file_okay=False),
              help="Also write accuracy.csv and accuracy.png here.")
def analyze(dataset, xi1, xi2, xi2_map, eps, base, report_dir) -> None:
    """Score a dataset of resolved forecast records, raw vs coherent."""
    try:
        records = datasets.load_dataset(dataset)
        if xi2 == "auto":
            if not xi2_map:
                raise ArgForecastError("--xi2 auto requires --xi2-map")
            with open(xi2_map, encoding="utf-8") as fh:
                xi2_value: float | dict = {str(k): float(v) for k, v in json.load(fh).items()}
        else:
            xi2_value = float(xi2)
        cfg = ThresholdConfig(xi1=xi1, xi2=xi2_value, epsilon=eps)
        report = datasets.accuracy_report(records, cfg, base)
    except (ArgForecastError, ValueError) as exc:
        raise _fail(str(exc)) from exc
    click.echo(reporting.accuracy_table(report))
    click.echo(json.dumps(report.to_dict(), indent=2))
    if report_dir:
        for path in reporting.write_report_bundle(report, report_dir):
            click.echo(f"wrote {path}")


@main.group()
def debate() -> None:
    """Operations on single debate files."""


@debate.command("coherence")
@click.argument("debate_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--user", required=True, help="Forecaster id to check.")
@click.option("--xi1", default=0.5, show_default=True)
@click.option("--xi2", default=0.5, show_default=True)
@click.option("--xi2-map", type=click.Path(exists=True, dir_okay=False),
              help="JSON map forecasting argument id -> prior (overrides --xi2).")
@click.option("--eps", default=0.05, show_default=True)
def debate_coherence(debate_file, user, xi1, xi2, xi2_map, eps) -> None:
    """Per-question verdicts for one forecaster plus the group forecast."""
    try:
        acf = datasets.load_acf(debate_file)
        xi2_value: float | dict = xi2
        if xi2_map:
            with open(xi2_map, encoding="utf-8") as fh:
                xi2_value = {str(k): float(v) for k, v in json.load(fh).items()}
        cfg = ThresholdConfig(xi1=xi1, xi2=xi2_value, epsilon=eps)
        verdicts = check_coherence(acf, user, cfg)
        summaries = [_aggregate_forecast(acf, f, cfg) for f in sorted(acf.forecasting_ids())]
    except (ArgForecastError, ValueError) as exc:
        raise _fail(str(exc)) from exc
    for v in verdicts:
        click.echo(
            f"{v.argument}: sigma={_num(v.sigma)} p={_num(v.prediction)} "
            f"branch={v.branch.value} coherent={str(v.coherent).lower()}"
        )
    for summary in summaries:
        prior = None
        if isinstance(xi2_value, dict):
            prior = xi2_value.get(summary.argument)
        click.echo(reporting.forecast_table(summary, prior))


@main.group()
def variants() -> None:
    """Generate and classify debate variants."""


@variants.command("generate")
@click.option("--profile", required=True,
              type=click.Choice(["s", "v", "b", "d", "vb", "vd", "db", "vdb"]))
@click.option("--band", required=True, type=click.Choice(["lt50", "eq50", "gt50"]))
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--question", default="tennis", show_default=True,
              help="Question id in the template store.")
@click.option("--templates", "templates_file", type=click.Path(exists=True, dir_okay=False),
              help="Template store JSON (defaults to the built-in questions).")
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Write the debate here.")
def variants_generate(profile, band, seed, question, templates_file, output) -> None:
    """Build a debate of the requested shape with a fictitious forecaster."""
    try:
        store = datasets.load_templates(templates_file) if templates_file else None
        spec = VariantSpec(question, ComplexityProfile.from_token(profile), band)
        acf, user = _generate(spec, store, random.Random(seed))
    except (ArgForecastError, ValueError) as exc:
        raise _fail(str(exc)) from exc
    doc = datasets.acf_to_dict(acf)
    doc["forecasters"] = sorted(acf.forecasters)
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
        click.echo(f"wrote {output} (forecaster {user})")
    else:
        click.echo(text, nl=False)


@variants.command("classify")
@click.argument("debate_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--user", required=True)
def variants_classify(debate_file, user) -> None:
    """Print the complexity profile token of a debate."""
    try:
        acf = datasets.load_acf(debate_file)
        profile = classify(acf, user)
    except (ArgForecastError, ValueError) as exc:
        raise _fail(str(exc)) from exc
    token = profile.token
    click.echo("simple" if token == "s" else token)


@main.group(name="stats")
def stats_group() -> None:
    """Study statistics."""


@stats_group.command("mcnemar")
@click.option("--yy", required=True, type=int)
@click.option("--yn", required=True, type=int)
@click.option("--ny", required=True, type=int)
@click.option("--nn", required=True, type=int)
def stats_mcnemar(yy, yn, ny, nn) -> None:
    """Disagreement test on a 2x2 contingency table."""
    try:
        chi2, p = stats.mcnemar(stats.ContingencyTable(yy, yn, ny, nn))
    except (ArgForecastError, ValueError) as exc:
        raise _fail(str(exc)) from exc
    click.echo(f"chi2={chi2:.6g} p={p:.6g}")


@stats_group.command("ttest")
@click.option("--mean-a", required=True, type=float)
@click.option("--sd-a", required=True, type=float)
@click.option("--n-a", required=True, type=int)
@click.option("--mean-b", required=True, type=float)
@click.option("--sd-b", required=True, type=float)
@click.option("--n-b", required=True, type=int)
def stats_ttest(mean_a, sd_a, n_a, mean_b, sd_b, n_b) -> None:
    """One-sided two-sample t-test (H1: mean_a > mean_b) from summaries."""
    try:
        t, p = stats.t_test_one_sided(
            stats.GroupSummary(mean_a, sd_a, n_a), stats.GroupSummary(mean_b, sd_b, n_b)
        )
    except (ArgForecastError, ValueError) as exc:
        raise _fail(str(exc)) from exc
    click.echo(f"t={t:.6g} p={p:.6g}")


@stats_group.command("complexity-means")
@click.argument("counts_file", type=click.Path(exists=True, dir_okay=False))
def stats_complexity_means(counts_file) -> None:
    """Per-axis alignment means from a JSON map shape -> [aligned, not]."""
    try:
        with open(counts_file, encoding="utf-8") as fh:
            raw = json.load(fh)
        counts = {str(k): (int(v[0]), int(v[1])) for k, v in raw.items()}
        result = stats.complexity_means(counts)
    except (ArgForecastError, ValueError, KeyError, IndexError, json.JSONDecodeError) as exc:
        raise _fail(str(exc)) from exc
    for axis in stats.AXES:
        cx, plain = result[axis]
        click.echo(
            f"{axis}: complex mean={cx.mean:.6g} sd={cx.sd:.6g} n={cx.n} | "
            f"non-complex mean={plain.mean:.6g} sd={plain.sd:.6g} n={plain.n}"
        )


@main.command()
@click.option("--addr", default=None, help="host:port to listen on.")
@click.option("--data-dir", default=None, type=click.Path(file_okay=False),
              help="Directory for event logs and snapshots.")
def serve(addr, data_dir) -> None:
    """Run the debate HTTP service."""
    from . import service

    service.run(addr, data_dir)


if __name__ == "__main__":
    sys.exit(main())
