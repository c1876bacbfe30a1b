"""Command-line front end: scenario in, CSV (and optional PNG) out.

Commands map one-to-one onto the experiments module: ``plan`` for a single
alarm location, ``sweep`` and ``baselines`` for the alarm-location study,
and the three ``sens-*`` commands for the sensitivity analyses. All floats
are written with six significant digits so repeated runs diff cleanly.
"""

from __future__ import annotations

import csv
import dataclasses
from pathlib import Path

import click
import yaml

from . import experiments
from .decisions import DECISION_ORDER, Impact, parse_impacts
from .quadrature import QuadratureError
from .risk import RiskReport, choose_decision
from .scenario import Scenario, ScenarioError, load_scenario
from .geometry import Workshop


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".6g")
    return str(value)


def _write_csv(path: Path, header: list[str], rows: list[list]) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows([[_fmt(v) for v in row] for row in rows])
    except OSError as err:
        raise click.ClickException(f"cannot write {path}: {err}")
    return path


def _load(scenario_source: str, quad_tol: float | None) -> Scenario:
    try:
        scenario = load_scenario(scenario_source)
    except ScenarioError as err:
        raise click.ClickException(str(err))
    if quad_tol is not None:
        scenario = scenario.with_quadrature(
            dataclasses.replace(scenario.quadrature, rel_tol=quad_tol)
        )
    return scenario


def _report_rows(report: RiskReport) -> list[list]:
    rows = []
    for d in DECISION_ORDER:
        rows.append(
            [
                report.alarm_position,
                d.value,
                report.losses[d].get(Impact.AVAILABILITY),
                report.losses[d].get(Impact.MAINTENANCE),
                report.total(d),
                report.chosen.value,
            ]
        )
    return rows


SWEEP_HEADER = ["d_a", "decision", "E_al", "E_mc", "E_total", "chosen"]


def scenario_option(fn):
    fn = click.option(
        "--scenario",
        "scenario_source",
        default="paper-basic",
        show_default=True,
        help="Scenario YAML path or bundled preset name.",
    )(fn)
    fn = click.option(
        "--out",
        type=click.Path(path_type=Path),
        default=Path("out"),
        show_default=True,
        help="Output directory for CSV/PNG files.",
    )(fn)
    fn = click.option(
        "--quad-tol", type=float, default=None, help="Override quadrature relative tolerance."
    )(fn)
    return fn


def jobs_option(fn):
    return click.option(
        "--jobs", type=int, default=1, show_default=True, help="Parallel sweep workers."
    )(fn)


def plot_option(fn):
    return click.option("--plot", is_flag=True, help="Also render a PNG figure.")(fn)


@click.group()
@click.version_option()
def main():
    """Economic-risk planner for on-road truck maintenance decisions."""


@main.command()
@scenario_option
@click.option("--da", type=float, default=None, help="Alarm location in km (default: scenario's).")
@click.option(
    "--impacts",
    "impacts_token",
    type=click.Choice(["al", "mc", "both"]),
    default="both",
    show_default=True,
    help="Impact channels included in the decision.",
)
def plan(scenario_source, out, quad_tol, da, impacts_token):
    """Score all decisions at one alarm location and pick the cheapest."""
    scenario = _load(scenario_source, quad_tol)
    if da is not None:
        scenario = scenario.with_alarm(da)
    impacts = parse_impacts(impacts_token)
    try:
        report = choose_decision(scenario, impacts)
    except (QuadratureError, ValueError) as err:
        raise click.ClickException(str(err))
    for d in DECISION_ORDER:
        parts = ", ".join(
            f"{impact.value}={report.losses[d][impact]:.2f}" for impact in impacts
        )
        marker = " <- chosen" if d is report.chosen else ""
        click.echo(f"{d.value}: total={report.total(d):.2f} EUR ({parts}){marker}")
    path = _write_csv(out / "plan.csv", SWEEP_HEADER, _report_rows(report))
    click.echo(f"wrote {path}")


@main.command()
@scenario_option
@jobs_option
@plot_option
@click.option("--step", type=float, default=None, help="Grid step in km (default: scenario's).")
@click.option(
    "--impacts",
    "impacts_token",
    type=click.Choice(["al", "mc", "both"]),
    default="both",
    show_default=True,
)
def sweep(scenario_source, out, quad_tol, jobs, plot, step, impacts_token):
    """Evaluate every decision over the whole alarm-location grid."""
    scenario = _load(scenario_source, quad_tol)
    result = experiments.sweep(scenario, step=step, impacts=parse_impacts(impacts_token), jobs=jobs)
    rows = [row for report in result.reports for row in _report_rows(report)]
    path = _write_csv(out / "sweep.csv", SWEEP_HEADER, rows)
    click.echo(f"wrote {path} ({len(result.grid)} locations)")
    if plot:
        from . import plots

        click.echo(f"wrote {plots.plot_sweep(result, out / 'sweep.png')}")


@main.command()
@scenario_option
@jobs_option
@plot_option
@click.option("--step", type=float, default=None, help="Grid step in km (default: scenario's).")
def baselines(scenario_source, out, quad_tol, jobs, plot, step):
    """Compare the min-risk policy against the always-one-decision baselines."""
    scenario = _load(scenario_source, quad_tol)
    result = experiments.sweep(scenario, step=step, jobs=jobs)
    report = experiments.eer(result)
    rows = [
        [f"bm_{d.value}", report.baselines[d], report.reductions[d]] for d in DECISION_ORDER
    ]
    rows.append(["pm", report.policy, None])
    path = _write_csv(out / "baselines.csv", ["method", "EER", "R"], rows)
    for d in DECISION_ORDER:
        click.echo(
            f"bm_{d.value}: EER={report.baselines[d]:.1f} EUR, "
            f"reduction={100 * report.reductions[d]:.1f}%"
        )
    click.echo(f"pm: EER={report.policy:.1f} EUR")
    click.echo(f"wrote {path}")
    if plot:
        from . import plots

        click.echo(f"wrote {plots.plot_eer(report, out / 'baselines.png')}")


@main.command("sens-rul")
@scenario_option
@jobs_option
@plot_option
@click.option("--step", type=float, default=None, help="Grid step in km (default: scenario's).")
@click.option(
    "--points",
    type=int,
    default=experiments.RUL_SHAPE_POINTS,
    show_default=True,
    help="Number of shape values on the sweep grid.",
)
def sens_rul(scenario_source, out, quad_tol, jobs, plot, step, points):
    """Expected minimal risk versus RUL estimation accuracy."""
    scenario = _load(scenario_source, quad_tol)
    rows = experiments.rul_sensitivity(
        scenario, shapes=experiments.rul_shape_grid(points), step=step, jobs=jobs
    )
    path = _write_csv(
        out / "sens_rul.csv",
        ["shape", "variance", "expected_mer"],
        [[p.shape, p.variance, p.expected_mer] for p in rows],
    )
    click.echo(f"wrote {path} ({len(rows)} shape values)")
    if plot:
        from . import plots

        click.echo(f"wrote {plots.plot_rul_sensitivity(rows, out / 'sens_rul.png')}")


@main.command("sens-utility")
@scenario_option
@jobs_option
@plot_option
@click.option("--step", type=float, default=None, help="Grid step in km (default: scenario's).")
def sens_utility(scenario_source, out, quad_tol, jobs, plot, step):
    """Expected minimal risk across the delay-contract grid."""
    scenario = _load(scenario_source, quad_tol)
    rows = experiments.utility_sensitivity(scenario, step=step, jobs=jobs)
    path = _write_csv(
        out / "sens_utility.csv",
        ["cancel_hours", "cancel_penalty", "expected_mer"],
        [[p.cancel_hours, p.cancel_penalty, p.expected_mer] for p in rows],
    )
    click.echo(f"wrote {path} ({len(rows)} cells)")
    if plot:
        from . import plots

        click.echo(f"wrote {plots.plot_utility_sensitivity(rows, out / 'sens_utility.png')}")


def _parse_workshops(token: str, scenario: Scenario) -> tuple[Workshop, ...]:
    try:
        count = int(token)
    except ValueError:
        pass
    else:
        return experiments.evenly_spaced_workshops(scenario, count)
    path = Path(token)
    if not path.exists():
        raise click.ClickException(f"--workshops expects a count or a YAML file, got {token!r}")
    try:
        entries = yaml.safe_load(path.read_text())
        return tuple(
            Workshop(
                label=str(e["label"]),
                highway_position=float(e["highway_position_km"]),
                offset=float(e.get("offset_km", 0.0)),
            )
            for e in entries
        )
    except (yaml.YAMLError, KeyError, TypeError, ValueError) as err:
        raise click.ClickException(f"cannot parse workshop file {path}: {err}")


@main.command("sens-workshops")
@scenario_option
@jobs_option
@plot_option
@click.option("--step", type=float, default=None, help="Grid step in km (default: scenario's).")
@click.option(
    "--workshops",
    "workshops_token",
    default="2",
    show_default=True,
    help="Workshop count (evenly spaced) or a YAML file with workshop entries.",
)
def sens_workshops(scenario_source, out, quad_tol, jobs, plot, step, workshops_token):
    """Expected minimal risk with an alternative workshop set."""
    scenario = _load(scenario_source, quad_tol)
    workshops = _parse_workshops(workshops_token, scenario)
    comparison = experiments.workshop_scenario(scenario, workshops, step=step, jobs=jobs)
    summary = _write_csv(
        out / "sens_workshops.csv",
        ["config", "n_workshops", "expected_mer", "change_vs_base"],
        [
            ["base", len(scenario.geometry.workshops), comparison.base_mer, None],
            ["variant", len(workshops), comparison.variant_mer, comparison.relative_change],
        ],
    )
    rows = [row for report in comparison.variant.reports for row in _report_rows(report)]
    detail = _write_csv(out / "sens_workshops_sweep.csv", SWEEP_HEADER, rows)
    click.echo(
        f"expected MER: base={comparison.base_mer:.1f} EUR, "
        f"variant={comparison.variant_mer:.1f} EUR "
        f"({100 * comparison.relative_change:+.1f}%)"
    )
    click.echo(f"wrote {summary}")
    click.echo(f"wrote {detail}")
    if plot:
        from . import plots

        click.echo(f"wrote {plots.plot_workshop_comparison(comparison, out / 'sens_workshops.png')}")


if __name__ == "__main__":
    main()
