"""Command-line entry point: ``appnext replay | synth | metrics``."""

import json
import sys
from pathlib import Path

import click
import numpy as np

from .engine import ALWAYS_ACTUAL, IN_KTOP, EngineConfig
from .errors import AppNextError
from .metrics import DCG_FLAT_TOP, DCG_VARIANTS, PREDICTORS, aggregate, time_series
from .replay import RunConfig, replay
from .reports import emit_reports, read_records, summary_json, timeseries_csv, write_files_atomic
from .streams import FORMATS, SyntheticSpec, dominant_cycle_matrix, format_events, parse_events, synth_markov

EXIT_OK, EXIT_INPUT, EXIT_PARTIAL = 0, 1, 2


def _delta(value):
    if value.strip().lower() in ("inf", "infinite", "none"):
        return None
    try:
        delta = int(value)
    except ValueError:
        raise click.BadParameter(f"expected a positive integer or 'inf', got {value!r}")
    if delta <= 0:
        raise click.BadParameter("must be positive")
    return delta


def _predictors(value):
    names = tuple(p.strip().upper() for p in value.split(",") if p.strip())
    bad = [p for p in names if p not in PREDICTORS]
    if bad or not names:
        raise click.BadParameter(f"choose from {','.join(PREDICTORS)}")
    return names


def _fail(exc, code=EXIT_INPUT):
    click.echo(f"error: {exc}", err=True)
    sys.exit(code)


@click.group()
def main():
    """Next-app prediction with learning automata, plus MRU/MFU baselines."""


@main.command("replay")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Launch log (user_id,timestamp_ms,app_name).")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="csv", show_default=True)
@click.option("--lambda", "lam", type=float, default=0.1, show_default=True, help="Learning rate, 0 < lambda < 1.")
@click.option("--delta-ms", default="300000", show_default=True,
              help="Transition window in ms, or 'inf' to disable.")
@click.option("--k", type=int, default=6, show_default=True, help="Length of the offered top-k list.")
@click.option("--window", type=int, default=50, show_default=True, help="Rolling-recall window.")
@click.option("--seed", type=int, default=None, help="Recorded in summary.json.")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False), help="Report directory.")
@click.option("--reward-scope", type=click.Choice((IN_KTOP, ALWAYS_ACTUAL)), default=IN_KTOP, show_default=True)
@click.option("--dcg-variant", type=click.Choice(DCG_VARIANTS), default=DCG_FLAT_TOP, show_default=True)
@click.option("--predictors", default=",".join(PREDICTORS), show_default=True,
              help="Comma-separated subset of FALA,MRU,MFU.")
@click.option("--include-gated", is_flag=True, help="Score out-of-window transitions as FALA misses.")
def replay_cmd(input_path, fmt, lam, delta_ms, k, window, seed, out_dir, reward_scope,
               dcg_variant, predictors, include_gated):
    """Replay a launch log and write records, summary, time series and ATPM."""
    try:
        config = RunConfig(
            engine=EngineConfig(lam=lam, delta_ms=_delta(delta_ms), k=k, reward_scope=reward_scope),
            window=window,
            predictors=_predictors(predictors),
            include_gated=include_gated,
            dcg_variant=dcg_variant,
            seed=seed,
        )
        stream = parse_events(input_path, fmt)
    except (AppNextError, click.BadParameter) as exc:
        _fail(exc)
    result = replay(stream, config)
    try:
        paths = emit_reports(result, out_dir)
    except OSError as exc:
        _fail(exc)
    for name, s in result.summaries.items():
        click.echo(f"{name:5s} n={s.count:7d} recall@{k}={s.recall:.4f} dcg={s.dcg:.4f} mrr={s.mrr:.4f}")
    click.echo(f"wrote {len(paths)} files to {out_dir}")
    if result.failures:
        click.echo(f"{len(result.failures)} user(s) failed: {', '.join(result.failures)}", err=True)
        sys.exit(EXIT_PARTIAL)


@main.command("synth")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False), help="Output event file.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="csv", show_default=True)
@click.option("--matrix", type=click.Path(exists=True, dir_okay=False), default=None,
              help="JSON file with a row-stochastic matrix (list of rows).")
@click.option("--n-apps", type=int, default=5, show_default=True,
              help="Used without --matrix: cyclic chain with one dominant successor per app.")
@click.option("--peak", type=float, default=0.7, show_default=True, help="Dominant transition probability.")
@click.option("--n-events", type=int, default=10_000, show_default=True)
@click.option("--inter-arrival-ms", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True, help="PCG64 seed.")
@click.option("--user", default="synthetic", show_default=True)
def synth_cmd(out_path, fmt, matrix, n_apps, peak, n_events, inter_arrival_ms, seed, user):
    """Generate a launch log from a Markov chain."""
    try:
        if matrix:
            with open(matrix, encoding="utf-8") as fh:
                m = np.asarray(json.load(fh), dtype=float)
        else:
            m = dominant_cycle_matrix(n_apps, peak)
        stream = synth_markov(SyntheticSpec(m, n_events, seed, inter_arrival_ms, user))
        out = Path(out_path)
        write_files_atomic(out.parent, {out.name: format_events(stream, fmt)})
    except (AppNextError, ValueError, OSError) as exc:
        _fail(exc)
    click.echo(f"wrote {len(stream)} events to {out_path}")


@main.command("metrics")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="A records.csv written by 'replay'.")
@click.option("--window", type=int, default=50, show_default=True)
@click.option("--dcg-variant", type=click.Choice(DCG_VARIANTS), default=DCG_FLAT_TOP, show_default=True)
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
def metrics_cmd(input_path, window, dcg_variant, out_dir):
    """Re-score an existing records.csv into summary.json and timeseries.csv."""
    try:
        records = read_records(input_path)
        summaries = aggregate(records, dcg_variant) if records else {}
    except AppNextError as exc:
        _fail(exc)
    by_user = {}
    for r in records:
        by_user.setdefault(r.user, []).append(r)
    series = {u: time_series(rs, window) for u, rs in sorted(by_user.items())}
    write_files_atomic(out_dir, {
        "summary.json": summary_json(summaries),
        "timeseries.csv": timeseries_csv(series),
    })
    for name, s in summaries.items():
        click.echo(f"{name:5s} n={s.count:7d} recall={s.recall:.4f} dcg={s.dcg:.4f} mrr={s.mrr:.4f}")


if __name__ == "__main__":
    main()
