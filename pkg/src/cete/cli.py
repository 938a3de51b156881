"""Command-line frontend.

Subcommands:

* ``ce``       copula entropy of selected columns of a CSV
* ``te``       transfer-entropy lag scan between two columns
* ``baseline`` the same scan with the raw four-entropy CMI estimator
* ``synth``    simulate the coupled autoregressive pair to a CSV
* ``oracle``   analytic transfer entropy / Granger ratio for that pair

Inputs are either the hourly air-quality CSV (recognized by its exact
header, see :mod:`cete.ingest`) or any headered numeric CSV. Window
selection flags apply only to the former. Data goes to the output stream,
diagnostics to stderr, and the exit code is 0 only if the computation
completed.

CSV output uses 6 significant digits (plot-grade); JSON keeps full
precision (regression-grade).
"""
from __future__ import annotations

import csv
import io
import json
import sys
from datetime import datetime

import click

from . import __version__
from .causality import cmi_four_entropy_baseline, lag_scan, EmbeddingSpec
from .copula import copula_entropy
from .core import EstimatorParams, SeriesMatrix, validate_matrix
from .errors import CeteError, MalformedRowError, UnknownColumnError
from .ingest import (
    ByDateRange,
    FirstCompleteRun,
    PM25_HEADER,
    parse_pm25_csv,
    select_window,
    to_series_matrix,
)
from .oracle import Var2Spec, analytic_var_te, simulate_var2, stationary_covariance

__all__ = ["main", "parse_lag_spec"]

_DEFAULT_RUN = 1000  # default complete-window length, in hours


def parse_lag_spec(text: str) -> list[int]:
    """Parse a lag spec: comma-separated ints and inclusive ``a..b`` ranges.

    Examples: ``"9"``, ``"1..24"``, ``"1,2,4..6,12"``. The result must be
    strictly increasing and every lag must be >= 1.
    """
    lags: list[int] = []
    for item in text.split(","):
        item = item.strip()
        try:
            if ".." in item:
                lo_s, hi_s = item.split("..", 1)
                lo, hi = int(lo_s), int(hi_s)
                if hi < lo:
                    raise ValueError
                lags.extend(range(lo, hi + 1))
            else:
                lags.append(int(item))
        except ValueError:
            raise click.UsageError(f"bad lag spec item {item!r}")
    if not lags:
        raise click.UsageError("empty lag spec")
    if lags[0] < 1:
        raise click.UsageError(f"lags must be >= 1, got {lags[0]}")
    if any(b <= a for a, b in zip(lags, lags[1:])):
        raise click.UsageError(f"lags must be strictly increasing: {text!r}")
    return lags


def _parse_date_range(text: str) -> ByDateRange:
    parts = text.split(":")
    if len(parts) != 2:
        raise click.UsageError(
            f"date range must be START:END (dates as YYYY-MM-DD or "
            f"YYYY-MM-DDTHH), got {text!r}"
        )
    stamps = []
    for part, is_end in zip(parts, (False, True)):
        try:
            if "T" in part:
                stamps.append(datetime.strptime(part, "%Y-%m-%dT%H"))
            else:
                day = datetime.strptime(part, "%Y-%m-%d")
                # a date-only END means the whole day, through hour 23
                stamps.append(day.replace(hour=23) if is_end else day)
        except ValueError:
            raise click.UsageError(f"bad date {part!r} in range {text!r}")
    start, end = stamps
    if end < start:
        raise click.UsageError(f"date range ends before it starts: {text!r}")
    return ByDateRange(start=start, end=end)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, newline="") as fh:
            return fh.read()
    except OSError as err:
        raise click.ClickException(f"ingest: {err}")


def _generic_matrix(text: str, columns: tuple[str, ...]) -> SeriesMatrix:
    """Pull the named columns out of a plain headered numeric CSV."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedRowError(1, "empty input")
    missing = [c for c in columns if c not in header]
    if missing:
        raise UnknownColumnError(
            f"column(s) {', '.join(missing)} not in header {header}"
        )
    idx = [header.index(c) for c in columns]
    rows = []
    for line, row in enumerate(reader, start=2):
        if not row:
            continue
        if max(idx) >= len(row):
            raise MalformedRowError(
                line, f"expected {len(header)} fields, got {len(row)}"
            )
        try:
            rows.append([float(row[i]) for i in idx])
        except ValueError as err:
            raise MalformedRowError(line, str(err))
    return validate_matrix(rows, labels=columns)


def _load_matrix(input_path: str, columns: tuple[str, ...],
                 date_range: str | None, run_length: int | None,
                 ) -> SeriesMatrix:
    """Load the requested columns, resolving a window for schema'd input."""
    if date_range is not None and run_length is not None:
        raise click.UsageError(
            "--date-range and --first-complete-run are mutually exclusive"
        )
    text = _read_text(input_path)
    first_line = text.split("\n", 1)[0].rstrip("\r")
    is_pm25 = tuple(first_line.split(",")) == PM25_HEADER
    try:
        if is_pm25:
            records = parse_pm25_csv(io.StringIO(text))
            if date_range is not None:
                policy = _parse_date_range(date_range)
            else:
                policy = FirstCompleteRun(run_length if run_length is not None
                                          else _DEFAULT_RUN)
            window = select_window(records, policy, required_columns=columns)
            matrix = to_series_matrix(records, window, columns)
            start = records[window.start_index].timestamp()
            click.echo(
                f"# window: {window.length} records from {start}",
                err=True,
            )
            return matrix
        if date_range is not None or run_length is not None:
            raise click.UsageError(
                "window flags apply only to the hourly air-quality schema; "
                "this input has a different header"
            )
        return _generic_matrix(text, columns)
    except CeteError as err:
        raise click.ClickException(f"ingest: {err}")


def _open_output(path: str):
    if path == "-":
        return sys.stdout, False
    try:
        return open(path, "w", newline=""), True
    except OSError as err:
        raise click.ClickException(f"output: {err}")


def _write_rows(path: str, header: list[str], rows: list[list]) -> None:
    """CSV output: 6 significant digits, exactly one trailing newline."""
    stream, should_close = _open_output(path)
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [f"{v:.6g}" if isinstance(v, float) else str(v) for v in row]
            )
    finally:
        if should_close:
            stream.close()


def _write_json(path: str, payload) -> None:
    stream, should_close = _open_output(path)
    try:
        json.dump(payload, stream, indent=2)
        stream.write("\n")
    finally:
        if should_close:
            stream.close()


def _input_option():
    return click.option("--input", "-i", "input_path", default="-",
                        show_default=True,
                        help="Input CSV path, or - for stdin.")


def _window_options(fn):
    fn = click.option(
        "--date-range", default=None, metavar="START:END",
        help="Select records in [START, END] (schema'd input only).",
    )(fn)
    fn = click.option(
        "--first-complete-run", "run_length", default=None,
        type=click.IntRange(min=1), metavar="N",
        help=f"Select the first N-record complete run (schema'd input "
             f"only; default policy, N={_DEFAULT_RUN}).",
    )(fn)
    return fn


def _common_options(fn):
    fn = click.option("--k", default=3, show_default=True,
                      type=click.IntRange(min=1),
                      help="Neighbor index for the entropy estimator.")(fn)
    fn = click.option("--format", "fmt", default="csv", show_default=True,
                      type=click.Choice(["csv", "json"]),
                      help="Output format.")(fn)
    fn = click.option("--output", "-o", "output_path", default="-",
                      show_default=True,
                      help="Output path, or - for stdout.")(fn)
    return fn


def _scan_options(fn):
    fn = _input_option()(fn)
    fn = click.option("--cause", required=True,
                      help="Cause column name.")(fn)
    fn = click.option("--effect", required=True,
                      help="Effect column name.")(fn)
    fn = click.option("--lags", "lags_spec", default="1..24",
                      show_default=True,
                      help="Lags to scan: ints and a..b ranges, "
                           "comma-separated.")(fn)
    fn = click.option("--order", "-m", "order_m", default=1,
                      show_default=True, type=click.IntRange(min=1),
                      help="Markov order of the effect's own past.")(fn)
    fn = _window_options(fn)
    fn = _common_options(fn)
    return fn


@click.group()
@click.version_option(version=__version__, prog_name="cete")
def main():
    """Nonparametric causality analysis via copula entropy."""


@main.command()
@_input_option()
@click.option("--columns", required=True,
              help="Comma-separated column names (at least two).")
@_window_options
@_common_options
def ce(input_path, columns, date_range, run_length, k, fmt, output_path):
    """Copula entropy of the selected columns."""
    names = tuple(c.strip() for c in columns.split(",") if c.strip())
    if len(names) < 2:
        raise click.UsageError("need at least two columns")
    matrix = _load_matrix(input_path, names, date_range, run_length)
    try:
        value = copula_entropy(matrix, EstimatorParams(k=k))
    except CeteError as err:
        raise click.ClickException(f"estimation: {err}")
    click.echo(f"# columns={','.join(names)} n={matrix.T} k={k}", err=True)
    if fmt == "json":
        _write_json(output_path, {
            "ce_nats": value, "n": matrix.T, "k": k, "columns": list(names),
        })
    else:
        _write_rows(output_path, ["ce_nats", "n", "k"],
                    [[value, matrix.T, k]])


def _scan_matrix(input_path, cause, effect, date_range, run_length):
    matrix = _load_matrix(input_path, (cause, effect), date_range, run_length)
    return matrix.column(cause), matrix.column(effect)


@main.command()
@_scan_options
def te(input_path, cause, effect, lags_spec, order_m, date_range, run_length,
       k, fmt, output_path):
    """Transfer-entropy lag scan from --cause to --effect."""
    lags = parse_lag_spec(lags_spec)
    x, y = _scan_matrix(input_path, cause, effect, date_range, run_length)
    try:
        result = lag_scan(x, y, lags, order_m=order_m,
                          params=EstimatorParams(k=k),
                          cause_label=cause, effect_label=effect)
    except CeteError as err:
        raise click.ClickException(f"estimation: {err}")
    click.echo(f"# te {cause} -> {effect}, order={order_m} k={k} "
               f"n={len(x)}", err=True)
    if fmt == "json":
        _write_json(output_path, {
            "cause": cause, "effect": effect, "order_m": order_m, "k": k,
            "entries": [
                {"lag": lag, "te_nats": est.te_nats,
                 "ce_joint": est.ce_joint, "ce_self": est.ce_self,
                 "ce_assoc": est.ce_assoc, "ce_past": est.ce_past,
                 "n_effective": est.n_effective}
                for lag, est in result.entries
            ],
        })
    else:
        _write_rows(
            output_path,
            ["lag", "te_nats", "ce_joint", "ce_self", "ce_assoc", "ce_past",
             "n_effective"],
            [[lag, est.te_nats, est.ce_joint, est.ce_self, est.ce_assoc,
              est.ce_past, est.n_effective]
             for lag, est in result.entries],
        )


@main.command()
@_scan_options
def baseline(input_path, cause, effect, lags_spec, order_m, date_range,
             run_length, k, fmt, output_path):
    """Lag scan with the raw four-entropy CMI estimator (no rank step)."""
    lags = parse_lag_spec(lags_spec)
    x, y = _scan_matrix(input_path, cause, effect, date_range, run_length)
    entries = []
    params = EstimatorParams(k=k)
    try:
        for lag in lags:
            spec = EmbeddingSpec(lag=lag, order_m=order_m)
            value = cmi_four_entropy_baseline(x, y, spec, params)
            entries.append((lag, value, spec.n_effective(len(x))))
    except CeteError as err:
        raise click.ClickException(f"estimation: lag {lag}: {err}")
    click.echo(f"# baseline {cause} -> {effect}, order={order_m} k={k} "
               f"n={len(x)}", err=True)
    click.echo("# note: this estimator is sensitive to monotone transforms "
               "of the inputs; the copula route (te) is invariant to them",
               err=True)
    if fmt == "json":
        _write_json(output_path, {
            "cause": cause, "effect": effect, "order_m": order_m, "k": k,
            "entries": [
                {"lag": lag, "cmi_nats": value, "n_effective": n}
                for lag, value, n in entries
            ],
        })
    else:
        _write_rows(output_path, ["lag", "cmi_nats", "n_effective"],
                    [list(entry) for entry in entries])


def _spec_options(fn):
    fn = click.option("--a", default=0.5, show_default=True,
                      help="Effect self-coefficient.")(fn)
    fn = click.option("--b", default=0.5, show_default=True,
                      help="Cause-to-effect coupling.")(fn)
    fn = click.option("--c", default=0.5, show_default=True,
                      help="Cause self-coefficient.")(fn)
    fn = click.option("--sigma-eps", default=1.0, show_default=True,
                      help="Effect innovation stddev.")(fn)
    fn = click.option("--sigma-eta", default=1.0, show_default=True,
                      help="Cause innovation stddev.")(fn)
    return fn


def _make_spec(a, b, c, sigma_eps, sigma_eta, seed=0) -> Var2Spec:
    try:
        return Var2Spec(a=a, b=b, c=c, sigma_eps=sigma_eps,
                        sigma_eta=sigma_eta, seed=seed)
    except CeteError as err:
        raise click.ClickException(f"oracle: {err}")


@main.command()
@_spec_options
@click.option("--n", required=True, type=click.IntRange(min=1),
              help="Number of samples to emit.")
@click.option("--seed", default=0, show_default=True, type=int,
              help="RNG seed.")
@click.option("--burn-in", default=1000, show_default=True,
              type=click.IntRange(min=0),
              help="Initial steps to discard.")
@click.option("--output", "-o", "output_path", default="-",
              show_default=True, help="Output path, or - for stdout.")
def synth(a, b, c, sigma_eps, sigma_eta, n, seed, burn_in, output_path):
    """Simulate the coupled pair and write a CSV with columns X,Y."""
    spec = _make_spec(a, b, c, sigma_eps, sigma_eta, seed)
    xs, ys = simulate_var2(spec, n, burn_in=burn_in)
    stream, should_close = _open_output(output_path)
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["X", "Y"])
        for xv, yv in zip(xs, ys):
            # full precision so downstream estimates match the simulation
            writer.writerow([repr(float(xv)), repr(float(yv))])
    finally:
        if should_close:
            stream.close()
    click.echo(f"# synth n={n} seed={seed} spec=({a},{b},{c},"
               f"{sigma_eps},{sigma_eta})", err=True)


@main.command()
@_spec_options
@click.option("--lag", default=1, show_default=True,
              type=click.IntRange(min=1), help="Cause-to-effect lag.")
@click.option("--order", "-m", "order_m", default=1, show_default=True,
              type=click.IntRange(min=1), help="Markov order.")
@click.option("--format", "fmt", default="csv", show_default=True,
              type=click.Choice(["csv", "json"]), help="Output format.")
@click.option("--output", "-o", "output_path", default="-",
              show_default=True, help="Output path, or - for stdout.")
def oracle(a, b, c, sigma_eps, sigma_eta, lag, order_m, fmt, output_path):
    """Analytic transfer entropy and Granger ratio of the coupled pair."""
    spec = _make_spec(a, b, c, sigma_eps, sigma_eta)
    try:
        te_nats = analytic_var_te(spec, lag=lag, order_m=order_m)
        cov = stationary_covariance(spec).cov
    except CeteError as err:
        raise click.ClickException(f"oracle: {err}")
    gc = 2.0 * te_nats
    if fmt == "json":
        _write_json(output_path, {
            "te_nats": te_nats, "gc": gc,
            "cov": {"yy": cov[0, 0], "yx": cov[0, 1], "xx": cov[1, 1]},
            "lag": lag, "order_m": order_m,
        })
    else:
        _write_rows(output_path,
                    ["te_nats", "gc", "cov_yy", "cov_yx", "cov_xx"],
                    [[te_nats, gc, cov[0, 0], cov[0, 1], cov[1, 1]]])
