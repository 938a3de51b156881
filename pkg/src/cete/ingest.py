"""Loading and windowing of the UCI Beijing PM2.5 hourly CSV.

The expected file is comma-separated with header

    No,year,month,day,hour,pm2.5,DEWP,TEMP,PRES,cbwd,Iws,Is,Ir

one row per hour, and the literal ``NA`` marking a missing value. Any CSV
with this exact schema is accepted. Missing values are never imputed; the
window-selection policies below carve out contiguous stretches of complete
records instead.
"""
from __future__ import annotations

import csv
import io
import warnings
from dataclasses import dataclass
from datetime import datetime, timedelta
from pathlib import Path

from .core import SeriesMatrix, validate_matrix
from .errors import (
    CategoricalColumnError,
    MalformedRowError,
    NoCompleteRunError,
    NonMonotonicTimeError,
    SchemaMismatchError,
    UnknownColumnError,
    WindowHasMissingError,
)

__all__ = [
    "PM25_HEADER",
    "Pm25Record",
    "CompleteWindow",
    "ByDateRange",
    "FirstCompleteRun",
    "parse_pm25_csv",
    "select_window",
    "to_series_matrix",
]

PM25_HEADER = ("No", "year", "month", "day", "hour", "pm2.5", "DEWP", "TEMP",
               "PRES", "cbwd", "Iws", "Is", "Ir")

# CSV column name -> record attribute, numeric columns only
_NUMERIC_ATTR = {
    "No": "row_no",
    "year": "year",
    "month": "month",
    "day": "day",
    "hour": "hour",
    "pm2.5": "pm25",
    "DEWP": "dewp",
    "TEMP": "temp",
    "PRES": "pres",
    "Iws": "iws",
    "Is": "is_snow",
    "Ir": "ir_rain",
}


@dataclass(frozen=True)
class Pm25Record:
    """One hourly observation row."""

    row_no: int
    year: int
    month: int
    day: int
    hour: int
    pm25: float | None
    dewp: float | None
    temp: float | None
    pres: float | None
    cbwd: str
    iws: float | None
    is_snow: float | None
    ir_rain: float | None

    def timestamp(self) -> datetime:
        return datetime(self.year, self.month, self.day, self.hour)


@dataclass(frozen=True)
class CompleteWindow:
    """Contiguous index range of records complete in the required columns."""

    start_index: int
    length: int


@dataclass(frozen=True)
class ByDateRange:
    """Select the records whose timestamps fall in [start, end].

    If ``count`` is given and disagrees with the range, the count wins:
    exactly ``count`` records are taken from ``start`` and a warning names
    the actual end timestamp.
    """

    start: datetime
    end: datetime
    count: int | None = None


@dataclass(frozen=True)
class FirstCompleteRun:
    """Select the earliest contiguous run of n complete records."""

    n: int


def _parse_float(token: str, line: int, column: str) -> float | None:
    if token == "NA":
        return None
    try:
        return float(token)
    except ValueError:
        raise MalformedRowError(line, f"column {column}: not a number: {token!r}")


def _parse_int(token: str, line: int, column: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise MalformedRowError(line, f"column {column}: not an integer: {token!r}")


def parse_pm25_csv(source) -> list[Pm25Record]:
    """Parse a PM2.5-schema CSV from a path or a text stream.

    Raises
    ------
    SchemaMismatchError
        If the header row differs from the published schema.
    MalformedRowError
        If a data row cannot be parsed (wrong field count, bad number,
        impossible calendar date, hour or month out of range).
    NonMonotonicTimeError
        If consecutive timestamps do not advance by exactly one hour.
    """
    if isinstance(source, (str, Path)):
        with open(source, newline="") as fh:
            return parse_pm25_csv(fh)
    if isinstance(source, bytes):
        return parse_pm25_csv(io.StringIO(source.decode("utf-8")))

    reader = csv.reader(source)
    try:
        header = tuple(next(reader))
    except StopIteration:
        raise SchemaMismatchError("empty input, no header row")
    if header != PM25_HEADER:
        raise SchemaMismatchError(
            f"header {','.join(header)!r} does not match expected "
            f"{','.join(PM25_HEADER)!r}"
        )

    records: list[Pm25Record] = []
    prev_ts: datetime | None = None
    for line, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(PM25_HEADER):
            raise MalformedRowError(line, f"expected 13 fields, got {len(row)}")
        (no_s, year_s, month_s, day_s, hour_s, pm25_s, dewp_s, temp_s,
         pres_s, cbwd, iws_s, is_s, ir_s) = row
        rec = Pm25Record(
            row_no=_parse_int(no_s, line, "No"),
            year=_parse_int(year_s, line, "year"),
            month=_parse_int(month_s, line, "month"),
            day=_parse_int(day_s, line, "day"),
            hour=_parse_int(hour_s, line, "hour"),
            pm25=_parse_float(pm25_s, line, "pm2.5"),
            dewp=_parse_float(dewp_s, line, "DEWP"),
            temp=_parse_float(temp_s, line, "TEMP"),
            pres=_parse_float(pres_s, line, "PRES"),
            cbwd=cbwd,
            iws=_parse_float(iws_s, line, "Iws"),
            is_snow=_parse_float(is_s, line, "Is"),
            ir_rain=_parse_float(ir_s, line, "Ir"),
        )
        if not 0 <= rec.hour <= 23:
            raise MalformedRowError(line, f"hour {rec.hour} out of range")
        if not 1 <= rec.month <= 12:
            raise MalformedRowError(line, f"month {rec.month} out of range")
        try:
            ts = rec.timestamp()
        except ValueError as err:
            raise MalformedRowError(line, f"invalid date: {err}")
        if prev_ts is not None and ts != prev_ts + timedelta(hours=1):
            raise NonMonotonicTimeError(
                f"line {line}: timestamp {ts} does not follow {prev_ts} by "
                "one hour"
            )
        prev_ts = ts
        records.append(rec)
    return records


def _required_attrs(required_columns) -> list[str]:
    attrs = []
    for name in required_columns:
        if name == "cbwd":
            raise CategoricalColumnError(
                "cbwd is categorical and cannot be required complete as a "
                "numeric analysis column"
            )
        if name not in _NUMERIC_ATTR:
            raise UnknownColumnError(f"unknown column {name!r}")
        attrs.append(_NUMERIC_ATTR[name])
    return attrs


def _is_complete(rec: Pm25Record, attrs: list[str]) -> bool:
    return all(getattr(rec, attr) is not None for attr in attrs)


def select_window(records: list[Pm25Record],
                  policy: ByDateRange | FirstCompleteRun,
                  required_columns=("pm2.5",)) -> CompleteWindow:
    """Resolve a window policy against parsed records.

    ``required_columns`` lists the analysis columns that must be present in
    every selected record (by default just pm2.5, the only column with
    gaps in the canonical file).

    Raises
    ------
    NoCompleteRunError
        If no run long enough exists (FirstCompleteRun) or the date range
        matches no records / runs past the end of the file (ByDateRange).
    WindowHasMissingError
        If a ByDateRange window contains a missing required value.
    """
    attrs = _required_attrs(required_columns)

    if isinstance(policy, FirstCompleteRun):
        if policy.n < 1:
            raise ValueError(f"run length must be >= 1, got {policy.n}")
        run_start = None
        for i, rec in enumerate(records):
            if _is_complete(rec, attrs):
                if run_start is None:
                    run_start = i
                if i - run_start + 1 == policy.n:
                    return CompleteWindow(start_index=run_start, length=policy.n)
            else:
                run_start = None
        raise NoCompleteRunError(
            f"no contiguous run of {policy.n} complete records "
            f"(columns {', '.join(required_columns)})"
        )

    if isinstance(policy, ByDateRange):
        idx = [i for i, rec in enumerate(records)
               if policy.start <= rec.timestamp() <= policy.end]
        if not idx:
            raise NoCompleteRunError(
                f"no records between {policy.start} and {policy.end}"
            )
        start = idx[0]
        length = len(idx)
        if policy.count is not None and policy.count != length:
            if start + policy.count > len(records):
                raise NoCompleteRunError(
                    f"only {len(records) - start} records available from "
                    f"{policy.start}, need {policy.count}"
                )
            length = policy.count
            actual_end = records[start + length - 1].timestamp()
            warnings.warn(
                f"date range [{policy.start}, {policy.end}] disagrees with "
                f"count={policy.count}; count wins, window ends at "
                f"{actual_end}",
                stacklevel=2,
            )
        for i in range(start, start + length):
            if not _is_complete(records[i], attrs):
                raise WindowHasMissingError(
                    f"record at {records[i].timestamp()} is missing a value "
                    f"in one of: {', '.join(required_columns)}"
                )
        return CompleteWindow(start_index=start, length=length)

    raise TypeError(f"unknown window policy {policy!r}")


def to_series_matrix(records: list[Pm25Record], window: CompleteWindow,
                     columns) -> SeriesMatrix:
    """Extract the requested numeric columns over a window as a SeriesMatrix.

    Raises
    ------
    UnknownColumnError / CategoricalColumnError
        For unknown or categorical (cbwd) column names.
    WindowHasMissingError
        If the window turns out to contain a missing requested value.
    """
    attrs = _required_attrs(columns)
    rows = records[window.start_index:window.start_index + window.length]
    data = []
    for rec in rows:
        vals = []
        for name, attr in zip(columns, attrs):
            v = getattr(rec, attr)
            if v is None:
                raise WindowHasMissingError(
                    f"column {name} missing at {rec.timestamp()}"
                )
            vals.append(float(v))
        data.append(vals)
    return validate_matrix(data, labels=tuple(columns))
