"""Shared fixtures: canonical dataset discovery and synthetic CSV builders."""
from __future__ import annotations

import os
from datetime import datetime, timedelta
from pathlib import Path

import numpy as np
import pytest

CANONICAL_NAME = "PRSA_data_2010.1.1-2014.12.31.csv"
PM25_HEADER_LINE = "No,year,month,day,hour,pm2.5,DEWP,TEMP,PRES,cbwd,Iws,Is,Ir"

_CBWD = ("NW", "NE", "SE", "cv")


def _candidate_paths() -> list[Path]:
    paths = []
    env = os.environ.get("CETE_PM25_CSV")
    if env:
        paths.append(Path(env))
    root = Path(__file__).resolve().parent.parent
    paths.append(root / "data" / CANONICAL_NAME)
    paths.append(root / CANONICAL_NAME)
    return paths


@pytest.fixture(scope="session")
def pm25_path() -> Path:
    """Path to the canonical hourly PM2.5 CSV, or skip with instructions."""
    for path in _candidate_paths():
        if path.is_file():
            return path
    pytest.skip(
        f"canonical hourly PM2.5 dataset not found; download "
        f"'Beijing PM2.5 Data' from the UCI Machine Learning Repository and "
        f"place {CANONICAL_NAME} under data/ (or point CETE_PM25_CSV at it)"
    )


@pytest.fixture(scope="session")
def pm25_records(pm25_path):
    from cete import parse_pm25_csv

    return parse_pm25_csv(pm25_path)


def synth_pm25_csv(n: int, missing=(), start: datetime | None = None,
                   missing_temp=()) -> str:
    """Synthetic CSV with the hourly PM2.5 schema.

    ``missing`` lists row indices whose pm2.5 field is NA; ``missing_temp``
    does the same for TEMP. Values are deterministic functions of the row
    index so round-trip tests can predict them exactly.
    """
    ts = start or datetime(2010, 1, 1, 0)
    lines = [PM25_HEADER_LINE]
    for i in range(n):
        pm = "NA" if i in missing else f"{50.0 + 7.0 * ((i * 13) % 11)}"
        temp = "NA" if i in missing_temp else f"{2.0 + 0.25 * (i % 40)}"
        lines.append(
            f"{i + 1},{ts.year},{ts.month},{ts.day},{ts.hour},{pm},"
            f"{-5.0 + 0.5 * (i % 30)},{temp},{1020.0 - 0.125 * (i % 50)},"
            f"{_CBWD[i % 4]},{1.75 + 0.5 * i},{0},{0}"
        )
        ts += timedelta(hours=1)
    return "\n".join(lines) + "\n"


@pytest.fixture
def make_pm25_file(tmp_path):
    """Factory writing a synthetic schema'd CSV and returning its path."""

    def _make(n: int, **kwargs) -> Path:
        path = tmp_path / "hourly.csv"
        path.write_text(synth_pm25_csv(n, **kwargs))
        return path

    return _make


def gaussian_pair(rho: float, n: int, seed: int) -> np.ndarray:
    """n samples of a bivariate standard Gaussian with correlation rho."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, 2))
    y = rho * z[:, 0] + np.sqrt(1.0 - rho * rho) * z[:, 1]
    return np.column_stack([z[:, 0], y])
