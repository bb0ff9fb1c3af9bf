import csv
import io

import pytest

from qsm_multipliers.analysis.reporting import metrics_csv, render_metrics_table, render_selftest_table
from qsm_multipliers.models.analysis import (
    CSV_COLUMNS,
    ConsistencyCheck,
    ConsistencyReport,
    MetricsReport,
)


def _reports():
    return [
        MetricsReport(
            label="naive",
            method="naive",
            rmse_inside=0.125,
            streak_energy=3.5,
            params={"method": "naive", "hbar": 0.04},
        ),
        MetricsReport(
            label="r-reg-s2",
            method="r-reg",
            rmse_inside=0.1,
            streak_energy=1.25,
            streak_energy_chi2=0.5,
            cone_fraction=0.4,
            shell_fraction=0.05,
            params={"method": "r-reg", "hbar": 0.04, "s": 2.0},
        ),
    ]


def test_metrics_table():
    text = render_metrics_table(_reports(), grid="16x16x16")
    assert "Reconstruction metrics (16x16x16)" in text
    assert "r-reg-s2" in text
    assert "not recoverable" in text
    lines = text.splitlines()
    naive_line = next(line for line in lines if line.startswith("naive"))
    assert " - " in naive_line


def test_metrics_table_needs_reports():
    with pytest.raises(ValueError):
        render_metrics_table([])


def test_metrics_csv():
    rows = list(csv.reader(io.StringIO(metrics_csv(_reports()))))
    header = rows[0]
    assert header[: len(CSV_COLUMNS)] == CSV_COLUMNS
    assert header[len(CSV_COLUMNS) :] == ["hbar", "s"]
    naive = dict(zip(header, rows[1]))
    assert naive["rmse_inside"] == "0.125"
    assert naive["streak_energy_chi2"] == ""
    assert naive["s"] == ""
    reg = dict(zip(header, rows[2]))
    assert float(reg["cone_fraction"]) == 0.4
    assert reg["s"] == "2.0"


def test_selftest_table():
    report = ConsistencyReport(
        grid_shape=(8, 8, 8),
        checks=[
            ConsistencyCheck(name="chi1-identity", residual=1e-14, tolerance=1e-10, passed=True),
            ConsistencyCheck(name="split-exactness", residual=1e-3, tolerance=1e-12, passed=False),
        ],
    )
    text = render_selftest_table(report)
    assert "8x8x8" in text
    assert "FAIL" in text
    assert text.rstrip().endswith("FAILED: split-exactness")
    empty = render_selftest_table(ConsistencyReport(grid_shape=(8, 8, 8)))
    assert "no checks selected" in empty
    assert empty.rstrip().endswith("PASSED")
