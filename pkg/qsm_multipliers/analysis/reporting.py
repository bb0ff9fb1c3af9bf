import csv
import io
from typing import Sequence

from jinja2 import Environment, PackageLoader, StrictUndefined

from qsm_multipliers.models.analysis import CSV_COLUMNS, ConsistencyReport, MetricsReport


def raise_helper(msg: str):
    raise ValueError(msg)


env = Environment(
    loader=PackageLoader("qsm_multipliers.analysis", "templates"),
    undefined=StrictUndefined,
    keep_trailing_newline=True,
)
env.globals["raise"] = raise_helper


def render_metrics_table(reports: Sequence[MetricsReport], grid: str = "") -> str:
    return env.get_template("metrics_table.txt.j2").render(reports=list(reports), grid=grid)


def render_selftest_table(report: ConsistencyReport) -> str:
    return env.get_template("selftest_table.txt.j2").render(report=report)


def metrics_csv(reports: Sequence[MetricsReport]) -> str:
    """Fixed column order, then the union of echoed parameters in first-seen order."""
    param_columns: list[str] = []
    for r in reports:
        for key in r.params:
            if key not in param_columns and key not in CSV_COLUMNS:
                param_columns.append(key)

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS + param_columns)
    for r in reports:
        row = r.model_dump()
        values = [row[c] if row[c] is not None else "" for c in CSV_COLUMNS]
        values += [r.params.get(c, "") for c in param_columns]
        writer.writerow([repr(v) if isinstance(v, float) else v for v in values])
    return buffer.getvalue()
