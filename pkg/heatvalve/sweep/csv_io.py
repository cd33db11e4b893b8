import csv
import math
from pathlib import Path
from typing import List, Sequence, TextIO, Union

from loguru import logger

from heatvalve.exceptions import OutputError
from heatvalve.models.method import parse_method_spec
from heatvalve.models.records import HeatFlowRecord

CSV_HEADER = [
    "phi",
    "omega_q_over_OmegaL",
    "P_L_natural",
    "P_R_natural",
    "P_L_watts",
    "P_R_watts",
    "residual",
    "min_eig",
    "method",
]
FLOAT_FIELDS = {
    "phi": "phi",
    "omega_q_over_OmegaL": "omega_q",
    "P_L_natural": "P_L",
    "P_R_natural": "P_R",
    "P_L_watts": "P_L_SI",
    "P_R_watts": "P_R_SI",
    "residual": "residual",
    "min_eig": "min_eig",
}
FAILED_POINT = "failed flux point"


def format_float(value: float) -> str:
    return f"{value:.17g}"


def _row(record: HeatFlowRecord) -> List[str]:
    values = [format_float(getattr(record, field)) for field in FLOAT_FIELDS.values()]
    return values + [record.method.label()]


def write_records(records: Sequence[HeatFlowRecord], stream: TextIO) -> None:
    """Writes one row per record in the given order; failed points appear with NaN currents."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(_row(record) for record in records)


def write_csv(
    records: Sequence[HeatFlowRecord], path: Union[str, Path], overwrite: bool = True
) -> None:
    path = Path(path)
    if path.exists() and not overwrite:
        raise OutputError("file exists and overwriting is disabled", str(path))
    try:
        with path.open("w", encoding="utf-8", newline="") as f:
            write_records(records, f)
    except OSError as e:
        raise OutputError(e.strerror or str(e), str(path)) from e
    logger.info(f"Wrote {len(records)} records to {path}")


def read_csv(path: Union[str, Path]) -> List[HeatFlowRecord]:
    path = Path(path)
    try:
        with path.open("r", encoding="utf-8", newline="") as f:
            reader = csv.DictReader(f)
            if reader.fieldnames != CSV_HEADER:
                raise OutputError(f"unexpected header {reader.fieldnames}", str(path))
            rows = list(reader)
    except OSError as e:
        raise OutputError(e.strerror or str(e), str(path)) from e

    records = []
    for row in rows:
        values = {field: float(row[column]) for column, field in FLOAT_FIELDS.items()}
        records.append(
            HeatFlowRecord(
                **values,
                method=parse_method_spec(row["method"]),
                error=FAILED_POINT if math.isnan(values["P_L"]) else None,
            )
        )
    return records
