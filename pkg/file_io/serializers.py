"""JSON, JSON-lines and CSV output for chains, PBW elements and reports.

Anything with a ``to_dict()`` method is accepted. Floats are written with
12 significant digits and JSON keys are sorted, so equal results produce
byte-identical output.
"""

import csv
import json
import math
from collections.abc import Iterable, Mapping
from enum import Enum
from fractions import Fraction
from typing import Any, TextIO

FLOAT_DIGITS = 12


def format_float(value: float, digits: int = FLOAT_DIGITS) -> float | str:
    if math.isnan(value) or math.isinf(value):
        return str(value)
    return float(f"{value:.{digits}g}")


def to_jsonable(value: Any, digits: int = FLOAT_DIGITS) -> Any:
    """Recursively convert a result value into JSON-compatible data."""
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict(), digits)
    if isinstance(value, Enum):
        return to_jsonable(value.value, digits)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        return format_float(value, digits)
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, complex):
        return [format_float(value.real, digits), format_float(value.imag, digits)]
    if isinstance(value, Mapping):
        return {str(key): to_jsonable(item, digits) for key, item in value.items()}
    if isinstance(value, Iterable):
        return [to_jsonable(item, digits) for item in value]
    return str(value)


def dumps_json(value: Any, digits: int = FLOAT_DIGITS, indent: int | None = 2) -> str:
    return json.dumps(to_jsonable(value, digits), sort_keys=True, indent=indent, ensure_ascii=False)


def write_json(value: Any, stream: TextIO, digits: int = FLOAT_DIGITS) -> None:
    stream.write(dumps_json(value, digits))
    stream.write("\n")


def write_jsonl(records: Iterable[Any], stream: TextIO, digits: int = FLOAT_DIGITS) -> int:
    """Write one compact JSON object per line; returns the number of lines."""
    count = 0
    for record in records:
        stream.write(dumps_json(record, digits, indent=None))
        stream.write("\n")
        count += 1
    return count


def _cell(value: Any, digits: int) -> Any:
    converted = to_jsonable(value, digits)
    if isinstance(converted, (list, dict)):
        return json.dumps(converted, sort_keys=True, ensure_ascii=False)
    return converted


def write_csv(
    rows: Iterable[Mapping[str, Any]],
    stream: TextIO,
    fieldnames: list[str] | None = None,
    digits: int = FLOAT_DIGITS,
) -> int:
    """
    Write flat rows as CSV with a header line.

    Args:
        rows: Mappings from column name to value; nested values become JSON text
        stream: Output text stream
        fieldnames: Column order; defaults to the keys of the first row

    Returns:
        Number of data rows written
    """
    rows = list(rows)
    if fieldnames is None:
        fieldnames = list(rows[0]) if rows else []
    writer = csv.DictWriter(stream, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _cell(row.get(key), digits) for key in fieldnames})
    return len(rows)


def tabulate(value: Any) -> tuple[list[str], list[dict[str, Any]]]:
    """
    Flatten a result into CSV rows.

    Chains and PBW elements give one row per term, intersection sets one row
    per point, report lists one row per report.
    """
    data = value.to_dict() if hasattr(value, "to_dict") else value
    if isinstance(data, Mapping) and "terms" in data:
        rows = [{"kind": data["kind"], **term} for term in data["terms"]]
        label = "monomial" if data["kind"] == "pbw" else "class"
        return ["kind", label, "coeff"], rows
    if isinstance(data, Mapping) and "points" in data:
        rows = [
            {"alpha": data["alpha"], "beta": data["beta"], **point} for point in data["points"]
        ]
        return ["alpha", "beta", "conjugator", "position", "angle", "sign", "point"], rows
    if isinstance(data, Mapping) and "records" in data:
        rows = [{"beta": data["beta"], **record} for record in data["records"]]
        return ["beta", "alpha", "flavor", "verdict", "zero_up_to", "witness_m"], rows
    if isinstance(data, Mapping):
        return list(data), [dict(data)]
    rows = [item.to_dict() if hasattr(item, "to_dict") else dict(item) for item in data]
    return (list(rows[0]) if rows else []), rows
