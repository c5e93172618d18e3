"""File input/output utilities.

- serializers: JSON, JSON-lines and CSV writers for results
- surface_files: declarative YAML surface models
"""

from .serializers import (
    dumps_json,
    format_float,
    tabulate,
    to_jsonable,
    write_csv,
    write_json,
    write_jsonl,
)
from .surface_files import load_surface_file

__all__ = [
    "dumps_json",
    "format_float",
    "load_surface_file",
    "tabulate",
    "to_jsonable",
    "write_csv",
    "write_json",
    "write_jsonl",
]
