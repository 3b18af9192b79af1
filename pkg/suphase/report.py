"""Report envelopes emitted by the command-line front end.

Complex numbers are written as ``[re, im]`` pairs of Python floats; the JSON
encoder uses the shortest repr that round-trips, so values survive a dump and
reload unchanged. Matrices larger than :data:`INLINE_LIMIT` are saved as
``.npy`` next to the report and referenced by file name.
"""
import csv
import io
import json
import logging
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from dataclasses import dataclass, field

from . import __version__
from .algebra.repmatrix import ComplexMatrix

logger = logging.getLogger(__name__)

INLINE_LIMIT = 400

SWEEP_COLUMNS = ["lambda", "dimension", "raw_norm", "normalized_norm", "formula_value",
                 "difference", "fixed_points", "trace_identity_residual"]


@dataclass
class ReportEnvelope:
    command: str
    parameters: Dict[str, Any]
    results: Dict[str, Any]
    residuals: Dict[str, float] = field(default_factory=dict)
    version: str = __version__
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "residuals": self.residuals,
            "version": self.version,
            "timestamp": self.timestamp,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def encode_complex(z: complex) -> List[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def encode_matrix(matrix: Any) -> List[List[List[float]]]:
    """Nested rows of ``[re, im]`` pairs."""
    arr = np.asarray(matrix.entries if isinstance(matrix, ComplexMatrix) else matrix, dtype=complex)
    return [[encode_complex(z) for z in row] for row in arr]


def decode_matrix(rows: Sequence[Sequence[Sequence[float]]]) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)


def encode_fraction(value: Optional[Fraction]) -> Optional[Dict[str, Any]]:
    if value is None:
        return None
    return {"exact": f"{value.numerator}/{value.denominator}", "value": float(value)}


class MatrixSink:
    """Inline small matrices; write large ones to ``<stem>_<name>.npy``."""

    def __init__(self, out: Optional[Path], command: str) -> None:
        self.directory = out.parent if out is not None else Path.cwd()
        self.stem = out.stem if out is not None else f"suphase_{command}"
        self.written = []  # type: List[Path]

    def put(self, name: str, matrix: Any) -> Any:
        arr = np.asarray(matrix.entries if isinstance(matrix, ComplexMatrix) else matrix, dtype=complex)
        if arr.shape[0] <= INLINE_LIMIT:
            return encode_matrix(arr)

        path = self.directory / f"{self.stem}_{name}.npy"
        np.save(path, arr)
        self.written.append(path)
        logger.info("Matrix %s (dimension %d) written to %s", name, arr.shape[0], path)
        return {"file": path.name, "dimension": int(arr.shape[0])}


def rows_to_csv(columns: Sequence[str], rows: Sequence[Dict[str, Any]], trailer: Optional[Dict[str, Any]] = None) -> str:
    """CSV with a header line; ``trailer`` entries follow as ``# key,value`` lines."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(["" if row.get(c) is None else _csv_cell(row[c]) for c in columns])
    for key, value in (trailer or {}).items():
        buffer.write(f"# {key},{'' if value is None else _csv_cell(value)}\n")
    return buffer.getvalue()


def _csv_cell(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, dict) and "value" in value:
        return repr(float(value["value"]))
    return str(value)


def emit(text: str, out: Optional[Path]) -> None:
    """Write the payload to ``out`` or stdout."""
    if out is None:
        print(text.rstrip("\n"))
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text + ("" if text.endswith("\n") else "\n"), encoding="utf-8")
    logger.info("Finish dump file: %s", out)
