"""
TensorDocument codec.
Documents are indented JSON with one coefficient per line; floats are written
with repr, the shortest decimal that reads back to the same double.
"""
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import structlog

from config.cli import SCHEMA_VERSION
from geometry.errors import DocumentError, NonFiniteError
from geometry.tensors import Christoffel

logger = structlog.get_logger()


@dataclass
class TensorDocument:
    m: int
    coeffs: list[float]
    metadata: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    @classmethod
    def from_christoffel(cls, gamma: Christoffel, metadata: Optional[dict] = None) -> "TensorDocument":
        return cls(m=gamma.m, coeffs=gamma.flat(), metadata=dict(metadata or {}))

    def to_christoffel(self) -> Christoffel:
        return Christoffel.from_flat(self.m, self.coeffs)


def emit(doc: TensorDocument) -> str:
    """Serialize *doc*; non-finite coefficients are rejected."""
    if not all(math.isfinite(c) for c in doc.coeffs):
        raise NonFiniteError("document coefficients must be finite")
    payload = {
        "schema_version": doc.schema_version,
        "m": doc.m,
        "coeffs": [float(c) for c in doc.coeffs],
        "metadata": doc.metadata,
    }
    return json.dumps(payload, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def _line_of(text: str, key: str) -> int:
    """1-based line where "key" first appears, or 1."""
    needle = f'"{key}"'
    for number, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return number
    return 1


def _field_error(text: str, key: str, message: str) -> DocumentError:
    return DocumentError(f"line {_line_of(text, key)}: field '{key}': {message}")


def parse(text: str) -> TensorDocument:
    """Parse and validate a document; errors carry line and field diagnostics."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(payload, dict):
        raise DocumentError("line 1: document must be a JSON object")

    version = payload.get("schema_version")
    if version != SCHEMA_VERSION:
        raise _field_error(text, "schema_version", f"expected {SCHEMA_VERSION!r}, found {version!r}")

    m = payload.get("m")
    if not isinstance(m, int) or isinstance(m, bool) or m < 2:
        raise _field_error(text, "m", f"expected an integer ≥ 2, found {m!r}")

    coeffs = payload.get("coeffs")
    if not isinstance(coeffs, list):
        raise _field_error(text, "coeffs", "expected a list of numbers")
    if len(coeffs) != m ** 3:
        raise _field_error(text, "coeffs", f"expected {m ** 3} entries for m={m}, found {len(coeffs)}")
    for index, value in enumerate(coeffs):
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise _field_error(text, "coeffs", f"entry {index} is not a number: {value!r}")
        if not math.isfinite(value):
            raise NonFiniteError(f"field 'coeffs': entry {index} is not finite")

    metadata = payload.get("metadata", {})
    if not isinstance(metadata, dict):
        raise _field_error(text, "metadata", "expected an object")

    return TensorDocument(m=m, coeffs=[float(c) for c in coeffs], metadata=metadata)


def read_document(path: str) -> TensorDocument:
    """Read from *path*, or stdin when path is '-'."""
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise DocumentError(f"cannot read {path}: {e.strerror}") from None
    return parse(text)


def write_document(doc: TensorDocument, path: str) -> None:
    """Write to *path*, or stdout when path is '-'."""
    text = emit(doc)
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    logger.info("document_written", path=path, m=doc.m)
