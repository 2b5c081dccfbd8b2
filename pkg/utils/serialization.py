"""
Module files: JSON with sorted keys, two-space indentation, scalars written as
canonical strings and a trailing newline, so that saving is byte stable.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Mapping

from models.errors import FIModuleError, ParseError
from models.fimodule import TruncatedFIModule, ensure_valid
from models.scalars import FieldSpec, Matrix

logger = logging.getLogger(__name__)


def matrix_to_json(matrix: Matrix) -> list[list[str]]:
    return matrix.to_text()


def matrix_from_json(field: FieldSpec, payload: Any, rows: int, cols: int, path: str) -> Matrix:
    if not isinstance(payload, list) or len(payload) != rows:
        raise ParseError(f"{path}: expected {rows} rows")
    parsed = []
    for i, row in enumerate(payload):
        if not isinstance(row, list) or len(row) != cols:
            raise ParseError(f"{path}[{i}]: expected {cols} entries")
        try:
            parsed.append([field.parse_scalar(str(x)) for x in row])
        except (ValueError, TypeError) as exc:
            raise ParseError(f"{path}[{i}]: {exc}") from exc
    return Matrix(field, rows, cols, tuple(tuple(r) for r in parsed))


def module_to_json(V: TruncatedFIModule) -> dict:
    payload = {
        "field": V.field.to_json(),
        "trunc": V.trunc,
        "dims": list(V.dims),
        "transpositions": {
            str(n): [matrix_to_json(t) for t in V.transpositions[n]] for n in range(2, V.trunc + 1)
        },
        "inclusions": [matrix_to_json(i) for i in V.inclusions],
    }
    if V.meta:
        payload["meta"] = dict(V.meta)
    return payload


def _require(payload: Mapping, key: str):
    if key not in payload:
        raise ParseError(f"missing field {key!r}")
    return payload[key]


def module_from_json(payload: Any) -> TruncatedFIModule:
    if not isinstance(payload, dict):
        raise ParseError("top level must be an object")
    try:
        field = FieldSpec.from_json(_require(payload, "field"))
    except (ValueError, KeyError, AttributeError) as exc:
        raise ParseError(f"field: {exc}") from exc
    trunc = _require(payload, "trunc")
    dims = _require(payload, "dims")
    if not isinstance(trunc, int) or trunc < 0:
        raise ParseError("trunc: expected a non-negative integer")
    if not isinstance(dims, list) or len(dims) != trunc + 1 or not all(isinstance(d, int) and d >= 0 for d in dims):
        raise ParseError(f"dims: expected {trunc + 1} non-negative integers")

    raw_t = payload.get("transpositions", {})
    if not isinstance(raw_t, dict):
        raise ParseError("transpositions: expected an object keyed by degree")
    transpositions = []
    for n in range(trunc + 1):
        if n < 2:
            transpositions.append(())
            continue
        table = raw_t.get(str(n))
        if not isinstance(table, list) or len(table) != n - 1:
            raise ParseError(f"transpositions.{n}: expected {n - 1} matrices")
        transpositions.append(
            tuple(
                matrix_from_json(field, m, dims[n], dims[n], f"transpositions.{n}[{i}]")
                for i, m in enumerate(table)
            )
        )

    raw_i = _require(payload, "inclusions")
    if not isinstance(raw_i, list) or len(raw_i) != trunc:
        raise ParseError(f"inclusions: expected {trunc} matrices")
    inclusions = tuple(
        matrix_from_json(field, m, dims[n + 1], dims[n], f"inclusions[{n}]") for n, m in enumerate(raw_i)
    )
    meta = payload.get("meta", {})
    try:
        return TruncatedFIModule(field, trunc, tuple(dims), tuple(transpositions), inclusions, meta=dict(meta))
    except FIModuleError as exc:
        raise ParseError(str(exc)) from exc


def dumps(V: TruncatedFIModule) -> str:
    return json.dumps(module_to_json(V), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str, check: bool = True) -> TruncatedFIModule:
    """Parses a module file; with `check` the FI relations must hold."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    V = module_from_json(payload)
    return ensure_valid(V) if check else V


def save_module(V: TruncatedFIModule, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(dumps(V), encoding="utf-8")
    logger.debug("wrote %s (dims %s)", path, list(V.dims))
    return path


def load_module(path: str | Path, check: bool = True) -> TruncatedFIModule:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    return loads(text, check)
