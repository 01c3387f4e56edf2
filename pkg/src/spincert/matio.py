"""JSON matrix serialization shared by the CLI and the file interfaces.

Format: {"rows": r, "cols": c, "re": [...], "im": [...]} with row-major
entry lists. Real matrices (rotations) are written with an all-zero "im"
and must come back with negligible imaginary part.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import NonFinite, ParseError


def matrix_to_dict(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError("only 2-d matrices are serialized")
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "re": [float(x) for x in m.real.reshape(-1)],
        "im": [float(x) for x in m.imag.reshape(-1)],
    }


def matrix_from_dict(obj: dict) -> np.ndarray:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        re, im = obj["re"], obj["im"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad matrix payload: {exc}") from exc
    if len(re) != rows * cols or len(im) != rows * cols:
        raise ParseError("entry count disagrees with rows*cols")
    values = []
    for x, y in zip(re, im):
        x, y = float(x), float(y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise NonFinite("matrix entries must be finite")
        values.append(complex(x, y))
    return np.array(values, dtype=np.complex128).reshape(rows, cols)


def save_matrix(m: np.ndarray, path: str | Path):
    Path(path).write_text(json.dumps(matrix_to_dict(m)) + "\n", encoding="utf-8")


def load_matrix(path: str | Path) -> np.ndarray:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return matrix_from_dict(obj)


def load_real_matrix(path: str | Path, tol: float = 1e-12) -> np.ndarray:
    m = load_matrix(path)
    if np.max(np.abs(m.imag)) > tol:
        raise ParseError(f"{path}: expected a real matrix")
    return m.real.copy()
