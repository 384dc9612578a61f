"""JSON matrix interchange and run-report emission.

Matrix files carry explicit re/im arrays (row-major, rectangular, finite);
files of kind "functional" must be Hermitian within the gate and PSD after
clipping, otherwise the parser rejects them.  Reports serialize with sorted
keys and round-trip-exact decimal floats, so identical runs yield identical
bytes; infinities appear only as the string "inf".
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .algebra import AlgebraElement, BlockAlgebra
from .config import EIGENSOLVER_ID, LOG_BASE, PRNG_ID
from .errors import DomainError, FileFormatError, ShapeError
from .functionals import PositiveFunctional
from .reports import _py

KINDS = ("element", "functional")


@dataclass(frozen=True)
class MatrixFile:
    element: AlgebraElement
    kind: str

    @property
    def algebra(self) -> BlockAlgebra:
        return self.element.algebra

    def functional(self, eps_rel: float | None = None) -> PositiveFunctional:
        if self.kind != "functional":
            raise FileFormatError(
                f"expected a functional file, got kind={self.kind!r}")
        try:
            return PositiveFunctional(self.element, eps_rel=eps_rel)
        except DomainError as exc:
            raise FileFormatError(f"invalid functional payload: {exc}") \
                from exc


def _reject_constant(token: str):
    raise FileFormatError(f"non-finite literal {token!r} not allowed")


def _real_grid(raw, n: int, label: str) -> np.ndarray:
    if not isinstance(raw, list) or len(raw) != n:
        raise FileFormatError(f"{label} must be a list of {n} rows")
    grid = []
    for row in raw:
        if not isinstance(row, list) or len(row) != n:
            raise FileFormatError(f"{label} rows must have length {n}")
        for v in row:
            if not isinstance(v, (int, float)) or isinstance(v, bool) \
                    or not math.isfinite(v):
                raise FileFormatError(f"{label} entries must be finite reals")
        grid.append([float(v) for v in row])
    return np.array(grid, dtype=float)


def parse_matrix_document(doc) -> MatrixFile:
    """Validate and decode one matrix-file JSON document."""
    if not isinstance(doc, dict):
        raise FileFormatError("document must be a JSON object")
    try:
        dims = doc["algebra"]["blocks"]
        raw_blocks = doc["matrix"]["blocks"]
        kind = doc["kind"]
    except (KeyError, TypeError) as exc:
        raise FileFormatError(f"missing field: {exc}") from exc
    if kind not in KINDS:
        raise FileFormatError(f"kind must be one of {KINDS}, got {kind!r}")
    if (not isinstance(dims, list) or not dims
            or any(not isinstance(n, int) or isinstance(n, bool) or n < 1
                   for n in dims)):
        raise FileFormatError("algebra.blocks must be positive integers")
    algebra = BlockAlgebra(tuple(dims))
    if not isinstance(raw_blocks, list) or len(raw_blocks) != len(dims):
        raise FileFormatError(
            f"matrix.blocks must list {len(dims)} blocks")
    blocks = []
    for i, (raw, n) in enumerate(zip(raw_blocks, dims)):
        if not isinstance(raw, dict):
            raise FileFormatError(f"block {i} must be an object")
        re = _real_grid(raw.get("re"), n, f"block {i} re")
        im = _real_grid(raw.get("im"), n, f"block {i} im")
        blocks.append(re + 1j * im)
    element = AlgebraElement(algebra, blocks)
    mf = MatrixFile(element, kind)
    if kind == "functional":
        mf.functional()  # validates Hermitian gate + PSD clipping
    return mf


def loads_matrix(text: str) -> MatrixFile:
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"invalid JSON: {exc}") from exc
    return parse_matrix_document(doc)


def load_matrix_file(path) -> MatrixFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from exc
    return loads_matrix(text)


def matrix_document(x: AlgebraElement, kind: str = "element") -> dict:
    if kind not in KINDS:
        raise FileFormatError(f"kind must be one of {KINDS}, got {kind!r}")
    return {
        "algebra": {"blocks": list(x.algebra.block_dims)},
        "matrix": {"blocks": [
            {"re": [[float(v) for v in row] for row in b.real],
             "im": [[float(v) for v in row] for row in b.imag]}
            for b in x.blocks]},
        "kind": kind,
    }


def dumps_matrix(x: AlgebraElement, kind: str = "element") -> str:
    return json.dumps(matrix_document(x, kind), sort_keys=True,
                      allow_nan=False, indent=2) + "\n"


def save_matrix_file(path, x: AlgebraElement, kind: str = "element"):
    Path(path).write_text(dumps_matrix(x, kind), encoding="utf-8")


def load_functional(path, eps_rel: float | None = None) -> PositiveFunctional:
    return load_matrix_file(path).functional(eps_rel)


def load_element(path) -> AlgebraElement:
    return load_matrix_file(path).element


# -- run reports --------------------------------------------------------------


def build_run_report(config: dict, results, residuals: dict,
                     status: str) -> dict:
    """Assemble the stable report envelope around a command's outputs."""
    if status not in ("ok", "fail", "error"):
        raise DomainError(f"bad status {status!r}")
    echo = {"log_base": LOG_BASE, "eigensolver": EIGENSOLVER_ID,
            "prng": PRNG_ID}
    echo.update(config)
    return {
        "tool_version": f"nclp {__version__}",
        "config": _py(echo),
        "results": _py(results),
        "residuals": _py(residuals),
        "status": status,
    }


def dumps_report(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, allow_nan=False, indent=2) + "\n"
