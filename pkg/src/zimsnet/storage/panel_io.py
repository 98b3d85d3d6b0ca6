"""Panel (sparse edge list) and covariate files."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from zimsnet.errors import ParseError, ValidationError
from zimsnet.model import NetworkPanel
from zimsnet.model.panel import validate_covariates

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

SHAPE_PREFIX = "# shape"
EDGE_COLUMNS = ["t", "i", "j", "k"]
FLOAT_FORMAT = "%.17g"


def write_panel_file(x: np.ndarray, path: PathLike) -> Path:
    """First line '# shape I J K T', then a t,i,j,k row per nonzero entry in time order."""
    path = Path(path)
    I, J, K, T = x.shape
    coords = np.argwhere(np.moveaxis(x, -1, 0) == 1)  # (t, i, j, k), sorted
    frame = pd.DataFrame(coords.astype(np.int64), columns=EDGE_COLUMNS)
    with path.open("w", encoding="utf-8", newline="") as fh:
        fh.write(f"{SHAPE_PREFIX} {I} {J} {K} {T}\n")
        frame.to_csv(fh, index=False, lineterminator="\n")
    return path


def read_panel_file(path: PathLike) -> np.ndarray:
    """
    Parse a panel file into a uint8 (I, J, K, T) array.

    Raises:
        ParseError: malformed shape line or edge rows.
        ValidationError: an edge index outside the declared shape.
    """
    path = Path(path)
    try:
        with path.open("r", encoding="utf-8") as fh:
            header = fh.readline()
    except OSError as exc:
        raise ParseError(f"cannot read panel file: {path}", details={"path": str(path)}, cause=exc) from exc
    parts = header.split()
    if not header.startswith(SHAPE_PREFIX) or len(parts) != 6:
        raise ParseError("panel file must start with '# shape I J K T'", details={"path": str(path), "line": 1})
    try:
        shape = tuple(int(v) for v in parts[2:])
    except ValueError as exc:
        raise ParseError("non-integer panel shape", details={"path": str(path), "line": 1}, cause=exc) from exc
    if min(shape) < 1:
        raise ValidationError("panel shape must be positive", details={"shape": shape})

    try:
        frame = pd.read_csv(path, skiprows=1, dtype=np.int64)
    except (ValueError, pd.errors.ParserError) as exc:
        raise ParseError("malformed edge rows in panel file", details={"path": str(path)}, cause=exc) from exc
    if list(frame.columns) != EDGE_COLUMNS:
        raise ParseError(
            "panel header must be t,i,j,k",
            details={"path": str(path), "line": 2, "columns": list(frame.columns)},
        )

    I, J, K, T = shape
    coords = frame.to_numpy()
    limits = np.array([T, I, J, K])
    bad = (coords < 0) | (coords >= limits)
    if bad.any():
        row = int(np.flatnonzero(bad.any(axis=1))[0])
        raise ValidationError(
            "edge index outside the declared panel shape",
            details={"path": str(path), "row": row, "edge": coords[row].tolist(), "shape": list(shape)},
        )
    x = np.zeros(shape, dtype=np.uint8)
    x[coords[:, 1], coords[:, 2], coords[:, 3], coords[:, 0]] = 1
    return x


def write_covariates_file(z: np.ndarray, path: PathLike) -> Path:
    path = Path(path)
    frame = pd.DataFrame(z, columns=[f"z{q}" for q in range(z.shape[1])])
    frame.insert(0, "t", np.arange(z.shape[0], dtype=np.int64))
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


def read_covariates_file(path: PathLike) -> np.ndarray:
    """Parse t,z0..z{Q-1} rows into a (T, Q) float array; rows must be t = 0..T-1 in order."""
    path = Path(path)
    try:
        frame = pd.read_csv(path)
    except (OSError, ValueError, pd.errors.ParserError) as exc:
        raise ParseError(f"cannot parse covariate file: {path}", details={"path": str(path)}, cause=exc) from exc
    if not len(frame.columns) or frame.columns[0] != "t" or len(frame.columns) < 2:
        raise ParseError(
            "covariate header must be t,z0,...",
            details={"path": str(path), "columns": list(frame.columns)},
        )
    t = frame["t"].to_numpy()
    if not np.array_equal(t, np.arange(len(frame))):
        raise ValidationError("covariate rows must be t = 0..T-1 in order", details={"path": str(path)})
    try:
        z = frame.drop(columns="t").to_numpy(dtype=np.float64)
    except ValueError as exc:
        raise ParseError("non-numeric covariate value", details={"path": str(path)}, cause=exc) from exc
    return z


def write_panel(panel: NetworkPanel, out_dir: PathLike) -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return write_panel_file(panel.x, out / "panel.csv"), write_covariates_file(panel.z, out / "covariates.csv")


def read_panel(panel_path: PathLike, covariates_path: PathLike) -> NetworkPanel:
    """
    Load and validate a panel with its covariates.

    Raises:
        ValidationError: shape mismatch between the files (both shapes are
            reported) or a non-finite covariate row.
    """
    x = read_panel_file(panel_path)
    z = read_covariates_file(covariates_path)
    if z.shape[0] != x.shape[3]:
        raise ValidationError(
            "panel and covariates disagree on the number of periods",
            details={"panel_shape": list(x.shape), "covariate_shape": list(z.shape)},
        )
    validate_covariates(z, x.shape[3])
    logger.debug("loaded panel %s with %d edges", x.shape, int(x.sum()))
    return NetworkPanel(x, z)
