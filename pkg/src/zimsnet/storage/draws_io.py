"""Line-delimited JSON draw files."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence, Union

import numpy as np

from zimsnet.errors import ParseError, ZimsnetError
from zimsnet.gibbs import Draw
from zimsnet.model import N_MODES, RegimeParams, ShrinkageState
from zimsnet.pooled import PooledDraw, PooledParams
from zimsnet.tensor import ParafacMarginals

PathLike = Union[str, Path]
AnyDraw = Union[Draw, PooledDraw]


@dataclass(frozen=True, slots=True)
class DrawLayout:
    """Marginal sizes (I, J, K, Q) and rank needed to unflatten gamma."""

    mode_sizes: tuple[int, int, int, int]
    rank: int

    def legend(self) -> list[list[int]]:
        """[h, r, index] for every position of a flattened regime block."""
        return [[h, r, i] for h, n in enumerate(self.mode_sizes) for r in range(self.rank) for i in range(n)]


def flatten_marginals(m: ParafacMarginals) -> list[float]:
    """Concatenate factors[h][:, r] in (h, r, index) order."""
    return np.concatenate([f.T.ravel() for f in m.factors]).tolist()


def unflatten_marginals(values: Sequence[float], layout: DrawLayout) -> ParafacMarginals:
    arr = np.asarray(values, dtype=np.float64)
    R = layout.rank
    factors, pos = [], 0
    for n in layout.mode_sizes:
        factors.append(arr[pos:pos + n * R].reshape(R, n).T)
        pos += n * R
    if pos != arr.size:
        raise ValueError(f"gamma block has {arr.size} values, layout needs {pos}")
    return ParafacMarginals(factors)


def draw_to_record(draw: AnyDraw) -> dict[str, Any]:
    if isinstance(draw, PooledDraw):
        p = draw.params
        return {
            "iteration": draw.iteration,
            "rho": p.rho.tolist(),
            "xi": p.xi.tolist(),
            "tau": p.tau,
            "w": p.w.tolist(),
            "lambda": p.lam.tolist(),
            "g": p.g.tolist(),
            "s": draw.s.tolist(),
        }
    return {
        "iteration": draw.iteration,
        "rho": draw.params.rho.tolist(),
        "xi": draw.params.xi.tolist(),
        "tau": draw.shrink.tau,
        "phi": draw.shrink.phi.tolist(),
        "psi": draw.shrink.psi.tolist(),
        "lambda": draw.shrink.lam.tolist(),
        "w": draw.shrink.w.tolist(),
        "gamma": [flatten_marginals(m) for m in draw.params.marginals],
        "s": draw.s.tolist(),
    }


def record_to_draw(record: dict[str, Any], layout: Optional[DrawLayout]) -> AnyDraw:
    s = np.asarray(record["s"], dtype=np.int64)
    if "g" in record:
        params = PooledParams(
            g=record["g"],
            w=record["w"],
            tau=record["tau"],
            lam=record["lambda"],
            rho=record["rho"],
            xi=record["xi"],
        )
        return PooledDraw(iteration=int(record["iteration"]), params=params, s=s)
    if layout is None:
        raise ValueError("a draw layout is required to read unrestricted draws")
    params = RegimeParams(
        marginals=[unflatten_marginals(v, layout) for v in record["gamma"]],
        rho=record["rho"],
        xi=record["xi"],
    )
    w = np.asarray(record["w"], dtype=np.float64)
    if w.shape[0] != N_MODES:
        raise ValueError(f"w must have {N_MODES} modes, got {w.shape}")
    shrink = ShrinkageState(tau=record["tau"], psi=record["psi"], w=w, lam=record["lambda"])
    return Draw(iteration=int(record["iteration"]), params=params, shrink=shrink, s=s)


def write_draws(draws: Iterable[AnyDraw], path: PathLike) -> Path:
    """One JSON object per line; floats keep full precision (repr round-trips)."""
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for d in draws:
            fh.write(json.dumps(draw_to_record(d), separators=(",", ":")))
            fh.write("\n")
    return path


def read_draws(path: PathLike, layout: Optional[DrawLayout] = None) -> list[AnyDraw]:
    """
    Read a draw file.

    Raises:
        ParseError: with line number and byte offset of the first bad line.
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read draw file: {path}", details={"path": str(path)}, cause=exc) from exc

    draws: list[AnyDraw] = []
    offset = 0
    for lineno, line in enumerate(raw.splitlines(keepends=True), start=1):
        text = line.strip()
        if text:
            try:
                draws.append(record_to_draw(json.loads(text), layout))
            except (ValueError, KeyError, TypeError, ZimsnetError) as exc:
                raise ParseError(
                    f"corrupt draw record at line {lineno} (byte {offset})",
                    details={"path": str(path), "line": lineno, "byte_offset": offset},
                    cause=exc,
                ) from exc
        offset += len(line)
    return draws
