"""Simulation truth as JSON."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

import numpy as np

from zimsnet.errors import ParseError
from zimsnet.model import RegimeParams, ShrinkageState
from zimsnet.pooled import PooledParams
from zimsnet.simulate import SimTruth
from zimsnet.tensor import ParafacMarginals

from .manifest import write_json_atomic

PathLike = Union[str, Path]


def truth_to_dict(truth: SimTruth) -> dict[str, Any]:
    """Marginals as nested lists factors[l][h] of shape (n_h, R); d as a flat list in C order."""
    out: dict[str, Any] = {
        "seed": truth.seed,
        "rho": truth.params.rho.tolist(),
        "xi": truth.params.xi.tolist(),
        "marginals": [[f.tolist() for f in m.factors] for m in truth.params.marginals],
        "s": truth.s.tolist(),
        "d_shape": list(truth.d.shape),
        "d": truth.d.ravel().tolist(),
    }
    if truth.shrink is not None:
        out["shrink"] = {
            "tau": truth.shrink.tau,
            "psi": truth.shrink.psi.tolist(),
            "w": truth.shrink.w.tolist(),
            "lambda": truth.shrink.lam.tolist(),
        }
    if truth.pooled is not None:
        p = truth.pooled
        out["pooled"] = {
            "g": p.g.tolist(),
            "w": p.w.tolist(),
            "tau": p.tau,
            "lambda": p.lam.tolist(),
        }
    return out


def truth_from_dict(data: dict[str, Any]) -> SimTruth:
    params = RegimeParams(
        marginals=[ParafacMarginals(m) for m in data["marginals"]],
        rho=data["rho"],
        xi=data["xi"],
    )
    shrink = None
    if "shrink" in data:
        sh = data["shrink"]
        shrink = ShrinkageState(tau=sh["tau"], psi=sh["psi"], w=sh["w"], lam=sh["lambda"])
    pooled = None
    if "pooled" in data:
        p = data["pooled"]
        pooled = PooledParams(g=p["g"], w=p["w"], tau=p["tau"], lam=p["lambda"], rho=data["rho"], xi=data["xi"])
    d = np.asarray(data["d"], dtype=np.uint8).reshape(data["d_shape"])
    return SimTruth(
        params=params,
        shrink=shrink,
        s=np.asarray(data["s"], dtype=np.int64),
        d=d,
        seed=int(data["seed"]),
        pooled=pooled,
    )


def write_truth(truth: SimTruth, path: PathLike) -> Path:
    return write_json_atomic(truth_to_dict(truth), path)


def read_truth(path: PathLike) -> SimTruth:
    path = Path(path)
    try:
        return truth_from_dict(json.loads(path.read_text(encoding="utf-8")))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"cannot read truth file: {path}", details={"path": str(path)}, cause=exc) from exc
