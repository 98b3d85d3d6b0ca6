"""Run manifest, written atomically at the end of a run."""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Optional, Union

from zimsnet.errors import ParseError

PathLike = Union[str, Path]


@dataclass(slots=True)
class RunManifest:
    """
    Everything needed to reproduce and audit a run.

    prior and chain echo the configuration; re-running with them reproduces
    the draw file bit for bit.
    """

    run_id: str
    command: str
    version: str
    seed: int
    prior: dict[str, Any]
    chain: dict[str, Any]
    dims: dict[str, int]
    started_at: str
    finished_at: str
    block_seconds: dict[str, float] = field(default_factory=dict)
    hmc_acceptance: Optional[float] = None
    hmc_step: Optional[float] = None
    n_draws: int = 0
    relabel_count: int = 0
    divergences: int = 0
    files: dict[str, str] = field(default_factory=dict)
    gamma_legend: Optional[list[list[int]]] = None

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RunManifest:
        names = cls.__dataclass_fields__.keys()
        return cls(**{k: v for k, v in data.items() if k in names})


def write_json_atomic(data: Any, path: PathLike) -> Path:
    """Write JSON to a temp file in the target directory, then rename over the target."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=2, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def write_manifest(manifest: RunManifest, path: PathLike) -> Path:
    return write_json_atomic(manifest.to_dict(), path)


def read_manifest(path: PathLike) -> RunManifest:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
        return RunManifest.from_dict(data)
    except (OSError, ValueError, TypeError) as exc:
        raise ParseError(f"cannot read manifest: {path}", details={"path": str(path)}, cause=exc) from exc
