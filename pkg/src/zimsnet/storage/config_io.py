"""Flat-key TOML run configuration."""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Any, Mapping, Optional, Union

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from zimsnet.errors import ParseError, ValidationError
from zimsnet.gibbs import ChainConfig
from zimsnet.model import PriorConfig

PathLike = Union[str, Path]

PRIOR_KEYS = frozenset(PriorConfig.__dataclass_fields__)
CHAIN_KEYS = frozenset(ChainConfig.__dataclass_fields__)
KNOWN_KEYS = PRIOR_KEYS | CHAIN_KEYS


def load_config(path: Optional[PathLike]) -> dict[str, Any]:
    """
    Read a TOML file of flat keys. None gives an empty mapping.

    Raises:
        ParseError: unreadable or invalid TOML.
        ValidationError: nested tables or unknown keys.
    """
    if path is None:
        return {}
    path = Path(path)
    try:
        with path.open("rb") as fh:
            data = tomllib.load(fh)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise ParseError(f"cannot read config file: {path}", details={"path": str(path)}, cause=exc) from exc
    unknown = sorted(k for k in data if k not in KNOWN_KEYS)
    if unknown:
        raise ValidationError("unknown configuration keys", details={"path": str(path), "keys": unknown})
    nested = sorted(k for k, v in data.items() if isinstance(v, dict))
    if nested:
        raise ValidationError("configuration keys must be flat", details={"path": str(path), "keys": nested})
    return dict(data)


def merge_settings(file_values: Mapping[str, Any], overrides: Mapping[str, Any]) -> dict[str, Any]:
    """Flags win over file values; None means 'not given'."""
    merged = dict(file_values)
    merged.update({k: v for k, v in overrides.items() if v is not None})
    return merged


def build_configs(settings: Mapping[str, Any]) -> tuple[PriorConfig, ChainConfig]:
    prior = PriorConfig.from_mapping({k: v for k, v in settings.items() if k in PRIOR_KEYS})
    chain = ChainConfig.from_mapping({k: v for k, v in settings.items() if k in CHAIN_KEYS})
    return prior, chain
