"""Public file-format exports for zimsnet."""

from __future__ import annotations

from .config_io import build_configs, load_config, merge_settings
from .draws_io import (
    DrawLayout,
    draw_to_record,
    flatten_marginals,
    read_draws,
    record_to_draw,
    unflatten_marginals,
    write_draws,
)
from .manifest import RunManifest, read_manifest, write_json_atomic, write_manifest
from .panel_io import (
    read_covariates_file,
    read_panel,
    read_panel_file,
    write_covariates_file,
    write_panel,
    write_panel_file,
)
from .truth_io import read_truth, truth_from_dict, truth_to_dict, write_truth

__all__ = [
    "load_config",
    "merge_settings",
    "build_configs",
    "DrawLayout",
    "flatten_marginals",
    "unflatten_marginals",
    "draw_to_record",
    "record_to_draw",
    "write_draws",
    "read_draws",
    "RunManifest",
    "write_json_atomic",
    "write_manifest",
    "read_manifest",
    "write_panel_file",
    "read_panel_file",
    "write_covariates_file",
    "read_covariates_file",
    "write_panel",
    "read_panel",
    "truth_to_dict",
    "truth_from_dict",
    "write_truth",
    "read_truth",
]
