"""Subcommand implementations. Each returns a process exit code."""

from __future__ import annotations

import argparse
import logging
import os
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from zimsnet.errors import EXIT_NUMERICAL, EXIT_OK, ValidationError
from zimsnet.gibbs import (
    ChainResult,
    coefficient_summary,
    node_summary,
    posterior_summary,
    regime_probabilities,
    run_chain,
)
from zimsnet.model import NetworkPanel, PriorConfig, network_density, total_degree
from zimsnet.pooled import run_pooled_chain
from zimsnet.simulate import geweke_pair, simulate_panel
from zimsnet.storage import (
    DrawLayout,
    RunManifest,
    build_configs,
    load_config,
    merge_settings,
    read_draws,
    read_manifest,
    read_panel,
    write_draws,
    write_manifest,
    write_panel,
    write_truth,
)
from zimsnet.util import new_run_id, to_rfc3339

logger = logging.getLogger(__name__)

OUTPUT_ENV = "ZIMSNET_OUTPUT_DIR"
FLOAT_FORMAT = "%.17g"
DEFAULT_REGIMES = 2
DEFAULT_RANK = 2

CHAIN_FLAGS = ("iterations", "burn_in", "thin", "seed", "hmc_step", "hmc_nleap", "jitter", "threads")


def output_dir(args: argparse.Namespace) -> Path:
    out = Path(args.out or os.environ.get(OUTPUT_ENV) or ".")
    out.mkdir(parents=True, exist_ok=True)
    return out


def _settings(args: argparse.Namespace, **fixed: Any) -> dict[str, Any]:
    overrides = {k: getattr(args, k, None) for k in CHAIN_FLAGS}
    overrides["n_regimes"] = getattr(args, "L", None)
    overrides["rank"] = getattr(args, "R", None)
    if getattr(args, "no_adapt", False):
        overrides["adapt_step"] = False
    overrides.update(fixed)
    merged = merge_settings(load_config(getattr(args, "config", None)), overrides)
    merged.setdefault("n_regimes", DEFAULT_REGIMES)
    merged.setdefault("rank", DEFAULT_RANK)
    merged.setdefault("threads", os.cpu_count() or 1)
    return merged


def _version() -> str:
    from zimsnet import __version__

    return __version__


def cmd_simulate(args: argparse.Namespace) -> int:
    settings = _settings(args)
    prior = PriorConfig.from_mapping(settings)
    dims = (args.I, args.J, args.K, args.T, args.Q)
    panel, truth = simulate_panel(dims, args.L, args.R, prior, int(settings.get("seed", 0)), initial=args.initial)
    out = output_dir(args)
    write_panel(panel, out)
    write_truth(truth, out / "truth.json")
    logger.info("simulated panel %s (density %.3f) into %s", dims, float(panel.x.mean()), out)
    return EXIT_OK


def _write_run(
    args: argparse.Namespace,
    command: str,
    panel: NetworkPanel,
    prior: PriorConfig,
    result: ChainResult,
    layout: DrawLayout | None,
) -> Path:
    out = output_dir(args)
    draws_path = write_draws(result.draws, out / "draws.jsonl")
    manifest = RunManifest(
        run_id=new_run_id(),
        command=command,
        version=_version(),
        seed=result.chain.seed,
        prior=prior.to_dict(),
        chain=result.chain.to_dict(),
        dims={"I": panel.I, "J": panel.J, "K": panel.K, "T": panel.T, "Q": panel.Q},
        started_at=to_rfc3339(result.started_at),
        finished_at=to_rfc3339(result.finished_at),
        block_seconds=result.block_seconds,
        hmc_acceptance=result.hmc_acceptance,
        hmc_step=result.hmc_step,
        n_draws=len(result.draws),
        relabel_count=result.relabel_count,
        divergences=result.divergences,
        files={
            "panel": str(Path(args.panel).resolve()),
            "covariates": str(Path(args.covariates).resolve()),
            "draws": draws_path.name,
        },
        gamma_legend=layout.legend() if layout is not None else None,
    )
    write_manifest(manifest, out / "manifest.json")
    logger.info("wrote %d draws and manifest to %s", len(result.draws), out)
    return out


def cmd_fit(args: argparse.Namespace) -> int:
    panel = read_panel(args.panel, args.covariates)
    prior, chain = build_configs(_settings(args))
    panel.validate()
    result = run_chain(panel, prior, chain)
    layout = DrawLayout(mode_sizes=panel.mode_sizes, rank=prior.rank)
    _write_run(args, "fit", panel, prior, result, layout)
    return EXIT_OK


def cmd_fit_pooled(args: argparse.Namespace) -> int:
    panel = read_panel(args.panel, args.covariates)
    prior, chain = build_configs(_settings(args, rank=1))
    panel.validate()
    result = run_pooled_chain(panel, prior, chain)
    _write_run(args, "fit-pooled", panel, prior, result, None)
    return EXIT_OK


def _csv(frame: pd.DataFrame, path: Path) -> None:
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def cmd_summarize(args: argparse.Namespace) -> int:
    run_dir = Path(args.run)
    manifest = read_manifest(run_dir / "manifest.json")
    pooled = manifest.command == "fit-pooled"
    dims = manifest.dims
    layout = None
    if not pooled:
        layout = DrawLayout(
            mode_sizes=(dims["I"], dims["J"], dims["K"], dims["Q"]),
            rank=int(manifest.prior["rank"]),
        )
    draws = read_draws(run_dir / manifest.files.get("draws", "draws.jsonl"), layout)
    if not draws:
        raise ValidationError("run has no stored draws", details={"run": str(run_dir)})
    out = Path(args.out) if args.out else run_dir
    out.mkdir(parents=True, exist_ok=True)
    L = int(manifest.prior["n_regimes"])

    edge_dims = (dims["I"], dims["J"], dims["K"])
    coefficients = coefficient_summary(draws, edge_dims=edge_dims)
    _csv(coefficients, out / "coefficients.csv")

    probs = regime_probabilities(draws, L)
    frame = pd.DataFrame(probs, columns=[f"p{l}" for l in range(L)])
    frame.insert(0, "t", np.arange(probs.shape[0]))
    _csv(frame, out / "regime_probabilities.csv")

    rho = pd.DataFrame([d.params.rho for d in draws], columns=[f"rho{l}" for l in range(L)])
    rho.insert(0, "iteration", [d.iteration for d in draws])
    _csv(rho, out / "rho_samples.csv")

    panel_path = manifest.files.get("panel")
    cov_path = manifest.files.get("covariates")
    if panel_path and cov_path and Path(panel_path).exists() and Path(cov_path).exists():
        panel = read_panel(panel_path, cov_path)
        degree = pd.DataFrame(
            {"t": np.arange(panel.T), "total_degree": total_degree(panel), "density": network_density(panel)}
        )
        _csv(degree, out / "degree.csv")
        if panel.I == panel.J:
            _csv(node_summary(draws, panel, coefficients), out / "node_summary.csv")
    else:
        logger.warning("input panel not found; skipping degree and node summaries")

    summary = posterior_summary(draws)
    ess = pd.DataFrame(
        [{"parameter": name, **stats} for name, stats in summary.items()],
        columns=["parameter", "mean", "q05", "q95", "ess"],
    )
    _csv(ess, out / "ess.csv")
    logger.info("summaries written to %s", out)
    return EXIT_OK


def cmd_geweke(args: argparse.Namespace) -> int:
    settings = _settings(args)
    prior = PriorConfig.from_mapping(settings)
    dims = (args.I, args.J, args.K, args.T, args.Q)
    result = geweke_pair(
        dims,
        prior,
        args.sweeps,
        int(settings.get("seed", 0)),
        model=args.model,
        hmc_step=float(settings.get("hmc_step", 0.1)),
        hmc_nleap=int(settings.get("hmc_nleap", 10)),
    )
    frame = pd.DataFrame(
        [
            {
                "statistic": s.name,
                "forward_mean": s.forward_mean,
                "forward_se": s.forward_se,
                "gibbs_mean": s.gibbs_mean,
                "gibbs_se": s.gibbs_se,
                "z": s.z,
            }
            for s in result.statistics
        ]
    )
    out = output_dir(args)
    _csv(frame, out / "geweke.csv")
    failures = result.failures(args.threshold)
    for s in failures:
        logger.error("Geweke statistic %s off by %.2f SE", s.name, s.z)
    logger.info("max |z| = %.2f over %d statistics", result.max_abs_z, len(result.statistics))
    return EXIT_NUMERICAL if failures else EXIT_OK
