"""zimsnet command-line entry point."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from zimsnet.errors import EXIT_USAGE, ZimsnetError, exit_code_for

from .commands import cmd_fit, cmd_fit_pooled, cmd_geweke, cmd_simulate, cmd_summarize

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _positive_int(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer: {value}")
    return n


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="TOML file of flat keys; flags override its values")
    p.add_argument("--out", help="output directory (default: $ZIMSNET_OUTPUT_DIR or .)")
    p.add_argument("--seed", type=int)


def _add_dims(p: argparse.ArgumentParser, *, required: bool) -> None:
    defaults = {"I": 3, "J": 3, "K": 1, "T": 10, "Q": 2}
    for name in ("I", "J", "K", "T", "Q"):
        kw = {"required": True} if required else {"default": defaults[name]}
        p.add_argument(f"--{name}", type=_positive_int, **kw)


def _add_model(p: argparse.ArgumentParser, *, required: bool, rank: bool = True) -> None:
    kw = {"required": True} if required else {"default": None}
    p.add_argument("--L", type=_positive_int, help="number of regimes", **kw)
    if rank:
        p.add_argument("--R", type=_positive_int, help="PARAFAC rank", **kw)


def _add_chain(p: argparse.ArgumentParser) -> None:
    p.add_argument("--panel", required=True, help="panel edge-list file")
    p.add_argument("--covariates", required=True, help="covariate file")
    p.add_argument("--iterations", type=_positive_int)
    p.add_argument("--burn-in", dest="burn_in", type=int)
    p.add_argument("--thin", type=_positive_int)
    p.add_argument("--hmc-step", dest="hmc_step", type=float)
    p.add_argument("--hmc-nleap", dest="hmc_nleap", type=_positive_int)
    p.add_argument("--jitter", type=float)
    p.add_argument("--threads", type=_positive_int, help="worker threads (config value, then CPU count)")
    p.add_argument("--no-adapt", dest="no_adapt", action="store_true", help="keep the HMC step fixed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zimsnet",
        description="Bayesian zero-inflated Markov-switching tensor logit for binary network panels.",
    )
    parser.add_argument("--log-level", default="INFO", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="simulate a panel with known truth")
    _add_dims(p, required=True)
    _add_model(p, required=True)
    _add_common(p)
    p.add_argument("--initial", choices=["stationary", "uniform"], default="stationary")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("fit", help="run the unrestricted sampler")
    _add_model(p, required=False)
    _add_chain(p)
    _add_common(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("fit-pooled", help="run the pooled-model sampler")
    _add_model(p, required=False, rank=False)
    _add_chain(p)
    _add_common(p)
    p.set_defaults(func=cmd_fit_pooled)

    p = sub.add_parser("summarize", help="write plot-ready summaries of a run")
    p.add_argument("--run", required=True, help="directory holding manifest.json and draws")
    p.add_argument("--out", help="output directory (default: the run directory)")
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("geweke", help="joint-distribution check of a sampler")
    _add_dims(p, required=False)
    _add_model(p, required=False)
    _add_common(p)
    p.add_argument("--sweeps", type=_positive_int, default=2000)
    p.add_argument("--model", choices=["unrestricted", "pooled"], default="unrestricted")
    p.add_argument("--threshold", type=float, default=3.0)
    p.set_defaults(func=cmd_geweke)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=getattr(logging, args.log_level), format=LOG_FORMAT, stream=sys.stderr)
    try:
        return int(args.func(args))
    except ZimsnetError as exc:
        logger.error("%s: %s %s", type(exc).__name__, exc, exc.details or "")
        return exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())
