"""GibbsSampler: four-block sweep, relabeling and chain orchestration."""

from __future__ import annotations

import logging
from concurrent.futures import Executor, ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Callable, Optional

import numpy as np

from zimsnet.distributions import HmcStep, RngStream, StepSizeAdapter
from zimsnet.errors import SamplerError, ZimsnetError
from zimsnet.model import (
    AugmentedState,
    NetworkPanel,
    PriorConfig,
    RegimeParams,
    ShrinkageState,
    log_emissions,
    regime_predictors,
)
from zimsnet.util import BlockClock, now_utc

from .config import ChainConfig, Draw
from .diagnostics import posterior_summary
from .initialize import initial_state
from .latent import ffbs_states, sample_d, sample_omega, select_path
from .marginals import sample_gamma_marginal
from .relabel import relabel
from .switching import sample_rho, sample_xi
from .variance import sample_lambda, sample_level_variances, sample_tau, sample_w

logger = logging.getLogger(__name__)


@dataclass(slots=True)
class ChainResult:
    """Stored draws plus run diagnostics."""

    draws: list[Any]
    prior: PriorConfig
    chain: ChainConfig
    hmc_acceptance: float
    hmc_step: float
    summary: dict[str, dict[str, float]]
    block_seconds: dict[str, float]
    started_at: datetime
    finished_at: datetime
    relabel_count: int = 0
    divergences: int = 0
    extra: dict[str, Any] = field(default_factory=dict)


class GibbsSampler:
    """
    Gibbs sampler for the zero-inflated Markov-switching PARAFAC logit.

    One sweep runs the blocks latent -> variances -> marginals -> switching
    -> relabel. Each block is a method so variants (the pooled model, test
    mutants) can replace single updates.
    """

    BLOCKS: tuple[str, ...] = ("latent", "variances", "marginals", "switching", "relabel")

    def __init__(
        self,
        panel: NetworkPanel,
        prior: PriorConfig,
        chain: ChainConfig,
        *,
        executor: Optional[Executor] = None,
    ) -> None:
        panel.validate()
        self.panel = panel
        self.prior = prior
        self.chain = chain
        self.executor = executor
        self.rng = RngStream(chain.seed)
        self.adapter = StepSizeAdapter(chain.hmc_step)
        if not chain.adapt_step or chain.burn_in == 0:
            self.adapter.freeze()
        self.clock = BlockClock()
        self.relabel_count = 0
        self._accept_sum = 0.0
        self._accept_n = 0
        self._divergences = 0
        self.init_state(self.rng.spawn(1)[0])

    # -- state -------------------------------------------------------------

    def init_state(self, rng: RngStream) -> None:
        self.params, self.shrink, self.aug = initial_state(self.panel, self.prior, rng)

    def set_state(self, params: RegimeParams, shrink: ShrinkageState, aug: AugmentedState) -> None:
        self.params, self.shrink, self.aug = params, shrink, aug

    def snapshot(self, iteration: int) -> Draw:
        return Draw(iteration=iteration, params=self.params.copy(), shrink=self.shrink.copy(), s=self.aug.s.copy())

    # -- blocks ------------------------------------------------------------

    def predictors(self) -> np.ndarray:
        """Linear predictors under every regime, shape (L, I, J, K, T)."""
        return regime_predictors(self.panel, self.params)

    def update_latent(self, rng: RngStream) -> None:
        eta_all = self.predictors()
        log_em = log_emissions(self.panel, self.params, eta_all)
        s = ffbs_states(self.panel, self.params, rng, log_em=log_em)
        eta = select_path(eta_all, s)
        d = sample_d(self.panel, self.params, s, rng, eta=eta, executor=self.executor)
        omega = sample_omega(self.panel, self.params, s, rng, d=d, eta=eta, executor=self.executor)
        self.aug = AugmentedState(s=s, d=d, omega=omega)

    def draw_tau(self, gamma_sq: np.ndarray, phi: np.ndarray, rng: RngStream) -> float:
        return sample_tau(gamma_sq, self.shrink.w, phi, self.panel.mode_sizes, self.prior, rng)

    def update_variances(self, rng: RngStream) -> None:
        gamma_sq = self.params.gamma_stack()
        sizes = self.panel.mode_sizes
        psi, phi = sample_level_variances(gamma_sq, self.shrink.w, sizes, self.prior, rng)
        tau = self.draw_tau(gamma_sq, phi, rng)
        w = sample_w(gamma_sq, tau, phi, self.shrink.lam, sizes, rng)
        lam, steps = sample_lambda(w, self.shrink.lam, self.prior, self.adapter.step, self.chain.hmc_nleap, rng)
        self.record_hmc(steps)
        self.shrink = ShrinkageState(tau=tau, psi=psi, w=w, lam=lam)

    def update_marginals(self, rng: RngStream) -> None:
        omega_eff = self.aug.effective_omega()
        kappa = self.aug.kappa(self.panel.x)
        for l in range(self.prior.n_regimes):
            for r in range(self.prior.rank):
                for h in range(len(self.panel.mode_sizes)):
                    sample_gamma_marginal(
                        h, r, l, self.panel, self.aug, self.params, self.shrink, rng,
                        jitter=self.chain.jitter, omega_eff=omega_eff, kappa=kappa,
                    )

    def update_switching(self, rng: RngStream) -> None:
        self.params.rho = sample_rho(self.aug.d, self.aug.s, self.prior, rng)
        self.params.xi = sample_xi(self.aug.s, self.prior, rng)

    def update_relabel(self, rng: RngStream) -> None:
        self.params, self.shrink, self.aug, changed = relabel(self.params, self.shrink, self.aug)
        self.relabel_count += int(changed)

    # -- driver ------------------------------------------------------------

    def record_hmc(self, steps: list[HmcStep]) -> None:
        for st in steps:
            self._accept_sum += st.accept_prob
            self._accept_n += 1
            self._divergences += int(st.diverged)
            self.adapter.update(st.accept_prob)

    @property
    def hmc_acceptance(self) -> float:
        return self._accept_sum / self._accept_n if self._accept_n else float("nan")

    def _block(self, name: str) -> Callable[[RngStream], None]:
        return getattr(self, f"update_{name}")

    def sweep(self, iteration: int) -> None:
        """
        Run every block once with a fresh child stream.

        A ZimsnetError raised by a block keeps its type and gains the
        iteration and block in its details. Anything else is wrapped in
        SamplerError.
        """
        rng = self.rng.spawn(1)[0]
        for name in self.BLOCKS:
            with self.clock.measure(name):
                try:
                    self._block(name)(rng)
                except ZimsnetError as exc:
                    exc.details.setdefault("iteration", iteration)
                    exc.details.setdefault("block", name)
                    raise
                except Exception as exc:
                    raise SamplerError(
                        f"block {name!r} failed at iteration {iteration}: {exc}",
                        details={"iteration": iteration, "block": name},
                        cause=exc,
                    ) from exc
        logger.debug("sweep %d done, rho=%s", iteration, np.array2string(self.params.rho, precision=4))

    def run(self) -> ChainResult:
        started = now_utc()
        draws: list[Any] = []
        if self.chain.threads > 1 and self.executor is None:
            with ThreadPoolExecutor(max_workers=self.chain.threads) as pool:
                self.executor = pool
                try:
                    self._loop(draws)
                finally:
                    self.executor = None
        else:
            self._loop(draws)
        finished = now_utc()
        logger.info(
            "chain finished: %d draws, HMC acceptance %.3f, %.1fs",
            len(draws),
            self.hmc_acceptance,
            (finished - started).total_seconds(),
        )
        return ChainResult(
            draws=draws,
            prior=self.prior,
            chain=self.chain,
            hmc_acceptance=self.hmc_acceptance,
            hmc_step=self.adapter.step,
            summary=posterior_summary(draws) if draws else {},
            block_seconds=self.clock.as_dict(),
            started_at=started,
            finished_at=finished,
            relabel_count=self.relabel_count,
            divergences=self._divergences,
        )

    def _loop(self, draws: list[Any]) -> None:
        for it in range(self.chain.iterations):
            self.sweep(it)
            if it + 1 == self.chain.burn_in and not self.adapter.frozen:
                self.adapter.freeze()
                logger.info("burn-in complete, HMC step frozen at %.4g", self.adapter.step)
            if self.chain.is_stored(it):
                draws.append(self.snapshot(it))


def run_chain(
    panel: NetworkPanel,
    prior: PriorConfig,
    chain: ChainConfig,
    *,
    sampler_cls: type[GibbsSampler] = GibbsSampler,
) -> ChainResult:
    """Run the unrestricted sampler and return stored draws with diagnostics."""
    return sampler_cls(panel, prior, chain).run()
