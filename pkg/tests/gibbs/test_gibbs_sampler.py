import os
import unittest

import numpy as np

from zimsnet.distributions import RngStream
from zimsnet.errors import NumericalError, SamplerError
from zimsnet.gibbs.config import ChainConfig
from zimsnet.gibbs.diagnostics import regime_probabilities
from zimsnet.gibbs.sampler import GibbsSampler, run_chain
from zimsnet.model import PriorConfig, RegimeParams
from zimsnet.simulate import simulate_panel
from zimsnet.tensor import ParafacMarginals

SLOW = os.environ.get("ZIMSNET_SLOW_TESTS") == "1"


def _panel(seed: int = 0, T: int = 12):
    prior = PriorConfig(rank=1, n_regimes=2)
    return simulate_panel((3, 3, 1, T, 2), 2, 1, prior, seed)


TRUE_RHO = np.array([0.9, 0.3])


def _separated_truth(seed: int) -> RegimeParams:
    """10 x 10 nodes, Q = 3, R = 2; regime 0 sparse with negative intercepts."""
    rng = np.random.default_rng(seed)
    covariate_factors = (
        np.array([[-1.0, -0.5], [0.3, 0.2], [0.0, 0.1]]),
        np.array([[1.0, 0.6], [-0.3, 0.2], [0.2, 0.0]]),
    )
    marginals = [
        ParafacMarginals([np.abs(rng.normal(1.0, 0.15, size=(n, 2))) for n in (10, 10, 1)] + [q.copy()])
        for q in covariate_factors
    ]
    return RegimeParams(marginals=marginals, rho=TRUE_RHO.copy(), xi=np.array([[0.95, 0.05], [0.05, 0.95]]))


def _recovery_run(seed: int):
    """5000 stored draws on a simulated 10 x 10 x 1 x 100 panel; returns (regime probs, rho draws, truth)."""
    panel, sim = simulate_panel((10, 10, 1, 100, 3), 2, 2, _separated_truth(seed), seed)
    chain = ChainConfig(iterations=6000, burn_in=1000, seed=seed + 1)
    result = run_chain(panel, PriorConfig(rank=2, n_regimes=2), chain)
    rho = np.array([d.params.rho for d in result.draws])
    return regime_probabilities(result.draws, 2), rho, sim


class _BrokenSampler(GibbsSampler):
    def update_switching(self, rng: RngStream) -> None:
        raise NumericalError("forced", details={"t": 4})


class _ForeignFailureSampler(GibbsSampler):
    def update_variances(self, rng: RngStream) -> None:
        raise ValueError("bad shape")


class TestGibbsSampler(unittest.TestCase):
    def test_run_stores_thinned_draws(self) -> None:
        panel, _ = _panel()
        prior = PriorConfig(rank=1, n_regimes=2)
        chain = ChainConfig(iterations=20, burn_in=6, thin=2, seed=1)
        result = run_chain(panel, prior, chain)
        self.assertEqual(len(result.draws), 7)
        self.assertEqual([d.iteration for d in result.draws], list(range(7, 20, 2)))
        self.assertEqual(set(result.block_seconds), set(GibbsSampler.BLOCKS))
        self.assertTrue(0.0 <= result.hmc_acceptance <= 1.0)
        self.assertIn("tau", result.summary)
        self.assertLessEqual(result.started_at, result.finished_at)

    def test_every_draw_is_identified(self) -> None:
        panel, _ = _panel(1)
        result = run_chain(panel, PriorConfig(rank=2, n_regimes=2), ChainConfig(iterations=15, burn_in=0, seed=2))
        for d in result.draws:
            self.assertTrue(np.all(np.diff(d.params.rho) <= 0))
            self.assertTrue(d.shrink.is_positive())
            self.assertTrue(set(np.unique(d.s)) <= {0, 1})

    def test_same_seed_is_bit_identical(self) -> None:
        panel, _ = _panel(2)
        prior = PriorConfig(rank=1, n_regimes=2)
        a = run_chain(panel, prior, ChainConfig(iterations=8, burn_in=2, seed=5))
        b = run_chain(panel, prior, ChainConfig(iterations=8, burn_in=2, seed=5))
        for da, db in zip(a.draws, b.draws):
            np.testing.assert_array_equal(da.params.rho, db.params.rho)
            np.testing.assert_array_equal(da.params.marginals[0].factors[3], db.params.marginals[0].factors[3])
            np.testing.assert_array_equal(da.s, db.s)

    def test_thread_count_does_not_change_draws(self) -> None:
        panel, _ = _panel(3)
        prior = PriorConfig(rank=1, n_regimes=2)
        a = run_chain(panel, prior, ChainConfig(iterations=6, burn_in=1, seed=7, threads=1))
        b = run_chain(panel, prior, ChainConfig(iterations=6, burn_in=1, seed=7, threads=3))
        for da, db in zip(a.draws, b.draws):
            self.assertEqual(da.shrink.tau, db.shrink.tau)
            np.testing.assert_array_equal(da.params.xi, db.params.xi)
            np.testing.assert_array_equal(da.params.marginals[1].factors[0], db.params.marginals[1].factors[0])

    def test_block_error_keeps_type_and_gains_location(self) -> None:
        panel, _ = _panel()
        sampler = _BrokenSampler(panel, PriorConfig(rank=1, n_regimes=2), ChainConfig(iterations=3, burn_in=0))
        with self.assertRaises(NumericalError) as ctx:
            sampler.run()
        self.assertEqual(ctx.exception.details, {"t": 4, "iteration": 0, "block": "switching"})

    def test_foreign_block_error_is_wrapped(self) -> None:
        panel, _ = _panel()
        sampler = _ForeignFailureSampler(panel, PriorConfig(rank=1, n_regimes=2), ChainConfig(iterations=3, burn_in=0))
        with self.assertRaises(SamplerError) as ctx:
            sampler.run()
        self.assertEqual(ctx.exception.details, {"iteration": 0, "block": "variances"})
        self.assertIsInstance(ctx.exception.cause, ValueError)

    def test_adapter_frozen_after_burn_in(self) -> None:
        panel, _ = _panel()
        sampler = GibbsSampler(panel, PriorConfig(rank=1, n_regimes=2), ChainConfig(iterations=6, burn_in=3))
        self.assertFalse(sampler.adapter.frozen)
        result = sampler.run()
        self.assertTrue(sampler.adapter.frozen)
        self.assertEqual(result.hmc_step, sampler.adapter.step)

    def test_no_adapt_keeps_step(self) -> None:
        panel, _ = _panel()
        chain = ChainConfig(iterations=4, burn_in=2, hmc_step=0.05, adapt_step=False)
        result = run_chain(panel, PriorConfig(rank=1, n_regimes=2), chain)
        self.assertAlmostEqual(result.hmc_step, 0.05)

    def test_single_regime(self) -> None:
        panel, _ = simulate_panel((3, 2, 1, 6, 1), 1, 1, PriorConfig(rank=1, n_regimes=1), 4)
        result = run_chain(panel, PriorConfig(rank=1, n_regimes=1), ChainConfig(iterations=5, burn_in=1))
        self.assertTrue(all(np.all(d.s == 0) for d in result.draws))

    @unittest.skipUnless(SLOW, "set ZIMSNET_SLOW_TESTS=1")
    def test_recovers_path_and_separates_rho(self) -> None:
        probs, rho, sim = _recovery_run(seed=11)
        accuracy = np.mean(np.argmax(probs, axis=1) == sim.s)
        self.assertGreaterEqual(accuracy, 0.95)
        self.assertGreater(np.quantile(rho[:, 0], 0.025), np.quantile(rho[:, 1], 0.975))

    @unittest.skipUnless(SLOW, "set ZIMSNET_SLOW_TESTS=1")
    def test_rho_interval_coverage_over_replications(self) -> None:
        covered = np.zeros(2, dtype=np.int64)
        for rep in range(20):
            _, rho, _ = _recovery_run(seed=100 + rep)
            lo, hi = np.quantile(rho, [0.05, 0.95], axis=0)
            covered += (lo <= TRUE_RHO) & (TRUE_RHO <= hi)
        self.assertTrue(np.all(covered >= 17), covered)


if __name__ == "__main__":
    unittest.main()
