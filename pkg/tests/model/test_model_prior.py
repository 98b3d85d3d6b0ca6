import math
import unittest

import numpy as np
from scipy import stats

from zimsnet.model.config import PriorConfig
from zimsnet.model.prior import log_prior, log_prior_blocks
from zimsnet.model.state import RegimeParams, ShrinkageState
from zimsnet.tensor import ParafacMarginals


def _state(R: int = 2, L: int = 2):
    rng = np.random.default_rng(1)
    dims = (2, 2, 1, 2)
    params = RegimeParams(
        marginals=[ParafacMarginals([rng.normal(size=(n, R)) for n in dims]) for _ in range(L)],
        rho=np.linspace(0.8, 0.2, L),
        xi=np.full((L, L), 1.0 / L),
    )
    shrink = ShrinkageState(
        tau=1.5,
        psi=np.arange(1.0, R + 1.0),
        w=rng.gamma(2.0, 1.0, size=(4, R, L)),
        lam=np.full(L, 1.2),
    )
    return params, shrink, PriorConfig(rank=R, n_regimes=L)


class TestLogPrior(unittest.TestCase):
    def test_gamma_block_matches_scipy(self) -> None:
        params, shrink, cfg = _state()
        var = shrink.prior_variances()
        ref = 0.0
        for l, m in enumerate(params.marginals):
            for h, f in enumerate(m.factors):
                for r in range(cfg.rank):
                    ref += float(np.sum(stats.norm.logpdf(f[:, r], 0.0, math.sqrt(var[h, r, l]))))
        self.assertAlmostEqual(log_prior_blocks(params, shrink, cfg)["gamma"], ref, places=10)

    def test_w_block_is_exponential(self) -> None:
        params, shrink, cfg = _state()
        ref = 0.0
        for l in range(2):
            rate = shrink.lam[l] ** 2 / 2
            ref += float(np.sum(stats.expon.logpdf(shrink.w[:, :, l], scale=1.0 / rate)))
        self.assertAlmostEqual(log_prior_blocks(params, shrink, cfg)["w"], ref, places=10)

    def test_phi_uses_normalized_psi(self) -> None:
        params, shrink, cfg = _state()
        ref = float(stats.dirichlet.logpdf(shrink.phi, np.full(2, cfg.alpha)))
        self.assertAlmostEqual(log_prior_blocks(params, shrink, cfg)["phi"], ref, places=10)

    def test_rank_one_phi_is_degenerate(self) -> None:
        params, shrink, cfg = _state(R=1)
        self.assertEqual(log_prior_blocks(params, shrink, cfg)["phi"], 0.0)

    def test_total_is_sum_of_blocks(self) -> None:
        params, shrink, cfg = _state()
        blocks = log_prior_blocks(params, shrink, cfg)
        self.assertEqual(set(blocks), {"gamma", "tau", "phi", "w", "lambda", "rho", "xi"})
        self.assertAlmostEqual(log_prior(params, shrink, cfg), sum(blocks.values()))

    def test_out_of_support(self) -> None:
        params, shrink, cfg = _state()
        shrink.tau = -1.0
        self.assertEqual(log_prior(params, shrink, cfg), -math.inf)
        params, shrink, cfg = _state()
        params.rho = np.array([1.0, 0.5])
        self.assertEqual(log_prior_blocks(params, shrink, cfg)["rho"], -math.inf)
        params, shrink, cfg = _state()
        params.xi = np.array([[0.5, 0.6], [0.5, 0.5]])
        self.assertEqual(log_prior_blocks(params, shrink, cfg)["xi"], -math.inf)


if __name__ == "__main__":
    unittest.main()
