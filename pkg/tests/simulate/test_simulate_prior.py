import unittest

import numpy as np

from zimsnet.distributions import RngStream
from zimsnet.errors import ArgumentError
from zimsnet.model import PriorConfig
from zimsnet.simulate.prior import (
    draw_pooled_prior,
    draw_prior_state,
    sample_markov_path,
    stationary_distribution,
)


class TestPriorDraws(unittest.TestCase):
    def test_prior_state_shapes_and_order(self) -> None:
        cfg = PriorConfig(rank=2, n_regimes=3)
        rng = RngStream(0)
        for _ in range(20):
            params, shrink = draw_prior_state((3, 2, 1, 2), cfg, rng)
            self.assertTrue(np.all(np.diff(params.rho) <= 0))
            self.assertEqual(params.marginals[2].dims, (3, 2, 1, 2))
            self.assertEqual(shrink.w.shape, (4, 2, 3))
            self.assertAlmostEqual(float(shrink.psi.sum()), shrink.tau)
            np.testing.assert_allclose(params.xi.sum(axis=1), 1.0)

    def test_unordered_keeps_draw_order(self) -> None:
        cfg = PriorConfig(rank=1, n_regimes=3)
        a, _ = draw_prior_state((2, 2, 1, 1), cfg, RngStream(1), ordered=False)
        b, _ = draw_prior_state((2, 2, 1, 1), cfg, RngStream(1), ordered=True)
        np.testing.assert_array_equal(np.sort(a.rho)[::-1], b.rho)

    def test_tau_prior_mean(self) -> None:
        cfg = PriorConfig(rank=2, n_regimes=1, alpha=1.5, b_tau=2.0)
        rng = RngStream(2)
        taus = [draw_prior_state((1, 1, 1, 1), cfg, rng)[1].tau for _ in range(4000)]
        # Ga(alpha R, b_tau) has mean 1.5
        self.assertAlmostEqual(float(np.mean(taus)), 1.5, delta=0.06)

    def test_mode_sizes_checked(self) -> None:
        with self.assertRaises(ArgumentError):
            draw_prior_state((2, 2, 2), PriorConfig(rank=1, n_regimes=1), RngStream(0))

    def test_pooled_prior(self) -> None:
        cfg = PriorConfig(rank=1, n_regimes=2)
        p = draw_pooled_prior(3, cfg, RngStream(3))
        self.assertEqual(p.g.shape, (2, 3))
        self.assertTrue(p.rho[0] >= p.rho[1])
        self.assertTrue(p.is_positive())


class TestMarkovPath(unittest.TestCase):
    def test_stationary_distribution(self) -> None:
        xi = np.array([[0.9, 0.1], [0.3, 0.7]])
        pi = stationary_distribution(xi)
        np.testing.assert_allclose(pi, [0.75, 0.25])
        np.testing.assert_allclose(pi @ xi, pi)

    def test_occupancy_matches_stationary(self) -> None:
        xi = np.array([[0.8, 0.15, 0.05], [0.1, 0.8, 0.1], [0.2, 0.2, 0.6]])
        pi = stationary_distribution(xi)
        s = sample_markov_path(xi, 60000, RngStream(4), pi)
        occupancy = np.bincount(s, minlength=3) / s.size
        np.testing.assert_allclose(occupancy, pi, atol=0.02)

    def test_degenerate_transitions(self) -> None:
        s = sample_markov_path(np.array([[0.0, 1.0], [1.0, 0.0]]), 6, RngStream(0), np.array([1.0, 0.0]))
        np.testing.assert_array_equal(s, [0, 1, 0, 1, 0, 1])


if __name__ == "__main__":
    unittest.main()
