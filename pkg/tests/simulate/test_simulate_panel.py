import unittest

import numpy as np

from zimsnet.distributions import RngStream
from zimsnet.errors import ArgumentError
from zimsnet.model import PriorConfig, RegimeParams
from zimsnet.pooled import PooledParams
from zimsnet.simulate.panel import simulate_edges, simulate_panel, standard_covariates
from zimsnet.tensor import ParafacMarginals


def _truth(rho, intercept: float = 0.0) -> RegimeParams:
    L = len(rho)
    return RegimeParams(
        marginals=[
            ParafacMarginals([np.ones((4, 1)), np.ones((3, 1)), np.ones((2, 1)), np.array([[intercept], [0.0]])])
            for _ in range(L)
        ],
        rho=np.asarray(rho, dtype=float),
        xi=np.full((L, L), 1.0 / L),
    )


class TestSimulatePanel(unittest.TestCase):
    def test_full_inflation_gives_empty_panel(self) -> None:
        panel, truth = simulate_panel((4, 3, 2, 10, 2), 1, 1, _truth([1.0], 5.0), 0)
        self.assertEqual(int(panel.x.sum()), 0)
        self.assertTrue(np.all(truth.d == 1))

    def test_no_inflation_and_large_predictor_gives_full_panel(self) -> None:
        panel, truth = simulate_panel((4, 3, 2, 10, 2), 1, 1, _truth([0.0], 40.0), 0)
        self.assertTrue(np.all(panel.x == 1))
        self.assertEqual(int(truth.d.sum()), 0)

    def test_edges_follow_allocations(self) -> None:
        panel, truth = simulate_panel((4, 3, 2, 30, 2), 2, 1, _truth([0.7, 0.2]), 1)
        self.assertFalse(np.any((truth.d == 1) & (panel.x == 1)))
        self.assertEqual(panel.z.shape, (30, 2))
        np.testing.assert_array_equal(panel.z[:, 0], 1.0)

    def test_same_seed_same_panel(self) -> None:
        cfg = PriorConfig(rank=2, n_regimes=2)
        a, ta = simulate_panel((3, 3, 1, 8, 2), 2, 2, cfg, 42)
        b, tb = simulate_panel((3, 3, 1, 8, 2), 2, 2, cfg, 42)
        np.testing.assert_array_equal(a.x, b.x)
        np.testing.assert_array_equal(a.z, b.z)
        np.testing.assert_array_equal(ta.s, tb.s)
        self.assertIsNotNone(ta.shrink)
        c, _ = simulate_panel((3, 3, 1, 8, 2), 2, 2, cfg, 43)
        self.assertFalse(np.array_equal(a.z, c.z))

    def test_pooled_truth(self) -> None:
        pooled = PooledParams(
            g=np.array([[0.5, 0.0], [-0.5, 1.0]]),
            w=np.ones(2),
            tau=1.0,
            lam=np.ones(2),
            rho=np.array([0.5, 0.1]),
            xi=np.full((2, 2), 0.5),
        )
        panel, truth = simulate_panel((4, 3, 2, 6, 2), 2, 1, pooled, 3)
        self.assertIs(truth.pooled, pooled)
        self.assertEqual(truth.params.rank, 1)

    def test_given_covariates_are_used(self) -> None:
        z = np.column_stack([np.ones(5), np.arange(5.0)])
        panel, _ = simulate_panel((4, 3, 2, 5, 2), 1, 1, _truth([0.3]), 0, z=z, initial="uniform")
        np.testing.assert_array_equal(panel.z, z)

    def test_argument_errors(self) -> None:
        with self.assertRaises(ArgumentError):
            simulate_panel((4, 3, 2, 5), 1, 1, _truth([0.3]), 0)
        with self.assertRaises(ArgumentError):
            simulate_panel((4, 3, 2, 5, 2), 2, 1, _truth([0.3]), 0)
        with self.assertRaises(ArgumentError):
            simulate_panel((5, 3, 2, 5, 2), 1, 1, _truth([0.3]), 0)
        with self.assertRaises(ArgumentError):
            simulate_panel((4, 3, 2, 5, 2), 1, 2, PriorConfig(rank=1, n_regimes=1), 0)
        with self.assertRaises(ArgumentError):
            simulate_panel((4, 3, 2, 5, 2), 1, 1, _truth([0.3]), 0, initial="first")

    def test_simulate_edges_with_given_allocations(self) -> None:
        truth = _truth([0.0], 40.0)
        d = np.zeros((4, 3, 2, 3), dtype=np.uint8)
        d[0, 0, 0, :] = 1
        x, d_out = simulate_edges(truth, np.zeros(3, dtype=int), np.ones((3, 2)), (4, 3, 2), RngStream(0), d=d)
        np.testing.assert_array_equal(d_out, d)
        self.assertTrue(np.all(x[0, 0, 0] == 0))
        self.assertEqual(int(x.sum()), x.size - 3)

    def test_standard_covariates(self) -> None:
        z = standard_covariates(4, 1, RngStream(0))
        np.testing.assert_array_equal(z, np.ones((4, 1)))


if __name__ == "__main__":
    unittest.main()
