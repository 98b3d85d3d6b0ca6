import unittest

import numpy as np

from zimsnet.errors import ArgumentError
from zimsnet.model.config import PriorConfig


class TestPriorConfig(unittest.TestCase):
    def test_defaults(self) -> None:
        cfg = PriorConfig(rank=3, n_regimes=2)
        self.assertEqual(cfg.a_tau, 3.0)
        np.testing.assert_array_equal(cfg.a_lambda, [3.0, 3.0])
        np.testing.assert_array_equal(cfg.c, [[4.0, 1.0], [1.0, 4.0]])

    def test_per_regime_vectors(self) -> None:
        cfg = PriorConfig(rank=1, n_regimes=3, a_rho=[1.0, 2.0, 3.0])
        np.testing.assert_array_equal(cfg.a_rho, [1.0, 2.0, 3.0])
        with self.assertRaises(ArgumentError):
            PriorConfig(rank=1, n_regimes=3, a_rho=[1.0, 2.0])

    def test_rejects_non_positive(self) -> None:
        with self.assertRaises(ArgumentError):
            PriorConfig(rank=0, n_regimes=2)
        with self.assertRaises(ArgumentError):
            PriorConfig(rank=1, n_regimes=2, b_tau=0.0)
        with self.assertRaises(ArgumentError):
            PriorConfig(rank=1, n_regimes=2, c=[[1.0, 0.0], [1.0, 1.0]])
        with self.assertRaises(ArgumentError):
            PriorConfig(rank=1, n_regimes=2, c=np.ones((3, 3)))

    def test_mapping_round_trip(self) -> None:
        cfg = PriorConfig(rank=2, n_regimes=2, alpha=0.5, b_lambda=[1.0, 4.0])
        back = PriorConfig.from_mapping(cfg.to_dict())
        self.assertEqual(back.to_dict(), cfg.to_dict())

    def test_from_mapping_ignores_none(self) -> None:
        cfg = PriorConfig.from_mapping({"rank": 1, "n_regimes": 2, "alpha": None})
        self.assertEqual(cfg.alpha, 1.0)


if __name__ == "__main__":
    unittest.main()
