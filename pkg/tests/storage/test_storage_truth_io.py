import tempfile
import unittest
from pathlib import Path

import numpy as np

from zimsnet.errors import ParseError
from zimsnet.model import PriorConfig
from zimsnet.pooled import PooledParams
from zimsnet.simulate import simulate_panel
from zimsnet.storage import read_truth, truth_from_dict, truth_to_dict, write_truth


class TestTruthFiles(unittest.TestCase):
    def test_unrestricted_truth(self) -> None:
        _, truth = simulate_panel((3, 2, 2, 6, 2), 2, 2, PriorConfig(rank=2, n_regimes=2), 4)
        with tempfile.TemporaryDirectory() as tmp:
            back = read_truth(write_truth(truth, Path(tmp) / "truth.json"))
        self.assertEqual(back.seed, 4)
        np.testing.assert_array_equal(back.d, truth.d)
        np.testing.assert_array_equal(back.s, truth.s)
        np.testing.assert_array_equal(back.params.rho, truth.params.rho)
        self.assertEqual(back.shrink.tau, truth.shrink.tau)
        np.testing.assert_array_equal(back.shrink.w, truth.shrink.w)
        for a, b in zip(truth.params.marginals[1].factors, back.params.marginals[1].factors):
            np.testing.assert_array_equal(a, b)
        self.assertIsNone(back.pooled)

    def test_pooled_truth(self) -> None:
        source = PooledParams(g=[[1.0, 0.5], [-1.0, 0.0]], w=[1.0, 1.0], tau=1.0, lam=[1.0, 1.0],
                              rho=[0.6, 0.2], xi=[[0.9, 0.1], [0.1, 0.9]])
        _, truth = simulate_panel((2, 2, 1, 5, 2), 2, 1, source, 0)
        back = truth_from_dict(truth_to_dict(truth))
        np.testing.assert_array_equal(back.pooled.g, source.g)
        self.assertIsNone(back.shrink)

    def test_bad_file(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "truth.json"
            path.write_text('{"seed": 1}', encoding="utf-8")
            with self.assertRaises(ParseError):
                read_truth(path)


if __name__ == "__main__":
    unittest.main()
