import unittest

import numpy as np

from zimsnet.errors import InvariantViolationError
from zimsnet.model.state import AugmentedState, RegimeParams, ShrinkageState
from zimsnet.tensor import ParafacMarginals


class TestRegimeParams(unittest.TestCase):
    def test_gamma_stack(self) -> None:
        m = ParafacMarginals([np.array([[1.0, 2.0], [3.0, 0.0]]), np.ones((1, 2)), np.ones((1, 2)), np.ones((2, 2))])
        params = RegimeParams(marginals=[m], rho=[0.5], xi=[[1.0]])
        sq = params.gamma_stack()
        self.assertEqual(sq.shape, (4, 2, 1))
        np.testing.assert_allclose(sq[0, :, 0], [10.0, 4.0])
        np.testing.assert_allclose(sq[3, :, 0], [2.0, 2.0])

    def test_copy_is_deep(self) -> None:
        m = ParafacMarginals.zeros((1, 1, 1, 1), 1)
        params = RegimeParams(marginals=[m], rho=[0.5], xi=[[1.0]])
        c = params.copy()
        c.marginals[0].factors[0][0, 0] = 1.0
        c.rho[0] = 0.1
        self.assertEqual(params.marginals[0].factors[0][0, 0], 0.0)
        self.assertEqual(params.rho[0], 0.5)


class TestShrinkageState(unittest.TestCase):
    def test_phi_and_variances(self) -> None:
        sh = ShrinkageState(tau=2.0, psi=[1.0, 3.0], w=np.ones((4, 2, 1)), lam=[1.0])
        np.testing.assert_allclose(sh.phi, [0.25, 0.75])
        np.testing.assert_allclose(sh.prior_variances()[:, :, 0], np.tile([0.5, 1.5], (4, 1)))
        self.assertTrue(sh.is_positive())

    def test_is_positive(self) -> None:
        sh = ShrinkageState(tau=2.0, psi=[1.0, 3.0], w=np.zeros((4, 2, 1)), lam=[1.0])
        self.assertFalse(sh.is_positive())


class TestAugmentedState(unittest.TestCase):
    def test_kappa_and_effective_omega(self) -> None:
        x = np.array([1, 0, 0]).reshape(3, 1, 1, 1)
        aug = AugmentedState(s=[0], d=np.array([0, 1, 0]).reshape(x.shape), omega=np.full(x.shape, 2.0))
        np.testing.assert_allclose(aug.kappa(x).ravel(), [0.5, 0.0, -0.5])
        np.testing.assert_allclose(aug.effective_omega().ravel(), [2.0, 0.0, 2.0])

    def test_check_allocations(self) -> None:
        x = np.array([1, 0]).reshape(2, 1, 1, 1)
        AugmentedState(s=[0], d=np.array([0, 1]).reshape(x.shape), omega=np.ones(x.shape)).check_allocations(x)
        bad = AugmentedState(s=[0], d=np.array([1, 0]).reshape(x.shape), omega=np.ones(x.shape))
        with self.assertRaises(InvariantViolationError) as ctx:
            bad.check_allocations(x)
        self.assertEqual(ctx.exception.details["index"], (0, 0, 0, 0))


if __name__ == "__main__":
    unittest.main()
