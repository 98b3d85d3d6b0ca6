import math
import unittest
from unittest import mock

import numpy as np
from scipy import integrate, special, stats

from zimsnet.distributions.stream import RngStream
from zimsnet.distributions.variates import (
    GIG_SMALL_OMEGA,
    GigParams,
    StandardKind,
    gig_logpdf_kernel,
    gig_moment,
    pg1_mean,
    sample_bernoulli,
    sample_categorical,
    sample_gamma,
    sample_gig,
    sample_pg1,
    sample_standard,
)
from zimsnet.errors import ArgumentError, NumericalError


def _numeric_gig_mean(g: GigParams) -> float:
    def dens(x: float) -> float:
        return math.exp(gig_logpdf_kernel(x, g))

    norm, _ = integrate.quad(dens, 0.0, np.inf)
    first, _ = integrate.quad(lambda x: x * dens(x), 0.0, np.inf)
    return first / norm


class TestPolyaGamma(unittest.TestCase):
    def test_pg1_mean_formula(self) -> None:
        self.assertAlmostEqual(pg1_mean(0.0), 0.25)
        self.assertAlmostEqual(pg1_mean(2.0), math.tanh(1.0) / 4.0)
        self.assertAlmostEqual(pg1_mean(-2.0), pg1_mean(2.0))

    def test_sample_mean_matches(self) -> None:
        rng = RngStream(0)
        for c in (0.0, 1.5, 6.0):
            draws = sample_pg1(np.full(20000, c), rng)
            se = draws.std() / math.sqrt(draws.size)
            self.assertLess(abs(draws.mean() - pg1_mean(c)), 5 * se)
            self.assertTrue(np.all(draws > 0))

    def test_million_draw_means_within_one_percent(self) -> None:
        rng = RngStream(10)
        for c in (0.0, 0.5, 2.0, 10.0):
            draws = sample_pg1(c, rng, size=1_000_000)
            self.assertLess(abs(draws.mean() / pg1_mean(c) - 1.0), 0.01, msg=f"c={c}")

    def test_symmetric_in_c(self) -> None:
        pos = sample_pg1(1.7, RngStream(11), size=100_000)
        neg = sample_pg1(-1.7, RngStream(12), size=100_000)
        self.assertLess(stats.ks_2samp(pos, neg).statistic, 0.01)

    def test_scalar_returns_float(self) -> None:
        self.assertIsInstance(sample_pg1(1.0, RngStream(1)), float)

    def test_rejects_non_finite(self) -> None:
        with self.assertRaises(ArgumentError):
            sample_pg1(np.array([1.0, np.nan]), RngStream(1))


class TestGig(unittest.TestCase):
    def test_moment_matches_quadrature(self) -> None:
        for g in (GigParams(2.0, 3.0, 0.5), GigParams(1.0, 2.0, -1.5), GigParams(4.0, 7.0, 3.0)):
            self.assertAlmostEqual(gig_moment(g), _numeric_gig_mean(g), places=6)

    def test_gamma_and_inverse_gamma_limits(self) -> None:
        # Gamma(3, rate 1) and InvGamma(3, scale 2)
        self.assertAlmostEqual(gig_moment(GigParams(2.0, 0.0, 3.0)), 3.0)
        self.assertAlmostEqual(gig_moment(GigParams(0.0, 4.0, -3.0)), 1.0)
        self.assertEqual(gig_moment(GigParams(0.0, 4.0, -1.0)), math.inf)

    def test_sample_means(self) -> None:
        rng = RngStream(3)
        for g in (GigParams(2.0, 3.0, 0.5), GigParams(2.0, 0.0, 3.0), GigParams(0.0, 4.0, -4.0)):
            draws = np.array([sample_gig(g, rng) for _ in range(6000)])
            se = draws.std() / math.sqrt(draws.size)
            self.assertLess(abs(draws.mean() - gig_moment(g)), 5 * se)
            self.assertTrue(np.all(draws > 0))

    def test_random_triples_first_two_moments(self) -> None:
        params = np.random.default_rng(20).uniform([0.3, 0.3, -3.0], [5.0, 5.0, 3.0], size=(20, 3))
        rng = RngStream(21)
        misses = 0
        for a, b, p in params:
            g = GigParams(float(a), float(b), float(p))
            draws = sample_gig(g, rng, size=100_000)
            self.assertEqual(draws.shape, (100_000,))
            for k in (1, 2):
                powered = draws**k
                z = abs(powered.mean() - gig_moment(g, k)) / (powered.std() / math.sqrt(draws.size))
                self.assertLess(z, 5.0, msg=f"{g} k={k}")
                misses += z > 3.0
        # 40 comparisons; one 3-SE excursion is within chance
        self.assertLessEqual(misses, 1)

    def test_invalid_params(self) -> None:
        rng = RngStream(0)
        for g in (
            GigParams(-1.0, 1.0, 1.0),
            GigParams(1.0, 0.0, -1.0),
            GigParams(0.0, 1.0, 1.0),
            GigParams(0.0, 0.0, 1.0),
            GigParams(1.0, math.nan, 1.0),
        ):
            with self.assertRaises(ArgumentError):
                sample_gig(g, rng)

    def test_kernel_outside_support(self) -> None:
        self.assertEqual(gig_logpdf_kernel(0.0, GigParams(1.0, 1.0, 1.0)), -math.inf)


class TestGigExtremes(unittest.TestCase):
    def test_vanishing_b_uses_gamma_limit(self) -> None:
        rng = RngStream(30)
        for b in (1e-300, 1e-80):
            x = sample_gig(GigParams(4.0, b, 1.0), rng)
            self.assertTrue(math.isfinite(x) and x > 0)
        draws = sample_gig(GigParams(4.0, 1e-300, 1.0), rng, size=20000)
        # Gamma(1, rate 2)
        self.assertAlmostEqual(float(draws.mean()), 0.5, delta=0.02)

    def test_vanishing_b_negative_order(self) -> None:
        x = sample_gig(GigParams(4.0, 1e-80, -1.0), RngStream(31))
        self.assertTrue(math.isfinite(x) and x > 0)
        self.assertLess(x, 1e-60)

    def test_moment_far_in_inverse_gamma_limit(self) -> None:
        g = GigParams(1.0, 1e-30, -29.5)
        expected = math.exp(special.gammaln(28.5) - special.gammaln(29.5)) * 0.5e-30
        got = gig_moment(g)
        self.assertTrue(math.isfinite(got))
        self.assertAlmostEqual(got / expected, 1.0, places=9)

    def test_moment_continuous_across_small_omega_switch(self) -> None:
        # sqrt(ab) = 1e-10 stays on the Bessel path; the gamma limit mean is 2p/a
        self.assertGreater(math.sqrt(1e-20), GIG_SMALL_OMEGA)
        self.assertAlmostEqual(gig_moment(GigParams(1.0, 1e-20, 2.0)), 4.0, places=6)
        self.assertAlmostEqual(gig_moment(GigParams(1.0, 1e-40, 2.0)), 4.0, places=12)

    def test_backend_failure_is_numerical_error(self) -> None:
        g = GigParams(2.0, 3.0, 0.5)
        boom = RuntimeError("ratio-of-uniforms did not converge")
        with mock.patch("zimsnet.distributions.variates.stats.geninvgauss.rvs", side_effect=boom):
            with self.assertRaises(NumericalError) as ctx:
                sample_gig(g, RngStream(0))
        self.assertEqual(ctx.exception.details, {"a": 2.0, "b": 3.0, "p": 0.5})
        self.assertIs(ctx.exception.cause, boom)


class TestStandard(unittest.TestCase):
    def test_gamma_is_shape_rate(self) -> None:
        draws = sample_gamma(4.0, 2.0, RngStream(2), size=20000)
        self.assertAlmostEqual(float(draws.mean()), 2.0, delta=0.05)

    def test_gamma_rejects_non_positive(self) -> None:
        with self.assertRaises(ArgumentError):
            sample_gamma(0.0, 1.0, RngStream(0))

    def test_bernoulli_extremes(self) -> None:
        rng = RngStream(0)
        np.testing.assert_array_equal(sample_bernoulli(np.zeros(5), rng), np.zeros(5))
        np.testing.assert_array_equal(sample_bernoulli(np.ones(5), rng), np.ones(5))
        with self.assertRaises(ArgumentError):
            sample_bernoulli(1.5, rng)

    def test_categorical_degenerate(self) -> None:
        rng = RngStream(0)
        for _ in range(20):
            self.assertEqual(sample_categorical([0.0, 3.0, 0.0], rng), 1)

    def test_categorical_invalid(self) -> None:
        rng = RngStream(0)
        with self.assertRaises(ArgumentError):
            sample_categorical([0.0, 0.0], rng)
        with self.assertRaises(ArgumentError):
            sample_categorical([1.0, -1.0], rng)

    def test_dispatch(self) -> None:
        rng = RngStream(4)
        self.assertTrue(0.0 < sample_standard("beta", (2.0, 3.0), rng) < 1.0)
        self.assertGreater(sample_standard(StandardKind.GAMMA, (2.0, 1.0), rng), 0.0)
        d = sample_standard("dirichlet", ([1.0, 1.0, 1.0],), rng)
        self.assertAlmostEqual(float(d.sum()), 1.0)
        self.assertIn(sample_standard("bernoulli", (0.5,), rng), (0, 1))
        self.assertEqual(sample_standard("categorical", ([0.0, 1.0],), rng), 1)
        with self.assertRaises(ValueError):
            sample_standard("poisson", (1.0,), rng)


if __name__ == "__main__":
    unittest.main()
