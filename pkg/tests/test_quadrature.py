import math

import numpy as np
import pytest

from roadcall import GammaParams, QuadratureError
from roadcall.quadrature import bisect_level, integrate, level_crossings


class TestIntegrate:
    def test_cubic_is_exact(self):
        # Simpson integrates cubics exactly at any panel count
        value = integrate(lambda t: t**3 - 2 * t + 1, 0.0, 2.0)
        assert value == pytest.approx(2.0**4 / 4 - 4 + 2, rel=1e-14)

    def test_exponential(self):
        assert integrate(np.exp, 0.0, 1.0) == pytest.approx(math.e - 1.0, rel=1e-10)

    def test_gamma_density_mass(self):
        params = GammaParams(2.0, 2.0)
        mass = integrate(params.pdf, 0.0, 5.0)
        assert mass == pytest.approx(params.cdf(5.0), rel=1e-9)

    def test_empty_interval(self):
        assert integrate(np.exp, 1.0, 1.0) == 0.0
        assert integrate(np.exp, 2.0, 1.0) == 0.0

    def test_zero_function_converges_immediately(self):
        assert integrate(lambda t: np.zeros_like(t), 0.0, 10.0) == 0.0

    def test_nonconvergence_raises_with_diagnostics(self):
        step = lambda t: np.where(t < 0.37, 0.0, 1.0)
        with pytest.raises(QuadratureError) as exc:
            integrate(step, 0.0, 1.0, rel_tol=1e-12, max_panels=64)
        assert exc.value.panels == 64
        assert math.isfinite(exc.value.estimate)


class TestCrossings:
    def test_bisect_level_accuracy(self):
        root = bisect_level(lambda t: 3.0 * t - 1.0, 0.0, 1.0, 0.0)
        assert root == pytest.approx(1.0 / 3.0, abs=1e-10)

    def test_bisect_requires_straddle(self):
        with pytest.raises(ValueError):
            bisect_level(lambda t: t + 5.0, 0.0, 1.0, 0.0)

    def test_affine_crossings(self):
        fn = lambda t: 2.0 * t
        cuts = level_crossings(fn, 0.0, 10.0, (4.0, 12.0))
        assert cuts == pytest.approx([2.0, 6.0], abs=1e-9)

    def test_no_crossings(self):
        assert level_crossings(lambda t: 100.0 + 0 * t, 0.0, 1.0, (1.0, 2.0)) == []

    def test_non_affine_falls_back_to_scan(self):
        # parabola crosses the level twice; endpoints sit on the same side
        fn = lambda t: (t - 1.0) ** 2
        cuts = level_crossings(fn, 0.0, 2.0, (0.25,))
        assert cuts == pytest.approx([0.5, 1.5], abs=1e-8)

    def test_endpoint_touch_is_not_a_crossing(self):
        fn = lambda t: t
        assert level_crossings(fn, 0.0, 1.0, (0.0, 1.0)) == []
