import math

import numpy as np
import pytest

from uavrf.quadrature import QuadratureError, adaptive_simpson


def test_cubic_is_exact():
    # Simpson integrates cubics exactly
    assert adaptive_simpson(lambda x: x**3 - 2 * x + 1, 0.0, 2.0) == pytest.approx(
        4.0 - 4.0 + 2.0, rel=1e-14
    )


def test_empty_interval():
    assert adaptive_simpson(math.sin, 1.0, 1.0) == 0.0


def test_reversed_bounds_rejected():
    with pytest.raises(ValueError):
        adaptive_simpson(math.sin, 1.0, 0.0)


def test_smooth_transcendental():
    # int_0^pi sin = 2
    value = adaptive_simpson(math.sin, 0.0, math.pi, rel_tol=1e-10)
    assert value == pytest.approx(2.0, rel=1e-10)


def test_exp_against_closed_form():
    value = adaptive_simpson(math.exp, -1.0, 3.0, rel_tol=1e-10)
    assert value == pytest.approx(math.exp(3.0) - math.exp(-1.0), rel=1e-10)


def test_sharp_peak_meets_tolerance():
    # narrow Lorentzian; reference from a dense trapezoid
    f = lambda x: 1.0 / (1e-4 + (x - 0.37) ** 2)
    xs = np.linspace(0.0, 1.0, 2_000_001)
    reference = np.trapezoid(f(xs), xs)
    value = adaptive_simpson(f, 0.0, 1.0, rel_tol=1e-9)
    assert value == pytest.approx(reference, rel=1e-7)


def test_depth_cap_raises_with_estimate():
    f = lambda x: 1.0 / math.sqrt(abs(x - 0.3) + 1e-14)
    with pytest.raises(QuadratureError) as err:
        adaptive_simpson(f, 0.0, 1.0, rel_tol=1e-13, max_depth=6)
    assert err.value.estimate > 0
    assert err.value.error > 0
