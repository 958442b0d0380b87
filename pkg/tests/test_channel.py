import math

import numpy as np
import pytest

from uavrf.channel import (
    LOS,
    NLOS,
    Environment,
    RadioConfig,
    avg_path_loss,
    elevation_angle_deg,
    environment_preset,
    los_probability,
    los_probability_altitude_slope,
    path_loss,
    per_user_tx_power,
    to_db,
)

# frozen against a 40-digit evaluation of the closed formulas
PER_USER_POWER_URBAN_100_100 = 0.016310373953585637  # W
AVG_LOSS_URBAN_100_100 = 326207479.07171274


def test_presets():
    urban = environment_preset("urban")
    assert (urban.a, urban.b, urban.eta_los, urban.eta_nlos) == (9.61, 0.16, 1.0, 20.0)
    dense = environment_preset("dense urban")
    assert (dense.a, dense.b) == (12.08, 0.11)
    sub = environment_preset("Suburban")
    assert sub.eta_los == 0.1
    with pytest.raises(ValueError):
        environment_preset("rural")


def test_environment_validation():
    with pytest.raises(ValueError):
        Environment(a=-1.0, b=0.1, eta_los=1.0, eta_nlos=2.0)
    with pytest.raises(ValueError):
        Environment(a=1.0, b=0.1, eta_los=2.0, eta_nlos=1.0)
    with pytest.raises(ValueError):
        Environment(a=1.0, b=0.1, eta_los=0.0, eta_nlos=1.0)


def test_radio_validation():
    with pytest.raises(ValueError):
        RadioConfig(bandwidth_hz=0.0)
    assert RadioConfig().snr_gap == pytest.approx(1.0)  # C = W regime


def test_los_probability_ground_level(urban):
    # theta = 0 at h = 0
    assert los_probability(1.0, 0.0, urban) == pytest.approx(
        1.0 / (1.0 + 9.61 * math.exp(0.16 * 9.61)), rel=1e-12
    )
    assert los_probability(1.0, 0.0, urban) == pytest.approx(0.02188, abs=1e-5)


def test_los_probability_overhead(urban):
    # r = 0 means looking straight up
    assert elevation_angle_deg(0.0, 1.0) == 90.0
    assert los_probability(0.0, 1.0, urban) == pytest.approx(0.99997, abs=1e-5)


def test_los_probability_scale_invariance(urban):
    for r, h in [(1.0, 2.0), (3.0, 0.5), (100.0, 80.0)]:
        assert los_probability(r, h, urban) == pytest.approx(
            los_probability(10 * r, 10 * h, urban), rel=1e-14
        )


def test_los_probability_monotonicity(urban):
    hs = np.linspace(0.0, 500.0, 40)
    ps = [los_probability(100.0, h, urban) for h in hs]
    assert all(b > a for a, b in zip(ps, ps[1:]))
    rs = np.linspace(1.0, 500.0, 40)
    ps = [los_probability(r, 100.0, urban) for r in rs]
    assert all(b < a for a, b in zip(ps, ps[1:]))


def test_origin_rejected(urban, radio):
    with pytest.raises(ValueError):
        elevation_angle_deg(0.0, 0.0)
    with pytest.raises(ValueError):
        path_loss(LOS, 0.0, 0.0, urban, radio)
    with pytest.raises(ValueError):
        avg_path_loss(0.0, 0.0, urban, radio)


def test_path_loss_fspl_factor(urban, radio):
    # overhead at 1 m with unit excess: pure FSPL factor
    env = Environment(a=urban.a, b=urban.b, eta_los=1.0, eta_nlos=1.0)
    assert path_loss(LOS, 0.0, 1.0, env, radio) == pytest.approx(1.0107e4, rel=1e-4)
    assert radio.fspl_factor == pytest.approx((4 * math.pi * 2.4e9 / 3e8) ** 2, rel=1e-14)


def test_path_loss_branches(urban, radio):
    ratio = path_loss(NLOS, 30.0, 40.0, urban, radio) / path_loss(LOS, 30.0, 40.0, urban, radio)
    assert ratio == pytest.approx(urban.eta_nlos / urban.eta_los, rel=1e-14)
    with pytest.raises(ValueError):
        path_loss("sideways", 1.0, 1.0, urban, radio)


def test_path_loss_distance_scaling(urban, radio):
    assert path_loss(LOS, 60.0, 80.0, urban, radio) == pytest.approx(
        4.0 * path_loss(LOS, 30.0, 40.0, urban, radio), rel=1e-14
    )


def test_avg_between_los_and_nlos(urban, radio):
    for r, h in [(10.0, 1.0), (100.0, 100.0), (5.0, 400.0)]:
        lo = path_loss(LOS, r, h, urban, radio)
        hi = path_loss(NLOS, r, h, urban, radio)
        assert lo <= avg_path_loss(r, h, urban, radio) <= hi


def test_avg_collapses_when_excess_equal(radio, urban):
    env = Environment(a=urban.a, b=urban.b, eta_los=3.0, eta_nlos=3.0)
    for r, h in [(10.0, 1.0), (100.0, 100.0)]:
        assert avg_path_loss(r, h, env, radio) == pytest.approx(
            path_loss(LOS, r, h, env, radio), rel=1e-14
        )


def test_avg_midpoint_mixing(urban, radio):
    # where P0 = 1/2 the excess is the arithmetic mean
    # theta solving the sigmoid: a*exp(-b(theta-a)) = 1
    theta = urban.a + math.log(urban.a) / urban.b
    r = 100.0
    h = r * math.tan(math.radians(theta))
    assert los_probability(r, h, urban) == pytest.approx(0.5, rel=1e-12)
    excess = avg_path_loss(r, h, urban, radio) / (radio.fspl_factor * (r * r + h * h))
    assert excess == pytest.approx((urban.eta_los + urban.eta_nlos) / 2.0, rel=1e-12)


def test_avg_overhead_approaches_los(urban, radio):
    # straight overhead the excess is within 0.06% of the LOS branch
    h = 50.0
    got = avg_path_loss(0.0, h, urban, radio)
    los = path_loss(LOS, 0.0, h, urban, radio)
    assert got == pytest.approx(los, rel=6e-4)


def test_avg_scale_identity(urban, radio):
    # L(r, h) = R^2 * L(r/R, h/R), the backbone of the power rescaling
    rng = np.random.default_rng(7)
    for _ in range(25):
        r, h = rng.uniform(0.5, 500.0, 2)
        scale = rng.uniform(0.1, 50.0)
        assert avg_path_loss(r, h, urban, radio) == pytest.approx(
            scale**2 * avg_path_loss(r / scale, h / scale, urban, radio), rel=1e-12
        )


def test_avg_unimodal_in_altitude(urban, radio):
    hs = np.linspace(0.0, 2000.0, 400)
    vals = [avg_path_loss(100.0, h, urban, radio) for h in hs]
    diffs = np.sign(np.diff(vals))
    changes = np.nonzero(np.diff(diffs) != 0)[0]
    assert len(changes) == 1  # decreases, then increases


def test_per_user_power_golden(urban, radio):
    assert avg_path_loss(100.0, 100.0, urban, radio) == pytest.approx(
        AVG_LOSS_URBAN_100_100, rel=1e-12
    )
    assert per_user_tx_power(100.0, 100.0, urban, radio) == pytest.approx(
        PER_USER_POWER_URBAN_100_100, rel=1e-12
    )


def test_per_user_power_rate_regimes(urban):
    base = RadioConfig()
    # C = W: factor 2^1 - 1 = 1
    assert per_user_tx_power(50.0, 50.0, urban, base) == pytest.approx(
        avg_path_loss(50.0, 50.0, urban, base) * base.noise_density * base.bandwidth_hz,
        rel=1e-14,
    )
    # C -> 0: no power needed
    tiny = RadioConfig(rate_bps=1e-9)
    assert per_user_tx_power(50.0, 50.0, urban, tiny) == pytest.approx(0.0, abs=1e-15)


def test_altitude_slope_matches_finite_difference(urban):
    for r, h in [(50.0, 20.0), (200.0, 150.0), (10.0, 300.0)]:
        eps = 1e-7 * max(1.0, h)
        numeric = (
            los_probability(r, h + eps, urban) - los_probability(r, h - eps, urban)
        ) / (2 * eps)
        assert los_probability_altitude_slope(r, h, urban) == pytest.approx(
            numeric, rel=1e-4
        )


def test_to_db():
    assert to_db(100.0) == pytest.approx(20.0)
    with pytest.raises(ValueError):
        to_db(0.0)
