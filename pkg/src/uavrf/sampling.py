"""Effect of density-prediction error on recall frequency, and sampling
budgets that keep it bounded.

Serving a subregion with the radius optimized for a predicted density
instead of the true one inflates the static recall frequency.  To
second order the expected inflation is the prediction's generalization
error (variance plus squared bias) times a sensitivity coefficient

    Lambda = (S / (4 pi E_b)) * sqrt(P_cu * (2^(C/W)-1) * P1(h1*) / lam^3)

so sparse subregions (small lam) are the fragile ones.  Combining this
with the standard finite-hypothesis deviation bound
sqrt((log d - log delta) / (2 N)) yields closed-form per-subregion
sampling numbers under a cap on the area-wide inflation: each subregion
receives an equal share of the inflation budget left after training
error, which makes the allocation proportional to Lambda^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .channel import Environment, RadioConfig
from .placement import EnergyParams, optimal_normalized_power, static_rf


@dataclass(frozen=True)
class GeneralizationError:
    """Variance and bias of a density predictor; xi = var + bias^2."""

    variance: float  # [(users/m^2)^2]
    bias: float      # [users/m^2]

    def __post_init__(self):
        if self.variance < 0:
            raise ValueError("variance must be nonnegative")

    @property
    def xi(self) -> float:
        return self.variance + self.bias * self.bias


@dataclass(frozen=True)
class LearningBudget:
    """Inputs of the sampling-number optimization."""

    hypothesis_volume: float    # d, size of the hypothesis space (> 1)
    confidence_delta: float     # delta in (0, 1)
    max_training_error: float   # xi_max [(users/m^2)^2]
    max_rf_increment: float     # area-wide inflation cap [1/s]

    def __post_init__(self):
        if self.hypothesis_volume <= 1:
            raise ValueError("hypothesis volume must exceed 1")
        if not (0 < self.confidence_delta < 1):
            raise ValueError("confidence delta must lie in (0, 1)")
        if self.max_training_error < 0:
            raise ValueError("training error must be nonnegative")
        if self.max_rf_increment <= 0:
            raise ValueError("inflation cap must be positive")


@dataclass(frozen=True)
class SamplingAllocation:
    """Result of :func:`min_sampling_numbers`."""

    counts: Tuple[float, ...]      # real-valued minimal sampling numbers
    counts_int: Tuple[int, ...]    # deployable ceiled companions
    omega: float                   # multiplier of the binding constraint
    xi_bounds: Tuple[float, ...]   # per-subregion generalization-error caps


def subregion_eigenvalue(
    lam: float,
    p_circuit: float,
    env: Environment,
    radio: RadioConfig,
    area: float,
    battery_j: float,
) -> float:
    """Sensitivity of expected static RF inflation to generalization error.

    Scales as lam^(-3/2): sparse subregions amplify prediction error.
    """
    if lam <= 0:
        raise ValueError("density must be positive (sensitivity diverges at 0)")
    if p_circuit <= 0 or area <= 0 or battery_j <= 0:
        raise ValueError("circuit power, area and battery must be positive")
    p1 = optimal_normalized_power(env, radio)
    return (area / (4.0 * math.pi * battery_j)) * math.sqrt(
        p_circuit * radio.snr_gap * p1 / lam**3
    )


def rf_increment(eigenvalue: float, error) -> float:
    """Second-order expected static RF inflation: eigenvalue times xi.

    ``error`` is a :class:`GeneralizationError` or a plain xi value.
    """
    xi = error.xi if isinstance(error, GeneralizationError) else float(error)
    if xi < 0:
        raise ValueError("generalization error must be nonnegative")
    return eigenvalue * xi


def rf_increment_exact(
    lam_true: float,
    lam_hat: float,
    p_circuit: float,
    env: Environment,
    radio: RadioConfig,
    area: float,
    battery_j: float,
) -> float:
    """Exact static RF inflation from serving lam_true with the radius
    optimized for lam_hat (no Taylor truncation).

    Routes through the general static RF evaluation with the stale
    radius and its matched altitude.
    """
    from .placement import min_static_rf, optimal_altitude_ratio, optimal_radius

    energy = EnergyParams(p_circuit=p_circuit, battery_j=battery_j)
    h1 = optimal_altitude_ratio(env)
    r_hat = optimal_radius(lam_hat, p_circuit, env, radio)
    phi_hat = static_rf(r_hat, lam_true, r_hat * h1, energy, area, env, radio)
    phi_opt, _ = min_static_rf(lam_true, energy, area, env, radio)
    return phi_hat - phi_opt


def rf_increment_exact_samples(
    lam_true: float,
    lam_hats: np.ndarray,
    p_circuit: float,
    env: Environment,
    radio: RadioConfig,
    area: float,
    battery_j: float,
) -> np.ndarray:
    """Vectorized :func:`rf_increment_exact` via the closed radius form.

    Algebraically identical to the scalar route (the stale-radius static
    RF reduces to K*(sqrt(lam_hat) + lam_true/sqrt(lam_hat)) with
    K = (S/(pi E_b)) * sqrt(P_cu (2^(C/W)-1) P1)); the scalar function
    stays the reference in tests.
    """
    lam_hats = np.asarray(lam_hats, dtype=float)
    if np.any(lam_hats <= 0) or lam_true <= 0:
        raise ValueError("densities must be positive")
    p1 = optimal_normalized_power(env, radio)
    k = (area / (math.pi * battery_j)) * math.sqrt(p_circuit * radio.snr_gap * p1)
    phi_hat = k * (np.sqrt(lam_hats) + lam_true / np.sqrt(lam_hats))
    phi_opt = 2.0 * k * math.sqrt(lam_true)
    return phi_hat - phi_opt


def vc_epsilon(d: float, n_samples: float, delta: float) -> float:
    """Deviation bound sqrt((log d + log(1/delta)) / (2 n))."""
    if n_samples <= 0:
        raise ValueError("sample count must be positive")
    if d <= 1:
        raise ValueError("hypothesis volume must exceed 1")
    if not (0 < delta < 1):
        raise ValueError("delta must lie in (0, 1)")
    return math.sqrt((math.log(d) + math.log(1.0 / delta)) / (2.0 * n_samples))


def min_sampling_numbers(
    eigenvalues: Sequence[float], budget: LearningBudget
) -> SamplingAllocation:
    """Closed-form per-subregion sampling numbers under an inflation cap.

    With omega = 2 kappa / (cap - xi_max * sum(Lambda)), subregion b
    needs omega^2 * Lambda_b^2 * (log d - log delta) / 8 samples and is
    guaranteed generalization error at most xi_max + 2/(omega Lambda_b).
    The constraint binds exactly: summing Lambda_b times the error caps
    reproduces the inflation cap.
    """
    lams = [float(x) for x in eigenvalues]
    if not lams:
        raise ValueError("need at least one subregion eigenvalue")
    if any(x <= 0 for x in lams):
        raise ValueError("eigenvalues must be positive")
    slack = budget.max_rf_increment - budget.max_training_error * sum(lams)
    if slack <= 0:
        raise ValueError(
            "infeasible budget: max_rf_increment must exceed "
            f"max_training_error * sum(eigenvalues) = {budget.max_training_error * sum(lams):g}"
        )
    kappa = len(lams)
    omega = 2.0 * kappa / slack
    log_term = math.log(budget.hypothesis_volume) - math.log(budget.confidence_delta)
    counts = tuple(omega**2 * lam**2 * log_term / 8.0 for lam in lams)
    xi_bounds = tuple(budget.max_training_error + 2.0 / (omega * lam) for lam in lams)
    return SamplingAllocation(
        counts=counts,
        counts_int=tuple(math.ceil(c) for c in counts),
        omega=omega,
        xi_bounds=xi_bounds,
    )
