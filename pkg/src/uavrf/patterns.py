"""Time-varying ground-user density from sparse spectral coefficients.

Measured weekly traffic in a city block is well captured by a handful
of DFT coefficients (a DC term plus the 1-, 7- and 14-cycles-per-week
harmonics).  A pattern here stores only those coefficients; the mirror
coefficients are synthesized by conjugation so the reconstruction is
real by construction.  Traffic maps to user density by dividing by the
per-user rate and a reference cell area, with floor quantization to the
sampling period.

The raw reconstructions of the shipped presets oscillate around a small
DC value, so negative values are clamped to zero; scenario code that
needs a strictly positive density rescales the normalized shape into a
band instead of using raw levels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Tuple

import numpy as np

from .channel import RadioConfig

#: Relative imaginary residual allowed before a reconstruction is
#: declared non-real (conjugate symmetry violated).
REALNESS_TOL = 1e-9

#: Truncation floor for perturbed density draws [users/m^2].
DENSITY_FLOOR = 1e-12


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle: origin (x, y) plus width and height [m]."""

    x: float
    y: float
    width: float
    height: float

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("rectangle sides must be positive")

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def center(self) -> Tuple[float, float]:
        return (self.x + self.width / 2.0, self.y + self.height / 2.0)

    def contains(self, x: float, y: float, slack: float = 1e-9) -> bool:
        return (
            self.x - slack <= x <= self.x + self.width + slack
            and self.y - slack <= y <= self.y + self.height + slack
        )

    def overlaps(self, other: "Rect") -> bool:
        return not (
            self.x + self.width <= other.x
            or other.x + other.width <= self.x
            or self.y + self.height <= other.y
            or other.y + other.height <= self.y
        )


@dataclass(frozen=True)
class DensityPattern:
    """Sparse spectral description of one subregion's weekly traffic.

    ``coefficients`` maps frequency index k to a complex coefficient;
    only indices in [0, n_samples/2] are stored, the mirror index
    n_samples - k is implied by conjugation.
    """

    scale: float                       # reconstruction factor gamma_r
    coefficients: Mapping[int, complex]
    n_samples: int = 4032              # samples per period (4 weeks at 10 min)
    sample_period: float = 600.0       # seconds per sample

    def __post_init__(self):
        if self.n_samples <= 0:
            raise ValueError("n_samples must be positive")
        if self.sample_period <= 0:
            raise ValueError("sample_period must be positive")
        for k in self.coefficients:
            if not 0 <= k <= self.n_samples // 2:
                raise ValueError(
                    f"coefficient index {k} outside [0, {self.n_samples // 2}]; "
                    "mirror indices are implied and must not be stored"
                )

    def week_samples(self) -> int:
        """Samples per week (one quarter of the default 4-week record)."""
        return int(round(7 * 24 * 3600 / self.sample_period))


@dataclass(frozen=True)
class Subregion:
    """A rectangular planning subregion with its own density pattern."""

    label: str
    rect: Rect
    pattern: DensityPattern

    @property
    def area(self) -> float:
        return self.rect.area


def constant_pattern(value: float, n_samples: int = 4032, sample_period: float = 600.0) -> DensityPattern:
    """Pattern whose reconstruction is the constant ``value``."""
    return DensityPattern(
        scale=1.0,
        coefficients={0: complex(value * n_samples, 0.0)},
        n_samples=n_samples,
        sample_period=sample_period,
    )


# Built-in preset: reconstruction coefficients fitted to measured cellular
# traffic in five functional zone types (entertainment, residential,
# transport, office, comprehensive).
XU2016_PRESET = "xu2016"

_XU2016_ROWS = {
    # label: (gamma_r, [(k, magnitude, phase_rad), ...])
    "E": (8.35e11, ((0, 3.24e-4, 0.0), (4, 0.06, -0.3), (28, 0.5, 2.36), (56, 0.08, 0.69))),
    "R": (17.4e11, ((0, 2.73e-4, 0.0), (4, 0.04, -1.02), (28, 0.27, 1.72), (56, 0.17, 1.35))),
    "T": (4.32e11, ((0, 3.73e-4, 0.0), (4, 0.1, 1.04), (28, 0.38, 2.53), (56, 0.28, 2.46))),
    "O": (5.23e11, ((0, 4.63e-4, 0.0), (4, 0.21, 1.21), (28, 0.56, 2.52), (56, 0.2, 0.29))),
    "C": (17.4e11, ((0, 2.85e-4, 0.0), (4, 0.04, 0.35), (28, 0.3, 2.19), (56, 0.15, 1.11))),
}


def pattern_preset(label: str, preset: str = XU2016_PRESET) -> DensityPattern:
    """Built-in pattern for one of the subregion classes E/R/T/O/C."""
    if preset != XU2016_PRESET:
        raise ValueError(f"unknown preset collection {preset!r}")
    try:
        scale, rows = _XU2016_ROWS[label.upper()]
    except KeyError:
        raise ValueError(f"unknown subregion class {label!r}; expected one of E R T O C") from None
    coeffs = {k: mag * complex(math.cos(ph), math.sin(ph)) for k, mag, ph in rows}
    return DensityPattern(scale=scale, coefficients=coeffs)


def _raw_series(pattern: DensityPattern, n: np.ndarray) -> np.ndarray:
    """Complex reconstruction at sample indices ``n`` (mirrors included)."""
    N = pattern.n_samples
    n = np.asarray(n, dtype=float) % N
    total = np.zeros(n.shape, dtype=complex)
    for k, x in pattern.coefficients.items():
        total += x * np.exp(2j * np.pi * k * n / N)
        if k != 0 and 2 * k != N:
            total += np.conj(x) * np.exp(2j * np.pi * (N - k) * n / N)
    return pattern.scale / N * total


def reconstruct_traffic(pattern: DensityPattern, n: int) -> float:
    """Reconstructed traffic amount at sample index ``n``.

    Indices wrap modulo the record length, giving the periodic
    extension.  The result is clamped at zero; a non-vanishing
    imaginary part (impossible for conjugate-symmetric coefficients)
    raises.
    """
    value = complex(_raw_series(pattern, np.array([n]))[0])
    if abs(value.imag) > REALNESS_TOL * max(1.0, abs(value.real)):
        raise ArithmeticError(
            f"reconstruction at n={n} is not real (imag {value.imag:g}); "
            "coefficients violate conjugate symmetry"
        )
    return max(0.0, value.real)


def reconstruct_series(pattern: DensityPattern, n: Iterable[int]) -> np.ndarray:
    """Vectorized :func:`reconstruct_traffic` over many sample indices."""
    raw = _raw_series(pattern, np.asarray(list(n)))
    scale = max(1.0, float(np.max(np.abs(raw.real))) if raw.size else 1.0)
    worst = float(np.max(np.abs(raw.imag))) if raw.size else 0.0
    if worst > REALNESS_TOL * scale:
        raise ArithmeticError(
            f"reconstruction is not real (worst imag {worst:g}); "
            "coefficients violate conjugate symmetry"
        )
    return np.maximum(raw.real, 0.0)


def user_density(sub: Subregion, t: float, radio: RadioConfig) -> float:
    """Average user density [users/m^2] in ``sub`` at time ``t`` [s].

    Piecewise constant: the traffic sample index is floor(t / mu).
    """
    if t < 0:
        raise ValueError("time must be nonnegative")
    n = int(math.floor(t / sub.pattern.sample_period))
    x = reconstruct_traffic(sub.pattern, n)
    return x / (radio.rate_bps * radio.bs_coverage_area)


def normalized_shape(pattern: DensityPattern, n_points: int | None = None) -> np.ndarray:
    """Clamped reconstruction over one record, rescaled to [0, 1].

    A constant pattern maps to all ones.
    """
    if n_points is None:
        n_points = pattern.n_samples
    x = reconstruct_series(pattern, range(n_points))
    lo, hi = float(x.min()), float(x.max())
    if hi == lo:
        return np.ones_like(x)
    return (x - lo) / (hi - lo)


def perturbed_density(lam: float, bias: float, stddev: float, seed) -> float:
    """One noisy density prediction: lam + bias + N(0, stddev^2), floored.

    Deterministic for a given ``seed`` (an int or anything accepted by
    ``numpy.random.default_rng``).  Means and variances over many seeds
    converge to lam + bias and stddev^2 up to truncation at the floor.
    """
    if stddev < 0:
        raise ValueError("stddev must be nonnegative")
    rng = np.random.default_rng(seed)
    draw = lam + bias + (stddev * rng.standard_normal() if stddev > 0 else 0.0)
    return max(DENSITY_FLOOR, draw)


def perturbed_density_samples(lam: float, bias: float, stddev: float, n: int, seed) -> np.ndarray:
    """Vectorized :func:`perturbed_density`: ``n`` draws from one stream."""
    if stddev < 0:
        raise ValueError("stddev must be nonnegative")
    rng = np.random.default_rng(seed)
    draws = lam + bias + stddev * rng.standard_normal(n)
    return np.maximum(DENSITY_FLOOR, draws)


def parse_pattern_file(text: str) -> DensityPattern:
    """Parse the pattern override format.

    Header lines ``gamma_r VALUE``, ``N VALUE``, ``mu_seconds VALUE``
    followed by one ``k magnitude phase_radians`` line per stored
    coefficient.  Blank lines and ``#`` comments are ignored.
    """
    gamma = None
    n_samples = 4032
    mu = 600.0
    coeffs: Dict[int, complex] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "gamma_r":
                gamma = float(parts[1])
            elif parts[0] == "N":
                n_samples = int(parts[1])
            elif parts[0] == "mu_seconds":
                mu = float(parts[1])
            else:
                if len(parts) != 3:
                    raise ValueError("expected 'k magnitude phase_radians'")
                k = int(parts[0])
                mag, ph = float(parts[1]), float(parts[2])
                if k in coeffs:
                    raise ValueError(f"duplicate coefficient index {k}")
                coeffs[k] = mag * complex(math.cos(ph), math.sin(ph))
        except (IndexError, ValueError) as exc:
            raise ValueError(f"pattern file line {lineno}: {exc}") from None
    if gamma is None:
        raise ValueError("pattern file missing required 'gamma_r' header")
    if not coeffs:
        raise ValueError("pattern file defines no coefficients")
    return DensityPattern(scale=gamma, coefficients=coeffs, n_samples=n_samples, sample_period=mu)


def dump_pattern(pattern: DensityPattern) -> str:
    """Inverse of :func:`parse_pattern_file` (phases in (-pi, pi])."""
    lines = [
        f"gamma_r {pattern.scale!r}",
        f"N {pattern.n_samples}",
        f"mu_seconds {pattern.sample_period!r}",
    ]
    for k in sorted(pattern.coefficients):
        x = pattern.coefficients[k]
        lines.append(f"{k} {abs(x)!r} {math.atan2(x.imag, x.real)!r}")
    return "\n".join(lines) + "\n"
