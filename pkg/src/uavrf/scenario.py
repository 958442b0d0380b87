"""Scenario configuration: geometry, radio, energy, densities, seeds.

A scenario bundles everything an experiment needs: the propagation
environment, the radio link budget, per-UAV energy constants, the
subregion rectangles with their density patterns, the depot location,
and the time horizon.  Scenarios load from a flat ``key = value`` text
format with one section per subregion, and round-trip exactly through
:func:`dump_scenario` / :func:`load_scenario`.

Densities come either literally from a pattern (traffic over rate times
reference cell area) or, for scheduling experiments, from the pattern's
normalized weekly shape rescaled into an explicit band of users/m^2.
The raw preset levels clamp to zero at night, where the placement
formulas degenerate, so the shipped scheduling scenarios use bands.
"""

from __future__ import annotations

import configparser
import io
import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np

from .channel import Environment, RadioConfig, environment_preset
from .patterns import (
    DensityPattern,
    Rect,
    Subregion,
    parse_pattern_file,
    pattern_preset,
    reconstruct_series,
    user_density,
)
from .placement import EnergyParams


class ScenarioError(ValueError):
    """Invalid scenario contents (bad value or violated invariant)."""


@dataclass(frozen=True)
class Scenario:
    name: str
    env: Environment
    radio: RadioConfig
    energy: EnergyParams
    bounds: Rect
    subregions: Tuple[Subregion, ...]
    density_bands: Tuple[Optional[Tuple[float, float]], ...]
    rsc_position: Tuple[float, float, float]
    horizon_s: float
    slot_s: float
    seed: int = 0
    include_initial_launch: bool = False
    start_s: float = 0.0
    #: optional measured/synthetic per-slot densities overriding the
    #: pattern reconstruction; one tuple per subregion, wrapped periodically
    explicit_densities: Optional[Tuple[Tuple[float, ...], ...]] = None

    def __post_init__(self):
        if not self.subregions:
            raise ScenarioError("scenario needs at least one subregion")
        if len(self.density_bands) != len(self.subregions):
            raise ScenarioError("density_bands must align with subregions")
        if self.horizon_s <= 0 or self.slot_s <= 0:
            raise ScenarioError("horizon and slot must be positive")
        ratio = self.horizon_s / self.slot_s
        if abs(ratio - round(ratio)) > 1e-9:
            raise ScenarioError("horizon must be a whole number of slots")
        if self.start_s < 0 or abs(self.start_s / self.slot_s - round(self.start_s / self.slot_s)) > 1e-9:
            raise ScenarioError("start offset must be a nonnegative whole number of slots")
        for i, sub in enumerate(self.subregions):
            r = sub.rect
            if not (
                self.bounds.contains(r.x, r.y)
                and self.bounds.contains(r.x + r.width, r.y + r.height)
            ):
                raise ScenarioError(f"subregion {sub.label!r} lies outside the considered area")
            for other in self.subregions[i + 1 :]:
                if r.overlaps(other.rect):
                    raise ScenarioError(
                        f"subregions {sub.label!r} and {other.label!r} overlap"
                    )
        for band in self.density_bands:
            if band is not None:
                lo, hi = band
                if not (0 < lo <= hi):
                    raise ScenarioError("density band must satisfy 0 < low <= high")
        if self.explicit_densities is not None:
            if len(self.explicit_densities) != len(self.subregions):
                raise ScenarioError("explicit_densities must align with subregions")
            for series in self.explicit_densities:
                if not series or any(v < 0 for v in series):
                    raise ScenarioError("explicit densities must be nonempty and nonnegative")

    @property
    def n_slots(self) -> int:
        return int(round(self.horizon_s / self.slot_s))

    def with_mobility_power(self, p_m: float) -> "Scenario":
        """Same scenario with uniform mobility power on all three axes."""
        return replace(
            self,
            energy=replace(
                self.energy, p_horizontal=p_m, p_ascend=p_m, p_descend=p_m
            ),
        )


def slot_densities(scenario: Scenario, horizon_s: float | None = None) -> np.ndarray:
    """Per-subregion, per-slot user densities [users/m^2], shape (B, n).

    Banded subregions rescale the pattern's normalized shape into
    [low, high]; unbanded ones evaluate the literal pattern density.
    """
    horizon = scenario.horizon_s if horizon_s is None else horizon_s
    n = int(round(horizon / scenario.slot_s))
    out = np.empty((len(scenario.subregions), n))
    if scenario.explicit_densities is not None:
        start = int(round(scenario.start_s / scenario.slot_s))
        for b, series in enumerate(scenario.explicit_densities):
            arr = np.asarray(series, dtype=float)
            out[b] = arr[(start + np.arange(n)) % len(arr)]
        return out
    for b, (sub, band) in enumerate(zip(scenario.subregions, scenario.density_bands)):
        mu = sub.pattern.sample_period
        idx = np.floor((scenario.start_s + np.arange(n) * scenario.slot_s) / mu).astype(int)
        if band is None:
            out[b] = [
                user_density(sub, scenario.start_s + k * scenario.slot_s, scenario.radio)
                for k in range(n)
            ]
        else:
            x = reconstruct_series(sub.pattern, range(sub.pattern.n_samples))
            lo_x, hi_x = float(x.min()), float(x.max())
            shape = np.ones_like(x) if hi_x == lo_x else (x - lo_x) / (hi_x - lo_x)
            lo, hi = band
            out[b] = lo + (hi - lo) * shape[idx % sub.pattern.n_samples]
    return out


def _table_defaults_energy(total_area: float, n_subregions: int) -> EnergyParams:
    # battery normalized so that subregion_area / (pi * E_b) = 1 m^2/J
    sub_area = total_area / n_subregions
    return EnergyParams(
        p_circuit=0.5,
        battery_j=sub_area / math.pi,
        p_horizontal=1.5,
        p_ascend=1.5,
        p_descend=1.5,
    )


def default_scenario() -> Scenario:
    """Defaults: urban, one 1000 m x 1000 m subregion, 24 h of 10 min slots."""
    bounds = Rect(0.0, 0.0, 1000.0, 1000.0)
    sub = Subregion(label="E", rect=bounds, pattern=pattern_preset("E"))
    return Scenario(
        name="default",
        env=environment_preset("urban"),
        radio=RadioConfig(),
        energy=_table_defaults_energy(bounds.area, 1),
        bounds=bounds,
        subregions=(sub,),
        density_bands=(None,),
        rsc_position=(500.0, 500.0, 0.0),
        horizon_s=24 * 3600.0,
        slot_s=600.0,
        seed=0,
    )


def reference_scenario(seed: int = 12060) -> Scenario:
    """Two equal-area subregions over one day, desk-scale density band.

    The band [1e-7, 1e-6] users/m^2 keeps fleets small while separating
    the three mobility-power regimes (update-every-slot, hybrid, hold).
    """
    bounds = Rect(0.0, 0.0, 1000.0, 1000.0)
    subs = (
        Subregion(label="E", rect=Rect(0.0, 0.0, 500.0, 1000.0), pattern=pattern_preset("E")),
        Subregion(label="R", rect=Rect(500.0, 0.0, 500.0, 1000.0), pattern=pattern_preset("R")),
    )
    return Scenario(
        name="daily-two-zone",
        env=environment_preset("urban"),
        radio=RadioConfig(),
        energy=_table_defaults_energy(bounds.area, 2),
        bounds=bounds,
        subregions=subs,
        density_bands=((1e-7, 1e-6), (1e-7, 1e-6)),
        rsc_position=(500.0, 500.0, 0.0),
        horizon_s=24 * 3600.0,
        slot_s=600.0,
        seed=seed,
    )


def _parse_floats(value: str, n: int, what: str) -> Tuple[float, ...]:
    parts = value.split()
    if len(parts) != n:
        raise ScenarioError(f"{what} needs {n} numbers, got {value!r}")
    return tuple(float(p) for p in parts)


def _parse_pattern_ref(value: str, base_dir: str | None) -> DensityPattern:
    value = value.strip()
    if value.startswith("preset:"):
        return pattern_preset(value.split(":", 1)[1])
    if value.startswith("file:"):
        import os

        path = value.split(":", 1)[1]
        if base_dir is not None and not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        with open(path) as fh:
            return parse_pattern_file(fh.read())
    raise ScenarioError(f"pattern must be 'preset:LABEL' or 'file:PATH', got {value!r}")


def parse_scenario(text: str, base_dir: str | None = None) -> Scenario:
    """Parse scenario text; empty input yields the documented defaults."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ScenarioError(f"scenario parse error: {exc}") from exc
    if not parser.sections():
        return default_scenario()

    base = default_scenario()
    sc = parser["scenario"] if parser.has_section("scenario") else {}

    env_name = sc.get("environment", "urban")
    if parser.has_section("environment"):
        e = parser["environment"]
        env = Environment(
            a=float(e["a"]),
            b=float(e["b"]),
            eta_los=float(e["eta_los"]),
            eta_nlos=float(e["eta_nlos"]),
            name=e.get("name", "custom"),
        )
    else:
        env = environment_preset(env_name)

    radio = base.radio
    if parser.has_section("radio"):
        r = parser["radio"]
        radio = RadioConfig(
            carrier_hz=float(r.get("carrier_hz", radio.carrier_hz)),
            bandwidth_hz=float(r.get("bandwidth_hz", radio.bandwidth_hz)),
            noise_density=float(r.get("noise_density", radio.noise_density)),
            rate_bps=float(r.get("rate_bps", radio.rate_bps)),
            bs_coverage_area=float(r.get("bs_coverage_area", radio.bs_coverage_area)),
        )

    bounds = base.bounds
    if "area" in sc:
        bounds = Rect(*_parse_floats(sc["area"], 4, "area"))

    energy = base.energy
    if parser.has_section("energy"):
        g = parser["energy"]
        defaults = _table_defaults_energy(bounds.area, max(1, len(
            [s for s in parser.sections() if s.startswith("subregion")]
        )))
        energy = EnergyParams(
            p_circuit=float(g.get("p_circuit", defaults.p_circuit)),
            battery_j=float(g.get("battery_j", defaults.battery_j)),
            p_horizontal=float(g.get("p_horizontal", defaults.p_horizontal)),
            p_ascend=float(g.get("p_ascend", defaults.p_ascend)),
            p_descend=float(g.get("p_descend", defaults.p_descend)),
            v_horizontal=float(g.get("v_horizontal", defaults.v_horizontal)),
            v_ascend=float(g.get("v_ascend", defaults.v_ascend)),
            v_descend=float(g.get("v_descend", defaults.v_descend)),
        )

    subregions = []
    bands = []
    explicit = []
    for section in parser.sections():
        if not section.startswith("subregion"):
            continue
        s = parser[section]
        label = s.get("label", section.split(None, 1)[1] if " " in section else section)
        rect = Rect(*_parse_floats(s["rect"], 4, f"{section} rect"))
        pattern = _parse_pattern_ref(s.get("pattern", "preset:E"), base_dir)
        band = None
        if "density_band" in s:
            lo, hi = _parse_floats(s["density_band"], 2, f"{section} density_band")
            band = (lo, hi)
        if "densities" in s:
            explicit.append(tuple(float(v) for v in s["densities"].split()))
        subregions.append(Subregion(label=label, rect=rect, pattern=pattern))
        bands.append(band)
    if not subregions:
        subregions = list(base.subregions)
        bands = list(base.density_bands)

    try:
        return Scenario(
            name=sc.get("name", "custom"),
            env=env,
            radio=radio,
            energy=energy,
            bounds=bounds,
            subregions=tuple(subregions),
            density_bands=tuple(bands),
            rsc_position=(
                _parse_floats(sc["rsc"], 3, "rsc")
                if "rsc" in sc
                else (bounds.x + bounds.width / 2.0, bounds.y + bounds.height / 2.0, 0.0)
            ),
            horizon_s=float(sc.get("horizon_hours", 24.0)) * 3600.0,
            slot_s=float(sc.get("slot_seconds", 600.0)),
            start_s=float(sc.get("start_hours", 0.0)) * 3600.0,
            seed=int(sc.get("seed", 0)),
            include_initial_launch=str(sc.get("include_initial_launch", "false")).lower()
            in ("1", "true", "yes"),
            explicit_densities=tuple(explicit) if explicit else None,
        )
    except (ValueError, KeyError) as exc:
        if isinstance(exc, ScenarioError):
            raise
        raise ScenarioError(f"invalid scenario: {exc}") from exc


def load_scenario(path: str) -> Scenario:
    import os

    with open(path) as fh:
        text = fh.read()
    return parse_scenario(text, base_dir=os.path.dirname(os.path.abspath(path)))


def dump_scenario(scenario: Scenario) -> str:
    """Serialize to the text format; inverse of :func:`parse_scenario`."""
    buf = io.StringIO()
    w = buf.write
    w("[scenario]\n")
    w(f"name = {scenario.name}\n")
    w(f"environment = {scenario.env.name}\n")
    b = scenario.bounds
    w(f"area = {b.x!r} {b.y!r} {b.width!r} {b.height!r}\n")
    w(f"rsc = {scenario.rsc_position[0]!r} {scenario.rsc_position[1]!r} {scenario.rsc_position[2]!r}\n")
    w(f"horizon_hours = {scenario.horizon_s / 3600.0!r}\n")
    w(f"slot_seconds = {scenario.slot_s!r}\n")
    w(f"start_hours = {scenario.start_s / 3600.0!r}\n")
    w(f"seed = {scenario.seed}\n")
    w(f"include_initial_launch = {str(scenario.include_initial_launch).lower()}\n")
    if scenario.env.name == "custom":
        e = scenario.env
        w("\n[environment]\n")
        w(f"a = {e.a!r}\nb = {e.b!r}\neta_los = {e.eta_los!r}\neta_nlos = {e.eta_nlos!r}\n")
    r = scenario.radio
    w("\n[radio]\n")
    w(f"carrier_hz = {r.carrier_hz!r}\n")
    w(f"bandwidth_hz = {r.bandwidth_hz!r}\n")
    w(f"noise_density = {r.noise_density!r}\n")
    w(f"rate_bps = {r.rate_bps!r}\n")
    w(f"bs_coverage_area = {r.bs_coverage_area!r}\n")
    g = scenario.energy
    w("\n[energy]\n")
    w(f"p_circuit = {g.p_circuit!r}\n")
    w(f"battery_j = {g.battery_j!r}\n")
    w(f"p_horizontal = {g.p_horizontal!r}\n")
    w(f"p_ascend = {g.p_ascend!r}\n")
    w(f"p_descend = {g.p_descend!r}\n")
    w(f"v_horizontal = {g.v_horizontal!r}\n")
    w(f"v_ascend = {g.v_ascend!r}\n")
    w(f"v_descend = {g.v_descend!r}\n")
    for sub, band in zip(scenario.subregions, scenario.density_bands):
        w(f"\n[subregion {sub.label}]\n")
        w(f"label = {sub.label}\n")
        rc = sub.rect
        w(f"rect = {rc.x!r} {rc.y!r} {rc.width!r} {rc.height!r}\n")
        known = _match_preset(sub.pattern)
        if known is not None:
            w(f"pattern = preset:{known}\n")
        else:
            raise ScenarioError(
                "cannot serialize a custom pattern inline; write it with "
                "dump_pattern() and reference it as file:PATH"
            )
        if band is not None:
            w(f"density_band = {band[0]!r} {band[1]!r}\n")
        if scenario.explicit_densities is not None:
            series = scenario.explicit_densities[scenario.subregions.index(sub)]
            w("densities = " + " ".join(repr(v) for v in series) + "\n")
    return buf.getvalue()


def _match_preset(pattern: DensityPattern) -> Optional[str]:
    for label in ("E", "R", "T", "O", "C"):
        if pattern_preset(label) == pattern:
            return label
    return None
