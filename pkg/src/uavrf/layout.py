"""Integer fleet sizing and explicit 3D positions inside a subregion.

The disk-cover side of the problem is deliberately heuristic: the fleet
size is the ceiling of area over disk area, and positions come from a
small deterministic search over row-based lattices (aligned and
quarter-pitch staggered variants), scored by worst-case distance from
rectangle points to their nearest UAV ground projection.  The depot
(recall-and-supplement center, RSC) absorbs fleet-size differences
between consecutive deployments by padding the shorter position list.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np

from .patterns import Rect

Point3 = Tuple[float, float, float]


def num_uavs(area: float, radius: float) -> int:
    """Fleet size covering ``area`` with disks of ``radius``: ceil(S / (pi R^2)), at least 1."""
    if area <= 0:
        raise ValueError("area must be positive")
    if radius <= 0:
        raise ValueError("radius must be positive")
    return max(1, math.ceil(area / (math.pi * radius * radius)))


def reposition_count(n_before: int, n_after: int) -> int:
    """Number of UAVs involved in an update: max of the two fleet sizes."""
    if n_before < 0 or n_after < 0:
        raise ValueError("fleet sizes must be nonnegative")
    return max(n_before, n_after)


def _row_counts(count: int, rows: int) -> list[int]:
    """Split ``count`` into ``rows`` balanced parts, extras to central rows."""
    base, extra = divmod(count, rows)
    counts = [base] * rows
    # hand out extras from the middle outward, deterministically
    order = sorted(range(rows), key=lambda i: (abs(i - (rows - 1) / 2.0), i))
    for i in order[:extra]:
        counts[i] += 1
    return counts


def _alternating_counts(count: int, rows: int, start: int) -> list[int] | None:
    """Row counts alternating m, m-1 (or m-1, m) summing to ``count``."""
    if rows < 2:
        return None
    n_long = (rows + 1) // 2 if start == 0 else rows // 2
    n_short = rows - n_long
    # n_long * m + n_short * (m - 1) == count
    m, rem = divmod(count + n_short, rows)
    if rem != 0 or m < 2:
        return None
    return [m if (i % 2 == start % 2) else m - 1 for i in range(rows)]


def _axis_positions(extent: float, m: int, margin: float) -> np.ndarray:
    """m coordinates across ``extent`` with edge margins of ``margin`` pitches."""
    if m == 1:
        return np.array([extent / 2.0])
    return extent * (np.arange(m) + margin) / (m - 1.0 + 2.0 * margin)


def _candidate(
    rect_w: float,
    rect_h: float,
    counts: Sequence[int],
    staggered: bool,
    margin: float,
) -> np.ndarray:
    rows = len(counts)
    ys = _axis_positions(rect_h, rows, margin)
    pts = []
    for i, m in enumerate(counts):
        xs = _axis_positions(rect_w, m, margin)
        if staggered and m > 1:
            # alternate quarter-pitch shifts; stays inside for margin >= 0.25
            pitch = rect_w / (m - 1.0 + 2.0 * margin)
            xs = xs + (0.25 if i % 2 else -0.25) * pitch
        for x in xs:
            pts.append((x, ys[i]))
    return np.array(pts)


def _hex_candidate(rect_w: float, rect_h: float, counts: Sequence[int], margin: float) -> np.ndarray:
    """Half-pitch staggered rows sharing one pitch (rows alternate m, m-1).

    The genuine hexagonal covering lattice; only well formed when
    consecutive row counts differ by exactly one.
    """
    rows = len(counts)
    ys = _axis_positions(rect_h, rows, margin)
    m_long = max(counts)
    xs_long = _axis_positions(rect_w, m_long, margin)
    pitch = rect_w / (m_long - 1.0 + 2.0 * margin) if m_long > 1 else rect_w
    pts = []
    for i, m in enumerate(counts):
        if m == m_long:
            xs = xs_long
        else:
            xs = xs_long[:m] + 0.5 * pitch
        for x in xs:
            pts.append((x, ys[i]))
    return np.array(pts)


def _worst_cover_distance(rect_w: float, rect_h: float, pts: np.ndarray, res: int) -> float:
    gx = np.linspace(0.0, rect_w, res)
    gy = np.linspace(0.0, rect_h, res)
    grid = np.stack(np.meshgrid(gx, gy), axis=-1).reshape(-1, 2)
    d2 = ((grid[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
    return float(np.sqrt(d2.min(axis=1)).max())


@lru_cache(maxsize=4096)
def _unit_layout(rect_w: float, rect_h: float, count: int) -> tuple[tuple[float, float], ...]:
    """Best row lattice for ``count`` points in a w x h rectangle at origin."""
    if count == 1:
        return ((rect_w / 2.0, rect_h / 2.0),)
    # ideal hex row count, searched in a window around it
    dx0 = math.sqrt(2.0 * rect_w * rect_h / (math.sqrt(3) * count))
    r0 = max(1, round(rect_h / (math.sqrt(3) / 2.0 * dx0)))
    lo = max(1, r0 - 8)
    hi = min(count, r0 + 8)
    margins = (0.5, 0.42, 0.34, 0.27)
    candidates = []
    for rows in range(lo, hi + 1):
        counts = _row_counts(count, rows)
        variants = [(0, m) for m in margins]
        if rows >= 3 and len(set(counts)) == 1:
            variants += [(1, m) for m in margins]
        for kind, margin in variants:
            pts = _candidate(rect_w, rect_h, counts, kind == 1, margin)
            score = _worst_cover_distance(rect_w, rect_h, pts, 36)
            candidates.append((score, rows, kind, margin, pts))
        # alternating m/m-1 rows admit the true hexagonal lattice
        for start in (0, 1):
            alt = _alternating_counts(count, rows, start)
            if alt is None:
                continue
            for margin in margins:
                pts = _hex_candidate(rect_w, rect_h, alt, margin)
                score = _worst_cover_distance(rect_w, rect_h, pts, 36)
                candidates.append((score, rows, 2 + start, margin, pts))
    # coarse shortlist, then a fine pass: the coarse grid can misrank
    # near-tied lattices by a few percent
    candidates.sort(key=lambda c: c[:4])
    fine_res = 120 if count <= 256 else 72
    best = None
    for score, rows, staggered, margin, pts in candidates[:8]:
        fine = _worst_cover_distance(rect_w, rect_h, pts, fine_res)
        key = (fine, rows, staggered, margin)
        if best is None or key < best[0]:
            best = (key, pts)
    return tuple(map(tuple, best[1]))


def layout_positions(rect: Rect, count: int, radius: float, altitude: float) -> np.ndarray:
    """Deterministic positions for ``count`` UAVs hovering over ``rect``.

    Returns an array of shape (count, 3); all altitudes equal
    ``altitude`` and all ground projections lie inside the rectangle.
    ``radius`` only documents the intended disk size; the lattice itself
    is chosen to minimize the worst uncovered distance for this count.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    if altitude < 0:
        raise ValueError("altitude must be nonnegative")
    base = np.array(_unit_layout(rect.width, rect.height, count), dtype=float)
    out = np.empty((count, 3))
    out[:, 0] = base[:, 0] + rect.x
    out[:, 1] = base[:, 1] + rect.y
    out[:, 2] = altitude
    return out


def pad_with_rsc(
    positions_before: np.ndarray,
    positions_after: np.ndarray,
    rsc_position: Point3,
) -> tuple[np.ndarray, np.ndarray]:
    """Equalize two position lists by padding the shorter with RSC copies.

    Recalled UAVs fly to the depot; supplemented ones launch from it.
    Equal lengths come back unchanged.
    """
    before = np.atleast_2d(np.asarray(positions_before, dtype=float))
    after = np.atleast_2d(np.asarray(positions_after, dtype=float))
    if before.size == 0:
        before = before.reshape(0, 3)
    if after.size == 0:
        after = after.reshape(0, 3)
    target = max(len(before), len(after))
    rsc = np.asarray(rsc_position, dtype=float).reshape(1, 3)

    def pad(arr: np.ndarray) -> np.ndarray:
        if len(arr) == target:
            return arr
        return np.vstack([arr, np.tile(rsc, (target - len(arr), 1))])

    return pad(before), pad(after)


@dataclass(frozen=True)
class SubregionDeployment:
    """One subregion's share of a deployment."""

    label: str
    radius: float
    altitude: float
    positions: np.ndarray  # (count, 3)

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.positions.ndim != 2 or self.positions.shape[1] != 3:
            raise ValueError("positions must have shape (count, 3)")

    @property
    def count(self) -> int:
        return len(self.positions)


@dataclass(frozen=True)
class Deployment:
    """Explicit fleet placement across all subregions plus the depot."""

    entries: Tuple[SubregionDeployment, ...]
    rsc_position: Point3

    def all_positions(self) -> np.ndarray:
        if not self.entries:
            return np.empty((0, 3))
        return np.vstack([e.positions for e in self.entries])

    def radii(self) -> Tuple[float, ...]:
        return tuple(e.radius for e in self.entries)

    @property
    def total_count(self) -> int:
        return sum(e.count for e in self.entries)


def deployment_csv(deployment: Deployment) -> str:
    """Deployment dump with one row per UAV: subregion,x,y,z,radius."""
    lines = ["subregion,x,y,z,radius"]
    for entry in deployment.entries:
        for x, y, z in entry.positions:
            lines.append(
                f"{entry.label},{x:.12g},{y:.12g},{z:.12g},{entry.radius:.12g}"
            )
    return "\n".join(lines) + "\n"


def build_deployment(
    subregions,
    radii: Sequence[float],
    altitudes: Sequence[float],
    rsc_position: Point3,
) -> Deployment:
    """Assemble a :class:`Deployment` from per-subregion radii/altitudes."""
    if not (len(subregions) == len(radii) == len(altitudes)):
        raise ValueError("subregions, radii and altitudes must align")
    entries = []
    for sub, radius, altitude in zip(subregions, radii, altitudes):
        count = num_uavs(sub.area, radius)
        entries.append(
            SubregionDeployment(
                label=sub.label,
                radius=radius,
                altitude=altitude,
                positions=layout_positions(sub.rect, count, radius, altitude),
            )
        )
    return Deployment(entries=tuple(entries), rsc_position=tuple(rsc_position))
