"""Probability analysis inside the power-pattern bounds.

Partitions each direction's reachable array-factor region into uniform
annular rings, assigns each power sub-interval the area fraction of the
region it captures, and reduces the per-direction probabilities into
sidelobe-level and pattern-peak feature intervals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .geometry import (
    EPS_GEOM,
    ConvexPolygon,
    circle_triangle_intersection_area,
    distance_bounds_to_origin,
    polygon_area,
    triangulate,
)
from .iams import IntervalAF, PowerBoundsCurve, interval_af_curve, power_bounds
from .model import AngularGrid, ArrayScenario


@dataclass(frozen=True)
class RingPartition:
    """K+1 ascending radii splitting [modulus_lo, modulus_hi] uniformly."""

    radii: np.ndarray = field(repr=False)
    width_per_ring: float

    def __post_init__(self):
        self.radii.flags.writeable = False

    @property
    def k_regions(self) -> int:
        return self.radii.size - 1


@dataclass(frozen=True)
class ProbabilityMap:
    """Per-direction ring-occupancy probabilities of the power pattern.

    p[k, i] is the probability that the pattern at grid sample i falls in
    the k-th power sub-interval; region_power_db[i] holds the K+1 ring
    boundaries in dB relative to the nominal peak.  Directions where the
    reachable region has no area carry the degenerate flag and put all
    probability in the first ring by convention.
    """

    grid: AngularGrid
    k_regions: int
    p: np.ndarray = field(repr=False)
    ring_radii: np.ndarray = field(repr=False)
    region_power_db: np.ndarray = field(repr=False)
    degenerate: np.ndarray = field(repr=False)
    peak_power: float

    def partition_at(self, i: int) -> RingPartition:
        radii = self.ring_radii[i]
        return RingPartition(radii=radii.copy(), width_per_ring=float(radii[1] - radii[0]))


@dataclass(frozen=True)
class FeatureReport:
    """Sidelobe-level and pattern-peak intervals with their probabilities."""

    k_regions: int
    u_max: float
    mainlobe_span: tuple[float, float]
    gamma_intervals: np.ndarray = field(repr=False)  # (K, 2) dB
    gamma_probs: np.ndarray = field(repr=False)
    sll_intervals: np.ndarray = field(repr=False)  # (K, 2) dB
    sll_probs: np.ndarray = field(repr=False)
    iams_gamma: tuple[float, float] = field(repr=True)
    iams_sll: tuple[float, float] = field(repr=True)
    mean_probs: np.ndarray = field(repr=False)
    degenerate: bool = False


def ring_partition(modulus_lo: float, modulus_hi: float, k_regions: int) -> RingPartition:
    """Uniform split of [modulus_lo, modulus_hi] into k_regions rings."""
    if k_regions < 1:
        raise ValidationError(f"k_regions must be at least 1, got {k_regions}")
    if not (0.0 <= modulus_lo <= modulus_hi):
        raise ValidationError(
            f"modulus bounds must satisfy 0 <= lo <= hi, got ({modulus_lo}, {modulus_hi})"
        )
    width = (modulus_hi - modulus_lo) / k_regions
    radii = modulus_lo + width * np.arange(k_regions + 1)
    # pin the endpoints against accumulated rounding
    radii[0] = modulus_lo
    radii[-1] = modulus_hi
    return RingPartition(radii=radii, width_per_ring=width)


def region_probabilities(region: ConvexPolygon, partition: RingPartition) -> np.ndarray:
    """Area fraction of the region captured by each annular ring.

    Computed by fan-triangulating the region and summing exact
    circle-triangle intersection areas against each ring boundary; ring
    areas are the telescoped differences, so the result sums to one.  A
    region with no area puts all probability in the first ring.
    """
    k = partition.k_regions
    lo, hi = distance_bounds_to_origin(region)
    radii = partition.radii
    if radii[0] > lo + EPS_GEOM or radii[-1] < hi - EPS_GEOM:
        raise ValidationError(
            f"partition radii [{radii[0]}, {radii[-1]}] do not bracket the "
            f"region's modulus bounds [{lo}, {hi}]"
        )
    out = np.zeros(k)
    triangles = triangulate(region)
    if not triangles:
        out[0] = 1.0
        return out
    covered = np.empty(k + 1)
    for h, r in enumerate(radii):
        covered[h] = sum(circle_triangle_intersection_area(float(r), t) for t in triangles)
    total = covered[-1]
    if total <= EPS_GEOM * EPS_GEOM:
        out[0] = 1.0
        return out
    out = np.maximum(np.diff(covered), 0.0) / total
    out /= out.sum()
    return out


def probability_map(
    scenario: ArrayScenario,
    grid: AngularGrid,
    k_regions: int,
    arc_points: int = 8,
    threads: int = 1,
    intervals: list[IntervalAF] | None = None,
) -> ProbabilityMap:
    """Ring partitions and occupancy probabilities at every grid sample."""
    if k_regions < 1:
        raise ValidationError(f"k_regions must be at least 1, got {k_regions}")
    if intervals is None:
        intervals = interval_af_curve(scenario, grid, arc_points, threads)
    bounds = power_bounds(scenario, grid, arc_points, threads, intervals=intervals)
    n_u = len(grid)
    p = np.zeros((k_regions, n_u))
    ring_radii = np.zeros((n_u, k_regions + 1))
    degenerate = np.zeros(n_u, dtype=bool)
    for i, iv in enumerate(intervals):
        part = ring_partition(iv.modulus_lo, iv.modulus_hi, k_regions)
        ring_radii[i] = part.radii
        p[:, i] = region_probabilities(iv.region, part)
        degenerate[i] = (
            len(iv.region) < 3 or polygon_area(iv.region) <= EPS_GEOM * EPS_GEOM
        )
    with np.errstate(divide="ignore"):
        region_power_db = 20.0 * np.log10(ring_radii) - 10.0 * math.log10(bounds.peak_power)
    return ProbabilityMap(
        grid=grid,
        k_regions=k_regions,
        p=p,
        ring_radii=ring_radii,
        region_power_db=region_power_db,
        degenerate=degenerate,
        peak_power=bounds.peak_power,
    )


def mean_probabilities(pmap: ProbabilityMap) -> np.ndarray:
    """Angular mean of each ring probability: (1/2) * integral of p_k(u) du."""
    return 0.5 * np.trapezoid(pmap.p, x=pmap.grid.samples, axis=1)


def mainlobe_indices(nominal_power: np.ndarray) -> tuple[int, int, int]:
    """(peak index, left null index, right null index) of the nominal pattern.

    The mainlobe spans from the first local minimum on each side of the
    peak; a pattern that never turns back up before the grid edge has no
    detectable mainlobe and is rejected.
    """
    i_max = int(np.argmax(nominal_power))
    n = nominal_power.size
    left = i_max
    while left > 0 and nominal_power[left - 1] < nominal_power[left] * (1.0 + 1e-12):
        left -= 1
    right = i_max
    while right < n - 1 and nominal_power[right + 1] < nominal_power[right] * (1.0 + 1e-12):
        right += 1
    if left == 0 or right == n - 1:
        raise ValidationError(
            "nominal pattern has no local minima bracketing the peak; "
            "the grid is too coarse or the mainlobe reaches the grid edge"
        )
    return i_max, left, right


def feature_report(
    scenario: ArrayScenario,
    grid: AngularGrid,
    k_regions: int,
    arc_points: int = 8,
    threads: int = 1,
    bounds: PowerBoundsCurve | None = None,
    pmap: ProbabilityMap | None = None,
) -> FeatureReport:
    """Sidelobe-level and peak intervals per ring, with their probabilities.

    Peak intervals are the ring boundaries at the steering direction and
    tile the peak bound exactly.  Sidelobe intervals subtract the pattern
    peak bounds from the highest sidelobe of each ring-boundary curve,
    searched outside the mainlobe independently per curve, so the first
    and last intervals coincide with the overall bound endpoints.
    """
    if bounds is None or pmap is None:
        intervals = interval_af_curve(scenario, grid, arc_points, threads)
        bounds = power_bounds(scenario, grid, arc_points, threads, intervals=intervals)
        pmap = probability_map(
            scenario, grid, k_regions, arc_points, threads, intervals=intervals
        )
    if pmap.k_regions != k_regions:
        raise ValidationError("probability map has a different ring count than requested")

    nominal_power = pmap.peak_power * np.power(10.0, bounds.nominal_db / 10.0)
    i_max, left, right = mainlobe_indices(nominal_power)
    side = np.ones(len(grid), dtype=bool)
    side[left : right + 1] = False

    boundary_db = pmap.region_power_db  # (N_u, K+1)
    peak_inf_db = boundary_db[i_max, 0]
    peak_sup_db = boundary_db[i_max, k_regions]
    gamma_intervals = np.column_stack((boundary_db[i_max, :-1], boundary_db[i_max, 1:]))
    gamma_probs = pmap.p[:, i_max].copy()

    side_max = boundary_db[side].max(axis=0)  # highest sidelobe per boundary curve
    sll_intervals = np.column_stack(
        (side_max[:-1] - peak_sup_db, side_max[1:] - peak_inf_db)
    )
    means = mean_probabilities(pmap)
    return FeatureReport(
        k_regions=k_regions,
        u_max=float(grid.samples[i_max]),
        mainlobe_span=(float(grid.samples[left]), float(grid.samples[right])),
        gamma_intervals=gamma_intervals,
        gamma_probs=gamma_probs,
        sll_intervals=sll_intervals,
        sll_probs=means.copy(),
        iams_gamma=(float(peak_inf_db), float(peak_sup_db)),
        iams_sll=(float(side_max[0] - peak_sup_db), float(side_max[-1] - peak_inf_db)),
        mean_probs=means,
        degenerate=bool(pmap.degenerate.any()),
    )
