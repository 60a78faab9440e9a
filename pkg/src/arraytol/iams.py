"""Interval array factor as a convex region per direction, and power-pattern bounds."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .geometry import (
    ConvexPolygon,
    distance_bounds_to_origin,
    minkowski_sum_many,
    polygonize_interval_phasor,
)
from .model import AngularGrid, ArrayScenario

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class IntervalAF:
    """Reachable set of the array factor at one direction, with modulus bounds."""

    u: float
    region: ConvexPolygon
    modulus_lo: float
    modulus_hi: float


@dataclass(frozen=True)
class PowerBoundsCurve:
    """Per-direction inclusive bounds of the radiated power pattern.

    Linear power bounds plus dB values normalized so the nominal pattern
    peaks at 0 dB; a zero lower bound maps to -inf dB.
    """

    grid: AngularGrid
    p_lo: np.ndarray = field(repr=False)
    p_hi: np.ndarray = field(repr=False)
    p_lo_db: np.ndarray = field(repr=False)
    p_hi_db: np.ndarray = field(repr=False)
    nominal_db: np.ndarray = field(repr=False)
    modulus_lo: np.ndarray = field(repr=False)
    modulus_hi: np.ndarray = field(repr=False)
    n_vertices: np.ndarray = field(repr=False)
    peak_power: float


def nominal_af(scenario: ArrayScenario, u: float) -> complex:
    """Crisp array factor: sum of nominal phasors with the steering progression."""
    if abs(u) > 1.0:
        raise ValidationError(f"direction u={u} must lie in [-1, 1]")
    total = 0.0 + 0.0j
    for n, el in enumerate(scenario.elements):
        psi = _TWO_PI * scenario.spacing * n * u
        total += el.nominal_amplitude * complex(
            math.cos(el.nominal_phase + psi), math.sin(el.nominal_phase + psi)
        )
    return total


def nominal_af_curve(scenario: ArrayScenario, grid: AngularGrid) -> np.ndarray:
    """Vectorized nominal array factor over a grid."""
    n = np.arange(scenario.n_elements)
    amps = np.array([el.nominal_amplitude for el in scenario.elements])
    phases = np.array([el.nominal_phase for el in scenario.elements])
    steering = _TWO_PI * scenario.spacing * np.outer(n, grid.samples)
    return (amps[:, None] * np.exp(1j * (phases[:, None] + steering))).sum(axis=0)


def interval_af(scenario: ArrayScenario, u: float, arc_points: int = 8) -> IntervalAF:
    """Convex region reachable by the array factor at direction u.

    Each element contributes its phasor sector rotated rigidly by the
    steering phase; the region is the Minkowski sum of those sectors and
    always contains the nominal array factor.
    """
    if abs(u) > 1.0:
        raise ValidationError(f"direction u={u} must lie in [-1, 1]")
    sectors = []
    for n, el in enumerate(scenario.elements):
        psi = _TWO_PI * scenario.spacing * n * u
        sectors.append(
            polygonize_interval_phasor(
                el.amplitude_lo,
                el.amplitude_hi,
                el.phase_lo + psi,
                el.phase_hi + psi,
                arc_points,
            )
        )
    region = minkowski_sum_many(sectors)
    lo, hi = distance_bounds_to_origin(region)
    return IntervalAF(u=u, region=region, modulus_lo=lo, modulus_hi=hi)


def interval_af_curve(
    scenario: ArrayScenario,
    grid: AngularGrid,
    arc_points: int = 8,
    threads: int = 1,
) -> list[IntervalAF]:
    """interval_af at every grid sample; parallel across samples, ordered output."""
    us = [float(u) for u in grid.samples]
    if threads <= 1 or len(us) < 4:
        return [interval_af(scenario, u, arc_points) for u in us]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda u: interval_af(scenario, u, arc_points), us))


def power_db(power, peak_power: float):
    """Linear power to dB relative to the peak; 0 maps to -inf."""
    p = np.asarray(power, dtype=np.float64)
    out = np.full(p.shape, -np.inf)
    pos = p > 0.0
    out[pos] = 10.0 * np.log10(p[pos] / peak_power)
    if out.shape == ():
        return float(out)
    return out


def power_bounds(
    scenario: ArrayScenario,
    grid: AngularGrid,
    arc_points: int = 8,
    threads: int = 1,
    intervals: list[IntervalAF] | None = None,
) -> PowerBoundsCurve:
    """Inclusive power-pattern bounds over a grid, in linear power and dB."""
    if intervals is None:
        intervals = interval_af_curve(scenario, grid, arc_points, threads)
    modulus_lo = np.array([iv.modulus_lo for iv in intervals])
    modulus_hi = np.array([iv.modulus_hi for iv in intervals])
    n_vertices = np.array([len(iv.region) for iv in intervals], dtype=np.int64)
    p_lo = modulus_lo**2
    p_hi = modulus_hi**2
    nominal_power = np.abs(nominal_af_curve(scenario, grid)) ** 2
    peak_power = float(nominal_power.max())
    if peak_power <= 0.0:
        raise ValidationError("nominal pattern is identically zero on the grid")
    return PowerBoundsCurve(
        grid=grid,
        p_lo=p_lo,
        p_hi=p_hi,
        p_lo_db=power_db(p_lo, peak_power),
        p_hi_db=power_db(p_hi, peak_power),
        nominal_db=power_db(nominal_power, peak_power),
        modulus_lo=modulus_lo,
        modulus_hi=modulus_hi,
        n_vertices=n_vertices,
        peak_power=peak_power,
    )
