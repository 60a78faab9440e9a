"""Self-check suite: structural invariants plus an independent area oracle.

These checks back the `validate` CLI command.  The area oracle integrates
disc-polygon intersections by exact column slices in y and quadrature in x,
a computation path fully independent of the boundary-walk geometry kernel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import ConvexPolygon, distance_bounds_to_origin
from .iams import interval_af_curve, power_bounds
from .model import AngularGrid, ArrayScenario, scenario_from_tolerances
from .montecarlo import run_mc
from .pia import (
    feature_report,
    mean_probabilities,
    probability_map,
    region_probabilities,
    ring_partition,
)

REL_TOL = 1e-9


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def disc_polygon_area_quadrature(r: float, poly: ConvexPolygon, n_columns: int = 8193) -> float:
    """Disc-polygon intersection area by column slices (independent oracle).

    For each x the polygon slice is an exact interval found from the edge
    half-planes, intersected with the circle slice; Simpson quadrature
    integrates the slice widths over x.
    """
    vs = poly.vertices
    if r <= 0.0 or vs.size < 3:
        return 0.0
    x_lo = max(float(vs.real.min()), -r)
    x_hi = min(float(vs.real.max()), r)
    if x_hi <= x_lo:
        return 0.0
    xs = np.linspace(x_lo, x_hi, n_columns)
    lo = np.full(xs.size, -np.inf)
    hi = np.full(xs.size, np.inf)
    feasible = np.ones(xs.size, dtype=bool)
    nxt = np.roll(vs, -1)
    for a, b in zip(vs, nxt):
        dx = b.real - a.real
        dy = b.imag - a.imag
        if abs(dx) < 1e-300:
            # vertical edge: a pure x constraint
            feasible &= -dy * (xs - a.real) >= -1e-12 * abs(dy)
            continue
        y_edge = a.imag + dy * (xs - a.real) / dx
        if dx > 0.0:
            lo = np.maximum(lo, y_edge)
        else:
            hi = np.minimum(hi, y_edge)
    y_circ = np.sqrt(np.maximum(r * r - xs * xs, 0.0))
    width = np.minimum(hi, y_circ) - np.maximum(lo, -y_circ)
    width = np.where(feasible, np.maximum(width, 0.0), 0.0)
    # composite Simpson
    h = xs[1] - xs[0]
    weights = np.ones(xs.size)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    return float(np.sum(weights * width) * h / 3.0)


def run_validation(
    scenario: ArrayScenario,
    grid: AngularGrid,
    k_regions: int,
    arc_points: int,
    mc_samples: int,
    seed: int,
    threads: int = 1,
) -> list[CheckResult]:
    """Run the full invariant suite; every entry carries a pass/fail verdict."""
    results: list[CheckResult] = []
    intervals = interval_af_curve(scenario, grid, arc_points, threads)
    bounds = power_bounds(scenario, grid, arc_points, threads, intervals=intervals)
    pmap = probability_map(scenario, grid, k_regions, arc_points, threads, intervals=intervals)

    col_err = float(np.abs(pmap.p.sum(axis=0) - 1.0).max())
    results.append(
        CheckResult(
            "column-stochasticity",
            col_err <= REL_TOL,
            f"max |sum_k p_k - 1| = {col_err:.3e}",
        )
    )

    pmap2 = probability_map(
        scenario, grid, 2 * k_regions, arc_points, threads, intervals=intervals
    )
    agg = pmap2.p[0::2] + pmap2.p[1::2]
    ref_err = float(np.abs(agg - pmap.p).max())
    mean_err = float(
        np.abs(
            (mean_probabilities(pmap2)[0::2] + mean_probabilities(pmap2)[1::2])
            - mean_probabilities(pmap)
        ).max()
    )
    results.append(
        CheckResult(
            "refinement-aggregation",
            ref_err <= REL_TOL and mean_err <= REL_TOL,
            f"max per-sample error {ref_err:.3e}, mean-prob error {mean_err:.3e}",
        )
    )

    report = feature_report(
        scenario, grid, k_regions, arc_points, threads, bounds=bounds, pmap=pmap
    )
    tiling = all(
        report.gamma_intervals[k, 1] == report.gamma_intervals[k + 1, 0]
        for k in range(k_regions - 1)
    )
    ends = (
        report.gamma_intervals[0, 0] == report.iams_gamma[0]
        and report.gamma_intervals[-1, 1] == report.iams_gamma[1]
    )
    results.append(
        CheckResult(
            "gamma-interval-tiling",
            tiling and ends,
            "peak intervals adjacent and flush with the overall bounds",
        )
    )

    sll_cov = (
        report.sll_intervals[0, 0] == report.iams_sll[0]
        and report.sll_intervals[-1, 1] == report.iams_sll[1]
    )
    results.append(
        CheckResult(
            "sll-endpoint-coverage",
            sll_cov,
            "first/last sidelobe intervals coincide with the overall bounds",
        )
    )

    mean_sum = float(np.abs(report.mean_probs.sum() - 1.0))
    results.append(
        CheckResult(
            "mean-probability-sum",
            mean_sum <= REL_TOL,
            f"|sum mean_probs - 1| = {mean_sum:.3e}",
        )
    )

    mc = run_mc(
        scenario,
        grid,
        k_regions,
        mc_samples,
        seed=seed,
        arc_points=arc_points,
        threads=threads,
        pmap=pmap,
    )
    slack = REL_TOL * np.maximum(bounds.p_hi, 1e-300)
    lo_viol = int(np.sum(mc.per_u_min < bounds.p_lo - slack))
    hi_viol = int(np.sum(mc.per_u_max > bounds.p_hi + slack))
    results.append(
        CheckResult(
            "mc-inclusion",
            lo_viol == 0 and hi_viol == 0,
            f"{mc.n_samples} samples, {lo_viol + hi_viol} bound violations",
        )
    )

    # informational: the ring model is an area ratio, not the induced
    # density, so only the distance between the two is reported
    tv = float(0.5 * np.abs(mc.region_frequencies - pmap.p).sum(axis=0).max())
    results.append(
        CheckResult(
            "mc-ring-frequencies",
            True,
            f"max total-variation distance to ring probabilities = {tv:.3f} (informational)",
        )
    )

    results.append(_symmetry_check(scenario, bounds))
    results.append(_zero_tolerance_check(scenario, grid, k_regions, arc_points, threads))
    results.append(_oracle_spot_check(pmap, intervals))
    return results


def _symmetry_check(scenario: ArrayScenario, bounds) -> CheckResult:
    amps_lo = [e.amplitude_lo for e in scenario.elements]
    amps_hi = [e.amplitude_hi for e in scenario.elements]
    symmetric = (
        amps_lo == amps_lo[::-1]
        and amps_hi == amps_hi[::-1]
        and all(e.nominal_phase == 0.0 for e in scenario.elements)
        and all(e.phase_lo == -e.phase_hi for e in scenario.elements)
    )
    us = bounds.grid.samples
    if not symmetric or not np.allclose(us, -us[::-1], atol=0.0):
        return CheckResult("pattern-symmetry", True, "not applicable (asymmetric scenario)")
    scale = float(bounds.p_hi.max())
    err_lo = float(np.abs(bounds.p_lo - bounds.p_lo[::-1]).max()) / scale
    err_hi = float(np.abs(bounds.p_hi - bounds.p_hi[::-1]).max()) / scale
    ok = err_lo <= REL_TOL and err_hi <= REL_TOL
    return CheckResult(
        "pattern-symmetry", ok, f"max relative asymmetry lo {err_lo:.3e}, hi {err_hi:.3e}"
    )


def _zero_tolerance_check(scenario, grid, k_regions, arc_points, threads) -> CheckResult:
    collapsed = scenario_from_tolerances(
        [(e.nominal_amplitude, e.nominal_phase) for e in scenario.elements],
        xi=0.0,
        gamma=0.0,
        spacing=scenario.spacing,
    )
    b = power_bounds(collapsed, grid, arc_points, threads)
    nominal_power = b.peak_power * np.power(10.0, b.nominal_db / 10.0)
    tol = 1e-9 * b.peak_power
    ok = bool(
        np.all(np.abs(b.p_lo - nominal_power) <= tol)
        and np.all(np.abs(b.p_hi - nominal_power) <= tol)
    )
    pm = probability_map(collapsed, grid, k_regions, arc_points, threads)
    ok = ok and bool(pm.degenerate.all()) and bool(np.all(pm.p[0] == 1.0))
    return CheckResult(
        "zero-tolerance-collapse",
        ok,
        "degenerate intervals collapse onto the nominal pattern "
        "(warning: all ring probability assigned to the first ring by convention)",
    )


def _oracle_spot_check(pmap, intervals) -> CheckResult:
    n_u = len(intervals)
    worst = 0.0
    for i in sorted({n_u // 6, n_u // 3, n_u // 2, (5 * n_u) // 6}):
        iv = intervals[i]
        if len(iv.region) < 3:
            continue
        part = ring_partition(iv.modulus_lo, iv.modulus_hi, pmap.k_regions)
        probs = region_probabilities(iv.region, part)
        total = disc_polygon_area_quadrature(float(part.radii[-1]), iv.region)
        if total <= 0.0:
            continue
        covered = [disc_polygon_area_quadrature(float(r), iv.region) for r in part.radii]
        oracle = np.diff(covered) / total
        worst = max(worst, float(np.abs(probs - oracle).max()))
    return CheckResult(
        "area-oracle-spot-check",
        worst <= 1e-3,
        f"max |p_k - quadrature oracle| = {worst:.3e}",
    )


def format_results(results: list[CheckResult]) -> str:
    lines = []
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        lines.append(f"{status}  {res.name:28s} {res.detail}")
    return "\n".join(lines)
