"""Independent oracles and input generators shared across the test suite.

Every oracle here computes areas or memberships through a different
algorithm than the package (column quadrature, point grids, scipy hulls),
so agreement is evidence rather than tautology.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.spatial import ConvexHull


def taylor_taper(n_elements: int, sll_db: float = 25.0, nbar: int = 3) -> np.ndarray:
    """One-parameter-nbar Taylor line-source taper sampled at element positions.

    Returns amplitudes normalized to a unit maximum.  The 16-element,
    -25 dB, nbar=3 taper rounds to the published 3-digit test values.
    """
    r0 = 10.0 ** (sll_db / 20.0)
    big_a = math.acosh(r0) / math.pi
    sigma2 = nbar**2 / (big_a**2 + (nbar - 0.5) ** 2)

    def coeff(m: int) -> float:
        num = 1.0
        for n in range(1, nbar):
            num *= 1.0 - m**2 / (sigma2 * (big_a**2 + (n - 0.5) ** 2))
        den = 1.0
        for n in range(1, nbar):
            if n != m:
                den *= 1.0 - (m / n) ** 2
        return ((-1) ** (m + 1) / 2.0) * num / den

    coeffs = [coeff(m) for m in range(1, nbar)]
    n = np.arange(1, n_elements + 1)
    pos = (n - (n_elements + 1) / 2.0) / (n_elements / 2.0)
    g = 1.0 + 2.0 * sum(c * np.cos(math.pi * m * pos) for m, c in enumerate(coeffs, start=1))
    return g / g.max()


def disc_convex_area_slab(r: float, verts, n_columns: int = 4097) -> float:
    """Disc-polygon intersection area: exact y-slices, Simpson in x."""
    vs = np.asarray(verts, dtype=complex)
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
    for i in range(vs.size):
        a = vs[i]
        b = vs[(i + 1) % vs.size]
        dx = b.real - a.real
        dy = b.imag - a.imag
        if dx == 0.0:
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
    h = xs[1] - xs[0]
    w = np.ones(xs.size)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return float(np.sum(w * width) * h / 3.0)


def disc_convex_area_point_grid(r: float, verts, n: int = 1000) -> float:
    """Disc-polygon intersection area by midpoint cell counting."""
    vs = np.asarray(verts, dtype=complex)
    x_lo = max(float(vs.real.min()), -r)
    x_hi = min(float(vs.real.max()), r)
    y_lo = max(float(vs.imag.min()), -r)
    y_hi = min(float(vs.imag.max()), r)
    if x_hi <= x_lo or y_hi <= y_lo:
        return 0.0
    xs = np.linspace(x_lo, x_hi, n + 1)
    ys = np.linspace(y_lo, y_hi, n + 1)
    cx = 0.5 * (xs[:-1] + xs[1:])
    cy = 0.5 * (ys[:-1] + ys[1:])
    gx, gy = np.meshgrid(cx, cy, indexing="ij")
    keep = gx * gx + gy * gy <= r * r
    for i in range(vs.size):
        a = vs[i]
        b = vs[(i + 1) % vs.size]
        keep &= (b.real - a.real) * (gy - a.imag) - (b.imag - a.imag) * (gx - a.real) >= 0.0
    cell = (xs[1] - xs[0]) * (ys[1] - ys[0])
    return float(keep.sum()) * cell


def points_in_convex(verts, pts) -> np.ndarray:
    """Vectorized closed membership of points in a CCW convex polygon."""
    vs = np.asarray(verts, dtype=complex)
    zs = np.asarray(pts, dtype=complex)
    inside = np.ones(zs.shape, dtype=bool)
    for i in range(vs.size):
        a = vs[i]
        b = vs[(i + 1) % vs.size]
        e = b - a
        tol = 1e-9 * max(1.0, abs(e))
        inside &= e.real * (zs.imag - a.imag) - e.imag * (zs.real - a.real) >= -tol
    return inside


def random_convex_vertices(rng: np.random.Generator, n_points: int = 8, scale: float = 2.0,
                           center: complex = 0j) -> np.ndarray:
    """Random CCW convex polygon from the hull of a random point cloud."""
    while True:
        pts = rng.uniform(-scale, scale, (n_points, 2))
        try:
            hull = ConvexHull(pts)
        except Exception:
            continue
        vs = pts[hull.vertices]  # scipy returns CCW order in 2-D
        poly = vs[:, 0] + 1j * vs[:, 1] + center
        if len(poly) >= 3:
            return poly


def minkowski_sum_area_brute(p_verts, q_verts) -> float:
    """Minkowski-sum area via pairwise vertex sums and a scipy hull."""
    ps = np.asarray(p_verts, dtype=complex)
    qs = np.asarray(q_verts, dtype=complex)
    sums = (ps[:, None] + qs[None, :]).ravel()
    pts = np.column_stack((sums.real, sums.imag))
    return float(ConvexHull(pts).volume)


def random_triangle_for_case(rng: np.random.Generator, case: int, r: float):
    """Random CCW triangle arranged so disc(0, r) meets it per the given case.

    case 1: no vertices inside the disc and no edge crossings (disjoint or
    the triangle swallows the disc); case 2: no vertices inside but edges
    crossing; case 3: one or two vertices inside; case 4: all inside.
    """
    while True:
        if case == 4:
            radii = rng.uniform(0.0, 0.98 * r, 3)
            angles = rng.uniform(0.0, 2.0 * math.pi, 3)
            pts = radii * np.exp(1j * angles)
        elif case == 1 and rng.uniform() < 0.5:
            # big triangle surrounding the disc
            angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, 3))
            if np.diff(np.concatenate((angles, angles[:1] + 2 * math.pi))).max() > math.pi * 0.95:
                continue
            pts = rng.uniform(2.5 * r, 6.0 * r, 3) * np.exp(1j * angles)
        else:
            pts = (rng.uniform(-3 * r, 3 * r, 3) + 1j * rng.uniform(-3 * r, 3 * r, 3))
        tri = _ccw(pts)
        if tri is None:
            continue
        got = classify_triangle_case(r, tri)
        if got == case:
            return tri


def _ccw(pts):
    v = np.asarray(pts, dtype=complex)
    cross = (v[1] - v[0]).real * (v[2] - v[0]).imag - (v[1] - v[0]).imag * (v[2] - v[0]).real
    if abs(cross) < 1e-6:
        return None
    return v if cross > 0 else v[[0, 2, 1]]


def classify_triangle_case(r: float, verts) -> int:
    """Case id (1-4) from vertex membership and edge crossings."""
    vs = np.asarray(verts, dtype=complex)
    inside = np.abs(vs) <= r
    n_in = int(inside.sum())
    if n_in == 3:
        return 4
    if n_in > 0:
        return 3
    crossings = 0
    for i in range(3):
        a, b = vs[i], vs[(i + 1) % 3]
        d = b - a
        t = -np.real(np.conj(d) * a) / abs(d) ** 2
        t = min(1.0, max(0.0, t))
        if abs(a + t * d) < r:
            crossings += 1
    return 2 if crossings else 1
