"""Exact 2-D convex geometry in the complex plane.

Polygons are immutable sequences of complex vertices in counter-clockwise
order.  Degenerate polygons (a single point or a segment) are allowed and
flow through every operation.  All discs are centered at the origin, which
is the only case the power-pattern analysis needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

# Absolute geometric tolerance in the natural units of the excitation
# amplitudes (vertex coordinates are O(1)..O(10) in practice).
EPS_GEOM = 1e-9

# Weld scale for collapsing numerically coincident points.
_WELD = 1e-12

_TWO_PI = 2.0 * math.pi


def _cross(a: complex, b: complex) -> float:
    return a.real * b.imag - a.imag * b.real


@dataclass(frozen=True)
class ConvexPolygon:
    """Convex CCW polygon; 1 vertex = point, 2 vertices = segment."""

    vertices: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.vertices.flags.writeable = False

    def __len__(self) -> int:
        return self.vertices.size

    def __repr__(self) -> str:  # pragma: no cover
        return f"ConvexPolygon(n={self.vertices.size})"


@dataclass(frozen=True)
class Triangle:
    """CCW triangle in the complex plane."""

    v1: complex
    v2: complex
    v3: complex

    def __post_init__(self):
        for v in (self.v1, self.v2, self.v3):
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValidationError("triangle vertices must be finite")
        turn = _cross(self.v2 - self.v1, self.v3 - self.v1)
        scale = max(1.0, abs(self.v1), abs(self.v2), abs(self.v3))
        if turn < -EPS_GEOM * scale * scale:
            raise ValidationError("triangle vertices must be counter-clockwise")


def convex_polygon(points) -> ConvexPolygon:
    """Normalize a CCW vertex sequence into a ConvexPolygon.

    Welds coincident consecutive vertices, removes collinear ones, and
    rejects inputs that are not convex and counter-clockwise.
    """
    arr = np.asarray(points, dtype=np.complex128).ravel().copy()
    if arr.size == 0:
        raise ValidationError("polygon needs at least one vertex")
    if not np.all(np.isfinite(arr.real) & np.isfinite(arr.imag)):
        raise ValidationError("polygon vertices must be finite")

    verts = _weld(arr)
    if verts.size >= 3:
        verts = _drop_collinear(verts)
    if verts.size >= 3:
        _check_convex_ccw(verts)
    return ConvexPolygon(verts)


def _weld(arr: np.ndarray) -> np.ndarray:
    if arr.size == 1:
        return arr
    keep = np.abs(arr - np.roll(arr, 1)) > EPS_GEOM
    if not keep.any():
        return arr[:1]
    return arr[keep]


def _drop_collinear(verts: np.ndarray) -> np.ndarray:
    changed = True
    while changed and verts.size >= 3:
        prev = np.roll(verts, 1)
        nxt = np.roll(verts, -1)
        e1 = verts - prev
        e2 = nxt - verts
        cross = e1.real * e2.imag - e1.imag * e2.real
        tol = _WELD * np.abs(e1) * np.abs(e2) + 1e-300
        flat = np.abs(cross) <= tol
        if flat.all():
            # fully collinear ring: keep the two extreme points
            i = np.argmin(verts.real + verts.imag * 1e-9)
            j = np.argmax(np.abs(verts - verts[i]))
            return np.array([verts[i], verts[j]]) if j != i else verts[i : i + 1]
        changed = flat.any()
        verts = verts[~flat]
    return verts


def _check_convex_ccw(verts: np.ndarray) -> None:
    prev = np.roll(verts, 1)
    nxt = np.roll(verts, -1)
    e1 = verts - prev
    e2 = nxt - verts
    cross = e1.real * e2.imag - e1.imag * e2.real
    tol = EPS_GEOM * np.maximum(1.0, np.abs(e1) * np.abs(e2))
    if np.any(cross < -tol):
        raise ValidationError("vertices are not a counter-clockwise convex polygon")


def polygonize_interval_phasor(
    amp_lo: float,
    amp_hi: float,
    phase_lo: float,
    phase_hi: float,
    arc_points: int = 8,
) -> ConvexPolygon:
    """Convex polygon covering the annular sector {a*e^(jb)}.

    The outer arc is replaced by circumscribed tangent chords (arc_points
    vertices pushed to radius amp_hi/cos(step/2)), so the polygon is a
    guaranteed superset of the sector; the inner arc is covered by its
    chord.  Over-coverage shrinks as O(1/arc_points^2).
    """
    if not (0.0 <= amp_lo <= amp_hi):
        raise ValidationError(f"amplitude interval [{amp_lo}, {amp_hi}] must satisfy 0 <= lo <= hi")
    width = phase_hi - phase_lo
    if width < 0.0:
        raise ValidationError(f"phase interval [{phase_lo}, {phase_hi}] is reversed")
    if width >= math.pi:
        raise ValidationError(f"phase interval width {width} rad must be below pi")
    if arc_points < 2:
        raise ValidationError(f"arc_points must be at least 2, got {arc_points}")

    if width <= 0.0:
        rot = complex(math.cos(phase_lo), math.sin(phase_lo))
        return convex_polygon([amp_lo * rot, amp_hi * rot])

    step = width / arc_points
    bulge = amp_hi / math.cos(0.5 * step)
    pts = [amp_lo * _cis(phase_lo), amp_hi * _cis(phase_lo)]
    for i in range(arc_points):
        pts.append(bulge * _cis(phase_lo + (i + 0.5) * step))
    pts.append(amp_hi * _cis(phase_hi))
    pts.append(amp_lo * _cis(phase_hi))
    return convex_polygon(pts)


def _cis(angle: float) -> complex:
    return complex(math.cos(angle), math.sin(angle))


def _bottom_left(vs: np.ndarray) -> complex:
    """Lowest vertex, leftmost among near-ties.

    The y tie tolerance makes the pick stable when a horizontal bottom edge
    leaves its two endpoints mathematically level but floating-point noise
    apart; Minkowski support points add only under a consistent tie rule.
    """
    ys = vs.imag
    tol = _WELD * (1.0 + float(np.abs(vs).max()))
    near = np.flatnonzero(ys <= ys.min() + tol)
    return complex(vs[near[np.argmin(vs.real[near])]])


def _anchored_edges(poly: ConvexPolygon) -> tuple[complex, np.ndarray]:
    """Bottom-left support vertex and CCW edge vectors (cyclic order)."""
    vs = poly.vertices
    if vs.size == 1:
        return complex(vs[0]), np.empty(0, dtype=np.complex128)
    return _bottom_left(vs), np.roll(vs, -1) - vs


def minkowski_sum_many(polys) -> ConvexPolygon:
    """Minkowski sum of convex polygons via angular merge of edge vectors.

    The summed edge vectors sorted by direction trace the result's shape;
    its absolute position is pinned afterwards through the bottom-left
    support point, which is the sum of the operands' bottom-left vertices.
    """
    anchor = 0.0 + 0.0j
    edge_chunks = []
    for p in polys:
        start, edges = _anchored_edges(p)
        anchor += start
        if edges.size:
            edge_chunks.append(edges)
    if not edge_chunks:
        return convex_polygon([anchor])
    edges = np.concatenate(edge_chunks)
    angles = np.angle(edges)
    angles = np.where(angles < 0.0, angles + _TWO_PI, angles)
    angles = np.where(angles >= _TWO_PI, 0.0, angles)  # fold 2*pi onto 0
    order = np.argsort(angles, kind="stable")
    trace = np.concatenate(([0.0], np.cumsum(edges[order])[:-1]))
    verts = trace + (anchor - _bottom_left(trace))
    return convex_polygon(verts)


def minkowski_sum(p: ConvexPolygon, q: ConvexPolygon) -> ConvexPolygon:
    """Minkowski sum of two convex polygons (degenerate operands allowed)."""
    return minkowski_sum_many((p, q))


def contains_point(poly: ConvexPolygon, z: complex) -> bool:
    """Closed membership test with EPS_GEOM slack."""
    vs = poly.vertices
    if vs.size == 1:
        return abs(vs[0] - z) <= EPS_GEOM
    if vs.size == 2:
        return _segment_distance(vs[0], vs[1], z) <= EPS_GEOM
    nxt = np.roll(vs, -1)
    e = nxt - vs
    w = z - vs
    cross = e.real * w.imag - e.imag * w.real
    tol = EPS_GEOM * np.maximum(1.0, np.abs(e))
    return bool(np.all(cross >= -tol))


def _segment_distance(a: complex, b: complex, z: complex) -> float:
    d = b - a
    dd = d.real * d.real + d.imag * d.imag
    if dd == 0.0:
        return abs(z - a)
    t = ((z.real - a.real) * d.real + (z.imag - a.imag) * d.imag) / dd
    t = min(1.0, max(0.0, t))
    return abs(z - (a + t * d))


def distance_bounds_to_origin(poly: ConvexPolygon) -> tuple[float, float]:
    """(min, max) distance from the origin to the polygon (as a filled set)."""
    vs = poly.vertices
    d_max = float(np.abs(vs).max())
    if vs.size == 1:
        return d_max, d_max
    if vs.size >= 3 and contains_point(poly, 0.0 + 0.0j):
        return 0.0, d_max
    nxt = np.roll(vs, -1)
    e = nxt - vs
    dd = (e.real**2 + e.imag**2)
    dd = np.where(dd == 0.0, 1.0, dd)
    t = np.clip(-(vs.real * e.real + vs.imag * e.imag) / dd, 0.0, 1.0)
    closest = vs + t * e
    if vs.size == 2:
        closest = closest[:1]  # the two directed copies of a segment coincide
    return float(np.abs(closest).min()), d_max


def triangulate(poly: ConvexPolygon) -> list[Triangle]:
    """Fan triangulation from vertex 0; empty for degenerate polygons."""
    vs = poly.vertices
    if vs.size < 3:
        return []
    v0 = complex(vs[0])
    return [Triangle(v0, complex(vs[i]), complex(vs[i + 1])) for i in range(1, vs.size - 1)]


def polygon_area(points) -> float:
    """Absolute shoelace area of a vertex ring; below 3 points the area is 0."""
    if isinstance(points, ConvexPolygon):
        arr = points.vertices
    else:
        arr = np.asarray(points, dtype=np.complex128).ravel()
    if arr.size < 3:
        return 0.0
    nxt = np.roll(arr, -1)
    return 0.5 * abs(float(np.sum(arr.real * nxt.imag - nxt.real * arr.imag)))


def triangle_area_heron(e1: float, e2: float, e3: float) -> float:
    """Triangle area from edge lengths via the semi-perimeter product."""
    if min(e1, e2, e3) < 0.0:
        raise ValidationError("edge lengths must be non-negative")
    scale = max(e1, e2, e3, 1.0)
    violation = max(e1 - e2 - e3, e2 - e1 - e3, e3 - e1 - e2)
    if violation > EPS_GEOM * scale:
        raise ValidationError(f"edge lengths ({e1}, {e2}, {e3}) violate the triangle inequality")
    chi = 0.5 * (e1 + e2 + e3)
    prod = chi * (chi - e1) * (chi - e2) * (chi - e3)
    return math.sqrt(prod) if prod > 0.0 else 0.0


def circular_segment_area(r: float, a1: complex, a2: complex) -> float:
    """Area of the minor circular segment between chord a1-a2 and the arc.

    Both points must sit on the circle of radius r about the origin.
    """
    if r <= 0.0:
        raise ValidationError("radius must be positive")
    tol = EPS_GEOM * max(1.0, r)
    if abs(abs(a1) - r) > tol or abs(abs(a2) - r) > tol:
        raise ValidationError("segment endpoints must lie on the circle")
    c = abs(a1 - a2)
    if c <= EPS_GEOM:
        return 0.0
    half = min(0.5 * c, r)
    return r * r * math.asin(half / r) - half * math.sqrt(max(r * r - half * half, 0.0))


def circle_triangle_intersection_area(r: float, tri: Triangle) -> float:
    """Exact area of disc(0, r) intersected with a CCW triangle.

    Dispatches on the relative position of the vertices and edges: fully
    inside triangles reduce to the edge-length area formula, disjoint or
    enclosing configurations to 0 or the full disc, and crossing
    configurations to a boundary walk that sums the chain polygon and the
    circular segments closing each arc.
    """
    if r < 0.0:
        raise ValidationError("radius must be non-negative")
    if r == 0.0:
        return 0.0
    vs = (tri.v1, tri.v2, tri.v3)
    r2 = r * r
    if all(v.real * v.real + v.imag * v.imag <= r2 for v in vs):
        return triangle_area_heron(abs(vs[1] - vs[0]), abs(vs[2] - vs[1]), abs(vs[0] - vs[2]))
    return _disc_convex_walk(r, vs)


def disc_polygon_intersection_area(r: float, poly: ConvexPolygon) -> float:
    """Exact area of disc(0, r) intersected with a convex polygon."""
    if r < 0.0:
        raise ValidationError("radius must be non-negative")
    vs = poly.vertices
    if r == 0.0 or vs.size < 3:
        return 0.0
    return _disc_convex_walk(r, tuple(complex(v) for v in vs))


def _origin_inside(vs) -> bool:
    n = len(vs)
    for i in range(n):
        a = vs[i]
        b = vs[(i + 1) % n]
        e = b - a
        if e.imag * a.real - e.real * a.imag < -EPS_GEOM * max(1.0, abs(e)):
            return False
    return True


def _point_inside(vs, z: complex) -> bool:
    n = len(vs)
    for i in range(n):
        a = vs[i]
        b = vs[(i + 1) % n]
        e = b - a
        if e.real * (z.imag - a.imag) - e.imag * (z.real - a.real) < -EPS_GEOM * max(1.0, abs(e)):
            return False
    return True


def _disc_convex_walk(r: float, vs) -> float:
    """Disc-polygon intersection via the boundary chain.

    Walks the polygon boundary collecting inside vertices and edge-circle
    crossing points in traversal order; the area is the shoelace of that
    chain plus a circular segment for every stretch where the boundary
    leaves the disc (arc swept CCW from departure to re-entry).
    """
    n = len(vs)
    r2 = r * r
    weld = _WELD * (r + 1.0)

    inside = [v.real * v.real + v.imag * v.imag <= r2 for v in vs]
    nodes: list[tuple[complex, int, float]] = []
    for i in range(n):
        a = vs[i]
        b = vs[(i + 1) % n]
        if inside[i]:
            nodes.append((a, i, 0.0))
        ina = inside[i]
        inb = inside[(i + 1) % n]
        if ina and inb:
            continue
        d = b - a
        qa = d.real * d.real + d.imag * d.imag
        if qa == 0.0:
            continue
        qb = 2.0 * (a.real * d.real + a.imag * d.imag)
        qc = a.real * a.real + a.imag * a.imag - r2
        disc = qb * qb - 4.0 * qa * qc
        if ina != inb:
            sq = math.sqrt(disc) if disc > 0.0 else 0.0
            t = (-qb + sq) / (2.0 * qa) if ina else (-qb - sq) / (2.0 * qa)
            t = min(1.0, max(0.0, t))
            nodes.append((a + t * d, i, t))
        else:
            # both endpoints outside: the edge either misses the disc or
            # cuts a chord strictly inside; tangency counts as a miss, and
            # chords at floating-point noise scale are pruned (their area
            # contribution is O(chord^3 / r), far below any tolerance)
            if disc <= 0.0:
                continue
            sq = math.sqrt(disc)
            t1 = (-qb - sq) / (2.0 * qa)
            t2 = (-qb + sq) / (2.0 * qa)
            if t1 <= 0.0 or t2 >= 1.0 or (t2 - t1) * math.sqrt(qa) <= 1e-6 * (r + 1.0):
                continue
            nodes.append((a + t1 * d, i, t1))
            nodes.append((a + t2 * d, i, t2))

    if not nodes:
        return math.pi * r2 if _origin_inside(vs) else 0.0

    # weld cyclically adjacent duplicates (vertex on the circle also found
    # as an edge crossing, grazing contacts, ...)
    cleaned: list[tuple[complex, int, float]] = []
    for node in nodes:
        if cleaned and abs(node[0] - cleaned[-1][0]) <= weld:
            continue
        cleaned.append(node)
    while len(cleaned) > 1 and abs(cleaned[0][0] - cleaned[-1][0]) <= weld:
        cleaned.pop()
    if len(cleaned) == 1:
        return math.pi * r2 if _origin_inside(vs) else 0.0

    area = 0.0
    m = len(cleaned)
    for j in range(m):
        p, ei, ti = cleaned[j]
        q, ej, tj = cleaned[(j + 1) % m]
        area += 0.5 * (p.real * q.imag - q.real * p.imag)
        if ei == ej and tj >= ti:
            mid = _edge_point(vs, ei, 0.5 * (ti + tj))
        else:
            mid = _path_length_midpoint(vs, ei, ti, ej, tj)
        if mid.real * mid.real + mid.imag * mid.imag > r2:
            # boundary leaves the disc: close the region with the CCW arc
            ap = math.atan2(p.imag, p.real)
            phi = (math.atan2(q.imag, q.real) - ap) % _TWO_PI
            if phi > math.pi:
                # a majority arc is only real if it runs inside the polygon;
                # grazing contacts otherwise masquerade as near-full circles
                arc_mid = r * _cis(ap + 0.5 * phi)
                if not _point_inside(vs, arc_mid):
                    continue
            area += 0.5 * r2 * (phi - math.sin(phi))
    return max(area, 0.0)


def _edge_point(vs, i: int, t: float) -> complex:
    a = vs[i]
    b = vs[(i + 1) % len(vs)]
    return a + t * (b - a)


def _path_length_midpoint(vs, ei: int, ti: float, ej: int, tj: float) -> complex:
    """Point halfway (by arc length) along the boundary from (ei, ti) to (ej, tj).

    The sub-path between consecutive chain nodes is entirely inside or
    entirely outside the disc up to weld-scale grazing, so its length
    midpoint decides which; the midpoint is far from both endpoints, which
    keeps welded near-circle contacts from flipping the answer.
    """
    n = len(vs)
    pieces = []  # (edge index, t start, t end)
    steps = (ej - ei) % n
    if steps == 0:
        steps = n  # full loop back onto the same edge
    pieces.append((ei, ti, 1.0))
    for s in range(1, steps):
        pieces.append(((ei + s) % n, 0.0, 1.0))
    pieces.append((ej, 0.0, tj))
    lengths = []
    for k, t0, t1 in pieces:
        a = vs[k]
        b = vs[(k + 1) % n]
        lengths.append(abs(b - a) * (t1 - t0))
    half = 0.5 * sum(lengths)
    for (k, t0, t1), seg_len in zip(pieces, lengths):
        if half <= seg_len or (k, t0, t1) == pieces[-1]:
            if seg_len == 0.0:
                return _edge_point(vs, k, t0)
            frac = min(1.0, half / seg_len)
            return _edge_point(vs, k, t0 + frac * (t1 - t0))
        half -= seg_len
    return _edge_point(vs, ej, tj)  # pragma: no cover
