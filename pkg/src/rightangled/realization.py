"""Numerical realization of ideal right-angled polyhedra as circle patterns.

Every face of an ideal right-angled polyhedron corresponds to a circle on
the sphere at infinity; adjacent face circles meet at right angles, and the
four circles around an ideal vertex pass through one common point, with the
two opposite (same colour class) circles tangent there.  The face-adjacency
graph is bipartite, so "tangent at a vertex" pairs are well defined.

The solver works in a chart where a chosen outer face is the unit circle.
Unknowns are the remaining circles (centre, radius) plus the vertex points;
residuals encode orthogonality along edges, tangency of opposite pairs, and
the incidence of each vertex point with its four circles.  A Tutte (spring)
embedding of the face graph seeds a trust-region Gauss-Newton solve;
spurious folded solutions are rejected by explicit geometric checks and the
solve is retried from deterministically jittered seeds.

Volumes follow by fanning each face from its lowest vertex, coning to an
apex vertex, and summing signed ideal-tetrahedron volumes of the
cross-ratios; the result is Möbius invariant.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import least_squares

from .core import AbstractPolyhedron, PolyhedronError, _dual_adjacency
from .lobachevsky import bloch_wigner
from .volumes import VolumeValue


class NotIdealKind(PolyhedronError):
    pass


class NoConvergence(RuntimeError):
    def __init__(self, iterations: int, residual: float):
        super().__init__(f"no convergence after {iterations} iterations, "
                         f"residual {residual:.3e}")
        self.iterations = iterations
        self.residual = residual


class InconsistentPattern(RuntimeError):
    pass


@dataclass(frozen=True)
class CirclePattern:
    """Solved pattern in the normalized gauge: the outer face is the real
    axis and the face circle tangent to it at the first outer-face vertex
    has centre i and radius 1.  ``circles[f]`` is ("circle", cx, cy, r) or
    ("line",) for the outer face."""
    circles: tuple
    outer_face: int
    iterations: int
    residual: float
    # solving-gauge data (outer face = unit circle): used by realize()
    disk_circles: tuple
    disk_points: tuple
    mobius: tuple  # (a, b, c, d) acting as z -> (a z + b)/(c z + d)


@dataclass(frozen=True)
class RealizedPolyhedron:
    poly: AbstractPolyhedron
    positions: tuple  # complex per vertex, normalized gauge
    pattern: CirclePattern
    apex: int


def _pattern_structure(poly: AbstractPolyhedron):
    """Orthogonal pairs, tangent pairs, per-vertex flowers, outer face."""
    if poly.kind != "ideal":
        raise NotIdealKind("circle patterns require an ideal polyhedron")
    ortho = sorted(_dual_adjacency(poly).keys())
    outer = min(range(poly.F), key=lambda fi: (-len(poly.faces[fi]), fi))
    tangent = set()
    flowers = []
    for v in range(poly.V):
        fs = poly.faces_at(v)
        p1 = tuple(sorted((fs[0], fs[2])))
        p2 = tuple(sorted((fs[1], fs[3])))
        tangent.add(p1)
        tangent.add(p2)
        flowers.append((p1, p2))
    return ortho, sorted(tangent), flowers, outer


def _outer_ring(poly: AbstractPolyhedron, outer: int) -> list[int]:
    """Faces adjacent to the outer face, in cyclic boundary order."""
    lookup = {}
    for fi, fc in enumerate(poly.faces):
        for i, a in enumerate(fc):
            lookup[(a, fc[(i + 1) % len(fc)])] = fi
    f = poly.faces[outer]
    m = len(f)
    return [lookup[(f[(i + 1) % m], f[i])] for i in range(m)]


def _tutte_seed(poly, ortho, tangent, outer):
    """Spring embedding of the face graph (outer ring pinned on the unit
    circle) for initial centres; radii from mean neighbour distance."""
    graph: dict[int, set] = {}
    for a, b in list(ortho) + list(tangent):
        if outer in (a, b):
            continue
        graph.setdefault(a, set()).add(b)
        graph.setdefault(b, set()).add(a)
    ring = _outer_ring(poly, outer)
    pos = {}
    for i, rf in enumerate(ring):
        ang = 2 * math.pi * i / len(ring)
        pos[rf] = complex(math.cos(ang), math.sin(ang))
    inner = [x for x in range(poly.F) if x != outer and x not in pos]
    idx = {x: i for i, x in enumerate(inner)}
    if inner:
        A = np.zeros((len(inner), len(inner)))
        B = np.zeros((len(inner), 2))
        for x, i in idx.items():
            nbrs = graph.get(x, ())
            A[i, i] = len(nbrs)
            for w in nbrs:
                if w in idx:
                    A[i, idx[w]] -= 1
                else:
                    B[i, 0] += pos[w].real
                    B[i, 1] += pos[w].imag
        sol = np.linalg.solve(A, B)
        for x, i in idx.items():
            pos[x] = complex(sol[i, 0], sol[i, 1]) * 0.5
    radii = {}
    for x in pos:
        ds = [abs(pos[x] - pos[w]) for w in graph.get(x, ()) if w in pos]
        radii[x] = 0.5 * sum(ds) / len(ds) if ds else 0.3
    return pos, radii


def _tangency_point(c1, r1, c2, r2):
    """Common point of two tangent circles (works for internal and external
    tangency): the candidate on the centre line closest to both."""
    d = abs(c2 - c1)
    u = (c2 - c1) / d
    cands = (c1 + r1 * u, c1 - r1 * u)
    return min(cands, key=lambda p: abs(abs(p - c2) - r2))


def solve_pattern(poly: AbstractPolyhedron, tol: float = 1e-10,
                  max_iters: int = 200) -> CirclePattern:
    """Solve the orthogonal circle pattern of an ideal polyhedron.

    The returned pattern is normalized: outer face on the real axis, the
    circle tangent to it at the first outer-face vertex centred at i with
    radius 1."""
    ortho, tangent, flowers, outer = _pattern_structure(poly)
    F, V = poly.F, poly.V
    others = [x for x in range(F) if x != outer]
    oi = {x: i for i, x in enumerate(others)}
    nf = len(others)
    o_pairs = np.array(ortho)
    t_pairs = np.array(tangent)
    vface = np.array([(v, f) for v in range(V)
                      for f in (*flowers[v][0], *flowers[v][1])])

    def circles(xv):
        c = np.zeros((F, 2))
        r = np.zeros(F)
        r[outer] = 1.0
        for x, i in oi.items():
            c[x] = xv[3 * i:3 * i + 2]
            r[x] = xv[3 * i + 2]
        return c, r

    def resid(xv):
        c, r = circles(xv)
        z = xv[3 * nf:].reshape(V, 2)
        a, b = o_pairs[:, 0], o_pairs[:, 1]
        res_o = np.sum((c[a] - c[b]) ** 2, axis=1) - r[a] ** 2 - r[b] ** 2
        a, b = t_pairs[:, 0], t_pairs[:, 1]
        d2 = np.sum((c[a] - c[b]) ** 2, axis=1)
        res_t = (d2 - (r[a] + r[b]) ** 2) * (d2 - (r[a] - r[b]) ** 2)
        vv, ff = vface[:, 0], vface[:, 1]
        res_v = np.sum((z[vv] - c[ff]) ** 2, axis=1) - r[ff] ** 2
        return np.concatenate([res_o, res_t, res_v])

    pos, radii = _tutte_seed(poly, ortho, tangent, outer)
    base = np.zeros(3 * nf + 2 * V)
    for x, i in oi.items():
        base[3 * i] = pos[x].real
        base[3 * i + 1] = pos[x].imag
        base[3 * i + 2] = max(radii[x], 0.05)
    c0, r0 = circles(base)
    for v in range(V):
        p1, p2 = flowers[v]
        q1 = _tangency_point(complex(*c0[p1[0]]), r0[p1[0]],
                             complex(*c0[p1[1]]), r0[p1[1]])
        q2 = _tangency_point(complex(*c0[p2[0]]), r0[p2[0]],
                             complex(*c0[p2[1]]), r0[p2[1]])
        q = (q1 + q2) / 2
        base[3 * nf + 2 * v] = q.real
        base[3 * nf + 2 * v + 1] = q.imag

    lb = np.full_like(base, -np.inf)
    ub = np.full_like(base, np.inf)
    for i in range(nf):
        lb[3 * i + 2] = 1e-6

    total_nfev = 0
    last_res = math.inf
    for attempt in range(20):
        x0 = base.copy()
        if attempt:
            rng = np.random.default_rng(attempt)
            x0 += rng.normal(0.0, 0.03 * (1 + attempt / 3), size=len(x0))
            for i in range(nf):
                x0[3 * i + 2] = abs(x0[3 * i + 2]) + 1e-3
        sol = least_squares(resid, x0, bounds=(lb, ub), method="trf",
                            xtol=3e-16, ftol=3e-16, gtol=3e-16,
                            max_nfev=50 * max_iters)
        total_nfev += sol.nfev
        c, r = circles(sol.x)
        z = sol.x[3 * nf:].reshape(V, 2)
        geo = _geometric_residual(c, r, z, o_pairs, t_pairs, vface)
        last_res = min(last_res, geo)
        if geo < tol and _distinct(z):
            return _finish(poly, outer, c, r, z, total_nfev, geo)
    raise NoConvergence(total_nfev, last_res)


def _geometric_residual(c, r, z, o_pairs, t_pairs, vface) -> float:
    """Max first-order error: orthogonality angle, tangency gap, vertex
    incidence, measured at unit scale."""
    worst = 0.0
    for a, b in o_pairs:
        d2 = float(np.sum((c[a] - c[b]) ** 2))
        worst = max(worst, abs(d2 - r[a] ** 2 - r[b] ** 2) /
                    (2 * r[a] * r[b]))
    for a, b in t_pairs:
        d = float(np.hypot(*(c[a] - c[b])))
        gap = min(abs(d - (r[a] + r[b])), abs(d - abs(r[a] - r[b])))
        worst = max(worst, gap / max(r[a], r[b]))
    for v, f in vface:
        err = abs(float(np.hypot(*(z[v] - c[f]))) - r[f])
        worst = max(worst, err / r[f])
    return worst


def _distinct(z, eps: float = 1e-6) -> bool:
    n = len(z)
    for i in range(n):
        for j in range(i + 1, n):
            if np.hypot(*(z[i] - z[j])) < eps:
                return False
    return True


def _finish(poly, outer, c, r, z, nfev, geo) -> CirclePattern:
    disk_circles = tuple((float(c[f][0]), float(c[f][1]), float(r[f]))
                         for f in range(poly.F))
    disk_points = tuple(complex(float(z[v][0]), float(z[v][1]))
                        for v in range(poly.V))
    mob = _normalizing_mobius(poly, outer, disk_circles, disk_points)
    circles_out = []
    for f in range(poly.F):
        if f == outer:
            circles_out.append(("line",))
        else:
            cx, cy, rr = disk_circles[f]
            circles_out.append(_map_circle(mob, complex(cx, cy), rr))
    return CirclePattern(tuple(circles_out), outer, nfev, geo,
                         disk_circles, disk_points, mob)


def _normalizing_mobius(poly, outer, disk_circles, disk_points):
    """Map the unit circle (outer face) to the real axis, sending a point
    far from all outer-face vertices to infinity, then scale/translate so
    the circle tangent at the first outer-face vertex is centred at i."""
    boundary = sorted(poly.faces[outer])
    angles = sorted(cmath.phase(disk_points[v]) for v in boundary)
    gaps = [(angles[(i + 1) % len(angles)] - angles[i]) % (2 * math.pi)
            for i in range(len(angles))]
    imax = max(range(len(gaps)), key=lambda i: gaps[i])
    far = cmath.exp(1j * (angles[imax] + gaps[imax] / 2))
    # z -> i (far + z)/(far - z) maps |z|=1 to the real axis, far to infinity
    a, b, cc, d = 1j, 1j * far, -1, far
    u = min(boundary)
    # the opposite-class circle tangent to outer at u
    fs = poly.faces_at(u)
    ring = set(_outer_ring(poly, outer))
    g = next(f for f in fs if f != outer and f not in ring)
    gc = _apply((a, b, cc, d), complex(disk_circles[g][0],
                                       disk_circles[g][1]), disk_circles[g][2])
    # gc = ("circle", cx, cy, r) tangent to the axis: normalize to centre i
    _, cx, cy, rr = gc
    if cy < 0:  # w -> -w flips to the upper half-plane
        a, b, cx = -a, -b, -cx
    # compose with w -> (w - cx)/rr
    return ((a - cx * cc) / rr, (b - cx * d) / rr, cc, d)


def _apply(mob, centre: complex, radius: float):
    """Image of a circle under a Möbius map, via three points."""
    a, b, c, d = mob
    pts = [centre + radius, centre + 1j * radius, centre - radius]
    imgs = [(a * p + b) / (c * p + d) for p in pts]
    return _circle_through(*imgs)


def _map_circle(mob, centre: complex, radius: float):
    return _apply(mob, centre, radius)


def _map_point(mob, z: complex) -> complex:
    a, b, c, d = mob
    return (a * z + b) / (c * z + d)


def _circle_through(p, q, s):
    """Circle (or line) through three points."""
    # solve |z - m|^2 equal for the three points: linear system in m
    ax, ay = p.real, p.imag
    bx, by = q.real, q.imag
    cx, cy = s.real, s.imag
    den = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if abs(den) < 1e-13 * max(abs(p - q), abs(q - s), 1.0) ** 2:
        return ("line",)
    a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
    mx = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / den
    my = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / den
    r = math.hypot(ax - mx, ay - my)
    return ("circle", mx, my, r)


def realize(poly: AbstractPolyhedron, pattern: CirclePattern,
            tol: float = 1e-8) -> RealizedPolyhedron:
    """Vertex positions in the normalized gauge; apex is vertex 0."""
    if pattern.residual > tol:
        raise InconsistentPattern(
            f"pattern residual {pattern.residual:.3e} above tolerance")
    positions = tuple(_map_point(pattern.mobius, z)
                      for z in pattern.disk_points)
    n = len(positions)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(positions[i] - positions[j]) < 1e-9:
                raise InconsistentPattern("coincident vertex positions")
    return RealizedPolyhedron(poly, positions, pattern, apex=0)


def _cross_ratio(z0, z1, z2, z3):
    return ((z2 - z0) * (z3 - z1)) / ((z2 - z1) * (z3 - z0))


def volume_from_points(poly: AbstractPolyhedron, points, apex: int = 0,
                       tol: float = 1e-10) -> float:
    """Fan every face not containing the apex from its first vertex, cone
    to the apex, and sum signed ideal tetrahedron volumes."""
    terms = []
    az = points[apex]
    for f in poly.faces:
        if apex in f:
            continue
        for i in range(1, len(f) - 1):
            zc = _cross_ratio(az, points[f[0]], points[f[i]], points[f[i + 1]])
            terms.append(bloch_wigner(zc))
    total = sum(terms)
    if total < 0:
        total, terms = -total, [-t for t in terms]
    if terms and min(terms) < -10 * tol:
        raise InconsistentPattern(
            f"negative fan tetrahedron ({min(terms):.3e}) in decomposition")
    return total


def ideal_volume(poly: AbstractPolyhedron, tol: float = 1e-10
                 ) -> VolumeValue:
    """Hyperbolic volume of an ideal right-angled polyhedron via its circle
    pattern (cross-ratios are Möbius invariant, so the solving gauge is used
    directly)."""
    pattern = solve_pattern(poly, tol=tol)
    value = volume_from_points(poly, pattern.disk_points, apex=0, tol=tol)
    return VolumeValue(value, "realized", 15)
