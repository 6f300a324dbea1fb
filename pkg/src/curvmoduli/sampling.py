"""Seeded generators for bodies used by tests and the verification harness."""

from __future__ import annotations

import numpy as np

from .bodies import ConvexBody, hull_reduce, minkowski_combine, steiner_point, translate_body


def icosahedron() -> ConvexBody:
    phi = (1.0 + np.sqrt(5.0)) / 2.0
    v = []
    for a in (-1.0, 1.0):
        for b in (-phi, phi):
            v += [(0, a, b), (a, b, 0), (b, 0, a)]
    verts = np.array(v) / np.sqrt(1.0 + phi * phi)
    return hull_reduce(verts)


def icosphere(level: int = 1) -> ConvexBody:
    """Icosahedron subdivided ``level`` times, vertices on the unit sphere."""
    body = icosahedron()
    verts = body.vertices
    tris = body.triangle_cover()
    for _ in range(level):
        pts = [verts]
        new_tris = []
        for t in tris:
            a, b, c = t
            ab, bc, ca = 0.5 * (a + b), 0.5 * (b + c), 0.5 * (c + a)
            pts.append(np.array([ab, bc, ca]))
            new_tris += [np.array([a, ab, ca]), np.array([ab, b, bc]),
                         np.array([ca, bc, c]), np.array([ab, bc, ca])]
        verts = np.vstack(pts)
        verts = verts / np.sqrt((verts ** 2).sum(1))[:, None]
        tris = [t / np.sqrt((t ** 2).sum(1))[:, None] for t in new_tris]
    return hull_reduce(verts / np.sqrt((verts ** 2).sum(1))[:, None])


def centered(body: ConvexBody) -> ConvexBody:
    """Translate so the normalized first curvature moment sits at the origin."""
    return translate_body(body, -steiner_point(body))


def random_polytope(rng: np.random.Generator, n_points: int = 14,
                    symmetric: bool = False, center: bool = True) -> ConvexBody:
    u = rng.normal(size=(n_points, 3))
    u /= np.sqrt((u ** 2).sum(1))[:, None]
    r = rng.uniform(0.7, 1.3, size=n_points)
    pts = r[:, None] * u
    if symmetric:
        pts = np.vstack([pts, -pts])
    body = hull_reduce(pts)
    return centered(body) if center and not symmetric else body


def random_polygon(rng: np.random.Generator, n_points: int = 10,
                   symmetric: bool = False, center: bool = True) -> ConvexBody:
    th = np.sort(rng.uniform(0, 2 * np.pi, size=n_points))
    r = rng.uniform(0.7, 1.3, size=n_points)
    pts = np.column_stack([r * np.cos(th), r * np.sin(th), np.zeros(n_points)])
    if symmetric:
        pts = np.vstack([pts, -pts])
    body = hull_reduce(pts)
    return centered(body) if center and not symmetric else body


def regular_polygon(n: int, radius: float = 1.0) -> ConvexBody:
    th = np.linspace(0, 2 * np.pi, n, endpoint=False)
    return hull_reduce(np.column_stack([radius * np.cos(th), radius * np.sin(th),
                                        np.zeros(n)]))


def random_segment(rng: np.random.Generator, symmetric: bool = True) -> ConvexBody:
    u = rng.normal(size=3)
    u /= np.linalg.norm(u)
    a = rng.uniform(0.5, 1.5)
    b = a if symmetric else rng.uniform(0.5, 1.5)
    return hull_reduce([-a * u, b * u])


def slab(polygon: ConvexBody, half_thickness: float, v=(0.0, 0.0, 1.0)) -> ConvexBody:
    """Polygon thickened by +-half_thickness along v (a thin solid)."""
    v = np.asarray(v, dtype=float)
    rod = hull_reduce([-half_thickness * v, half_thickness * v])
    return minkowski_combine(1.0, polygon, 1.0, rod)


def cube(half_side: float = 1.0) -> ConvexBody:
    return hull_reduce([[x, y, z] for x in (-half_side, half_side)
                        for y in (-half_side, half_side)
                        for z in (-half_side, half_side)])


def trimmed_cube(half_side: float = 1.0, depth: float = 0.05) -> ConvexBody:
    """Cube with each corner cut off at the given depth."""
    pts = []
    for v in cube(half_side).vertices:
        for i in range(3):
            w = v.copy()
            w[i] -= np.sign(w[i]) * depth
            pts.append(w)
    return hull_reduce(pts)
