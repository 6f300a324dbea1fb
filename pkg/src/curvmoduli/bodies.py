"""Exact calculus on convex compacta in R^3.

A body is stored as its finite set of extreme points, so hulls, support
values, Minkowski combinations, Hausdorff distances and gauges can all be
evaluated exactly at polytope scale.  Lower-dimensional bodies (polygons,
segments, points) are first-class citizens: the affine rank is detected on
construction and every operation dispatches on it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .errors import GeometryError
from .tolerances import TAU_GEOM, TAU_RANK, TAU_STEINER, TAU_SYM


def unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    n = float(np.linalg.norm(v))
    if n <= TAU_GEOM:
        raise GeometryError("degenerate", "zero-length direction")
    return v / n


@dataclass(frozen=True)
class Subspace:
    """A line (the span of ``vec``) or a plane (its orthogonal complement),
    both through the origin."""

    kind: str  # "line" | "plane"
    vec: np.ndarray

    def __post_init__(self):
        if self.kind not in ("line", "plane"):
            raise GeometryError("degenerate", f"unknown subspace kind {self.kind!r}")
        object.__setattr__(self, "vec", unit(self.vec))


class ConvexBody:
    """Compact convex set represented by its extreme points.

    Build instances through :func:`hull_reduce`; the constructor trusts that
    ``vertices`` is already an irredundant extreme set of the stated affine
    dimension.  Derived structure (facet planes, edge loops, in-plane bases)
    is computed lazily and cached.
    """

    def __init__(self, vertices: np.ndarray, dim: int, _steiner=None):
        self.vertices = np.atleast_2d(np.asarray(vertices, dtype=float))
        self.dim = int(dim)
        diff = self.vertices[:, None, :] - self.vertices[None, :, :]
        self.diameter = float(np.sqrt((diff * diff).sum(-1)).max())
        self._facet_loops = None
        self._facet_normals = None
        self._facet_offsets = None
        self._triangles = None
        self._plane = None  # dim 2: (origin, basis(2,3), normal)
        self._loop = None  # dim 2: vertex ids in ccw order
        self.steiner = _steiner_exact(self) if _steiner is None else np.asarray(_steiner, dtype=float)

    # -- derived structure ------------------------------------------------

    def facet_data(self):
        """Merged coplanar facets of a solid body: (loops, normals, offsets).

        Loops are vertex-id cycles ordered counterclockwise as seen from
        outside; the plane of facet f is  <normal_f, x> = offset_f.
        """
        if self.dim != 3:
            raise GeometryError("needs-solid", "facets require a 3-dimensional body")
        if self._facet_loops is None:
            self._facet_loops, self._facet_normals, self._facet_offsets = _merged_facets(self.vertices, self.diameter)
        return self._facet_loops, self._facet_normals, self._facet_offsets

    def triangle_cover(self) -> np.ndarray:
        """(T,3,3) triangles covering the boundary surface.

        Triangular facets appear as-is; larger facets are fanned from their
        centroid, which keeps the cover canonical under point symmetry.
        """
        if self._triangles is None:
            loops, _, _ = self.facet_data()
            tris = []
            for loop in loops:
                pts = self.vertices[loop]
                if len(loop) == 3:
                    tris.append(pts)
                else:
                    c = pts.mean(axis=0)
                    for i in range(len(loop)):
                        tris.append(np.stack([c, pts[i], pts[(i + 1) % len(loop)]]))
            self._triangles = np.asarray(tris)
        return self._triangles

    def plane(self):
        """For a planar body: (origin point, (2,3) orthonormal basis, unit normal)."""
        if self.dim != 2:
            raise GeometryError("needs-planar", "plane data requires a 2-dimensional body")
        if self._plane is None:
            origin = self.vertices.mean(axis=0)
            c = self.vertices - origin
            _, _, vt = np.linalg.svd(c, full_matrices=True)
            basis = vt[:2]
            normal = np.cross(basis[0], basis[1])
            self._plane = (origin, basis, unit(normal))
        return self._plane

    def loop(self) -> np.ndarray:
        """For a planar body: vertex ids ordered counterclockwise in-plane."""
        origin, basis, _ = self.plane()
        if self._loop is None:
            xy = (self.vertices - origin) @ basis.T
            ctr = xy.mean(axis=0)
            ang = np.arctan2(xy[:, 1] - ctr[1], xy[:, 0] - ctr[0])
            self._loop = np.argsort(ang)
        return self._loop

    def edges(self):
        """Vertex-id pairs of the 1-skeleton (dim 3: facet-loop edges; dim 2:
        polygon sides; dim 1: the segment itself)."""
        if self.dim == 3:
            loops, _, _ = self.facet_data()
            seen = set()
            for loop in loops:
                for i in range(len(loop)):
                    a, b = int(loop[i]), int(loop[(i + 1) % len(loop)])
                    seen.add((min(a, b), max(a, b)))
            return sorted(seen)
        if self.dim == 2:
            lp = self.loop()
            return [(int(lp[i]), int(lp[(i + 1) % len(lp)])) for i in range(len(lp))]
        if self.dim == 1:
            return [(0, 1)]
        return []

    def __repr__(self):
        return f"ConvexBody(dim={self.dim}, vertices={len(self.vertices)}, diameter={self.diameter:.6g})"


# -- construction ---------------------------------------------------------


def hull_reduce(points) -> ConvexBody:
    """Reduce a finite point set to the extreme points of its hull.

    Duplicates within TAU_GEOM collapse first; the affine rank then selects
    a point, segment, polygon or solid representation.  Vertices of the
    result are always a subset of the input points.
    """
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        raise GeometryError("empty-body", "no input points")
    pts = np.atleast_2d(pts)
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise GeometryError("degenerate", "input must be an (n,3) point array")
    if not np.isfinite(pts).all():
        raise GeometryError("degenerate", "non-finite coordinates")

    keys = np.round(pts / TAU_GEOM).astype(np.int64)
    _, uniq = np.unique(keys, axis=0, return_index=True)
    pts = pts[np.sort(uniq)]

    mean = pts.mean(axis=0)
    c = pts - mean
    radius = float(np.sqrt((c * c).sum(-1)).max())
    if radius <= TAU_GEOM:
        return ConvexBody(pts[:1], 0)

    _, _, vt = np.linalg.svd(c, full_matrices=True)
    extents = np.abs(c @ vt.T).max(axis=0)
    rank = int((extents > TAU_RANK * 2.0 * radius).sum())

    if rank <= 1:
        t = c @ vt[0]
        return ConvexBody(pts[[int(np.argmin(t)), int(np.argmax(t))]], 1)
    if rank == 2:
        xy = c @ vt[:2].T
        try:
            hull = ConvexHull(xy)
        except QhullError as exc:
            raise GeometryError("degenerate", f"planar hull failed: {exc}") from exc
        return ConvexBody(pts[hull.vertices], 2)
    try:
        hull = ConvexHull(pts)
    except QhullError as exc:
        raise GeometryError("degenerate", f"hull failed: {exc}") from exc
    return ConvexBody(pts[hull.vertices], 3)


def dimension(body: ConvexBody) -> int:
    """Affine dimension of the body (0..3)."""
    return body.dim


def _merged_facets(verts: np.ndarray, diam: float):
    """Group qhull's simplicial facets into maximal coplanar facets and
    return ordered vertex loops plus outward unit normals and offsets."""
    hull = ConvexHull(verts)
    eq = hull.equations
    scale = max(1.0, diam)
    key = np.round(np.column_stack([eq[:, :3] / 1e-7, eq[:, 3] / (1e-7 * scale)])).astype(np.int64)
    groups: dict
    groups = {}
    for i, k in enumerate(map(tuple, key)):
        groups.setdefault(k, []).append(i)

    loops, normals, offsets = [], [], []
    for idx in groups.values():
        vids = np.unique(hull.simplices[idx])
        n = unit(eq[idx, :3].mean(axis=0))
        pts = verts[vids]
        ctr = pts.mean(axis=0)
        b1 = _any_perp(n)
        b2 = np.cross(n, b1)
        ang = np.arctan2((pts - ctr) @ b2, (pts - ctr) @ b1)
        order = np.argsort(ang)
        loops.append(vids[order])
        normals.append(n)
        offsets.append(float(n @ ctr))
    return loops, np.asarray(normals), np.asarray(offsets)


def _any_perp(n: np.ndarray) -> np.ndarray:
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(n)))] = 1.0
    return unit(np.cross(n, axis))


# -- Steiner point ----------------------------------------------------------


def _steiner_exact(body: ConvexBody) -> np.ndarray:
    """Evaluate the support-integral center in closed form.

    Integrating the support function against the direction over the unit
    sphere weights each vertex by the measure of its cone of supporting
    directions; cross terms from adjacent cones cancel along shared edges.
    The result is additive under Minkowski combination, commutes with
    orthogonal maps exactly, and is the midpoint / angular-average in lower
    dimensions.
    """
    v = body.vertices
    if body.dim == 0:
        return v[0].copy()
    if body.dim == 1:
        return 0.5 * (v[0] + v[1])
    if body.dim == 2:
        origin, basis, _ = body.plane()
        lp = body.loop()
        xy = (v[lp] - origin) @ basis.T
        nxt = np.roll(xy, -1, axis=0)
        prv = np.roll(xy, 1, axis=0)
        a = xy - prv
        b = nxt - xy
        ext = np.arctan2(a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0], (a * b).sum(1))
        ext = np.clip(ext, 0.0, np.pi)
        w = ext / ext.sum()
        return (w[:, None] * v[lp]).sum(axis=0)

    loops, normals, _ = body.facet_data()
    incident = [[] for _ in range(len(v))]
    for f, loop in enumerate(loops):
        for vid in loop:
            incident[int(vid)].append(f)
    w = np.zeros(len(v))
    for i, fs in enumerate(incident):
        ns = normals[fs]
        s = unit(ns.mean(axis=0))
        b1 = _any_perp(s)
        b2 = np.cross(s, b1)
        order = np.argsort(np.arctan2(ns @ b2, ns @ b1))
        w[i] = _spherical_polygon_area(ns[order])
    w = w / w.sum()
    return (w[:, None] * v).sum(axis=0)


def _spherical_polygon_area(ns: np.ndarray) -> float:
    """Solid angle of the convex spherical polygon with ordered unit vertices."""
    total = 0.0
    a = ns[0]
    for i in range(1, len(ns) - 1):
        b, c = ns[i], ns[i + 1]
        num = abs(float(a @ np.cross(b, c)))
        den = 1.0 + float(a @ b) + float(b @ c) + float(c @ a)
        total += 2.0 * np.arctan2(num, den)
    return total


def steiner_point(body: ConvexBody) -> np.ndarray:
    """Minkowski-additive, motion-equivariant center of the body."""
    return body.steiner.copy()


def is_centered(body: ConvexBody, tol: float | None = None) -> bool:
    if tol is None:
        tol = TAU_STEINER * max(body.diameter, 1e-12)
    return bool(np.linalg.norm(body.steiner) <= tol)


def require_centered(body: ConvexBody, what: str = "body"):
    if not is_centered(body):
        raise GeometryError("not-centered", f"{what} has nonzero center {body.steiner}")


# -- symmetry ---------------------------------------------------------------


def _vertex_sets_match(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    if len(a) != len(b):
        return False
    d = np.sqrt(((a[:, None, :] - b[None, :, :]) ** 2).sum(-1))
    return bool((d.min(axis=1) <= tol).all() and (d.min(axis=0) <= tol).all())


def is_point_symmetric(body: ConvexBody, tol: float | None = None) -> bool:
    """True when the body equals its image under x -> -x."""
    if tol is None:
        tol = TAU_SYM * max(body.diameter, 1e-12)
    return _vertex_sets_match(body.vertices, -body.vertices, tol)


def is_reflection_symmetric(body: ConvexBody, axis, tol: float | None = None) -> bool:
    """True when the body is preserved by the reflection fixing axis^perp."""
    if tol is None:
        tol = TAU_SYM * max(body.diameter, 1e-12)
    u = unit(axis)
    refl = body.vertices - 2.0 * np.outer(body.vertices @ u, u)
    return _vertex_sets_match(body.vertices, refl, tol)


def reflect(body: ConvexBody, axis) -> ConvexBody:
    """Mirror image across the plane orthogonal to ``axis`` through 0."""
    u = unit(axis)
    verts = body.vertices - 2.0 * np.outer(body.vertices @ u, u)
    s = body.steiner - 2.0 * (body.steiner @ u) * u
    return ConvexBody(verts, body.dim, _steiner=s)


def transform_body(body: ConvexBody, q: np.ndarray) -> ConvexBody:
    """Apply an orthogonal map to the body (vertex-wise, structure reused)."""
    out = ConvexBody(body.vertices @ q.T, body.dim, _steiner=body.steiner @ q.T)
    if body._facet_loops is not None:
        out._facet_loops = body._facet_loops
        out._facet_normals = body._facet_normals @ q.T
        out._facet_offsets = body._facet_offsets
    if body._triangles is not None:
        out._triangles = body._triangles @ q.T
    return out


def symmetrize(body: ConvexBody, axis) -> ConvexBody:
    """Minkowski average of the body with its mirror image."""
    return minkowski_combine(0.5, body, 0.5, reflect(body, axis))


def translate_body(body: ConvexBody, shift) -> ConvexBody:
    shift = np.asarray(shift, dtype=float)
    out = ConvexBody(body.vertices + shift, body.dim, _steiner=body.steiner + shift)
    if body._facet_loops is not None:
        out._facet_loops = body._facet_loops
        out._facet_normals = body._facet_normals
        out._facet_offsets = body._facet_offsets + body._facet_normals @ shift
    return out


def scale_body(body: ConvexBody, factor: float) -> ConvexBody:
    if factor < 0:
        raise GeometryError("negative-scale", "scale factor must be nonnegative")
    if factor == 0:
        return hull_reduce(body.vertices[:1] * 0.0)
    return ConvexBody(body.vertices * factor, body.dim, _steiner=body.steiner * factor)


# -- Minkowski / Hausdorff ---------------------------------------------------


def minkowski_combine(a: float, first: ConvexBody, b: float, second: ConvexBody) -> ConvexBody:
    """Hull of a*first + b*second (pointwise sums of scaled vertices)."""
    if a < 0 or b < 0:
        raise GeometryError("negative-scale", f"coefficients must be nonnegative, got {a}, {b}")
    pts = (a * first.vertices)[:, None, :] + (b * second.vertices)[None, :, :]
    return hull_reduce(pts.reshape(-1, 3))


def contract_to_ball(t: float, body: ConvexBody, ball: ConvexBody) -> ConvexBody:
    """Straight-line contraction t*ball + (1-t)*body in the Minkowski sense.

    t = 0 reproduces the body and t = 1 the ball exactly (same vertex
    sets); intermediate values interpolate 1-Lipschitz-ly in each slot
    for the Hausdorff distance.
    """
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise GeometryError("parameter-range", f"contraction time must lie in [0, 1], got {t}")
    return minkowski_combine(t, ball, 1.0 - t, body)


def _point_triangles_closest(p: np.ndarray, tris: np.ndarray):
    """Closest points on each triangle to p: returns (points (T,3), dists (T,))."""
    a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
    ab, ac = b - a, c - a
    ap = p - a
    d1, d2 = (ab * ap).sum(1), (ac * ap).sum(1)
    bp = p - b
    d3, d4 = (ab * bp).sum(1), (ac * bp).sum(1)
    cp = p - c
    d5, d6 = (ab * cp).sum(1), (ac * cp).sum(1)
    va = d3 * d6 - d5 * d4
    vb = d5 * d2 - d1 * d6
    vc = d1 * d4 - d3 * d2

    q = np.empty_like(a)
    done = np.zeros(len(tris), dtype=bool)

    def settle(mask, pts):
        sel = mask & ~done
        q[sel] = pts[sel] if pts.ndim == 2 else pts
        done[sel] = True

    settle((d1 <= 0) & (d2 <= 0), a)
    settle((d3 >= 0) & (d4 <= d3), b)
    settle((d6 >= 0) & (d5 <= d6), c)

    with np.errstate(divide="ignore", invalid="ignore"):
        t_ab = np.nan_to_num(d1 / (d1 - d3), nan=0.5)
        settle((vc <= 0) & (d1 >= 0) & (d3 <= 0), a + t_ab[:, None] * ab)
        t_ac = np.nan_to_num(d2 / (d2 - d6), nan=0.5)
        settle((vb <= 0) & (d2 >= 0) & (d6 <= 0), a + t_ac[:, None] * ac)
        t_bc = np.nan_to_num((d4 - d3) / ((d4 - d3) + (d5 - d6)), nan=0.5)
        settle((va <= 0) & (d4 - d3 >= 0) & (d5 - d6 >= 0), b + t_bc[:, None] * (c - b))
        denom = va + vb + vc
        vv = np.nan_to_num(vb / denom, nan=1 / 3)
        ww = np.nan_to_num(vc / denom, nan=1 / 3)
    settle(np.ones(len(tris), dtype=bool), a + vv[:, None] * ab + ww[:, None] * ac)

    d = np.sqrt(((q - p) ** 2).sum(1))
    return q, d


def _point_segment_closest(p: np.ndarray, a: np.ndarray, b: np.ndarray):
    ab = b - a
    denom = float(ab @ ab)
    t = 0.0 if denom <= 0 else float(np.clip((p - a) @ ab / denom, 0.0, 1.0))
    q = a + t * ab
    return q, float(np.linalg.norm(p - q))


def contains_point(body: ConvexBody, x, tol: float | None = None) -> bool:
    """Membership in the solid body, with a scale-relative slack."""
    x = np.asarray(x, dtype=float)
    if tol is None:
        tol = TAU_GEOM * max(1.0, body.diameter)
    if body.dim == 3:
        _, normals, offsets = body.facet_data()
        return bool((normals @ x <= offsets + tol).all())
    return point_body_distance(x, body) <= tol


def nearest_point(body: ConvexBody, x) -> np.ndarray:
    """Metric projection onto the solid body (exact for polytopes)."""
    x = np.asarray(x, dtype=float)
    if body.dim == 0:
        return body.vertices[0].copy()
    if body.dim == 1:
        q, _ = _point_segment_closest(x, body.vertices[0], body.vertices[1])
        return q
    if body.dim == 2:
        origin, basis, normal = body.plane()
        p = x - normal * float((x - origin) @ normal)
        lp = body.loop()
        xy = (body.vertices[lp] - origin) @ basis.T
        pt = (p - origin) @ basis.T
        if _polygon_contains(xy, pt, TAU_GEOM * max(1.0, body.diameter)):
            return p
        best, bd = None, np.inf
        ring = body.vertices[lp]
        for i in range(len(ring)):
            q, d = _point_segment_closest(x, ring[i], ring[(i + 1) % len(ring)])
            if d < bd:
                best, bd = q, d
        return best
    if contains_point(body, x):
        return x.copy()
    qs, ds = _point_triangles_closest(x, body.triangle_cover())
    return qs[int(np.argmin(ds))]


def point_body_distance(x, body: ConvexBody) -> float:
    """Euclidean distance from a point to the solid body."""
    x = np.asarray(x, dtype=float)
    if body.dim == 0:
        return float(np.linalg.norm(x - body.vertices[0]))
    if body.dim == 1:
        return _point_segment_closest(x, body.vertices[0], body.vertices[1])[1]
    if body.dim == 3 and contains_point(body, x):
        return 0.0
    return float(np.linalg.norm(x - nearest_point(body, x)))


def _polygon_contains(xy: np.ndarray, pt: np.ndarray, tol: float) -> bool:
    nxt = np.roll(xy, -1, axis=0)
    e = nxt - xy
    rel = pt - xy
    cross = e[:, 0] * rel[:, 1] - e[:, 1] * rel[:, 0]
    return bool((cross >= -tol * np.sqrt((e * e).sum(1).clip(min=1e-300))).all())


def hausdorff_distance(a: ConvexBody, b: ConvexBody) -> float:
    """Exact Hausdorff distance between two bodies (max vertex defect)."""
    d1 = max(point_body_distance(v, b) for v in a.vertices)
    d2 = max(point_body_distance(w, a) for w in b.vertices)
    return max(d1, d2)


# -- gauges and projections --------------------------------------------------


def gauge_point(body: ConvexBody, x) -> float:
    """Minkowski functional of the body at x, with 0 in the relative interior.

    Returns +inf for points outside the body's span.
    """
    x = np.asarray(x, dtype=float)
    scale = max(1.0, body.diameter)
    if body.dim == 3:
        _, normals, offsets = body.facet_data()
        if offsets.min() <= TAU_GEOM * scale:
            raise GeometryError("not-centered", "origin is not interior to the body")
        return max(0.0, float((normals @ x / offsets).max()))
    if body.dim == 2:
        origin, basis, normal = body.plane()
        if abs(float(origin @ normal)) > 1e-7 * scale:
            raise GeometryError("not-centered", "body's plane misses the origin")
        if abs(float(x @ normal)) > 1e-7 * scale:
            return np.inf
        lp = body.loop()
        xy = body.vertices[lp] @ basis.T
        nxt = np.roll(xy, -1, axis=0)
        e = nxt - xy
        m = np.column_stack([e[:, 1], -e[:, 0]])
        cvals = (m * xy).sum(1)
        if cvals.min() <= TAU_GEOM * scale:
            raise GeometryError("not-centered", "origin is not interior to the polygon")
        xi = x @ basis.T
        return max(0.0, float((m @ xi / cvals).max()))
    if body.dim == 1:
        a, b = body.vertices
        u = unit(b - a)
        t = float(x @ u)
        if np.linalg.norm(x - t * u) > 1e-7 * scale:
            return np.inf
        lo, hi = sorted((float(a @ u), float(b @ u)))
        if not (lo < -TAU_GEOM * scale < TAU_GEOM * scale < hi):
            raise GeometryError("not-centered", "origin is not interior to the segment")
        return t / hi if t >= 0 else t / lo
    return 0.0 if float(np.linalg.norm(x)) <= TAU_GEOM else np.inf


def central_project(body: ConvexBody, x) -> np.ndarray:
    """Radial projection of x onto the body's relative boundary."""
    if body.dim <= 1:
        raise GeometryError("needs-solid", "central projection needs dim >= 2")
    require_centered(body)
    x = np.asarray(x, dtype=float)
    if float(np.linalg.norm(x)) <= TAU_GEOM:
        raise GeometryError("ray-undefined", "cannot project the origin")
    q = gauge_point(body, x)
    if not np.isfinite(q) or q <= 0:
        raise GeometryError("degenerate", "point is outside the body's span")
    return x / q


def ortho_project(target, x):
    """Orthogonal projection of a point (or body) onto a subspace or body.

    Point onto Subspace or ConvexBody -> Vec3; ConvexBody onto Subspace ->
    ConvexBody (vertex-wise projection, re-hulled).
    """
    if isinstance(x, ConvexBody):
        if not isinstance(target, Subspace):
            raise GeometryError("degenerate", "body-wise projection needs a subspace target")
        return hull_reduce(np.array([ortho_project(target, v) for v in x.vertices]))
    x = np.asarray(x, dtype=float)
    if isinstance(target, Subspace):
        if target.kind == "line":
            return target.vec * float(target.vec @ x)
        return x - target.vec * float(target.vec @ x)
    if isinstance(target, ConvexBody):
        return nearest_point(target, x)
    raise GeometryError("degenerate", f"cannot project onto {type(target).__name__}")


def gauge_inclusion_eps(a: ConvexBody, b: ConvexBody) -> float:
    """Least eps with (1-eps)-shrunk cross containments between two centered
    bodies of equal dimension and span.  Exact for polytopes."""
    if a.dim != b.dim:
        raise GeometryError("incomparable", f"dimension mismatch {a.dim} vs {b.dim}")
    require_centered(a, "first body")
    require_centered(b, "second body")
    if a.dim == 0:
        return 0.0
    if a.dim == 2:
        _, _, na = a.plane()
        _, _, nb = b.plane()
        if float(np.linalg.norm(np.cross(na, nb))) > 1e-7:
            raise GeometryError("incomparable", "planar bodies span different planes")
    if a.dim == 1:
        ua = unit(a.vertices[1] - a.vertices[0])
        ub = unit(b.vertices[1] - b.vertices[0])
        if float(np.linalg.norm(np.cross(ua, ub))) > 1e-7:
            raise GeometryError("incomparable", "segments span different lines")
    r1 = max(gauge_point(b, v) for v in a.vertices)
    r2 = max(gauge_point(a, w) for w in b.vertices)
    if not (np.isfinite(r1) and np.isfinite(r2)):
        raise GeometryError("incomparable", "bodies do not share a span")
    return max(0.0, max(r1, r2) - 1.0)


# -- serialization -----------------------------------------------------------


def body_to_json(body: ConvexBody) -> dict:
    return {"vertices": body.vertices.tolist()}


def body_from_json(obj: dict) -> ConvexBody:
    if "vertices" not in obj:
        raise GeometryError("empty-body", "missing 'vertices' field")
    return hull_reduce(obj["vertices"])
