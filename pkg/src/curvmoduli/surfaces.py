"""Intrinsic metrics carried by convex bodies, realized as finite samples.

A solid body contributes its boundary surface with the geodesic metric; a
planar body contributes the double (two copies glued along the polygon
boundary); a segment and a point are carried as themselves.  Geodesics on
surfaces are measured on a canonical triangulation subdivided to
``mesh_level`` with straight-chord edges inside each facet, giving O(h)
convergence; double distances are exact (per-edge closed-form crossing
minimization), so only surface samples carry discretization error.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import dijkstra

from .bodies import ConvexBody, central_project, is_centered, is_reflection_symmetric, nearest_point, unit
from .errors import GeometryError
from .tolerances import TAU_GEOM

SHEET_NAMES = {0: "sheet1", 1: "sheet2", 2: "boundary"}
SHEET_CODES = {v: k for k, v in SHEET_NAMES.items()}


class MetricSample:
    """Finite metric space sampled from a realized structure.

    points are indexed 0..n-1; ``sheets`` is None except for doubles, where
    each point carries sheet1/sheet2/boundary membership.
    """

    def __init__(self, kind: str, positions: np.ndarray, dist: np.ndarray,
                 sheets=None, mesh_level=None):
        self.kind = kind
        self.positions = np.asarray(positions, dtype=float)
        self.dist = np.asarray(dist, dtype=float)
        self.sheets = None if sheets is None else np.asarray(sheets, dtype=np.int8)
        self.mesh_level = mesh_level

    def __len__(self):
        return len(self.positions)

    def diameter(self) -> float:
        return float(self.dist.max()) if len(self) else 0.0

    def sheet_name(self, i: int):
        if self.sheets is None:
            return None
        return SHEET_NAMES[int(self.sheets[i])]

    def find_node(self, pos, sheet=None, tol: float = 1e-7) -> int:
        """Index of the node at ``pos`` (and sheet, for doubles)."""
        pos = np.asarray(pos, dtype=float)
        d = np.sqrt(((self.positions - pos) ** 2).sum(1))
        if sheet is not None and self.sheets is not None:
            code = SHEET_CODES[sheet] if isinstance(sheet, str) else int(sheet)
            d = np.where((self.sheets == code) | (self.sheets == 2), d, np.inf)
        i = int(np.argmin(d))
        if d[i] > tol * max(1.0, float(np.abs(self.positions).max())):
            raise GeometryError("not-on-surface", f"no sample node near {pos}")
        return i

    def to_json(self) -> dict:
        points = []
        for i, p in enumerate(self.positions):
            points.append({"id": i, "pos": p.tolist(), "sheet": self.sheet_name(i)})
        return {"kind": self.kind, "points": points, "dist": self.dist.tolist(),
                "mesh_level": self.mesh_level}

    @staticmethod
    def from_json(obj: dict) -> "MetricSample":
        pts = obj["points"]
        pos = np.array([p["pos"] for p in pts], dtype=float)
        sheets = None
        if any(p.get("sheet") is not None for p in pts):
            sheets = np.array([SHEET_CODES.get(p.get("sheet"), 0) for p in pts], dtype=np.int8)
        return MetricSample(obj["kind"], pos, np.array(obj["dist"], dtype=float),
                            sheets=sheets, mesh_level=obj.get("mesh_level"))


def check_metric_sample(sample: MetricSample, tol_factor: float = 1e-9) -> float:
    """Largest metric-axiom violation (diag, symmetry, triangle inequality)."""
    d = sample.dist
    scale = max(d.max(), 1e-30)
    worst = float(np.abs(np.diag(d)).max()) if len(sample) else 0.0
    worst = max(worst, float(np.abs(d - d.T).max()))
    worst = max(worst, float(-d.min()) if d.min() < 0 else 0.0)
    for k in range(len(sample)):
        slack = d - (d[:, k, None] + d[None, k, :])
        worst = max(worst, float(slack.max()))
    if worst > tol_factor * scale:
        raise GeometryError("degenerate", f"metric axioms violated by {worst:.3g}")
    return worst


def _lerp(a: np.ndarray, b: np.ndarray, t: float) -> np.ndarray:
    return a * (1.0 - t) + b * t


# -- geodesic graph on a boundary surface -----------------------------------


class _SurfaceGraph:
    """Shortest-path graph over a body's boundary.

    Nodes are facet-triangulation corners (vertices plus fan centroids of
    non-triangular facets) and dyadic subdivision points of every triangle
    side; each triangle contributes a clique over its border nodes, so
    within-facet legs are exact chords and facet crossings snap to border
    nodes.  Non-triangular facets are fanned from their centroid, which
    keeps the construction canonical under point symmetry.
    """

    def __init__(self, body: ConvexBody, mesh_level: int):
        self.body = body
        self.mesh_level = int(mesh_level)
        loops, _, _ = body.facet_data()
        verts = body.vertices

        pos_blocks = [verts]
        next_id = len(verts)
        triangles = []  # corner id triples
        for loop in loops:
            if len(loop) == 3:
                triangles.append((int(loop[0]), int(loop[1]), int(loop[2])))
            else:
                cid = next_id
                next_id += 1
                pos_blocks.append(verts[loop].mean(axis=0)[None, :])
                for i in range(len(loop)):
                    triangles.append((cid, int(loop[i]), int(loop[(i + 1) % len(loop)])))
        corner_pos = np.vstack(pos_blocks)

        n_sub = 2 ** self.mesh_level
        edge_ids: dict = {}
        edge_blocks = []
        for (c0, c1, c2) in triangles:
            for a, b in ((c0, c1), (c1, c2), (c2, c0)):
                key = (min(a, b), max(a, b))
                if key not in edge_ids:
                    ids = np.arange(next_id, next_id + n_sub - 1)
                    next_id += n_sub - 1
                    lo, hi = key
                    block = np.stack([_lerp(corner_pos[lo], corner_pos[hi], k / n_sub)
                                      for k in range(1, n_sub)]) if n_sub > 1 else np.zeros((0, 3))
                    edge_ids[key] = ids
                    edge_blocks.append(block)
        self.positions = np.vstack([corner_pos] + edge_blocks) if edge_blocks else corner_pos
        self.n_corners = len(corner_pos)
        self.triangles = triangles
        self.edge_ids = edge_ids

        self.tri_border = []
        for (c0, c1, c2) in triangles:
            ids = [c0, c1, c2]
            for a, b in ((c0, c1), (c1, c2), (c2, c0)):
                ids.extend(edge_ids[(min(a, b), max(a, b))])
            self.tri_border.append(np.array(ids, dtype=np.int64))

    def sample_ids(self, sample_level: int) -> np.ndarray:
        """Corner nodes plus side subdivision nodes at a coarser dyadic level."""
        stride = 2 ** (self.mesh_level - sample_level)
        ids = list(range(self.n_corners))
        n_sub = 2 ** self.mesh_level
        for eids in self.edge_ids.values():
            ids.extend(int(eids[k - 1]) for k in range(stride, n_sub, stride))
        return np.unique(np.array(ids, dtype=np.int64))

    def locate_triangles(self, p: np.ndarray, tol: float):
        """Triangles whose plane patch contains p (within tol)."""
        from .bodies import _point_triangles_closest

        tris = self.positions[np.array(self.triangles)]
        _, d = _point_triangles_closest(p, tris)
        return np.nonzero(d <= tol)[0]

    def shortest_paths(self, extra_pos, extra_tris, source_ids, keep_mask=None):
        """Dijkstra distances from sources, with optional extra nodes attached
        to given triangles and an optional node filter (for caps)."""
        n0 = len(self.positions)
        all_pos = np.vstack([self.positions, extra_pos]) if len(extra_pos) else self.positions
        n = len(all_pos)

        rows, cols = [], []
        for border in self.tri_border:
            iu, ju = np.triu_indices(len(border), 1)
            rows.append(border[iu])
            cols.append(border[ju])
        for j, tids in enumerate(extra_tris):
            nid = n0 + j
            for t in tids:
                b = self.tri_border[t]
                rows.append(np.full(len(b), nid, dtype=np.int64))
                cols.append(b)
            # extra nodes sharing a triangle talk directly
            for k in range(j + 1, len(extra_tris)):
                if set(tids) & set(extra_tris[k]):
                    rows.append(np.array([nid], dtype=np.int64))
                    cols.append(np.array([n0 + k], dtype=np.int64))
        rows = np.concatenate(rows)
        cols = np.concatenate(cols)
        if keep_mask is not None:
            mask = np.concatenate([keep_mask, np.ones(n - n0, dtype=bool)])
            ok = mask[rows] & mask[cols]
            rows, cols = rows[ok], cols[ok]
        w = np.sqrt(((all_pos[rows] - all_pos[cols]) ** 2).sum(1))
        graph = coo_matrix((np.concatenate([w, w]),
                            (np.concatenate([rows, cols]), np.concatenate([cols, rows]))),
                           shape=(n, n)).tocsr()
        return dijkstra(graph, directed=False, indices=source_ids)


def _surface_graph(body: ConvexBody, mesh_level: int) -> _SurfaceGraph:
    cache = body.__dict__.setdefault("_sgraph_cache", {})
    if mesh_level not in cache:
        cache[mesh_level] = _SurfaceGraph(body, mesh_level)
    return cache[mesh_level]


def _snap_to_surface(body: ConvexBody, p: np.ndarray) -> np.ndarray:
    if is_centered(body) and float(np.linalg.norm(p)) > TAU_GEOM:
        return central_project(body, p)
    return nearest_point(body, p)


def boundary_metric(body: ConvexBody, mesh_level: int = 4, basepoints=(),
                    sample_level=None, halfspace=None, kind: str = "boundary3d") -> MetricSample:
    """Geodesic metric sample of the boundary surface of a solid body.

    Sample nodes are the triangulation corners and side nodes at
    ``sample_level`` (default min(mesh_level, 2)); shortest paths run on the
    full ``mesh_level`` graph.  Basepoints are snapped to the surface (by
    central projection when the body is centered) and rejected when farther
    than 1% of the diameter away.  ``halfspace=(axis, offset)`` restricts
    nodes and paths to <axis, x> >= offset.
    """
    if body.dim != 3:
        raise GeometryError("needs-solid", "boundary metric requires a solid body")
    if sample_level is None:
        sample_level = min(mesh_level, 2)
    if not (0 <= sample_level <= mesh_level):
        raise GeometryError("parameter-range", "sample_level must lie in [0, mesh_level]")
    g = _surface_graph(body, mesh_level)
    scale = max(1.0, body.diameter)

    keep = None
    if halfspace is not None:
        axis, offset = halfspace
        keep = g.positions @ np.asarray(axis, dtype=float) >= offset

    sids = g.sample_ids(sample_level)
    if keep is not None:
        sids = sids[keep[sids]]

    extra_pos, extra_tris, base_ids = [], [], []
    for raw in basepoints:
        p = np.asarray(raw, dtype=float)
        q = _snap_to_surface(body, p)
        if float(np.linalg.norm(q - p)) > 0.01 * scale:
            raise GeometryError("not-on-surface", f"basepoint {p} is too far from the surface")
        if keep is not None:
            axis, offset = halfspace
            if float(q @ np.asarray(axis, dtype=float)) < offset - TAU_GEOM * scale:
                raise GeometryError("not-on-surface", f"basepoint {p} lies outside the cap")
        near = np.sqrt(((g.positions[sids] - q) ** 2).sum(1))
        hit = int(np.argmin(near))
        if near[hit] <= 1e-9 * scale:
            base_ids.append(int(sids[hit]))
            continue
        if extra_pos:
            prev = np.sqrt(((np.asarray(extra_pos) - q) ** 2).sum(1))
            k = int(np.argmin(prev))
            if prev[k] <= 1e-9 * scale:
                base_ids.append(len(g.positions) + k)
                continue
        tids = g.locate_triangles(q, 1e-7 * scale)
        if len(tids) == 0:
            raise GeometryError("not-on-surface", f"basepoint {p} misses the triangulation")
        base_ids.append(len(g.positions) + len(extra_pos))
        extra_pos.append(q)
        extra_tris.append(list(map(int, tids)))

    node_ids = np.concatenate([sids, np.array(base_ids, dtype=np.int64)]) if base_ids else sids
    node_ids, first = np.unique(node_ids, return_index=True)
    extra_pos = np.asarray(extra_pos, dtype=float).reshape(-1, 3)

    dmat = g.shortest_paths(extra_pos, extra_tris, node_ids, keep_mask=keep)
    sub = dmat[:, node_ids]
    sub = 0.5 * (sub + sub.T)

    all_pos = np.vstack([g.positions, extra_pos]) if len(extra_pos) else g.positions
    sample = MetricSample(kind, all_pos[node_ids], sub, mesh_level=mesh_level)
    sample.node_ids = node_ids  # graph ids, kept for diagnostics
    return sample


# -- doubled polygons --------------------------------------------------------


def _polygon_frame(polygon: ConvexBody):
    origin, basis, normal = polygon.plane()
    ring3 = polygon.vertices[polygon.loop()]
    xy = (ring3 - origin) @ basis.T
    return origin, basis, normal, ring3, xy


def _to_plane(origin, basis, pts):
    return (np.atleast_2d(pts) - origin) @ basis.T


def cross_sheet_distance(xa, ya, ring_xy) -> np.ndarray:
    """Exact length of the shortest sheet-crossing path for point pairs.

    For each boundary edge the optimal crossing of |x-z| + |z-y| over the
    edge line is found by reflecting x, then clamped to the edge segment
    (the objective is convex along the edge, so the clamp is exact).
    """
    xa = np.atleast_2d(xa)
    ya = np.atleast_2d(ya)
    best = np.full(len(xa), np.inf)
    m = len(ring_xy)
    for i in range(m):
        a = ring_xy[i]
        b = ring_xy[(i + 1) % m]
        e = b - a
        ee = float(e @ e)
        if ee <= 0:
            continue
        # reflect x across the edge line
        rel = xa - a
        along = (rel @ e) / ee
        foot = a + along[:, None] * e
        xr = 2.0 * foot - xa
        d1 = ya - xr
        denom = e[0] * d1[:, 1] - e[1] * d1[:, 0]
        num = (xr[:, 0] - a[0]) * d1[:, 1] - (xr[:, 1] - a[1]) * d1[:, 0]
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.where(np.abs(denom) > 1e-300, num / denom, np.nan)
        t = np.clip(np.nan_to_num(t, nan=0.0), 0.0, 1.0)
        p = a + t[:, None] * e
        cand = np.sqrt(((xa - p) ** 2).sum(1)) + np.sqrt(((ya - p) ** 2).sum(1))
        # degenerate (parallel) rows: compare both endpoints as well
        p0 = np.sqrt(((xa - a) ** 2).sum(1)) + np.sqrt(((ya - a) ** 2).sum(1))
        p1 = np.sqrt(((xa - b) ** 2).sum(1)) + np.sqrt(((ya - b) ** 2).sum(1))
        best = np.minimum(best, np.minimum(cand, np.minimum(p0, p1)))
    return best


def _boundary_ring_nodes(ring3, target: int):
    m = len(ring3)
    lens = np.sqrt(((np.roll(ring3, -1, axis=0) - ring3) ** 2).sum(1))
    per = float(lens.sum())
    nodes = []
    for i in range(m):
        n_e = max(1, int(round(target * lens[i] / per)))
        a, b = ring3[i], ring3[(i + 1) % m]
        for k in range(n_e):
            nodes.append(_lerp(a, b, k / n_e))
    return np.asarray(nodes)


def _interior_nodes(center, bnodes, rings: int, stride: int):
    out = [center[None, :]]
    for j in range(1, rings + 1):
        r = j / (rings + 1)
        out.append(center + r * (bnodes[::stride] - center))
    return np.vstack(out)


def double_metric(polygon: ConvexBody, boundary_res: int = 512, basepoints=(),
                  boundary_target: int = 64, rings: int = 2, ring_stride: int = 2,
                  kind: str = "double2d") -> MetricSample:
    """Two copies of a convex polygon glued along the boundary, with exact
    distances.

    Same-sheet pairs are chordal; sheet-crossing pairs minimize the crossing
    point over every boundary edge in closed form.  ``boundary_res`` caps
    the boundary node count; basepoints are (position, sheet) pairs.
    """
    if polygon.dim != 2:
        raise GeometryError("needs-planar", "double requires a planar body")
    origin, basis, normal, ring3, ring_xy = _polygon_frame(polygon)
    scale = max(1.0, polygon.diameter)

    bnodes = _boundary_ring_nodes(ring3, min(boundary_target, boundary_res))
    inodes = _interior_nodes(polygon.steiner, bnodes, rings, ring_stride)

    positions = [bnodes, inodes, inodes]
    sheets = [np.full(len(bnodes), 2, dtype=np.int8),
              np.zeros(len(inodes), dtype=np.int8),
              np.ones(len(inodes), dtype=np.int8)]

    pos = np.vstack(positions)
    sh = np.concatenate(sheets)

    for raw in basepoints:
        p, tag = raw
        p = np.asarray(p, dtype=float)
        q = nearest_point(polygon, p)
        if float(np.linalg.norm(q - p)) > 0.01 * scale:
            raise GeometryError("not-on-surface", f"basepoint {p} is outside the polygon")
        on_boundary = cross_sheet_distance(_to_plane(origin, basis, q),
                                           _to_plane(origin, basis, q), ring_xy)[0] <= 2e-9 * scale
        code = 2 if on_boundary else SHEET_CODES[tag] if isinstance(tag, str) else int(tag)
        match = np.sqrt(((pos - q) ** 2).sum(1))
        same = (match <= 1e-9 * scale) & ((sh == code) | (sh == 2) | (code == 2))
        if same.any():
            continue
        pos = np.vstack([pos, q[None, :]])
        sh = np.concatenate([sh, np.array([code], dtype=np.int8)])

    d = _double_distances(pos, sh, origin, basis, ring_xy)
    return MetricSample(kind, pos, d, sheets=sh)


def _double_distances(pos, sh, origin, basis, ring_xy) -> np.ndarray:
    diff = pos[:, None, :] - pos[None, :, :]
    d = np.sqrt((diff * diff).sum(-1))
    cross = ((sh[:, None] == 0) & (sh[None, :] == 1)) | ((sh[:, None] == 1) & (sh[None, :] == 0))
    ii, jj = np.nonzero(np.triu(cross))
    if len(ii):
        xy = _to_plane(origin, basis, pos)
        dc = cross_sheet_distance(xy[ii], xy[jj], ring_xy)
        d[ii, jj] = dc
        d[jj, ii] = dc
    return d


def sheet_swap(sample: MetricSample) -> MetricSample:
    """The involution exchanging the two sheets of a double (boundary fixed)."""
    if sample.sheets is None:
        raise GeometryError("not-a-double", f"{sample.kind} sample has no sheets")
    perm = sheet_swap_permutation(sample)
    new_sheets = sample.sheets.copy()
    new_sheets[sample.sheets == 0] = 1
    new_sheets[sample.sheets == 1] = 0
    d = sample.dist[perm][:, perm]
    return MetricSample(sample.kind, sample.positions.copy(), d,
                        sheets=new_sheets, mesh_level=sample.mesh_level)


def sheet_swap_permutation(sample: MetricSample) -> np.ndarray:
    """Node permutation realizing the sheet exchange."""
    if sample.sheets is None:
        raise GeometryError("not-a-double", f"{sample.kind} sample has no sheets")
    pos, sh = sample.positions, sample.sheets
    scale = max(1.0, float(np.abs(pos).max()))
    perm = np.arange(len(pos))
    for i in range(len(pos)):
        if sh[i] == 2:
            continue
        want = 1 - sh[i]
        d = np.sqrt(((pos - pos[i]) ** 2).sum(1))
        d = np.where(sh == want, d, np.inf)
        j = int(np.argmin(d))
        if d[j] > 1e-7 * scale:
            raise GeometryError("not-a-double", "sheets are not mirror samples")
        perm[i] = j
    return perm


# -- envelopes ----------------------------------------------------------------


def envelopes(body: ConvexBody, v, x):
    """Heights (lo, hi) of the boundary sheets over shadow point x along v.

    The segment body  {x + t v}  is computed from the facet inequalities;
    an empty intersection raises outside-shadow.
    """
    if body.dim != 3:
        raise GeometryError("needs-solid", "envelopes require a solid body")
    v = unit(v)
    x = np.asarray(x, dtype=float)
    x = x - v * float(v @ x)
    _, normals, offsets = body.facet_data()
    scale = max(1.0, body.diameter)
    coef = normals @ v
    rhs = offsets - normals @ x
    lo, hi = -np.inf, np.inf
    tol = TAU_GEOM * scale
    for c, r in zip(coef, rhs):
        if c > tol:
            hi = min(hi, r / c)
        elif c < -tol:
            lo = max(lo, r / c)
        elif r < -tol:
            raise GeometryError("outside-shadow", f"{x} is outside the body's shadow")
    if lo > hi + tol:
        raise GeometryError("outside-shadow", f"{x} is outside the body's shadow")
    if lo > hi:
        lo = hi = 0.5 * (lo + hi)
    return float(lo), float(hi)


# -- realization maps ---------------------------------------------------------


def segment_sample(body: ConvexBody, n_nodes: int = 17, basepoints=(),
                   halfspace=None, kind: str = "segment") -> MetricSample:
    if body.dim != 1:
        raise GeometryError("degenerate", "segment sample requires a 1-dimensional body")
    a, b = body.vertices
    u = unit(b - a)
    ta, tb = float(a @ u), float(b @ u)
    if ta > tb:
        ta, tb = tb, ta
    shift = a - float(a @ u) * u
    if halfspace is not None:
        axis, offset = halfspace
        s = float(np.asarray(axis) @ u)
        if abs(s) > 0.5:
            if s > 0:
                ta = max(ta, offset)
            else:
                tb = min(tb, offset)
    ts = list(np.linspace(ta, tb, n_nodes))
    scale = max(1.0, body.diameter)
    for raw in basepoints:
        p = np.asarray(raw, dtype=float)
        t = float(p @ u)
        if float(np.linalg.norm(p - (shift + t * u))) > 0.01 * scale or not (ta - 1e-9 <= t <= tb + 1e-9):
            raise GeometryError("not-on-surface", f"basepoint {p} is not on the segment")
        if min(abs(t - s) for s in ts) > 1e-12 * scale:
            ts.append(t)
    ts = np.array(sorted(ts))
    pos = shift + ts[:, None] * u
    d = np.abs(ts[:, None] - ts[None, :])
    return MetricSample(kind, pos, d)


def flat_sample(polygon: ConvexBody, basepoints=(), boundary_target: int = 64,
                rings: int = 2, ring_stride: int = 2, kind: str = "disc-flat") -> MetricSample:
    """A planar body with its chordal metric (no doubling)."""
    if polygon.dim != 2:
        raise GeometryError("needs-planar", "flat sample requires a planar body")
    _, _, _, ring3, _ = _polygon_frame(polygon)
    scale = max(1.0, polygon.diameter)
    bnodes = _boundary_ring_nodes(ring3, boundary_target)
    inodes = _interior_nodes(polygon.steiner, bnodes, rings, ring_stride)
    pos = np.vstack([bnodes, inodes])
    for raw in basepoints:
        p = np.asarray(raw, dtype=float)
        q = nearest_point(polygon, p)
        if float(np.linalg.norm(q - p)) > 0.01 * scale:
            raise GeometryError("not-on-surface", f"basepoint {p} is outside the polygon")
        if np.sqrt(((pos - q) ** 2).sum(1)).min() > 1e-9 * scale:
            pos = np.vstack([pos, q[None, :]])
    diff = pos[:, None, :] - pos[None, :, :]
    return MetricSample(kind, pos, np.sqrt((diff * diff).sum(-1)))


def realize_sphere(body: ConvexBody, mesh_level: int = 4, sample_level=None,
                   basepoints=(), **kw) -> MetricSample:
    """Closed nonnegatively curved structure carried by a body.

    Solid -> boundary surface; planar -> double; segment -> itself;
    point -> one-point space.
    """
    if body.dim == 3:
        return boundary_metric(body, mesh_level=mesh_level, sample_level=sample_level,
                               basepoints=basepoints)
    if body.dim == 2:
        return double_metric(body, basepoints=basepoints, **kw)
    if body.dim == 1:
        return segment_sample(body, basepoints=basepoints, **kw)
    return MetricSample("point", body.vertices[:1], np.zeros((1, 1)))


def realize_disc(body: ConvexBody, axis, mesh_level: int = 4, sample_level=None,
                 basepoints=(), cut_nodes: int = 9, **kw) -> MetricSample:
    """Disc-like structure carried by a reflection-symmetric pair (body, axis).

    Solid -> boundary cap over the halfspace; planar with axis off-plane ->
    the flat body; planar with axis in-plane -> half of the double; segment
    with axis along it -> half segment.
    """
    axis = unit(axis)
    if body.dim == 0:
        raise GeometryError("degenerate", "a point carries no disc structure")
    if not is_reflection_symmetric(body, axis):
        raise GeometryError("not-alpha-symmetric", "body is not symmetric about the axis plane")
    scale = max(1.0, body.diameter)
    tol = TAU_GEOM * scale

    if body.dim == 3:
        return boundary_metric(body, mesh_level=mesh_level, sample_level=sample_level,
                               basepoints=basepoints, halfspace=(axis, -tol), kind="disc-cap")

    if body.dim == 2:
        _, _, normal = body.plane()
        if abs(float(axis @ normal)) > 0.5:
            return flat_sample(body, basepoints=basepoints, kind="disc-flat", **kw)
        return _half_double(body, axis, basepoints, cut_nodes=cut_nodes, **kw)

    a, b = body.vertices
    u = unit(b - a)
    if abs(float(axis @ u)) <= 0.5:
        return segment_sample(body, basepoints=basepoints, kind="disc-flat")
    return segment_sample(body, basepoints=basepoints, halfspace=(axis, 0.0),
                          kind="disc-half-segment")


def _half_double(polygon: ConvexBody, axis, basepoints, boundary_target: int = 64,
                 rings: int = 2, ring_stride: int = 2, cut_nodes: int = 9,
                 boundary_res: int = 512) -> MetricSample:
    """Both sheets of the double restricted to the halfspace side of the axis.

    The restriction is convex in the double, so distances are the full
    double's distances; the two copies of the cut segment stay distinct.
    """
    origin, basis, normal, ring3, ring_xy = _polygon_frame(polygon)
    axis = unit(axis)
    scale = max(1.0, polygon.diameter)
    tol = TAU_GEOM * scale

    full = double_metric(polygon, boundary_res=boundary_res, basepoints=basepoints,
                         boundary_target=boundary_target, rings=rings,
                         ring_stride=ring_stride, kind="disc-half-double")
    keep = full.positions @ axis >= -tol
    pos = full.positions[keep]
    sh = full.sheets[keep]

    # sample the cut chord on both sheets (endpoints are boundary points)
    hits = []
    m = len(ring3)
    for i in range(m):
        a, b = ring3[i], ring3[(i + 1) % m]
        ha, hb = float(a @ axis), float(b @ axis)
        if (ha < -tol and hb < -tol) or (ha > tol and hb > tol):
            continue
        if abs(hb - ha) <= tol:
            continue
        t = ha / (ha - hb)
        if -1e-12 <= t <= 1 + 1e-12:
            hits.append(_lerp(a, b, float(np.clip(t, 0.0, 1.0))))
    if len(hits) >= 2:
        hits = np.asarray(hits)
        far = np.argmax(((hits[:, None, :] - hits[None, :, :]) ** 2).sum(-1))
        i0, i1 = np.unravel_index(far, (len(hits), len(hits)))
        e0, e1 = hits[i0], hits[i1]
        chord = [_lerp(e0, e1, k / (cut_nodes + 1)) for k in range(1, cut_nodes + 1)]
        extra_pos = [e0[None, :], e1[None, :]]
        extra_sh = [np.array([2, 2], dtype=np.int8)]
        if chord:
            chord = np.asarray(chord)
            extra_pos += [chord, chord]
            extra_sh += [np.zeros(len(chord), dtype=np.int8), np.ones(len(chord), dtype=np.int8)]
        cand_pos = np.vstack(extra_pos)
        cand_sh = np.concatenate(extra_sh)
        fresh = []
        for k in range(len(cand_pos)):
            d = np.sqrt(((pos - cand_pos[k]) ** 2).sum(1))
            dup = (d <= 1e-9 * scale) & ((sh == cand_sh[k]) | (sh == 2) | (cand_sh[k] == 2))
            if not dup.any():
                fresh.append(k)
        if fresh:
            pos = np.vstack([pos, cand_pos[fresh]])
            sh = np.concatenate([sh, cand_sh[fresh]])

    d = _double_distances(pos, sh, origin, basis, ring_xy)
    return MetricSample("disc-half-double", pos, d, sheets=sh)
