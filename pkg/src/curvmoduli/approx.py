"""Explicit approximation maps between realized structures.

Each lemma builds a concrete node-to-node correspondence together with a
certificate: the hypothesis value eps, the a priori bound nu, and the
measured distortions and roundtrip defect.  Maps land exactly on sample
nodes by seeding each side's sample with the images of the other side's
nodes; where a map's image cannot be closed under composition (the scaling
maps), the residual generation is snapped to the nearest compatible node
and the snap cost shows up honestly in the measured values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bodies import (ConvexBody, Subspace, central_project, gauge_inclusion_eps,
                     is_point_symmetric, nearest_point, ortho_project,
                     require_centered, unit)
from .errors import GeometryError, HypothesisError
from .gh import Correspondence, distortion, roundtrip_defects
from .surfaces import (SHEET_CODES, SHEET_NAMES, MetricSample, boundary_metric,
                       double_metric, envelopes, segment_sample)
from .tolerances import TAU_GEOM


@dataclass
class Certificate:
    """Hypothesis value, a priori bound, and measured defects of a lemma run."""

    kind: str
    eps: float
    nu: float
    dis_f: float
    dis_g: float
    roundtrip: float
    equivariant: Optional[bool] = None

    def to_json(self) -> dict:
        return {"kind": self.kind, "eps": self.eps, "nu": self.nu,
                "dis_f": self.dis_f, "dis_g": self.dis_g,
                "roundtrip": self.roundtrip, "equivariant": self.equivariant}

    @staticmethod
    def from_json(obj: dict) -> "Certificate":
        return Certificate(obj["kind"], obj["eps"], obj["nu"], obj["dis_f"],
                           obj["dis_g"], obj["roundtrip"], obj.get("equivariant"))


def _certify(corr: Correspondence, eps: float, nu: float, equivariant) -> Certificate:
    dis_f, dis_g = distortion(corr)
    rf, rg = roundtrip_defects(corr)
    return Certificate(corr.kind, float(eps), float(nu), dis_f, dis_g,
                       max(rf, rg), equivariant)


def nearest_compatible_node(sample: MetricSample, pos, code=None) -> int:
    """Nearest node, restricted to a compatible sheet when both sides carry one."""
    pos = np.asarray(pos, dtype=float)
    d = np.sqrt(((sample.positions - pos) ** 2).sum(1))
    if code is not None and sample.sheets is not None and code != 2:
        d = np.where((sample.sheets == code) | (sample.sheets == 2), d, np.inf)
    return int(np.argmin(d))


def nearest_node_correspondence(s1: MetricSample, s2: MetricSample,
                                kind: str = "nearest") -> Correspondence:
    """Generic snapped correspondence by ambient position (sheet-aware)."""
    c1 = s1.sheets if s1.sheets is not None else [None] * len(s1)
    c2 = s2.sheets if s2.sheets is not None else [None] * len(s2)
    fmap = [nearest_compatible_node(s2, s1.positions[i], c1[i]) for i in range(len(s1))]
    gmap = [nearest_compatible_node(s1, s2.positions[j], c2[j]) for j in range(len(s2))]
    return Correspondence(s1, s2, np.array(fmap), np.array(gmap), kind=kind)


# -- lemma: boundary surfaces of nested solids --------------------------------


def approx_boundaries(b1: ConvexBody, b2: ConvexBody, mesh_level: int = 3,
                      sample_level=None):
    """Correspondence between the boundary surfaces of two centered solids.

    Both maps are central projections along rays, so the roundtrip is exact;
    nu = 6(Diam + Diam')eps with eps the mutual gauge inclusion value.
    """
    for b in (b1, b2):
        if b.dim != 3:
            raise GeometryError("needs-solid", "boundary lemma needs solid bodies")
        require_centered(b, "boundary lemma input")
    eps = gauge_inclusion_eps(b1, b2)
    if eps >= 1:
        raise HypothesisError("bodies are not within unit gauge distance")
    nu = 6.0 * (b1.diameter + b2.diameter) * eps

    s10 = boundary_metric(b1, mesh_level=mesh_level, sample_level=sample_level)
    s20 = boundary_metric(b2, mesh_level=mesh_level, sample_level=sample_level)
    back_imgs = [central_project(b1, q) for q in s20.positions]
    s1 = boundary_metric(b1, mesh_level=mesh_level, sample_level=sample_level,
                         basepoints=back_imgs)
    fwd_imgs = [central_project(b2, p) for p in s1.positions]
    s2 = boundary_metric(b2, mesh_level=mesh_level, sample_level=sample_level,
                         basepoints=fwd_imgs)

    fmap = [s2.find_node(p) for p in fwd_imgs]
    gmap = [s1.find_node(central_project(b1, q)) for q in s2.positions]
    corr = Correspondence(s1, s2, np.array(fmap), np.array(gmap), kind="boundaries-3to3")
    flag = bool(is_point_symmetric(b1) and is_point_symmetric(b2))
    return corr, _certify(corr, eps, nu, flag)


# -- lemma: flattening a thin solid onto the double of its shadow -------------


def _ring_distance(ring_xy, pts_xy) -> np.ndarray:
    pts_xy = np.atleast_2d(pts_xy)
    best = np.full(len(pts_xy), np.inf)
    m = len(ring_xy)
    for i in range(m):
        a, b = ring_xy[i], ring_xy[(i + 1) % m]
        e = b - a
        t = np.clip(((pts_xy - a) @ e) / max(float(e @ e), 1e-300), 0.0, 1.0)
        foot = a + t[:, None] * e
        best = np.minimum(best, np.sqrt(((pts_xy - foot) ** 2).sum(1)))
    return best


def approx_flatten(b: ConvexBody, v, mesh_level: int = 3, sample_level=None):
    """Correspondence between a solid's boundary and the double of its shadow.

    Forward classifies each surface node against the envelope midpoint over
    its shadow (lateral nodes go to boundary points); backward lifts sheet
    points to the envelopes and boundary points to the midpoint, so the
    backward roundtrip is exactly zero.  nu = 10 eps with
    eps = max distance from the body to the shadow plane (attained at a
    vertex).
    """
    if b.dim != 3:
        raise GeometryError("needs-solid", "flattening needs a solid body")
    v = unit(v)
    shadow = ortho_project(Subspace("plane", v), b)
    eps = float(np.abs(b.vertices @ v).max())
    nu = 10.0 * eps
    scale = max(1.0, b.diameter)
    origin, basis, _ = shadow.plane()
    ring_xy = (shadow.vertices[shadow.loop()] - origin) @ basis.T

    def f_point(x):
        s = x - v * float(v @ x)
        s = nearest_point(shadow, s)
        lat = _ring_distance(ring_xy, ((s - origin) @ basis.T)[None, :])[0]
        if lat <= 1e-9 * scale:
            return s, 2
        lo, hi = envelopes(b, v, s)
        return s, (0 if float(v @ x) >= 0.5 * (lo + hi) else 1)

    def g_point(y, code):
        lo, hi = envelopes(b, v, y)
        t = hi if code == 0 else lo if code == 1 else 0.5 * (lo + hi)
        return y + t * v

    sb0 = boundary_metric(b, mesh_level=mesh_level, sample_level=sample_level)
    dk0 = double_metric(shadow)

    g_first = [g_point(dk0.positions[j], int(dk0.sheets[j])) for j in range(len(dk0))]
    g_second = [g_point(*f_point(x)) for x in sb0.positions]
    sb = boundary_metric(b, mesh_level=mesh_level, sample_level=sample_level,
                         basepoints=list(g_first) + list(g_second))
    f_imgs = [f_point(x) for x in sb.positions]
    dk = double_metric(shadow, basepoints=[(p, SHEET_NAMES[c]) for p, c in f_imgs])

    fmap = [dk.find_node(p, sheet=c) for p, c in f_imgs]
    gmap = [sb.find_node(g_point(dk.positions[j], int(dk.sheets[j])))
            for j in range(len(dk))]
    corr = Correspondence(sb, dk, np.array(fmap), np.array(gmap), kind="flatten-3to2")
    return corr, _certify(corr, eps, nu, bool(is_point_symmetric(b)))


# -- lemma: projecting a thin structure onto a segment -------------------------


def approx_to_segment(d: ConvexBody, v, mesh_level: int = 3, sample_level=None,
                      n_nodes: int = 17):
    """Correspondence from a realized structure to its projection segment.

    Forward is the orthogonal projection onto the line along v; the
    certificate bounds only the forward distortion ((8+pi)eps for a solid,
    4 eps for a double), the backward map being nearest-preimage plumbing.
    """
    v = unit(v)
    if d.dim == 2:
        _, _, normal = d.plane()
        if abs(float(v @ normal)) > 1e-7:
            raise GeometryError("axis-outside-span", "direction must lie in the body's span")
        # stride 1 keeps the interior rings negation-closed for symmetric bodies
        src = double_metric(d, ring_stride=1)
        kind, factor = "tosegment-2to1", 4.0
    elif d.dim == 3:
        src = boundary_metric(d, mesh_level=mesh_level, sample_level=sample_level)
        kind, factor = "tosegment-3to1", 8.0 + np.pi
    elif d.dim == 1:
        a, b = d.vertices
        if abs(float(v @ unit(b - a))) < 1 - 1e-7:
            raise GeometryError("axis-outside-span", "direction must lie along the segment")
        src = segment_sample(d, n_nodes=n_nodes)
        kind, factor = "tosegment-1to1", 4.0
    else:
        raise HypothesisError("projection lemma needs a positive-dimensional body")

    perp = d.vertices - np.outer(d.vertices @ v, v)
    eps = float(np.sqrt((perp ** 2).sum(1)).max())
    nu = factor * eps

    seg = ortho_project(Subspace("line", v), d)
    ts = src.positions @ v
    tgt = segment_sample(seg, n_nodes=n_nodes, basepoints=[t * v for t in ts])
    t_tgt = tgt.positions @ v
    fmap = [int(np.argmin(np.abs(t_tgt - t))) for t in ts]
    gmap = [int(np.argmin(np.abs(ts - t))) for t in t_tgt]
    corr = Correspondence(src, tgt, np.array(fmap), np.array(gmap), kind=kind)
    return corr, _certify(corr, eps, nu, bool(is_point_symmetric(d)))


# -- lemma: doubles of nested polygons -----------------------------------------


def approx_doubles(k1: ConvexBody, k2: ConvexBody, **double_kw):
    """Correspondence between the doubles of two centered coplanar polygons.

    Interior sheet points map by the (1-eps) contraction (staying on their
    sheet); boundary points map by central projection.  nu =
    4(Diam + Diam')eps.
    """
    for k in (k1, k2):
        if k.dim != 2:
            raise GeometryError("needs-planar", "double lemma needs planar bodies")
        require_centered(k, "double lemma input")
    eps = gauge_inclusion_eps(k1, k2)
    if eps >= 1:
        raise HypothesisError("polygons are not within unit gauge distance")
    nu = 4.0 * (k1.diameter + k2.diameter) * eps

    def fwd(pos, code, target_body):
        if code == 2:
            return central_project(target_body, pos), 2
        return (1.0 - eps) * pos, code

    s20 = double_metric(k2, **double_kw)
    g_first = [fwd(s20.positions[j], int(s20.sheets[j]), k1) for j in range(len(s20))]
    s1 = double_metric(k1, basepoints=[(p, SHEET_NAMES[c]) for p, c in g_first], **double_kw)
    f_imgs = [fwd(s1.positions[i], int(s1.sheets[i]), k2) for i in range(len(s1))]
    s2 = double_metric(k2, basepoints=[(p, SHEET_NAMES[c]) for p, c in f_imgs], **double_kw)

    fmap = [s2.find_node(p, sheet=c) for p, c in f_imgs]
    gmap = [nearest_compatible_node(s1, *fwd(s2.positions[j], int(s2.sheets[j]), k1))
            for j in range(len(s2))]
    corr = Correspondence(s1, s2, np.array(fmap), np.array(gmap), kind="doubles-2to2")
    flag = bool(is_point_symmetric(k1) and is_point_symmetric(k2))
    return corr, _certify(corr, eps, nu, flag)


# -- lemma: collinear segments --------------------------------------------------


def approx_segments(l1: ConvexBody, l2: ConvexBody, n_nodes: int = 17):
    """Correspondence between two centered collinear segments via x -> (1-eps)x.

    nu = 2(Diam + Diam')eps.
    """
    for seg in (l1, l2):
        if seg.dim != 1:
            raise GeometryError("degenerate", "segment lemma needs segments")
        require_centered(seg, "segment lemma input")
    eps = gauge_inclusion_eps(l1, l2)
    if eps >= 1:
        raise HypothesisError("segments are not within unit gauge distance")
    nu = 2.0 * (l1.diameter + l2.diameter) * eps

    s20 = segment_sample(l2, n_nodes=n_nodes)
    s1 = segment_sample(l1, n_nodes=n_nodes,
                        basepoints=[(1.0 - eps) * q for q in s20.positions])
    s2 = segment_sample(l2, n_nodes=n_nodes,
                        basepoints=[(1.0 - eps) * p for p in s1.positions])
    fmap = [s2.find_node((1.0 - eps) * p) for p in s1.positions]
    gmap = [nearest_compatible_node(s1, (1.0 - eps) * q) for q in s2.positions]
    corr = Correspondence(s1, s2, np.array(fmap), np.array(gmap), kind="segments-1to1")
    flag = bool(is_point_symmetric(l1) and is_point_symmetric(l2))
    return corr, _certify(corr, eps, nu, flag)


# -- collapsing bound and span alignment ---------------------------------------


def collapse_bound(d: ConvexBody) -> float:
    """A priori bound pi * Diam on the intrinsic diameter of the realization."""
    return float(np.pi * d.diameter)


def _relative_inradius(body: ConvexBody, c: np.ndarray) -> float:
    if body.dim == 3:
        _, normals, offsets = body.facet_data()
        return float((offsets - normals @ c).min())
    if body.dim == 2:
        origin, basis, _ = body.plane()
        ring = (body.vertices[body.loop()] - origin) @ basis.T
        cc = ((c - origin) @ basis.T)[None, :]
        return float(_ring_distance(ring, cc)[0])
    if body.dim == 1:
        a, b = body.vertices
        return float(min(np.linalg.norm(a - c), np.linalg.norm(b - c)))
    return 0.0


def _span_basis(body: ConvexBody):
    if body.dim == 3:
        return [np.eye(3)[i] for i in range(3)]
    if body.dim == 2:
        _, basis, _ = body.plane()
        return [basis[0], basis[1]]
    if body.dim == 1:
        a, b = body.vertices
        return [unit(b - a)]
    return []


def _rotation_between(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Rotation taking unit a to unit b, identity on their common orthocomplement."""
    c = float(a @ b)
    w = np.cross(a, b)
    s2 = float(w @ w)
    if s2 < 1e-30:
        if c > 0:
            return np.eye(3)
        # opposite vectors: rotate by pi about a deterministic perpendicular
        p = np.eye(3)[int(np.argmin(np.abs(a)))]
        p = unit(p - a * float(a @ p))
        return 2.0 * np.outer(p, p) - np.eye(3)
    wx = np.array([[0, -w[2], w[1]], [w[2], 0, -w[0]], [-w[1], w[0], 0.0]])
    return np.eye(3) + wx + wx @ wx * ((1.0 - c) / s2)


def align_spans(d: ConvexBody, d_target: ConvexBody, axis=None) -> np.ndarray:
    """Orthogonal map carrying a subspace of Span(d) onto Span(d_target).

    Built from near-basis points of d: for each target direction w the point
    of d nearest to c + r w (r the relative inradius at the centroid c) is
    orthonormalized and rotated onto w.  With an axis pair (a, a_target)
    the map sends a to a_target exactly.  Tends to the identity as the
    bodies approach each other.
    """
    if d_target.dim == 0:
        return np.eye(3)
    if d_target.dim > d.dim:
        raise GeometryError("incomparable", "target span exceeds the source span")

    pairs = []
    if axis is not None:
        a_src, a_dst = axis
        pairs.append((unit(a_src), unit(a_dst)))

    c = d.steiner
    r = max(_relative_inradius(d, c), 1e-12)
    for w in _span_basis(d_target):
        wp = w.astype(float).copy()
        for _, wf in pairs:
            wp -= wf * float(wf @ wp)
        n = float(np.linalg.norm(wp))
        if n < 1e-9:
            continue
        wp /= n
        u = nearest_point(d, c + r * wp) - c
        for vf, _ in pairs:
            u -= vf * float(vf @ u)
        nu_ = float(np.linalg.norm(u))
        if nu_ < 1e-9 * r:
            u = None
            for e in np.eye(3):
                cand = e.copy()
                for vf, _ in pairs:
                    cand -= vf * float(vf @ cand)
                if float(np.linalg.norm(cand)) > 0.5:
                    u = cand
                    break
        v = unit(u)
        pairs.append((v, wp))

    phi = np.eye(3)
    done_w = []
    for v, w in pairs:
        v_cur = phi @ v
        for wf in done_w:
            v_cur -= wf * float(wf @ v_cur)
        v_cur = unit(v_cur)
        phi = _rotation_between(v_cur, w) @ phi
        done_w.append(w)
    return phi
