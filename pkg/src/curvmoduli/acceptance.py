"""Property-based acceptance suite.

Twelve numbered checks exercise the full pipeline at desk scale: the
approximation-lemma certificates, the geodesic mesh against an exact
unfolding oracle, the collapsing and homotopy bounds, Steiner-point
axioms, equivariance flags, the Prokhorov solver against a grid-search
oracle, composition subadditivity, lattice canonicalization, and the
moduli invariants.  Each check returns a structured result with
plot-ready rows; run_all executes them in order.

The oracles used here (cube unfolding, Prokhorov grid search, lattice
exhaustive search) are deliberately independent re-computations that
share no code with the implementations they judge.
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import approx, gh
from .bodies import (
    ConvexBody,
    contract_to_ball,
    hausdorff_distance,
    hull_reduce,
    minkowski_combine,
    scale_body,
    steiner_point,
    transform_body,
)
from .classify import CLASSIFICATION_TABLE, SURFACE_TYPES, admissible, classify
from .errors import GeometryError
from .moduli import (
    ConcaveDensity,
    FlatStructure,
    LatticeBasis,
    cd_density_check,
    cstar_quotient_distance,
    interval_contract,
    lattice_reduce,
    structure_invariants,
)
from .sampling import (
    cube,
    icosahedron,
    random_polygon,
    random_polytope,
    random_segment,
    regular_polygon,
    slab,
)
from .surfaces import MetricSample, boundary_metric, double_metric, realize_sphere, sheet_swap
from .tolerances import MESH_ALLOWANCE, TAU_STEINER


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    details: dict
    rows: list = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] criterion {self.number:2d} {self.name} ({self.seconds:.1f}s)"

    def to_json(self) -> dict:
        # deliberately excludes wall time so reports stay byte-identical
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "details": self.details,
            "rows": self.rows,
        }


def _rng(seed: int, tag: int) -> np.random.Generator:
    return np.random.default_rng([seed, tag])


def _random_rotation(rng) -> np.ndarray:
    from scipy.spatial.transform import Rotation

    return Rotation.from_rotvec(rng.normal(size=3)).as_matrix()


# -- oracles ------------------------------------------------------------------


_CUBE_FACES = [(ax, sg) for ax in range(3) for sg in (1.0, -1.0)]


def _face_frame(ax: int, sg: float):
    """Origin and in-face axes (u, v) of a cube face of half-side 1."""
    normal = np.zeros(3)
    normal[ax] = sg
    u = np.zeros(3)
    u[(ax + 1) % 3] = 1.0
    v = np.cross(normal, u)
    return normal, u, v


def _faces_of(p: np.ndarray):
    return [(ax, sg) for ax, sg in _CUBE_FACES if abs(p[ax] - sg) < 1e-12]


def unfold_cube_distance(p, q) -> float:
    """Exact cube-surface distance via unfoldings of the [-1,1]^3 cube.

    Valid for point pairs whose geodesic crosses at most two edges:
    same-face pairs use the planar distance, adjacent faces a two-face
    unfolding around the shared edge, and opposite faces a three-face
    unfolding through each of the four faces between them.  Every
    candidate strip is flattened and the shortest straight segment wins.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    best = math.inf
    for ax1, sg1 in _faces_of(p):
        for ax2, sg2 in _faces_of(q):
            if ax1 == ax2 and sg1 == sg2:
                best = min(best, float(np.linalg.norm(p - q)))
                continue
            if ax1 == ax2:
                # opposite faces: unfold through each face between them
                for mid in range(3):
                    if mid == ax1:
                        continue
                    ax3 = 3 - ax1 - mid
                    for sgm in (1.0, -1.0):
                        across = 4.0 - sgm * (p[mid] + q[mid])
                        along = p[ax3] - q[ax3]
                        best = min(best, math.hypot(across, along))
                continue
            # shared edge: coordinates ax1 = sg1 and ax2 = sg2
            ax3 = 3 - ax1 - ax2
            # flatten both faces into the (edge, across) plane: the path
            # runs from p (distance a1 from the edge) to q (a2 past it)
            a1 = abs(p[ax2] - sg2)
            a2 = abs(q[ax1] - sg1)
            across = a1 + a2
            along = p[ax3] - q[ax3]
            best = min(best, math.hypot(across, along))
    return best


def prokhorov_grid_oracle(mu: gh.DiscreteMeasure, nu: gh.DiscreteMeasure, step: float = 1e-4) -> float:
    """Prokhorov distance by plain grid search over epsilon.

    Scans a coarse grid for the first feasible value, then refines that
    bracket at the requested step.  Feasibility is monotone in epsilon,
    so the two-stage scan returns the same point as a full fine scan.
    Subsets are enumerated explicitly; no machinery is shared with the
    bisection solver.
    """
    ids1, w1 = mu.ids, mu.masses
    ids2, w2 = nu.ids, nu.masses
    d = mu.sample.dist

    def feasible(eps: float) -> bool:
        for ia, wa, ib, wb in ((ids1, w1, ids2, w2), (ids2, w2, ids1, w1)):
            cross = d[np.ix_(ia, ib)] <= eps + 1e-12
            for r in range(1, len(ia) + 1):
                for subset in itertools.combinations(range(len(ia)), r):
                    mass_a = float(wa[list(subset)].sum())
                    mass_b = float(wb[cross[list(subset)].any(axis=0)].sum())
                    if mass_a > mass_b + eps + 1e-15:
                        return False
        return True

    def first_feasible(lo: float, hi: float, h: float) -> float:
        n = int(math.ceil((hi - lo) / h)) + 1
        for i in range(n):
            eps = lo + i * h
            if feasible(eps):
                return eps
        return hi

    hi = max(1.0, float(d.max()), abs(mu.total() - nu.total())) + step
    coarse = first_feasible(0.0, hi, 100 * step)
    return first_feasible(max(0.0, coarse - 100 * step), coarse, step)


def lattice_shortest_oracle(basis: LatticeBasis, reach: int = 3):
    """Successive minima of a lattice by exhaustive coefficient search.

    Scans integer combinations in [-reach, reach]^2 for the shortest
    nonzero vector and the shortest one independent of it, returning
    (|v1|, |v2|, |<v1, v2>|).  Exact whenever the reduced coefficients
    fall inside the scan box, as they do for mild input bases.
    """
    cands = []
    for m in range(-reach, reach + 1):
        for n in range(-reach, reach + 1):
            if m == 0 and n == 0:
                continue
            v = m * basis.v1 + n * basis.v2
            cands.append((float(v @ v), m, n, v))
    cands.sort(key=lambda item: item[0])
    _, m1, n1, v1 = cands[0]
    for _, m2, n2, v2 in cands[1:]:
        if m1 * n2 - n1 * m2 != 0:
            dot = abs(float(v1 @ v2))
            # normalize the residual sign freedom the same way any
            # reduced description would
            dot = min(dot, abs(dot - float(v1 @ v1)))
            return (
                math.sqrt(float(v1 @ v1)),
                math.sqrt(float(v2 @ v2)),
                dot,
            )
    raise GeometryError("degenerate-lattice", "no independent pair found in scan box")


# -- body generators -----------------------------------------------------------


def _paired_trim(body: ConvexBody, rng, lo: float = 0.85, hi: float = 0.97) -> ConvexBody:
    """Radially shrink antipodal vertex pairs by shared factors.

    Preserves point symmetry (hence the Steiner point at the origin)
    while deforming the shape enough to keep the inclusion gauge away
    from zero.
    """
    verts = body.vertices
    factors = np.zeros(len(verts))
    seen = {}
    for i, v in enumerate(verts):
        key = tuple(np.round(v, 9))
        neg = tuple(np.round(-v, 9))
        if neg in seen:
            factors[i] = factors[seen[neg]]
        else:
            factors[i] = rng.uniform(lo, hi)
            seen[key] = i
    return hull_reduce(verts * factors[:, None])


def _thin_rod(rng) -> tuple:
    """A dim-3 rod around a random axis, with its axis direction."""
    from .bodies import unit

    axis = unit(rng.normal(size=3))
    half_len = rng.uniform(0.8, 1.5)
    radius = rng.uniform(0.04, 0.1) * half_len
    seg = np.array([axis * half_len, -axis * half_len])
    cross = icosahedron()
    pts = (seg[:, None, :] + radius * cross.vertices[None, :, :]).reshape(-1, 3)
    return hull_reduce(pts), axis


def _thin_rect(rng) -> tuple:
    """A dim-2 thin rectangle in a random plane, with its long direction."""
    from .bodies import unit

    u = unit(rng.normal(size=3))
    w = np.cross(u, rng.normal(size=3))
    w = unit(w)
    half_len = rng.uniform(0.8, 1.5)
    half_wid = rng.uniform(0.04, 0.1) * half_len
    pts = np.array(
        [
            half_len * u + half_wid * w,
            half_len * u - half_wid * w,
            -half_len * u + half_wid * w,
            -half_len * u - half_wid * w,
        ]
    )
    return hull_reduce(pts), u


# -- criteria ------------------------------------------------------------------


def _crit_lemma_bounds(seed: int):
    rng = _rng(seed, 1)
    rows = []
    worst = -math.inf
    fail = 0

    def record(kind, param, cert, allowance):
        nonlocal worst, fail
        measured = max(cert.dis_f, cert.dis_g)
        bound = cert.nu + allowance
        ok = measured <= bound
        if not ok:
            fail += 1
        worst = max(worst, measured - bound)
        rows.append(
            {
                "criterion": 1,
                "case": kind,
                "parameter": param,
                "measured": round(measured, 9),
                "bound": round(cert.nu, 9),
                "allowance": round(allowance, 9),
            }
        )

    # solid pairs: scalings and symmetric trims
    for i in range(20):
        base = random_polytope(rng, n_points=10, symmetric=True)
        if i % 2 == 0:
            lam = float(rng.uniform(1.0, 1.3))
            other = scale_body(base, lam)
            param = lam
        else:
            other = _paired_trim(base, rng)
            param = 0.0
        _, cert = approx.approx_boundaries(base, other, mesh_level=4, sample_level=1)
        allowance = MESH_ALLOWANCE * max(base.diameter, other.diameter)
        record("3to3", param, cert, allowance)

    # slabs flattened onto their shadow
    thicknesses = [0.2, 0.1, 0.05]
    for i in range(20):
        poly = random_polygon(rng, n_points=8, symmetric=True)
        h = thicknesses[i % 3]
        body = slab(poly, h)
        _, cert = approx.approx_flatten(body, (0.0, 0.0, 1.0), mesh_level=4, sample_level=1)
        record("3to2", h, cert, MESH_ALLOWANCE * body.diameter)

    # planar pairs compared through their doubles
    for i in range(20):
        poly = random_polygon(rng, n_points=9, symmetric=True)
        if i % 2 == 0:
            lam = float(rng.uniform(1.05, 1.3))
            other = scale_body(poly, lam)
            param = lam
        else:
            other = _paired_trim(poly, rng, lo=0.85, hi=0.95)
            param = 0.0
        _, cert = approx.approx_doubles(poly, other, boundary_target=48)
        allowance = MESH_ALLOWANCE * max(poly.diameter, other.diameter)
        record("2to2", param, cert, allowance)

    # segment pairs
    for _ in range(20):
        seg = random_segment(rng)
        lam = float(rng.uniform(1.05, 1.3))
        _, cert = approx.approx_segments(seg, scale_body(seg, lam))
        allowance = MESH_ALLOWANCE * lam * seg.diameter
        record("1to1", lam, cert, allowance)

    # thin bodies projected to a segment
    for i in range(20):
        if i % 2 == 0:
            body, axis = _thin_rod(rng)
            _, cert = approx.approx_to_segment(body, axis, mesh_level=4, sample_level=1)
            record("3to1", body.diameter, cert, MESH_ALLOWANCE * body.diameter)
        else:
            body, axis = _thin_rect(rng)
            _, cert = approx.approx_to_segment(body, axis)
            record("2to1", body.diameter, cert, MESH_ALLOWANCE * body.diameter)

    details = {"pairs": len(rows), "violations": fail, "worst_margin": round(worst, 9)}
    return fail == 0, details, rows


def _crit_geodesic_oracle(seed: int):
    box = cube(1.0)
    pairs = [
        ("opposite-centers", np.array([1.0, 0, 0]), np.array([-1.0, 0, 0])),
        ("adjacent-centers", np.array([1.0, 0, 0]), np.array([0, 1.0, 0])),
        ("antipodal-corners", np.array([1.0, 1.0, 1.0]), np.array([-1.0, -1.0, -1.0])),
    ]
    rows = []
    errors = {name: [] for name, _, _ in pairs}
    levels = [2, 3, 4, 5]
    for level in levels:
        sample = boundary_metric(box, mesh_level=level, basepoints=[p for _, p, q in pairs] + [q for _, p, q in pairs])
        for name, p, q in pairs:
            i = sample.find_node(p)
            j = sample.find_node(q)
            measured = float(sample.dist[i, j])
            oracle = unfold_cube_distance(p, q)
            errors[name].append(abs(measured - oracle) / oracle)
            rows.append(
                {
                    "criterion": 2,
                    "case": name,
                    "parameter": level,
                    "measured": round(measured, 9),
                    "bound": round(oracle, 9),
                    "allowance": 0.02,
                }
            )
    ok = True
    for name, errs in errors.items():
        for lvl, err in zip(levels, errs):
            if lvl >= 4 and err > 0.02:
                ok = False
        for a, b in zip(errs, errs[1:]):
            if b > a + 1e-12:
                ok = False
    details = {
        "relative_errors": {name: [round(e, 6) for e in errs] for name, errs in errors.items()},
        "levels": levels,
        "oracle": {name: round(unfold_cube_distance(p, q), 9) for name, p, q in pairs},
    }
    return ok, details, rows


def _crit_collapsing(seed: int):
    rng = _rng(seed, 3)
    rows = []
    fail = 0
    for i in range(50):
        if i % 3 == 0:
            body = random_segment(rng, symmetric=True)
        elif i % 3 == 1:
            body = random_polygon(rng, n_points=8, symmetric=i % 2 == 0)
        else:
            body = random_polytope(rng, n_points=9, symmetric=i % 2 == 0)
        if body.dim == 3:
            sample = realize_sphere(body, mesh_level=2, sample_level=1)
        elif body.dim == 2:
            sample = realize_sphere(body, boundary_target=48, rings=1)
        else:
            sample = realize_sphere(body)
        measured = sample.diameter()
        bound = approx.collapse_bound(body)
        allowance = MESH_ALLOWANCE * bound
        if measured > bound + allowance:
            fail += 1
        rows.append(
            {
                "criterion": 3,
                "case": sample.kind,
                "parameter": body.diameter,
                "measured": round(measured, 9),
                "bound": round(bound, 9),
                "allowance": round(allowance, 9),
            }
        )
    return fail == 0, {"bodies": 50, "violations": fail}, rows


def _crit_double_metric(seed: int):
    poly = regular_polygon(64)
    sample = double_metric(poly, basepoints=[((0.0, 0.0, 0.0), 0), ((0.0, 0.0, 0.0), 1)])
    i = sample.find_node((0.0, 0.0, 0.0), sheet=0)
    j = sample.find_node((0.0, 0.0, 0.0), sheet=1)
    across = float(sample.dist[i, j])
    across_ok = abs(across - 2.0) <= 0.005 * 2.0

    # same-sheet block must be plain chordal distance
    same_err = 0.0
    pos, sheets = sample.positions, sample.sheets
    for a in range(len(sample)):
        if sheets[a] == 2:
            same = np.ones(len(sheets), dtype=bool)
        else:
            same = (sheets == sheets[a]) | (sheets == 2)
        idx = np.nonzero(same)[0]
        chord = np.linalg.norm(pos[idx] - pos[a], axis=1)
        same_err = max(same_err, float(np.abs(sample.dist[a, idx] - chord).max()))
    swap = sheet_swap(sample)
    action = gh.sheet_swap_action(sample)
    iso_defect = action.isometry_defect()
    ok = across_ok and same_err <= 1e-12 and iso_defect <= 1e-9
    details = {
        "center_to_center": round(across, 9),
        "same_sheet_max_error": same_err,
        "swap_isometry_defect": iso_defect,
        "swap_kind": swap.kind,
    }
    rows = [
        {
            "criterion": 4,
            "case": "center-to-center",
            "parameter": 64,
            "measured": round(across, 9),
            "bound": 2.0,
            "allowance": 0.01,
        }
    ]
    return ok, details, rows


def _crit_homotopy(seed: int):
    rng = _rng(seed, 5)
    ball = icosahedron()
    fail = 0
    endpoint_err = 0.0
    for _ in range(200):
        d1 = random_polytope(rng, n_points=8, symmetric=False)
        d2 = random_polytope(rng, n_points=8, symmetric=False)
        t = float(rng.uniform())
        s = float(rng.uniform())
        left = hausdorff_distance(contract_to_ball(t, d1, ball), contract_to_ball(s, d2, ball))
        bound = (
            abs(t - s) * (2.0 + d1.diameter + d2.diameter)
            + (1.0 - s) * hausdorff_distance(d1, d2)
            + 1e-9
        )
        if left > bound:
            fail += 1
    def same_vertex_set(x, y) -> bool:
        vx = np.asarray(x.vertices, dtype=float)
        vy = np.asarray(y.vertices, dtype=float)
        if vx.shape != vy.shape:
            return False
        vx = vx[np.lexsort(vx.T)]
        vy = vy[np.lexsort(vy.T)]
        return bool(np.array_equal(vx, vy))

    probe = random_polytope(_rng(seed, 55), n_points=9, symmetric=False)
    endpoints_exact = same_vertex_set(contract_to_ball(0.0, probe, ball), probe) and same_vertex_set(
        contract_to_ball(1.0, probe, ball), ball
    )
    ok = fail == 0 and endpoints_exact
    return ok, {"samples": 200, "violations": fail, "endpoints_exact": endpoints_exact}, []


def _crit_steiner(seed: int):
    rng = _rng(seed, 6)
    worst_add = 0.0
    worst_equiv = 0.0
    worst_sym = 0.0
    for i in range(50):
        a = random_polytope(rng, n_points=8, symmetric=False, center=False)
        b = random_polygon(rng, n_points=7, symmetric=False, center=False) if i % 2 else random_polytope(
            rng, n_points=7, symmetric=False, center=False
        )
        ca, cb = float(rng.uniform(0.2, 1.5)), float(rng.uniform(0.2, 1.5))
        combined = minkowski_combine(ca, a, cb, b)
        gap = steiner_point(combined) - (ca * steiner_point(a) + cb * steiner_point(b))
        worst_add = max(worst_add, float(np.linalg.norm(gap)) / max(combined.diameter, 1e-12))

        rot = _random_rotation(rng)
        gap = steiner_point(transform_body(a, rot)) - rot @ steiner_point(a)
        worst_equiv = max(worst_equiv, float(np.linalg.norm(gap)) / max(a.diameter, 1e-12))

        sym = random_polytope(rng, n_points=7, symmetric=True, center=False)
        worst_sym = max(worst_sym, float(np.linalg.norm(steiner_point(sym))) / max(sym.diameter, 1e-12))
    ok = worst_add <= 2 * TAU_STEINER and worst_equiv <= 2 * TAU_STEINER and worst_sym <= TAU_STEINER
    details = {
        "worst_additivity": worst_add,
        "worst_equivariance": worst_equiv,
        "worst_symmetric_offset": worst_sym,
    }
    return ok, details, []


def _crit_equivariance(seed: int):
    rng = _rng(seed, 7)
    rows = []
    ok = True
    sym_poly = random_polytope(rng, n_points=10, symmetric=True)
    sym_gon = random_polygon(rng, n_points=8, symmetric=True)
    sym_seg = random_segment(rng, symmetric=True)
    square = regular_polygon(4, radius=1.0)

    cases = [
        ("3to3", approx.approx_boundaries(sym_poly, scale_body(sym_poly, 1.15), mesh_level=3, sample_level=1)),
        ("3to2", approx.approx_flatten(slab(square, 0.1), (0.0, 0.0, 1.0), mesh_level=3, sample_level=1)),
        ("2to2", approx.approx_doubles(sym_gon, scale_body(sym_gon, 1.1), boundary_target=48, ring_stride=1)),
        ("1to1", approx.approx_segments(sym_seg, scale_body(sym_seg, 1.2))),
        # collapse defects scale with the thinness, so the fixtures must be
        # thin enough for the genuine bound to sit inside the mesh allowance
        ("2to1", approx.approx_to_segment(hull_reduce(np.array(
            [[1.0, 0.01, 0], [1.0, -0.01, 0], [-1.0, 0.01, 0], [-1.0, -0.01, 0]])), (1.0, 0.0, 0.0))),
        ("3to1", approx.approx_to_segment(
            minkowski_combine(1.0, hull_reduce(np.array([[0.0, 0, 1.0], [0.0, 0, -1.0]])),
                              0.01, icosahedron()),
            (0.0, 0.0, 1.0), mesh_level=3, sample_level=1)),
    ]
    for kind, (corr, cert) in cases:
        if cert.equivariant is not True:
            ok = False
        act1 = gh.antipodal_action(corr.source)
        act2 = gh.antipodal_action(corr.target)
        defect = gh.equivariance_defect(corr, act1, act2)
        allowance = MESH_ALLOWANCE * max(
            float(corr.source.dist.max()), float(corr.target.dist.max())
        )
        if defect > allowance:
            ok = False
        rows.append(
            {
                "criterion": 7,
                "case": kind,
                "parameter": "symmetric",
                "measured": round(float(defect), 9),
                "bound": 0.0,
                "allowance": round(allowance, 9),
            }
        )

    # asymmetric inputs must never carry the flag (centered segments are
    # symmetric by construction, so the segment lemma has no such case)
    asym_certs = []
    for i in range(3):
        a = random_polytope(rng, n_points=9, symmetric=False)
        _, cert = approx.approx_boundaries(a, scale_body(a, 1.1), mesh_level=2, sample_level=1)
        asym_certs.append(cert)
        gon = random_polygon(rng, n_points=8, symmetric=False)
        _, cert = approx.approx_doubles(gon, scale_body(gon, 1.1), boundary_target=32, ring_stride=1)
        asym_certs.append(cert)
        _, cert = approx.approx_flatten(slab(gon, 0.08), (0.0, 0.0, 1.0), mesh_level=2, sample_level=1)
        asym_certs.append(cert)
        quad = hull_reduce(np.array(
            [[1.1, 0.07, 0], [1.05, -0.09, 0], [-0.95, 0.08, 0], [-1.0 - 0.05 * i, -0.06, 0]]))
        _, cert = approx.approx_to_segment(quad, (1.0, 0.0, 0.0))
        asym_certs.append(cert)
    asym_count = sum(1 for cert in asym_certs if cert.equivariant)
    if asym_count:
        ok = False
    return ok, {
        "lemma_cases": len(cases),
        "asymmetric_cases": len(asym_certs),
        "asymmetric_flagged": asym_count,
    }, rows


def _crit_prokhorov(seed: int):
    rng = _rng(seed, 8)
    worst = 0.0
    cases = 0
    for _ in range(12):
        n = int(rng.integers(2, 7))
        pts = rng.normal(size=(n, 3))
        dist = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
        sample = MetricSample("point-cloud", pts, dist)
        k1 = int(rng.integers(1, n + 1))
        k2 = int(rng.integers(1, n + 1))
        ids1 = rng.choice(n, size=k1, replace=False)
        ids2 = rng.choice(n, size=k2, replace=False)
        w1 = rng.uniform(0.2, 1.0, size=k1)
        w2 = rng.uniform(0.2, 1.0, size=k2)
        w1 /= w1.sum()
        w2 /= w2.sum()
        mu = gh.DiscreteMeasure(sample, ids1, w1)
        nu = gh.DiscreteMeasure(sample, ids2, w2)
        solved = gh.prokhorov_distance(mu, nu)
        oracle = prokhorov_grid_oracle(mu, nu)
        worst = max(worst, abs(solved - oracle))
        cases += 1

    # point masses at controlled separations
    delta_err = 0.0
    for gap in (0.25, 0.9, 7.0):
        pts = np.array([[0.0, 0, 0], [gap, 0, 0]])
        dist = np.array([[0.0, gap], [gap, 0.0]])
        sample = MetricSample("point-cloud", pts, dist)
        mu = gh.DiscreteMeasure.uniform(sample, [0])
        nu = gh.DiscreteMeasure.uniform(sample, [1])
        delta_err = max(delta_err, abs(gh.prokhorov_distance(mu, nu) - min(gap, 1.0)))

    ok = worst <= 2e-4 and delta_err <= 1e-6
    details = {"cases": cases, "worst_oracle_gap": round(worst, 8), "delta_error": round(delta_err, 12)}
    return ok, details, []


def _crit_triangle(seed: int):
    rng = _rng(seed, 9)
    worst_ratio = -math.inf
    sub_fail = 0
    fail = 0
    for i in range(30):
        if i % 3 == 0:
            base = random_segment(rng, symmetric=True)
            make = lambda lam: realize_sphere(scale_body(base, lam), n_nodes=13)
        elif i % 3 == 1:
            base = random_polygon(rng, n_points=7, symmetric=True)
            make = lambda lam: realize_sphere(scale_body(base, lam), boundary_target=24,
                                              rings=1, ring_stride=1)
        else:
            base = random_polytope(rng, n_points=8, symmetric=True)
            make = lambda lam: realize_sphere(scale_body(base, lam), mesh_level=2, sample_level=1)
        s1 = make(1.0)
        lam2 = float(rng.uniform(1.05, 1.2))
        lam3 = float(rng.uniform(1.25, 1.45))
        s2 = make(lam2)
        s3 = make(lam3)
        c12 = approx.nearest_node_correspondence(s1, s2)
        c23 = approx.nearest_node_correspondence(s2, s3)
        c13 = gh.compose(c12, c23)

        ids = list(range(0, len(s1), max(1, len(s1) // 5)))[:5]
        mu1 = gh.DiscreteMeasure.uniform(s1, ids)
        ids3 = list(range(0, len(s3), max(1, len(s3) // 5)))[:5]
        mu3 = gh.DiscreteMeasure.uniform(s3, ids3)
        ids2 = list(range(0, len(s2), max(1, len(s2) // 5)))[:5]
        mu2 = gh.DiscreteMeasure.uniform(s2, ids2)

        a1 = gh.antipodal_action(s1)
        a2 = gh.antipodal_action(s2)
        a3 = gh.antipodal_action(s3)
        e12 = gh.eq_mgh_check(c12, act_source=a1, act_target=a2, mu_source=mu1, mu_target=mu2).eps_star
        e23 = gh.eq_mgh_check(c23, act_source=a2, act_target=a3, mu_source=mu2, mu_target=mu3).eps_star
        e13 = gh.eq_mgh_check(c13, act_source=a1, act_target=a3, mu_source=mu1, mu_target=mu3).eps_star
        if e13 > 4.0 * (e12 + e23) + 1e-12:
            fail += 1
        worst_ratio = max(worst_ratio, e13 / max(4.0 * (e12 + e23), 1e-12))

        f12, g12 = gh.distortion(c12)
        f23, g23 = gh.distortion(c23)
        f13, g13 = gh.distortion(c13)
        if f13 > f12 + f23 + 1e-12 or g13 > g12 + g23 + 1e-12:
            sub_fail += 1
    ok = fail == 0 and sub_fail == 0
    details = {"triples": 30, "violations": fail, "subadditivity_failures": sub_fail,
               "worst_ratio": round(worst_ratio, 6)}
    return ok, details, []


def _unimodular(rng) -> np.ndarray:
    m = np.eye(2)
    for _ in range(6):
        k = int(rng.integers(-3, 4))
        if rng.uniform() < 0.5:
            m = m @ np.array([[1.0, k], [0.0, 1.0]])
        else:
            m = m @ np.array([[1.0, 0.0], [k, 1.0]])
        if rng.uniform() < 0.3:
            m = m @ np.array([[0.0, 1.0], [-1.0, 0.0]])
    return m


def _crit_lattice(seed: int):
    rng = _rng(seed, 10)
    worst = 0.0
    for _ in range(100):
        try:
            basis = LatticeBasis(rng.uniform(-2, 2, size=2), rng.uniform(-2, 2, size=2))
            ref = lattice_reduce(basis)
        except GeometryError:
            continue
        u = _unimodular(rng)
        new1 = u[0, 0] * basis.v1 + u[0, 1] * basis.v2
        new2 = u[1, 0] * basis.v1 + u[1, 1] * basis.v2
        theta = rng.uniform(0, 2 * np.pi)
        q = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
        if rng.uniform() < 0.5:
            q = q @ np.diag([1.0, -1.0])
        other = lattice_reduce(LatticeBasis(q @ new1, q @ new2))
        gap = max(
            float(np.abs(ref.v1 - other.v1).max()),
            float(np.abs(ref.v2 - other.v2).max()),
        )
        worst = max(worst, gap)

    probe = LatticeBasis((1.0, 0.0), (1.0, 1.0))
    red = lattice_reduce(probe)
    n1, n2, dot = lattice_shortest_oracle(probe)
    oracle_ok = (
        abs(float(np.linalg.norm(red.v1)) - n1) <= 1e-12
        and abs(float(np.linalg.norm(red.v2)) - n2) <= 1e-12
        and abs(abs(float(red.v1 @ red.v2)) - dot) <= 1e-12
    )
    standard = np.allclose(red.v1, [1.0, 0.0]) and np.allclose(red.v2, [0.0, 1.0])
    ok = worst <= 1e-9 and oracle_ok and standard
    return ok, {"worst_gap": worst, "oracle_match": oracle_ok, "standard_basis": standard}, []


def _crit_invariants(seed: int):
    rng = _rng(seed, 11)
    worst = 0.0
    for _ in range(20):
        perim, a = float(rng.uniform(0.5, 4)), float(rng.uniform(0.5, 4))
        inv = structure_invariants(FlatStructure("circle", a, perim))
        worst = max(worst, abs(inv[0] - perim / 2), abs(inv[1] - a * perim))
        av, bv, rv = (float(x) for x in rng.uniform(0.5, 3, size=3))
        for kind in ("mobius", "cylinder"):
            inv = structure_invariants(FlatStructure(kind, av, (rv, bv)))
            worst = max(worst, float(np.abs(inv - np.array([av, bv, rv])).max()))
        d1, d2 = float(rng.uniform(0.5, 3)), float(rng.uniform(0.5, 3))
        sign1, sign2 = rng.choice([-1.0, 1.0], size=2)
        inv = structure_invariants(FlatStructure("klein", av, (sign1 * d1, sign2 * d2)))
        worst = max(worst, float(np.abs(inv - np.array([av, d1, d2])).max()))

    expected = {
        (0, 0): {"point"},
        (1, 0): {"interval"},
        (1, 1): {"circle"},
        (2, 0): {"sphere", "rp2", "disc"},
        (2, 1): {"cylinder", "mobius"},
        (2, 2): {"torus", "klein"},
    }
    table_ok = all(set(classify(d, k)) == cell for (d, k), cell in expected.items())
    table_ok = table_ok and dict(CLASSIFICATION_TABLE) == {k: frozenset(v) for k, v in expected.items()}
    union = set().union(*expected.values())
    table_ok = table_ok and union == set(SURFACE_TYPES) and all(admissible(n) for n in union)
    ok = worst <= 1e-12 and table_ok
    return ok, {"worst_roundtrip_gap": worst, "table_match": table_ok}, []


def _random_admissible_density(rng, size: int = 97) -> ConcaveDensity:
    slopes = np.sort(rng.normal(size=size - 1))[::-1]
    vals = np.concatenate([[0.0], np.cumsum(slopes)]) / size
    vals += max(0.0, -float(vals[1:-1].min())) + float(rng.uniform(0.1, 0.5))
    return ConcaveDensity(vals, float(rng.uniform(1.5, 3.0)))


def _crit_interval_moduli(seed: int):
    rng = _rng(seed, 12)
    grid = np.linspace(0.0, 1.0, 65)
    ones = ConcaveDensity(np.ones(65), 2.0)
    lin = ConcaveDensity(grid.copy(), 2.0)
    quad = ConcaveDensity(grid**2, 2.0)
    r1, rt, rq = cd_density_check(ones), cd_density_check(lin), cd_density_check(quad)
    verdicts_ok = r1.ok and rt.ok and not rq.concave and not rq.ok

    flip_zero = cstar_quotient_distance(lin, lin.flip())

    contract_ok = True
    for _ in range(3):
        f = _random_admissible_density(rng)
        if not cd_density_check(f).ok:
            contract_ok = False
            continue
        e0 = interval_contract(0.0, f)
        e1 = interval_contract(1.0, f)
        if not (np.array_equal(e0.values, f.values) and np.all(e1.values == 1.0)):
            contract_ok = False
        for t in np.linspace(0.125, 0.875, 7):
            if not cd_density_check(interval_contract(float(t), f)).ok:
                contract_ok = False
    ok = verdicts_ok and flip_zero == 0.0 and contract_ok
    details = {
        "verdicts": {
            "constant": r1.to_json(),
            "linear": rt.to_json(),
            "quadratic": rq.to_json(),
        },
        "flip_distance": flip_zero,
        "contraction_ok": contract_ok,
    }
    return ok, details, []


CRITERIA = [
    (1, "lemma bound suite", _crit_lemma_bounds, 120.0),
    (2, "geodesic unfolding oracle", _crit_geodesic_oracle, 30.0),
    (3, "collapsing bound", _crit_collapsing, None),
    (4, "double metric correctness", _crit_double_metric, None),
    (5, "homotopy continuity", _crit_homotopy, None),
    (6, "steiner axioms", _crit_steiner, None),
    (7, "equivariance flags", _crit_equivariance, None),
    (8, "prokhorov oracle", _crit_prokhorov, None),
    (9, "modified triangle inequality", _crit_triangle, None),
    (10, "lattice canonical form", _crit_lattice, None),
    (11, "moduli invariant roundtrips", _crit_invariants, None),
    (12, "interval moduli", _crit_interval_moduli, None),
]


def run_criterion(number: int, seed: int = 7) -> CriterionResult:
    for num, name, fn, budget in CRITERIA:
        if num == number:
            start = time.perf_counter()
            passed, details, rows = fn(seed)
            elapsed = time.perf_counter() - start
            if budget is not None:
                details["runtime_budget"] = budget
                details["within_budget"] = elapsed < budget
                passed = passed and elapsed < budget
            return CriterionResult(num, name, passed, details, rows, elapsed)
    raise GeometryError("parameter-range", f"no criterion numbered {number}")


def run_all(seed: int = 7) -> list:
    return [run_criterion(num, seed) for num, _, _, _ in CRITERIA]
