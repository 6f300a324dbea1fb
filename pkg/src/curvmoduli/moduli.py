"""Coordinates on the moduli spaces of the ten admissible surface types.

Interval structures are parametrized by a length and a concave density
profile carrying a weighted sup-series metric (with a flip quotient).
The flat types (circle, torus, Klein bottle, Mobius band, cylinder) are
described by quotient data whose distances are evaluated exactly by deck
enumeration and whose canonical invariants separate isomorphism classes.
Lattice descriptions are normalized by Lagrange-Gauss reduction plus an
O(2) rebuild.  Convex-body class representatives (for the sphere-like
types) get an invariant checker and an O(3)-matching pseudo-distance.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import minimize
from scipy.spatial.transform import Rotation

from .bodies import (
    ConvexBody,
    dimension,
    hausdorff_distance,
    is_centered,
    is_point_symmetric,
    reflect,
    require_centered,
    transform_body,
    unit,
)
from .errors import GeometryError
from .tolerances import K_MAX, TAU_CONC, TAU_GEOM, TAU_SYM

MIN_GRID = 65

# unit-dot threshold deciding whether an axis lies inside / orthogonal to
# a lower-dimensional body's span
DIR_TOL = 1e-6


# -- interval densities -------------------------------------------------------


class ConcaveDensity:
    """Density profile g on a uniform grid over [0, 1], with an exponent.

    The encoded measure is g**(exponent-1) dt.  The profile is expected
    to be concave and positive away from the endpoints; those geometric
    properties are reported by cd_density_check, not enforced here.
    """

    def __init__(self, values, exponent: float):
        values = np.asarray(values, dtype=float)
        if values.ndim != 1 or len(values) < MIN_GRID:
            raise GeometryError(
                "parameter-range",
                f"need a 1d grid of at least {MIN_GRID} values, got shape {values.shape}",
            )
        if not np.all(np.isfinite(values)):
            raise GeometryError("parameter-range", "density values must be finite")
        exponent = float(exponent)
        if not exponent > 1.0:
            raise GeometryError("parameter-range", f"exponent must exceed 1, got {exponent}")
        self.values = values
        self.exponent = exponent

    def __len__(self):
        return len(self.values)

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, len(self.values))

    def flip(self) -> "ConcaveDensity":
        """The profile t -> g(1-t); exact on a uniform grid."""
        return ConcaveDensity(self.values[::-1].copy(), self.exponent)

    @staticmethod
    def from_function(fn, exponent: float, grid_size: int = 129) -> "ConcaveDensity":
        t = np.linspace(0.0, 1.0, grid_size)
        return ConcaveDensity(np.array([float(fn(x)) for x in t]), exponent)

    def to_json(self) -> dict:
        return {"N": self.exponent, "grid": [float(v) for v in self.values]}

    @staticmethod
    def from_json(data: dict) -> "ConcaveDensity":
        return ConcaveDensity(np.asarray(data["grid"], dtype=float), float(data["N"]))

    def __repr__(self):
        return f"ConcaveDensity(grid={len(self.values)}, exponent={self.exponent:g})"


@dataclass(frozen=True)
class DensityReport:
    """Verdicts of the three admissibility checks on a density profile."""

    concave: bool
    positive: bool
    sup_bounded: bool
    max_second_difference: float
    min_interior_value: float
    sup_density: float
    sup_allowed: float

    @property
    def ok(self) -> bool:
        return self.concave and self.positive and self.sup_bounded

    def to_json(self) -> dict:
        return {
            "concave": self.concave,
            "positive": self.positive,
            "sup_bounded": self.sup_bounded,
            "ok": self.ok,
            "max_second_difference": self.max_second_difference,
            "min_interior_value": self.min_interior_value,
            "sup_density": self.sup_density,
            "sup_allowed": self.sup_allowed,
        }


def cd_density_check(g: ConcaveDensity) -> DensityReport:
    """Check concavity, interior positivity, and the sup bound.

    The sup bound applies to the measure density f = g**(exponent-1):
    sup f may not exceed exponent * integral(f) (trapezoid quadrature)
    beyond a small slack.  Nonpositive profile values are clamped to
    zero inside f; the positivity verdict reports them separately.
    """
    v = g.values
    scale = float(np.abs(v).max())
    tol = TAU_CONC * max(1.0, scale)

    second = v[:-2] - 2.0 * v[1:-1] + v[2:]
    max_second = float(second.max())
    min_interior = float(v[1:-1].min())

    f = np.maximum(v, 0.0) ** (g.exponent - 1.0)
    sup_f = float(f.max())
    mass = float(np.trapezoid(f, g.grid))
    allowed = g.exponent * mass + TAU_CONC * max(1.0, sup_f)

    return DensityReport(
        concave=bool(max_second <= tol),
        positive=bool(min_interior > 0.0),
        sup_bounded=bool(sup_f <= allowed),
        max_second_difference=max_second,
        min_interior_value=min_interior,
        sup_density=sup_f,
        sup_allowed=allowed,
    )


def _same_grid(f: ConcaveDensity, g: ConcaveDensity):
    if len(f.values) != len(g.values):
        raise GeometryError(
            "grid-mismatch", f"grids differ: {len(f.values)} vs {len(g.values)} points"
        )


def cstar_distance(f: ConcaveDensity, g: ConcaveDensity) -> float:
    """Weighted sup-series distance between density profiles.

    Term k weighs the sup of |f-g| over grid points inside
    [2^-k, 1-2^-k] by 2^-k, clamped at 1.  The k = 0 window is empty
    and contributes zero.  The series is truncated at K_MAX terms, so
    values are exact up to 2^-(K_MAX-1).
    """
    _same_grid(f, g)
    t = f.grid
    gap = np.abs(f.values - g.values)
    total = 0.0
    for k in range(K_MAX):
        lo = 2.0 ** (-k)
        hi = 1.0 - lo
        mask = (t >= lo - 1e-12) & (t <= hi + 1e-12)
        d_k = float(gap[mask].max()) if mask.any() else 0.0
        total += 2.0 ** (-k) * min(1.0, d_k)
    return total


def cstar_quotient_distance(f: ConcaveDensity, g: ConcaveDensity) -> float:
    """Distance between flip-equivalence classes of density profiles."""
    return min(cstar_distance(f, g), cstar_distance(f, g.flip()))


def interval_contract(t: float, f: ConcaveDensity) -> ConcaveDensity:
    """Straight-line contraction of a density profile onto the constant 1.

    Returns the pointwise combination t*1 + (1-t)*f; both endpoints are
    reproduced exactly, and admissibility is preserved along the path.
    """
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise GeometryError("parameter-range", f"contraction time must lie in [0, 1], got {t}")
    return ConcaveDensity(t + (1.0 - t) * f.values, f.exponent)


# -- lattices ------------------------------------------------------------------


class LatticeBasis:
    """Ordered pair of independent 2D vectors generating a planar lattice."""

    def __init__(self, v1, v2):
        v1 = np.asarray(v1, dtype=float).reshape(2)
        v2 = np.asarray(v2, dtype=float).reshape(2)
        det = v1[0] * v2[1] - v1[1] * v2[0]
        if abs(det) <= TAU_GEOM:
            raise GeometryError("degenerate-lattice", f"basis vectors are dependent (det={det:g})")
        self.v1 = v1
        self.v2 = v2

    def to_json(self) -> list:
        return [[float(self.v1[0]), float(self.v1[1])], [float(self.v2[0]), float(self.v2[1])]]

    @staticmethod
    def from_json(data) -> "LatticeBasis":
        return LatticeBasis(data[0], data[1])

    def __repr__(self):
        return f"LatticeBasis(({self.v1[0]:.6g}, {self.v1[1]:.6g}), ({self.v2[0]:.6g}, {self.v2[1]:.6g}))"


def _gauss_pair(v1: np.ndarray, v2: np.ndarray):
    """Lagrange-Gauss reduction: same lattice, successive-minima generators."""
    v1 = v1.copy()
    v2 = v2.copy()
    if v1 @ v1 > v2 @ v2:
        v1, v2 = v2, v1
    for _ in range(256):
        mu = round(float(v2 @ v1) / float(v1 @ v1))
        v2 = v2 - mu * v1
        if v2 @ v2 < v1 @ v1:
            v1, v2 = v2, v1
        else:
            return v1, v2
    raise GeometryError("degenerate-lattice", "basis reduction failed to terminate")


def lattice_reduce(basis: LatticeBasis) -> LatticeBasis:
    """Canonical representative of a lattice modulo GL2(Z) and O(2).

    Lagrange-Gauss reduction extracts the successive minima; the output
    is rebuilt from the Gram data (|v1|, |v2|, |<v1,v2>|) with v1 on the
    positive x-axis and v2 in the open upper half plane.  Unimodular
    changes of the input basis and ambient rotations or reflections all
    map to the same output.
    """
    u1, u2 = _gauss_pair(basis.v1, basis.v2)
    a = math.sqrt(float(u1 @ u1))
    c = math.sqrt(float(u2 @ u2))
    # reduction leaves |<u1,u2>| <= a^2/2; clamp float overshoot at the
    # hexagonal boundary so both boundary signs collapse to one output
    beta = min(abs(float(u1 @ u2)), 0.5 * a * a)
    x2 = beta / a
    y2 = math.sqrt(max(c * c - x2 * x2, 0.0))
    return LatticeBasis(np.array([a, 0.0]), np.array([x2, y2]))


# -- flat quotient structures ---------------------------------------------------


FLAT_KINDS = ("circle", "torus", "klein", "mobius", "cylinder")


class FlatStructure:
    """Flat quotient description: a kind, a mass scale, and length data.

    params by kind:
      circle   -- (perimeter,), perimeter > 0
      torus    -- LatticeBasis
      klein    -- (d1, d2) nonzero: translation step d1 along x, glide
                  step d2 along y (the glide flips x)
      mobius   -- (r, b): width scale r of the strip coordinate in [0, 1],
                  deck translation scale b; the deck map flips the strip
                  coordinate while advancing the axis coordinate by one
      cylinder -- (r, b): interval scale r, circle scale b over a
                  perimeter-1 circle coordinate
    """

    def __init__(self, kind: str, mass_scale: float, params):
        kind = str(kind).lower()
        if kind not in FLAT_KINDS:
            raise GeometryError("parameter-range", f"unknown flat structure kind {kind!r}")
        mass_scale = float(mass_scale)
        if not mass_scale > 0.0:
            raise GeometryError("parameter-range", f"mass scale must be positive, got {mass_scale}")
        if kind == "circle":
            if np.isscalar(params):
                params = (params,)
            perim = float(params[0])
            if not perim > 0.0:
                raise GeometryError("parameter-range", f"perimeter must be positive, got {perim}")
            params = (perim,)
        elif kind == "torus":
            if not isinstance(params, LatticeBasis):
                params = LatticeBasis(params[0], params[1])
        elif kind == "klein":
            d1, d2 = float(params[0]), float(params[1])
            if d1 == 0.0 or d2 == 0.0:
                raise GeometryError("parameter-range", "klein steps must be nonzero")
            params = (d1, d2)
        else:  # mobius, cylinder
            r, b = float(params[0]), float(params[1])
            if not (r > 0.0 and b > 0.0):
                raise GeometryError("parameter-range", f"scales must be positive, got ({r}, {b})")
            params = (r, b)
        self.kind = kind
        self.mass_scale = mass_scale
        self.params = params

    def to_json(self) -> dict:
        params = self.params.to_json() if self.kind == "torus" else list(self.params)
        return {"kind": self.kind, "a": self.mass_scale, "params": params}

    @staticmethod
    def from_json(data: dict) -> "FlatStructure":
        return FlatStructure(data["kind"], data["a"], data["params"])

    def __repr__(self):
        return f"FlatStructure({self.kind!r}, a={self.mass_scale:g}, params={self.params})"


def _window(diam_est: float, step: float) -> int:
    return int(math.ceil(diam_est / step)) + 2


def flat_quotient_distance(s: FlatStructure, p, q) -> float:
    """Quotient distance: least ambient distance to any deck image of q.

    Deck images are enumerated inside a window of ceil(diameter/step)+2
    steps per generator, which is exact for these translation and glide
    groups: any image beyond the window is farther than one inside it.
    """
    if s.kind == "circle":
        perim = s.params[0]
        delta = abs(float(p) - float(q)) % perim
        return min(delta, perim - delta)

    if s.kind == "cylinder":
        r, b = s.params
        p = np.asarray(p, dtype=float)
        q = np.asarray(q, dtype=float)
        dth = abs(p[0] - q[0]) % 1.0
        dth = min(dth, 1.0 - dth)
        return math.hypot(b * dth, r * (p[1] - q[1]))

    if s.kind == "mobius":
        r, b = s.params
        px, pt = float(p[0]), float(p[1])
        qx, qt = float(q[0]), float(q[1])
        w = _window(r + b, b)
        best = math.inf
        for k in range(-w, w + 1):
            ix = qx if k % 2 == 0 else 1.0 - qx
            best = min(best, math.hypot(r * (px - ix), b * (pt - qt - k)))
        return best

    if s.kind == "torus":
        basis = s.params
        u1, u2 = _gauss_pair(basis.v1, basis.v2)
        d = np.asarray(p, dtype=float) - np.asarray(q, dtype=float)
        n1 = math.sqrt(float(u1 @ u1))
        n2 = math.sqrt(float(u2 @ u2))
        diam_est = 0.5 * (n1 + n2)
        w1 = _window(diam_est, n1)
        w2 = _window(diam_est, n2)
        ms = np.arange(-w1, w1 + 1)
        ns = np.arange(-w2, w2 + 1)
        shifts = ms[:, None, None] * u1 + ns[None, :, None] * u2
        gaps = d - shifts.reshape(-1, 2)
        return float(np.sqrt((gaps * gaps).sum(axis=1)).min())

    # klein: translations (m*d1, 2n*d2), glides (x,y) -> (-x + m*d1, y + (2n+1)*d2)
    d1 = abs(s.params[0])
    d2 = abs(s.params[1])
    px, py = float(p[0]), float(p[1])
    qx, qy = float(q[0]), float(q[1])
    diam_est = d1 + 2.0 * d2
    wm = _window(diam_est, d1)
    wj = _window(diam_est, d2)
    best = math.inf
    for m in range(-wm, wm + 1):
        for j in range(-wj, wj + 1):
            ix = qx if j % 2 == 0 else -qx
            best = min(best, math.hypot(px - ix - m * d1, py - qy - j * d2))
    return best


def structure_invariants(s: FlatStructure) -> np.ndarray:
    """Moduli coordinates of the structure's isomorphism class.

    circle   -> (diameter, total mass)
    torus    -> (mass scale, reduced v1.x, reduced v2.x, reduced v2.y)
    klein    -> (mass scale, |d1|, |d2|)
    mobius / cylinder -> (soul mass per unit length, doubled Albanese
                          diameter, soul diameter) = (a, b, r)
    """
    a = s.mass_scale
    if s.kind == "circle":
        perim = s.params[0]
        return np.array([0.5 * perim, a * perim])
    if s.kind == "torus":
        red = lattice_reduce(s.params)
        return np.array([a, red.v1[0], red.v2[0], red.v2[1]])
    if s.kind == "klein":
        d1, d2 = s.params
        return np.array([a, abs(d1), abs(d2)])
    r, b = s.params
    soul_diam = r * 1.0  # interval coordinate spans [0, 1] at scale r
    soul_mass = a * soul_diam
    albanese = FlatStructure("circle", a, (b,))
    alb_diam = flat_quotient_distance(albanese, 0.0, 0.5 * b)  # antipodal pair
    return np.array([soul_mass / soul_diam, 2.0 * alb_diam, soul_diam])


# -- convex-body classes ---------------------------------------------------------


BODY_CLASS_KINDS = ("sphere", "rp2", "disc")


class BodyClassRep:
    """A convex-body representative of a sphere-like structure class.

    kind "sphere" needs a centered body of dimension 2 or 3; "rp2"
    additionally needs point symmetry; "disc" pairs a centered body with
    a reflection axis.
    """

    def __init__(self, kind: str, body: ConvexBody, axis=None):
        kind = str(kind).lower()
        if kind not in BODY_CLASS_KINDS:
            raise GeometryError("parameter-range", f"unknown body class kind {kind!r}")
        if kind == "disc":
            if axis is None:
                raise GeometryError("parameter-range", "disc class needs a reflection axis")
            axis = unit(np.asarray(axis, dtype=float))
        elif axis is not None:
            raise GeometryError("parameter-range", f"{kind} class takes no axis")
        self.kind = kind
        self.body = body
        self.axis = axis

    def __repr__(self):
        return f"BodyClassRep({self.kind!r}, {self.body!r})"


@dataclass(frozen=True)
class BodyClassVerdict:
    """Outcome of the class-invariant checks on a body representative."""

    kind: str
    valid: bool
    case: Optional[str]  # "i".."iv" for disc representatives
    collapsed: bool  # body dimension 0 or 1
    failures: tuple

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "valid": self.valid,
            "case": self.case,
            "collapsed": self.collapsed,
            "failures": list(self.failures),
        }


def _axis_alignment(body: ConvexBody, axis: np.ndarray, dim: int) -> float:
    """|cosine| between the axis and the body's span normal (dim 2) or
    direction (dim 1)."""
    if dim == 2:
        _, _, normal = body.plane()
        return abs(float(axis @ normal))
    a, b = body.vertices[0], body.vertices[-1]
    return abs(float(axis @ unit(b - a)))


def body_class_check(rep: BodyClassRep) -> BodyClassVerdict:
    """Check the class invariants and, for discs, pick the defining case.

    Disc cases: (i) solid body, boundary cap; (ii) axis orthogonal to
    the span, the body itself; (iii) planar body with in-plane axis,
    half of the double; (iv) segment with the axis along it, half
    segment.  Dimensions 0 and 1 are flagged collapsed.
    """
    body = rep.body
    dim = dimension(body)
    diam = max(body.diameter, 1e-12)
    tol = TAU_SYM * diam
    failures = []
    collapsed = dim <= 1
    case = None

    if not is_centered(body):
        failures.append("not-centered")
    if collapsed:
        failures.append("collapsed")

    if rep.kind == "rp2":
        if not is_point_symmetric(body):
            failures.append("not-symmetric")
    elif rep.kind == "disc":
        axis = rep.axis
        if hausdorff_distance(body, reflect(body, axis)) > tol:
            failures.append("not-alpha-symmetric")
        if dim == 3:
            case = "i"
        elif dim == 2:
            c = _axis_alignment(body, axis, 2)
            if c >= 1.0 - DIR_TOL:
                case = "ii"
            elif c <= DIR_TOL:
                case = "iii"
            else:
                failures.append("axis-outside-span")
        elif dim == 1:
            c = _axis_alignment(body, axis, 1)
            if c >= 1.0 - DIR_TOL:
                case = "iv"
            elif c <= DIR_TOL:
                case = "ii"
            else:
                failures.append("axis-outside-span")

    return BodyClassVerdict(
        kind=rep.kind,
        valid=not failures,
        case=case,
        collapsed=collapsed,
        failures=tuple(failures),
    )


def _signed_permutations() -> np.ndarray:
    mats = []
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1.0, -1.0), repeat=3):
            m = np.zeros((3, 3))
            for row, (col, sign) in enumerate(zip(perm, signs)):
                m[row, col] = sign
            mats.append(m)
    return np.array(mats)


_SIGNED_PERMS = _signed_permutations()


def _moment_frame(body: ConvexBody) -> np.ndarray:
    """Eigenframe of the vertex second-moment matrix (ascending spectrum)."""
    v = body.vertices
    moment = v.T @ v / len(v)
    _, frame = np.linalg.eigh(moment)
    if np.linalg.det(frame) < 0:
        frame = frame.copy()
        frame[:, 0] = -frame[:, 0]
    return frame


def o3_match_distance(d1: ConvexBody, d2: ConvexBody, refine: bool = True) -> float:
    """Upper bound for the Hausdorff distance between orthogonal orbits.

    Minimizes hausdorff_distance(d1, phi(d2)) over a candidate set: the
    identity plus inertia-frame alignments composed with all 48 signed
    axis permutations, then a deterministic local rotation refinement
    around the best candidate.  Never exceeds the raw Hausdorff
    distance; can be loose when the moment spectrum is degenerate.
    """
    require_centered(d1, "first body")
    require_centered(d2, "second body")
    f1 = _moment_frame(d1)
    f2 = _moment_frame(d2)

    best = hausdorff_distance(d1, d2)
    best_phi = np.eye(3)
    for s in _SIGNED_PERMS:
        phi = f1 @ s @ f2.T
        val = hausdorff_distance(d1, transform_body(d2, phi))
        if val < best - 1e-15:
            best, best_phi = val, phi

    if refine and best > 1e-12:
        def objective(w):
            rot = Rotation.from_rotvec(w).as_matrix()
            return hausdorff_distance(d1, transform_body(d2, rot @ best_phi))

        simplex = np.vstack([np.zeros(3), 0.08 * np.eye(3)])
        res = minimize(
            objective,
            np.zeros(3),
            method="Nelder-Mead",
            options={
                "initial_simplex": simplex,
                "xatol": 1e-7,
                "fatol": 1e-10,
                "maxiter": 150,
            },
        )
        if res.fun < best:
            best = float(res.fun)
    return best
