"""Distortion measurement and approximation certification between samples.

Everything here is exact arithmetic over finite metric samples: map
distortions, roundtrip defects, equivariance defects under finite group
actions, Prokhorov distances between small discrete measures, and the
combined check that a correspondence is an (equivariant, measured)
eps-approximation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import GeometryError
from .surfaces import MetricSample, sheet_swap_permutation

EQ_MGH_CAP = 1.0 / 24.0
PROKHOROV_ATOM_LIMIT = 12


@dataclass
class Correspondence:
    """A pair of node maps between two metric samples."""

    source: MetricSample
    target: MetricSample
    forward: np.ndarray
    backward: np.ndarray
    kind: str = ""

    def __post_init__(self):
        self.forward = np.asarray(self.forward, dtype=np.int64)
        self.backward = np.asarray(self.backward, dtype=np.int64)
        if len(self.forward) != len(self.source) or len(self.backward) != len(self.target):
            raise GeometryError("incomparable", "maps must be total on their domains")
        if len(self.forward) and not (0 <= self.forward.min() and self.forward.max() < len(self.target)):
            raise GeometryError("incomparable", "forward map has invalid node ids")
        if len(self.backward) and not (0 <= self.backward.min() and self.backward.max() < len(self.source)):
            raise GeometryError("incomparable", "backward map has invalid node ids")


def map_distortion(d_source: np.ndarray, d_target: np.ndarray, fmap: np.ndarray) -> float:
    """sup |d_target(f x, f y) - d_source(x, y)| over all node pairs."""
    image = d_target[np.ix_(fmap, fmap)]
    return float(np.abs(image - d_source).max()) if len(fmap) else 0.0


def distortion(corr: Correspondence):
    dis_f = map_distortion(corr.source.dist, corr.target.dist, corr.forward)
    dis_g = map_distortion(corr.target.dist, corr.source.dist, corr.backward)
    return dis_f, dis_g


def roundtrip_defects(corr: Correspondence):
    """(max d(g(f x), x), max d(f(g y), y))."""
    n, m = len(corr.source), len(corr.target)
    rf = float(corr.source.dist[np.arange(n), corr.backward[corr.forward]].max()) if n else 0.0
    rg = float(corr.target.dist[np.arange(m), corr.forward[corr.backward]].max()) if m else 0.0
    return rf, rg


def compose(c12: Correspondence, c23: Correspondence) -> Correspondence:
    """Composite correspondence; the middle sample must be shared."""
    mid_ok = c12.target is c23.source or (
        len(c12.target) == len(c23.source)
        and np.array_equal(c12.target.dist, c23.source.dist)
        and np.array_equal(c12.target.positions, c23.source.positions))
    if not mid_ok:
        raise GeometryError("incomparable", "composition requires a shared middle sample")
    return Correspondence(c12.source, c23.target,
                          c23.forward[c12.forward], c12.backward[c23.backward],
                          kind=f"{c12.kind}*{c23.kind}")


@dataclass
class ApproxReport:
    """Defect summary of an approximation check.

    Fields are None when the corresponding condition was not evaluated.
    eps_star is the smallest threshold at which every evaluated condition
    passes, i.e. the max of the defects; capped applies the metric's
    1/24 ceiling.
    """

    dis_f: float
    dis_g: float
    roundtrip_f: float
    roundtrip_g: float
    equiv_defect: Optional[float] = None
    prokhorov_f: Optional[float] = None
    prokhorov_g: Optional[float] = None
    eps: Optional[float] = None

    def defects(self):
        vals = [self.dis_f, self.dis_g, self.roundtrip_f, self.roundtrip_g,
                self.equiv_defect, self.prokhorov_f, self.prokhorov_g]
        return [v for v in vals if v is not None]

    @property
    def eps_star(self) -> float:
        return max(self.defects(), default=0.0)

    @property
    def capped(self) -> float:
        return min(EQ_MGH_CAP, self.eps_star)

    def passes(self, eps=None) -> bool:
        if eps is None:
            eps = self.eps
        if eps is None:
            raise GeometryError("parameter-range", "no threshold to check against")
        return self.eps_star <= eps

    def to_json(self) -> dict:
        out = {"dis_f": self.dis_f, "dis_g": self.dis_g,
               "roundtrip_f": self.roundtrip_f, "roundtrip_g": self.roundtrip_g,
               "equiv_defect": self.equiv_defect,
               "prokhorov_f": self.prokhorov_f, "prokhorov_g": self.prokhorov_g,
               "eps": self.eps, "eps_star": self.eps_star, "capped": self.capped}
        if self.eps is not None:
            out["passes"] = self.passes()
        return out


def gh_approx_check(corr: Correspondence, eps: float) -> ApproxReport:
    """Distortion and roundtrip conditions of a GH eps-approximation."""
    dis_f, dis_g = distortion(corr)
    rf, rg = roundtrip_defects(corr)
    return ApproxReport(dis_f, dis_g, rf, rg, eps=float(eps))


# -- group actions ------------------------------------------------------------


@dataclass
class GroupAction:
    """Finitely generated group acting on a sample by node permutations."""

    sample: MetricSample
    generators: list
    order: int = 2

    def __post_init__(self):
        self.generators = [np.asarray(g, dtype=np.int64) for g in self.generators]
        n = len(self.sample)
        for g in self.generators:
            if len(g) != n or len(np.unique(g)) != n:
                raise GeometryError("group-mismatch", "generator is not a permutation")
            p = g.copy()
            for _ in range(self.order - 1):
                p = g[p]
            if not np.array_equal(p, np.arange(n)):
                raise GeometryError("group-mismatch", f"generator order is not {self.order}")

    def isometry_defect(self) -> float:
        d = self.sample.dist
        worst = 0.0
        for g in self.generators:
            worst = max(worst, float(np.abs(d[np.ix_(g, g)] - d).max()))
        return worst


def trivial_action(sample: MetricSample) -> GroupAction:
    return GroupAction(sample, [np.arange(len(sample))], order=1)


def antipodal_action(sample: MetricSample) -> GroupAction:
    """The order-2 action induced by central symmetry of the carrying body.

    On a boundary surface or segment this is x -> -x; on a double it is
    x -> -x combined with the sheet exchange (the deck transformation of
    the flat projective quotient); on a point it is the identity.
    """
    n = len(sample)
    if sample.kind == "point":
        return GroupAction(sample, [np.arange(n)], order=2)
    pos = sample.positions
    scale = max(1.0, float(np.abs(pos).max()))
    perm = np.empty(n, dtype=np.int64)
    if sample.sheets is None:
        for i in range(n):
            d = np.sqrt(((pos + pos[i]) ** 2).sum(1))
            j = int(np.argmin(d))
            if d[j] > 1e-6 * scale:
                raise GeometryError("hypothesis-violated", "sample is not centrally symmetric")
            perm[i] = j
    else:
        sh = sample.sheets
        for i in range(n):
            d = np.sqrt(((pos + pos[i]) ** 2).sum(1))
            if sh[i] == 2:
                d = np.where(sh == 2, d, np.inf)
            else:
                d = np.where(sh == 1 - sh[i], d, np.inf)
            j = int(np.argmin(d))
            if d[j] > 1e-6 * scale:
                raise GeometryError("hypothesis-violated", "double is not centrally symmetric")
            perm[i] = j
    if not np.array_equal(perm[perm], np.arange(n)):
        raise GeometryError("hypothesis-violated", "antipodal pairing is not an involution")
    return GroupAction(sample, [perm], order=2)


def sheet_swap_action(sample: MetricSample) -> GroupAction:
    return GroupAction(sample, [sheet_swap_permutation(sample)], order=2)


def equivariance_defect(corr: Correspondence, act_source: GroupAction,
                        act_target: GroupAction, iso=None) -> float:
    """Worst failure of the maps to intertwine the two actions.

    iso pairs generator k of the source action with generator iso[k] of the
    target action (identity pairing by default).
    """
    if act_source.order != act_target.order or \
            len(act_source.generators) != len(act_target.generators):
        raise GeometryError("group-mismatch", "actions have different group data")
    if iso is None:
        iso = list(range(len(act_source.generators)))
    d1, d2 = corr.source.dist, corr.target.dist
    f, g = corr.forward, corr.backward
    worst = 0.0
    for k, gen1 in enumerate(act_source.generators):
        gen2 = act_target.generators[iso[k]]
        n = len(corr.source)
        m = len(corr.target)
        # d_target(f(gamma x), phi(gamma) f(x))
        worst = max(worst, float(d2[f[gen1], gen2[f]].max()) if n else 0.0)
        # d_source(g(delta y), phi^-1(delta) g(y)); for a generator pairing the
        # inverse pairing matches the same generators
        worst = max(worst, float(d1[g[gen2], gen1[g]].max()) if m else 0.0)
    return worst


# -- discrete measures and the Prokhorov distance -----------------------------


@dataclass
class DiscreteMeasure:
    """Nonnegative masses on finitely many nodes of a sample."""

    sample: MetricSample
    ids: np.ndarray
    masses: np.ndarray

    def __post_init__(self):
        self.ids = np.asarray(self.ids, dtype=np.int64)
        self.masses = np.asarray(self.masses, dtype=float)
        if len(self.ids) != len(self.masses) or (self.masses < 0).any():
            raise GeometryError("parameter-range", "measure needs one mass >= 0 per atom")
        if self.masses.sum() <= 0:
            raise GeometryError("parameter-range", "measure must have positive total mass")
        # merge duplicate atoms
        uniq, inv = np.unique(self.ids, return_inverse=True)
        if len(uniq) != len(self.ids):
            m = np.zeros(len(uniq))
            np.add.at(m, inv, self.masses)
            self.ids, self.masses = uniq, m

    @staticmethod
    def uniform(sample: MetricSample, ids=None) -> "DiscreteMeasure":
        if ids is None:
            ids = np.arange(len(sample))
        ids = np.asarray(ids, dtype=np.int64)
        return DiscreteMeasure(sample, ids, np.full(len(ids), 1.0 / len(ids)))

    def total(self) -> float:
        return float(self.masses.sum())

    def pushforward(self, fmap: np.ndarray, target: MetricSample) -> "DiscreteMeasure":
        return DiscreteMeasure(target, np.asarray(fmap)[self.ids], self.masses.copy())


def _prokhorov_feasible(eps, w1, w2, d12, masks1):
    # mu(A) <= nu(A^eps) + eps for every nonempty A in the support of mu
    mu_a = masks1 @ w1
    reach = (masks1 @ (d12 <= eps + 1e-12)) > 0
    nu_a = reach @ w2
    return bool((mu_a <= nu_a + eps + 1e-15).all())


def prokhorov_distance(mu: DiscreteMeasure, nu: DiscreteMeasure, tol: float = 1e-9) -> float:
    """Exact Prokhorov distance between small discrete measures.

    Both measures must live on the same sample.  Brute force over all atom
    subsets of each support, bisecting eps; combined support beyond 12
    atoms is refused (exact-mode-limit).
    """
    if mu.sample is not nu.sample and not np.array_equal(mu.sample.dist, nu.sample.dist):
        raise GeometryError("incomparable", "measures live on different samples")
    if len(mu.ids) + len(nu.ids) > PROKHOROV_ATOM_LIMIT:
        raise GeometryError("exact-mode-limit",
                            f"combined support exceeds {PROKHOROV_ATOM_LIMIT} atoms")
    d = mu.sample.dist
    d12 = d[np.ix_(mu.ids, nu.ids)]
    w1, w2 = mu.masses, nu.masses

    def masks(k):
        if k == 0:
            return np.zeros((0, 0), dtype=bool)
        rows = np.arange(1, 2 ** k)
        return (rows[:, None] >> np.arange(k)) & 1 > 0

    m1 = masks(len(mu.ids))
    m2 = masks(len(nu.ids))

    def feasible(eps):
        return (_prokhorov_feasible(eps, w1, w2, d12, m1)
                and _prokhorov_feasible(eps, w2, w1, d12.T, m2))

    hi = max(1.0, float(d12.max()) if d12.size else 0.0, abs(mu.total() - nu.total())) + 1e-9
    if feasible(0.0):
        return 0.0
    lo = 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return float(hi)


def eq_mgh_check(corr: Correspondence, eps=None, act_source=None, act_target=None,
                 iso=None, mu_source=None, mu_target=None) -> ApproxReport:
    """Full equivariant measured approximation check.

    Evaluates distortions and roundtrips, the equivariance defect when
    actions are given, and the Prokhorov defects of the measure
    pushforwards when measures are given.  eps_star of the report is the
    smallest threshold at which everything passes.
    """
    dis_f, dis_g = distortion(corr)
    rf, rg = roundtrip_defects(corr)
    eqd = None
    if act_source is not None and act_target is not None:
        eqd = equivariance_defect(corr, act_source, act_target, iso=iso)
    pf = pg = None
    if mu_source is not None and mu_target is not None:
        pf = prokhorov_distance(mu_source.pushforward(corr.forward, corr.target), mu_target)
        pg = prokhorov_distance(mu_target.pushforward(corr.backward, corr.source), mu_source)
    return ApproxReport(dis_f, dis_g, rf, rg, equiv_defect=eqd,
                        prokhorov_f=pf, prokhorov_g=pg,
                        eps=None if eps is None else float(eps))
