import numpy as np
import pytest

from curvmoduli import (
    Correspondence,
    DiscreteMeasure,
    GeometryError,
    GroupAction,
    MetricSample,
    antipodal_action,
    compose,
    distortion,
    eq_mgh_check,
    equivariance_defect,
    hull_reduce,
    prokhorov_distance,
    roundtrip_defects,
    segment_sample,
    sheet_swap_action,
    trivial_action,
)
from curvmoduli.acceptance import prokhorov_grid_oracle
from curvmoduli.gh import gh_approx_check
from curvmoduli.sampling import regular_polygon
from curvmoduli.surfaces import double_metric


def line_sample(ts):
    ts = np.asarray(ts, dtype=float)
    pos = np.zeros((len(ts), 3))
    pos[:, 0] = ts
    dist = np.abs(ts[:, None] - ts[None, :])
    return MetricSample("segment", pos, dist)


def test_distortion_and_roundtrip_by_hand():
    s1 = line_sample([0.0, 1.0, 2.0])
    s2 = line_sample([0.0, 1.4, 2.0])
    corr = Correspondence(s1, s2, forward=[0, 1, 2], backward=[0, 1, 2])
    dis_f, dis_g = distortion(corr)
    # node 1 moves by 0.4, stretching one gap and shrinking the other
    assert dis_f == pytest.approx(0.4, abs=1e-12)
    assert dis_g == pytest.approx(0.4, abs=1e-12)
    assert roundtrip_defects(corr) == (0.0, 0.0)

    lossy = Correspondence(s1, s2, forward=[0, 0, 2], backward=[0, 1, 2])
    rf, rg = roundtrip_defects(lossy)
    # source node 1 maps to 0 and returns at 0; target node 1 returns at 0
    assert rf == pytest.approx(1.0, abs=1e-12)
    assert rg == pytest.approx(1.4, abs=1e-12)


def test_correspondence_validates_maps():
    s1 = line_sample([0.0, 1.0])
    s2 = line_sample([0.0, 2.0])
    with pytest.raises(GeometryError):
        Correspondence(s1, s2, forward=[0], backward=[0, 1])
    with pytest.raises(GeometryError):
        Correspondence(s1, s2, forward=[0, 5], backward=[0, 1])


def test_compose_needs_a_shared_middle_and_is_subadditive():
    s1 = line_sample([0.0, 1.0, 2.0])
    s2 = line_sample([0.0, 1.1, 2.0])
    s3 = line_sample([0.0, 1.3, 2.0])
    c12 = Correspondence(s1, s2, [0, 1, 2], [0, 1, 2])
    c23 = Correspondence(s2, s3, [0, 1, 2], [0, 1, 2])
    c13 = compose(c12, c23)
    f13, g13 = distortion(c13)
    f12, g12 = distortion(c12)
    f23, g23 = distortion(c23)
    assert f13 <= f12 + f23 + 1e-12
    assert g13 <= g12 + g23 + 1e-12

    other = Correspondence(line_sample([0.0, 5.0, 9.0]), s3, [0, 1, 2], [0, 1, 2])
    with pytest.raises(GeometryError):
        compose(c12, other)


def test_group_action_validation():
    s = line_sample([0.0, 1.0, 2.0])
    with pytest.raises(GeometryError):
        GroupAction(s, [np.array([0, 0, 1])], order=2)  # not a permutation
    with pytest.raises(GeometryError):
        GroupAction(s, [np.array([1, 2, 0])], order=2)  # order-3 cycle


def test_antipodal_action_on_a_symmetric_segment():
    seg = hull_reduce([[-1, 0, 0], [1, 0, 0.0]])
    sample = segment_sample(seg, n_nodes=9)
    act = antipodal_action(sample)
    perm = act.generators[0]
    assert np.array_equal(perm[perm], np.arange(len(sample)))
    assert np.allclose(sample.positions[perm], -sample.positions, atol=1e-9)

    point = MetricSample("point", np.zeros((1, 3)), np.zeros((1, 1)))
    assert np.array_equal(antipodal_action(point).generators[0], [0])


def test_sheet_swap_action_is_isometric():
    sample = double_metric(regular_polygon(4), boundary_res=128, rings=1)
    act = sheet_swap_action(sample)
    perm = act.generators[0]
    assert np.abs(sample.dist[np.ix_(perm, perm)] - sample.dist).max() <= 1e-9


def test_equivariance_defect_vanishes_for_matched_actions():
    seg = hull_reduce([[-1, 0, 0], [1, 0, 0.0]])
    sample = segment_sample(seg, n_nodes=9)
    corr = Correspondence(sample, sample,
                          np.arange(len(sample)), np.arange(len(sample)))
    act = antipodal_action(sample)
    assert equivariance_defect(corr, act, act) == 0.0
    assert equivariance_defect(corr, trivial_action(sample), trivial_action(sample)) == 0.0


def test_prokhorov_of_two_point_masses():
    for gap in (0.3, 0.8, 1.7):
        s = line_sample([0.0, gap])
        mu = DiscreteMeasure(s, [0], [1.0])
        nu = DiscreteMeasure(s, [1], [1.0])
        assert prokhorov_distance(mu, nu) == pytest.approx(min(gap, 1.0), abs=1e-9)


def test_prokhorov_identical_measures_is_zero():
    s = line_sample([0.0, 0.5, 1.2])
    mu = DiscreteMeasure(s, [0, 1, 2], [0.2, 0.3, 0.5])
    assert prokhorov_distance(mu, mu) <= 1e-9


def test_prokhorov_matches_grid_oracle(rng):
    s = line_sample(np.sort(rng.uniform(0.0, 1.5, size=6)))
    for _ in range(4):
        w1 = rng.uniform(0.1, 1.0, size=3)
        w2 = rng.uniform(0.1, 1.0, size=3)
        w2 *= w1.sum() / w2.sum()
        mu = DiscreteMeasure(s, [0, 1, 2], w1)
        nu = DiscreteMeasure(s, [3, 4, 5], w2)
        exact = prokhorov_distance(mu, nu)
        grid = prokhorov_grid_oracle(mu, nu, step=1e-4)
        assert abs(exact - grid) <= 2e-4


def test_prokhorov_refuses_oversized_supports():
    s = line_sample(np.linspace(0.0, 1.0, 14))
    mu = DiscreteMeasure(s, np.arange(7), np.ones(7))
    nu = DiscreteMeasure(s, np.arange(7, 14), np.ones(7))
    with pytest.raises(GeometryError) as err:
        prokhorov_distance(mu, nu)
    assert err.value.code == "exact-mode-limit"


def test_eq_mgh_check_aggregates_defects():
    s1 = line_sample([0.0, 1.0, 2.0])
    s2 = line_sample([0.0, 1.2, 2.0])
    corr = Correspondence(s1, s2, [0, 1, 2], [0, 1, 2])
    mu = DiscreteMeasure(s1, [0, 1, 2], [1.0, 1.0, 1.0])
    nu = DiscreteMeasure(s2, [0, 1, 2], [1.0, 1.0, 1.0])
    report = eq_mgh_check(corr, eps=0.5, mu_source=mu, mu_target=nu)
    assert report.eps_star == pytest.approx(0.2, abs=1e-9)
    assert gh_approx_check(corr, 0.5).passes()
    assert not gh_approx_check(corr, 0.1).passes()
