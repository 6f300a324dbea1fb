import math

import numpy as np
import pytest

from curvmoduli import (
    GeometryError,
    boundary_metric,
    check_metric_sample,
    double_metric,
    hull_reduce,
    realize_disc,
    realize_sphere,
    segment_sample,
    sheet_swap,
    sheet_swap_permutation,
)
from curvmoduli.acceptance import unfold_cube_distance
from curvmoduli.sampling import cube, random_polytope, regular_polygon


@pytest.fixture(scope="module")
def cube_surface():
    pts = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (1, 1, 1), (-1, -1, -1)]
    return pts, boundary_metric(cube(1.0), mesh_level=3, basepoints=pts)


def test_cube_geodesics_match_unfolding(cube_surface):
    pts, sample = cube_surface
    want = {
        ((1, 0, 0), (-1, 0, 0)): 4.0,
        ((1, 0, 0), (0, 1, 0)): 2.0,
        ((1, 1, 1), (-1, -1, -1)): 2.0 * math.sqrt(5.0),
    }
    for (p, q), truth in want.items():
        i, j = sample.find_node(p), sample.find_node(q)
        measured = sample.dist[i, j]
        assert unfold_cube_distance(np.array(p, float), np.array(q, float)) == pytest.approx(truth, abs=1e-12)
        assert measured <= truth * 1.02 + 1e-12
        assert measured >= truth * 0.999


def test_boundary_sample_is_a_metric(cube_surface):
    _, sample = cube_surface
    assert check_metric_sample(sample) <= 1e-9 * sample.diameter()


def test_sphere_realization_diameter_bound(rng):
    body = random_polytope(rng)
    sample = realize_sphere(body, mesh_level=2, sample_level=1)
    limit = math.pi * body.diameter
    assert sample.diameter() <= limit * 1.02


def test_realize_sphere_dispatch(rng):
    assert realize_sphere(random_polytope(rng), mesh_level=2, sample_level=1).kind == "boundary3d"
    flat = realize_sphere(regular_polygon(6), boundary_target=24, rings=1)
    assert flat.kind == "double2d"
    seg = realize_sphere(hull_reduce([[-1, 0, 0], [1, 0, 0.0]]))
    assert seg.kind == "segment"
    point = realize_sphere(hull_reduce([[0.2, 0.4, 0.1]]))
    assert len(point) == 1 and point.diameter() == 0.0


@pytest.fixture(scope="module")
def square_double():
    return double_metric(regular_polygon(64), boundary_res=256, rings=1)


def test_double_center_to_center(square_double):
    sample = square_double
    i = sample.find_node((0, 0, 0), sheet=0)
    j = sample.find_node((0, 0, 0), sheet=1)
    # geodesic crosses the rim: twice the apothem, up to discretization
    assert sample.dist[i, j] == pytest.approx(2.0, rel=0.01)


def test_double_same_sheet_is_euclidean(square_double):
    sample = square_double
    sh = sample.sheets
    ids = [k for k in range(len(sample)) if sh[k] == 0][:40]
    pos = sample.positions[ids]
    euclid = np.sqrt(((pos[:, None, :] - pos[None, :, :]) ** 2).sum(-1))
    assert np.abs(sample.dist[np.ix_(ids, ids)] - euclid).max() <= 1e-12


def test_sheet_swap_is_an_isometry(square_double):
    sample = square_double
    perm = sheet_swap_permutation(sample)
    assert np.array_equal(perm[perm], np.arange(len(sample)))
    defect = np.abs(sample.dist[np.ix_(perm, perm)] - sample.dist).max()
    assert defect <= 1e-9
    swapped = sheet_swap(sample)
    assert np.abs(swapped.dist - sample.dist[np.ix_(perm, perm)]).max() == 0.0


def test_double_sample_is_a_metric(square_double):
    assert check_metric_sample(square_double) <= 1e-9 * square_double.diameter()


def test_segment_sample_distances_are_linear():
    seg = hull_reduce([[-1.5, 0, 0], [1.5, 0, 0.0]])
    sample = segment_sample(seg, n_nodes=9, basepoints=[(0.75, 0, 0)])
    assert sample.diameter() == pytest.approx(3.0, abs=1e-12)
    t = sample.positions[:, 0]
    want = np.abs(t[:, None] - t[None, :])
    assert np.abs(sample.dist - want).max() <= 1e-12
    assert sample.find_node((0.75, 0, 0)) >= 0


def test_realize_disc_flattens_a_symmetric_body():
    cap = realize_disc(cube(1.0), (0.0, 0.0, 1.0), mesh_level=2, sample_level=1)
    assert cap.kind == "disc-cap"
    assert check_metric_sample(cap) <= 1e-9 * cap.diameter()
    half = realize_disc(regular_polygon(4), (1.0, 0.0, 0.0), boundary_target=24, rings=1)
    assert half.kind == "disc-half-double"


def test_realize_disc_rejects_asymmetric_bodies(rng):
    body = random_polytope(rng)
    with pytest.raises(GeometryError):
        realize_disc(body, (0.0, 0.0, 1.0), mesh_level=2, sample_level=1)


def test_find_node_rejects_far_points(square_double):
    with pytest.raises(GeometryError) as err:
        square_double.find_node((5.0, 5.0, 5.0))
    assert err.value.code == "not-on-surface"


def test_boundary_metric_dedups_repeated_basepoints():
    pts = [(1, 0.05, 0.05), (1, 0.05, 0.05), (1, 0.05, 0.05)]
    sample = boundary_metric(cube(1.0), mesh_level=1, basepoints=pts)
    hits = np.where(np.abs(sample.positions - np.array(pts[0], float)).sum(1) < 1e-9)[0]
    assert len(hits) == 1
