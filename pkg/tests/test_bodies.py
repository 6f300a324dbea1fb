import math

import numpy as np
import pytest

from curvmoduli import (
    GeometryError,
    Subspace,
    body_from_json,
    body_to_json,
    contract_to_ball,
    dimension,
    gauge_inclusion_eps,
    gauge_point,
    hausdorff_distance,
    hull_reduce,
    is_point_symmetric,
    is_reflection_symmetric,
    minkowski_combine,
    ortho_project,
    reflect,
    steiner_point,
    symmetrize,
)
from curvmoduli.sampling import cube, icosahedron, random_polytope, regular_polygon

from oracles import brute_force_hausdorff, mc_steiner_point


def vertex_set(body):
    v = np.round(body.vertices, 9)
    return v[np.lexsort(v.T)]


def test_hull_reduce_drops_interior_points(rng):
    corners = cube(1.0).vertices
    inner = rng.uniform(-0.9, 0.9, size=(25, 3))
    body = hull_reduce(np.vstack([corners, inner]))
    assert len(body.vertices) == 8
    assert np.allclose(vertex_set(body), vertex_set(cube(1.0)))


def test_dimension_by_affine_span():
    assert dimension(hull_reduce([[1.0, 2.0, 3.0]])) == 0
    assert dimension(hull_reduce([[0, 0, 0], [1, 1, 0.0]])) == 1
    assert dimension(regular_polygon(5)) == 2
    assert dimension(cube()) == 3


def test_steiner_point_of_cube_is_center():
    assert np.allclose(steiner_point(cube(1.0)), 0.0, atol=1e-12)


def test_steiner_translation_equivariance(rng):
    body = random_polytope(rng, center=False)
    t = np.array([0.3, -1.2, 0.7])
    shifted = hull_reduce(body.vertices + t)
    assert np.allclose(steiner_point(shifted), steiner_point(body) + t, atol=1e-9)


def test_steiner_rotation_equivariance(rng):
    body = random_polytope(rng, center=False)
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    if np.linalg.det(q) < 0:
        q[:, 0] *= -1
    rotated = hull_reduce(body.vertices @ q.T)
    assert np.allclose(steiner_point(rotated), q @ steiner_point(body), atol=1e-9)


def test_steiner_minkowski_additivity(rng):
    a = random_polytope(rng, center=False)
    b = random_polytope(rng, center=False)
    combo = minkowski_combine(0.6, a, 1.7, b)
    want = 0.6 * steiner_point(a) + 1.7 * steiner_point(b)
    assert np.allclose(steiner_point(combo), want, atol=1e-8)


def test_steiner_matches_monte_carlo_oracle(rng):
    body = random_polytope(rng, n_points=12, center=False)
    mc = mc_steiner_point(body.vertices, n=200_000, seed=3)
    assert np.abs(steiner_point(body) - mc).max() < 5e-3


def test_hausdorff_translation_is_shift_norm(rng):
    body = random_polytope(rng)
    t = np.array([0.4, 0.1, -0.2])
    shifted = hull_reduce(body.vertices + t)
    assert hausdorff_distance(body, shifted) == pytest.approx(np.linalg.norm(t), abs=1e-12)


def test_hausdorff_nested_cubes_corner_gap():
    # farthest point of the big cube from the small one is a corner
    want = 0.5 * math.sqrt(3.0)
    assert hausdorff_distance(cube(1.0), cube(1.5)) == pytest.approx(want, abs=1e-12)


def test_hausdorff_metric_properties(rng):
    bodies = [random_polytope(rng) for _ in range(3)]
    a, b, c = bodies
    assert hausdorff_distance(a, a) == 0.0
    assert hausdorff_distance(a, b) == pytest.approx(hausdorff_distance(b, a), abs=1e-12)
    assert hausdorff_distance(a, c) <= hausdorff_distance(a, b) + hausdorff_distance(b, c) + 1e-9


def test_hausdorff_against_support_function_oracle(rng):
    a = random_polytope(rng)
    b = random_polytope(rng)
    lower = brute_force_hausdorff(a.vertices, b.vertices)
    measured = hausdorff_distance(a, b)
    # support sampling only lower-bounds d_H; allow a small convergence gap
    assert lower - 1e-9 <= measured
    assert measured <= lower * 1.25 + 0.05


def test_minkowski_sum_of_segments_is_square():
    s1 = hull_reduce([[-1, 0, 0], [1, 0, 0.0]])
    s2 = hull_reduce([[0, -1, 0], [0, 1, 0.0]])
    box = minkowski_combine(1.0, s1, 1.0, s2)
    want = hull_reduce([[x, y, 0.0] for x in (-1, 1) for y in (-1, 1)])
    assert np.allclose(vertex_set(box), vertex_set(want))


def test_minkowski_rejects_negative_coefficients():
    with pytest.raises(GeometryError) as err:
        minkowski_combine(-0.5, cube(), 1.0, cube())
    assert err.value.code == "negative-scale"


def test_reflect_is_an_involution(rng):
    body = random_polytope(rng, center=False)
    back = reflect(reflect(body, (0.0, 0.0, 1.0)), (0.0, 0.0, 1.0))
    assert np.allclose(vertex_set(back), vertex_set(body))


def test_symmetrize_output_is_reflection_symmetric(rng):
    body = random_polytope(rng, center=True)
    assert is_reflection_symmetric(symmetrize(body, (0.0, 0.0, 1.0)), (0.0, 0.0, 1.0))


def test_symmetry_detection():
    assert is_point_symmetric(cube())
    assert is_reflection_symmetric(cube(), (0.0, 0.0, 1.0))
    lopsided = hull_reduce([[1.3, 0.1, 0], [-0.9, 0.2, 0.1], [0.1, 1.1, -0.2], [-0.2, -1.0, 0.4]])
    lopsided = hull_reduce(lopsided.vertices - steiner_point(lopsided))
    assert not is_point_symmetric(lopsided)
    assert not is_reflection_symmetric(lopsided, (0.0, 0.0, 1.0))


def test_gauge_point_inside_cube():
    assert gauge_point(cube(1.0), (0.5, 0.0, 0.0)) == pytest.approx(0.5, abs=1e-12)
    assert gauge_point(cube(1.0), (1.0, 1.0, 1.0)) == pytest.approx(1.0, abs=1e-12)


def test_gauge_inclusion_of_scaled_copies():
    ball = icosahedron()
    bigger = hull_reduce(1.2 * ball.vertices)
    assert gauge_inclusion_eps(ball, bigger) == pytest.approx(0.2, abs=1e-12)
    assert gauge_inclusion_eps(ball, ball) == 0.0


def test_gauge_inclusion_requires_centered_inputs():
    shifted = hull_reduce(cube().vertices + np.array([0.5, 0, 0]))
    with pytest.raises(GeometryError) as err:
        gauge_inclusion_eps(shifted, cube())
    assert err.value.code == "not-centered"


def test_ortho_project_cube_onto_plane():
    flat = ortho_project(Subspace("plane", (0.0, 0.0, 1.0)), cube(1.0))
    assert flat.dim == 2
    want = hull_reduce([[x, y, 0.0] for x in (-1, 1) for y in (-1, 1)])
    assert np.allclose(vertex_set(flat), vertex_set(want))


def test_contraction_endpoints_and_range(rng):
    body = random_polytope(rng)
    ball = icosahedron()
    assert np.allclose(vertex_set(contract_to_ball(0.0, body, ball)), vertex_set(body))
    assert np.allclose(vertex_set(contract_to_ball(1.0, body, ball)), vertex_set(ball))
    with pytest.raises(GeometryError) as err:
        contract_to_ball(1.5, body, ball)
    assert err.value.code == "parameter-range"


def test_contraction_is_hausdorff_continuous(rng):
    body = random_polytope(rng)
    ball = icosahedron()
    prev = contract_to_ball(0.25, body, ball)
    step = contract_to_ball(0.35, body, ball)
    lip = hausdorff_distance(body, ball) + body.diameter + ball.diameter
    assert hausdorff_distance(prev, step) <= 0.1 * lip + 1e-9


def test_body_json_roundtrip(rng):
    body = random_polytope(rng)
    again = body_from_json(body_to_json(body))
    assert np.allclose(vertex_set(again), vertex_set(body))
    with pytest.raises(GeometryError):
        body_from_json({"wrong": []})
