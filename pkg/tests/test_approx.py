import numpy as np
import pytest

from curvmoduli import (
    Certificate,
    GeometryError,
    HypothesisError,
    approx_boundaries,
    approx_doubles,
    approx_flatten,
    approx_segments,
    approx_to_segment,
    collapse_bound,
    hull_reduce,
)
from curvmoduli.sampling import (
    centered,
    icosahedron,
    random_polygon,
    regular_polygon,
    slab,
)


def scaled(body, factor):
    return hull_reduce(factor * body.vertices)


def check_certificate(cert, kind, slack=0.0):
    # the a priori bound covers the forward map; the plumbed-back map of the
    # collapse lemmas carries an extra defect on the collapse scale
    assert cert.kind == kind
    assert cert.dis_f <= cert.nu + slack + 1e-12
    assert cert.roundtrip >= 0.0
    again = Certificate.from_json(cert.to_json())
    assert again.to_json() == cert.to_json()


def test_boundary_lemma_on_scaled_balls():
    ball = icosahedron()
    corr, cert = approx_boundaries(ball, scaled(ball, 1.1), mesh_level=3, sample_level=1)
    # eps is the inclusion overshoot 0.1; the a priori bound is
    # 6 * (diam + diam') * eps = 6 * (2 + 2.2) * 0.1
    assert cert.eps == pytest.approx(0.1, abs=1e-9)
    assert cert.nu == pytest.approx(2.52, abs=1e-9)
    assert cert.roundtrip == 0.0
    assert cert.equivariant is True
    check_certificate(cert, "boundaries-3to3")


def test_flatten_lemma_certifies(rng):
    body = slab(regular_polygon(4), 0.1)
    corr, cert = approx_flatten(body, (0.0, 0.0, 1.0), mesh_level=2, sample_level=1)
    check_certificate(cert, "flatten-3to2")
    assert cert.equivariant is True


def test_double_lemma_certifies(rng):
    gon = centered(random_polygon(rng, symmetric=True))
    corr, cert = approx_doubles(gon, scaled(gon, 1.08), boundary_target=32, ring_stride=1)
    check_certificate(cert, "doubles-2to2")
    assert cert.equivariant is True


def test_segment_lemma_certifies():
    seg = hull_reduce([[-1.0, 0, 0], [1.0, 0, 0]])
    corr, cert = approx_segments(seg, scaled(seg, 1.15))
    check_certificate(cert, "segments-1to1")
    assert cert.equivariant is True


def test_collapse_to_segment_certifies():
    rod = hull_reduce([[1.0, 0.015, 0], [1.0, -0.015, 0],
                       [-1.0, 0.015, 0], [-1.0, -0.015, 0]])
    corr, cert = approx_to_segment(rod, (1.0, 0.0, 0.0))
    check_certificate(cert, "tosegment-2to1")
    assert cert.dis_g <= cert.nu + 1e-12
    assert cert.equivariant is True


def test_collapse_solid_to_segment_certifies():
    from curvmoduli import minkowski_combine
    core = hull_reduce([[0, 0, 1.0], [0, 0, -1.0]])
    rod = minkowski_combine(1.0, core, 0.02, icosahedron())
    corr, cert = approx_to_segment(rod, (0.0, 0.0, 1.0), mesh_level=2, sample_level=1)
    check_certificate(cert, "tosegment-3to1", slack=0.02 * rod.diameter)


def test_asymmetric_inputs_are_never_flagged_equivariant(rng):
    for _ in range(3):
        gon = centered(random_polygon(rng, symmetric=False))
        _, cert = approx_doubles(gon, scaled(gon, 1.05), boundary_target=32, ring_stride=1)
        assert cert.equivariant is not True


def test_lemma_hypothesis_violations_raise():
    ball = icosahedron()
    with pytest.raises(HypothesisError) as err:
        approx_boundaries(ball, scaled(ball, 3.0), mesh_level=2, sample_level=1)
    assert err.value.code == "hypothesis-violated"
    seg = hull_reduce([[-1.0, 0, 0], [1.0, 0, 0]])
    with pytest.raises(HypothesisError):
        approx_segments(seg, scaled(seg, 3.0))


def test_lemmas_require_centered_inputs():
    shifted = hull_reduce(icosahedron().vertices + np.array([0.4, 0, 0]))
    with pytest.raises(GeometryError) as err:
        approx_boundaries(shifted, icosahedron(), mesh_level=2, sample_level=1)
    assert err.value.code == "not-centered"


def test_collapse_bound_shrinks_with_thickness():
    thick = collapse_bound(slab(regular_polygon(4), 0.2))
    thin = collapse_bound(slab(regular_polygon(4), 0.05))
    assert thin < thick
    assert thin > 0.0
