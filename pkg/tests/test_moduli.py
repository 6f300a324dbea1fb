import numpy as np
import pytest

from curvmoduli import (
    ConcaveDensity,
    FlatStructure,
    GeometryError,
    LatticeBasis,
    cd_density_check,
    cstar_distance,
    cstar_quotient_distance,
    flat_quotient_distance,
    interval_contract,
    lattice_reduce,
    structure_invariants,
)
from curvmoduli.acceptance import lattice_shortest_oracle


def density(fn, exponent=2.0, n=129):
    return ConcaveDensity.from_function(fn, exponent, grid_size=n)


def test_density_admissibility_verdicts():
    assert cd_density_check(density(lambda t: 1.0)).ok
    linear = cd_density_check(density(lambda t: t))
    assert linear.concave and linear.positive
    quadratic = cd_density_check(density(lambda t: t * t))
    assert not quadratic.concave
    assert not quadratic.ok
    dipped = cd_density_check(density(lambda t: -0.1 + t * (1 - t)))
    assert not dipped.positive


def test_density_constructor_validation():
    with pytest.raises(GeometryError):
        ConcaveDensity([1.0, 2.0], 2.0)  # grid too small
    with pytest.raises(GeometryError):
        ConcaveDensity(np.ones(129), 1.0)  # exponent must exceed 1


def test_weighted_sup_distance_of_constants():
    one = density(lambda t: 1.0)
    two = density(lambda t: 2.0)
    # every window sees gap 1 clamped at 1, so the series sums the weights
    # 2^-1 + ... + 2^-19 exactly
    want = 1.0 - 2.0 ** -19
    assert cstar_distance(one, two) == pytest.approx(want, abs=1e-15)
    assert cstar_distance(one, one) == 0.0
    assert cstar_distance(one, two) == cstar_distance(two, one)


def test_quotient_distance_identifies_flips():
    ramp = density(lambda t: t)
    flipped = density(lambda t: 1.0 - t)
    assert cstar_quotient_distance(ramp, flipped) == 0.0
    assert cstar_quotient_distance(ramp, ramp.flip()) == 0.0
    bump = density(lambda t: t * (1.0 - t))
    assert cstar_quotient_distance(ramp, bump) > 0.0


def test_interval_contraction_endpoints_and_path():
    hump = density(lambda t: 0.2 + t * (1.0 - t))
    start = interval_contract(0.0, hump)
    assert np.array_equal(start.values, hump.values)
    end = interval_contract(1.0, hump)
    assert np.array_equal(end.values, np.ones(len(hump)))
    middle = interval_contract(0.5, hump)
    assert cd_density_check(middle).ok
    with pytest.raises(GeometryError):
        interval_contract(-0.1, hump)


def test_lattice_reduce_canonical_example():
    red = lattice_reduce(LatticeBasis((1.0, 0.0), (1.0, 1.0)))
    assert np.allclose(red.v1, (1.0, 0.0), atol=1e-12)
    assert np.allclose(red.v2, (0.0, 1.0), atol=1e-12)


def test_lattice_reduce_is_unimodular_invariant(rng):
    basis = LatticeBasis((1.3, 0.2), (0.4, 1.1))
    sheared = LatticeBasis(basis.v1, basis.v2 + 2.0 * basis.v1)
    a = lattice_reduce(basis)
    b = lattice_reduce(sheared)
    assert np.linalg.norm(a.v1) == pytest.approx(np.linalg.norm(b.v1), abs=1e-12)
    assert np.linalg.norm(a.v2) == pytest.approx(np.linalg.norm(b.v2), abs=1e-12)
    assert np.linalg.norm(a.v1) == pytest.approx(lattice_shortest_oracle(basis)[0], abs=1e-9)


def test_circle_invariants():
    inv = structure_invariants(FlatStructure("circle", 0.5, (6.0,)))
    assert np.allclose(inv, (3.0, 3.0), atol=1e-12)


def test_klein_invariants_take_absolute_values():
    inv = structure_invariants(FlatStructure("klein", 1.0, (-2.0, 5.0)))
    assert np.allclose(inv, (1.0, 2.0, 5.0), atol=1e-12)


def test_band_invariants_roundtrip():
    # soul mass density a, Albanese length b, soul width r come back exactly
    a, b, r = 0.7, 2.2, 1.3
    for kind in ("cylinder", "mobius"):
        inv = structure_invariants(FlatStructure(kind, a, (r, b)))
        assert np.allclose(inv, (a, b, r), atol=1e-12)


def test_torus_invariants_reduce_the_basis():
    inv = structure_invariants(FlatStructure("torus", 1.0, LatticeBasis((1.0, 0.0), (1.0, 1.0))))
    assert np.allclose(inv, (1.0, 1.0, 0.0, 1.0), atol=1e-12)


def test_circle_quotient_distance_wraps():
    circle = FlatStructure("circle", 1.0, (6.0,))
    assert flat_quotient_distance(circle, 0.5, 5.9) == pytest.approx(0.6, abs=1e-12)
    assert flat_quotient_distance(circle, 1.0, 2.5) == pytest.approx(1.5, abs=1e-12)


def test_mobius_quotient_identifies_deck_images():
    band = FlatStructure("mobius", 1.0, (2.0, 3.0))
    # one deck translation flips the width coordinate
    assert flat_quotient_distance(band, (0.2, 0.0), (0.8, 1.0)) <= 1e-9
    assert flat_quotient_distance(band, (0.2, 0.0), (0.2, 0.0)) == 0.0
