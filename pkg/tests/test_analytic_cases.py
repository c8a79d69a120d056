"""Closed-form fixed-body constructions checked against independent algebra."""

import math
import time

import numpy as np
import pytest

import oracles
from symkit import Subspace, volume
from symkit.analytic_cases import (
    blaschke_cone,
    blaschke_cone_nonmonotonicity_witness,
    blaschke_prism,
    make_box,
    make_cone,
    make_random_polytope,
    make_spherical_cylinder,
    schwarz_box_radius,
    unit_ball_volume,
)
from symkit.errors import InvalidInput, Unsupported


def test_cone_matches_closed_form():
    for n in range(3, 11):
        r = blaschke_cone(n)
        a, h, height = oracles.cone_reference(n)
        assert r.radius_a == pytest.approx(a, abs=1e-12)
        assert r.top_radius_h == pytest.approx(h, abs=1e-12)
        assert r.height == pytest.approx(height, abs=1e-12)
        assert r.height < 1.0
        assert max(abs(x) for x in r.residuals) <= 1e-12
        # feed the returned numbers back through the balance equations
        assert max(abs(x) for x in oracles.cone_residuals(r.radius_a, r.top_radius_h, n)) <= 1e-12


def test_cone_pin_n3():
    r = blaschke_cone(3)
    assert r.height == pytest.approx(2.0 - math.sqrt(2.0), abs=1e-15)
    assert f"{r.height:.6f}" == "0.585786"
    assert r.top_radius_h == pytest.approx(math.sqrt(0.5), abs=1e-15)
    assert r.radius_a == pytest.approx(1.0, abs=1e-15)


def test_prism_matches_closed_form():
    for n in range(3, 11):
        r = blaschke_prism(n)
        assert r.width_b == pytest.approx(oracles.prism_b_reference(n), abs=1e-12)
        assert r.width_b > 1.0
        assert max(abs(x) for x in r.residuals) <= 1e-12
        assert (
            max(
                abs(x)
                for x in oracles.prism_residuals(r.radius_a, r.top_radius_h, r.width_b, n)
            )
            <= 1e-12
        )


def test_prism_pin_n3():
    r = blaschke_prism(3)
    assert r.width_b == pytest.approx(math.sqrt(1.5), abs=1e-15)
    assert f"{r.width_b:.6f}" == "1.224745"
    assert r.radius_a == pytest.approx(1.0 / r.width_b, abs=1e-12)
    assert r.top_radius_h == pytest.approx(0.5 / r.width_b, abs=1e-12)


def test_analytic_solutions_are_fast():
    t0 = time.perf_counter()
    for n in range(3, 11):
        blaschke_cone(n)
        blaschke_prism(n)
    assert time.perf_counter() - t0 < 1.0


def test_analytic_rejects_low_dimensions():
    for n in (1, 2):
        with pytest.raises(Unsupported):
            blaschke_cone(n)
        with pytest.raises(Unsupported):
            blaschke_prism(n)


def test_schwarz_box_radius_values():
    r = schwarz_box_radius(3, 1.0)
    assert r == pytest.approx(2.0 / math.sqrt(math.pi), abs=1e-15)
    assert f"{r:.6f}" == "1.128379"
    assert r > 1.0
    # kappa_{n-1} r^{n-1} = 2^{n-1} a in every dimension
    for n in (3, 4, 5):
        for a in (0.5, 1.0, 2.5):
            r = schwarz_box_radius(n, a)
            assert unit_ball_volume(n - 1) * r ** (n - 1) == pytest.approx(
                2.0 ** (n - 1) * a, rel=1e-12
            )
    with pytest.raises(InvalidInput):
        schwarz_box_radius(3, 0.0)


def test_nonmonotonicity_witness():
    w = blaschke_cone_nonmonotonicity_witness(3, 0.1)
    assert w["violation"] is True
    assert w["cylinder_height"] == pytest.approx(0.9)
    assert w["cone_symmetral_height"] == pytest.approx(2.0 - math.sqrt(2.0), abs=1e-12)
    assert blaschke_cone_nonmonotonicity_witness(3, 0.5)["violation"] is False
    with pytest.raises(InvalidInput):
        blaschke_cone_nonmonotonicity_witness(3, 1.0)


def test_make_box():
    B = make_box([1.0, 2.0, 3.0])
    assert len(B.vertices) == 8
    assert volume(B) == pytest.approx(6.0, rel=1e-12)
    assert np.allclose(np.abs(B.vertices), [0.5, 1.0, 1.5])
    with pytest.raises(InvalidInput):
        make_box([1.0, -2.0])


def test_make_cone():
    C = make_cone(3)
    assert len(C.vertices) == 5
    assert volume(C) == pytest.approx(2.0 / 3.0, rel=1e-12)
    T = make_cone(2)
    assert volume(T) == pytest.approx(1.0, rel=1e-12)
    with pytest.raises(Unsupported):
        make_cone(4)


def test_make_spherical_cylinder_shapes():
    H2 = Subspace.line_at_angle(0.0)
    R = make_spherical_cylinder(H2, np.zeros(2), 1.5, 0.5)
    assert len(R.vertices) == 4
    assert volume(R) == pytest.approx(3.0, rel=1e-12)

    H3 = Subspace.line(3, np.array([0.0, 0.0, 1.0]))
    C = make_spherical_cylinder(H3, np.array([0.0, 0.0, 0.25]), 1.0, 0.5)
    assert C.t.tolist() == [-0.75, 1.25]
    assert C.r.tolist() == [0.5, 0.5]

    P = Subspace.span(3, np.eye(3)[:2])
    F = make_spherical_cylinder(P, np.zeros(3), 1.0, 0.25)
    assert F.t.tolist() == [-0.25, 0.25]
    assert F.r.tolist() == [1.0, 1.0]

    with pytest.raises(InvalidInput):
        make_spherical_cylinder(H3, np.zeros(3), -1.0, 0.5)
    with pytest.raises(InvalidInput):
        make_spherical_cylinder(H3, np.array([1.0, 0.0, 0.0]), 1.0, 0.5)
    with pytest.raises(Unsupported):
        make_spherical_cylinder(P, np.array([0.1, 0.0, 0.0]), 1.0, 0.5)


def test_make_random_polytope():
    K = make_random_polytope(3, 40, 11)
    assert np.linalg.norm(K.vertices, axis=1).max() <= 1.0 + 1e-12
    K2 = make_random_polytope(3, 40, 11)
    assert np.array_equal(K.vertices, K2.vertices)
    assert not np.array_equal(K.vertices, make_random_polytope(3, 40, 12).vertices)
    with pytest.raises(InvalidInput):
        make_random_polytope(3, 3, 1)
