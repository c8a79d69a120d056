"""Core geometry kernels against independent Qhull/brute-force references."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import random_line, random_polytope
from symkit import (
    DEFAULT_TOL,
    RevolutionProfile,
    Subspace,
    SupportSample,
    ToleranceConfig,
    VPolytope,
    ball_v1,
    circumradius,
    contains,
    convex_hull,
    direction_grid,
    hausdorff_distance,
    inclusion_margin,
    intrinsic_volume_1,
    latlong_grid,
    minkowski_sum,
    project,
    reflect,
    sample_body,
    sample_to_polytope,
    steiner_point,
    support,
    support_batch,
    translate,
    unit_ball_volume,
    volume,
)
from symkit.core_geometry import HPolytope, halfspaces_of, intersect_halfspaces
from symkit.errors import Empty, InvalidInput


@st.composite
def point_cloud(draw, dim, min_points=4, max_points=40):
    seed = draw(st.integers(min_value=0, max_value=2**31 - 1))
    m = draw(st.integers(min_value=min_points, max_value=max_points))
    rng = np.random.default_rng(seed)
    return rng.standard_normal((m, dim)) * rng.uniform(0.2, 3.0)


# --- hulls ----------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(point_cloud(2))
def test_hull_area_matches_qhull_2d(pts):
    P = convex_hull(pts)
    assert volume(P) == pytest.approx(oracles.hull_volume(pts), rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(point_cloud(3, min_points=5))
def test_hull_volume_matches_qhull_3d(pts):
    P = convex_hull(pts)
    assert volume(P) == pytest.approx(oracles.hull_volume(pts), rel=1e-10)


@settings(max_examples=40, deadline=None)
@given(point_cloud(2))
def test_hull_contains_every_input_point(pts):
    P = convex_hull(pts)
    scale = float(np.abs(pts).max())
    assert oracles.contains_reference(P.vertices, pts, 1e-9 * scale)


def test_hull_vertices_subset_of_input():
    rng = np.random.default_rng(7)
    pts = rng.standard_normal((30, 2))
    P = convex_hull(pts)
    # every hull vertex is one of the inputs, bit for bit
    rows = {tuple(p) for p in pts}
    assert all(tuple(v) in rows for v in P.vertices)


def test_hull_idempotent_and_order_canonical():
    rng = np.random.default_rng(3)
    pts = rng.standard_normal((25, 2))
    P = convex_hull(pts)
    Q = convex_hull(P.vertices[::-1])
    assert np.array_equal(P.vertices, Q.vertices)


def test_hull_collinear_collapses_to_segment():
    P = convex_hull(np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]))
    assert P.vertices.shape == (2, 2)
    assert volume(P) == 0.0


def test_hull_rejects_bad_input():
    with pytest.raises(InvalidInput):
        convex_hull(np.zeros((0, 2)))
    with pytest.raises(InvalidInput):
        convex_hull(np.array([[np.nan, 0.0], [1.0, 0.0], [0.0, 1.0]]))


# --- support functions ----------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(point_cloud(3, min_points=5), st.integers(0, 2**31 - 1))
def test_support_is_vertex_maximum(pts, dirseed):
    P = convex_hull(pts)
    rng = np.random.default_rng(dirseed)
    u = rng.standard_normal(3)
    u /= np.linalg.norm(u)
    assert support(P, u) == pytest.approx(oracles.support_max(pts, u), abs=1e-12)


def test_support_batch_matches_scalar():
    P = random_polytope(11, 2)
    U = direction_grid(2, 64)
    hs = support_batch(P, U)
    for u, h in zip(U, hs):
        # BLAS and scalar reductions may differ in the last ulp
        assert support(P, u) == pytest.approx(h, rel=1e-15)


def test_support_sample_round_trip():
    P = random_polytope(5, 2)
    grid = direction_grid(2, 512)
    S = sample_body(P, grid)
    assert isinstance(S, SupportSample)
    Q = sample_to_polytope(S)
    # the reconstruction circumscribes P, with error of the order of the
    # grid spacing at sharp vertices
    assert contains(Q, P, 1e-9 * circumradius(P))
    assert hausdorff_distance(P, Q) < 2e-2 * circumradius(P)


# --- intrinsic volumes ----------------------------------------------------


def test_ball_constants():
    assert unit_ball_volume(2) == pytest.approx(math.pi, rel=1e-15)
    assert unit_ball_volume(3) == pytest.approx(4.0 * math.pi / 3.0, rel=1e-15)
    # V_1 of the unit ball: pi in the plane, 4 in space
    assert ball_v1(2, 1.0) == pytest.approx(math.pi, rel=1e-15)
    assert ball_v1(3, 1.0) == pytest.approx(4.0, rel=1e-15)


def test_v1_of_unit_cube_is_three():
    cube = convex_hull(np.array(np.meshgrid(*[[0.0, 1.0]] * 3)).reshape(3, -1).T)
    assert intrinsic_volume_1(cube) == pytest.approx(3.0, rel=1e-12)


@pytest.mark.parametrize("n", [2, 3])
def test_v1_matches_reference_formula(n):
    for seed in range(8):
        P = random_polytope((n, seed), n)
        ref = oracles.v1_reference(P.vertices)
        assert intrinsic_volume_1(P) == pytest.approx(ref, rel=1e-9)


def test_volume_of_degenerate_is_zero():
    seg = convex_hull(np.array([[0.0, 0.0], [1.0, 1.0]]))
    assert volume(seg) == 0.0


# --- Minkowski sums -------------------------------------------------------


@settings(max_examples=30, deadline=None)
@given(point_cloud(2, max_points=15), point_cloud(2, max_points=15))
def test_minkowski_sum_support_additive(a, b):
    P, Q = convex_hull(a), convex_hull(b)
    S = minkowski_sum(P, Q)
    U = direction_grid(2, 128)
    lhs = support_batch(S, U)
    rhs = support_batch(P, U) + support_batch(Q, U)
    assert np.abs(lhs - rhs).max() < 1e-10 * max(1.0, np.abs(lhs).max())


def test_minkowski_sum_matches_pairwise_hull():
    P = random_polytope(21, 3)
    Q = random_polytope(22, 3)
    S = minkowski_sum(P, Q)
    pairwise = (P.vertices[:, None, :] + Q.vertices[None, :, :]).reshape(-1, 3)
    assert volume(S) == pytest.approx(oracles.hull_volume(pairwise), rel=1e-10)


def test_square_plus_square_scales():
    sq = convex_hull(np.array([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]))
    S = minkowski_sum(sq, sq)
    assert volume(S) == pytest.approx(16.0, rel=1e-12)


# --- metrics and predicates -----------------------------------------------


def test_hausdorff_of_translate_is_shift_norm():
    P = random_polytope(31, 2)
    t = np.array([0.3, -0.2])
    assert hausdorff_distance(P, translate(P, t)) == pytest.approx(
        np.linalg.norm(t), rel=1e-6
    )


def test_hausdorff_equals_support_gap_on_grid():
    # the metric is the sup-norm distance between support functions; the
    # implementation augments the uniform grid with feature directions, so
    # it can only exceed the plain grid estimate, and barely
    A = random_polytope(41, 2)
    B = random_polytope(42, 2)
    U = direction_grid(2, 4096)
    gap = np.abs(support_batch(A, U) - support_batch(B, U)).max()
    hd = hausdorff_distance(A, B)
    assert gap - 1e-12 <= hd <= gap + 1e-3 * circumradius(A)


def test_contains_and_margin_signs():
    sq = convex_hull(np.array([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]))
    big = convex_hull(2.0 * sq.vertices)
    assert contains(big, sq, 1e-12)
    assert not contains(sq, big, 1e-12)
    # margin is max over directions of h_inner - h_outer: the square's
    # support ranges over [1, sqrt(2)], so doubling gives these exactly
    assert inclusion_margin(big, sq) == pytest.approx(-1.0, rel=1e-9)
    assert inclusion_margin(sq, big) == pytest.approx(math.sqrt(2.0), rel=1e-9)


def test_circumradius_is_farthest_vertex_from_centroid():
    P = random_polytope(51, 3)
    c = P.centroid()
    assert circumradius(P) == pytest.approx(
        float(np.linalg.norm(P.vertices - c, axis=1).max()), rel=1e-12
    )


def test_steiner_point_of_symmetric_body_is_center():
    sq = convex_hull(np.array([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]))
    assert np.abs(steiner_point(sq)).max() < 1e-12
    shifted = translate(sq, np.array([0.7, -1.3]))
    assert steiner_point(shifted) == pytest.approx([0.7, -1.3], abs=1e-9)


# --- reflect / project ----------------------------------------------------


def test_reflect_is_involution():
    P = random_polytope(61, 3)
    H = random_line(62, 3)
    Q = reflect(reflect(P, H), H)
    assert hausdorff_distance(P, Q) < 1e-12


def test_reflect_fixes_subspace_points():
    H = Subspace.line_at_angle(0.7)
    d = H.basis[0]
    seg = convex_hull(np.array([d * 2.0, -d * 1.0]))
    assert hausdorff_distance(seg, reflect(seg, H)) < 1e-12


def test_project_onto_line():
    P = random_polytope(71, 2)
    H = Subspace.line_at_angle(1.1)
    Q = project(P, H)
    d = H.basis[0]
    spans = P.vertices @ d
    expect = np.array([d * spans.min(), d * spans.max()])
    got = Q.vertices @ d
    assert sorted(got) == pytest.approx(sorted([spans.min(), spans.max()]), rel=1e-12)
    assert np.abs(Q.vertices @ H.complement[0]).max() < 1e-12
    assert expect.shape == Q.vertices.shape


# --- halfspaces -----------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3])
def test_halfspace_round_trip(n):
    P = random_polytope((81, n), n)
    hp = halfspaces_of(P)
    Q = intersect_halfspaces(hp)
    assert hausdorff_distance(P, Q) < 1e-8 * circumradius(P)


def test_empty_intersection_raises():
    hp = HPolytope(
        np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]]),
        np.array([-1.0, -1.0, 1.0, 1.0]),
    )
    with pytest.raises(Empty):
        intersect_halfspaces(hp)


# --- grids and configs ----------------------------------------------------


def test_direction_grid_units_and_anchor():
    U = direction_grid(2, 128, 0.3)
    assert U.shape == (128, 2)
    assert np.abs(np.linalg.norm(U, axis=1) - 1.0).max() < 1e-12
    assert U[0] == pytest.approx([math.cos(0.3), math.sin(0.3)], abs=1e-15)
    V = direction_grid(3, 500)
    assert V.shape == (500, 3)
    assert np.abs(np.linalg.norm(V, axis=1) - 1.0).max() < 1e-12


def test_latlong_grid_reflection_closed():
    H = Subspace.line(3, np.array([0.0, 0.0, 1.0]))
    G = latlong_grid(H, 16, 32)
    R = H.reflection_matrix()
    refl = G @ R.T
    # every reflected direction appears in the grid
    d = np.abs(refl[:, None, :] - G[None, :, :]).max(axis=2).min(axis=1)
    assert d.max() < 1e-12


def test_tolerance_config_validation():
    with pytest.raises(InvalidInput):
        ToleranceConfig(hull_eps=0.0)
    with pytest.raises(InvalidInput):
        ToleranceConfig(slice_count=0)
    assert DEFAULT_TOL.hausdorff_grid(2) == DEFAULT_TOL.hausdorff_grid_2d
    assert DEFAULT_TOL.hausdorff_grid(3) == DEFAULT_TOL.hausdorff_grid_3d


def test_subspace_validation():
    # a dependent spanning set collapses to the subspace it actually spans
    assert Subspace.span(2, np.array([[0.0, 0.0]])).dim == 0
    assert Subspace.span(3, np.array([[1.0, 0.0, 0.0], [2.0, 0.0, 0.0]])).dim == 1
    H = Subspace.line_at_angle(0.25)
    assert H.dim == 1 and H.ambient_dim == 2
    P = H.projection_matrix()
    assert np.allclose(P @ P, P)
    R = H.reflection_matrix()
    assert np.allclose(R @ R, np.eye(2))


def test_revolution_profile_radius_interpolation():
    H = Subspace.line(3, np.array([0.0, 0.0, 1.0]))
    prof = RevolutionProfile(H, np.array([0.0, 1.0]), np.array([1.0, 0.0]))
    assert prof.radius_at(0.5) == pytest.approx(0.5)
    assert volume(prof) == pytest.approx(math.pi / 3.0, rel=1e-12)
