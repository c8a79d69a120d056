"""Closed-form reference computations and canonical test bodies.

The Blaschke cone and prism solve small algebraic systems whose residuals
are re-checked by direct substitution; the inscribed-cylinder witness turns
the cone result into a concrete monotonicity violation.  The make_* helpers
build deterministic bodies used throughout the test harness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core_geometry import (
    RevolutionProfile,
    Subspace,
    VPolytope,
    convex_hull,
    unit_ball_volume,
)
from .errors import InvalidInput, Unsupported


@dataclass(frozen=True)
class BlaschkeConeResult:
    """o-symmetric truncated double cone of base radius a and top radius h."""

    n: int
    radius_a: float
    top_radius_h: float
    height: float
    residuals: tuple


@dataclass(frozen=True)
class BlaschkePrismResult:
    """Triangular-profile prism parameters (a, h) and half-width b."""

    n: int
    width_b: float
    radius_a: float
    top_radius_h: float
    residuals: tuple


def blaschke_cone(n):
    """Parameters of the truncated double cone with base radius 1.

    The top radius balances the top-disk surface measure against half the
    unit measure, h^(n-1) = 1/2, and the height is 2(a - h).
    """
    if n < 3:
        raise Unsupported("needs n >= 3")
    a = 1.0
    h = 2.0 ** (-1.0 / (n - 1))
    height = 2.0 * (a - h)
    kap = unit_ball_volume(n - 1)
    # top ball measure and the lateral-area balance, by direct substitution
    r1 = abs(kap * h ** (n - 1) - kap / 2.0)
    r2 = abs(math.sqrt(2.0) * kap * (a ** (n - 1) - h ** (n - 1)) - math.sqrt(2.0) * kap / 2.0)
    res = (r1, r2)
    if not (0.0 < h < a and height < 1.0):
        raise InvalidInput("cone solution out of range")
    if abs(height - 2.0 * (a - h)) > 1e-15 or max(res) > 1e-12:
        raise InvalidInput("cone equations not satisfied")
    return BlaschkeConeResult(n, a, h, height, res)


def blaschke_prism(n):
    """Parameters of the symmetric prism with unit balance conditions.

    Solves h^(n-2) b = 1/2, 2(a^(n-1) - h^(n-1)) = 1 and
    2(a^(n-2) - h^(n-2)) b = 1 in closed form and re-checks all three.
    """
    if n < 3:
        raise Unsupported("needs n >= 3")
    q = 2.0 ** ((n - 1.0) / (n - 2.0))
    h = (2.0 * (q - 1.0)) ** (-1.0 / (n - 1))
    a = 2.0 ** (1.0 / (n - 2)) * h
    b = 2.0 ** (-1.0 / (n - 1)) * (q - 1.0) ** ((n - 2.0) / (n - 1.0))
    res = (
        abs(h ** (n - 2) * b - 0.5),
        abs(2.0 * (a ** (n - 1) - h ** (n - 1)) - 1.0),
        abs(2.0 * (a ** (n - 2) - h ** (n - 2)) * b - 1.0),
    )
    if max(res) > 1e-12:
        raise InvalidInput("prism equations not satisfied")
    return BlaschkePrismResult(n, b, a, h, res)


def blaschke_cone_nonmonotonicity_witness(n, s):
    """Inscribed-cylinder height versus the symmetral cone height.

    A cylinder of base radius s inside the unit cone has height 1 - s; when
    that exceeds the symmetral's height, monotonicity fails for the cone
    construction.
    """
    if not 0.0 < s < 1.0:
        raise InvalidInput("need 0 < s < 1")
    cone = blaschke_cone(n)
    w = 1.0 - s
    return {
        "cylinder_height": w,
        "cone_symmetral_height": cone.height,
        "violation": w > cone.height,
    }


def schwarz_box_radius(n, a):
    """Slice radius of the Schwarz symmetral of [-1,1]^(n-1) x [-a,a] about
    the e1-axis: kappa_{n-1} r^{n-1} = 2^{n-1} a."""
    if a <= 0:
        raise InvalidInput("need a > 0")
    i = 1
    kap = unit_ball_volume(n - i)
    return (2.0 ** (n - i) * a / kap) ** (1.0 / (n - i))


def make_box(dims):
    """Axis-aligned box prod_i [-d_i/2, d_i/2]."""
    d = np.asarray(dims, dtype=float)
    if d.ndim != 1 or d.shape[0] not in (2, 3) or np.any(d <= 0):
        raise InvalidInput("dims must be 2 or 3 positive lengths")
    half = d / 2.0
    n = d.shape[0]
    corners = np.array(
        [[(1 if (k >> j) & 1 else -1) for j in range(n)] for k in range(2**n)],
        dtype=float,
    )
    return convex_hull(corners * half)


def make_cone(n):
    """Canonical pyramid: apex e_n over the cross-polytope in e_n-perp."""
    if n not in (2, 3):
        raise Unsupported("only dimensions 2 and 3")
    base = np.vstack([np.eye(n - 1), -np.eye(n - 1)])
    base = np.column_stack([base, np.zeros(len(base))])
    apex = np.zeros((1, n))
    apex[0, -1] = 1.0
    return convex_hull(np.vstack([base, apex]))


def make_random_polytope(n, m, seed):
    """Hull of m uniform points in the unit ball, deterministic per seed."""
    if n not in (2, 3):
        raise Unsupported("only dimensions 2 and 3")
    if m < n + 1:
        raise InvalidInput("need m >= n + 1")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((m, n))
    g /= np.linalg.norm(g, axis=1)[:, None]
    radii = rng.random((m, 1)) ** (1.0 / n)
    return convex_hull(g * radii)


def make_spherical_cylinder(H, x, r, s):
    """D_r(x) + s(B^n cap H-perp): a product of a ball in H centered at
    x with a centered ball in H-perp.

    Returned as a rectangle for (n=2, i=1), a revolution profile about H for
    (n=3, i=1), and a flat revolution profile about H-perp for (n=3, i=2)
    with x = o.
    """
    if r <= 0 or s <= 0:
        raise InvalidInput("need r, s > 0")
    x = np.asarray(x, dtype=float)
    n = H.ambient_dim
    if x.shape != (n,):
        raise InvalidInput("center must be a point of H")
    if np.linalg.norm(x - H.projection_matrix() @ x) > 1e-9:
        raise InvalidInput("center must lie in H")
    if n == 2 and H.dim == 1:
        a = H.basis[0]
        u = H.complement[0]
        t0 = float(x @ a)
        pts = [
            (t0 - r) * a - s * u,
            (t0 + r) * a - s * u,
            (t0 + r) * a + s * u,
            (t0 - r) * a + s * u,
        ]
        return convex_hull(np.array(pts))
    if n == 3 and H.dim == 1:
        t0 = float(x @ H.basis[0])
        return RevolutionProfile(
            H, np.array([t0 - r, t0 + r]), np.array([s, s])
        )
    if n == 3 and H.dim == 2:
        if np.linalg.norm(x) > 1e-12:
            raise Unsupported("flat cylinders support x = o only")
        axis = Subspace.line(3, H.complement[0])
        return RevolutionProfile(axis, np.array([-s, s]), np.array([r, r]))
    raise Unsupported("supported: (n,i) in {(2,1),(3,1),(3,2)}")
