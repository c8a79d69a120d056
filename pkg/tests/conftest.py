"""Shared generators for the symkit test suite."""

import numpy as np

from symkit import Subspace, convex_hull


def random_polytope(seed, n, npts=None):
    """Seeded random hull: 10-50 points in 2-D, 10-30 in 3-D, mixed scale."""
    rng = np.random.default_rng(seed)
    if npts is None:
        hi = 51 if n == 2 else 31
        npts = int(rng.integers(10, hi))
    pts = rng.standard_normal((npts, n)) * rng.uniform(0.5, 2.0)
    return convex_hull(pts)


def random_line(seed, n):
    rng = np.random.default_rng(seed)
    d = rng.standard_normal(n)
    d /= np.linalg.norm(d)
    return Subspace.line(n, d)


def random_hyperplane_subspace(seed, n):
    """Random (n-1)-dimensional subspace."""
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    q = q * np.sign(np.diag(r))
    return Subspace.span(n, q[:, : n - 1].T)
