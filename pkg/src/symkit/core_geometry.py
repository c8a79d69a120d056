"""Convex geometry kernel in dimensions 2 and 3.

Bodies come in three representations:

* ``VPolytope``: extreme points only.  2-D vertices are stored in
  counterclockwise order starting at the lexicographic minimum; 3-D vertices
  are stored lexicographically sorted.
* ``SupportSample``: values of the support function on a fixed symmetric
  direction grid.
* ``RevolutionProfile``: a concave piecewise-linear radius profile about a
  1-dimensional axis in R^3.

All operations are pure functions of their arguments; nothing mutates, and
results are deterministic for a fixed ``ToleranceConfig``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import (
    Degenerate,
    Empty,
    EmptyInput,
    InvalidInput,
    InvalidSubspace,
    Unbounded,
    Unsupported,
)

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


def unit_ball_volume(n):
    """Volume of the n-dimensional unit ball (kappa_n)."""
    return math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0)


def ball_v1(n, r):
    """Intrinsic volume V_1 of a ball of radius r in R^n."""
    return n * unit_ball_volume(n) * r / unit_ball_volume(n - 1)


@dataclass(frozen=True)
class ToleranceConfig:
    """Numeric knobs shared by the whole package.

    hull_eps is relative (scaled by the coordinate magnitude of the body at
    the point of use); inclusion_eps is meant to be multiplied by a
    circumradius by callers that need an absolute slack.
    """

    hull_eps: float = 1e-9
    inclusion_eps: float = 1e-7
    hausdorff_grid_2d: int = 4096
    hausdorff_grid_3d: int = 8192
    slice_count: int = 256

    def __post_init__(self):
        if min(self.hull_eps, self.inclusion_eps) <= 0:
            raise InvalidInput("tolerances must be positive")
        if min(self.hausdorff_grid_2d, self.hausdorff_grid_3d, self.slice_count) <= 0:
            raise InvalidInput("grid sizes must be positive")

    def hausdorff_grid(self, n):
        return self.hausdorff_grid_2d if n == 2 else self.hausdorff_grid_3d


DEFAULT_TOL = ToleranceConfig()


class Subspace:
    """Linear subspace of R^n spanned by orthonormal basis rows.

    dim 0 (the origin) is allowed and has an empty basis.  The orthogonal
    complement basis is computed eagerly; reflections and projections reuse
    it.
    """

    __slots__ = ("ambient_dim", "dim", "basis", "complement")

    def __init__(self, ambient_dim, basis):
        ambient_dim = int(ambient_dim)
        if ambient_dim not in (2, 3):
            raise InvalidSubspace("ambient dimension must be 2 or 3")
        basis = np.asarray(basis, dtype=float)
        if basis.size == 0:
            basis = np.zeros((0, ambient_dim))
        basis = np.atleast_2d(basis)
        if basis.shape[1] != ambient_dim:
            raise InvalidSubspace("basis vectors must have length %d" % ambient_dim)
        if basis.shape[0] >= ambient_dim:
            raise InvalidSubspace("subspace dimension must be < ambient dimension")
        if basis.size and not np.all(np.isfinite(basis)):
            raise InvalidSubspace("basis entries must be finite")
        gram = basis @ basis.T
        if basis.shape[0] and not np.allclose(
            gram, np.eye(basis.shape[0]), atol=1e-12, rtol=0.0
        ):
            raise InvalidSubspace("basis must be orthonormal within 1e-12")
        self.ambient_dim = ambient_dim
        self.dim = basis.shape[0]
        self.basis = basis
        self.basis.setflags(write=False)
        # complement from the full QR of [basis; I]
        q, _ = np.linalg.qr(
            np.vstack([basis, np.eye(ambient_dim)]).T, mode="complete"
        )
        comp = q[:, self.dim :].T.copy()
        comp.setflags(write=False)
        self.complement = comp

    @classmethod
    def span(cls, ambient_dim, vectors):
        """Subspace spanned by (possibly non-orthonormal) vectors."""
        vecs = np.atleast_2d(np.asarray(vectors, dtype=float))
        q, r = np.linalg.qr(vecs.T)
        keep = np.abs(np.diag(r)) > 1e-12
        return cls(ambient_dim, q.T[keep])

    @classmethod
    def line(cls, ambient_dim, direction):
        d = np.asarray(direction, dtype=float)
        nrm = np.linalg.norm(d)
        if nrm < 1e-12:
            raise InvalidSubspace("zero direction")
        return cls(ambient_dim, (d / nrm)[None, :])

    @classmethod
    def line_at_angle(cls, theta):
        return cls(2, [[math.cos(theta), math.sin(theta)]])

    @classmethod
    def from_normal(cls, normal):
        """Hyperplane through o with the given normal."""
        nv = np.asarray(normal, dtype=float)
        n = nv.shape[0]
        nrm = np.linalg.norm(nv)
        if nrm < 1e-12:
            raise InvalidSubspace("zero normal")
        helper = cls.line(n, nv)
        return cls(n, helper.complement)

    @classmethod
    def origin(cls, ambient_dim):
        return cls(ambient_dim, np.zeros((0, ambient_dim)))

    def perp(self):
        return Subspace(self.ambient_dim, self.complement)

    def projection_matrix(self):
        return self.basis.T @ self.basis

    def reflection_matrix(self):
        return 2.0 * self.projection_matrix() - np.eye(self.ambient_dim)

    def __repr__(self):
        return "Subspace(n=%d, dim=%d, basis=%s)" % (
            self.ambient_dim,
            self.dim,
            np.array2string(self.basis, precision=6),
        )


class VPolytope:
    """Convex polytope given by its extreme points.

    Construct through convex_hull() unless the vertex array is already in
    canonical form (CCW from the lexicographic minimum in 2-D, lexicographic
    sort in 3-D) with no redundant points.
    """

    __slots__ = ("ambient_dim", "vertices", "_cache")

    def __init__(self, vertices):
        verts = np.atleast_2d(np.asarray(vertices, dtype=float))
        if verts.size == 0:
            raise EmptyInput("polytope needs at least one vertex")
        if verts.shape[1] not in (2, 3):
            raise InvalidInput("ambient dimension must be 2 or 3")
        self.ambient_dim = verts.shape[1]
        verts = verts.copy()
        verts.setflags(write=False)
        self.vertices = verts
        self._cache = {}

    def __len__(self):
        return self.vertices.shape[0]

    def __repr__(self):
        return "VPolytope(n=%d, %d vertices)" % (self.ambient_dim, len(self))

    def centroid(self):
        """Vertex barycenter (not the volume centroid)."""
        return self.vertices.mean(axis=0)

    def qhull(self):
        """Cached scipy hull; only valid for full-dimensional 3-D bodies."""
        if "qhull" not in self._cache:
            from scipy.spatial import ConvexHull

            self._cache["qhull"] = ConvexHull(self.vertices)
        return self._cache["qhull"]


class SupportSample:
    """Support function values on a fixed symmetric direction grid."""

    __slots__ = ("ambient_dim", "grid", "values", "_cache")

    def __init__(self, grid, values):
        grid = np.atleast_2d(np.asarray(grid, dtype=float))
        values = np.asarray(values, dtype=float)
        if grid.shape[0] != values.shape[0]:
            raise InvalidInput("grid and values must have equal length")
        if grid.shape[1] not in (2, 3):
            raise InvalidInput("ambient dimension must be 2 or 3")
        self.ambient_dim = grid.shape[1]
        self.grid = grid
        self.values = values
        self.grid.setflags(write=False)
        self.values.setflags(write=False)
        self._cache = {}

    def __len__(self):
        return self.grid.shape[0]

    def __repr__(self):
        return "SupportSample(n=%d, %d directions)" % (self.ambient_dim, len(self))

    def is_sorted_circle(self):
        """True when the 2-D grid is uniformly spaced and sorted by angle."""
        if self.ambient_dim != 2:
            return False
        if "sorted_circle" not in self._cache:
            ang = np.arctan2(self.grid[:, 1], self.grid[:, 0])
            d = np.diff(ang)
            d = np.where(d < 0, d + 2 * math.pi, d)
            step = 2 * math.pi / len(self)
            self._cache["sorted_circle"] = bool(np.all(np.abs(d - step) < 1e-9))
        return self._cache["sorted_circle"]

    def angles(self):
        a = np.arctan2(self.grid[:, 1], self.grid[:, 0])
        return np.where(a < 0, a + 2 * math.pi, a)


class RevolutionProfile:
    """Body of revolution about a line through o in R^3.

    stations are (t, r) pairs with t the coordinate along the axis and r the
    radius of the orthogonal disk; the profile is the concave piecewise-linear
    interpolant, so the body is the convex hull of the station disks.
    """

    __slots__ = ("axis", "t", "r", "ambient_dim")

    def __init__(self, axis, t, r, *, concavify=True):
        if not isinstance(axis, Subspace) or axis.dim != 1 or axis.ambient_dim != 3:
            raise InvalidSubspace("axis must be a 1-dimensional subspace of R^3")
        t = np.asarray(t, dtype=float)
        r = np.asarray(r, dtype=float)
        if t.ndim != 1 or t.shape != r.shape or t.size == 0:
            raise InvalidInput("stations must be parallel nonempty 1-D arrays")
        order = np.argsort(t)
        t = t[order]
        r = np.maximum(r[order], 0.0)
        if concavify:
            r = _concave_envelope(t, r)
        self.axis = axis
        self.t = t
        self.r = r
        self.t.setflags(write=False)
        self.r.setflags(write=False)
        self.ambient_dim = 3

    def __repr__(self):
        return "RevolutionProfile(%d stations, t in [%g, %g])" % (
            self.t.size,
            self.t[0],
            self.t[-1],
        )

    def radius_at(self, tq):
        """Profile radius at axis coordinate(s) tq; zero outside the body."""
        tq = np.asarray(tq, dtype=float)
        out = np.interp(tq, self.t, self.r, left=0.0, right=0.0)
        inside = (tq >= self.t[0] - 1e-15) & (tq <= self.t[-1] + 1e-15)
        return np.where(inside, out, 0.0)


def _concave_envelope(t, r):
    """Least concave majorant turned minorant cleanup: upper hull of (t, r).

    Returns radii on the same stations, taken from the upper convex-position
    chain of the points.  Collapses numerical dents; never increases r by more
    than it must to restore concavity.
    """
    if t.size <= 2:
        return r
    pts = np.column_stack([t, r])
    # upper chain of the monotone chain algorithm
    upper = []
    for i in range(pts.shape[0]):
        while len(upper) >= 2:
            a, b = pts[upper[-2]], pts[upper[-1]]
            c = pts[i]
            if (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) >= 0:
                upper.pop()
            else:
                break
        upper.append(i)
    return np.interp(t, t[upper], r[upper])


ConvexBody = (VPolytope, SupportSample, RevolutionProfile)


# ---------------------------------------------------------------------------
# direction grids


@lru_cache(maxsize=64)
def _circle_grid_cached(m, theta0):
    ang = theta0 + 2.0 * math.pi * np.arange(m) / m
    g = np.column_stack([np.cos(ang), np.sin(ang)])
    g.setflags(write=False)
    return g


@lru_cache(maxsize=16)
def _fibonacci_sphere_cached(m):
    i = np.arange(m)
    z = 1.0 - (2.0 * i + 1.0) / m
    rho = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    phi = GOLDEN_ANGLE * i
    g = np.column_stack([rho * np.cos(phi), rho * np.sin(phi), z])
    g.setflags(write=False)
    return g


def direction_grid(n, m, theta0=0.0):
    """m near-uniform unit directions: circle grid (n=2), Fibonacci sphere (n=3)."""
    if n == 2:
        return _circle_grid_cached(int(m), float(theta0))
    if n == 3:
        return _fibonacci_sphere_cached(int(m))
    raise Unsupported("only dimensions 2 and 3")


def latlong_grid(axis, n_lat=32, n_lon=64):
    """Latitude-longitude direction grid about a 1-D axis subspace in R^3.

    Polar angles sit at ring midpoints, so no direction hits a pole.  With
    n_lon even, the grid is closed under u -> -u and under reflection in the
    axis line, in any plane containing the axis spanned with a grid
    longitude, and in the plane orthogonal to the axis.
    """
    if axis.ambient_dim != 3 or axis.dim != 1:
        raise InvalidSubspace("latlong_grid needs a line in R^3")
    if n_lat < 2 or n_lon < 4 or n_lon % 2:
        raise InvalidInput("need n_lat >= 2 and even n_lon >= 4")
    a = axis.basis[0]
    w1, w2 = axis.complement
    psi = math.pi * (np.arange(n_lat) + 0.5) / n_lat
    phi = 2.0 * math.pi * np.arange(n_lon) / n_lon
    ring = np.cos(phi)[:, None] * w1 + np.sin(phi)[:, None] * w2
    g = (
        np.cos(psi)[:, None, None] * a + np.sin(psi)[:, None, None] * ring[None]
    ).reshape(-1, 3)
    return g / np.linalg.norm(g, axis=1)[:, None]


# ---------------------------------------------------------------------------
# hull construction


def _canonical_2d(verts):
    """Reorder already-extreme 2-D vertices: CCW from the lexicographic min."""
    if verts.shape[0] <= 2:
        order = np.lexsort((verts[:, 1], verts[:, 0]))
        return verts[order]
    start = np.lexsort((verts[:, 1], verts[:, 0]))[0]
    rolled = np.roll(verts, -start, axis=0)
    area2 = np.sum(
        rolled[:, 0] * np.roll(rolled[:, 1], -1) - np.roll(rolled[:, 0], -1) * rolled[:, 1]
    )
    if area2 < 0:
        rolled = np.roll(rolled[::-1], 1, axis=0)
    return rolled


def _hull_2d(pts, tol):
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    p = np.ascontiguousarray(pts[order])
    scale = max(1.0, float(np.abs(p).max()))
    eps = 0.5 * tol.hull_eps * scale * scale
    idx = _kernels.convex_hull_idx(
        np.ascontiguousarray(p[:, 0]), np.ascontiguousarray(p[:, 1]), eps
    )
    verts = p[idx]
    if verts.shape[0] == 2 and np.linalg.norm(verts[1] - verts[0]) <= tol.hull_eps * scale:
        verts = verts[:1]
    return VPolytope(verts)


def _affine_frame(pts, tol):
    """(center, singular values, right-singular rows) of the centered cloud."""
    c = pts.mean(axis=0)
    q = pts - c
    if pts.shape[0] == 1:
        return c, np.zeros(pts.shape[1]), np.eye(pts.shape[1])
    _, s, vt = np.linalg.svd(q, full_matrices=True)
    sfull = np.zeros(pts.shape[1])
    sfull[: s.shape[0]] = s
    return c, sfull, vt


def _hull_3d(pts, tol):
    scale = max(1.0, float(np.abs(pts).max()))
    c, s, vt = _affine_frame(pts, tol)
    thresh = tol.hull_eps * scale * max(1.0, math.sqrt(pts.shape[0]))
    rank = int(np.sum(s > thresh))
    if rank == 0:
        return VPolytope(c[None, :])
    if rank == 1:
        d = vt[0]
        tproj = (pts - c) @ d
        lo, hi = tproj.min(), tproj.max()
        return VPolytope(np.vstack([c + lo * d, c + hi * d]))
    if rank == 2:
        basis = vt[:2]
        flat = _hull_2d((pts - c) @ basis.T, tol)
        lifted = flat.vertices @ basis + c
        order = np.lexsort((lifted[:, 2], lifted[:, 1], lifted[:, 0]))
        return VPolytope(lifted[order])
    from scipy.spatial import ConvexHull

    hull = ConvexHull(pts)
    verts = pts[hull.vertices]
    order = np.lexsort((verts[:, 2], verts[:, 1], verts[:, 0]))
    return VPolytope(verts[order])


def convex_hull(points, tol=DEFAULT_TOL):
    """Hull of a point cloud as a VPolytope of extreme points only."""
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        raise EmptyInput("convex_hull of no points")
    pts = np.atleast_2d(pts)
    if pts.shape[1] not in (2, 3):
        raise InvalidInput("points must live in R^2 or R^3")
    if not np.all(np.isfinite(pts)):
        raise InvalidInput("points must be finite")
    # lexsort + diff dedup; np.unique(axis=0) falls back to a structured
    # sort that dominates hull time on iterated workloads
    order = np.lexsort(pts.T[::-1])
    pts = pts[order]
    keep = np.ones(pts.shape[0], dtype=bool)
    keep[1:] = np.any(pts[1:] != pts[:-1], axis=1)
    pts = pts[keep]
    if pts.shape[0] == 1:
        return VPolytope(pts)
    if pts.shape[1] == 2:
        return _hull_2d(pts, tol)
    return _hull_3d(pts, tol)


# ---------------------------------------------------------------------------
# halfspace representation


class HPolytope:
    """Intersection of halfspaces normal.x <= offset."""

    __slots__ = ("ambient_dim", "normals", "offsets")

    def __init__(self, normals, offsets):
        normals = np.atleast_2d(np.asarray(normals, dtype=float))
        offsets = np.asarray(offsets, dtype=float)
        if normals.shape[0] != offsets.shape[0]:
            raise InvalidInput("normals and offsets must have equal length")
        if normals.shape[1] not in (2, 3):
            raise InvalidInput("ambient dimension must be 2 or 3")
        nrm = np.linalg.norm(normals, axis=1)
        degenerate = nrm < 1e-14
        if np.any(degenerate & (offsets < 0)):
            raise Empty("zero normal with negative offset")
        keep = ~degenerate
        self.ambient_dim = normals.shape[1]
        self.normals = normals[keep] / nrm[keep, None]
        self.offsets = offsets[keep] / nrm[keep]

    def __len__(self):
        return self.normals.shape[0]


def halfspaces_of(P, tol=DEFAULT_TOL):
    """Facet description of a full-dimensional polytope."""
    if P.ambient_dim == 2:
        v = P.vertices
        if v.shape[0] < 3:
            raise Degenerate("2-D body is not full-dimensional")
        e = np.roll(v, -1, axis=0) - v
        normals = np.column_stack([e[:, 1], -e[:, 0]])
        nrm = np.linalg.norm(normals, axis=1)
        normals = normals / nrm[:, None]
        offsets = np.sum(normals * v, axis=1)
        return HPolytope(normals, offsets)
    hull = P.qhull()
    eq = hull.equations
    return HPolytope(eq[:, :3], -eq[:, 3])


def _probe_feasible(normals, offsets):
    from scipy.optimize import linprog

    res = linprog(
        np.zeros(normals.shape[1]),
        A_ub=normals,
        b_ub=offsets,
        bounds=[(None, None)] * normals.shape[1],
        method="highs",
    )
    return res.status == 0


def _intersect_halfspaces_bruteforce_2d(normals, offsets, tol):
    scale = max(1.0, float(np.abs(offsets).max()))
    feas_tol = 1e-9 * scale
    m = normals.shape[0]
    cand = []
    for a in range(m):
        for b in range(a + 1, m):
            mat = np.array([normals[a], normals[b]])
            det = mat[0, 0] * mat[1, 1] - mat[0, 1] * mat[1, 0]
            if abs(det) < 1e-13:
                continue
            x = np.linalg.solve(mat, np.array([offsets[a], offsets[b]]))
            if np.all(normals @ x <= offsets + feas_tol):
                cand.append(x)
    if not cand:
        raise Empty("no feasible vertex")
    return convex_hull(np.array(cand), tol)


def _intersect_halfspaces_2d(hp, tol):
    normals, offsets = hp.normals, hp.offsets
    ang = np.arctan2(normals[:, 1], normals[:, 0])
    order = np.argsort(ang)
    ang, normals, offsets = ang[order], normals[order], offsets[order]
    # among near-parallel same-direction constraints keep the tightest
    keep_n, keep_b, keep_a = [], [], []
    for i in range(len(ang)):
        if keep_a and abs(ang[i] - keep_a[-1]) < 1e-12:
            if offsets[i] < keep_b[-1]:
                keep_b[-1] = offsets[i]
                keep_n[-1] = normals[i]
        else:
            keep_a.append(ang[i])
            keep_b.append(offsets[i])
            keep_n.append(normals[i])
    normals = np.array(keep_n)
    offsets = np.array(keep_b)
    ang = np.array(keep_a)
    if len(ang) < 3:
        gaps = np.diff(np.concatenate([ang, [ang[0] + 2 * math.pi]]))
        if np.max(gaps) >= math.pi - 1e-12:
            if _probe_feasible(normals, offsets):
                raise Unbounded("halfspace normals span at most a halfplane")
            raise Empty("infeasible halfspace system")
        raise Empty("infeasible halfspace system")
    gaps = np.diff(np.concatenate([ang, [ang[0] + 2 * math.pi]]))
    if np.max(gaps) >= math.pi - 1e-12:
        if _probe_feasible(normals, offsets):
            raise Unbounded("halfspace normals span at most a halfplane")
        raise Empty("infeasible halfspace system")

    def inter(i, j):
        det = normals[i, 0] * normals[j, 1] - normals[i, 1] * normals[j, 0]
        if abs(det) < 1e-13:
            raise ArithmeticError("parallel adjacency")
        x = (offsets[i] * normals[j, 1] - offsets[j] * normals[i, 1]) / det
        y = (normals[i, 0] * offsets[j] - normals[j, 0] * offsets[i]) / det
        return np.array([x, y])

    try:
        from collections import deque

        dq = deque()
        for i in range(len(ang)):
            while len(dq) >= 2 and normals[i] @ inter(dq[-2], dq[-1]) > offsets[i]:
                dq.pop()
            while len(dq) >= 2 and normals[i] @ inter(dq[0], dq[1]) > offsets[i]:
                dq.popleft()
            dq.append(i)
        while len(dq) >= 3 and normals[dq[0]] @ inter(dq[-2], dq[-1]) > offsets[dq[0]]:
            dq.pop()
        while len(dq) >= 3 and normals[dq[-1]] @ inter(dq[0], dq[1]) > offsets[dq[-1]]:
            dq.popleft()
        if len(dq) < 3:
            raise ArithmeticError("degenerate walk")
        idx = list(dq)
        verts = np.array([inter(idx[k - 1], idx[k]) for k in range(len(idx))])
        scale = max(1.0, float(np.abs(verts).max()))
        if not np.all(normals @ verts.T <= offsets[:, None] + 1e-7 * scale):
            raise ArithmeticError("walk produced infeasible vertex")
        return convex_hull(verts, tol)
    except ArithmeticError:
        return _intersect_halfspaces_bruteforce_2d(normals, offsets, tol)


def _intersect_halfspaces_3d(hp, tol):
    from scipy.optimize import linprog
    from scipy.spatial import HalfspaceIntersection
    from scipy.spatial._qhull import QhullError

    normals, offsets = hp.normals, hp.offsets
    # recession direction test: bounded iff every direction is blocked
    grid = direction_grid(3, 2048)
    if np.min(np.max(normals @ grid.T, axis=0)) <= 1e-12:
        if _probe_feasible(normals, offsets):
            raise Unbounded("halfspace system has a recession direction")
        raise Empty("infeasible halfspace system")
    # Chebyshev center for a strictly interior point
    m = normals.shape[0]
    res = linprog(
        np.array([0.0, 0.0, 0.0, -1.0]),
        A_ub=np.column_stack([normals, np.ones(m)]),
        b_ub=offsets,
        bounds=[(None, None)] * 3 + [(0, None)],
        method="highs",
    )
    if res.status == 2:
        raise Empty("infeasible halfspace system")
    if res.status != 0:
        raise Unbounded("halfspace system is unbounded")
    center, radius = res.x[:3], res.x[3]
    scale = max(1.0, float(np.abs(offsets).max()))
    if radius <= 1e-10 * scale:
        raise Empty("feasible region has empty interior")
    try:
        hsi = HalfspaceIntersection(np.column_stack([normals, -offsets]), center)
    except QhullError as exc:
        raise Empty("halfspace intersection failed: %s" % exc) from exc
    return convex_hull(hsi.intersections, tol)


def intersect_halfspaces(hp, tol=DEFAULT_TOL):
    """Vertex enumeration of a bounded nonempty halfspace intersection."""
    if len(hp) == 0:
        raise Unbounded("no constraints")
    if hp.ambient_dim == 2:
        return _intersect_halfspaces_2d(hp, tol)
    return _intersect_halfspaces_3d(hp, tol)


# ---------------------------------------------------------------------------
# support functions


def _support_polytope(P, U):
    return (U @ P.vertices.T).max(axis=1)


def _support_sample(S, U):
    if U is S.grid or (U.shape == S.grid.shape and np.array_equal(U, S.grid)):
        return S.values.copy()
    if S.ambient_dim == 2 and S.is_sorted_circle():
        base = S.angles()
        shift = np.argmin(base)
        ang_sorted = np.concatenate([base[shift:], base[:shift] + 2 * math.pi])
        val_sorted = np.concatenate([S.values[shift:], S.values[:shift]])
        q = np.arctan2(U[:, 1], U[:, 0])
        q = np.where(q < 0, q + 2 * math.pi, q)
        q = ang_sorted[0] + np.mod(q - ang_sorted[0], 2 * math.pi)
        xp = np.concatenate([ang_sorted, [ang_sorted[0] + 2 * math.pi]])
        fp = np.concatenate([val_sorted, [val_sorted[0]]])
        return np.interp(q, xp, fp)
    # nearest grid direction, chunked to bound memory
    out = np.empty(U.shape[0])
    step = 2048
    for k in range(0, U.shape[0], step):
        block = U[k : k + step]
        out[k : k + step] = S.values[np.argmax(block @ S.grid.T, axis=1)]
    return out


def _support_profile(R, U):
    ax = R.axis.basis[0]
    ua = U @ ax
    uperp = np.sqrt(np.maximum(0.0, 1.0 - ua * ua))
    vals = R.t[None, :] * ua[:, None] + R.r[None, :] * uperp[:, None]
    return vals.max(axis=1)


def support_batch(body, U):
    """Support function of the body at each row of U."""
    U = np.atleast_2d(np.asarray(U, dtype=float))
    if isinstance(body, VPolytope):
        return _support_polytope(body, U)
    if isinstance(body, SupportSample):
        return _support_sample(body, U)
    if isinstance(body, RevolutionProfile):
        return _support_profile(body, U)
    raise InvalidInput("unknown body type %r" % type(body))


def support(body, u):
    """Support function h_body(u) = sup{u.y : y in body} for unit u."""
    return float(support_batch(body, np.asarray(u, dtype=float)[None, :])[0])


# ---------------------------------------------------------------------------
# metrics


def _polygon_area(verts):
    if verts.shape[0] < 3:
        return 0.0
    x, y = verts[:, 0], verts[:, 1]
    return 0.5 * abs(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _polygon_perimeter(verts):
    if verts.shape[0] < 2:
        return 0.0
    if verts.shape[0] == 2:
        return 2.0 * np.linalg.norm(verts[1] - verts[0])
    return float(np.linalg.norm(np.roll(verts, -1, axis=0) - verts, axis=1).sum())


def _profile_volume(R):
    r = R.r
    t = R.t
    if t.size < 2:
        return 0.0
    dt = np.diff(t)
    segs = dt * (r[:-1] ** 2 + r[:-1] * r[1:] + r[1:] ** 2) / 3.0
    return math.pi * float(segs.sum())


def _polytope_rank(P, tol):
    _, s, _ = _affine_frame(P.vertices, tol)
    scale = max(1.0, float(np.abs(P.vertices).max()))
    thresh = tol.hull_eps * scale * max(1.0, math.sqrt(len(P)))
    return int(np.sum(s > thresh))


def volume(body, tol=DEFAULT_TOL):
    """n-dimensional volume; lower-dimensional bodies return 0."""
    if isinstance(body, VPolytope):
        if body.ambient_dim == 2:
            return _polygon_area(body.vertices)
        if len(body) < 4 or _polytope_rank(body, tol) < 3:
            return 0.0
        return float(body.qhull().volume)
    if isinstance(body, RevolutionProfile):
        return _profile_volume(body)
    if isinstance(body, SupportSample):
        return volume(sample_to_polytope(body, tol), tol)
    raise InvalidInput("unknown body type %r" % type(body))


def _edge_angle_sum_3d(P):
    hull = P.qhull()
    normals = hull.equations[:, :3]
    simplices = hull.simplices
    neighbors = hull.neighbors
    total = 0.0
    nf = simplices.shape[0]
    for f in range(nf):
        for k in range(3):
            g = neighbors[f, k]
            if g < f:
                continue
            shared = [simplices[f, j] for j in range(3) if j != k]
            length = np.linalg.norm(P.vertices[shared[0]] - P.vertices[shared[1]])
            cosang = float(np.clip(normals[f] @ normals[g], -1.0, 1.0))
            # acos(1 - ulp) is ~2e-8, which pollutes exact-preservation
            # checks; coplanar triangulation seams must contribute exactly 0
            if cosang > 1.0 - 1e-12:
                continue
            total += length * math.acos(cosang)
    return total


def intrinsic_volume_1(body, tol=DEFAULT_TOL):
    """First intrinsic volume.

    Normalization: V_1(segment of length L) = L; V_1([0,1]^2) = 2;
    V_1([0,1]^3) = 3; V_1(r B^n) = n kappa_n r / kappa_{n-1}.  In 2-D this is
    half the perimeter; in 3-D the edge-length/dihedral-angle sum over the
    hull (valid on simplicial output: coplanar edge pairs contribute 0).
    """
    if isinstance(body, VPolytope):
        if body.ambient_dim == 2:
            return 0.5 * _polygon_perimeter(body.vertices)
        rank = _polytope_rank(body, tol)
        if rank == 0:
            return 0.0
        if rank == 1:
            d = body.vertices.max(axis=0) - body.vertices.min(axis=0)
            return float(np.linalg.norm(d))
        if rank == 2:
            c, _, vt = _affine_frame(body.vertices, tol)
            flat = _hull_2d((body.vertices - c) @ vt[:2].T, tol)
            return 0.5 * _polygon_perimeter(flat.vertices)
        return _edge_angle_sum_3d(body) / (2.0 * math.pi)
    if isinstance(body, SupportSample):
        if body.ambient_dim == 2:
            return math.pi * float(body.values.mean())
        return 4.0 * float(body.values.mean())
    if isinstance(body, RevolutionProfile):
        U = direction_grid(3, DEFAULT_TOL.hausdorff_grid_3d)
        return 4.0 * float(support_batch(body, U).mean())
    raise InvalidInput("unknown body type %r" % type(body))


def _body_feature_directions(body, tol):
    """Directions where the support of this body has kinks: vertex directions
    plus facet/edge normals (polytopes); empty for smooth representations."""
    dirs = []
    if isinstance(body, VPolytope):
        v = body.vertices - body.vertices.mean(axis=0)
        nrm = np.linalg.norm(v, axis=1)
        good = nrm > 1e-12
        if np.any(good):
            dirs.append(v[good] / nrm[good, None])
        if body.ambient_dim == 2 and len(body) >= 3:
            e = np.roll(body.vertices, -1, axis=0) - body.vertices
            nn = np.column_stack([e[:, 1], -e[:, 0]])
            nrm = np.linalg.norm(nn, axis=1)
            dirs.append(nn[nrm > 1e-12] / nrm[nrm > 1e-12, None])
        if body.ambient_dim == 3 and len(body) >= 4 and _polytope_rank(body, tol) == 3:
            dirs.append(body.qhull().equations[:, :3])
    if isinstance(body, RevolutionProfile):
        ax = body.axis.basis[0]
        dirs.append(np.vstack([ax, -ax]))
    if not dirs:
        return np.zeros((0, body.ambient_dim))
    return np.vstack(dirs)


def _comparison_directions(A, B, tol):
    n = A.ambient_dim
    U = direction_grid(n, tol.hausdorff_grid(n))
    extra = np.vstack([_body_feature_directions(A, tol), _body_feature_directions(B, tol)])
    if extra.shape[0]:
        U = np.vstack([U, extra])
    return U


def hausdorff_distance(A, B, tol=DEFAULT_TOL):
    """Sup-norm distance between support functions over a direction grid.

    Exact for convex bodies up to grid resolution; vertex directions and
    facet normals of both bodies are appended to tighten the bound.
    """
    if A.ambient_dim != B.ambient_dim:
        raise InvalidInput("ambient dimensions differ")
    if (
        isinstance(A, SupportSample)
        and isinstance(B, SupportSample)
        and A.grid.shape == B.grid.shape
        and np.array_equal(A.grid, B.grid)
    ):
        return float(np.max(np.abs(A.values - B.values)))
    U = _comparison_directions(A, B, tol)
    return float(np.max(np.abs(support_batch(A, U) - support_batch(B, U))))


def contains(outer, inner, tol_abs, tol=DEFAULT_TOL):
    """True iff h_inner <= h_outer + tol_abs on the comparison grid."""
    if outer.ambient_dim != inner.ambient_dim:
        raise InvalidInput("ambient dimensions differ")
    U = _comparison_directions(outer, inner, tol)
    gap = support_batch(inner, U) - support_batch(outer, U)
    return bool(np.max(gap) <= tol_abs)


def inclusion_margin(outer, inner, tol=DEFAULT_TOL):
    """max over directions of h_inner - h_outer (<= 0 when contained)."""
    U = _comparison_directions(outer, inner, tol)
    return float(np.max(support_batch(inner, U) - support_batch(outer, U)))


def circumradius(body, tol=DEFAULT_TOL):
    """Radius of the body about its own center, used to scale tolerances."""
    if isinstance(body, VPolytope):
        c = body.centroid()
        return float(np.linalg.norm(body.vertices - c, axis=1).max())
    if isinstance(body, SupportSample):
        return float(np.max(np.abs(body.values)))
    if isinstance(body, RevolutionProfile):
        return float(np.sqrt(body.t**2 + body.r**2).max())
    raise InvalidInput("unknown body type %r" % type(body))


def steiner_point(body, tol=DEFAULT_TOL):
    """Grid-quadrature Steiner point: n * mean(h(u) u) over a uniform grid."""
    n = body.ambient_dim
    U = direction_grid(n, tol.hausdorff_grid(n))
    h = support_batch(body, U)
    return n * (h[:, None] * U).mean(axis=0)


# ---------------------------------------------------------------------------
# transformations


def reflect(body, H, tol=DEFAULT_TOL):
    """Reflection K-dagger of the body in the subspace H."""
    if body.ambient_dim != H.ambient_dim:
        raise InvalidInput("ambient dimensions differ")
    R = H.reflection_matrix()
    if isinstance(body, VPolytope):
        verts = body.vertices @ R.T
        if body.ambient_dim == 2:
            return VPolytope(_canonical_2d(verts))
        order = np.lexsort((verts[:, 2], verts[:, 1], verts[:, 0]))
        return VPolytope(verts[order])
    if isinstance(body, SupportSample):
        mapped = body.grid @ R.T
        idx, ok = _match_directions(mapped, body.grid)
        if not ok:
            raise Unsupported("sample grid is not closed under this reflection")
        return SupportSample(body.grid, body.values[idx])
    if isinstance(body, RevolutionProfile):
        ax = body.axis.basis[0]
        if H.dim == 1 and abs(abs(float(H.basis[0] @ ax)) - 1.0) < 1e-12:
            return body
        if H.dim == 0:
            return RevolutionProfile(body.axis, -body.t[::-1], body.r[::-1], concavify=False)
        if H.dim == 2 and abs(abs(float(H.complement[0] @ ax)) - 1.0) < 1e-12:
            return RevolutionProfile(body.axis, -body.t[::-1], body.r[::-1], concavify=False)
        raise Unsupported("profile reflection only about its axis, axis-normal plane, or o")
    raise InvalidInput("unknown body type %r" % type(body))


def _match_directions(queries, grid):
    """Nearest-grid index per query; ok=False unless every match is exact."""
    idx = np.empty(queries.shape[0], dtype=np.intp)
    worst = 1.0
    step = 2048
    for k in range(0, queries.shape[0], step):
        block = queries[k : k + step]
        dots = block @ grid.T
        sub = np.argmax(dots, axis=1)
        idx[k : k + step] = sub
        worst = min(worst, float(dots[np.arange(block.shape[0]), sub].min()))
    return idx, worst >= 1.0 - 1e-9


def project(body, H, tol=DEFAULT_TOL):
    """Orthogonal projection onto H, in ambient coordinates."""
    if not isinstance(body, VPolytope):
        raise Unsupported("projection is implemented for vertex polytopes")
    if body.ambient_dim != H.ambient_dim:
        raise InvalidInput("ambient dimensions differ")
    if H.dim == 0:
        return VPolytope(np.zeros((1, body.ambient_dim)))
    coords = body.vertices @ H.basis.T
    if H.dim == 1:
        lo, hi = float(coords.min()), float(coords.max())
        pts = np.vstack([lo * H.basis[0], hi * H.basis[0]])
        if hi - lo < 1e-15:
            pts = pts[:1]
        return VPolytope(pts)
    flat = _hull_2d(coords, tol)
    lifted = flat.vertices @ H.basis
    if body.ambient_dim == 2:
        return VPolytope(lifted)
    order = np.lexsort((lifted[:, 2], lifted[:, 1], lifted[:, 0]))
    return VPolytope(lifted[order])


def translate(body, v):
    """Translate by vector v (exact in every representation, within reason)."""
    v = np.asarray(v, dtype=float)
    if isinstance(body, VPolytope):
        return VPolytope(body.vertices + v)
    if isinstance(body, SupportSample):
        return SupportSample(body.grid, body.values + body.grid @ v)
    if isinstance(body, RevolutionProfile):
        ax = body.axis.basis[0]
        along = float(v @ ax)
        if np.linalg.norm(v - along * ax) > 1e-12:
            raise Unsupported("profiles translate only along their axis")
        return RevolutionProfile(body.axis, body.t + along, body.r, concavify=False)
    raise InvalidInput("unknown body type %r" % type(body))


def linear_map(body, A, tol=DEFAULT_TOL):
    """Image under the linear map with matrix A (may be singular)."""
    if not isinstance(body, VPolytope):
        raise Unsupported("general linear maps are implemented for vertex polytopes")
    A = np.asarray(A, dtype=float)
    return convex_hull(body.vertices @ A.T, tol)


def minkowski_sum(P, Q, tol=DEFAULT_TOL):
    """Minkowski sum of two vertex polytopes."""
    if P.ambient_dim != Q.ambient_dim:
        raise InvalidInput("ambient dimensions differ")
    if len(P) == 1:
        return translate(Q, P.vertices[0])
    if len(Q) == 1:
        return translate(P, Q.vertices[0])
    if P.ambient_dim == 2:
        if len(P) * len(Q) <= 1024:
            sums = (P.vertices[:, None, :] + Q.vertices[None, :, :]).reshape(-1, 2)
            return convex_hull(sums, tol)
        return _minkowski_sum_2d_merge(P, Q, tol)
    if len(P) * len(Q) > 2_000_000:
        from .errors import CapExceeded

        raise CapExceeded("3-D Minkowski sum candidate set too large")
    sums = (P.vertices[:, None, :] + Q.vertices[None, :, :]).reshape(-1, 3)
    return convex_hull(sums, tol)


def _bottom_start(verts):
    """Roll a CCW vertex cycle to start at the bottom-most (then left-most) vertex."""
    i = np.lexsort((verts[:, 0], verts[:, 1]))[0]
    return np.roll(verts, -i, axis=0)


def _minkowski_sum_2d_merge(P, Q, tol):
    """Edge-vector merge; linear in the output size."""
    A = _bottom_start(P.vertices if len(P) >= 3 else _canonical_2d(P.vertices))
    B = _bottom_start(Q.vertices if len(Q) >= 3 else _canonical_2d(Q.vertices))
    la, lb = A.shape[0], B.shape[0]
    ea = np.roll(A, -1, axis=0) - A
    eb = np.roll(B, -1, axis=0) - B
    out = []
    i = j = 0
    pos = A[0] + B[0]
    while i < la or j < lb:
        out.append(pos.copy())
        if i >= la:
            pos += eb[j % lb]
            j += 1
        elif j >= lb:
            pos += ea[i % la]
            i += 1
        else:
            cross = ea[i % la, 0] * eb[j % lb, 1] - ea[i % la, 1] * eb[j % lb, 0]
            if cross > 0:
                pos += ea[i % la]
                i += 1
            elif cross < 0:
                pos += eb[j % lb]
                j += 1
            else:
                pos += ea[i % la] + eb[j % lb]
                i += 1
                j += 1
    return convex_hull(np.array(out), tol)


def sample_to_polytope(S, tol=DEFAULT_TOL):
    """Outer polytope reconstruction of a support sample.

    Treats each sampled value as the halfspace {x.u <= h(u)}; the result
    circumscribes the sampled body with error vanishing in the grid step.
    """
    hp = HPolytope(S.grid, S.values)
    return intersect_halfspaces(hp, tol)


def sample_body(body, grid):
    """Sample any body's support function on the given direction grid."""
    grid = np.atleast_2d(np.asarray(grid, dtype=float))
    return SupportSample(grid, support_batch(body, grid))
