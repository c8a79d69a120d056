"""Symmetrization operators on convex bodies.

Every operator is a pure function (body, H, ...) -> body.  The supported
(operator, dimension, subspace-dimension, representation) combinations are
closed: anything else raises Unsupported instead of silently approximating.

Conventions: H is a linear subspace through the origin; K-dagger denotes the
reflection of K in H; i = dim H; n = ambient dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace as _dc_replace

import numpy as np

from . import _kernels
from .core_geometry import (
    DEFAULT_TOL,
    HPolytope,
    RevolutionProfile,
    Subspace,
    SupportSample,
    VPolytope,
    _affine_frame,
    _canonical_2d,
    _match_directions,
    _polytope_rank,
    convex_hull,
    halfspaces_of,
    intersect_halfspaces,
    minkowski_sum,
    project,
    reflect,
    translate,
)
from .errors import (
    Degenerate,
    InvalidInput,
    InvalidM,
    InvalidSubspace,
    OriginNotInside,
    Unsupported,
)


@dataclass
class SymSpec:
    """Operator choice plus its parameters.

    op is one of: steiner, schwarz, minkowski, fiber, central, central_p,
    m_sym, minkowski_blaschke, inner_rot, outer_rot, blaschke2d, vexlast.
    """

    op: str
    H: Subspace
    p: float | None = None
    M_polygon: VPolytope | None = None
    c: float = 1.0
    G: Subspace | None = None
    slice_count: int | None = None

    OPS = (
        "steiner",
        "schwarz",
        "minkowski",
        "fiber",
        "central",
        "central_p",
        "m_sym",
        "minkowski_blaschke",
        "inner_rot",
        "outer_rot",
        "blaschke2d",
        "vexlast",
    )

    def __post_init__(self):
        if self.op not in self.OPS:
            raise InvalidInput("unknown operator %r" % (self.op,))
        if self.op == "central_p" and (self.p is None or self.p < 1):
            raise InvalidInput("central_p needs p >= 1")
        if self.op == "m_sym":
            if self.M_polygon is None:
                raise InvalidM("m_sym needs M_polygon")
            _validate_m_polygon(self.M_polygon)
            if not self.c > 0:
                raise InvalidM("m_sym needs c > 0")
        if self.G is not None:
            _require_subspace_of(self.G, self.H)


def _require_subspace_of(G, H):
    if G.ambient_dim != H.ambient_dim:
        raise InvalidSubspace("G and H have different ambient dimensions")
    if G.dim > H.dim:
        raise InvalidSubspace("G must be contained in H")
    if G.dim:
        P = H.projection_matrix()
        resid = G.basis - G.basis @ P.T
        if np.abs(resid).max() > 1e-9:
            raise InvalidSubspace("G must be contained in H")


def _validate_m_polygon(M):
    if not isinstance(M, VPolytope) or M.ambient_dim != 2:
        raise InvalidM("M must be a 2-D polytope")
    V = M.vertices
    if V.min() < -1e-12:
        raise InvalidM("M must lie in the nonnegative quadrant")
    swapped = convex_hull(V[:, ::-1]).vertices
    mine = _canonical_2d(V)
    if swapped.shape != mine.shape or not np.allclose(swapped, mine, atol=1e-12):
        raise InvalidM("M must be symmetric about the diagonal x1 = x2")


# ---------------------------------------------------------------------------
# shared low-level helpers


def _scale(P, s):
    """s*K for s > 0 on a canonical polytope (order preserved)."""
    return VPolytope(P.vertices * s)


def _hyperplane_normal(H):
    if H.dim != H.ambient_dim - 1:
        raise Unsupported("operator needs i = n-1")
    return H.complement[0]


def _split_chains_2d(verts):
    """(lower, upper) boundary chains of a CCW polygon, both left to right.

    Chains are (x, y) arrays with strictly increasing x after dedup; shared
    endpoints carry the chain's own y at vertical edges.
    """
    x = verts[:, 0]
    m = verts.shape[0]
    # canonical order starts at the lexicographic minimum; bottom chain runs
    # counterclockwise until the rightmost-lowest vertex
    xmax = x.max()
    right = np.where(x >= xmax - 0.0)[0]
    k1 = right[np.argmin(verts[right, 1])]
    k2 = right[np.argmax(verts[right, 1])]
    lower = verts[: k1 + 1]
    if k2 == 0:
        upper = verts[:1]
    else:
        upper = np.vstack([verts[k2:], verts[:1]])[::-1]
    # vertical seams leave duplicate x at an end; keep the chain's own side
    def dedup(chain, keep_first):
        xs = chain[:, 0]
        keep = np.ones(len(xs), dtype=bool)
        for i in range(1, len(xs)):
            if xs[i] - xs[i - 1] <= 0:
                keep[i if keep_first else i - 1] = False
        return chain[keep]

    return dedup(lower, True), dedup(upper, False)


def _snap_abscissae(x, eps):
    """Collapse x values that differ by less than eps onto cluster means.

    A geometrically vertical edge can leave a hull with its endpoint
    x-coordinates split by an ulp; chord interpolation would then read a
    spurious near-zero chord at the outer station.  Snapping restores the
    exact-vertical reading at the hull's own resolution."""
    xs = np.unique(x)
    if xs.shape[0] < 2:
        return x
    cluster = np.concatenate([[0], np.cumsum(np.diff(xs) > eps)])
    k = cluster[-1] + 1
    sums = np.zeros(k)
    counts = np.zeros(k)
    np.add.at(sums, cluster, xs)
    np.add.at(counts, cluster, 1.0)
    reps = sums / counts
    return reps[cluster[np.searchsorted(xs, x)]]


def _steiner_chords_2d_coords(v, eps=0.0):
    """Steiner symmetral about the x-axis of a canonical CCW polygon (vertex
    array, >= 3 vertices) given in 2-D coordinates.

    Returns the candidate vertex array (x, +-len/2); the hull of these points
    is the symmetral (chord length is piecewise linear between vertex
    abscissae, so no other breakpoints exist).
    """
    if eps > 0.0:
        v = np.column_stack([_snap_abscissae(v[:, 0], eps), v[:, 1]])
        v = _canonical_2d(v)  # snapping can move the lexicographic start
    lower, upper = _split_chains_2d(v)
    bx = np.unique(v[:, 0])
    up = np.interp(bx, upper[:, 0], upper[:, 1])
    lo = np.interp(bx, lower[:, 0], lower[:, 1])
    half = np.maximum(up - lo, 0.0) / 2.0
    return np.concatenate(
        [np.column_stack([bx, half]), np.column_stack([bx, -half])], axis=0
    )


def _steiner_polytope_2d(K, H, tol):
    w = H.basis[0]
    u = H.complement[0]
    frame = np.vstack([w, u])
    # chords are exact and the candidates are convex by construction, so the
    # hulls here only need to kill duplicates; the default cross-eps would
    # shave O(hull_eps) volume per step, which iterated runs cannot afford
    tight = _dc_replace(tol, hull_eps=min(tol.hull_eps, 1e-13))
    P = convex_hull(K.vertices @ frame.T, tight)
    if len(P) < 3:
        return _steiner_degenerate(K, H, tol)
    eps = 1e-13 * max(1.0, float(np.abs(P.vertices).max()))
    cand = _steiner_chords_2d_coords(P.vertices, eps)
    return convex_hull(cand @ frame, tight)


def _steiner_degenerate(K, H, tol):
    """Lower-dimensional K: recentered chords, which collapse to the
    projection unless the symmetrization direction lies in K's affine hull."""
    u = _hyperplane_normal(H)
    n = K.ambient_dim
    c, s, vt = _affine_frame(K.vertices, tol)
    scale = max(1.0, float(np.abs(K.vertices).max()))
    rank = int(np.sum(s > 1e-12 * scale * max(1.0, math.sqrt(len(K)))))
    if rank == 0:
        return project(K, H, tol)
    span = vt[:rank]
    u_in_span = np.linalg.norm(u - span.T @ (span @ u)) < 1e-9
    if not u_in_span:
        return project(K, H, tol)
    if rank == 1:
        # segment parallel to u: one chord, recentered
        t = (K.vertices - c) @ u
        length = t.max() - t.min()
        base = c - (c @ u) * u
        pts = np.vstack([base - 0.5 * length * u, base + 0.5 * length * u])
        return convex_hull(pts, tol)
    # rank 2 in R^3 with u in the plane: do the 2-D chord construction
    # in (w, u) coordinates and lift with the constant offset q in H
    w = span[0] - (span[0] @ u) * u
    if np.linalg.norm(w) < 1e-9:
        w = span[1] - (span[1] @ u) * u
    w = w / np.linalg.norm(w)
    q = c - (c @ w) * w - (c @ u) * u
    coords = np.column_stack([(K.vertices - q) @ w, (K.vertices - q) @ u])
    flat = convex_hull(coords, tol)
    if len(flat) < 3:
        return project(K, H, tol)
    eps = 1e-13 * max(1.0, float(np.abs(flat.vertices).max()))
    cand = _steiner_chords_2d_coords(flat.vertices, eps)
    lifted = q + cand[:, :1] * w + cand[:, 1:] * u
    return convex_hull(lifted, tol)


def _steiner_facet_pairs_3d(K, H, tol):
    u = _hyperplane_normal(H)
    frame = np.vstack([H.basis, u])  # rows: in-H coordinates then the normal
    hp = halfspaces_of(K, tol)
    A = hp.normals @ frame.T
    b = hp.offsets
    s = A[:, -1]
    alpha = A[:, :-1]
    sigma = 1e-12
    ups = np.where(s > sigma)[0]
    downs = np.where(s < -sigma)[0]
    sides = np.where(np.abs(s) <= sigma)[0]
    rows = []
    offs = []
    for f in ups:
        af, bf = alpha[f] / s[f], b[f] / s[f]
        for g in downs:
            ag, bg = alpha[g] / s[g], b[g] / s[g]
            mid = 0.5 * (af - ag)
            rhs = 0.5 * (bf - bg)
            rows.append(np.append(mid, 1.0))
            offs.append(rhs)
            rows.append(np.append(mid, -1.0))
            offs.append(rhs)
    for f in sides:
        rows.append(np.append(alpha[f], 0.0))
        offs.append(b[f])
    shadow = project(K, H, tol)
    sv = shadow.vertices @ H.basis.T
    flat = convex_hull(sv, tol)
    if len(flat) >= 3:
        e = np.roll(flat.vertices, -1, axis=0) - flat.vertices
        nn = np.column_stack([e[:, 1], -e[:, 0]])
        nn = nn / np.linalg.norm(nn, axis=1)[:, None]
        oo = np.sum(nn * flat.vertices, axis=1)
        for k in range(nn.shape[0]):
            rows.append(np.append(nn[k], 0.0))
            offs.append(oo[k])
    sym = intersect_halfspaces(HPolytope(np.array(rows), np.array(offs)), tol)
    return convex_hull(sym.vertices @ frame, tol)


def steiner(K, H, tol=DEFAULT_TOL):
    """Steiner symmetral: chords orthogonal to the hyperplane H recentered on H."""
    n = H.ambient_dim
    if H.dim != n - 1:
        raise Unsupported("steiner needs i = n-1")
    if isinstance(K, RevolutionProfile):
        return _profile_fixed_point(K, H, "steiner")
    if not isinstance(K, VPolytope):
        raise Unsupported("steiner operates on vertex polytopes")
    if K.ambient_dim != n:
        raise InvalidInput("ambient dimensions differ")
    if n == 2:
        return _steiner_polytope_2d(K, H, tol)
    if _polytope_rank(K, tol) < 3:
        return _steiner_degenerate(K, H, tol)
    return _steiner_facet_pairs_3d(K, H, tol)


def _profile_fixed_point(K, H, opname):
    """Profiles are accepted where they are provably fixed points."""
    ax = K.axis.basis[0]
    if H.dim == 1 and abs(abs(float(H.basis[0] @ ax)) - 1.0) < 1e-12:
        return K
    if H.dim == 2:
        # plane containing the axis: rotational bodies are H-symmetric
        pa = H.projection_matrix() @ ax
        if np.linalg.norm(pa - ax) < 1e-12 or np.linalg.norm(pa + ax) < 1e-12:
            return K
        # plane orthogonal to the axis: fixed only if already t-symmetric
        perp = H.complement[0]
        if abs(abs(float(perp @ ax)) - 1.0) < 1e-12:
            if np.allclose(K.t, -K.t[::-1], atol=1e-12) and np.allclose(
                K.r, K.r[::-1], atol=1e-12
            ):
                return K
    raise Unsupported("%s on profiles is supported only at fixed points" % opname)


def minkowski(K, H, tol=DEFAULT_TOL):
    """Minkowski symmetral (K + K-dagger)/2."""
    if K.ambient_dim != H.ambient_dim:
        raise InvalidInput("ambient dimensions differ")
    if isinstance(K, VPolytope):
        Kd = reflect(K, H, tol)
        return minkowski_sum(_scale(K, 0.5), _scale(Kd, 0.5), tol)
    if isinstance(K, SupportSample):
        Kd = reflect(K, H, tol)
        return SupportSample(K.grid, 0.5 * (K.values + Kd.values))
    if isinstance(K, RevolutionProfile):
        return _profile_fixed_point(K, H, "minkowski")
    raise InvalidInput("unknown body type %r" % type(K))


def central(K, tol=DEFAULT_TOL):
    """Central symmetral (K + (-K))/2."""
    return minkowski(K, Subspace.origin(K.ambient_dim), tol)


def _antipode_index(S):
    if "antipode" not in S._cache:
        idx, ok = _match_directions(-S.grid, S.grid)
        if not ok:
            raise Unsupported("sample grid is not closed under u -> -u")
        S._cache["antipode"] = idx
    return S._cache["antipode"]


def central_p(S, p, tol=DEFAULT_TOL):
    """p-th central symmetral via L_p support addition; needs o inside K."""
    if not isinstance(S, SupportSample):
        raise Unsupported("central_p operates on support samples")
    if p < 1:
        raise InvalidInput("central_p needs p >= 1")
    if float(S.values.min()) < -1e-12:
        raise OriginNotInside("central_p needs the origin inside the body")
    h = np.maximum(S.values, 0.0)
    hm = h[_antipode_index(S)]
    vals = (0.5 * h**p + 0.5 * hm**p) ** (1.0 / p)
    return SupportSample(S.grid, vals)


# ---------------------------------------------------------------------------
# 3-D slicing


def _polytope_edges(P):
    if "edges" not in P._cache:
        s = np.sort(P.qhull().simplices, axis=1)
        e = np.vstack([s[:, [0, 1]], s[:, [1, 2]], s[:, [0, 2]]])
        P._cache["edges"] = np.unique(e, axis=0)
    return P._cache["edges"]


def _slice_table(K, axis_dir, stations):
    """Cross-section points of K at each station t along axis_dir.

    Returns (points, offsets): points is the stacked (t, perp...) crossing
    list grouped by station; offsets index the start of each station's group.
    Points are 3-D ambient coordinates.
    """
    v = K.vertices
    tv = v @ axis_dir
    edges = _polytope_edges(K)
    ta, tb = tv[edges[:, 0]], tv[edges[:, 1]]
    lo = np.minimum(ta, tb)
    hi = np.maximum(ta, tb)
    pts_out = []
    offsets = [0]
    for t in stations:
        mask = (lo <= t) & (hi >= t)
        e = edges[mask]
        a, b = tv[e[:, 0]], tv[e[:, 1]]
        dt = b - a
        safe = np.where(np.abs(dt) > 1e-15, dt, 1.0)
        lam = np.where(np.abs(dt) > 1e-15, (t - a) / safe, 0.0)
        lam = np.clip(lam, 0.0, 1.0)
        p = v[e[:, 0]] + lam[:, None] * (v[e[:, 1]] - v[e[:, 0]])
        pts_out.append(p)
        offsets.append(offsets[-1] + p.shape[0])
    return np.vstack(pts_out) if pts_out else np.zeros((0, 3)), np.array(offsets)


def _stations_spanning(K, axis_dir, count):
    tv = K.vertices @ axis_dir
    return np.linspace(float(tv.min()), float(tv.max()), count)


def _require_31(K, H):
    if H.ambient_dim != 3 or H.dim != 1:
        raise Unsupported("this operator needs n = 3, i = 1")
    if K.ambient_dim != 3:
        raise InvalidInput("ambient dimensions differ")


def schwarz(K, H, tol=DEFAULT_TOL):
    """Schwarz symmetral: each cross-section orthogonal to the line H becomes
    the centered disk of equal area."""
    if isinstance(K, RevolutionProfile):
        return _profile_fixed_point(K, H, "schwarz")
    _require_31(K, H)
    if _polytope_rank(K, tol) < 3:
        raise Degenerate("schwarz needs a full-dimensional body")
    a = H.basis[0]
    w1, w2 = H.complement
    count = tol.slice_count
    stations = _stations_spanning(K, a, count)
    pts, offs = _slice_table(K, a, stations)
    q = np.column_stack([pts @ w1, pts @ w2])
    radii = np.empty(count)
    for k in range(count):
        sl = q[offs[k] : offs[k + 1]]
        area = _small_hull_area(sl)
        radii[k] = math.sqrt(area / math.pi)
    return RevolutionProfile(H, stations, radii)


def _small_hull_area(q):
    if q.shape[0] < 3:
        return 0.0
    P = convex_hull(q)
    if len(P) < 3:
        return 0.0
    v = P.vertices
    x, y = v[:, 0], v[:, 1]
    return 0.5 * abs(float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)))


def fiber(K, H, G, tol=DEFAULT_TOL):
    """Fiber symmetral: each slice K cap (G-perp + x) is replaced by its
    Minkowski symmetral relative to H within that slice."""
    _require_subspace_of(G, H)
    n = H.ambient_dim
    if not isinstance(K, VPolytope):
        raise Unsupported("fiber operates on vertex polytopes")
    if K.ambient_dim != n:
        raise InvalidInput("ambient dimensions differ")
    if G.dim == 0:
        # single slice: the whole body
        if H.dim == 0:
            return central(K, tol)
        return minkowski(K, H, tol)
    if G.dim == H.dim and H.dim == n - 1:
        return steiner(K, H, tol)
    if n == 3 and H.dim == 1 and G.dim == 1:
        return _fiber_31(K, H, tol)
    raise Unsupported("fiber supports G = {o}, G = H with i = n-1, and n=3, i=1, G=H")


def _fiber_31(K, H, tol, count=None):
    if _polytope_rank(K, tol) < 3:
        raise Degenerate("fiber (3,1) needs a full-dimensional body")
    a = H.basis[0]
    w1, w2 = H.complement
    if count is None:
        count = tol.slice_count
    # slice-symmetral vertices move linearly in t between vertex heights, so
    # slicing at every vertex height makes the hull exact for polytopes
    stations = np.union1d(_stations_spanning(K, a, count), K.vertices @ a)
    pts, offs = _slice_table(K, a, stations)
    q = np.column_stack([pts @ w1, pts @ w2])
    out = []
    for k in range(stations.shape[0]):
        sl = q[offs[k] : offs[k + 1]]
        if sl.shape[0] == 0:
            continue
        hull = convex_hull(sl) if sl.shape[0] > 1 else VPolytope(sl)
        v = hull.vertices
        # central symmetral within the slice plane about the axis point
        half_diff = 0.5 * (v[:, None, :] - v[None, :, :]).reshape(-1, 2)
        sym = convex_hull(half_diff) if half_diff.shape[0] > 1 else VPolytope(half_diff)
        lift = stations[k] * a + sym.vertices[:, :1] * w1 + sym.vertices[:, 1:] * w2
        out.append(lift)
    return convex_hull(np.vstack(out), tol)


def m_symmetrization(S, M_polygon, c, H, tol=DEFAULT_TOL):
    """M-addition symmetral: h(u) -> h_M(c h_K(u), c h_K(Ru))."""
    if not isinstance(S, SupportSample):
        raise Unsupported("m_symmetrization operates on support samples")
    if S.ambient_dim != H.ambient_dim:
        raise InvalidInput("ambient dimensions differ")
    _validate_m_polygon(M_polygon)
    if not c > 0:
        raise InvalidM("c must be positive")
    R = H.reflection_matrix()
    idx, ok = _match_directions(S.grid @ R.T, S.grid)
    if not ok:
        raise Unsupported("sample grid is not closed under reflection in H")
    pair = np.column_stack([c * S.values, c * S.values[idx]])
    vals = (pair @ M_polygon.vertices.T).max(axis=1)
    return SupportSample(S.grid, vals)


# ---------------------------------------------------------------------------
# rotational operators, n = 3, i = 1


def _latlong_rows(S, axis_dir):
    """Ring structure of a latitude-longitude grid about axis_dir, or None."""
    dots = S.grid @ axis_dir
    keys = np.round(dots, 9)
    uniq, inv = np.unique(keys, return_inverse=True)
    counts = np.bincount(inv)
    ring = counts[inv]
    if uniq.shape[0] < 2 or np.any(counts < 1):
        return None
    # all non-pole rings must be uniform in longitude
    perp = S.grid - dots[:, None] * axis_dir
    nrm = np.linalg.norm(perp, axis=1)
    for g in range(uniq.shape[0]):
        members = np.where(inv == g)[0]
        if members.shape[0] == 1:
            continue
        if nrm[members].min() < 1e-9:
            return None
        ref = perp[members[0]] / nrm[members[0]]
        ref2 = np.cross(axis_dir, ref)
        ang = np.sort(
            np.mod(np.arctan2(perp[members] @ ref2, perp[members] @ ref), 2 * math.pi)
        )
        step = 2 * math.pi / members.shape[0]
        gaps = np.diff(np.concatenate([ang, [ang[0] + 2 * math.pi]]))
        if np.abs(gaps - step).max() > 1e-6:
            return None
    return inv


def minkowski_blaschke(S, H, tol=DEFAULT_TOL):
    """Rotational mean: each support value is replaced by the average of h
    over the latitude circle through its direction about the axis H."""
    if not isinstance(S, SupportSample):
        raise Unsupported("minkowski_blaschke operates on support samples")
    if H.ambient_dim != 3 or H.dim != 1:
        raise Unsupported("minkowski_blaschke needs n = 3, i = 1")
    a = H.basis[0]
    inv = _latlong_rows(S, a)
    if inv is not None:
        sums = np.bincount(inv, weights=S.values)
        counts = np.bincount(inv)
        return SupportSample(S.grid, (sums / counts)[inv])
    # generic grid: explicit ring quadrature with nearest-direction lookup
    w1, w2 = H.complement
    angles = 2 * math.pi * np.arange(256) / 256
    ca = S.grid @ a
    sa = np.sqrt(np.maximum(0.0, 1.0 - ca**2))
    out = np.empty(len(S))
    ringdir = np.cos(angles)[:, None] * w1 + np.sin(angles)[:, None] * w2
    for k in range(len(S)):
        ring = ca[k] * a + sa[k] * ringdir
        vals = S.values[np.argmax(ring @ S.grid.T, axis=1)]
        out[k] = vals.mean()
    return SupportSample(S.grid, out)


def inner_rotational(K, H, tol=DEFAULT_TOL):
    """Largest centered ball per cross-section (radius = slice inradius)."""
    n = H.ambient_dim
    if H.dim == n - 1:
        return steiner(K, H, tol)
    if isinstance(K, RevolutionProfile):
        return _profile_fixed_point(K, H, "inner_rotational")
    _require_31(K, H)
    from scipy.optimize import linprog

    if _polytope_rank(K, tol) < 3:
        raise Degenerate("inner_rotational needs a full-dimensional body")
    a = H.basis[0]
    w1, w2 = H.complement
    count = tol.slice_count
    stations = _stations_spanning(K, a, count)
    pts, offs = _slice_table(K, a, stations)
    q = np.column_stack([pts @ w1, pts @ w2])
    radii = np.zeros(count)
    for k in range(count):
        sl = q[offs[k] : offs[k + 1]]
        if sl.shape[0] < 3:
            continue
        P = convex_hull(sl)
        if len(P) < 3:
            continue
        v = P.vertices
        e = np.roll(v, -1, axis=0) - v
        nn = np.column_stack([e[:, 1], -e[:, 0]])
        nn = nn / np.linalg.norm(nn, axis=1)[:, None]
        bb = np.sum(nn * v, axis=1)
        res = linprog(
            np.array([0.0, 0.0, -1.0]),
            A_ub=np.column_stack([nn, np.ones(len(bb))]),
            b_ub=bb,
            bounds=[(None, None), (None, None), (0, None)],
            method="highs",
        )
        if res.status == 0:
            radii[k] = max(0.0, res.x[2])
    return RevolutionProfile(H, stations, radii)


def outer_rotational(K, H, tol=DEFAULT_TOL, grid_side=None):
    """Intersection of all rotational convex bodies about H whose translates
    orthogonal to H contain K.

    The translate centers are scanned on a grid over the shadow box of K,
    refined by doubling until the profile settles; a fixed grid_side skips
    the refinement (useful when two results must share the same grid).
    """
    n = H.ambient_dim
    if H.dim == n - 1:
        return minkowski(K, H, tol)
    if isinstance(K, RevolutionProfile):
        return _profile_fixed_point(K, H, "outer_rotational")
    _require_31(K, H)
    if _polytope_rank(K, tol) < 3:
        raise Degenerate("outer_rotational needs a full-dimensional body")
    a = H.basis[0]
    w1, w2 = H.complement
    count = tol.slice_count
    stations = _stations_spanning(K, a, count)
    pts, offs = _slice_table(K, a, stations)
    q = np.column_stack([pts @ w1, pts @ w2])
    vq = np.column_stack([K.vertices @ w1, K.vertices @ w2])
    lo = vq.min(axis=0)
    hi = vq.max(axis=0)

    def scan(side):
        ys0 = np.linspace(lo[0], hi[0], side)
        ys1 = np.linspace(lo[1], hi[1], side)
        yy = np.stack(np.meshgrid(ys0, ys1, indexing="ij"), axis=-1).reshape(-1, 2)
        return _outer_profile_for_translates(stations, q, offs, yy)

    if grid_side is not None:
        return RevolutionProfile(H, stations, scan(int(grid_side)))
    side = 41
    prev = None
    while True:
        prof = scan(side)
        if prev is not None:
            scale = max(1.0, float(prev.max()))
            if np.abs(prof - prev).max() < 1e-3 * scale:
                break
        prev = prof
        side *= 2
        if side > 328:
            break
    return RevolutionProfile(H, stations, prof)


def _outer_profile_for_translates(stations, q, offs, yy, chunk=2048):
    count = stations.shape[0]
    has = np.diff(offs) > 0
    starts = offs[:-1][has]
    prof = np.full(count, np.inf)
    for c0 in range(0, yy.shape[0], chunk):
        yc = yy[c0 : c0 + chunk]
        # distance of every slice point to every translate center in the chunk
        d = np.sqrt(
            (q[:, 0, None] - yc[None, :, 0]) ** 2
            + (q[:, 1, None] - yc[None, :, 1]) ** 2
        )
        g = np.zeros((count, yc.shape[0]))
        g[has] = np.maximum.reduceat(d, starts, axis=0)
        env = _kernels.concave_envelope_grid(
            np.ascontiguousarray(stations), np.ascontiguousarray(g)
        )
        prof = np.minimum(prof, np.asarray(env).min(axis=1))
    return prof


# ---------------------------------------------------------------------------
# 2-D specific operators


def _polygon_area_centroid(verts):
    x, y = verts[:, 0], verts[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    cross = x * yn - xn * y
    A = 0.5 * cross.sum()
    cx = np.sum((x + xn) * cross) / (6.0 * A)
    cy = np.sum((y + yn) * cross) / (6.0 * A)
    return np.array([cx, cy]), A


def blaschke2d(K, H, tol=DEFAULT_TOL):
    """2-D Blaschke symmetral: average the edge-vector measures of K and
    K-dagger and rebuild the polygon from the merged edges."""
    if not isinstance(K, VPolytope) or K.ambient_dim != 2:
        raise Unsupported("blaschke2d operates on 2-D vertex polytopes")
    if H.ambient_dim != 2 or H.dim not in (0, 1):
        raise InvalidSubspace("blaschke2d needs a subspace of R^2")
    if len(K) < 3:
        raise Degenerate("blaschke2d needs a full-dimensional polygon")
    Kd = reflect(K, H, tol)
    ea = np.roll(K.vertices, -1, axis=0) - K.vertices
    eb = np.roll(Kd.vertices, -1, axis=0) - Kd.vertices
    vecs = 0.5 * np.vstack([ea, eb])
    ang = np.mod(np.arctan2(vecs[:, 1], vecs[:, 0]), 2 * math.pi)
    order = np.argsort(ang, kind="stable")
    vecs, ang = vecs[order], ang[order]
    merged = [vecs[0].copy()]
    last = ang[0]
    for k in range(1, len(ang)):
        if ang[k] - last < 1e-9:
            merged[-1] += vecs[k]
        else:
            merged.append(vecs[k].copy())
            last = ang[k]
    merged = np.array(merged)
    closure = merged.sum(axis=0)
    scale = max(1.0, float(np.abs(K.vertices).max()))
    if np.abs(closure).max() > 1e-9 * scale:
        raise Degenerate("edge measure failed to close")
    path = np.vstack([[0.0, 0.0], np.cumsum(merged[:-1], axis=0)])
    body = convex_hull(path, tol)
    if H.dim == 0:
        c, _ = _polygon_area_centroid(body.vertices)
        return translate(body, -c)
    w = H.basis[0]
    u = H.complement[0]
    span_out = body.vertices @ w
    span_in = K.vertices @ w
    perp = body.vertices @ u
    shift = (span_in.min() - span_out.min()) * w - 0.5 * (perp.min() + perp.max()) * u
    return translate(body, shift)


def vexlast(K, H, tol=DEFAULT_TOL):
    """Steiner symmetral followed by compression toward H by e^(-d), where d
    is the distance from K to H."""
    if not isinstance(K, VPolytope) or K.ambient_dim != 2:
        raise Unsupported("vexlast operates on 2-D vertex polytopes")
    if H.ambient_dim != 2 or H.dim != 1:
        raise Unsupported("vexlast needs n = 2, i = 1")
    u = H.complement[0]
    dots = K.vertices @ u
    if dots.min() <= 0.0 <= dots.max():
        d = 0.0
    else:
        d = float(np.min(np.abs(dots)))
    S = steiner(K, H, tol)
    a = math.exp(-d)
    if a == 1.0:
        return S
    P = H.projection_matrix()
    phi = P + a * (np.eye(2) - P)
    return convex_hull(S.vertices @ phi.T, tol)


# ---------------------------------------------------------------------------
# dispatch


def apply_sym(spec, body, tol=DEFAULT_TOL):
    """Apply the operator described by a SymSpec."""
    op = spec.op
    H = spec.H
    if op == "steiner":
        return steiner(body, H, tol)
    if op == "minkowski":
        return minkowski(body, H, tol)
    if op == "central":
        return central(body, tol)
    if op == "central_p":
        return central_p(body, spec.p, tol)
    if op == "schwarz":
        return schwarz(body, H, tol)
    if op == "fiber":
        G = spec.G if spec.G is not None else H
        return fiber(body, H, G, tol)
    if op == "m_sym":
        return m_symmetrization(body, spec.M_polygon, spec.c, H, tol)
    if op == "minkowski_blaschke":
        return minkowski_blaschke(body, H, tol)
    if op == "inner_rot":
        return inner_rotational(body, H, tol)
    if op == "outer_rot":
        return outer_rotational(body, H, tol)
    if op == "blaschke2d":
        return blaschke2d(body, H, tol)
    if op == "vexlast":
        return vexlast(body, H, tol)
    raise InvalidInput("unknown operator %r" % (op,))
