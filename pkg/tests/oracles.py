"""Independent reference computations used to cross-check symkit.

Nothing here goes through the package's own geometry kernels: hulls,
volumes and facet inequalities come from Qhull (scipy.spatial), support
values are brute-force vertex maxima, chords are edge scans, and the
analytic constants are written out in closed form.
"""

import math

import numpy as np
from scipy.spatial import ConvexHull as QHull

# closed-form constants
CONE_HEIGHT_3 = 2.0 - math.sqrt(2.0)                    # 0.5857864376269049
PRISM_B_3 = math.sqrt(1.5)                              # 1.2247448713915892
SCHWARZ_BOX_R = 2.0 / math.sqrt(math.pi)                # 1.1283791670955126
# corner of the unit square minus the radius of the equal-area disk
SQUARE_BALL_DISTANCE = math.sqrt(2.0) - 2.0 / math.sqrt(math.pi)


def hull_volume(points):
    """Volume (area in 2-D) of conv(points) via Qhull."""
    return float(QHull(np.asarray(points, dtype=float)).volume)


def hull_perimeter_2d(points):
    # Qhull reports the boundary measure as "area"; in 2-D that is the
    # perimeter
    return float(QHull(np.asarray(points, dtype=float)).area)


def support_max(points, u):
    """Brute-force support value max_x <x, u>."""
    return float((np.asarray(points, dtype=float) @ np.asarray(u)).max())


def v1_reference(points):
    """First intrinsic volume of conv(points).

    2-D: half the perimeter.  3-D: sum over edges of length times exterior
    dihedral angle, divided by 2 pi.  Both are classical polytope formulas
    and share nothing with the package implementation.
    """
    pts = np.asarray(points, dtype=float)
    if pts.shape[1] == 2:
        return 0.5 * hull_perimeter_2d(pts)
    hull = QHull(pts)
    normals = hull.equations[:, :3]
    total = 0.0
    for si, simplex in enumerate(hull.simplices):
        for ni, tj in enumerate(hull.neighbors[si]):
            if tj < si:
                continue
            shared = [v for v in simplex if v != simplex[ni]]
            p, q = hull.points[shared[0]], hull.points[shared[1]]
            # atan2 keeps full precision for the nearly flat dihedrals that
            # Minkowski sums produce; acos would lose ~1e-8 there
            cross = np.linalg.norm(np.cross(normals[si], normals[tj]))
            ang = math.atan2(cross, float(normals[si] @ normals[tj]))
            total += float(np.linalg.norm(q - p)) * ang
    return total / (2.0 * math.pi)


def contains_reference(outer_points, inner_points, tol_abs):
    """Check conv(inner) inside conv(outer) through Qhull facet inequalities."""
    eq = QHull(np.asarray(outer_points, dtype=float)).equations
    d = eq.shape[1] - 1
    inner = np.asarray(inner_points, dtype=float)
    gap = (inner @ eq[:, :d].T + eq[:, d]).max()
    return bool(gap <= tol_abs)


def vertical_chord(verts, x):
    """Intersection of the filled polygon with the line {x} x R.

    verts must be an ordered vertex loop (either orientation).  Returns
    (lo, hi) or None when the line misses the polygon.
    """
    v = np.asarray(verts, dtype=float)
    ys = []
    m = v.shape[0]
    for k in range(m):
        p, q = v[k], v[(k + 1) % m]
        if p[0] == q[0]:
            if p[0] == x:
                ys.extend([p[1], q[1]])
            continue
        t = (x - p[0]) / (q[0] - p[0])
        if 0.0 <= t <= 1.0:
            ys.append(p[1] + t * (q[1] - p[1]))
    if not ys:
        return None
    return min(ys), max(ys)


def clip_halfplane(poly, normal, offset, eps):
    """Clip an ordered vertex loop by {x : <normal, x> <= offset}."""
    poly = np.asarray(poly, dtype=float)
    if poly.shape[0] == 0:
        return poly
    d = poly @ np.asarray(normal) - offset
    if (d <= eps).all():
        return poly
    if (d > eps).all():
        return poly[:0]
    out = []
    m = poly.shape[0]
    for k in range(m):
        p, q = poly[k], poly[(k + 1) % m]
        dp, dq = d[k], d[(k + 1) % m]
        if dp <= eps:
            out.append(p)
        if (dp <= eps) != (dq <= eps):
            t = dp / (dp - dq)
            out.append(p + t * (q - p))
    return np.asarray(out)


def clip_by_hull(poly, hull_points, eps, shift=None):
    """Clip an ordered vertex loop by conv(hull_points) (+ optional shift)."""
    eq = QHull(np.asarray(hull_points, dtype=float)).equations
    d = eq.shape[1] - 1
    for row in eq:
        offset = -row[d]
        if shift is not None:
            offset += row[:d] @ shift
        poly = clip_halfplane(poly, row[:d], offset, eps)
        if poly.shape[0] == 0:
            break
    return poly


# --- Blaschke symmetral closed forms -------------------------------------
#
# Cone: the symmetral of the unit cone (radius 1, height 1) is an
# o-symmetric truncated double cone.  Equal split of the base point mass
# fixes the flat-top radius, equal split of the slanted band fixes the
# outer radius:
#     h**(n-1) = 1/2        a**(n-1) - h**(n-1) = 1/2
# so a = 1, h = 2**(-1/(n-1)), and the height is 2*(a - h).
#
# Prism: for the cylinder [-1/2, 1/2] x T**(n-1) the three facet-type
# balances read
#     h**(n-2) * b = 1/2
#     2*(a**(n-1) - h**(n-1)) = 1
#     2*(a**(n-2) - h**(n-2)) * b = 1
# with closed-form width b = 2**(-1/(n-1)) * (2**((n-1)/(n-2)) - 1)**((n-2)/(n-1)).


def cone_reference(n):
    h = 0.5 ** (1.0 / (n - 1))
    return 1.0, h, 2.0 * (1.0 - h)


def cone_residuals(a, h, n):
    return (
        abs(h ** (n - 1) - 0.5),
        abs((a ** (n - 1) - h ** (n - 1)) - 0.5),
    )


def prism_b_reference(n):
    return 2.0 ** (-1.0 / (n - 1)) * (
        2.0 ** ((n - 1.0) / (n - 2.0)) - 1.0
    ) ** ((n - 2.0) / (n - 1.0))


def prism_residuals(a, h, b, n):
    return (
        abs(h ** (n - 2) * b - 0.5),
        abs(2.0 * (a ** (n - 1) - h ** (n - 1)) - 1.0),
        abs(2.0 * (a ** (n - 2) - h ** (n - 2)) * b - 1.0),
    )
