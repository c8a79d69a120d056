"""Iterated symmetrization along subspace sequences.

Runs processes of the form K -> op(K, H_j) for H_j drawn from a deterministic
sequence and records per-step diagnostics: volume, first intrinsic volume,
and distance from the volume- or mean-width-matched ball.  The two-start-index
rectangle experiment (successive symmetrals stabilizing at different volumes
depending on where the sequence is entered) lives here as example_weakdi.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .core_geometry import (
    DEFAULT_TOL,
    Subspace,
    VPolytope,
    ball_v1,
    circumradius,
    convex_hull,
    direction_grid,
    intrinsic_volume_1,
    steiner_point,
    support_batch,
    translate,
    unit_ball_volume,
    volume,
)
from .errors import CapExceeded, InvalidInput, Unsupported
from .symmetrizations import blaschke2d, fiber, minkowski, steiner, vexlast

VERTEX_CAP = 10000

# above this count a trajectory body is re-reduced with the standard hull
# tolerance; staying lazy keeps short aligned runs bit-exact while bounding
# the breakpoint doubling that generic angles produce
SIMPLIFY_ABOVE = 2000

GOLDEN_ANGLE = math.pi * (math.sqrt(5.0) - 1.0) / 2.0

PROCESSES = {
    "steiner": steiner,
    "minkowski": minkowski,
    "fiber": lambda K, H, tol: fiber(K, H, H, tol),
    "blaschke2d": blaschke2d,
    "vexlast": vexlast,
}


# ---------------------------------------------------------------------------
# subspace sequences


@dataclass(frozen=True)
class SubspaceSequence:
    """A finite, fully materialized list of i-dimensional subspaces of R^n.

    Steps are indexed from 1 to match the usual H_1, H_2, ... notation.
    """

    kind: str
    n: int
    i: int
    subspaces: tuple
    params: dict = field(default_factory=dict)

    @property
    def length(self):
        return len(self.subspaces)

    def at(self, step):
        if not 1 <= step <= len(self.subspaces):
            raise InvalidInput(
                "step %d outside the sequence range 1..%d" % (step, len(self.subspaces))
            )
        return self.subspaces[step - 1]


def _random_subspace(rng, n, i):
    # QR of a Gaussian matrix; sign-fixing the R diagonal keeps the draw
    # deterministic across BLAS implementations.
    g = rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    q = q * np.sign(np.diag(r))
    return Subspace.span(n, q[:, :i].T)


def make_sequence(kind, n, i, length, params=None):
    """Build a deterministic SubspaceSequence of the given kind.

    kinds: fixed_list (params["subspaces"] passed through), irrational_rotation
    (n=2, i=1: lines at angle theta on odd steps and the x-axis on even steps),
    uniform_random (params["seed"]), dense_enumeration (golden-angle multiples,
    equidistributed, hence dense among i-subspaces for the supported (n, i)).
    """
    params = dict(params or {})
    if not isinstance(length, int) or length < 0:
        raise InvalidInput("sequence length must be a nonnegative integer")
    if n not in (2, 3) or not 1 <= i <= n - 1:
        raise Unsupported("sequences cover n in {2, 3} with 1 <= i <= n-1")

    if kind == "fixed_list":
        subs = tuple(params.get("subspaces", ()))
        if not subs:
            raise InvalidInput("fixed_list needs a nonempty params['subspaces']")
        for H in subs:
            if not isinstance(H, Subspace) or H.ambient_dim != n or H.dim != i:
                raise InvalidInput("fixed_list entries must be %d-subspaces of R^%d" % (i, n))
        if length != len(subs):
            raise InvalidInput("fixed_list length must equal the list length")
        return SubspaceSequence(kind, n, i, subs, params)

    if kind == "irrational_rotation":
        if (n, i) != (2, 1):
            raise Unsupported("irrational_rotation is a planar line sequence")
        theta = float(params.get("theta", GOLDEN_ANGLE))
        H1 = Subspace.line_at_angle(theta)
        H2 = Subspace.line_at_angle(0.0)
        subs = tuple(H1 if k % 2 == 1 else H2 for k in range(1, length + 1))
        return SubspaceSequence(kind, n, i, subs, {"theta": theta})

    if kind == "uniform_random":
        seed = int(params.get("seed", 0))
        subs = tuple(
            _random_subspace(np.random.default_rng((seed, k)), n, i)
            for k in range(1, length + 1)
        )
        return SubspaceSequence(kind, n, i, subs, {"seed": seed})

    if kind == "dense_enumeration":
        if n == 2:
            subs = tuple(
                Subspace.line_at_angle((k * GOLDEN_ANGLE) % math.pi)
                for k in range(1, length + 1)
            )
        else:
            # spherical Fibonacci walk; dense directions give dense lines or
            # dense hyperplanes via their normals
            ks = np.arange(1, length + 1, dtype=float)
            z = 1.0 - 2.0 * ks / (length + 1.0)
            rho = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
            ang = 2.0 * GOLDEN_ANGLE * ks
            dirs = np.column_stack([rho * np.cos(ang), rho * np.sin(ang), z])
            if i == 1:
                subs = tuple(Subspace.line(3, d) for d in dirs)
            else:
                subs = tuple(Subspace.from_normal(d) for d in dirs)
        return SubspaceSequence(kind, n, i, subs, params)

    raise Unsupported("unknown sequence kind %r" % (kind,))


# ---------------------------------------------------------------------------
# ball distance


def ball_distance(body, matching="by_Vn", tol=DEFAULT_TOL):
    """Hausdorff distance from the recentered body to its matched ball.

    The body is recentered at its Steiner point and compared against r B^n
    centered at o, with r chosen so the ball matches the body's volume
    (matching="by_Vn") or its first intrinsic volume (matching="by_V1").
    """
    n = body.ambient_dim
    if matching == "by_Vn":
        v = volume(body, tol)
        if v <= 0.0:
            raise InvalidInput("volume matching needs a body of positive volume")
        r = (v / unit_ball_volume(n)) ** (1.0 / n)
    elif matching == "by_V1":
        w = intrinsic_volume_1(body, tol)
        if w <= 0.0:
            raise InvalidInput("mean-width matching needs positive V_1")
        r = w / ball_v1(n, 1.0)
    else:
        raise InvalidInput("matching must be 'by_Vn' or 'by_V1'")
    centered = translate(body, -steiner_point(body, tol))
    U = direction_grid(n, tol.hausdorff_grid(n))
    h = support_batch(centered, U)
    return float(np.abs(h - r).max())


# ---------------------------------------------------------------------------
# trajectories


@dataclass(frozen=True)
class TrajectoryPoint:
    step: int
    V_n: float
    V_1: float
    ball_distance: float


@dataclass(frozen=True)
class Trajectory:
    process: str
    matching: str
    points: tuple
    snapshots: tuple
    final: object

    def column(self, name):
        return np.array([getattr(p, name) for p in self.points], dtype=float)


def _resolve_process(process):
    if callable(process):
        return getattr(process, "__name__", "custom"), process
    name = str(process)
    if name not in PROCESSES:
        raise Unsupported("unknown process %r" % (name,))
    return name, PROCESSES[name]


def _point(step, body, matching, tol):
    p = TrajectoryPoint(
        step=step,
        V_n=float(volume(body, tol)),
        V_1=float(intrinsic_volume_1(body, tol)),
        ball_distance=ball_distance(body, matching, tol),
    )
    if not all(map(math.isfinite, (p.V_n, p.V_1, p.ball_distance))):
        raise InvalidInput("non-finite trajectory metric at step %d" % step)
    return p


def iterate(
    process,
    body,
    seq,
    start=1,
    end=None,
    matching="by_Vn",
    snapshot_every=0,
    vertex_cap=VERTEX_CAP,
    simplify_above=SIMPLIFY_ABOVE,
    tol=DEFAULT_TOL,
):
    """Run the process along seq from index start to index end inclusive.

    The first trajectory row (step = start - 1) records the input body, so a
    run with end < start yields exactly the initial row.  Bodies whose vertex
    count crosses simplify_above are re-reduced with the standard hull
    tolerance; exceeding vertex_cap even then raises CapExceeded with the
    partial trajectory attached.
    """
    name, op = _resolve_process(process)
    if end is None:
        end = seq.length
    if not (isinstance(start, int) and isinstance(end, int)):
        raise InvalidInput("start and end must be integers")
    if start < 1 or end > seq.length or end < start - 1:
        raise InvalidInput(
            "need 1 <= start and start - 1 <= end <= %d, got %d..%d"
            % (seq.length, start, end)
        )

    points = [_point(start - 1, body, matching, tol)]
    snapshots = [(start - 1, body)] if snapshot_every > 0 else []
    for k in range(start, end + 1):
        body = op(body, seq.at(k), tol)
        if isinstance(body, VPolytope) and body.vertices.shape[0] > simplify_above:
            body = convex_hull(body.vertices, tol)
        if isinstance(body, VPolytope) and body.vertices.shape[0] > vertex_cap:
            exc = CapExceeded(
                "step %d produced %d vertices (cap %d)"
                % (k, body.vertices.shape[0], vertex_cap)
            )
            exc.trajectory = Trajectory(name, matching, tuple(points), tuple(snapshots), body)
            raise exc
        points.append(_point(k, body, matching, tol))
        if snapshot_every > 0 and (k - start + 1) % snapshot_every == 0:
            snapshots.append((k, body))
    return Trajectory(name, matching, tuple(points), tuple(snapshots), body)


# ---------------------------------------------------------------------------
# the two-start-index rectangle experiment


@dataclass(frozen=True)
class WeakdiResult:
    area_from_step1: float
    area_from_step2: float
    trajectory_from_step1: Trajectory
    trajectory_from_step2: Trajectory


def example_weakdi(a=1.0, b=1.0, theta=3.0 * math.pi / 4.0, steps=400, tol=DEFAULT_TOL):
    """Iterate vexlast over the alternating line sequence from two start indices.

    K = [-a, a] x [1, 1+b]; odd steps symmetrize about the line at angle theta,
    even steps about the x-axis.  Entering at step 1 keeps the area at 2ab
    (the first symmetral already meets every later line), entering at step 2
    first compresses by e^{-1} (K sits at distance 1 from the x-axis), so the
    two runs stabilize at areas with ratio e.  Requires K to touch the theta
    line and its projection onto that line to cover the origin; otherwise the
    area identities do not hold and InvalidInput is raised.
    """
    if not (a > 0.0 and b > 0.0):
        raise InvalidInput("need a > 0 and b > 0")
    if not (isinstance(steps, int) and steps >= 1):
        raise InvalidInput("steps must be a positive integer")
    K = convex_hull(
        np.array([[-a, 1.0], [a, 1.0], [a, 1.0 + b], [-a, 1.0 + b]])
    )
    H1 = Subspace.line_at_angle(float(theta))
    slack = 1e-9 * max(1.0, circumradius(K))
    along = K.vertices @ H1.basis[0]
    across = K.vertices @ H1.complement[0]
    if across.min() > slack or across.max() < -slack:
        raise InvalidInput("K does not meet the line at angle theta")
    if along.min() > slack or along.max() < -slack:
        raise InvalidInput("the projection of K onto the theta line misses the origin")

    seq = make_sequence("irrational_rotation", 2, 1, steps + 1, {"theta": float(theta)})
    t1 = iterate("vexlast", K, seq, 1, steps, tol=tol)
    t2 = iterate("vexlast", K, seq, 2, steps + 1, tol=tol)
    return WeakdiResult(
        area_from_step1=t1.points[-1].V_n,
        area_from_step2=t2.points[-1].V_n,
        trajectory_from_step1=t1,
        trajectory_from_step2=t2,
    )
