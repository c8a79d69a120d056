"""Body files: the symkit-body-v1 JSON schema.

One self-describing format covers all three representations (vertex polytope,
support sample, revolution profile).  Floats go through the shortest-decimal
repr that json uses natively, so parse(serialize(K)) reproduces K bit for bit.
"""

import json
import os
import tempfile

import numpy as np

from .core_geometry import RevolutionProfile, Subspace, SupportSample, VPolytope
from .errors import InvalidInput

SCHEMA = "symkit-body-v1"


def body_to_dict(body):
    if isinstance(body, VPolytope):
        return {
            "schema": SCHEMA,
            "type": "vpolytope",
            "dim": body.ambient_dim,
            "vertices": body.vertices.tolist(),
        }
    if isinstance(body, SupportSample):
        return {
            "schema": SCHEMA,
            "type": "support_sample",
            "dim": body.ambient_dim,
            "grid": body.grid.tolist(),
            "values": body.values.tolist(),
        }
    if isinstance(body, RevolutionProfile):
        return {
            "schema": SCHEMA,
            "type": "revolution_profile",
            "dim": 3,
            "axis": body.axis.basis.tolist(),
            "stations": body.t.tolist(),
            "radii": body.r.tolist(),
        }
    raise InvalidInput("unknown body type %r" % type(body))


def _require(doc, key, kinds):
    if key not in doc:
        raise InvalidInput("body file is missing %r" % key)
    val = doc[key]
    if not isinstance(val, kinds):
        raise InvalidInput("body file field %r has the wrong type" % key)
    return val


def _float_array(doc, key, dim):
    arr = np.asarray(_require(doc, key, list), dtype=float)
    if arr.ndim != 2 or arr.shape[1] != dim or arr.shape[0] == 0:
        raise InvalidInput("%r must be a nonempty list of %d-vectors" % (key, dim))
    if not np.all(np.isfinite(arr)):
        raise InvalidInput("%r contains non-finite values" % key)
    return arr


def body_from_dict(doc):
    if not isinstance(doc, dict):
        raise InvalidInput("body file must be a JSON object")
    if doc.get("schema") != SCHEMA:
        raise InvalidInput("unknown schema %r (expected %r)" % (doc.get("schema"), SCHEMA))
    kind = _require(doc, "type", str)
    dim = _require(doc, "dim", int)
    if dim not in (2, 3):
        raise InvalidInput("dim must be 2 or 3")
    if kind == "vpolytope":
        return VPolytope(_float_array(doc, "vertices", dim))
    if kind == "support_sample":
        grid = _float_array(doc, "grid", dim)
        values = np.asarray(_require(doc, "values", list), dtype=float)
        if values.ndim != 1 or values.shape[0] != grid.shape[0]:
            raise InvalidInput("values must pair up with the grid rows")
        if not np.all(np.isfinite(values)):
            raise InvalidInput("values contain non-finite entries")
        return SupportSample(grid, values)
    if kind == "revolution_profile":
        if dim != 3:
            raise InvalidInput("revolution profiles live in R^3")
        axis = _float_array(doc, "axis", 3)
        if axis.shape[0] != 1:
            raise InvalidInput("axis must be a single direction vector")
        t = np.asarray(_require(doc, "stations", list), dtype=float)
        r = np.asarray(_require(doc, "radii", list), dtype=float)
        if t.ndim != 1 or t.shape != r.shape or t.size == 0:
            raise InvalidInput("stations and radii must be nonempty parallel lists")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(r))):
            raise InvalidInput("stations/radii contain non-finite entries")
        if np.any(r < 0):
            raise InvalidInput("radii must be nonnegative")
        return RevolutionProfile(Subspace.line(3, axis[0]), t, r)
    raise InvalidInput("unknown body type %r" % kind)


def dumps(body):
    return json.dumps(body_to_dict(body), indent=1) + "\n"


def loads(text):
    try:
        doc = json.loads(text)
    except ValueError as exc:
        raise InvalidInput("invalid JSON: %s" % exc) from exc
    return body_from_dict(doc)


def atomic_write_text(path, text):
    """Write via a sibling temp file and rename, so readers never see a torn file."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_body(body, path):
    atomic_write_text(path, dumps(body))


def load_body(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidInput("cannot read %s: %s" % (path, exc)) from exc
    return loads(text)
