"""Body-file schema round trips and rejection paths."""

import json
import os

import numpy as np
import pytest

from conftest import random_polytope
from symkit import RevolutionProfile, Subspace, SupportSample, VPolytope, direction_grid, sample_body
from symkit.errors import InvalidInput
from symkit.serialize import (
    SCHEMA,
    atomic_write_text,
    body_from_dict,
    body_to_dict,
    dumps,
    load_body,
    loads,
    save_body,
)


def test_vpolytope_round_trip_is_bit_exact():
    for n in (2, 3):
        K = random_polytope((81, n), n)
        back = loads(dumps(K))
        assert isinstance(back, VPolytope)
        assert np.array_equal(back.vertices, K.vertices)


def test_support_sample_round_trip():
    K = random_polytope(82, 2)
    S = sample_body(K, direction_grid(2, 64))
    back = loads(dumps(S))
    assert isinstance(back, SupportSample)
    assert np.array_equal(back.grid, S.grid)
    assert np.array_equal(back.values, S.values)


def test_revolution_profile_round_trip():
    P = RevolutionProfile(
        Subspace.line(3, np.array([0.0, 0.6, 0.8])),
        np.array([-1.0, 0.25, 1.5]),
        np.array([0.5, 1.0, 0.0]),
    )
    back = loads(dumps(P))
    assert isinstance(back, RevolutionProfile)
    assert np.array_equal(back.t, P.t)
    assert np.array_equal(back.r, P.r)
    assert np.allclose(back.axis.basis, P.axis.basis)


def test_file_round_trip(tmp_path):
    K = random_polytope(83, 3)
    path = tmp_path / "body.json"
    save_body(K, str(path))
    assert np.array_equal(load_body(str(path)).vertices, K.vertices)
    doc = json.loads(path.read_text())
    assert doc["schema"] == SCHEMA
    assert doc["type"] == "vpolytope"


def test_dumps_shape():
    text = dumps(random_polytope(84, 2))
    assert text.endswith("\n")
    assert json.loads(text)["dim"] == 2


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.update(schema="symkit-body-v0"),
        lambda d: d.pop("type"),
        lambda d: d.update(type="blob"),
        lambda d: d.update(dim=4),
        lambda d: d.update(dim="2"),
        lambda d: d.update(vertices=[]),
        lambda d: d.update(vertices="nope"),
        lambda d: d.update(vertices=[[0.0, float("nan")], [1.0, 0.0], [0.0, 1.0]]),
        lambda d: d.update(vertices=[[0.0, 0.0, 0.0]]),
    ],
)
def test_bad_polytope_documents(mutate):
    doc = body_to_dict(random_polytope(85, 2))
    mutate(doc)
    with pytest.raises(InvalidInput):
        body_from_dict(doc)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.update(values=d["values"][:-1]),
        lambda d: d.update(values=[float("inf")] * len(d["values"])),
        lambda d: d.pop("grid"),
    ],
)
def test_bad_sample_documents(mutate):
    S = sample_body(random_polytope(86, 2), direction_grid(2, 32))
    doc = body_to_dict(S)
    mutate(doc)
    with pytest.raises(InvalidInput):
        body_from_dict(doc)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.update(dim=2),
        lambda d: d.update(radii=[-0.5, 1.0]),
        lambda d: d.update(radii=[1.0]),
        lambda d: d.update(axis=[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]),
        lambda d: d.update(stations=[]) or d.update(radii=[]),
    ],
)
def test_bad_profile_documents(mutate):
    P = RevolutionProfile(
        Subspace.line(3, np.array([0.0, 0.0, 1.0])),
        np.array([-1.0, 1.0]),
        np.array([1.0, 1.0]),
    )
    doc = body_to_dict(P)
    mutate(doc)
    with pytest.raises(InvalidInput):
        body_from_dict(doc)


def test_loads_rejects_garbage():
    with pytest.raises(InvalidInput):
        loads("{not json")
    with pytest.raises(InvalidInput):
        loads("[1, 2, 3]")


def test_load_body_missing_file(tmp_path):
    with pytest.raises(InvalidInput):
        load_body(str(tmp_path / "absent.json"))


def test_atomic_write_leaves_no_debris(tmp_path):
    path = tmp_path / "out.txt"
    atomic_write_text(str(path), "hello\n")
    assert path.read_text() == "hello\n"
    # a failed write must not clobber the previous content
    with pytest.raises(TypeError):
        atomic_write_text(str(path), 12345)
    assert path.read_text() == "hello\n"
    assert [p for p in os.listdir(tmp_path) if p.endswith(".tmp")] == []
