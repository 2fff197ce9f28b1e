"""Shared fixtures and tamper helpers for the test suite."""

from __future__ import annotations

import pytest

from layered_wheels import LayeredWheel, LengthPolicy, generate_ehf, generate_ttf
from layered_wheels.gen_ttf import minimal_uniform_m as ttf_minimal_m


@pytest.fixture(scope="session")
def ttf24():
    return generate_ttf(2, 4)


@pytest.fixture(scope="session")
def ttf25():
    return generate_ttf(2, 5)


@pytest.fixture(scope="session")
def ehf24():
    return generate_ehf(2, 4)


@pytest.fixture(scope="session")
def ehf34():
    return generate_ehf(3, 4)


@pytest.fixture(scope="session")
def pyr34():
    return generate_ehf(3, 4, variant="pyramid")


@pytest.fixture(scope="session")
def ttf_uniform24():
    return generate_ttf(2, 4, LengthPolicy.uniform(ttf_minimal_m(2, 4)))


def drop_edge(w: LayeredWheel, u: int, v: int) -> LayeredWheel:
    """Rebuild the wheel with one edge removed (metadata untouched)."""
    d = w.to_json_dict()
    d["edges"] = [e for e in d["edges"] if set(e) != {u, v}]
    return LayeredWheel.from_json_dict(d)


def add_edge(w: LayeredWheel, u: int, v: int) -> LayeredWheel:
    d = w.to_json_dict()
    d["edges"].append([min(u, v), max(u, v)])
    d["edges"].sort()
    return LayeredWheel.from_json_dict(d)


def stretch_gap(w: LayeredWheel, layer_idx: int, pos: int) -> LayeredWheel:
    """Insert one filler vertex between positions pos and pos+1 of a layer,
    lengthening that gap by one (and flipping its parity)."""
    d = w.to_json_dict()
    new_id = sum(len(layer) for layer in d["layers"])
    layer = d["layers"][layer_idx]
    a, b = layer[pos], layer[pos + 1]
    layer.insert(pos + 1, new_id)
    for vd in d["vertices"]:
        if vd["layer"] == layer_idx and vd["pos"] > pos:
            vd["pos"] += 1
    d["vertices"].append(
        {"id": new_id, "layer": layer_idx, "pos": pos + 1, "type": 0, "ancestors": []}
    )
    for z in d["zones"]:
        if z["span"]["layer"] == layer_idx:
            if z["span"]["lo"] > pos:
                z["span"]["lo"] += 1
            if z["span"]["hi"] > pos:
                z["span"]["hi"] += 1
    edges = [e for e in d["edges"] if set(e) != {a, b}]
    edges.append(sorted((a, new_id)))
    edges.append(sorted((b, new_id)))
    edges.sort()
    d["edges"] = edges
    return LayeredWheel.from_json_dict(d)
