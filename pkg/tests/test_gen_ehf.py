"""Generator checks for the even-hole-free family and its pyramid variant."""

from __future__ import annotations

import pytest

from conftest import stretch_gap
from layered_wheels import (
    FeasibilityError,
    InputError,
    LengthPolicy,
    generate_ehf,
    parity_audit,
    small_pattern_report,
    validate_axioms,
)
from layered_wheels.gen_ehf import minimal_uniform_m


def test_l1_k4_structure():
    w = generate_ehf(1, 4)
    assert len(w.layers[1]) == 7
    marks = [v for v in w.layers[1] if w.vinfo[v].vtype == 1]
    assert len(marks) == 3
    positions = [w.vinfo[v].pos for v in marks]
    assert positions[1] - positions[0] == 3 and positions[2] - positions[1] == 3
    assert validate_axioms(w).ok


def _boxes_zone_counts(w, layer_idx):
    counts = {}
    for u in w.layers[layer_idx]:
        box = w.box(u)
        zones = [
            z
            for z in w.zones
            if z.span.layer == box.layer and box.lo <= z.span.lo and z.span.hi <= box.hi
        ]
        counts[u] = len(zones)
    return counts


@pytest.mark.parametrize("variant,expected", [("standard", 11), ("pyramid", 9)])
def test_type2_box_zone_counts(ehf34, pyr34, variant, expected):
    w = ehf34 if variant == "standard" else pyr34
    counts = _boxes_zone_counts(w, 2)
    type2 = [u for u in w.layers[2] if w.vinfo[u].vtype == 2]
    assert type2
    for u in type2:
        assert counts[u] == expected, (u, counts[u])


def test_type01_box_zone_counts(ehf34):
    counts = _boxes_zone_counts(ehf34, 2)
    for u in ehf34.layers[2]:
        t = ehf34.vinfo[u].vtype
        pos = ehf34.vinfo[u].pos
        end = pos in (0, len(ehf34.layers[2]) - 1)
        if t == 0:
            assert counts[u] == 3
        elif t == 1:
            assert counts[u] == (4 if end else 5)


def test_parity_audit_clean(ehf24, ehf34, pyr34):
    for w in (ehf24, ehf34, pyr34):
        assert parity_audit(w).ok


def test_parity_audit_flags_tampered_gap(ehf24):
    # stretch an in-zone gap of a type-0 internal box in the last layer
    target = next(
        u
        for u in ehf24.layers[1]
        if ehf24.vinfo[u].vtype == 0
    )
    box = ehf24.box(target)
    zones = [
        z
        for z in ehf24.zones
        if z.span.layer == 2 and box.lo <= z.span.lo and z.span.hi <= box.hi
    ]
    mid = zones[1]  # the single-owner middle zone of a 3-zone box
    assert mid.owners == (target,)
    tampered = stretch_gap(ehf24, 2, ehf24.pos_of(mid.marks[0]))
    rep = parity_audit(tampered)
    assert not rep.ok
    flagged = {v.axiom for v in rep.violations}
    assert flagged == {"parity.private"}
    assert all(v.vertices == (target,) for v in rep.violations)


def test_odd_neighbor_counts_in_last_layer(ehf24):
    w = ehf24
    for i in range(w.l):
        for u in w.layers[i]:
            cnt = len(w.neighbors_in_layer(u, w.l))
            assert cnt % 2 == 1
    # concrete per-type counts, derived from the zone mark sums
    by_type = {}
    for u in w.layers[1]:
        t = w.vinfo[u].vtype
        end = w.is_end(u)
        key = (t, end)
        by_type.setdefault(key, set()).add(len(w.neighbors_in_layer(u, 2)))
    assert by_type[(0, False)] == {11}
    assert by_type[(1, False)] == {17}
    assert by_type[(1, True)] == {13}


def test_type2_counts_31_standard(ehf34):
    w = ehf34
    for u in w.layers[2]:
        if w.vinfo[u].vtype == 2:
            assert len(w.neighbors_in_layer(u, 3)) == 31


def test_no_k4_triangles_and_diamonds(ehf24):
    rep = small_pattern_report(ehf24.graph)
    assert not rep.has_K4
    assert rep.has_triangle
    assert rep.has_diamond
    assert not rep.has_K33_subgraph


def test_l1_is_triangle_free():
    rep = small_pattern_report(generate_ehf(1, 4).graph)
    assert not rep.has_triangle


def test_type2_ancestors_adjacent(ehf34):
    for info in ehf34.vinfo:
        if info.vtype == 2:
            a, b = info.ancestors
            assert ehf34.graph.has_edge(a, b)
            assert ehf34.vinfo[a].layer >= ehf34.vinfo[b].layer


def test_uniform_feasibility_and_generation():
    m_min = minimal_uniform_m(2, 4)
    with pytest.raises(FeasibilityError):
        generate_ehf(2, 4, LengthPolicy.uniform(m_min - 2))
    with pytest.raises(FeasibilityError):
        generate_ehf(2, 4, LengthPolicy.uniform(m_min + 1))  # even m
    w = generate_ehf(2, 4, LengthPolicy.uniform(m_min))
    assert validate_axioms(w).ok
    assert parity_audit(w).ok
    from layered_wheels import uniformity_audit

    assert uniformity_audit(w).uniform_m == m_min


def test_input_validation():
    with pytest.raises(InputError):
        generate_ehf(0, 4)
    with pytest.raises(InputError):
        generate_ehf(2, 4, variant="bogus")


def test_generation_is_inductive(ehf24, ehf34):
    assert ehf24.layers == ehf34.layers[:3]
    assert set(ehf24.graph.edges()) <= set(ehf34.graph.edges())
