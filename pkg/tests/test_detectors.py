"""Detectors vs an independent all-subsets isomorphism oracle, plus fixtures."""

from __future__ import annotations

import random
from itertools import combinations

import networkx as nx
import pytest

from layered_wheels import (
    Budget,
    Graph,
    InputError,
    Witness,
    check_witness,
    enumerate_holes,
    find_prism,
    find_pyramid,
    find_theta,
    generate_ehf,
    pyramid_witness_in_variant,
)

# -- independent oracle: isomorphism against generated template families --------


def _template_theta(lengths):
    g = nx.Graph()
    nxt = 2
    for length in lengths:
        prev = 0
        for _ in range(length - 1):
            g.add_edge(prev, nxt)
            prev = nxt
            nxt += 1
        g.add_edge(prev, 1)
    return g


def _template_pyramid(lengths):
    g = nx.Graph([("b0", "b1"), ("b0", "b2"), ("b1", "b2")])
    nxt = 0
    for i, length in enumerate(lengths):
        prev = "a"
        for _ in range(length - 1):
            g.add_edge(prev, nxt)
            prev = nxt
            nxt += 1
        g.add_edge(prev, f"b{i}")
    return g


def _template_prism(lengths):
    g = nx.Graph(
        [("a0", "a1"), ("a0", "a2"), ("a1", "a2"), ("b0", "b1"), ("b0", "b2"), ("b1", "b2")]
    )
    nxt = 0
    for i, length in enumerate(lengths):
        prev = f"a{i}"
        for _ in range(length - 1):
            g.add_edge(prev, nxt)
            prev = nxt
            nxt += 1
        g.add_edge(prev, f"b{i}")
    return g


def _compositions(total, parts, minimum):
    if parts == 1:
        if total >= minimum:
            yield (total,)
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, minimum):
            yield (first, *rest)


def _templates(kind, n):
    out = []
    seen = set()
    if kind == "hole":
        if n >= 4:
            out.append(nx.cycle_graph(n))
    elif kind == "theta":
        for lengths in _compositions(n + 1, 3, 2):
            key = tuple(sorted(lengths))
            if key not in seen:
                seen.add(key)
                out.append(_template_theta(lengths))
    elif kind == "pyramid":
        for lengths in _compositions(n - 1, 3, 1):
            if sum(1 for x in lengths if x == 1) > 1:
                continue
            key = tuple(sorted(lengths))
            if key not in seen:
                seen.add(key)
                out.append(_template_pyramid(lengths))
    elif kind == "prism":
        for lengths in _compositions(n - 3, 3, 1):
            key = tuple(sorted(lengths))
            if key not in seen:
                seen.add(key)
                out.append(_template_prism(lengths))
    return out


def subset_oracle(g: Graph, kind: str) -> set[frozenset[int]]:
    """Every vertex subset whose induced subgraph is isomorphic to the family."""
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges())
    found = set()
    cache = {}
    for size in range(3, g.n + 1):
        if size not in cache:
            cache[size] = _templates(kind, size)
        if not cache[size]:
            continue
        for sub in combinations(range(g.n), size):
            h = nxg.subgraph(sub)
            for t in cache[size]:
                if nx.is_isomorphic(h, t):
                    found.add(frozenset(sub))
                    break
    return found


def random_graph(rng, n, p):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


# -- fixtures from the definitions ----------------------------------------------


def test_c6_holes():
    g = Graph(6, [(i, (i + 1) % 6) for i in range(6)])
    scan = enumerate_holes(g)
    assert scan.count == 1 and scan.min_hole_len == 6
    assert scan.has_even_hole is True and scan.complete


def test_k23_is_smallest_theta():
    g = Graph(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
    res = find_theta(g)
    assert res.witness is not None and res.complete
    assert res.witness.vertices == frozenset(range(5))
    assert check_witness(g, res.witness)


def test_six_vertex_pyramid_fixture():
    # triangle b1 b2 b3 = 1,2,3; apex 0 with paths 0-1, 0-4-2, 0-5-3
    g = Graph(6, [(1, 2), (1, 3), (2, 3), (0, 1), (0, 4), (4, 2), (0, 5), (5, 3)])
    assert subset_oracle(g, "pyramid") == {frozenset(range(6))}
    res = find_pyramid(g)
    assert res.witness is not None and check_witness(g, res.witness)


def test_triangular_prism():
    g = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
    res = find_prism(g)
    assert res.witness is not None and check_witness(g, res.witness)


def test_k4_has_no_prism():
    g = Graph(4, [(a, b) for a, b in combinations(range(4), 2)])
    res = find_prism(g)
    assert res.witness is None and res.complete


def test_c6_has_no_theta_or_pyramid():
    g = Graph(6, [(i, (i + 1) % 6) for i in range(6)])
    assert find_theta(g).witness is None and find_theta(g).complete
    assert find_pyramid(g).witness is None


def test_k4_subdivision_contains_theta():
    # branch vertices 0..3, one subdivision vertex per edge
    edges = []
    nxt = 4
    for a, b in combinations(range(4), 2):
        edges += [(a, nxt), (nxt, b)]
        nxt += 1
    g = Graph(nxt, edges)
    res = find_theta(g)
    assert res.witness is not None and check_witness(g, res.witness)


def test_wheel_detectors(ttf24, ehf24):
    res = find_theta(ttf24.graph)
    assert res.witness is None and res.complete
    res = find_pyramid(ehf24.graph)
    assert res.witness is None and res.complete
    res = find_prism(ehf24.graph)
    assert res.witness is None and res.complete


def test_ehf_holes_all_odd_and_long(ehf24):
    scan = enumerate_holes(ehf24.graph)
    assert scan.complete
    assert scan.has_even_hole is False
    assert scan.min_hole_len >= ehf24.k


def test_ttf_min_hole_is_k(ttf25):
    scan = enumerate_holes(ttf25.graph)
    assert scan.complete and scan.min_hole_len == 5


def test_max_results_caps_storage_not_count():
    g = Graph(6, [(i, (i + 1) % 6) for i in range(6)] + [(0, 3)])
    full = enumerate_holes(g)
    capped = enumerate_holes(g, budget=Budget(max_results=1))
    assert capped.count == full.count == 2
    assert len(capped.holes) == 1 and capped.complete


# -- agreement with the subset oracle -------------------------------------------


@pytest.mark.parametrize("kind", ["hole", "theta", "pyramid", "prism"])
def test_detectors_agree_with_subset_oracle(kind):
    rng = random.Random(hash(kind) & 0xFFFF)
    finders = {
        "theta": find_theta,
        "pyramid": find_pyramid,
        "prism": find_prism,
    }
    for trial in range(14):
        n = rng.randint(4, 10)
        g = random_graph(rng, n, rng.choice([0.25, 0.4, 0.55]))
        expected = subset_oracle(g, kind)
        if kind == "hole":
            scan = enumerate_holes(g)
            got = {w.vertices for w in scan.holes}
            assert scan.complete
            assert got == expected, (g.edges(), kind)
            assert scan.count == len(expected)
        else:
            res = finders[kind](g)
            assert res.complete
            assert (res.witness is not None) == bool(expected), (g.edges(), kind)
            if res.witness is not None:
                assert res.witness.vertices in expected
                assert check_witness(g, res.witness)


def test_budget_makes_search_inconclusive():
    w = generate_ehf(2, 4)
    scan = enumerate_holes(w.graph, budget=Budget(max_nodes_expanded=50))
    assert not scan.complete
    assert scan.has_even_hole in (None, True)
    res = find_pyramid(w.graph, Budget(max_nodes_expanded=50))
    assert res.witness is None and not res.complete


def test_max_len_bounds_enumeration():
    g = Graph(7, [(i, (i + 1) % 7) for i in range(7)] + [(0, 3)])
    # holes: 0-1-2-3 (4) and 0-3-4-5-6 (5)
    full = enumerate_holes(g)
    assert full.count == 2 and full.min_hole_len == 4
    capped = enumerate_holes(g, max_len=4)
    assert capped.count == 1 and capped.min_hole_len == 4
    assert capped.has_even_hole is True
    g2 = Graph(7, [(i, (i + 1) % 7) for i in range(7)])
    capped2 = enumerate_holes(g2, max_len=5)
    assert capped2.count == 0 and capped2.has_even_hole is None


def test_witness_revalidation_rejects_fakes():
    g = Graph(6, [(i, (i + 1) % 6) for i in range(6)])
    fake = Witness("theta", frozenset(range(6)), {})
    assert not check_witness(g, fake)
    with pytest.raises(InputError):
        check_witness(g, Witness("nonsense", frozenset([0]), {}))


def _plant(host: Graph, pattern_edges, pattern_n) -> Graph:
    """Disjoint union: the pattern stays induced, so a witness must exist."""
    shift = host.n
    edges = host.edges() + [(a + shift, b + shift) for a, b in pattern_edges]
    return Graph(host.n + pattern_n, edges)


def _theta_edges(l1, l2, l3):
    edges, nxt = [], 2
    for length in (l1, l2, l3):
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return edges, nxt


def _pyramid_edges(p1, p2, p3):
    # 0 apex, 1..3 triangle
    edges, nxt = [(1, 2), (1, 3), (2, 3)], 4
    for i, length in enumerate((p1, p2, p3)):
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, i + 1))
    return edges, nxt


def _prism_edges(p1, p2, p3):
    edges, nxt = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)], 6
    for i, length in enumerate((p1, p2, p3)):
        prev = i
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, i + 3))
    return edges, nxt


def test_planted_patterns_are_found():
    rng = random.Random(99)
    for _ in range(10):
        host = random_graph(rng, rng.randint(0, 8), 0.3)
        le = [rng.randint(2, 3) for _ in range(3)]
        g = _plant(host, *_theta_edges(*le))
        res = find_theta(g)
        assert res.witness is not None and check_witness(g, res.witness)

        lengths = (rng.randint(1, 3), rng.randint(2, 3), rng.randint(2, 3))
        g = _plant(host, *_pyramid_edges(*lengths))
        res = find_pyramid(g)
        assert res.witness is not None and check_witness(g, res.witness)

        lengths = [rng.randint(1, 3) for _ in range(3)]
        g = _plant(host, *_prism_edges(*lengths))
        res = find_prism(g)
        assert res.witness is not None and check_witness(g, res.witness)

        hole_len = rng.randint(4, 7)
        g = _plant(host, [(i, (i + 1) % hole_len) for i in range(hole_len)], hole_len)
        scan = enumerate_holes(g)
        planted = frozenset(range(host.n, host.n + hole_len))
        assert planted in {w.vertices for w in scan.holes}


# -- pyramid witness in the 9-zone variant ---------------------------------------


def test_pyramid_witness_in_variant(pyr34):
    wit = pyramid_witness_in_variant(pyr34)
    assert wit.kind == "pyramid"
    assert check_witness(pyr34.graph, wit)
    apex = wit.structure["apex"]
    tri = wit.structure["triangle"]
    assert pyr34.vinfo[tri[0]].vtype == 2
    assert apex in pyr34.vinfo[tri[0]].ancestors


def test_pyramid_witness_preconditions(ehf34):
    with pytest.raises(InputError):
        pyramid_witness_in_variant(ehf34)  # standard variant
    with pytest.raises(InputError):
        pyramid_witness_in_variant(generate_ehf(2, 4, variant="pyramid"))  # l too small


def test_standard_variant_stays_pyramid_free_at_l3_sample(ehf34):
    # full exhaustive search on the l=3 wheel is out of desk scale; spot-check
    # the two-layer prefix exhaustively instead
    sub_vertices = [v for v in range(ehf34.graph.n) if ehf34.vinfo[v].layer <= 2]
    _, sub = ehf34.graph.induced(sub_vertices)
    res = find_pyramid(sub)
    assert res.witness is None and res.complete
