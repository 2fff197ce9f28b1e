"""Width lab: minor models, interval/path decompositions, rank machinery."""

from __future__ import annotations

import random

import pytest

from conftest import drop_edge
from layered_wheels import (
    CubicTree,
    Graph,
    InputError,
    IntegrityError,
    RankDecomposition,
    balanced_decomposition,
    caterpillar_decomposition,
    cutrank,
    find_balanced_edge,
    generate_ttf,
    interval_model,
    minor_certificate,
    path_decomposition,
    random_decomposition,
    rank_decomposition_width,
    rankwidth_audit,
    separated_layer_witness,
    validate_path_decomposition,
)

# -- independent oracles ---------------------------------------------------------


def all_cubic_trees(num_leaves):
    """Every cubic tree on labeled leaves 0..num_leaves-1, by leaf insertion.

    Yields (edges, leaf_map).  Tree node ids: leaves are 0..num_leaves-1,
    internal nodes count upward from num_leaves.
    """
    if num_leaves < 2:
        return
    base = [(0, 1)]
    states = [(base, 2)]
    for leaf in range(2, num_leaves):
        nxt_states = []
        for edges, nxt in states:
            for i in range(len(edges)):
                a, b = edges[i]
                mid = num_leaves + (nxt - 2)
                new_edges = edges[:i] + edges[i + 1 :] + [(a, mid), (mid, b), (mid, leaf)]
                nxt_states.append((new_edges, nxt + 1))
        states = nxt_states
    for edges, _ in states:
        yield edges


def dense_gf2_rank(rows):
    """Row reduction over GF(2) on lists of 0/1 values."""
    rows = [list(r) for r in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                rows[i] = [x ^ y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def oracle_cutrank(g: Graph, xs):
    xs = sorted(set(xs))
    ys = [v for v in range(g.n) if v not in xs]
    rows = [[1 if g.has_edge(u, v) else 0 for v in ys] for u in xs]
    return dense_gf2_rank(rows)


def oracle_rankwidth(g: Graph):
    """Minimum over every cubic tree of the maximum edge cutrank, evaluated
    with the dense eliminator (independent of the package kernel)."""
    if g.n <= 1:
        return 0
    best = None
    for edges in all_cubic_trees(g.n):
        adj = {}
        for a, b in edges:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        width = 0
        for a, b in edges:
            seen = {a, b}
            stack = [b]
            side = []
            while stack:
                x = stack.pop()
                if x < g.n:
                    side.append(x)
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            width = max(width, oracle_cutrank(g, side))
        best = width if best is None else min(best, width)
    return best


def random_graph(rng, n, p):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


# -- minor certificates -----------------------------------------------------------


def test_minor_certificate_examples(ttf24):
    cert = minor_certificate(ttf24)
    assert cert.clique_order == 3 and cert.treewidth_lower_bound == 2


def test_minor_certificate_l0():
    cert = minor_certificate(generate_ttf(0, 4))
    assert cert.clique_order == 1 and cert.treewidth_lower_bound == 0


def test_minor_certificate_tamper(ttf24):
    w = ttf24
    for v in list(w.graph.neighbors(0)):
        if w.vinfo[v].layer == 2:
            w = drop_edge(w, 0, v)
    with pytest.raises(IntegrityError, match="0 and 2"):
        minor_certificate(w)


# -- interval model and path decomposition -----------------------------------------


def test_interval_model_basics(ttf24):
    spans = interval_model(ttf24)
    last = ttf24.layers[2]
    right_end = last[-1]
    assert spans[right_end].size == 1
    assert spans[last[0]].size == 2
    assert (spans[0].lo, spans[0].hi) == (0, len(last) - 1)


def test_path_decomposition_bounds(ttf24, ehf24, ehf34):
    for w in (ttf24, ehf24, ehf34):
        pd, width = path_decomposition(w)
        assert w.l <= width <= 2 * w.l
        assert validate_path_decomposition(w.graph, pd) == []
        assert max(len(b) for b in pd.bags) <= 2 * w.l + 1


def test_path_decomposition_l1_and_l0():
    pd, width = path_decomposition(generate_ttf(1, 4))
    assert width <= 2
    pd, width = path_decomposition(generate_ttf(0, 4))
    assert width == 0 and len(pd.bags) == 1


def test_validate_path_decomposition_catches_errors():
    g = Graph(3, [(0, 1), (1, 2)])
    from layered_wheels import PathDecomposition

    bad = PathDecomposition((frozenset({0, 1}), frozenset({2}), frozenset({1})))
    problems = validate_path_decomposition(g, bad)
    assert any(p.startswith("T3") for p in problems)
    bad2 = PathDecomposition((frozenset({0}), frozenset({1}), frozenset({2})))
    assert any(p.startswith("T2") for p in problems + validate_path_decomposition(g, bad2))


# -- rank decompositions ------------------------------------------------------------


def test_rank_width_single_edge():
    g = Graph(2, [(0, 1)])
    rd = caterpillar_decomposition(g)
    assert rank_decomposition_width(g, rd) == 1


def test_rank_width_c4_examples():
    c4 = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    cat = caterpillar_decomposition(c4)  # leaf order a,b,c,d
    assert rank_decomposition_width(c4, cat) == 2
    best = min(
        rank_decomposition_width(c4, balanced_decomposition(c4, order))
        for order in ([0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2])
    )
    assert best == 1
    assert oracle_rankwidth(c4) == 1


def test_rank_width_matches_oracle_small():
    rng = random.Random(17)
    for _ in range(12):
        n = rng.randint(2, 6)
        g = random_graph(rng, n, rng.choice([0.3, 0.5, 0.8]))
        got = None
        for edges in all_cubic_trees(n):
            nodes = max(max(e) for e in edges) + 1
            rd = RankDecomposition(CubicTree(nodes, edges), {v: v for v in range(n)})
            width = rank_decomposition_width(g, rd)
            got = width if got is None else min(got, width)
        assert got == oracle_rankwidth(g)


def test_rank_width_rejects_bad_decomposition():
    g = Graph(3, [(0, 1), (1, 2)])
    tree = CubicTree(2, [(0, 1)])
    with pytest.raises(InputError):
        rank_decomposition_width(g, RankDecomposition(tree, {0: 0, 1: 1}))


def test_rank_width_defined_zero_for_tiny_graphs():
    dummy = RankDecomposition(CubicTree(2, [(0, 1)]), {0: 0, 1: 1})
    assert rank_decomposition_width(Graph(1, []), dummy) == 0
    assert rank_decomposition_width(Graph(0, []), dummy) == 0


# -- balanced edges -------------------------------------------------------------------


def test_balanced_edge_two_node_tree():
    t = CubicTree(2, [(0, 1)])
    assert find_balanced_edge(t) == (0, 1)


def test_balanced_edge_star():
    t = CubicTree(4, [(3, 0), (3, 1), (3, 2)])
    e = find_balanced_edge(t)
    sides = t.leaf_sides()
    a = len(sides[e])
    assert 3 * a >= 3 and 3 * (3 - a) >= 3


def test_balanced_edge_random_trees():
    rng = random.Random(23)
    g = Graph(200, [])
    for _ in range(40):
        num = rng.randint(2, 200)
        sub = Graph(num, [])
        rd = random_decomposition(sub, rng)
        e = find_balanced_edge(rd.tree)
        total = len(rd.tree.leaves)
        a = len(rd.tree.leaf_sides()[e])
        assert 3 * a >= total and 3 * (total - a) >= total


def test_balanced_edge_rejects_non_cubic():
    with pytest.raises(InputError):
        CubicTree(5, [(0, 1), (1, 2), (1, 3), (1, 4)])


# -- separated layers -------------------------------------------------------------------


def test_separated_layer_witness_trivial(ttf24):
    slw = separated_layer_witness(ttf24, range(ttf24.graph.n))
    assert slw.layers == () and slw.rank == 0


def test_separated_layer_witness_left_half(ttf24):
    w = ttf24
    half = [
        v
        for v in range(w.graph.n)
        if w.pos_of(v) < len(w.layers[w.layer_of(v)]) / 2
    ]
    slw = separated_layer_witness(w, half)
    assert slw.layers == (1, 2)
    assert slw.rank == 2
    assert slw.rank <= cutrank(w.graph, half)


def test_separated_layer_witness_random_bipartitions(ttf24, ehf24):
    rng = random.Random(31)
    for w in (ttf24, ehf24):
        for _ in range(20):
            xs = [v for v in range(w.graph.n) if rng.random() < 0.5]
            slw = separated_layer_witness(w, xs)
            assert slw.rank == len(slw.layers)
            assert slw.rank <= cutrank(w.graph, xs)
            assert slw.rank <= oracle_cutrank(w.graph, xs)


# -- the audit pipeline --------------------------------------------------------------------


def test_rankwidth_audit_on_uniform_wheel(ttf_uniform24):
    w = ttf_uniform24
    rng = random.Random(9)
    rds = [
        caterpillar_decomposition(w.graph),
        balanced_decomposition(w.graph),
        random_decomposition(w.graph, rng),
    ]
    for rd in rds:
        audit = rankwidth_audit(w, rd)
        assert audit.applicable_steps_pass, audit.summary()
        assert audit.certified_bound <= audit.width
        assert audit.step("separated-layers").passed


def test_rankwidth_audit_marks_inapplicable_on_non_uniform(ttf24):
    audit = rankwidth_audit(ttf24, caterpillar_decomposition(ttf24.graph))
    assert not audit.step("long-runs").applicable
    assert not audit.step("identity-submatrix").applicable
    assert audit.step("separated-layers").passed
    assert audit.certified_bound <= audit.width
