"""Exact, budgeted brute-force oracles for holes, thetas, pyramids and prisms.

Searches are exhaustive within a budget: a spent budget yields an
inconclusive result, never a false "absent".  Every returned witness
re-validates against the pattern definition independently of the search.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator, Optional

from .errors import InputError, IntegrityError
from .graph_core import Graph, _bits_to_list
from .wheel_model import EHF_PYRAMID, LayeredWheel


@dataclass(frozen=True)
class Budget:
    max_nodes_expanded: int = 200_000_000
    max_results: int = 10_000
    deadline: Optional[float] = None  # wall-clock seconds

    def meter(self) -> "_Meter":
        return _Meter(self)


class _Meter:
    __slots__ = ("limit", "nodes", "deadline", "exhausted")

    def __init__(self, budget: Budget):
        self.limit = budget.max_nodes_expanded
        self.nodes = 0
        self.deadline = (
            None if budget.deadline is None else time.monotonic() + budget.deadline
        )
        self.exhausted = False

    def spend(self) -> bool:
        if self.exhausted:
            return False
        self.nodes += 1
        if self.nodes > self.limit:
            self.exhausted = True
        elif self.deadline is not None and (self.nodes & 0xFFF) == 0:
            if time.monotonic() > self.deadline:
                self.exhausted = True
        return not self.exhausted


@dataclass(frozen=True, eq=False)
class Witness:
    kind: str
    vertices: frozenset[int]
    structure: dict


@dataclass(frozen=True)
class HoleScan:
    holes: tuple[Witness, ...]
    min_hole_len: Optional[int]
    has_even_hole: Optional[bool]
    complete: bool
    count: int
    nodes_expanded: int


@dataclass(frozen=True)
class SearchResult:
    witness: Optional[Witness]
    complete: bool
    nodes_expanded: int


# -- hole enumeration --------------------------------------------------------


def _canonical_cycle(cycle: tuple[int, ...]) -> tuple[int, ...]:
    """Minimum rotation, lexicographically smaller direction."""
    k = len(cycle)
    start = cycle.index(min(cycle))
    fwd = tuple(cycle[(start + i) % k] for i in range(k))
    bwd = tuple(cycle[(start - i) % k] for i in range(k))
    return min(fwd, bwd)


def enumerate_holes(
    g: Graph, max_len: Optional[int] = None, budget: Optional[Budget] = None
) -> HoleScan:
    """Enumerate chordless cycles of length >= 4 by canonical-start DFS.

    Each hole is generated exactly once: the DFS roots at the hole's minimum
    vertex and fixes the direction by comparing the root's two cycle
    neighbors.
    """
    budget = budget or Budget()
    meter = budget.meter()
    holes: list[Witness] = []
    count = 0
    min_len: Optional[int] = None
    even_found = False
    complete = True

    for s in range(g.n):
        if meter.exhausted:
            complete = False
            break
        if g.degree(s) < 2:
            continue
        above = -1 << (s + 1)
        adj_s = g.mask(s)
        path = [s]
        blocked_stack = [1 << s]
        frames = [[_bits_to_list(adj_s & above), 0]]
        while frames:
            cands, idx = frames[-1]
            if idx >= len(cands):
                frames.pop()
                if frames:
                    blocked_stack.pop()
                    path.pop()
                continue
            frames[-1][1] = idx + 1
            if not meter.spend():
                complete = False
                frames.clear()
                break
            v = cands[idx]
            vb = 1 << v
            t = len(path) - 1  # interior vertices so far
            if t >= 1 and adj_s & vb:
                # v closes a cycle through s; chords already excluded
                if t >= 2 and path[1] < v:
                    length = t + 2
                    if max_len is None or length <= max_len:
                        count += 1
                        if min_len is None or length < min_len:
                            min_len = length
                        if length % 2 == 0:
                            even_found = True
                        if len(holes) < budget.max_results:
                            cyc = _canonical_cycle(tuple(path) + (v,))
                            holes.append(
                                Witness("hole", frozenset(cyc), {"cycle": cyc})
                            )
                continue
            if max_len is not None and t + 3 > max_len:
                continue
            # the previous path end joins the interior; its neighborhood now
            # blocks chords -- except the root's, whose neighbors must stay
            # visible as cycle closers
            last = path[-1]
            new_blocked = blocked_stack[-1] | vb
            if t >= 1:
                new_blocked |= g.mask(last)
            path.append(v)
            blocked_stack.append(new_blocked)
            frames.append([_bits_to_list(g.mask(v) & above & ~new_blocked), 0])
        if meter.exhausted:
            complete = False
            break

    if even_found:
        has_even: Optional[bool] = True
    elif complete and max_len is None:
        has_even = False
    else:
        has_even = None
    return HoleScan(tuple(holes), min_len, has_even, complete, count, meter.nodes)


# -- constrained induced-path enumeration ------------------------------------


def _induced_paths(
    g: Graph, a: int, b: int, allowed: int, first_min: int, meter: _Meter
) -> Iterator[tuple[int, ...]]:
    """Induced a..b paths whose interior lies in `allowed`, with the first
    interior vertex >= first_min.  `allowed` must exclude a and b."""
    adj_b = g.mask(b)
    first = g.mask(a) & allowed & (-1 << first_min) if first_min else g.mask(a) & allowed
    base_blocked = (1 << a) | g.mask(a)
    stack: list[tuple[list[int], int, int, int]] = []
    for x in _bits_to_list(first):
        # path interior so far: [x]
        stack.append(([x], (1 << x) | base_blocked, 1 << x, x))
        while stack:
            interior, blocked, int_mask, last = stack.pop()
            if not meter.spend():
                return
            if adj_b & (1 << last) and (adj_b & int_mask) == (1 << last):
                yield (a, *interior, b)
            cands = g.mask(last) & allowed & ~blocked
            for v in _bits_to_list(cands):
                nb = blocked | g.mask(last) | (1 << v)
                stack.append((interior + [v], nb, int_mask | (1 << v), v))


def _neigh_mask(g: Graph, mask: int) -> int:
    out = 0
    for v in _bits_to_list(mask):
        out |= g.mask(v)
    return out


# -- vertex-disjoint path filter ---------------------------------------------


def _disjoint_paths_at_least(
    g: Graph, source_caps: dict[int, int], sink_caps: dict[int, int], need: int
) -> bool:
    """Max-flow check: at least `need` vertex-disjoint paths from sources to
    sinks (vertices outside sources/sinks have capacity 1)."""
    SRC, SNK = -1, -2
    cap: dict[tuple[int, int], int] = {}
    adj: dict[int, list[int]] = {SRC: [], SNK: []}

    def add(x, y, c):
        if (x, y) not in cap:
            cap[(x, y)] = 0
            cap[(y, x)] = 0
            adj.setdefault(x, []).append(y)
            adj.setdefault(y, []).append(x)
        cap[(x, y)] += c

    def vin(v):
        return 2 * v

    def vout(v):
        return 2 * v + 1

    for v in range(g.n):
        c = source_caps.get(v) or sink_caps.get(v) or 1
        add(vin(v), vout(v), c)
    for u, v in g.edges():
        add(vout(u), vin(v), 1)
        add(vout(v), vin(u), 1)
    for s, c in source_caps.items():
        add(SRC, vin(s), c)
    for t, c in sink_caps.items():
        add(vout(t), SNK, c)

    flow = 0
    while flow < need:
        parent = {SRC: SRC}
        q = deque([SRC])
        while q and SNK not in parent:
            x = q.popleft()
            for y in adj[x]:
                if y not in parent and cap[(x, y)] > 0:
                    parent[y] = x
                    q.append(y)
        if SNK not in parent:
            return False
        y = SNK
        while y != SRC:
            x = parent[y]
            cap[(x, y)] -= 1
            cap[(y, x)] += 1
            y = x
        flow += 1
    return True


# -- theta -------------------------------------------------------------------


def find_theta(g: Graph, budget: Optional[Budget] = None) -> SearchResult:
    """Exhaustive pruned search for two non-adjacent vertices joined by three
    internally disjoint induced paths with no cross edges."""
    budget = budget or Budget()
    meter = budget.meter()
    full = (1 << g.n) - 1
    for a in range(g.n):
        if g.degree(a) < 3:
            continue
        for b in range(a + 1, g.n):
            if meter.exhausted:
                return SearchResult(None, False, meter.nodes)
            if g.degree(b) < 3 or g.has_edge(a, b):
                continue
            if not _disjoint_paths_at_least(g, {a: 3}, {b: 3}, 3):
                continue
            allowed = full & ~(1 << a) & ~(1 << b)
            for p1 in _induced_paths(g, a, b, allowed, 0, meter):
                int1 = sum(1 << v for v in p1[1:-1])
                allowed2 = allowed & ~int1 & ~_neigh_mask(g, int1)
                for p2 in _induced_paths(g, a, b, allowed2, p1[1] + 1, meter):
                    int2 = sum(1 << v for v in p2[1:-1])
                    allowed3 = allowed2 & ~int2 & ~_neigh_mask(g, int2)
                    for p3 in _induced_paths(g, a, b, allowed3, p2[1] + 1, meter):
                        wit = Witness(
                            "theta",
                            frozenset(p1) | frozenset(p2) | frozenset(p3),
                            {"apexes": (a, b), "paths": (p1, p2, p3)},
                        )
                        return SearchResult(wit, True, meter.nodes)
            if meter.exhausted:
                return SearchResult(None, False, meter.nodes)
    return SearchResult(None, not meter.exhausted, meter.nodes)


# -- triangles, pyramids, prisms ----------------------------------------------


def _triangles(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    for u in range(g.n):
        for v in g.neighbors(u):
            if v <= u:
                continue
            common = g.mask(u) & g.mask(v) & (-1 << (v + 1))
            for w in _bits_to_list(common):
                out.append((u, v, w))
    return out


def _paths_to_corner(
    g: Graph, a: int, corner: int, others: tuple[int, ...], allowed: int, meter: _Meter
) -> Iterator[tuple[int, ...]]:
    """Paths a..corner for a 3PC: either the direct edge (forced when present)
    or an induced path whose interior avoids the other corners' neighborhoods."""
    if g.has_edge(a, corner):
        yield (a, corner)
        return
    mask = allowed
    for o in others:
        mask &= ~g.mask(o) & ~(1 << o)
    yield from _induced_paths(g, a, corner, mask, 0, meter)


def find_pyramid(g: Graph, budget: Optional[Budget] = None) -> SearchResult:
    """Exhaustive pruned search anchored on (triangle, apex) pairs."""
    budget = budget or Budget()
    meter = budget.meter()
    full = (1 << g.n) - 1
    tris = _triangles(g)
    for tri in tris:
        tmask = sum(1 << x for x in tri)
        for a in range(g.n):
            if meter.exhausted:
                return SearchResult(None, False, meter.nodes)
            if (1 << a) & tmask or g.degree(a) < 3:
                continue
            direct = sum(1 for x in tri if g.has_edge(a, x))
            if direct >= 2:
                continue  # at most one path may have length one
            if not _disjoint_paths_at_least(g, {a: 3}, {x: 1 for x in tri}, 3):
                continue
            base = full & ~tmask & ~(1 << a)
            wit = _grow_pyramid(g, tri, a, base, meter)
            if wit is not None:
                return SearchResult(wit, True, meter.nodes)
            if meter.exhausted:
                return SearchResult(None, False, meter.nodes)
    return SearchResult(None, not meter.exhausted, meter.nodes)


def _grow_pyramid(g, tri, a, base, meter) -> Optional[Witness]:
    b1, b2, b3 = tri

    def rec(i, allowed, acc):
        corner = tri[i]
        others = tuple(x for x in tri if x != corner)
        for p in _paths_to_corner(g, a, corner, others, allowed, meter):
            interior = sum(1 << v for v in p[1:-1])
            if i == 2:
                return acc + [p]
            nxt = allowed & ~interior & ~_neigh_mask(g, interior)
            got = rec(i + 1, nxt, acc + [p])
            if got is not None:
                return got
            if meter.exhausted:
                return None
        return None

    paths = rec(0, base, [])
    if paths is None:
        return None
    verts = frozenset(v for p in paths for v in p)
    return Witness(
        "pyramid", verts, {"apex": a, "triangle": tri, "paths": tuple(paths)}
    )


def find_prism(g: Graph, budget: Optional[Budget] = None) -> SearchResult:
    """Exhaustive pruned search over pairs of vertex-disjoint triangles."""
    budget = budget or Budget()
    meter = budget.meter()
    full = (1 << g.n) - 1
    tris = _triangles(g)
    for t1, t2 in combinations(tris, 2):
        if meter.exhausted:
            return SearchResult(None, False, meter.nodes)
        if set(t1) & set(t2):
            continue
        if not _disjoint_paths_at_least(
            g, {x: 1 for x in t1}, {x: 1 for x in t2}, 3
        ):
            continue
        for perm in permutations(t2):
            if any(
                g.has_edge(t1[i], perm[j])
                for i in range(3)
                for j in range(3)
                if i != j
            ):
                continue
            base = full & ~sum(1 << x for x in t1) & ~sum(1 << x for x in perm)
            wit = _grow_prism(g, t1, perm, base, meter)
            if wit is not None:
                return SearchResult(wit, True, meter.nodes)
            if meter.exhausted:
                return SearchResult(None, False, meter.nodes)
    return SearchResult(None, not meter.exhausted, meter.nodes)


def _grow_prism(g, t1, t2, base, meter) -> Optional[Witness]:
    def rec(i, allowed, acc):
        a_i, b_i = t1[i], t2[i]
        others = tuple(x for x in t1 if x != a_i) + tuple(x for x in t2 if x != b_i)
        if g.has_edge(a_i, b_i):
            candidates: Iterator[tuple[int, ...]] = iter([(a_i, b_i)])
        else:
            mask = allowed
            for o in others:
                mask &= ~g.mask(o) & ~(1 << o)
            candidates = _induced_paths_from(g, a_i, b_i, mask, meter)
        for p in candidates:
            interior = sum(1 << v for v in p[1:-1])
            if i == 2:
                return acc + [p]
            nxt = allowed & ~interior & ~_neigh_mask(g, interior)
            got = rec(i + 1, nxt, acc + [p])
            if got is not None:
                return got
            if meter.exhausted:
                return None
        return None

    paths = rec(0, base, [])
    if paths is None:
        return None
    verts = frozenset(v for p in paths for v in p)
    return Witness(
        "prism", verts, {"triangles": (t1, t2), "paths": tuple(paths)}
    )


def _induced_paths_from(g, a, b, allowed, meter):
    yield from _induced_paths(g, a, b, allowed, 0, meter)


# -- witness re-validation ----------------------------------------------------


def _path_components(h: Graph, removed: set[int]):
    """Connected components of h minus `removed`; each must induce a path.
    Returns a list of vertex lists or None if some component is not a path."""
    left = [v for v in range(h.n) if v not in removed]
    seen = set(removed)
    comps = []
    for v in left:
        if v in seen:
            continue
        comp = []
        q = deque([v])
        seen.add(v)
        while q:
            x = q.popleft()
            comp.append(x)
            for y in h.neighbors(x):
                if y not in seen and y not in removed:
                    seen.add(y)
                    q.append(y)
        degs = [sum(1 for y in h.neighbors(x) if x != y and y in comp) for x in comp]
        if any(d > 2 for d in degs) or sum(degs) != 2 * (len(comp) - 1):
            return None
        comps.append(comp)
    return comps


def is_hole_graph(h: Graph) -> bool:
    if h.n < 4 or h.m != h.n:
        return False
    if any(h.degree(v) != 2 for v in range(h.n)):
        return False
    return len(_path_components(h, {0}) or []) == 1 if h.n > 1 else False


def is_theta_graph(h: Graph) -> bool:
    deg3 = [v for v in range(h.n) if h.degree(v) == 3]
    if len(deg3) != 2 or any(
        h.degree(v) != 2 for v in range(h.n) if v not in deg3
    ):
        return False
    a, b = deg3
    if h.has_edge(a, b):
        return False
    comps = _path_components(h, {a, b})
    if comps is None or len(comps) != 3:
        return False
    for comp in comps:
        if sum(1 for x in comp if h.has_edge(a, x)) != 1:
            return False
        if sum(1 for x in comp if h.has_edge(b, x)) != 1:
            return False
    return True


def is_pyramid_graph(h: Graph) -> bool:
    tris = _triangles(h)
    if len(tris) != 1:
        return False
    tri = tris[0]
    deg3 = [v for v in range(h.n) if h.degree(v) == 3]
    apexes = [v for v in deg3 if v not in tri]
    if len(apexes) != 1 or sorted(deg3) != sorted(list(tri) + apexes):
        return False
    if any(h.degree(v) != 2 for v in range(h.n) if v not in deg3):
        return False
    a = apexes[0]
    direct = [x for x in tri if h.has_edge(a, x)]
    if len(direct) > 1:
        return False
    comps = _path_components(h, set(tri) | {a})
    if comps is None or len(comps) != 3 - len(direct):
        return False
    reached = set(direct)
    for comp in comps:
        if sum(1 for x in comp if h.has_edge(a, x)) != 1:
            return False
        ends = [x for tv in tri for x in comp if h.has_edge(tv, x)]
        touching = {tv for tv in tri for x in comp if h.has_edge(tv, x)}
        if len(ends) != 1 or len(touching) != 1:
            return False
        tv = touching.pop()
        if tv in reached:
            return False
        reached.add(tv)
    return reached == set(tri)


def is_prism_graph(h: Graph) -> bool:
    tris = _triangles(h)
    if len(tris) != 2:
        return False
    t1, t2 = tris
    if set(t1) & set(t2):
        return False
    if any(h.degree(v) != 3 for v in t1 + t2):
        return False
    if any(h.degree(v) != 2 for v in range(h.n) if v not in t1 + t2):
        return False
    direct = [
        (x, y) for x in t1 for y in t2 if h.has_edge(x, y)
    ]
    comps = _path_components(h, set(t1) | set(t2))
    if comps is None or len(comps) != 3 - len(direct):
        return False
    used1 = {x for x, _ in direct}
    used2 = {y for _, y in direct}
    if len(used1) != len(direct) or len(used2) != len(direct):
        return False
    for comp in comps:
        a_att = {x for x in t1 for c in comp if h.has_edge(x, c)}
        b_att = {y for y in t2 for c in comp if h.has_edge(y, c)}
        a_cnt = sum(1 for x in t1 for c in comp if h.has_edge(x, c))
        b_cnt = sum(1 for y in t2 for c in comp if h.has_edge(y, c))
        if len(a_att) != 1 or len(b_att) != 1 or a_cnt != 1 or b_cnt != 1:
            return False
        x, y = a_att.pop(), b_att.pop()
        if x in used1 or y in used2:
            return False
        used1.add(x)
        used2.add(y)
    return used1 == set(t1) and used2 == set(t2)


_CHECKS = {
    "hole": is_hole_graph,
    "theta": is_theta_graph,
    "pyramid": is_pyramid_graph,
    "prism": is_prism_graph,
}


def check_witness(g: Graph, w: Witness) -> bool:
    """Re-validate a witness against its pattern definition from scratch."""
    if w.kind not in _CHECKS:
        raise InputError(f"unknown witness kind {w.kind!r}")
    _, sub = g.induced(w.vertices)
    return _CHECKS[w.kind](sub)


# -- the explicit pyramid inside the 9-zone variant ----------------------------


def pyramid_witness_in_variant(w: LayeredWheel) -> Witness:
    """Construct the pyramid that the 9-zone variant is designed to contain:
    a type-2 vertex u with split-layer ancestors, the ancestor-pair zone next
    to u's box, and the escape toward a neighbor box.  The result is
    re-validated against the pyramid definition before being returned."""
    if w.flavor != EHF_PYRAMID:
        raise InputError("pyramid witness needs the pyramid variant")
    if w.l < 3:
        raise InputError(
            "pyramid witness needs l >= 3 (a type-2 vertex below the last "
            "layer with split-layer ancestors)"
        )
    layer = w.layers[w.l - 1]
    for u in layer:
        info = w.vinfo[u]
        if info.vtype != 2 or info.zone is None:
            continue
        v, x = info.ancestors
        if w.vinfo[v].layer == w.vinfo[x].layer:
            continue
        zone = w.zones[info.zone]
        idx = zone.marks.index(u)
        if idx + 1 < len(zone.marks):
            ustar = zone.marks[idx + 1]
            to_right = True
        elif idx > 0:
            ustar = zone.marks[idx - 1]
            to_right = False
        else:
            continue
        return _variant_pyramid(w, u, v, ustar, to_right)
    raise InputError(
        "no type-2 vertex with split-layer ancestors in layer l-1"
    )


def _variant_pyramid(w: LayeredWheel, u, v, ustar, to_right) -> Witness:
    pos_u = w.vinfo[u].pos
    i = w.vinfo[u].layer
    layer = w.layers[i]
    last = w.layers[w.l]
    anc = w.vinfo[u].ancestors
    box = w.box(u)
    pair_zones = sorted(
        (
            z
            for z in w.zones
            if z.span.layer == w.l
            and box.lo <= z.span.lo
            and z.span.hi <= box.hi
            and z.owners == anc
        ),
        key=lambda z: z.span.lo,
    )
    if len(pair_zones) != 2:
        raise IntegrityError(
            f"box of {u} should hold two ancestor-pair zones, found {len(pair_zones)}"
        )
    if to_right:
        nb = layer[pos_u + 1]
        s = pair_zones[1].marks[-1]
        shared = [z for z in w.zones if z.owners == (u, nb)]
        if len(shared) != 1:
            raise IntegrityError(f"missing shared zone for ({u},{nb})")
        t = shared[0].marks[0]
        escape = [last[p] for p in range(w.vinfo[s].pos, w.vinfo[t].pos + 1)]
        walk = [layer[p] for p in range(w.vinfo[ustar].pos - 1, pos_u, -1)]
    else:
        nb = layer[pos_u - 1]
        s = pair_zones[0].marks[0]
        shared = [z for z in w.zones if z.owners == (nb, u)]
        if len(shared) != 1:
            raise IntegrityError(f"missing shared zone for ({nb},{u})")
        t = shared[0].marks[-1]
        escape = [last[p] for p in range(w.vinfo[s].pos, w.vinfo[t].pos - 1, -1)]
        walk = [layer[p] for p in range(w.vinfo[ustar].pos + 1, pos_u)]
    paths = (
        (v, u),
        (v, *escape),
        (v, ustar, *walk),
    )
    wit = Witness(
        "pyramid",
        frozenset(x for p in paths for x in p),
        {"apex": v, "triangle": (u, t, nb), "paths": paths},
    )
    if not check_witness(w.graph, wit):
        raise IntegrityError("constructed pyramid failed re-validation")
    return wit
