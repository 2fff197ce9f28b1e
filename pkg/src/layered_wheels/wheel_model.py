"""Layered-wheel data model: layers, types, ancestors, boxes, zones, bridges,
domains, scopes, plus the axiom and uniformity auditors.

A wheel is immutable after generation; every query here is a pure function of
the stored structure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

from .errors import InputError, ParseError, UnsupportedPolicyError
from .graph_core import Graph

TTF = "ttf"
EHF = "ehf"
EHF_PYRAMID = "ehf_pyramid_variant"
FLAVORS = (TTF, EHF, EHF_PYRAMID)


@dataclass(frozen=True)
class LengthPolicy:
    """Gap-length policy: minimal, special (odd bridges), or uniform(m)."""

    mode: str
    m: Optional[int] = None

    def __post_init__(self):
        if self.mode not in ("minimal", "special", "uniform"):
            raise InputError(f"unknown policy mode {self.mode!r}")
        if self.mode == "uniform" and (self.m is None or self.m < 1):
            raise InputError("uniform policy needs a positive m")
        if self.mode != "uniform" and self.m is not None:
            raise InputError("m is only meaningful for the uniform policy")

    @staticmethod
    def minimal() -> "LengthPolicy":
        return LengthPolicy("minimal")

    @staticmethod
    def special() -> "LengthPolicy":
        return LengthPolicy("special")

    @staticmethod
    def uniform(m: int) -> "LengthPolicy":
        return LengthPolicy("uniform", m)

    @property
    def wants_special(self) -> bool:
        # every m-uniform wheel is special
        return self.mode in ("special", "uniform")

    def to_json(self) -> dict:
        d = {"mode": self.mode}
        if self.mode == "uniform":
            d["m"] = self.m
        return d

    @staticmethod
    def from_json(d: dict) -> "LengthPolicy":
        return LengthPolicy(d["mode"], d.get("m"))


@dataclass(frozen=True)
class Span:
    """Contiguous index range [lo, hi] (inclusive) into one layer sequence."""

    layer: int
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise InputError(f"empty span {self.lo}..{self.hi}")

    @property
    def length(self) -> int:
        """Path length in edges."""
        return self.hi - self.lo

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def contains(self, pos: int) -> bool:
        return self.lo <= pos <= self.hi


@dataclass(frozen=True)
class Zone:
    """Subpath of a layer holding 4 (E) or 3 (O) marked neighbors of its owners."""

    kind: str
    owners: tuple[int, ...]
    span: Span
    marks: tuple[int, ...]


@dataclass(frozen=True)
class VertexInfo:
    layer: int
    pos: int
    vtype: int
    ancestors: tuple[int, ...]
    zone: Optional[int] = None


@dataclass(frozen=True)
class Violation:
    axiom: str
    message: str
    vertices: tuple[int, ...] = ()


@dataclass
class AuditReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, axiom: str, message: str, vertices: Iterable[int] = ()):
        self.violations.append(Violation(axiom, message, tuple(vertices)))

    def axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def summary(self) -> str:
        if self.ok:
            return "clean"
        lines = [f"{v.axiom}: {v.message}" for v in self.violations]
        return "\n".join(lines)


@dataclass(frozen=True)
class BridgeInfo:
    span: Span
    middle_edge: Optional[tuple[int, int]]


@dataclass(frozen=True)
class UniformityReport:
    special: bool
    uniform_m: Optional[int]
    neighbor_growth_ok: bool


class LayeredWheel:
    """A generated layered wheel together with its layer/zone metadata."""

    def __init__(
        self,
        graph: Graph,
        flavor: str,
        l: int,
        k: int,
        layers: Iterable[Iterable[int]],
        vinfo: Iterable[VertexInfo],
        zones: Iterable[Zone],
        policy: LengthPolicy,
    ):
        if flavor not in FLAVORS:
            raise InputError(f"unknown flavor {flavor!r}")
        self.graph = graph
        self.flavor = flavor
        self.l = l
        self.k = k
        self.layers = tuple(tuple(layer) for layer in layers)
        self.vinfo = tuple(vinfo)
        self.zones = tuple(zones)
        self.policy = policy
        if len(self.layers) != l + 1:
            raise InputError("layer count does not match l")
        if len(self.vinfo) != graph.n:
            raise InputError("vertex info does not cover the graph")
        self._box_cache: dict[int, Span] = {}

    # -- basic lookups ----------------------------------------------------

    @property
    def n(self) -> int:
        return self.graph.n

    def layer_of(self, v: int) -> int:
        return self.vinfo[v].layer

    def pos_of(self, v: int) -> int:
        return self.vinfo[v].pos

    def vertex_at(self, layer: int, pos: int) -> int:
        return self.layers[layer][pos]

    def is_end(self, v: int) -> bool:
        info = self.vinfo[v]
        return info.pos == 0 or info.pos == len(self.layers[info.layer]) - 1

    def neighbors_in_layer(self, v: int, j: int) -> list[int]:
        return [w for w in self.graph.neighbors(v) if self.vinfo[w].layer == j]

    @cached_property
    def _zone_by_owner_pair(self) -> dict[tuple[int, int], int]:
        """Bridge zones only: an ancestor pair (v,w) also owns zones deep in
        the boxes of its type-2 descendants, which must not shadow the shared
        zone one layer below the pair."""
        table = {}
        for i, z in enumerate(self.zones):
            if len(z.owners) != 2 or z.kind != "E":
                continue
            a, b = z.owners
            if (
                self.vinfo[a].layer == self.vinfo[b].layer
                and self.vinfo[b].pos == self.vinfo[a].pos + 1
                and z.span.layer == self.vinfo[a].layer + 1
            ):
                table[z.owners] = i
        return table

    def summary(self) -> dict:
        return {
            "flavor": self.flavor,
            "l": self.l,
            "k": self.k,
            "policy": self.policy.to_json(),
            "vertices": self.graph.n,
            "edges": self.graph.m,
            "layer_sizes": [len(layer) for layer in self.layers],
        }

    # -- boxes and bridges ------------------------------------------------

    def box(self, u: int) -> Span:
        """Span of Box_u on the next layer (min..max neighbor position)."""
        cached = self._box_cache.get(u)
        if cached is not None:
            return cached
        i = self.layer_of(u)
        if i >= self.l:
            raise InputError(f"vertex {u} is in the last layer; it has no box")
        positions = [self.pos_of(w) for w in self.neighbors_in_layer(u, i + 1)]
        if not positions:
            raise InputError(f"vertex {u} has no neighbors in layer {i + 1}")
        span = Span(i + 1, min(positions), max(positions))
        self._box_cache[u] = span
        return span

    def bridge(self, u: int, v: int) -> BridgeInfo:
        """The uv-bridge below layer(u): inter-box path (ttf) or shared zone (ehf)."""
        i = self.layer_of(u)
        if self.layer_of(v) != i:
            raise InputError("bridge endpoints must share a layer")
        if self.pos_of(v) != self.pos_of(u) + 1 or not self.graph.has_edge(u, v):
            raise InputError("bridge endpoints must be consecutive left-to-right")
        if not (1 <= i < self.l):
            raise InputError(f"no bridge below layer {i}")
        if self.flavor == TTF:
            a = self.box(u).hi
            b = self.box(v).lo
            span = Span(i + 1, a + 1, b - 1)
        else:
            zid = self._zone_by_owner_pair.get((u, v))
            if zid is None:
                raise InputError(f"no shared zone for pair ({u},{v})")
            span = self.zones[zid].span
        middle = None
        if span.length % 2 == 1:
            p = span.lo + span.length // 2
            middle = (self.vertex_at(i + 1, p), self.vertex_at(i + 1, p + 1))
        return BridgeInfo(span, middle)

    def iter_bridges(self):
        """All bridges, as ((u, v), BridgeInfo), in layer/position order."""
        for i in range(1, self.l):
            layer = self.layers[i]
            for p in range(len(layer) - 1):
                u, v = layer[p], layer[p + 1]
                yield (u, v), self.bridge(u, v)

    @cached_property
    def _special(self) -> bool:
        return all(info.middle_edge is not None for _, info in self.iter_bridges())

    def is_special(self) -> bool:
        return self._special

    # -- domains ----------------------------------------------------------

    def _domain_step_span(self, v: int) -> Span:
        i = self.layer_of(v)
        if i == 0:
            return Span(1, 0, len(self.layers[1]) - 1)
        pos = self.pos_of(v)
        layer = self.layers[i]
        if pos > 0:
            left = self.bridge(layer[pos - 1], v)
            if left.middle_edge is None:
                raise UnsupportedPolicyError("domain needs middle edges (special wheel)")
            lo = self.pos_of(left.middle_edge[1])
        else:
            lo = self.box(v).lo
        if pos < len(layer) - 1:
            right = self.bridge(v, layer[pos + 1])
            if right.middle_edge is None:
                raise UnsupportedPolicyError("domain needs middle edges (special wheel)")
            hi = self.pos_of(right.middle_edge[0])
        else:
            hi = self.box(v).hi
        return Span(i + 1, lo, hi)

    def domain_span(self, v: int, d: int) -> Span:
        """Contiguous span of the depth-d domain of v on layer layer(v)+d."""
        i = self.layer_of(v)
        if d < 0 or i + d > self.l:
            raise InputError(f"depth {d} out of range for layer {i}")
        if d == 0:
            return Span(i, self.pos_of(v), self.pos_of(v))
        if not self.is_special():
            raise UnsupportedPolicyError(
                "domains are defined via middle edges; wheel is not special"
            )
        span = self._domain_step_span(v)
        for j in range(i + 1, i + d):
            lo = self._domain_step_span(self.vertex_at(j, span.lo)).lo
            hi = self._domain_step_span(self.vertex_at(j, span.hi)).hi
            span = Span(j + 1, lo, hi)
        return span

    def domain(self, v: int, d: int) -> tuple[int, ...]:
        span = self.domain_span(v, d)
        return tuple(self.layers[span.layer][span.lo : span.hi + 1])

    # -- scopes -----------------------------------------------------------

    def _scope_step_span(self, v: int) -> Span:
        i = self.layer_of(v)
        if i == 0:
            return Span(1, 0, len(self.layers[1]) - 1)
        box = self.box(v)
        if self.flavor != TTF:
            return box
        pos = self.pos_of(v)
        layer = self.layers[i]
        lo = self.bridge(layer[pos - 1], v).span.lo if pos > 0 else box.lo
        hi = self.bridge(v, layer[pos + 1]).span.hi if pos < len(layer) - 1 else box.hi
        return Span(i + 1, lo, hi)

    def scope(self, v: int, d: int) -> Span:
        """Contiguous span of the depth-d scope of v on layer layer(v)+d."""
        i = self.layer_of(v)
        if d < 0 or i + d > self.l:
            raise InputError(f"depth {d} out of range for layer {i}")
        if d == 0:
            return Span(i, self.pos_of(v), self.pos_of(v))
        span = self._scope_step_span(v)
        for j in range(i + 1, i + d):
            lo = self._scope_step_span(self.vertex_at(j, span.lo)).lo
            hi = self._scope_step_span(self.vertex_at(j, span.hi)).hi
            span = Span(j + 1, lo, hi)
        return span

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "flavor": self.flavor,
            "l": self.l,
            "k": self.k,
            "policy": self.policy.to_json(),
            "layers": [list(layer) for layer in self.layers],
            "vertices": [
                {
                    "id": v,
                    "layer": info.layer,
                    "pos": info.pos,
                    "type": info.vtype,
                    "ancestors": list(info.ancestors),
                }
                for v, info in enumerate(self.vinfo)
            ],
            "zones": [
                {
                    "kind": z.kind,
                    "owners": list(z.owners),
                    "span": {"layer": z.span.layer, "lo": z.span.lo, "hi": z.span.hi},
                    "marks": list(z.marks),
                }
                for z in self.zones
            ],
            "edges": [[u, v] for u, v in self.graph.edges()],
        }

    def canonical_json(self) -> bytes:
        return json.dumps(self.to_json_dict(), separators=(",", ":")).encode("ascii")

    @staticmethod
    def from_json_dict(d: dict) -> "LayeredWheel":
        try:
            flavor = d["flavor"]
            l = int(d["l"])
            k = int(d["k"])
            policy = LengthPolicy.from_json(d["policy"])
            layers = [list(map(int, layer)) for layer in d["layers"]]
            vertices = d["vertices"]
            zone_dicts = d["zones"]
            edges = [(int(u), int(v)) for u, v in d["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed wheel JSON: {exc}") from exc
        n = sum(len(layer) for layer in layers)
        if sorted(v for layer in layers for v in layer) != list(range(n)):
            raise ParseError("layers do not partition vertex ids 0..n-1")
        graph = Graph(n, edges)
        zones = []
        for zd in zone_dicts:
            sp = zd["span"]
            zones.append(
                Zone(
                    zd["kind"],
                    tuple(int(o) for o in zd["owners"]),
                    Span(int(sp["layer"]), int(sp["lo"]), int(sp["hi"])),
                    tuple(int(m) for m in zd["marks"]),
                )
            )
        # vertex zone membership is derived from the zone spans
        zone_at: dict[tuple[int, int], int] = {}
        for zi, z in enumerate(zones):
            for p in range(z.span.lo, z.span.hi + 1):
                zone_at[(z.span.layer, p)] = zi
        infos: list[Optional[VertexInfo]] = [None] * n
        for vd in vertices:
            vid = int(vd["id"])
            if not (0 <= vid < n) or infos[vid] is not None:
                raise ParseError(f"bad or duplicate vertex id {vid}")
            layer, pos = int(vd["layer"]), int(vd["pos"])
            if layer >= len(layers) or pos >= len(layers[layer]) or layers[layer][pos] != vid:
                raise ParseError(f"vertex {vid} does not sit at its recorded position")
            infos[vid] = VertexInfo(
                layer,
                pos,
                int(vd["type"]),
                tuple(int(a) for a in vd["ancestors"]),
                zone_at.get((layer, pos)),
            )
        if any(info is None for info in infos):
            raise ParseError("vertex records missing")
        return LayeredWheel(graph, flavor, l, k, layers, infos, zones, policy)

    @staticmethod
    def from_json_bytes(data: bytes) -> "LayeredWheel":
        try:
            d = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from exc
        return LayeredWheel.from_json_dict(d)


# -- recomputation helpers (used by the auditors) ----------------------------


def recomputed_ancestors(w: LayeredWheel, v: int) -> tuple[int, ...]:
    """Ancestors read off the graph: earlier-layer neighbors, later layer first,
    left before right within a layer."""
    anc = [u for u in w.graph.neighbors(v) if w.vinfo[u].layer < w.vinfo[v].layer]
    anc.sort(key=lambda u: (-w.vinfo[u].layer, w.vinfo[u].pos))
    return tuple(anc)


def expected_zone_emission(w: LayeredWheel, i: int, types: list[int], ancs: list[tuple[int, ...]]):
    """Zone sequence (kind, owners) that layer i must realize, from layer i-1.

    types/ancs are indexed by position in layer i-1.  Layer 1 is the single
    3-mark O zone owned by the root.
    """
    prev = w.layers[i - 1]
    if i == 1:
        return [("O", (prev[0],))]
    out = []
    last = len(prev) - 1
    for p, u in enumerate(prev):
        t = types[p]
        if t == 0:
            seq = [("O", (u,))]
        elif t == 1:
            v = ancs[p][0]
            seq = [("O", (u,)), ("O", (u, v)), ("O", (u,))]
        else:
            v, x = ancs[p]
            if w.flavor == EHF_PYRAMID:
                seq = [
                    ("E", (v, x)),
                    ("O", (u,)),
                    ("O", (u, v)),
                    ("O", (u,)),
                    ("O", (u, x)),
                    ("O", (u,)),
                    ("E", (v, x)),
                ]
            else:
                seq = [
                    ("E", (u,)),
                    ("E", (v, x)),
                    ("O", (u,)),
                    ("O", (u, v)),
                    ("O", (u,)),
                    ("O", (u, x)),
                    ("O", (u,)),
                    ("E", (v, x)),
                    ("E", (u,)),
                ]
        out.extend(seq)
        if p != last:
            out.append(("E", (u, prev[p + 1])))
    return out


def _expected_ttf_owner_seq(prev: list[int], types: list[int], ancs: list[tuple[int, ...]]):
    owners = []
    boxes = []
    for p, u in enumerate(prev):
        start = len(owners)
        if types[p] == 0:
            owners.extend([u, u, u])
        else:
            v = ancs[p][0]
            owners.extend([u, u, u, v, v, v, u, u, u])
        boxes.append((u, start, len(owners) - 1))
    return owners, boxes


def validate_axioms(w: LayeredWheel) -> AuditReport:
    """Check every construction axiom against the stored graph; violations
    carry the axiom tag and a witness."""
    report = AuditReport()
    ttf = w.flavor == TTF
    tag = (lambda a, b: a if ttf else b)

    # partition / id coherence
    n = w.graph.n
    seen = sorted(v for layer in w.layers for v in layer)
    if seen != list(range(n)):
        report.add(tag("A1", "B1"), "layers do not partition vertex ids")
        return report
    for layer_idx, layer in enumerate(w.layers):
        if not layer:
            report.add(tag("A1", "B1"), f"layer {layer_idx} is empty")
            return report
    for layer_idx, layer in enumerate(w.layers):
        for pos, v in enumerate(layer):
            info = w.vinfo[v]
            if info.layer != layer_idx or info.pos != pos:
                report.add(tag("A1", "B1"), f"vertex {v} metadata breaks the partition", (v,))
                return report

    if len(w.layers[0]) != 1:
        report.add(tag("A2", "B2"), f"layer 0 has {len(w.layers[0])} vertices")

    # within-layer edges: exactly the consecutive pairs
    for layer_idx, layer in enumerate(w.layers):
        for pos in range(len(layer) - 1):
            if not w.graph.has_edge(layer[pos], layer[pos + 1]):
                report.add(
                    tag("A1", "B1"),
                    f"layer {layer_idx} is not a path at positions {pos},{pos + 1}",
                    (layer[pos], layer[pos + 1]),
                )
    for u, v in w.graph.edges():
        iu, iv = w.vinfo[u].layer, w.vinfo[v].layer
        if iu == iv and abs(w.vinfo[u].pos - w.vinfo[v].pos) != 1:
            report.add(tag("A8", "B9"), f"chord inside layer {iu}", (u, v))

    # ancestors, types
    max_type = 1 if ttf else 2
    actual_anc = [recomputed_ancestors(w, v) for v in range(n)]
    for v in range(n):
        anc = actual_anc[v]
        info = w.vinfo[v]
        if info.ancestors != anc:
            report.add(
                tag("A3", "B3"),
                f"vertex {v} records ancestors {info.ancestors} but has {anc}",
                (v,),
            )
        if info.vtype != len(anc):
            report.add(tag("A3", "B3"), f"vertex {v} type {info.vtype} != {len(anc)}", (v,))
        if len(anc) > max_type:
            report.add(tag("A3", "B3"), f"vertex {v} has {len(anc)} ancestors", (v,))
        if not ttf and len(anc) == 2 and not w.graph.has_edge(anc[0], anc[1]):
            report.add("B3", f"type-2 vertex {v} has non-adjacent ancestors", (v,))

    types = [len(a) for a in actual_anc]
    for layer_idx in range(1, w.l + 1):
        layer = w.layers[layer_idx]
        for end in (layer[0], layer[-1]):
            if types[end] != 1:
                report.add(
                    tag("A3", "B3"),
                    f"end of layer {layer_idx} has type {types[end]}",
                    (end,),
                )

    # per-layer structure
    for i in range(1, w.l + 1):
        layer = w.layers[i]
        marks = [v for v in layer if types[v] >= 1]
        prev = list(w.layers[i - 1])
        prev_types = [types[u] for u in prev]
        prev_ancs = [actual_anc[u] for u in prev]
        if ttf:
            owners, boxes = _expected_ttf_owner_seq(prev, prev_types, prev_ancs)
            if len(marks) != len(owners):
                # localize to the first box whose mark count is off
                _localize_ttf_count(w, report, i, marks, owners, boxes, actual_anc)
            else:
                for mk, owner in zip(marks, owners):
                    if actual_anc[mk] != (owner,):
                        report.add(
                            "A4",
                            f"mark {mk} in layer {i} should neighbor {owner}",
                            (mk, owner),
                        )
                        break
        else:
            _check_ehf_zone_structure(w, report, i, marks, prev, prev_types, prev_ancs, actual_anc)

        # gap lengths and (ehf) parities between consecutive marks
        mark_pos = [w.vinfo[v].pos for v in marks]
        for a in range(len(marks) - 1):
            gap = mark_pos[a + 1] - mark_pos[a]
            u, v = marks[a], marks[a + 1]
            if gap < w.k - 2:
                report.add(
                    tag("A6", "B7"),
                    f"gap {gap} < k-2 between marks {u},{v} in layer {i}",
                    (u, v),
                )
            if not ttf:
                common = set(actual_anc[u]) & set(actual_anc[v])
                want_odd = bool(common)
                if gap % 2 != (1 if want_odd else 0):
                    kind = "odd" if want_odd else "even"
                    report.add(
                        "B7",
                        f"gap between marks {u},{v} in layer {i} must be {kind}, got {gap}",
                        (u, v),
                    )

    # ehf: odd neighbor counts in every later layer (checked prefix-wise)
    if not ttf:
        nbally = [[0] * (w.l + 1) for _ in range(n)]
        for u, v in w.graph.edges():
            nbally[u][w.vinfo[v].layer] += 1
            nbally[v][w.vinfo[u].layer] += 1
        for j in range(1, w.l + 1):
            for i in range(j):
                for u in w.layers[i]:
                    if nbally[u][j] % 2 == 0:
                        report.add(
                            "B4",
                            f"vertex {u} has {nbally[u][j]} neighbors in layer {j}",
                            (u,),
                        )
    return report


def _localize_ttf_count(w, report, i, marks, owners, boxes, actual_anc):
    """Attribute a mark-count mismatch in layer i to the first offending box."""
    idx = 0
    for owner, start, end in boxes:
        expected = owners[start : end + 1]
        got = []
        while idx < len(marks) and len(got) < len(expected):
            mk = marks[idx]
            if actual_anc[mk] and actual_anc[mk][0] == expected[len(got)]:
                got.append(mk)
                idx += 1
            else:
                break
        if len(got) != len(expected):
            report.add(
                "A4",
                f"box of vertex {owner} in layer {i} has {len(got)} of "
                f"{len(expected)} expected marks",
                (owner,),
            )
            return
    if idx != len(marks):
        report.add("A5", f"layer {i} has {len(marks) - idx} unexpected extra marks", ())


def _check_ehf_zone_structure(w, report, i, marks, prev, prev_types, prev_ancs, actual_anc):
    expected = expected_zone_emission(w, i, prev_types, prev_ancs)
    # group actual marks into runs of equal ancestor tuple
    runs: list[tuple[tuple[int, ...], list[int]]] = []
    for mk in marks:
        anc = actual_anc[mk]
        if runs and runs[-1][0] == anc:
            runs[-1][1].append(mk)
        else:
            runs.append((anc, [mk]))
    if len(runs) != len(expected):
        report.add(
            "B5",
            f"layer {i} realizes {len(runs)} zones, construction needs {len(expected)}",
            (),
        )
    stored = [z for z in w.zones if z.span.layer == i]
    stored.sort(key=lambda z: z.span.lo)
    for idx in range(min(len(runs), len(expected))):
        anc, mks = runs[idx]
        kind, own = expected[idx]
        size = 4 if kind == "E" else 3
        if anc != own:
            report.add(
                "B5",
                f"zone {idx} of layer {i} is owned by {anc}, expected {own}",
                tuple(mks[:1]),
            )
            continue
        if len(mks) != size:
            report.add(
                "B4",
                f"zone {idx} of layer {i} ({kind} of {own}) has {len(mks)} marks, not {size}",
                tuple(mks[:1]),
            )
        if idx < len(stored):
            z = stored[idx]
            if z.kind != kind or z.owners != own or tuple(mks) != z.marks:
                report.add("B4", f"zone table disagrees at zone {idx} of layer {i}", ())
            else:
                lo, hi = w.vinfo[mks[0]].pos, w.vinfo[mks[-1]].pos
                if (z.span.lo, z.span.hi) != (lo, hi):
                    report.add(
                        "B4",
                        f"zone {idx} of layer {i} span {z.span.lo}..{z.span.hi} "
                        f"does not run mark-to-mark ({lo}..{hi})",
                        (),
                    )
    if len(stored) != len(expected):
        report.add(
            "B4",
            f"zone table lists {len(stored)} zones in layer {i}, construction needs "
            f"{len(expected)}",
            (),
        )


def uniformity_audit(w: LayeredWheel) -> UniformityReport:
    """Specialness, the common depth-1 domain size (if any), and neighbor growth."""
    special = w.is_special()
    uniform_m: Optional[int] = None
    if special and w.l >= 1:
        sizes = set()
        for i in range(w.l):
            for v in w.layers[i]:
                sizes.add(w.domain_span(v, 1).size)
        if len(sizes) == 1:
            uniform_m = sizes.pop()
    counts = [[0] * (w.l + 1) for _ in range(w.graph.n)]
    for u, v in w.graph.edges():
        counts[u][w.vinfo[v].layer] += 1
        counts[v][w.vinfo[u].layer] += 1
    growth_ok = True
    for i in range(w.l):
        for u in w.layers[i]:
            for j in range(i + 1, w.l + 1):
                if counts[u][j] < 3 ** (j - i):
                    growth_ok = False
    return UniformityReport(special, uniform_m, growth_ok)
