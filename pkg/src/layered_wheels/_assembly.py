"""Layer materialization shared by the two generators.

Generators describe each new layer as an ordered list of marks (each carrying
its ancestor tuple and optional zone slot) plus the gap lengths between
consecutive marks; the assembler allocates ids, fillers, edges and zone spans.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph_core import Graph
from .wheel_model import LayeredWheel, LengthPolicy, Span, VertexInfo, Zone


@dataclass
class _ZoneRecord:
    kind: str
    owners: tuple[int, ...]
    layer: int
    mark_ids: list[int] = field(default_factory=list)
    lo: int = -1
    hi: int = -1


class WheelAssembler:
    def __init__(self, flavor: str, l: int, k: int, policy: LengthPolicy):
        self.flavor = flavor
        self.l = l
        self.k = k
        self.policy = policy
        self.layers: list[list[int]] = []
        self.edges: list[tuple[int, int]] = []
        self.ancestors: list[tuple[int, ...]] = []
        self.zrecords: list[_ZoneRecord] = []
        self.n = 0

    def _alloc(self, ancestors: tuple[int, ...]) -> int:
        vid = self.n
        self.n += 1
        self.ancestors.append(ancestors)
        return vid

    def add_root(self) -> int:
        root = self._alloc(())
        self.layers.append([root])
        return root

    def new_zone(self, kind: str, owners: tuple[int, ...]) -> int:
        self.zrecords.append(_ZoneRecord(kind, owners, len(self.layers)))
        return len(self.zrecords) - 1

    def add_layer(
        self,
        marks: list[tuple[tuple[int, ...], int | None]],
        gaps: list[int],
    ) -> list[int]:
        """Materialize a layer; returns the mark ids in order."""
        assert len(gaps) == len(marks) - 1
        seq: list[int] = []
        mark_ids: list[int] = []
        for idx, (anc, slot) in enumerate(marks):
            vid = self._alloc(anc)
            if slot is not None:
                rec = self.zrecords[slot]
                rec.mark_ids.append(vid)
                if rec.lo < 0:
                    rec.lo = len(seq)
                rec.hi = len(seq)
            for a in anc:
                self.edges.append((a, vid))
            seq.append(vid)
            mark_ids.append(vid)
            if idx < len(gaps):
                for _ in range(gaps[idx] - 1):
                    seq.append(self._alloc(()))
        for p in range(len(seq) - 1):
            self.edges.append((seq[p], seq[p + 1]))
        self.layers.append(seq)
        return mark_ids

    def finish(self) -> LayeredWheel:
        graph = Graph(self.n, self.edges)
        zones = [
            Zone(r.kind, r.owners, Span(r.layer, r.lo, r.hi), tuple(r.mark_ids))
            for r in self.zrecords
        ]
        zone_at: dict[tuple[int, int], int] = {}
        for zi, z in enumerate(zones):
            for p in range(z.span.lo, z.span.hi + 1):
                zone_at[(z.span.layer, p)] = zi
        infos = [None] * self.n
        for layer_idx, layer in enumerate(self.layers):
            for pos, vid in enumerate(layer):
                anc = self.ancestors[vid]
                infos[vid] = VertexInfo(
                    layer_idx, pos, len(anc), anc, zone_at.get((layer_idx, pos))
                )
        return LayeredWheel(
            graph,
            self.flavor,
            self.l,
            self.k,
            self.layers,
            infos,
            zones,
            self.policy,
        )
