"""Plain undirected graph kernel: adjacency, girth, small forbidden patterns, GF(2) rank."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from ._gf2 import rank_of_rows
from .errors import InputError

INFINITE = float("inf")


class Graph:
    """Immutable simple undirected graph on dense 0-based vertex ids.

    Adjacency is kept both as sorted neighbor tuples (deterministic
    iteration) and as python-int bitmasks (fast set algebra).
    """

    __slots__ = ("n", "_adj", "_masks", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise InputError("vertex count must be non-negative")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self._adj = tuple(tuple(sorted(s)) for s in adj)
        self._masks = tuple(sum(1 << v for v in s) for s in self._adj)
        self._m = sum(len(s) for s in self._adj) // 2

    @property
    def m(self) -> int:
        return self._m

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def mask(self, v: int) -> int:
        return self._masks[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (self._masks[u] >> v) & 1 == 1

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self._adj[u] if u < v]

    def induced(self, vertices: Iterable[int]) -> tuple[list[int], "Graph"]:
        """Induced subgraph; returns (sorted original ids, relabeled graph)."""
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        es = [
            (index[u], index[v])
            for u in vs
            for v in self._adj[u]
            if u < v and v in index
        ]
        return vs, Graph(len(vs), es)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._adj == other._adj

    def __hash__(self):
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self._m})"


@dataclass(frozen=True)
class GF2Matrix:
    """Binary matrix; bit j of bits[i] is the entry in row i, column j."""

    rows: int
    cols: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0 or len(self.bits) != self.rows:
            raise InputError("matrix dimensions do not match bit storage")
        colmask = (1 << self.cols) - 1
        for r, row in enumerate(self.bits):
            if row & ~colmask:
                raise InputError(f"row {r} has bits outside {self.cols} columns")

    @staticmethod
    def from_dense(entries: list[list[int]]) -> "GF2Matrix":
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        bits = []
        for row in entries:
            if len(row) != cols:
                raise InputError("ragged matrix")
            bits.append(sum((1 << j) for j, e in enumerate(row) if e & 1))
        return GF2Matrix(rows, cols, tuple(bits))

    def to_dense(self) -> list[list[int]]:
        return [[(row >> j) & 1 for j in range(self.cols)] for row in self.bits]

    def entry(self, i: int, j: int) -> int:
        return (self.bits[i] >> j) & 1

    def transpose(self) -> "GF2Matrix":
        cols = [
            sum(((self.bits[i] >> j) & 1) << i for i in range(self.rows))
            for j in range(self.cols)
        ]
        return GF2Matrix(self.cols, self.rows, tuple(cols))


def gf2_rank(m: GF2Matrix) -> int:
    """Rank of m over GF(2)."""
    return rank_of_rows(list(m.bits), m.cols)


def cutrank(g: Graph, x: Iterable[int]) -> int:
    """GF(2) rank of the bipartite adjacency submatrix rows X, columns V minus X."""
    xs = set(x)
    for v in xs:
        if not (0 <= v < g.n):
            raise InputError(f"vertex {v} not in graph")
    other_mask = sum(1 << v for v in range(g.n) if v not in xs)
    rows = [g.mask(u) & other_mask for u in sorted(xs)]
    return rank_of_rows(rows, g.n)


def girth(g: Graph):
    """Length of the shortest cycle, or INFINITE for forests.

    Runs a BFS from every vertex; the first non-tree edge seen at depth d
    witnesses a cycle through the root of length dist[u]+dist[w]+1, and the
    minimum over all roots is exact.
    """
    best = INFINITE
    dist = [0] * g.n
    parent = [0] * g.n
    for s in range(g.n):
        for v in range(g.n):
            dist[v] = -1
        dist[s] = 0
        parent[s] = -1
        q = deque([s])
        while q:
            u = q.popleft()
            if best != INFINITE and 2 * dist[u] >= best:
                break
            for w in g.neighbors(u):
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    q.append(w)
                elif w != parent[u] and dist[w] >= dist[u]:
                    cand = dist[u] + dist[w] + 1
                    if cand < best:
                        best = cand
    return best


def is_fuzzy_triangular(m: GF2Matrix) -> bool:
    """Unit diagonal and, for each i >= 2, an all-zero column above or row to the left.

    The empty 0x0 matrix is accepted vacuously.
    """
    if m.rows != m.cols:
        raise InputError("matrix must be square")
    n = m.rows
    if n == 0:
        return True
    if m.entry(0, 0) != 1:
        return False
    for i in range(1, n):
        if m.entry(i, i) != 1:
            return False
        col_above = any(m.entry(r, i) for r in range(i))
        row_left = m.bits[i] & ((1 << i) - 1)
        if col_above and row_left:
            return False
    return True


@dataclass(frozen=True)
class PatternReport:
    has_triangle: bool
    has_K4: bool
    has_diamond: bool
    has_K33_subgraph: bool


def small_pattern_report(g: Graph) -> PatternReport:
    """Exact presence flags: triangle, K4, diamond and K_{3,3} as subgraphs.

    A diamond subgraph is an edge with two common neighbors; it is induced
    exactly when the graph is K4-free, which is the case of interest.
    """
    has_triangle = False
    has_k4 = False
    has_diamond = False
    for u in range(g.n):
        mu = g.mask(u)
        for v in g.neighbors(u):
            if v < u:
                continue
            common = mu & g.mask(v)
            if common:
                has_triangle = True
            cn = _bits_to_list(common)
            if len(cn) >= 2:
                has_diamond = True
                if any(g.has_edge(a, b) for a, b in combinations(cn, 2)):
                    has_k4 = True
            if has_k4 and has_diamond:
                break
        if has_k4 and has_diamond:
            break
    # K_{3,3} as a (not necessarily induced) subgraph: a triple with three
    # common neighbors outside the triple.  Pairs with < 3 common neighbors
    # prune the third choice.
    has_k33 = False
    for u in range(g.n):
        if g.degree(u) < 3:
            continue
        mu = g.mask(u)
        for v in range(u + 1, g.n):
            if g.degree(v) < 3:
                continue
            c2 = mu & g.mask(v) & ~((1 << u) | (1 << v))
            if _popcount(c2) < 3:
                continue
            for w in range(v + 1, g.n):
                if _popcount(c2 & g.mask(w) & ~(1 << w)) >= 3:
                    has_k33 = True
                    break
            if has_k33:
                break
        if has_k33:
            break
    return PatternReport(has_triangle, has_k4, has_diamond, has_k33)


def _popcount(x: int) -> int:
    return x.bit_count()


def _bits_to_list(x: int) -> list[int]:
    out = []
    while x:
        b = x & -x
        out.append(b.bit_length() - 1)
        x ^= b
    return out
