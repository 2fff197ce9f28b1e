"""Graph interchange formats: graph6, DIMACS edge format, edge list, DOT,
and the canonical wheel JSON.  All encoders are byte-deterministic and all
round-trips are exact (import(export(x)) == x)."""

from __future__ import annotations

import re

from .errors import ParseError
from .graph_core import Graph
from .wheel_model import LayeredWheel

FORMATS = ("json", "graph6", "dimacs", "edgelist", "dot")


# -- graph6 -------------------------------------------------------------------


def _g6_size_bytes(n: int) -> bytes:
    if n < 0 or n > 2**36 - 1:
        raise ParseError(f"graph6 supports 0 <= n < 2^36, got {n}")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    return bytes([126, 126] + [((n >> (6 * s)) & 63) + 63 for s in range(5, -1, -1)])


def graph_to_graph6(g: Graph) -> str:
    n = g.n
    out = bytearray(_g6_size_bytes(n))
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    for c in range(0, len(bits), 6):
        group = bits[c : c + 6] + [0] * (6 - len(bits[c : c + 6]))
        val = 0
        for b in group:
            val = (val << 1) | b
        out.append(val + 63)
    return out.decode("ascii")


def graph6_to_graph(text: str) -> Graph:
    data = text.strip()
    if data.startswith(">>graph6<<"):
        data = data[10:]
    raw = data.encode("latin-1", errors="replace")
    pos = 0

    def take(k: int) -> list[int]:
        nonlocal pos
        vals = []
        for _ in range(k):
            if pos >= len(raw):
                raise ParseError("graph6 string truncated", pos)
            c = raw[pos]
            if not (63 <= c <= 126):
                raise ParseError(f"invalid graph6 byte {c}", pos)
            vals.append(c - 63)
            pos += 1
        return vals

    first = take(1)[0]
    if first < 63:
        n = first
    else:  # '~' prefix: 3- or 6-byte size
        second = take(1)[0]
        vals = take(6) if second == 63 else [second] + take(2)
        n = 0
        for v in vals:
            n = (n << 6) | v
    need = (n * (n - 1) // 2 + 5) // 6
    vals = take(need)
    if pos != len(raw):
        raise ParseError("trailing bytes after graph6 data", pos)
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            group, off = divmod(idx, 6)
            if (vals[group] >> (5 - off)) & 1:
                edges.append((i, j))
            idx += 1
    return Graph(n, edges)


# -- DIMACS edge format ---------------------------------------------------------


def graph_to_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    for u, v in g.edges():
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def dimacs_to_graph(text: str) -> Graph:
    n = None
    edges = []
    offset = 0
    for line in text.splitlines(keepends=True):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            offset += len(line)
            continue
        parts = stripped.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "edge":
                raise ParseError("bad problem line, expected 'p edge n m'", offset)
            n = int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge line before problem line", offset)
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except (IndexError, ValueError):
                raise ParseError("bad edge line", offset) from None
            edges.append((u, v))
        else:
            raise ParseError(f"unknown DIMACS line {stripped[:20]!r}", offset)
        offset += len(line)
    if n is None:
        raise ParseError("missing problem line")
    return Graph(n, edges)


# -- edge list -----------------------------------------------------------------


def graph_to_edgelist(g: Graph) -> str:
    # the leading comment keeps isolated vertices across a round trip
    lines = [f"# vertices {g.n}"]
    for u, v in g.edges():
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def edgelist_to_graph(text: str) -> Graph:
    n = 0
    explicit = None
    edges = []
    offset = 0
    for line in text.splitlines(keepends=True):
        stripped = line.strip()
        if stripped.startswith("#"):
            m = re.match(r"#\s*vertices\s+(\d+)", stripped)
            if m:
                explicit = int(m.group(1))
        elif stripped:
            parts = stripped.split()
            if len(parts) != 2:
                raise ParseError("edge list lines are 'u v'", offset)
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError("edge list lines are 'u v'", offset) from None
            edges.append((u, v))
            n = max(n, u + 1, v + 1)
        offset += len(line)
    if explicit is not None:
        if explicit < n:
            raise ParseError(f"header claims {explicit} vertices, edges need {n}")
        n = explicit
    return Graph(n, edges)


# -- DOT -----------------------------------------------------------------------


def graph_to_dot(g: Graph) -> str:
    lines = ["graph G {"]
    for v in range(g.n):
        lines.append(f"  {v};")
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_to_graph(text: str) -> Graph:
    """Parse the canonical DOT subset emitted by graph_to_dot."""
    body = re.search(r"\{(.*)\}", text, re.S)
    if body is None:
        raise ParseError("no graph block in DOT input")
    n = 0
    edges = []
    for stmt in body.group(1).split(";"):
        stmt = stmt.strip()
        if not stmt:
            continue
        m = re.fullmatch(r"(\d+)\s*--\s*(\d+)", stmt)
        if m:
            u, v = int(m.group(1)), int(m.group(2))
            edges.append((u, v))
            n = max(n, u + 1, v + 1)
            continue
        m = re.fullmatch(r"(\d+)", stmt)
        if m:
            n = max(n, int(m.group(1)) + 1)
            continue
        raise ParseError(f"unsupported DOT statement {stmt[:20]!r}")
    return Graph(n, edges)


# -- front door ----------------------------------------------------------------


def export_graph(g: Graph, fmt: str) -> bytes:
    if fmt == "graph6":
        return (graph_to_graph6(g) + "\n").encode("ascii")
    if fmt == "dimacs":
        return graph_to_dimacs(g).encode("ascii")
    if fmt == "edgelist":
        return graph_to_edgelist(g).encode("ascii")
    if fmt == "dot":
        return graph_to_dot(g).encode("ascii")
    raise ParseError(f"unknown graph format {fmt!r}")


def import_graph(data: bytes, fmt: str) -> Graph:
    text = data.decode("latin-1")
    if fmt == "graph6":
        return graph6_to_graph(text)
    if fmt == "dimacs":
        return dimacs_to_graph(text)
    if fmt == "edgelist":
        return edgelist_to_graph(text)
    if fmt == "dot":
        return dot_to_graph(text)
    if fmt == "json":
        return LayeredWheel.from_json_bytes(data).graph
    raise ParseError(f"unknown graph format {fmt!r}")


def format_from_path(path: str) -> str:
    lower = path.lower()
    for ext, fmt in (
        (".json", "json"),
        (".g6", "graph6"),
        (".graph6", "graph6"),
        (".dimacs", "dimacs"),
        (".col", "dimacs"),
        (".edgelist", "edgelist"),
        (".edges", "edgelist"),
        (".txt", "edgelist"),
        (".dot", "dot"),
        (".gv", "dot"),
    ):
        if lower.endswith(ext):
            return fmt
    raise ParseError(f"cannot infer format from path {path!r}")
