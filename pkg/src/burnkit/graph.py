"""Shared graph primitives: parsing, serialization, distances, components.

Vertex ids are dense integers 0..n-1.  Graphs are simple and undirected,
may be disconnected, and are treated as immutable once built: every
algorithm in this package reads adjacency lists without mutating them,
so sharing a graph across threads is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


class GraphFormatError(ValueError):
    """Malformed edge-list document; carries the offending 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class Graph:
    """Simple undirected graph in adjacency-list form.

    ``adj[v]`` lists the neighbors of ``v`` in ascending order and is
    symmetric (u lists v iff v lists u).  No self-loops, no duplicate
    edges.
    """

    n: int
    adj: list[list[int]]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as (u, v) with u < v, in ascending order."""
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def degree(self, v: int) -> int:
        return len(self.adj[v])


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a Graph from an edge iterable, rejecting loops and duplicates."""
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    adj: list[list[int]] = [[] for _ in range(n)]
    seen: set[tuple[int, int]] = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise ValueError(f"duplicate edge ({key[0]},{key[1]})")
        seen.add(key)
        adj[u].append(v)
        adj[v].append(u)
    for a in adj:
        a.sort()
    return Graph(n, adj)


def parse_graph(text: str) -> Graph:
    """Parse an edge-list document: first line ``n m``, then m lines ``u v``.

    Raises GraphFormatError with the 1-based line number on any of:
    malformed line, id out of range, self-loop, duplicate edge, or an
    edge count that does not match the header.
    """
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise GraphFormatError(1, "missing 'n m' header")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphFormatError(1, f"expected 'n m', got {lines[0].strip()!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphFormatError(1, f"expected two integers, got {lines[0].strip()!r}") from None
    if n < 0 or m < 0:
        raise GraphFormatError(1, "n and m must be non-negative")

    adj: list[list[int]] = [[] for _ in range(n)]
    seen: set[tuple[int, int]] = set()
    count = 0
    for idx, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        if count == m:
            raise GraphFormatError(idx, f"more than {m} edge lines")
        parts = raw.split()
        if len(parts) != 2:
            raise GraphFormatError(idx, f"expected 'u v', got {raw.strip()!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(idx, f"expected two integers, got {raw.strip()!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(idx, f"vertex id out of range in ({u},{v})")
        if u == v:
            raise GraphFormatError(idx, f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphFormatError(idx, f"duplicate edge ({key[0]},{key[1]})")
        seen.add(key)
        adj[u].append(v)
        adj[v].append(u)
        count += 1
    if count != m:
        raise GraphFormatError(len(lines) + 1, f"expected {m} edges, found {count}")
    for a in adj:
        a.sort()
    return Graph(n, adj)


def serialize_graph(g: Graph) -> str:
    """Canonical edge-list form: header, then edges ``u v`` with u < v, ascending."""
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


@dataclass
class DistanceTable:
    """Hop distances from the nearest vertex of a source set.

    ``dist[v]`` is None when v is unreachable from every source; an
    explicit sentinel so downstream round arithmetic can never silently
    treat an unreachable vertex as a far one.
    """

    sources: tuple[int, ...]
    dist: list[int | None]


def bfs_distances(g: Graph, sources: Iterable[int]) -> DistanceTable:
    """Exact unweighted hop counts from the nearest source, by multi-source BFS."""
    srcs = sorted(set(sources))
    if not srcs:
        raise ValueError("empty source set")
    for s in srcs:
        if not (0 <= s < g.n):
            raise ValueError(f"invalid source id {s}")
    dist: list[int | None] = [None] * g.n
    for s in srcs:
        dist[s] = 0
    frontier = list(srcs)
    adj = g.adj
    d = 0
    while frontier:
        d += 1
        nxt: list[int] = []
        for x in frontier:
            for u in adj[x]:
                if dist[u] is None:
                    dist[u] = d
                    nxt.append(u)
        frontier = nxt
    return DistanceTable(tuple(srcs), dist)


def connected_components(g: Graph) -> list[list[int]]:
    """Partition vertices into maximal connected sets.

    Each component is sorted ascending; components are ordered by their
    smallest member.
    """
    seen = [False] * g.n
    comps: list[list[int]] = []
    adj = g.adj
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        frontier = [start]
        while frontier:
            nxt: list[int] = []
            for x in frontier:
                for u in adj[x]:
                    if not seen[u]:
                        seen[u] = True
                        comp.append(u)
                        nxt.append(u)
            frontier = nxt
        comp.sort()
        comps.append(comp)
    return comps


# Builders for the standard families used throughout the test-suite and
# the scaling experiments.

def path_graph(n: int) -> Graph:
    return graph_from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return graph_from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def star_graph(n: int) -> Graph:
    """Star on n vertices: center 0 joined to 1..n-1."""
    return graph_from_edges(n, ((0, v) for v in range(1, n)))


def grid_graph(rows: int, cols: int) -> Graph:
    """Rows x cols grid, vertices row-major."""
    def gen():
        for r in range(rows):
            for c in range(cols):
                v = r * cols + c
                if c + 1 < cols:
                    yield (v, v + 1)
                if r + 1 < rows:
                    yield (v, v + cols)
    return graph_from_edges(rows * cols, gen())
