"""Undirected graph parsing and normalization.

Input graphs are plain text edge lists (one edge per line, ``#``/``%``
comments), the format used by most public network datasets. Vertex IDs in a
file ("raw" IDs) may be arbitrary non-negative integers; they are remapped to
dense 0-based IDs in order of first appearance, and the mapping is kept on
the Graph so results can be reported in the caller's original IDs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

from .errors import ConfigError, ParseError

COMMENT_PREFIXES = ("#", "%")


class Graph:
    """Immutable, undirected, unweighted graph over dense vertex IDs.

    ``adjacency[v]`` is a sorted list of neighbors with no self-loops and no
    duplicates; ``raw_ids[v]`` is the original ID vertex ``v`` had on input.
    Instances are safe to share between threads once built.
    """

    __slots__ = ("vertex_count", "edge_count", "adjacency", "raw_ids", "_raw_to_dense")

    def __init__(self, adjacency: list[list[int]], raw_ids: list[int]):
        self.vertex_count = len(adjacency)
        self.adjacency = adjacency
        self.edge_count = sum(len(nbrs) for nbrs in adjacency) // 2
        self.raw_ids = raw_ids
        self._raw_to_dense = {raw: v for v, raw in enumerate(raw_ids)}

    @classmethod
    def from_edges(cls, pairs: Iterable[tuple[int, int]]) -> "Graph":
        """Build a Graph from raw (u, v) pairs.

        Every pair is treated as an undirected edge; self-loops and duplicate
        edges are dropped. Raw IDs are densified in first-appearance order
        (scanning u then v of each pair).
        """
        raw_to_dense: dict[int, int] = {}
        raw_ids: list[int] = []

        def dense(raw: int) -> int:
            d = raw_to_dense.get(raw)
            if d is None:
                d = len(raw_ids)
                raw_to_dense[raw] = d
                raw_ids.append(raw)
            return d

        edges: set[tuple[int, int]] = set()
        for ru, rv in pairs:
            u, v = dense(ru), dense(rv)
            if u == v:
                continue
            edges.add((u, v) if u < v else (v, u))

        if not raw_ids:
            raise ParseError("empty graph: input contains no vertices")

        adjacency: list[list[int]] = [[] for _ in raw_ids]
        for u, v in edges:
            adjacency[u].append(v)
            adjacency[v].append(u)
        for nbrs in adjacency:
            nbrs.sort()
        return cls(adjacency, raw_ids)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def avg_degree(self) -> float:
        return 2.0 * self.edge_count / self.vertex_count

    def dense_id(self, raw: int) -> int:
        """Map a raw input ID to its dense ID; ConfigError if absent."""
        try:
            return self._raw_to_dense[raw]
        except KeyError:
            raise ConfigError(f"vertex {raw} is not in the graph") from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.adjacency == other.adjacency and self.raw_ids == other.raw_ids

    __hash__ = None  # type: ignore[assignment]  # mutable lists inside

    def __repr__(self) -> str:
        return f"Graph(vertices={self.vertex_count}, edges={self.edge_count})"


@dataclass(frozen=True)
class VertexOrdering:
    """Label-construction priority: ``order[0]`` is the first landmark."""

    order: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.order) != list(range(len(self.order))):
            raise ConfigError("ordering is not a permutation of the vertex IDs")

    def rank(self) -> list[int]:
        """Inverse permutation: rank[v] = position of v in the order."""
        out = [0] * len(self.order)
        for pos, v in enumerate(self.order):
            out[v] = pos
        return out


def parse_edge_list(source: str | IO[str] | Iterable[str]) -> Graph:
    """Parse an edge-list text stream into a normalized Graph.

    Lines starting with '#' or '%' are comments. Each data line holds two
    whitespace-separated non-negative integer IDs. Raises ParseError with the
    offending line number on malformed input.
    """
    lines: Iterator[str] | list[str]
    if isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = source

    pairs: list[tuple[int, int]] = []
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(COMMENT_PREFIXES):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise ParseError(
                f"line {lineno}: expected two vertex IDs, found {len(tokens)} tokens"
            )
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer vertex ID in {stripped!r}") from None
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: negative vertex ID in {stripped!r}")
        pairs.append((u, v))

    return Graph.from_edges(pairs)


def serialize_edge_list(graph: Graph, sink: IO[str]) -> None:
    """Write a graph as an edge list that parses back to an identical Graph.

    The leading self-pair lines exist only to pin the dense numbering: the
    parser drops them as self-loops but still records each ID's first
    appearance, so re-parsing reproduces the exact raw-to-dense mapping.
    """
    sink.write("# vertex introductions (self-pairs), then one line per edge\n")
    raw = graph.raw_ids
    for r in raw:
        sink.write(f"{r} {r}\n")
    for u in range(graph.vertex_count):
        for v in graph.adjacency[u]:
            if v > u:
                sink.write(f"{raw[u]} {raw[v]}\n")


def largest_connected_component(graph: Graph) -> Graph:
    """Induced subgraph on the largest connected component, IDs re-densified.

    Size ties go to the component containing the smallest dense vertex ID.
    Returns the input unchanged when it is already connected.
    """
    n = graph.vertex_count
    visited = [False] * n
    best: list[int] = []
    for start in range(n):
        if visited[start]:
            continue
        component = _bfs_collect(graph, start, visited)
        if len(component) > len(best):
            best = component
        if len(best) > n - sum(visited):  # no remaining component can win
            break
    if len(best) == n:
        return graph

    best.sort()  # keep relative dense order stable
    remap = {old: new for new, old in enumerate(best)}
    adjacency = [[remap[w] for w in graph.adjacency[old]] for old in best]
    raw_ids = [graph.raw_ids[old] for old in best]
    return Graph(adjacency, raw_ids)


def is_connected(graph: Graph) -> bool:
    visited = [False] * graph.vertex_count
    reached = _bfs_collect(graph, 0, visited)
    return len(reached) == graph.vertex_count


def _bfs_collect(graph: Graph, start: int, visited: list[bool]) -> list[int]:
    visited[start] = True
    queue = deque([start])
    out = [start]
    adjacency = graph.adjacency
    while queue:
        v = queue.popleft()
        for w in adjacency[v]:
            if not visited[w]:
                visited[w] = True
                out.append(w)
                queue.append(w)
    return out


def degree_ordering(graph: Graph) -> VertexOrdering:
    """Vertices by descending degree, ties by ascending ID."""
    adjacency = graph.adjacency
    order = sorted(range(graph.vertex_count), key=lambda v: (-len(adjacency[v]), v))
    return VertexOrdering(tuple(order))
