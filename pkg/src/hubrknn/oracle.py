"""Brute-force BFS ground truth for distances, kNN, and reverse kNN.

Deliberately slow and simple: one BFS per object (or per vertex). Used by
the test suite and exposed on the CLI behind ``query --oracle`` for
debugging index results.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import Graph
from .labels import INFINITY
from .offline import ObjectSet


@dataclass(frozen=True)
class DistanceRow:
    source: int
    dist: tuple[int, ...]  # INFINITY for unreachable vertices


def bfs_distances(graph: Graph, source: int) -> DistanceRow:
    dist = [INFINITY] * graph.vertex_count
    dist[source] = 0
    queue = deque([source])
    adjacency = graph.adjacency
    while queue:
        v = queue.popleft()
        nd = dist[v] + 1
        for w in adjacency[v]:
            if dist[w] == INFINITY:
                dist[w] = nd
                queue.append(w)
    return DistanceRow(source, tuple(dist))


def oracle_knn(
    graph: Graph, objects: ObjectSet, i: int, k: int
) -> list[tuple[int, int]]:
    """Object i's k nearest other objects by BFS, ties by object index."""
    row = bfs_distances(graph, objects.vertices[i]).dist
    candidates = sorted(
        (row[p], j) for j, p in enumerate(objects.vertices) if j != i and row[p] < INFINITY
    )
    return [(j, d) for d, j in candidates[:k]]


def oracle_rknn(
    graph: Graph, objects: ObjectSet, q: int, k: int
) -> list[tuple[int, int]]:
    """Members (objectIndex, dist) with dist(p, q) <= dist(p, p_k), by index.

    One BFS per object; the same row yields both the k-th-neighbor threshold
    and the object-to-query distance.
    """
    members = []
    vertices = objects.vertices
    for i, p in enumerate(vertices):
        row = bfs_distances(graph, p).dist
        others = sorted(row[v] for j, v in enumerate(vertices) if j != i)
        threshold = others[k - 1] if k <= len(others) else INFINITY
        if row[q] <= threshold:
            members.append((i, row[q]))
    return members


def oracle_rknn_via_knn(
    graph: Graph, objects: ObjectSet, q: int, k: int
) -> list[tuple[int, int]]:
    """Second route to the same answer: per-object kNN thresholds plus one
    BFS from the query vertex. Exists to cross-check oracle_rknn."""
    row_q = bfs_distances(graph, q).dist
    members = []
    for i, p in enumerate(objects.vertices):
        knn = oracle_knn(graph, objects, i, k)
        threshold = knn[k - 1][1] if len(knn) >= k else INFINITY
        if row_q[p] <= threshold:
            members.append((i, row_q[p]))
    return members
