"""Two-hop hub labels: pruned landmark labeling, distance queries, file I/O.

Every vertex carries a hub-sorted array of (hub, distance) pairs such that
any two vertices share at least one hub lying on a shortest path between
them (the cover property). A vertex-to-vertex distance query is then a
single merge sweep over two sorted arrays.
"""

from __future__ import annotations

import struct
from typing import IO

from .errors import ConfigError, FormatError
from .graph import Graph, VertexOrdering, degree_ordering

# Sentinel strictly greater than any representable hop distance.
INFINITY = 1 << 30

# Serialized distances are a single byte; construction enforces this bound.
MAX_DIST = 255

_MAGIC = b"RHUB"
_VERSION = 1
_PAIR = struct.Struct("<IB")
_HEAD_COUNT = struct.Struct("<I")


class LabelSet:
    """Per-vertex hub labels, stored as parallel hub/distance lists.

    ``hubs[v]`` is strictly ascending; ``dists[v]`` is aligned with it.
    Immutable by convention once built; queries may run concurrently.
    """

    __slots__ = ("hubs", "dists", "total_pairs")

    def __init__(self, hubs: list[list[int]], dists: list[list[int]], total_pairs: int):
        self.hubs = hubs
        self.dists = dists
        self.total_pairs = total_pairs

    @property
    def vertex_count(self) -> int:
        return len(self.hubs)

    def label(self, v: int) -> list[tuple[int, int]]:
        """The (hub, dist) pairs of vertex v, ascending by hub."""
        return list(zip(self.hubs[v], self.dists[v]))

    def avg_label_size(self) -> float:
        return self.total_pairs / self.vertex_count

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabelSet):
            return NotImplemented
        return self.hubs == other.hubs and self.dists == other.dists

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"LabelSet(vertices={self.vertex_count}, pairs={self.total_pairs})"


def build_pll_labels(graph: Graph, ordering: VertexOrdering | None = None) -> LabelSet:
    """Run pruned landmark labeling over the given vertex ordering.

    One BFS per vertex, in priority order. A visit to w at depth d is pruned
    when the labels built so far (including the current root's own label)
    already certify dist(root, w) <= d; otherwise (root, d) is appended to
    w's label and the BFS expands through w.
    """
    if ordering is None:
        ordering = degree_ordering(graph)
    n = graph.vertex_count
    if len(ordering.order) != n:
        raise ConfigError("ordering size does not match the graph")

    adjacency = graph.adjacency
    hubs: list[list[int]] = [[] for _ in range(n)]
    dists: list[list[int]] = [[] for _ in range(n)]
    root_dist = [INFINITY] * n  # distances root -> hub, indexed by hub
    seen = bytearray(n)  # BFS scratch
    total = 0

    for root in ordering.order:
        for h, dh in zip(hubs[root], dists[root]):
            root_dist[h] = dh
        seen[root] = 1
        touched = [root]
        level = [root]
        d = 0
        while level:
            next_level: list[int] = []
            push = next_level.append
            overflow = d > MAX_DIST
            for w in level:
                # Prune when a common hub already certifies a path <= d.
                for h, dh in zip(hubs[w], dists[w]):
                    if root_dist[h] + dh <= d:
                        break
                else:
                    if overflow:
                        raise FormatError(
                            f"hop distance {d} exceeds the serializable "
                            f"maximum {MAX_DIST}"
                        )
                    hubs[w].append(root)
                    dists[w].append(d)
                    total += 1
                    for x in adjacency[w]:
                        if not seen[x]:
                            seen[x] = 1
                            push(x)
            touched.extend(next_level)
            level = next_level
            d += 1
        for h in hubs[root]:
            root_dist[h] = INFINITY
        for v in touched:
            seen[v] = 0

    # Labels were appended in landmark order; queries need hub order.
    for v in range(n):
        pairs = sorted(zip(hubs[v], dists[v]))
        hubs[v] = [h for h, _ in pairs]
        dists[v] = [d for _, d in pairs]

    return LabelSet(hubs, dists, total)


def hl_distance(labels: LabelSet, s: int, t: int) -> int:
    """Minimum of dist(s,h) + dist(h,t) over common hubs; INFINITY if none."""
    n = labels.vertex_count
    if not (0 <= s < n and 0 <= t < n):
        raise ValueError(f"vertex pair ({s}, {t}) out of range for {n} vertices")
    hs, ds = labels.hubs[s], labels.dists[s]
    ht, dt = labels.hubs[t], labels.dists[t]
    best = INFINITY
    i = j = 0
    ls, lt = len(hs), len(ht)
    while i < ls and j < lt:
        a, b = hs[i], ht[j]
        if a == b:
            cand = ds[i] + dt[j]
            if cand < best:
                best = cand
            i += 1
            j += 1
        elif a < b:
            i += 1
        else:
            j += 1
    return best


def save_labels(labels: LabelSet, sink: IO[bytes]) -> None:
    """Serialize to the binary label format (see README for the layout)."""
    sink.write(_MAGIC)
    sink.write(struct.pack("<B", _VERSION))
    sink.write(struct.pack("<Q", labels.vertex_count))
    pack = _PAIR.pack
    for v in range(labels.vertex_count):
        hv, dv = labels.hubs[v], labels.dists[v]
        sink.write(_HEAD_COUNT.pack(len(hv)))
        sink.write(b"".join(pack(h, d) for h, d in zip(hv, dv)))


def load_labels(source: IO[bytes]) -> LabelSet:
    """Read and validate a label file; FormatError on any corruption."""
    magic = _read_exact(source, 4)
    if magic != _MAGIC:
        raise FormatError(f"bad label-file magic {magic!r}")
    (version,) = struct.unpack("<B", _read_exact(source, 1))
    if version != _VERSION:
        raise FormatError(f"unsupported label-file version {version}")
    (n,) = struct.unpack("<Q", _read_exact(source, 8))
    hubs: list[list[int]] = []
    dists: list[list[int]] = []
    total = 0
    for v in range(n):
        (count,) = _HEAD_COUNT.unpack(_read_exact(source, 4))
        buf = _read_exact(source, count * _PAIR.size)
        hv: list[int] = []
        dv: list[int] = []
        prev = -1
        for h, d in _PAIR.iter_unpack(buf):
            if h <= prev:
                raise FormatError(f"label of vertex {v} is not strictly hub-sorted")
            if h >= n:
                raise FormatError(f"label of vertex {v} names hub {h} >= {n}")
            prev = h
            hv.append(h)
            dv.append(d)
        hubs.append(hv)
        dists.append(dv)
        total += count
    if source.read(1):
        raise FormatError("trailing bytes after the last label")
    return LabelSet(hubs, dists, total)


def _read_exact(source: IO[bytes], nbytes: int) -> bytes:
    buf = source.read(nbytes)
    if len(buf) != nbytes:
        raise FormatError("truncated stream")
    return buf
