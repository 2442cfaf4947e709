"""Offline preprocessing for reverse-kNN queries over hub labels.

Runs once per object set, in three substages:

1. Regroup the objects' forward labels by hub, keeping only the k+1
   nearest object pairs per hub (kNN backward labels). Capacity is k+1, not
   k, because an object is by definition its own nearest neighbor and must
   be skippable later without starving the result.
2. Compute each object's k nearest other objects with a one-to-many sweep
   over those per-hub lists (batch kNN). Rows are independent, so this stage
   can fan out over worker threads.
3. Re-emit each object's label pairs grouped by hub, dropping every pair
   whose distance exceeds that object's k-th-neighbor distance (RkNN
   backward labels). That filter is what keeps online queries cheap.
"""

from __future__ import annotations

import struct
import time
from bisect import bisect_left
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

from .bounded import BoundedBuffer
from .errors import ConfigError, FormatError, ParseError
from .labels import LabelSet

_MAGIC = b"RHIX"
_VERSION = 1
_U32 = struct.Struct("<I")
_PAIR = struct.Struct("<IB")


@dataclass(frozen=True)
class ObjectSet:
    """Distinct object vertices; list position is the canonical object index."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ConfigError("object set contains duplicate vertices")
        if any(v < 0 for v in self.vertices):
            raise ConfigError("object set contains negative vertex IDs")

    def __len__(self) -> int:
        return len(self.vertices)


class KnnBackwardLabels:
    """Per-hub lists of the k+1 nearest (objectIndex, dist) pairs."""

    __slots__ = ("k", "lists")

    def __init__(self, k: int, lists: list[list[tuple[int, int]]]):
        self.k = k
        self.lists = lists  # hub -> [(idx, dist)] ascending by (dist, idx)

    def total_pairs(self) -> int:
        return sum(len(lst) for lst in self.lists)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KnnBackwardLabels):
            return NotImplemented
        return self.k == other.k and self.lists == other.lists

    __hash__ = None  # type: ignore[assignment]


class KnnResultTable:
    """Row i holds object i's k nearest other objects, ascending by distance."""

    __slots__ = ("k", "rows", "worst")

    def __init__(self, k: int, rows: list[list[tuple[int, int]]]):
        self.k = k
        self.rows = rows
        self.worst = [row[-1][1] for row in rows]  # k-th neighbor distance

    def worst_dist(self, i: int) -> int:
        return self.worst[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KnnResultTable):
            return NotImplemented
        return self.k == other.k and self.rows == other.rows

    __hash__ = None  # type: ignore[assignment]


class RknnBackwardLabels:
    """Per-hub (objectIndex, dist) pairs surviving the k-th-neighbor filter."""

    __slots__ = ("lists", "total_pairs")

    def __init__(self, lists: list[list[tuple[int, int]]], total_pairs: int):
        self.lists = lists  # hub -> [(idx, dist)] in object-index order
        self.total_pairs = total_pairs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RknnBackwardLabels):
            return NotImplemented
        return self.lists == other.lists

    __hash__ = None  # type: ignore[assignment]


@dataclass
class OfflineTimings:
    knn_backward_s: float = 0.0
    batch_knn_s: float = 0.0
    rknn_labels_s: float = 0.0

    @property
    def total_s(self) -> float:
        return self.knn_backward_s + self.batch_knn_s + self.rknn_labels_s


@dataclass
class OfflineIndex:
    """Everything the online phase needs for one object set and one k."""

    k: int
    objects: ObjectSet
    knn_results: KnnResultTable
    rknn_backward: RknnBackwardLabels
    labels: LabelSet
    knn_backward: KnnBackwardLabels | None = None
    timings: OfflineTimings = field(default_factory=OfflineTimings)

    @property
    def labels_fingerprint(self) -> tuple[int, int]:
        return (self.labels.vertex_count, self.labels.total_pairs)


def _check_objects(labels: LabelSet, objects: ObjectSet, k: int) -> None:
    if k < 1:
        raise ConfigError(f"k must be >= 1, got {k}")
    if len(objects) < k + 1:
        raise ConfigError(
            f"need at least k+1 = {k + 1} objects, got {len(objects)}"
        )
    n = labels.vertex_count
    for v in objects.vertices:
        if v >= n:
            raise ConfigError(f"object vertex {v} out of range for {n} vertices")


def build_knn_backward_labels(
    labels: LabelSet, objects: ObjectSet, k: int
) -> KnnBackwardLabels:
    """Substage 1: k+1 nearest object pairs per hub.

    Streams every object's forward label through a per-hub bounded buffer;
    pairs worse than a hub's current (k+1)-th best are discarded on arrival,
    so the unpruned by-hub regrouping is never materialized.
    """
    _check_objects(labels, objects, k)
    n = labels.vertex_count
    capacity = k + 1
    buffers: list[BoundedBuffer | None] = [None] * n
    for i, p in enumerate(objects.vertices):
        for h, d in zip(labels.hubs[p], labels.dists[p]):
            buf = buffers[h]
            if buf is None:
                buf = buffers[h] = BoundedBuffer(capacity)
            buf.push(i, d)
    lists: list[list[tuple[int, int]]] = [
        buf.pairs() if buf is not None else [] for buf in buffers
    ]
    return KnnBackwardLabels(k, lists)


def _knn_row(
    i: int,
    labels: LabelSet,
    vertices: Sequence[int],
    k: int,
    knn_lists: list[list[tuple[int, int]]],
    skip_self: bool,
) -> list[tuple[int, int]]:
    """One bounded one-to-many sweep; shared by batch kNN and kNN queries."""
    source = vertices[i]
    buf = BoundedBuffer(k)
    for h, d in zip(labels.hubs[source], labels.dists[source]):
        if d > buf.worst_dist():
            continue
        for idx, dp in knn_lists[h]:
            if skip_self and idx == i:
                continue
            d2 = d + dp
            if d2 > buf.worst_dist():
                break  # hub list ascends by distance; nothing better follows
            buf.push_unique(idx, d2)
    return buf.pairs()


def batch_knn(
    labels: LabelSet,
    objects: ObjectSet,
    k: int,
    knn_backward: KnnBackwardLabels,
    threads: int = 1,
) -> KnnResultTable:
    """Substage 2: every object's k nearest other objects.

    Rows are computed independently (optionally across threads) and the
    output is identical regardless of the worker count.
    """
    _check_objects(labels, objects, k)
    if knn_backward.k != k:
        raise ConfigError(
            f"kNN backward labels were built for k={knn_backward.k}, not k={k}"
        )
    vertices = objects.vertices
    lists = knn_backward.lists

    def row(i: int) -> list[tuple[int, int]]:
        result = _knn_row(i, labels, vertices, k, lists, skip_self=True)
        if len(result) < k:
            raise ConfigError(
                f"object {i} reaches only {len(result)} of {k} required neighbors"
            )
        return result

    if threads <= 1:
        rows = [row(i) for i in range(len(vertices))]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(row, range(len(vertices))))
    return KnnResultTable(k, rows)


def build_rknn_backward_labels(
    labels: LabelSet,
    objects: ObjectSet,
    k: int,
    knn_results: KnnResultTable,
) -> RknnBackwardLabels:
    """Substage 3: regroup object labels by hub, filtered by worst_dist."""
    _check_objects(labels, objects, k)
    if knn_results.k != k:
        raise ConfigError(
            f"kNN results were computed for k={knn_results.k}, not k={k}"
        )
    n = labels.vertex_count
    lists: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    total = 0
    for i, p in enumerate(objects.vertices):
        bound = knn_results.worst[i]
        for h, d in zip(labels.hubs[p], labels.dists[p]):
            if d <= bound:
                lists[h].append((i, d))
                total += 1
    return RknnBackwardLabels(lists, total)


def offline_preprocess(
    labels: LabelSet, objects: ObjectSet, k: int, threads: int = 1
) -> OfflineIndex:
    """Run the three substages in order and assemble the index."""
    timings = OfflineTimings()
    t0 = time.perf_counter()
    knn_backward = build_knn_backward_labels(labels, objects, k)
    t1 = time.perf_counter()
    knn_results = batch_knn(labels, objects, k, knn_backward, threads=threads)
    t2 = time.perf_counter()
    rknn_backward = build_rknn_backward_labels(labels, objects, k, knn_results)
    t3 = time.perf_counter()
    timings.knn_backward_s = t1 - t0
    timings.batch_knn_s = t2 - t1
    timings.rknn_labels_s = t3 - t2
    return OfflineIndex(
        k=k,
        objects=objects,
        knn_results=knn_results,
        rknn_backward=rknn_backward,
        labels=labels,
        knn_backward=knn_backward,
        timings=timings,
    )


def to_many_pairs(labels: LabelSet, objects: ObjectSet) -> int:
    """Pair count of the unpruned by-hub regrouping of all object labels."""
    return sum(len(labels.hubs[p]) for p in objects.vertices)


def epsilon(index: OfflineIndex) -> float:
    """Pruning ratio: kept RkNN pairs over the unpruned pair count (<= 1)."""
    return index.rknn_backward.total_pairs / to_many_pairs(index.labels, index.objects)


@dataclass(frozen=True)
class IndexStats:
    k: int
    object_count: int
    knn_backward_pairs: int
    knn_result_pairs: int
    rknn_pairs: int
    to_many_pairs: int
    epsilon: float

    # 5 bytes per stored pair: 4 for the object index, 1 for the distance.
    @property
    def model_bytes(self) -> int:
        return 5 * (self.knn_backward_pairs + self.knn_result_pairs + self.rknn_pairs)


def index_stats(index: OfflineIndex) -> IndexStats:
    knn_backward_pairs = (
        index.knn_backward.total_pairs() if index.knn_backward is not None else 0
    )
    return IndexStats(
        k=index.k,
        object_count=len(index.objects),
        knn_backward_pairs=knn_backward_pairs,
        knn_result_pairs=index.k * len(index.objects),
        rknn_pairs=index.rknn_backward.total_pairs,
        to_many_pairs=to_many_pairs(index.labels, index.objects),
        epsilon=epsilon(index),
    )


def parse_object_file(source: str | IO[str] | Iterable[str]) -> list[int]:
    """Raw vertex IDs, one per line; '#' starts a comment."""
    lines = source.splitlines() if isinstance(source, str) else source
    out: list[int] = []
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            out.append(int(stripped))
        except ValueError:
            raise ParseError(
                f"line {lineno}: expected a vertex ID, got {stripped!r}"
            ) from None
    return out


def save_index(index: OfflineIndex, sink: IO[bytes]) -> None:
    """Serialize the query-time structures (kNN results + RkNN labels)."""
    sink.write(_MAGIC)
    sink.write(struct.pack("<B", _VERSION))
    sink.write(_U32.pack(index.k))
    sink.write(_U32.pack(len(index.objects)))
    for v in index.objects.vertices:
        sink.write(_U32.pack(v))
    pack = _PAIR.pack
    for row in index.knn_results.rows:
        sink.write(b"".join(pack(idx, d) for idx, d in row))
    for lst in index.rknn_backward.lists:
        sink.write(_U32.pack(len(lst)))
        sink.write(b"".join(pack(idx, d) for idx, d in lst))


def load_index(source: IO[bytes], labels: LabelSet) -> OfflineIndex:
    """Read an index file and verify it belongs to the given labels.

    The format carries no explicit fingerprint, so compatibility is checked
    the hard way: every stored pair must appear verbatim in the forward
    label of its object, and every hub section must line up with the label
    set's vertex count. Mismatched inputs fail with FormatError.
    """
    magic = _read_exact(source, 4)
    if magic != _MAGIC:
        raise FormatError(f"bad index-file magic {magic!r}")
    (version,) = struct.unpack("<B", _read_exact(source, 1))
    if version != _VERSION:
        raise FormatError(f"unsupported index-file version {version}")
    (k,) = _U32.unpack(_read_exact(source, 4))
    (obj_count,) = _U32.unpack(_read_exact(source, 4))
    n = labels.vertex_count
    if k < 1 or obj_count < k + 1:
        raise FormatError(f"index header has k={k} but only {obj_count} objects")

    vertices = []
    for _ in range(obj_count):
        (v,) = _U32.unpack(_read_exact(source, 4))
        if v >= n:
            raise FormatError(f"index object vertex {v} out of range for {n} vertices")
        vertices.append(v)
    try:
        objects = ObjectSet(tuple(vertices))
    except ConfigError as exc:
        raise FormatError(str(exc)) from None

    rows: list[list[tuple[int, int]]] = []
    for i in range(obj_count):
        buf = _read_exact(source, k * _PAIR.size)
        row = list(_PAIR.iter_unpack(buf))
        prev = -1
        for idx, d in row:
            if idx >= obj_count or idx == i:
                raise FormatError(f"kNN result row {i} references index {idx}")
            if d < prev:
                raise FormatError(f"kNN result row {i} is not distance-sorted")
            prev = d
        rows.append(row)
    knn_results = KnnResultTable(k, rows)

    lists: list[list[tuple[int, int]]] = []
    total = 0
    for h in range(n):
        (count,) = _U32.unpack(_read_exact(source, 4))
        buf = _read_exact(source, count * _PAIR.size)
        lst = list(_PAIR.iter_unpack(buf))
        for idx, d in lst:
            if idx >= obj_count:
                raise FormatError(f"RkNN section {h} references object index {idx}")
        lists.append(lst)
        total += count
    if source.read(1):
        raise FormatError("trailing bytes after the last RkNN section")
    rknn_backward = RknnBackwardLabels(lists, total)

    _validate_against_labels(labels, objects, knn_results, rknn_backward)
    return OfflineIndex(
        k=k,
        objects=objects,
        knn_results=knn_results,
        rknn_backward=rknn_backward,
        labels=labels,
    )


def _validate_against_labels(
    labels: LabelSet,
    objects: ObjectSet,
    knn_results: KnnResultTable,
    rknn_backward: RknnBackwardLabels,
) -> None:
    for h, lst in enumerate(rknn_backward.lists):
        for idx, d in lst:
            if d > knn_results.worst[idx]:
                raise FormatError(
                    f"RkNN pair (hub {h}, object {idx}) exceeds its kNN bound"
                )
            p = objects.vertices[idx]
            hv = labels.hubs[p]
            pos = bisect_left(hv, h)
            if pos == len(hv) or hv[pos] != h or labels.dists[p][pos] != d:
                raise FormatError(
                    f"index does not match labels: object {idx} has no pair "
                    f"(hub {h}, dist {d})"
                )


def _read_exact(source: IO[bytes], nbytes: int) -> bytes:
    buf = source.read(nbytes)
    if len(buf) != nbytes:
        raise FormatError("truncated stream")
    return buf
