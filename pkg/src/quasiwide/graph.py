"""Degeneracy-ordered graph core.

Every structure in this package sits on top of this module: an immutable
undirected graph with sorted adjacency lists, a degeneracy ordering computed
once at build time, and the handful of primitives the algorithms need
(bounded BFS, capped distance vectors, independence checks, ball
contraction).

Conventions:
- Vertices are the integers ``0..n-1``; edges are unordered pairs of distinct
  vertices. Parallel edges and self-loops are dropped silently at build time.
- ``order`` lists the densest part of the graph first (reverse peeling
  order), so every vertex has at most ``c`` neighbors earlier in the order;
  those are its ``smaller_neighbors`` and make adjacency tests O(c).
- Distances count edges. Values beyond a cap are reported as ``INF``
  (``math.inf``), which keeps capped distance vectors hashable.
- Deleted-set arguments (``forbidden``, ``avoid``) emulate the subgraph
  ``G - S`` without copying the graph.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import InputError

INF = math.inf


@dataclass(eq=False)
class Graph:
    """Immutable undirected graph with a precomputed degeneracy ordering.

    ``adj[v]`` is the sorted tuple of neighbors of ``v``. ``order`` is the
    reverse peeling order and ``smaller_neighbors[v]`` holds the neighbors of
    ``v`` that appear before it there (at most ``c`` of them). Treat
    instances as frozen; the private fields only cache derived arrays.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    order: tuple[int, ...]
    smaller_neighbors: tuple[tuple[int, ...], ...]
    c: int
    _bits: list[int] | None = field(default=None, repr=False, compare=False)
    _csr: tuple | None = field(default=None, repr=False, compare=False)

    @property
    def m(self) -> int:
        """Number of edges."""
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> Iterable[tuple[int, int]]:
        """Yield each edge once as (u, v) with u < v, in sorted order."""
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Construct a :class:`Graph` from an edge list.

    Duplicate edges and self-loops are dropped without complaint; an endpoint
    outside ``0..n-1`` raises :class:`InputError`. The degeneracy ordering is
    computed by repeatedly peeling a minimum-degree vertex (smallest id on
    ties), which also yields the degeneracy ``c`` as the largest degree seen
    at peel time.
    """
    if n < 0:
        raise InputError(f"vertex count must be non-negative, got {n}")
    seen: set[tuple[int, int]] = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            continue
        seen.add((u, v) if u < v else (v, u))
    neighbor_sets: list[list[int]] = [[] for _ in range(n)]
    for u, v in seen:
        neighbor_sets[u].append(v)
        neighbor_sets[v].append(u)
    adj = tuple(tuple(sorted(a)) for a in neighbor_sets)

    # Min-degree peeling with a lazy heap keyed by (degree, id): deterministic
    # and O(m log n).
    degree = [len(a) for a in adj]
    heap: list[tuple[int, int]] = [(degree[v], v) for v in range(n)]
    heapq.heapify(heap)
    removed = [False] * n
    peel: list[int] = []
    c = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != degree[v]:
            continue
        removed[v] = True
        peel.append(v)
        c = max(c, d)
        for u in adj[v]:
            if not removed[u]:
                degree[u] -= 1
                heapq.heappush(heap, (degree[u], u))
    order = tuple(reversed(peel))
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    smaller = tuple(
        tuple(sorted(u for u in adj[v] if pos[u] < pos[v])) for v in range(n)
    )
    return Graph(n=n, adj=adj, order=order, smaller_neighbors=smaller, c=c)


def _check_vertex(g: Graph, v: int) -> None:
    if not (0 <= v < g.n):
        raise InputError(f"vertex {v} outside 0..{g.n - 1}")


def adjacent(g: Graph, u: int, v: int) -> bool:
    """Edge test in O(c): each vertex keeps at most ``c`` smaller neighbors,
    so it suffices to scan both short lists."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    return v in g.smaller_neighbors[u] or u in g.smaller_neighbors[v]


def bfs_limited(
    g: Graph,
    sources: Iterable[int],
    depth: int,
    *,
    forbidden: frozenset[int] | set[int] = frozenset(),
) -> set[int]:
    """All vertices within ``depth`` of some source, sources included.

    ``forbidden`` vertices are treated as deleted: paths may not pass through
    them and they are never reported. A source inside ``forbidden`` or an
    empty source set is an :class:`InputError`.
    """
    src = sorted(set(sources))
    if not src:
        raise InputError("bfs_limited needs at least one source")
    if depth < 0:
        raise InputError(f"depth must be non-negative, got {depth}")
    for s in src:
        _check_vertex(g, s)
        if s in forbidden:
            raise InputError(f"source {s} is in the forbidden set")
    dist: dict[int, int] = {s: 0 for s in src}
    queue: deque[int] = deque(src)
    while queue:
        u = queue.popleft()
        du = dist[u]
        if du == depth:
            continue
        for w in g.adj[u]:
            if w not in dist and w not in forbidden:
                dist[w] = du + 1
                queue.append(w)
    return set(dist)


def distances_from(
    g: Graph,
    source: int,
    cap: int,
    *,
    forbidden: frozenset[int] | set[int] = frozenset(),
) -> dict[int, int]:
    """BFS distance map from ``source``, cut off beyond ``cap``."""
    _check_vertex(g, source)
    if source in forbidden:
        raise InputError(f"source {source} is in the forbidden set")
    dist = {source: 0}
    queue: deque[int] = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if du == cap:
            continue
        for w in g.adj[u]:
            if w not in dist and w not in forbidden:
                dist[w] = du + 1
                queue.append(w)
    return dist


def distance_vector(
    g: Graph, v: int, targets: Sequence[int], cap: int
) -> tuple[float, ...]:
    """Distances from ``v`` to each target in order, capped at ``cap``.

    Entries farther than ``cap`` (or unreachable) come back as ``INF``; the
    result is a plain tuple so same-vector classes can be bucketed by
    equality.
    """
    if cap < 0:
        raise InputError(f"cap must be non-negative, got {cap}")
    dist = distances_from(g, v, cap)
    return tuple(dist.get(t, INF) for t in targets)


def is_r_independent(
    g: Graph,
    vertices: Iterable[int],
    r: int,
    forbidden: frozenset[int] | set[int] = frozenset(),
) -> bool:
    """True when the vertices are pairwise more than ``r`` apart in
    ``G - forbidden``.

    The set must be disjoint from ``forbidden`` (:class:`InputError`
    otherwise). Singletons and the empty set are trivially independent.
    """
    vs = sorted(set(vertices))
    overlap = [v for v in vs if v in forbidden]
    if overlap:
        raise InputError(f"vertices {overlap} are in the forbidden set")
    if r < 0:
        raise InputError(f"radius must be non-negative, got {r}")
    member = set(vs)
    for v in vs:
        reached = bfs_limited(g, [v], r, forbidden=forbidden)
        reached.discard(v)
        if reached & member:
            return False
    return True


@dataclass(eq=False)
class Contraction:
    """Result of contracting disjoint balls: the minor and both directions of
    the vertex correspondence.

    H-vertices ``0..len(centers)-1`` are the contracted balls in ascending
    center order; the rest are surviving original vertices in ascending id
    order. ``h_of`` maps every non-dropped original vertex to its H-vertex
    (ball members map to their ball).
    """

    graph: Graph
    centers: tuple[int, ...]
    singletons: tuple[int, ...]
    h_of: Mapping[int, int]

    def is_ball(self, h: int) -> bool:
        return h < len(self.centers)

    def base(self, h: int) -> int:
        """The original vertex an H-vertex stands for (a ball's center)."""
        if h < len(self.centers):
            return self.centers[h]
        return self.singletons[h - len(self.centers)]


def contract_balls(
    g: Graph,
    centers: Sequence[int],
    depth: int,
    avoid: frozenset[int] | set[int] = frozenset(),
    drop_avoid: bool = True,
) -> Contraction:
    """Contract the radius-``depth`` balls around ``centers`` in ``G - avoid``.

    The balls must be pairwise disjoint; a vertex within ``depth`` of two
    centers raises :class:`InputError` naming the violating pair. Vertices in
    no ball survive as singletons; ``avoid`` vertices are dropped from the
    minor when ``drop_avoid`` is set and kept as singletons otherwise (they
    never join a ball either way). Edges of the minor connect two H-vertices
    whenever any original edge runs between their vertex sets.
    """
    cs = sorted(centers)
    if not cs:
        raise InputError("contract_balls needs at least one center")
    if len(set(cs)) != len(cs):
        dupes = sorted({v for v in cs if cs.count(v) > 1})
        raise InputError(f"duplicate centers {dupes}")
    if depth < 0:
        raise InputError(f"depth must be non-negative, got {depth}")
    bad = [v for v in cs if v in avoid]
    if bad:
        raise InputError(f"centers {bad} are in the avoid set")
    for v in cs:
        _check_vertex(g, v)

    owner: dict[int, int] = {}
    dist: dict[int, int] = {}
    queue: deque[int] = deque()
    for v in cs:
        owner[v] = v
        dist[v] = 0
        queue.append(v)
    while queue:
        u = queue.popleft()
        du = dist[u]
        if du == depth:
            continue
        for w in g.adj[u]:
            if w in avoid:
                continue
            if w not in owner:
                owner[w] = owner[u]
                dist[w] = du + 1
                queue.append(w)
            elif owner[w] != owner[u] and du + 1 <= depth:
                pair = tuple(sorted((owner[w], owner[u])))
                raise InputError(
                    f"balls of centers {pair[0]} and {pair[1]} overlap at vertex {w}"
                )

    singles = tuple(
        v
        for v in range(g.n)
        if v not in owner and (not drop_avoid or v not in avoid)
    )
    h_of: dict[int, int] = {}
    ball_index = {center: i for i, center in enumerate(cs)}
    for v, center in owner.items():
        h_of[v] = ball_index[center]
    for j, v in enumerate(singles):
        h_of[v] = len(cs) + j

    h_n = len(cs) + len(singles)
    h_edges: set[tuple[int, int]] = set()
    for u, v in g.edges():
        hu = h_of.get(u)
        hv = h_of.get(v)
        if hu is None or hv is None or hu == hv:
            continue
        h_edges.add((hu, hv) if hu < hv else (hv, hu))
    return Contraction(
        graph=build_graph(h_n, sorted(h_edges)),
        centers=tuple(cs),
        singletons=singles,
        h_of=h_of,
    )


def adjacency_bitsets(g: Graph) -> list[int]:
    """Open neighborhoods as arbitrary-precision bitmasks (cached on ``g``)."""
    if g._bits is None:
        bits = []
        for v in range(g.n):
            mask = 0
            for u in g.adj[v]:
                mask |= 1 << u
            bits.append(mask)
        g._bits = bits
    return g._bits


def csr_arrays(g: Graph):
    """Adjacency in CSR form (numpy int32 ``indptr``/``indices``), cached.

    This is the layout the native kernels consume; built lazily so pure
    callers never pay for it.
    """
    if g._csr is None:
        import numpy as np

        indptr = np.zeros(g.n + 1, dtype=np.int32)
        for v in range(g.n):
            indptr[v + 1] = indptr[v] + len(g.adj[v])
        indices = np.empty(int(indptr[-1]), dtype=np.int32)
        at = 0
        for v in range(g.n):
            for u in g.adj[v]:
                indices[at] = u
                at += 1
        g._csr = (indptr, indices)
    return g._csr
