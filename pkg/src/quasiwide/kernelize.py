"""Distance-r dominating set kernel: core sieve, representative reduction,
and kernel construction.

The pipeline shrinks an instance (G, r, k) in three stages:

1. :func:`domination_core` repeatedly finds a "dominatee" vertex whose
   domination is implied by enough lookalikes and deletes it from the set Z
   that still needs to be dominated. Lookalikes are found by splitting a
   window of Z with the wide-set splitter and bucketing the returned spread
   set by capped distance vectors to the splitter's deletion set: a bucket of
   k + 2 vertices with identical vectors cannot all be dominated separately
   by k dominators, so all but k + 1 of them are redundant.
2. :func:`reduce_dominators` groups all vertices of G by which part of Z they
   r-dominate and keeps one representative per class.
3. :func:`build_kernel` assembles a new graph H from copies of Z and the
   representatives, fresh shortest paths realizing each representative's
   projection distances, and a gadget forcing one extra dominator, so that
   G has a distance-r dominating set of size k iff H has one of size k + 1.

Stage outputs carry enough bookkeeping (removal log, projections, id maps)
for every claim to be re-checked by the tests.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import ConfigError, InputError, InternalError, KernelBuildError
from .graph import (
    Graph,
    bfs_limited,
    build_graph,
    distance_vector,
    distances_from,
)
from .uqw import UqwConfig, uqw_split

_LOG_ENV = "QUASIWIDE_LOG"


def _log(msg: str) -> None:
    if os.environ.get(_LOG_ENV):
        print(f"[kernelize] {msg}", file=sys.stderr)


@dataclass(frozen=True)
class CoreConfig:
    """Sieve parameters for radius ``r`` and budget ``k``.

    ``ell`` is the core-size threshold below which the sieve stops looking
    for removable vertices; when omitted it defaults to
    ``max(4 * (k + 2) * (2r + 1)^2, 64)``. ``uqw`` configures the splitter
    used to find lookalike buckets.
    """

    r: int
    k: int
    ell: int | None = None
    uqw: UqwConfig = field(default_factory=UqwConfig)

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ConfigError(f"radius must be positive, got {self.r}")
        if self.k < 1:
            raise ConfigError(f"budget must be positive, got {self.k}")
        if self.ell is not None and self.ell < self.k + 2:
            raise ConfigError(
                f"ell must be at least k + 2 = {self.k + 2}, got {self.ell}"
            )

    @property
    def effective_ell(self) -> int:
        if self.ell is not None:
            return self.ell
        return max(4 * (self.k + 2) * (2 * self.r + 1) ** 2, 64)


@dataclass(frozen=True)
class Removal:
    """A justified removal candidate: ``w`` is the smallest member of a
    ``bucket`` of at least k + 2 vertices sharing the capped distance
    ``vector`` to the ``anchors``."""

    w: int
    bucket: tuple[int, ...]
    anchors: tuple[int, ...]
    vector: tuple[float, ...]


def find_irrelevant_dominatee(
    g: Graph, Z: Iterable[int], cfg: CoreConfig
) -> Removal | None:
    """Search a window of Z for a same-vector bucket big enough to justify a
    removal.

    The window holds the ``ell`` smallest members of Z and doubles up to
    three times when no bucket qualifies (capped at |Z|). The splitter runs
    at radius 2r; its deletion set S anchors the distance vectors, capped at
    2r. When |S| exceeds 4, the split is re-requested once with the target
    size matched to |S|. Returns None when Z is already at or below ``ell``
    or no bucket of k + 2 lookalikes shows up.
    """
    zs = sorted(set(Z))
    for v in zs:
        if not (0 <= v < g.n):
            raise InputError(f"vertex {v} outside 0..{g.n - 1}")
    ell = cfg.effective_ell
    if len(zs) <= ell:
        return None
    k, r = cfg.k, cfg.r
    window = ell
    for _ in range(4):
        a = zs[: min(window, len(zs))]
        m0 = min((k + 2) * (2 * r + 1) ** 4, len(a))
        res = uqw_split(g, a, 2 * r, m0, cfg.uqw)
        if len(res.S) > 4:
            m1 = min((k + 2) * (2 * r + 1) ** len(res.S), len(a))
            if m1 != m0:
                res = uqw_split(g, a, 2 * r, m1, cfg.uqw)
        anchors = tuple(sorted(res.S))
        buckets: dict[tuple[float, ...], list[int]] = {}
        for b in res.B:
            buckets.setdefault(distance_vector(g, b, anchors, 2 * r), []).append(b)
        qualifying = {
            vec: sorted(members)
            for vec, members in buckets.items()
            if len(members) >= k + 2
        }
        if qualifying:
            # Deterministic pick: the qualifying bucket holding the smallest
            # vertex id.
            vec = min(qualifying, key=lambda v: qualifying[v][0])
            bucket = tuple(qualifying[vec])
            return Removal(w=bucket[0], bucket=bucket, anchors=anchors, vector=vec)
        if len(a) == len(zs):
            break
        window *= 2
        _log(f"no qualifying bucket, widening window to {window}")
    _log(
        f"no removable dominatee found (|Z|={len(zs)}, ell={ell}); "
        "core stays above threshold"
    )
    return None


@dataclass(frozen=True)
class RemovalRecord:
    """One logged deletion: the removed vertex, the anchor set S of its
    split, and the full same-vector bucket that justified it."""

    w: int
    anchors: tuple[int, ...]
    bucket: tuple[int, ...]


@dataclass(frozen=True)
class DominationCore:
    Z: frozenset[int]
    removal_log: tuple[RemovalRecord, ...]


def domination_core(g: Graph, cfg: CoreConfig, batch: bool = True) -> DominationCore:
    """Shrink Z = V(G) by deleting justified dominatees until none is found.

    In batch mode each qualifying bucket of size q loses its q - (k + 1)
    largest members at once (largest first), except that Z is never cut
    below ``ell``, so the core lands exactly on the threshold when the
    bucket is big enough. Single mode deletes only the smallest bucket
    member per round. Every deletion is logged with its justification.
    """
    z = set(range(g.n))
    log: list[RemovalRecord] = []
    ell = cfg.effective_ell
    while True:
        rem = find_irrelevant_dominatee(g, z, cfg)
        if rem is None:
            break
        if batch:
            excess = len(rem.bucket) - (cfg.k + 1)
            dd = min(excess, len(z) - ell)
            removed: tuple[int, ...] = tuple(reversed(rem.bucket[-dd:]))
        else:
            removed = (rem.w,)
        for w in removed:
            log.append(RemovalRecord(w=w, anchors=rem.anchors, bucket=rem.bucket))
            z.discard(w)
        _log(f"removed {len(removed)} dominatee(s), |Z|={len(z)}")
    return DominationCore(Z=frozenset(z), removal_log=tuple(log))


@dataclass(frozen=True)
class Representatives:
    """Dominator reduction: ``Y`` holds one vertex per projection class,
    ``projection`` maps each representative to the part of Z it r-dominates,
    and ``class_of`` maps every vertex of G to its representative."""

    Y: frozenset[int]
    projection: Mapping[int, tuple[int, ...]]
    class_of: Mapping[int, int]


def reduce_dominators(g: Graph, Z: Iterable[int], r: int) -> Representatives:
    """Group vertices by their r-projection onto Z; smallest id represents.

    The projection of v is the sorted tuple of members of Z within closed
    distance r of v. An empty graph yields no representatives; an empty Z
    puts every vertex in one class represented by vertex 0.
    """
    if r < 1:
        raise InputError(f"radius must be positive, got {r}")
    zs = sorted(set(Z))
    for v in zs:
        if not (0 <= v < g.n):
            raise InputError(f"vertex {v} outside 0..{g.n - 1}")
    lists: list[list[int]] = [[] for _ in range(g.n)]
    for z in zs:
        for v in bfs_limited(g, [z], r):
            lists[v].append(z)
    reps: dict[tuple[int, ...], int] = {}
    class_of: dict[int, int] = {}
    for v in range(g.n):
        key = tuple(lists[v])
        if key not in reps:
            reps[key] = v
        class_of[v] = reps[key]
    projection = {rep: key for key, rep in reps.items()}
    return Representatives(
        Y=frozenset(reps.values()), projection=projection, class_of=class_of
    )


@dataclass(frozen=True)
class KernelInstance:
    """The built kernel: graph H, the lifted budget, id maps for the copied
    vertices, the gadget ids, and the result of re-verifying projections
    inside H."""

    graph: Graph
    k_new: int
    z_ids: Mapping[int, int]
    y_ids: Mapping[int, int]
    gadget_v: int
    gadget_v_prime: int
    gadget_internals: tuple[int, ...]
    path_internals: tuple[int, ...]
    projection_ok: bool

    @property
    def gadget_ids(self) -> tuple[int, ...]:
        return (self.gadget_v, self.gadget_v_prime) + self.gadget_internals


def _chains_to_graph(n: int, chains: Iterable[tuple[int, ...]]) -> Graph:
    edges = []
    for chain in chains:
        edges.extend(zip(chain, chain[1:]))
    return build_graph(n, edges)


def build_kernel(
    g: Graph, Z: Iterable[int], reps: Representatives, r: int, k: int
) -> KernelInstance:
    """Assemble H from Z- and Y-copies, fresh projection paths, and the
    forcing gadget.

    Copies of Z and Y come first (ascending original id). Each (y, z) pair
    with z in y's projection gets a fresh internal path of length exactly
    dist_G(y, z); a distance above r means the input projection was corrupt
    (:class:`InternalError`). The gadget vertex v grows a fresh path of
    length exactly r to every non-Z vertex of H and to its companion v',
    forcing one dominator of its own while reaching no Z-copy, hence
    ``k_new = k + 1``.

    Projections are re-verified inside H; a shortcut (impossible for fresh
    internal paths, kept as a safety net) triggers up to r rounds of
    subdividing the offending endpoints' incident path edges before giving
    up with :class:`KernelBuildError`.
    """
    if r < 1:
        raise InputError(f"radius must be positive, got {r}")
    if k < 1:
        raise InputError(f"budget must be positive, got {k}")
    z_orig = sorted(set(Z))
    for v in z_orig:
        if not (0 <= v < g.n):
            raise InputError(f"vertex {v} outside 0..{g.n - 1}")
    y_orig = sorted(reps.Y)
    base = sorted(set(z_orig) | set(y_orig))
    idx = {v: i for i, v in enumerate(base)}
    next_id = len(base)

    # Fresh shortest paths realizing each representative's projection.
    path_chains: list[list[int]] = []
    path_internals: list[int] = []
    for y in y_orig:
        dmap = distances_from(g, y, r)
        for z in reps.projection[y]:
            if z == y:
                continue
            d = dmap.get(z)
            if d is None:
                raise InternalError(
                    f"projection pairs {y} with {z} but their distance exceeds {r}"
                )
            internals = list(range(next_id, next_id + d - 1))
            next_id += d - 1
            path_internals.extend(internals)
            path_chains.append([idx[y], *internals, idx[z]])

    gadget_v = next_id
    gadget_v_prime = next_id + 1
    next_id += 2
    z_copies = {idx[z] for z in z_orig}
    targets = [h for h in range(gadget_v) if h not in z_copies]
    targets.append(gadget_v_prime)
    gadget_chains: list[list[int]] = []
    gadget_internals: list[int] = []
    for tgt in targets:
        internals = list(range(next_id, next_id + r - 1))
        next_id += r - 1
        gadget_internals.extend(internals)
        gadget_chains.append([gadget_v, *internals, tgt])

    expected = {
        idx[y]: frozenset(idx[z] for z in reps.projection[y]) for y in y_orig
    }

    def verify(h: Graph) -> list[tuple[int, int]]:
        bad: list[tuple[int, int]] = []
        copy_set = frozenset(z_copies)
        for yh, want in expected.items():
            got = bfs_limited(h, [yh], r) & copy_set
            for zh in sorted(got ^ want):
                bad.append((yh, zh))
        return bad

    h = _chains_to_graph(next_id, path_chains + gadget_chains)
    offending = verify(h)
    rounds_left = r
    while offending and rounds_left > 0:
        # Safety net for projection shortcuts: lengthen every projection
        # path touching an offending endpoint by one subdivision and retry.
        hot = {e for pair in offending for e in pair}
        for chain in path_chains:
            if chain[0] in hot:
                chain.insert(1, next_id)
                path_internals.append(next_id)
                next_id += 1
            if chain[-1] in hot:
                chain.insert(len(chain) - 1, next_id)
                path_internals.append(next_id)
                next_id += 1
        h = _chains_to_graph(next_id, path_chains + gadget_chains)
        offending = verify(h)
        rounds_left -= 1
    if offending:
        back = {i: v for v, i in idx.items()}
        pairs = [(back[yh], back[zh]) for yh, zh in offending]
        raise KernelBuildError(
            f"projection shortcuts persist after {r} subdivision rounds",
            offending=pairs,
        )

    return KernelInstance(
        graph=h,
        k_new=k + 1,
        z_ids={z: idx[z] for z in z_orig},
        y_ids={y: idx[y] for y in y_orig},
        gadget_v=gadget_v,
        gadget_v_prime=gadget_v_prime,
        gadget_internals=tuple(gadget_internals),
        path_internals=tuple(path_internals),
        projection_ok=not offending,
    )


def kernelize(
    g: Graph, r: int, k: int, cfg: CoreConfig | None = None
) -> KernelInstance:
    """Full pipeline: sieve the core, reduce dominators, build the kernel."""
    if cfg is None:
        cfg = CoreConfig(r=r, k=k)
    elif cfg.r != r or cfg.k != k:
        raise ConfigError(
            f"config carries (r={cfg.r}, k={cfg.k}) but kernelize got (r={r}, k={k})"
        )
    core = domination_core(g, cfg, batch=True)
    reps = reduce_dominators(g, core.Z, r)
    return build_kernel(g, core.Z, reps, r, k)


__all__ = [
    "CoreConfig",
    "Removal",
    "RemovalRecord",
    "DominationCore",
    "KernelInstance",
    "Representatives",
    "find_irrelevant_dominatee",
    "domination_core",
    "reduce_dominators",
    "build_kernel",
    "kernelize",
]
