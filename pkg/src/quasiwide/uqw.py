"""Wide-set splitter: trade a small deletion set for an r-independent set.

Given a vertex set A and a radius r, :func:`uqw_split` computes a small set S
and a subset B of A that is r-independent in G - S. It alternates
indiscernible-subsequence extraction with ball contraction: each round
extracts a long indiscernible sequence, moves vertices adjacent to a large
fraction of it into S, thins the survivors to pairwise distance > 2i, and
contracts radius-i balls around them so the next round's extraction sees one
vertex per ball. After round ceil(r/2) the survivors are pairwise more than
r apart in G - S.

The splitter refuses dense inputs: when S outgrows its budget the offending
extraction sequence is returned inside a :class:`~quasiwide.errors.DensityError`
as a certificate instead of a result.
"""

from __future__ import annotations

import math
import os
import sys
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ConfigError, DensityError, InputError
from .graph import Graph, bfs_limited, contract_balls, is_r_independent
from .logic import delta_k, extract_indiscernible

_LOG_ENV = "QUASIWIDE_LOG"


def _log(msg: str) -> None:
    if os.environ.get(_LOG_ENV):
        print(f"[uqw] {msg}", file=sys.stderr)


@dataclass(frozen=True)
class UqwConfig:
    """Splitter knobs.

    ``s_max`` bounds |S|; ``theta`` is the adjacency fraction above which a
    vertex is moved into S; ``delta_k`` overrides the per-round formula
    arity (otherwise round i uses min(2i + 2, delta_cap)); ``max_rounds``
    overrides the ceil(r/2) round count.
    """

    s_max: int = 16
    theta: float = 0.5
    delta_k: int | None = None
    delta_cap: int = 4
    max_rounds: int | None = None

    def __post_init__(self) -> None:
        if self.s_max < 0:
            raise ConfigError(f"s_max must be non-negative, got {self.s_max}")
        if not (0.0 < self.theta <= 1.0):
            raise ConfigError(f"theta must lie in (0, 1], got {self.theta}")
        if self.delta_k is not None and self.delta_k < 0:
            raise ConfigError(f"delta_k must be non-negative, got {self.delta_k}")
        if self.delta_cap < 0:
            raise ConfigError(f"delta_cap must be non-negative, got {self.delta_cap}")
        if self.max_rounds is not None and self.max_rounds < 1:
            raise ConfigError(f"max_rounds must be positive, got {self.max_rounds}")

    def arity_for_round(self, i: int) -> int:
        if self.delta_k is not None:
            return self.delta_k
        return min(2 * i + 2, self.delta_cap)


@dataclass(frozen=True)
class RoundLog:
    """One splitter round: sequence length fed to / returned by the
    extraction, the vertices added to S, the pruned survivor set, and the
    size of the graph the extraction ran on."""

    round: int
    len_before: int
    len_after: int
    s_added: tuple[int, ...]
    survivors: tuple[int, ...]
    contracted_size: int


@dataclass(frozen=True)
class UqwResult:
    S: frozenset[int]
    B: tuple[int, ...]
    rounds: tuple[RoundLog, ...]
    verified: bool


def _high_adjacency(g: Graph, targets: Sequence[int], theta: float) -> set[int]:
    """Vertices adjacent to more than ``theta * len(targets)`` of targets."""
    counts: dict[int, int] = {}
    for t in targets:
        for u in g.adj[t]:
            counts[u] = counts.get(u, 0) + 1
    bound = theta * len(targets)
    return {u for u, c in counts.items() if c > bound}


def _prune_spread(g: Graph, seq: Iterable[int], dist: int, forbidden: frozenset[int]) -> list[int]:
    """Greedy thinning in sequence order: keep an element iff every earlier
    kept element is more than ``dist`` away in G - forbidden."""
    kept: list[int] = []
    kept_set: set[int] = set()
    for v in seq:
        reach = bfs_limited(g, [v], dist, forbidden=forbidden)
        if reach.isdisjoint(kept_set):
            kept.append(v)
            kept_set.add(v)
    return kept


def _independent_subsequence(h: Graph, seq: Sequence[int], m: int) -> list[int]:
    """An independent subsequence of ``seq`` in ``h``, via edge-atom
    extraction; if that lands on the clique side of the dichotomy, fall back
    to greedy non-adjacent selection in sequence order."""
    ext = extract_indiscernible(h, list(seq), delta_k(0), m)
    if len(ext) >= 2 and ext[1] in h.adj[ext[0]]:
        kept: list[int] = []
        for v in seq:
            if all(u not in h.adj[v] for u in kept):
                kept.append(v)
        return kept
    return ext


def uqw_split(
    g: Graph, A: Sequence[int], r: int, m: int, cfg: UqwConfig | None = None
) -> UqwResult:
    """Split A into deletions S and an r-independent-in-(G - S) subset B.

    B is a subset of A, disjoint from S, truncated to at most ``m`` elements
    only at the very end. Raises :class:`DensityError` when S would exceed
    ``cfg.s_max``, carrying the extraction sequence that witnessed the
    density.
    """
    if cfg is None:
        cfg = UqwConfig()
    if r < 1:
        raise InputError(f"radius must be positive, got {r}")
    if m < 1:
        raise InputError(f"target size must be positive, got {m}")
    a_list = list(A)
    a_sorted = sorted(set(a_list))
    if not a_sorted:
        raise InputError("A must be non-empty")
    if len(a_sorted) != len(a_list):
        raise InputError("A must not contain duplicates")
    for v in a_sorted:
        if not (0 <= v < g.n):
            raise InputError(f"vertex {v} outside 0..{g.n - 1}")

    total_rounds = cfg.max_rounds if cfg.max_rounds is not None else math.ceil(r / 2)
    logs: list[RoundLog] = []

    # Round 1 works on the input graph directly.
    extracted = extract_indiscernible(g, a_sorted, delta_k(cfg.arity_for_round(1)), m)
    s_new = _high_adjacency(g, extracted, cfg.theta)
    z: set[int] = set(s_new)
    if len(z) > cfg.s_max:
        raise DensityError(
            f"deletion set would reach {len(z)} > s_max={cfg.s_max} in round 1",
            certificate=extracted,
            candidates=z,
            rounds=logs,
        )
    b = _prune_spread(g, (v for v in extracted if v not in z), 2, frozenset(z))
    logs.append(
        RoundLog(
            round=1,
            len_before=len(a_sorted),
            len_after=len(extracted),
            s_added=tuple(sorted(s_new)),
            survivors=tuple(b),
            contracted_size=g.n,
        )
    )
    _log(f"round 1: |A|={len(a_sorted)} extracted={len(extracted)} |S|={len(z)} |B|={len(b)}")
    assert is_r_independent(g, b, 2, frozenset(z))

    for i in range(1, total_rounds):
        if not b:
            break
        # Thin the survivors on a ball-contracted graph so only pairwise
        # distant centers remain, then extract on the rebuilt contraction.
        con = contract_balls(g, b, i, avoid=frozenset(z), drop_avoid=True)
        ball_ids = list(range(len(con.centers)))
        chosen = _independent_subsequence(con.graph, ball_ids, m)
        centers = [con.centers[h] for h in chosen]
        con2 = contract_balls(g, centers, i, avoid=frozenset(z), drop_avoid=True)

        seq = list(range(len(con2.centers)))
        extracted_h = extract_indiscernible(
            con2.graph, seq, delta_k(cfg.arity_for_round(i + 1)), m
        )
        heavy = _high_adjacency(con2.graph, extracted_h, cfg.theta)
        s_new = {con2.base(h) for h in heavy if not con2.is_ball(h)}
        z_next = z | s_new
        cert = [con2.base(h) for h in extracted_h]
        if len(z_next) > cfg.s_max:
            raise DensityError(
                f"deletion set would reach {len(z_next)} > s_max={cfg.s_max} "
                f"in round {i + 1}",
                certificate=cert,
                candidates=z_next,
                rounds=logs,
            )
        z = z_next
        b = _prune_spread(g, (v for v in cert if v not in z), 2 * (i + 1), frozenset(z))
        logs.append(
            RoundLog(
                round=i + 1,
                len_before=len(seq),
                len_after=len(extracted_h),
                s_added=tuple(sorted(s_new)),
                survivors=tuple(b),
                contracted_size=con2.graph.n,
            )
        )
        _log(
            f"round {i + 1}: centers={len(seq)} extracted={len(extracted_h)} "
            f"|S|={len(z)} |B|={len(b)} contracted_n={con2.graph.n}"
        )
        assert is_r_independent(g, b, 2 * (i + 1), frozenset(z))

    b = b[:m]
    verified = is_r_independent(g, b, r, frozenset(z)) if b else True
    return UqwResult(S=frozenset(z), B=tuple(b), rounds=tuple(logs), verified=verified)


def uqw_verify(g: Graph, result: UqwResult, A: Sequence[int], r: int) -> bool:
    """Independent recheck: B inside A, disjoint from S, r-independent in
    G - S. Returns False instead of raising on malformed results."""
    a_set = set(A)
    if not set(result.B) <= a_set:
        return False
    if set(result.B) & result.S:
        return False
    try:
        return is_r_independent(g, result.B, r, frozenset(result.S))
    except InputError:
        return False


__all__ = [
    "UqwConfig",
    "RoundLog",
    "UqwResult",
    "uqw_split",
    "uqw_verify",
]
