"""Pure-Python backend: arbitrary-precision int bitsets.

Semantics reference for the native twin. Formula evaluation intersects
neighbor bitsets starting from the smallest positive-literal list (an empty
positive set degenerates to a full-universe scan, expressed here as the
all-ones mask). The type-tree round follows the insertion scheme described in
``quasiwide.logic``.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from ..graph import Graph, adjacency_bitsets

EDGE, PHI, PSI = 0, 1, 2


def eval_formula(
    g: Graph, kind: int, i_split: int, arity: int, args: Sequence[int]
) -> bool:
    """Evaluate one formula with the given argument tuple.

    kind 0 (edge atom): adjacency of the two arguments. kind 1 (phi): some
    vertex is adjacent to the first ``i_split`` arguments and non-adjacent to
    the rest. kind 2 (psi): the mirrored pattern. Arguments need not be
    distinct; the witness may coincide with a negative-literal argument but
    never with a positive one (no self-adjacency).
    """
    bits = adjacency_bitsets(g)
    if kind == EDGE:
        u, v = args
        return (bits[u] >> v) & 1 == 1
    if kind == PHI:
        pos = args[:i_split]
        neg = args[i_split:]
    else:
        pos = args[i_split:]
        neg = args[:i_split]
    acc = (1 << g.n) - 1
    for x in sorted(pos, key=lambda v: len(g.adj[v])):
        acc &= bits[x]
        if not acc:
            return False
    for x in neg:
        acc &= ~bits[x]
        if not acc:
            return False
    return True


class _Node:
    __slots__ = ("label", "parent", "depth", "children")

    def __init__(self, label: int, parent: "_Node | None", depth: int) -> None:
        self.label = label
        self.parent = parent
        self.depth = depth
        self.children: dict[int, _Node] = {}


def tree_round(
    g: Graph,
    seq: Sequence[int],
    kind: int,
    i_split: int,
    arity: int,
    tail: Sequence[int],
) -> list[int]:
    """One insertion round; returns the longest branch (earliest leaf wins).

    With q = arity - len(tail) free slots the candidate occupies slot q and
    increasing (q-1)-tuples of path labels fill the slots before it. A node's
    signature packs the evaluations over the tuples that end at its parent's
    label, so descent never re-evaluates earlier prefixes; nodes shallower
    than q-1 have no tuples to evaluate and chain.
    """
    tail = tuple(tail)
    q = arity - len(tail)
    t = q - 1
    root = _Node(-1, None, 0)
    best = root
    path: list[int] = []
    for z in seq:
        node = root
        del path[:]
        while True:
            if node is root:
                if t == 0:
                    sig = 1 if eval_formula(g, kind, i_split, arity, (z, *tail)) else 0
                else:
                    sig = 0
            elif t == 0 or node.depth < t:
                sig = 0
            else:
                sig = 0
                bit = 1
                last = path[-1]
                for combo in combinations(path[:-1], t - 1):
                    if eval_formula(g, kind, i_split, arity, (*combo, last, z, *tail)):
                        sig |= bit
                    bit <<= 1
            child = node.children.get(sig)
            if child is None:
                child = _Node(z, node, node.depth + 1)
                node.children[sig] = child
                if child.depth > best.depth:
                    best = child
                break
            node = child
            path.append(node.label)
    branch: list[int] = []
    node = best
    while node is not root:
        branch.append(node.label)
        node = node.parent  # type: ignore[assignment]
    branch.reverse()
    return branch


def nr_masks(g: Graph, r: int) -> list[int]:
    """Closed r-ball of every vertex as a bitmask (index = vertex)."""
    from collections import deque

    masks: list[int] = []
    for v in range(g.n):
        mask = 1 << v
        dist = {v: 0}
        queue: deque[int] = deque([v])
        while queue:
            u = queue.popleft()
            du = dist[u]
            if du == r:
                continue
            for w in g.adj[u]:
                if w not in dist:
                    dist[w] = du + 1
                    mask |= 1 << w
                    queue.append(w)
        masks.append(mask)
    return masks
