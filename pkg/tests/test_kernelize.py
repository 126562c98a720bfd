"""Domination-core sieve, dominator reduction, and kernel construction.

Small-case expectations (stars, triangle, short paths) were worked out by
hand before freezing: on a star the center plus k+1 leaves survive the
sieve, Z-Z edges are dropped from the kernel, and the gadget contributes
exactly one forced extra center (hence budget k + 1).
"""

import itertools

import pytest

from quasiwide.errors import ConfigError
from quasiwide.generators import GenSpec, generate
from quasiwide.graph import build_graph, distance_vector, distances_from
from quasiwide.kernelize import (
    CoreConfig,
    build_kernel,
    domination_core,
    find_irrelevant_dominatee,
    kernelize,
    reduce_dominators,
)
from quasiwide.solvers import exact_drds


def star(p):
    return generate(GenSpec("star", {"p": p}))


def path_graph(n):
    return generate(GenSpec("path", {"n": n}))


def r_dominates(g, X, targets, r):
    covered = set()
    for x in X:
        covered |= set(distances_from(g, x, r))
    return set(targets) <= covered


def core_is_sound(g, Z, r, k):
    """Every budget-k set that r-dominates Z also r-dominates all of V."""
    for X in itertools.chain.from_iterable(
        itertools.combinations(range(g.n), size) for size in range(k + 1)
    ):
        if r_dominates(g, X, Z, r) and not r_dominates(g, X, range(g.n), r):
            return False
    return True


def test_config_defaults_and_validation():
    cfg = CoreConfig(r=1, k=1)
    assert cfg.effective_ell == max(4 * 3 * 9, 64)
    assert CoreConfig(r=2, k=3, ell=32).effective_ell == 32
    with pytest.raises(ConfigError):
        CoreConfig(r=0, k=1)
    with pytest.raises(ConfigError):
        CoreConfig(r=1, k=0)
    with pytest.raises(ConfigError):
        CoreConfig(r=1, k=2, ell=3)  # ell must be at least k + 2


def test_find_irrelevant_below_threshold_is_none():
    g = star(10)
    cfg = CoreConfig(r=1, k=1, ell=16)
    assert find_irrelevant_dominatee(g, list(range(g.n)), cfg) is None


def test_find_irrelevant_on_star():
    g = star(10)
    cfg = CoreConfig(r=1, k=1, ell=4)
    rem = find_irrelevant_dominatee(g, list(range(g.n)), cfg)
    assert rem.w == 1
    assert rem.bucket == (1, 2, 3)
    assert rem.anchors == (0,)
    assert rem.vector == (1,)
    assert rem.w in rem.bucket
    assert len(rem.bucket) >= cfg.k + 2


def test_core_on_star_lands_on_threshold():
    g = star(10)
    cfg = CoreConfig(r=1, k=1, ell=4)
    core = domination_core(g, cfg, batch=True)
    assert sorted(core.Z) == [0, 1, 2, 10]
    assert core_is_sound(g, core.Z, 1, 1)


def test_single_mode_matches_batch_as_a_core():
    g = star(10)
    cfg = CoreConfig(r=1, k=1, ell=4)
    single = domination_core(g, cfg, batch=False)
    batch = domination_core(g, cfg, batch=True)
    assert len(single.Z) == len(batch.Z)
    assert core_is_sound(g, single.Z, 1, 1)
    # one vertex removed per log record in single mode
    assert len(single.removal_log) == 11 - len(single.Z)


def test_removal_log_is_auditable():
    g = generate(GenSpec("stars", {"k": 2, "p": 6}))
    cfg = CoreConfig(r=1, k=2, ell=6)
    core = domination_core(g, cfg, batch=True)
    assert sorted(core.Z) == [0, 1, 2, 3, 7, 8, 9, 10]
    assert len(core.removal_log) == 6
    removed = {rec.w for rec in core.removal_log}
    assert removed == set(range(g.n)) - core.Z
    for rec in core.removal_log:
        assert rec.w in rec.bucket
        assert len(rec.bucket) >= cfg.k + 2
        # bucket members genuinely share their distance vector to the anchors
        vecs = {distance_vector(g, v, rec.anchors, 2 * cfg.r) for v in rec.bucket}
        assert len(vecs) == 1


def test_core_soundness_sweep():
    cases = [
        (build_graph(3, [(0, 1), (1, 2), (0, 2)]), 1, 1),
        (path_graph(9), 2, 1),
        (star(8), 1, 2),
        (generate(GenSpec("grid", {"w": 4, "h": 3})), 1, 2),
        (generate(GenSpec("random_degenerate", {"n": 12, "c": 2, "seed": 3})), 2, 2),
    ]
    for g, r, k in cases:
        cfg = CoreConfig(r=r, k=k, ell=k + 2)
        for batch in (False, True):
            core = domination_core(g, cfg, batch=batch)
            assert core_is_sound(g, core.Z, r, k)


def test_reduce_dominators_star():
    g = star(10)
    core_z = [0, 1, 2, 10]
    reps = reduce_dominators(g, core_z, 1)
    assert sorted(reps.Y) == [0, 1, 2, 3, 10]
    # every vertex maps to a representative with the same Z-projection
    for u in range(g.n):
        rep = reps.class_of[u]
        mine = {z for z in core_z if u in distances_from(g, z, 1)}
        assert set(reps.projection[rep]) == mine


def test_reduce_dominators_collapses_twin_leaves():
    # K_{1,5} with Z = the leaves: every leaf sees only itself, the center
    # sees all of Z, so there are |Z| + 1 = 6 classes
    g = star(5)
    reps = reduce_dominators(g, [1, 2, 3, 4, 5], 1)
    assert len(reps.Y) == 6


def test_reduce_dominators_empty_z():
    g = star(3)
    reps = reduce_dominators(g, [], 1)
    assert list(reps.Y) == [0]
    assert all(reps.class_of[u] == 0 for u in range(g.n))


def test_kernel_star_frozen():
    g = star(10)
    ki = kernelize(g, 1, 1, CoreConfig(r=1, k=1, ell=4))
    assert ki.graph.n == 7
    assert ki.k_new == 2
    assert ki.projection_ok
    assert ki.z_ids == {0: 0, 1: 1, 2: 2, 10: 4}
    assert ki.y_ids == {0: 0, 1: 1, 2: 2, 3: 3, 10: 4}
    assert (ki.gadget_v, ki.gadget_v_prime) == (5, 6)
    assert ki.gadget_internals == () and ki.path_internals == ()
    assert sorted(ki.graph.edges()) == [
        (0, 1), (0, 2), (0, 3), (0, 4), (3, 5), (5, 6),
    ]


def test_kernel_drops_z_z_edges():
    g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    ki = kernelize(g, 1, 1, CoreConfig(r=1, k=1, ell=4))
    # Z = all of K3, Y = {0}: H keeps y-z adjacencies 0-1, 0-2 but not the
    # Z-Z edge 1-2; the gadget pair hangs off separately
    assert sorted(ki.z_ids) == [0, 1, 2]
    assert sorted(ki.y_ids) == [0]
    assert sorted(ki.graph.edges()) == [(0, 1), (0, 2), (3, 4)]
    assert (ki.gadget_v, ki.gadget_v_prime) == (3, 4)


def test_kernel_size_identity():
    for g, r, k in [
        (star(10), 1, 1),
        (path_graph(9), 2, 1),
        (generate(GenSpec("grid", {"w": 5, "h": 4})), 1, 2),
    ]:
        ki = kernelize(g, r, k, CoreConfig(r=r, k=k, ell=k + 2))
        base = set(ki.z_ids.values()) | set(ki.y_ids.values())
        assert ki.graph.n == (
            len(base)
            + 2
            + len(ki.gadget_internals)
            + len(ki.path_internals)
        )
        if r == 1:
            assert not ki.gadget_internals and not ki.path_internals
        assert ki.projection_ok
        assert ki.k_new == k + 1
        gadget = ki.gadget_ids
        assert ki.gadget_v in gadget and ki.gadget_v_prime in gadget


def test_kernel_preserves_decision_small():
    # yes instance: P5 at radius 2 has the center as a lone dominator
    p5 = path_graph(5)
    ki = kernelize(p5, 2, 1, CoreConfig(r=2, k=1, ell=4))
    assert exact_drds(p5, 2, 1) is not None
    assert exact_drds(ki.graph, 2, ki.k_new) is not None
    # no instance: P9 at radius 2 needs two centers
    p9 = path_graph(9)
    ki9 = kernelize(p9, 2, 1, CoreConfig(r=2, k=1, ell=4))
    assert exact_drds(p9, 2, 1) is None
    assert exact_drds(ki9.graph, 2, ki9.k_new) is None
    assert ki9.projection_ok


def test_kernelize_rejects_mismatched_config():
    g = star(4)
    with pytest.raises(ConfigError):
        kernelize(g, 1, 2, CoreConfig(r=1, k=1))
    with pytest.raises(ConfigError):
        kernelize(g, 2, 1, CoreConfig(r=1, k=1))


def test_build_kernel_verifies_projection():
    g = star(6)
    cfg = CoreConfig(r=1, k=1, ell=4)
    core = domination_core(g, cfg)
    reps = reduce_dominators(g, core.Z, 1)
    ki = build_kernel(g, core.Z, reps, 1, 1)
    assert ki.projection_ok
    # BFS in H from each y-copy reaches exactly the copies of its class's
    # Z-projection within distance r
    inv_z = {h: z for z, h in ki.z_ids.items()}
    for y, hy in ki.y_ids.items():
        reached = {
            inv_z[h]
            for h in distances_from(ki.graph, hy, 1)
            if h in inv_z
        }
        assert reached == set(reps.projection[y])
