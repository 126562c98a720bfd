"""Command-line front end.

Subcommands: ``gen`` (emit a generated graph as an edge list), ``uqw``,
``indiscernible``, ``ladder``, ``core``, ``kernelize``, ``solve``, and
``bench``. Every command except ``gen`` prints a JSON report to stdout with
a fixed shape: command echo, input summary, per-stage timings in
milliseconds, result payload, and verification flags. Commands that produce
a mathematical object re-verify it before exiting 0.

Exit codes: 0 success, 1 input error, 2 algorithmic failure with a
certificate (density refusals, failed verification), 3 decision-problem
"no". Passing ``--deterministic`` zeroes every timing field and forces a
single worker so reruns are byte-identical; set the ``QUASIWIDE_LOG``
environment variable to any non-empty value for stage logs on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterator, Sequence

from .errors import (
    ConfigError,
    DensityError,
    InfeasibleError,
    InputError,
    KernelBuildError,
)
from .generators import GenSpec, generate
from .graph import Graph, bfs_limited, distance_vector
from .io import (
    edge_list_text,
    kernel_text,
    load_graph,
    load_id_list,
)
from .kernelize import (
    CoreConfig,
    DominationCore,
    build_kernel,
    domination_core,
    reduce_dominators,
)
from .logic import delta_k, extract_indiscernible, is_indiscernible, ladder_index
from .solvers import SteinerInstance, brute_cds, cds_fpt, dreyfus_wagner, exact_drds
from .uqw import UqwConfig, uqw_split, uqw_verify

_VERIFY_INPUT_BOUND = 64
_VERIFY_KERNEL_BOUND = 512


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; this package reserves 2 for
    algorithmic failures, so usage problems become input errors instead."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise InputError(message)


class _Stages:
    """Stage timer; deterministic mode records every duration as 0.0."""

    def __init__(self, deterministic: bool) -> None:
        self.deterministic = deterministic
        self.timings: dict[str, float] = {}

    @contextmanager
    def __call__(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        yield
        elapsed = (time.perf_counter() - start) * 1000.0
        self.timings[name] = 0.0 if self.deterministic else round(elapsed, 3)


def _graph_summary(g: Graph) -> dict[str, int]:
    return {"n": g.n, "m": g.m, "degeneracy": g.c}


def _emit(report: dict[str, Any]) -> None:
    sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")


def _report(
    command: str,
    options: dict[str, Any],
    g: Graph | None,
    stages: _Stages,
    result: dict[str, Any],
    verified: dict[str, bool] | None,
) -> dict[str, Any]:
    report: dict[str, Any] = {
        "command": command,
        "options": options,
        "timings_ms": stages.timings,
        "result": result,
    }
    if g is not None:
        report["input"] = _graph_summary(g)
    if verified is not None:
        report["verified"] = verified
    return report


def _parse_params(text: str) -> dict[str, int]:
    params: dict[str, int] = {}
    if not text:
        return params
    for part in text.split(","):
        if "=" not in part:
            raise InputError(f"parameter {part!r} is not of the form name=value")
        key, _, value = part.partition("=")
        key = key.strip()
        try:
            params[key] = int(value)
        except ValueError:
            raise InputError(f"parameter {key!r} has non-integer value {value!r}") from None
    return params


def _parse_int_list(text: str, what: str) -> list[int]:
    """Accepts '2,3,5' and '2..6' range shorthand."""
    values: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo_s, _, hi_s = part.partition("..")
            try:
                lo, hi = int(lo_s), int(hi_s)
            except ValueError:
                raise InputError(f"bad {what} range {part!r}") from None
            if hi < lo:
                raise InputError(f"empty {what} range {part!r}")
            values.extend(range(lo, hi + 1))
        else:
            try:
                values.append(int(part))
            except ValueError:
                raise InputError(f"bad {what} value {part!r}") from None
    if not values:
        raise InputError(f"no {what} values given")
    return values


def _uqw_config(args: argparse.Namespace) -> UqwConfig:
    return UqwConfig(
        s_max=args.s_max,
        theta=args.theta,
        delta_k=args.delta_k,
        delta_cap=args.delta_cap,
        max_rounds=args.max_rounds,
    )


def _core_config(args: argparse.Namespace) -> CoreConfig:
    return CoreConfig(r=args.r, k=args.k, ell=args.ell, uqw=_uqw_config(args))


def _load_vertex_spec(spec: str, g: Graph) -> list[int]:
    if spec == "all":
        return list(range(g.n))
    return load_id_list(spec)


def _recheck_core(g: Graph, core: DominationCore, cfg: CoreConfig) -> bool:
    """Structural audit of the sieve log: every removal must cite a bucket of
    k + 2 lookalikes with identical capped distance vectors, and the final Z
    must account for exactly the logged removals."""
    removed = set()
    for rec in core.removal_log:
        if len(rec.bucket) < cfg.k + 2 or rec.w not in rec.bucket:
            return False
        vectors = {
            distance_vector(g, b, rec.anchors, 2 * cfg.r) for b in rec.bucket
        }
        if len(vectors) != 1:
            return False
        removed.add(rec.w)
    if removed & core.Z:
        return False
    return len(core.Z) + len(removed) == g.n


def _verify_drds(g: Graph, solution: set[int], r: int) -> bool:
    if g.n == 0:
        return not solution
    if not solution:
        return False
    return len(bfs_limited(g, sorted(solution), r)) == g.n


def _verify_cds(g: Graph, solution: set[int]) -> bool:
    if g.n == 0:
        return not solution
    if not _verify_drds(g, solution, 1):
        return False
    sol = set(solution)
    start = min(sol)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if w in sol and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == sol


def cmd_gen(args: argparse.Namespace) -> int:
    params = _parse_params(args.params)
    if args.family in ("random_bounded_degree", "random_degenerate"):
        params.setdefault("seed", args.seed)
    g = generate(GenSpec(family=args.family, params=params))
    text = edge_list_text(g)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_uqw(args: argparse.Namespace) -> int:
    stages = _Stages(args.deterministic)
    g = load_graph(args.graph)
    a = _load_vertex_spec(args.A, g)
    options = {"graph": args.graph, "A": args.A, "r": args.r, "m": args.m}
    cfg = _uqw_config(args)
    try:
        with stages("uqw"):
            res = uqw_split(g, a, args.r, args.m, cfg)
    except DensityError as exc:
        result = {
            "failure": "density",
            "message": str(exc),
            "certificate": list(exc.certificate),
            "candidates": list(exc.candidates),
            "rounds_completed": len(exc.rounds),
        }
        _emit(_report("uqw", options, g, stages, result, None))
        return 2
    ok = res.verified and uqw_verify(g, res, a, args.r)
    result = {
        "S": sorted(res.S),
        "B": list(res.B),
        "rounds": [
            {
                "round": log.round,
                "len_before": log.len_before,
                "len_after": log.len_after,
                "s_added": list(log.s_added),
                "survivors": list(log.survivors),
                "contracted_size": log.contracted_size,
            }
            for log in res.rounds
        ],
    }
    _emit(_report("uqw", options, g, stages, result, {"independent": ok}))
    return 0 if ok else 2


def cmd_indiscernible(args: argparse.Namespace) -> int:
    stages = _Stages(args.deterministic)
    g = load_graph(args.graph)
    seq = _load_vertex_spec(args.seq, g)
    delta = delta_k(args.delta)
    options = {"graph": args.graph, "seq": args.seq, "delta": args.delta, "m": args.m}
    with stages("extract"):
        out = extract_indiscernible(g, seq, delta, args.m)
    with stages("oracle"):
        ok = is_indiscernible(g, out, delta)
    result = {"sequence": list(out), "length": len(out), "target": args.m}
    _emit(_report("indiscernible", options, g, stages, result, {"indiscernible": ok}))
    return 0 if ok else 2


def cmd_ladder(args: argparse.Namespace) -> int:
    stages = _Stages(args.deterministic)
    g = load_graph(args.graph)
    options = {"graph": args.graph, "max_k": args.max_k}
    with stages("ladder"):
        index = ladder_index(g, args.max_k)
    result = {"ladder_index": index, "max_k": args.max_k}
    _emit(_report("ladder", options, g, stages, result, None))
    return 0


def cmd_core(args: argparse.Namespace) -> int:
    stages = _Stages(args.deterministic)
    g = load_graph(args.graph)
    cfg = _core_config(args)
    options = {
        "graph": args.graph,
        "r": args.r,
        "k": args.k,
        "ell": cfg.effective_ell,
        "batch": not args.single,
    }
    try:
        with stages("core"):
            core = domination_core(g, cfg, batch=not args.single)
    except DensityError as exc:
        result = {
            "failure": "density",
            "message": str(exc),
            "certificate": list(exc.certificate),
            "candidates": list(exc.candidates),
        }
        _emit(_report("core", options, g, stages, result, None))
        return 2
    ok = _recheck_core(g, core, cfg)
    result = {
        "Z": sorted(core.Z),
        "z_size": len(core.Z),
        "removed": sorted(rec.w for rec in core.removal_log),
    }
    if len(core.Z) == g.n:
        result["note"] = "no shrinkage: core equals the whole vertex set"
    _emit(_report("core", options, g, stages, result, {"removals_justified": ok}))
    return 0 if ok else 2


def cmd_kernelize(args: argparse.Namespace) -> int:
    stages = _Stages(args.deterministic)
    g = load_graph(args.graph)
    cfg = _core_config(args)
    options = {
        "graph": args.graph,
        "r": args.r,
        "k": args.k,
        "ell": cfg.effective_ell,
        "out": args.out,
        "verify": args.verify,
    }
    try:
        with stages("core"):
            core = domination_core(g, cfg, batch=True)
        with stages("reduce"):
            reps = reduce_dominators(g, core.Z, args.r)
        with stages("build"):
            ker = build_kernel(g, core.Z, reps, args.r, args.k)
    except DensityError as exc:
        result = {
            "failure": "density",
            "message": str(exc),
            "certificate": list(exc.certificate),
            "candidates": list(exc.candidates),
        }
        _emit(_report("kernelize", options, g, stages, result, None))
        return 2
    except KernelBuildError as exc:
        result = {
            "failure": "kernel-build",
            "message": str(exc),
            "offending": [list(p) for p in exc.offending],
        }
        _emit(_report("kernelize", options, g, stages, result, None))
        return 2

    Path(args.out).write_text(
        kernel_text(
            ker.graph,
            ker.k_new,
            sorted(ker.z_ids.values()),
            sorted(ker.y_ids.values()),
            list(ker.gadget_ids),
        )
    )
    verified = {
        "projection": ker.projection_ok,
        "removals_justified": _recheck_core(g, core, cfg),
    }
    result = {
        "z_size": len(core.Z),
        "y_size": len(reps.Y),
        "vh": ker.graph.n,
        "k_new": ker.k_new,
        "out": args.out,
    }
    if len(core.Z) == g.n:
        result["note"] = "no shrinkage: core equals the whole vertex set"
    if args.verify:
        if g.n <= _VERIFY_INPUT_BOUND and ker.graph.n <= _VERIFY_KERNEL_BOUND:
            with stages("verify"):
                ans_g = exact_drds(g, args.r, args.k) is not None
                ans_h = exact_drds(ker.graph, args.r, ker.k_new) is not None
            verified["equivalence"] = ans_g == ans_h
            result["answer_input"] = ans_g
            result["answer_kernel"] = ans_h
        else:
            print(
                "warning: --verify skipped, instance above the safety bound",
                file=sys.stderr,
            )
            result["verify_skipped"] = True
    _emit(_report("kernelize", options, g, stages, result, verified))
    return 0 if all(verified.values()) else 2


def cmd_solve(args: argparse.Namespace) -> int:
    stages = _Stages(args.deterministic)
    g = load_graph(args.graph)
    options: dict[str, Any] = {"graph": args.graph, "problem": args.problem}
    result: dict[str, Any]
    verified: dict[str, bool]

    if args.problem == "steiner":
        if args.terminals is None:
            raise InputError("--terminals is required for the steiner problem")
        terminals = _parse_int_list(args.terminals, "terminal")
        options["terminals"] = terminals
        with stages("solve"):
            edges, cost = dreyfus_wagner(SteinerInstance(g, tuple(terminals)))
        vertices = sorted({v for e in edges for v in e} | set(terminals))
        ok = len(edges) == cost and set(terminals) <= set(vertices)
        result = {
            "solution": vertices,
            "cost": cost,
            "edges": sorted([list(e) for e in edges]),
        }
        _emit(_report("solve", options, g, stages, result, {"tree": ok}))
        return 0 if ok else 2

    if args.problem == "drds":
        if args.r is None or args.k is None:
            raise InputError("--r and --k are required for the drds problem")
        options.update({"r": args.r, "k": args.k})
        with stages("solve"):
            sol = exact_drds(g, args.r, args.k)
        if sol is None:
            result = {"solution": "NONE"}
            _emit(_report("solve", options, g, stages, result, None))
            return 3
        ok = len(sol) <= args.k and _verify_drds(g, sol, args.r)
        result = {"solution": sorted(sol)}
        _emit(_report("solve", options, g, stages, result, {"dominating": ok}))
        return 0 if ok else 2

    if args.problem in ("cds", "cds-fpt"):
        if args.k is None:
            raise InputError(f"--k is required for the {args.problem} problem")
        options["k"] = args.k
        try:
            with stages("solve"):
                if args.problem == "cds":
                    sol = brute_cds(g, args.k)
                else:
                    sol = cds_fpt(
                        g, args.k, _uqw_config(args), K_threshold=args.K_threshold
                    )
        except DensityError as exc:
            result = {
                "failure": "density",
                "message": str(exc),
                "certificate": list(exc.certificate),
                "candidates": list(exc.candidates),
            }
            _emit(_report("solve", options, g, stages, result, None))
            return 2
        if sol is None:
            result = {"solution": "NONE"}
            _emit(_report("solve", options, g, stages, result, None))
            return 3
        ok = len(sol) <= args.k and _verify_cds(g, sol)
        result = {"solution": sorted(sol)}
        _emit(
            _report("solve", options, g, stages, result, {"connected_dominating": ok})
        )
        return 0 if ok else 2

    raise InputError(f"unknown problem {args.problem!r}")


def _bench_cell(
    family: str, size: int, args: argparse.Namespace, k: int, deterministic: bool
) -> dict[str, Any]:
    if family == "grid":
        g = generate(GenSpec(family="grid", params={"w": size, "h": size}))
    elif family == "random_degenerate":
        g = generate(
            GenSpec(
                family="random_degenerate",
                params={"n": size, "c": args.c, "seed": args.seed},
            )
        )
    else:
        raise InputError(f"bench supports grid and random_degenerate, not {family!r}")
    cfg = CoreConfig(r=args.r, k=k, ell=args.ell, uqw=_uqw_config(args))
    stages = _Stages(deterministic)
    with stages("core"):
        core = domination_core(g, cfg, batch=True)
    with stages("reduce"):
        reps = reduce_dominators(g, core.Z, args.r)
    with stages("build"):
        ker = build_kernel(g, core.Z, reps, args.r, k)
    return {
        "family": family,
        "n": g.n,
        "r": args.r,
        "k": k,
        "z": len(core.Z),
        "y": len(reps.Y),
        "vh": ker.graph.n,
        "t_core_ms": stages.timings["core"],
        "t_reduce_ms": stages.timings["reduce"],
        "t_build_ms": stages.timings["build"],
        "verified": _recheck_core(g, core, cfg),
        "projection_ok": ker.projection_ok,
    }


_BENCH_COLUMNS = [
    "family",
    "n",
    "r",
    "k",
    "z",
    "y",
    "vh",
    "t_core_ms",
    "t_reduce_ms",
    "t_build_ms",
    "verified",
    "projection_ok",
]


def cmd_bench(args: argparse.Namespace) -> int:
    stages = _Stages(args.deterministic)
    sizes = _parse_int_list(args.sizes, "size")
    ks = _parse_int_list(args.ks, "k")
    cells = [(size, k) for size in sizes for k in ks]
    workers = 1 if args.deterministic else max(1, args.threads)

    def run(cell: tuple[int, int]) -> dict[str, Any]:
        size, k = cell
        return _bench_cell(args.family, size, args, k, args.deterministic)

    with stages("bench"):
        if workers == 1:
            rows = [run(cell) for cell in cells]
        else:
            # Cells are independent; rows keep sweep order no matter which
            # worker finishes first.
            with ThreadPoolExecutor(max_workers=workers) as pool:
                rows = list(pool.map(run, cells))

    def cell_text(value: Any) -> str:
        if isinstance(value, bool):
            return "true" if value else "false"
        return str(value)

    lines = [",".join(_BENCH_COLUMNS)]
    lines.extend(
        ",".join(cell_text(row[col]) for col in _BENCH_COLUMNS) for row in rows
    )
    Path(args.out).write_text("\n".join(lines) + "\n")
    options = {
        "family": args.family,
        "sizes": sizes,
        "r": args.r,
        "ks": ks,
        "out": args.out,
    }
    result = {"rows": len(rows), "out": args.out}
    _emit(_report("bench", options, None, stages, result, None))
    return 0


def _add_uqw_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--s-max", type=int, default=16, help="deletion budget")
    parser.add_argument(
        "--theta", type=float, default=0.5, help="adjacency fraction moving a vertex to S"
    )
    parser.add_argument(
        "--delta-k", type=int, default=None, help="fixed formula arity override"
    )
    parser.add_argument(
        "--delta-cap", type=int, default=4, help="cap on the per-round formula arity"
    )
    parser.add_argument(
        "--max-rounds", type=int, default=None, help="override the round count"
    )


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for random families")
    common.add_argument("--threads", type=int, default=1, help="bench worker count")
    common.add_argument(
        "--deterministic",
        action="store_true",
        help="zero timing fields and force one worker for byte-stable output",
    )

    parser = _Parser(prog="quasiwide", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a graph family")
    p.add_argument("--family", required=True)
    p.add_argument(
        "--params",
        default="",
        help="comma-separated name=value family parameters, e.g. w=5,h=4",
    )
    p.add_argument("--out", default=None, help="edge-list path (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("uqw", parents=[common], help="run the wide-set splitter")
    p.add_argument("--graph", required=True)
    p.add_argument("--A", required=True, help="'all' or a file of vertex ids")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    _add_uqw_flags(p)
    p.set_defaults(func=cmd_uqw)

    p = sub.add_parser(
        "indiscernible", parents=[common], help="extract an indiscernible subsequence"
    )
    p.add_argument("--graph", required=True)
    p.add_argument("--seq", required=True, help="'all' or a file of vertex ids")
    p.add_argument("--delta", type=int, required=True, help="formula family arity")
    p.add_argument("--m", type=int, required=True, help="target length")
    p.set_defaults(func=cmd_indiscernible)

    p = sub.add_parser("ladder", parents=[common], help="ladder-index diagnostic")
    p.add_argument("--graph", required=True)
    p.add_argument("--max-k", type=int, required=True)
    p.set_defaults(func=cmd_ladder)

    p = sub.add_parser("core", parents=[common], help="compute the domination core")
    p.add_argument("--graph", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ell", type=int, default=None, help="core-size threshold")
    p.add_argument(
        "--single", action="store_true", help="remove one vertex per round"
    )
    _add_uqw_flags(p)
    p.set_defaults(func=cmd_core)

    p = sub.add_parser("kernelize", parents=[common], help="build the kernel")
    p.add_argument("--graph", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ell", type=int, default=None, help="core-size threshold")
    p.add_argument("--out", required=True, help="kernel file path")
    p.add_argument(
        "--verify",
        action="store_true",
        help="solve both sides exactly when small enough and compare",
    )
    _add_uqw_flags(p)
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("solve", parents=[common], help="run an exact solver")
    p.add_argument("--graph", required=True)
    p.add_argument(
        "--problem", required=True, choices=["drds", "cds", "cds-fpt", "steiner"]
    )
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--terminals", default=None, help="comma-separated terminal ids")
    p.add_argument(
        "--K-threshold",
        dest="K_threshold",
        type=int,
        default=None,
        help="undominated-size bound that switches cds-fpt to its leaf routine",
    )
    _add_uqw_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", parents=[common], help="kernel-size sweep to CSV")
    p.add_argument("--family", required=True, help="grid or random_degenerate")
    p.add_argument("--sizes", required=True, help="e.g. 8,12,16")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--ks", required=True, help="e.g. 2..6 or 2,4,6")
    p.add_argument("--out", required=True, help="CSV path (fresh file per run)")
    p.add_argument("--ell", type=int, default=None, help="core-size threshold")
    p.add_argument(
        "--c", type=int, default=3, help="degeneracy bound for random_degenerate"
    )
    _add_uqw_flags(p)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (InputError, ConfigError, InfeasibleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (DensityError, KernelBuildError) as exc:
        # Commands format their own certificates; anything reaching here is a
        # failure outside a command body.
        print(f"failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
