"""Command line front end.

Exit codes: 0 success, 1 decision "no", 2 input error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import exact, greedy, reductions, sat
from .graph import Graph, GraphFormatError, parse_graph, serialize_graph
from .reach import as_total_order, evaluate_order, format_order, parse_order

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str, fmt: str) -> Graph:
    try:
        return parse_graph(_read(path), fmt)
    except (GraphFormatError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_cnf(path: str) -> sat.CnfFormula:
    try:
        return sat.parse_cnf(_read(path))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def _emit(args, payload: dict) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
        return
    for key, value in payload.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
            if len(value) > 100:
                value = value[:97] + "..."
        print(f"{key}: {value}")


def _budget(args) -> exact.SearchBudget:
    return exact.SearchBudget(max_nodes=args.budget_nodes, max_seconds=args.budget_seconds)


# --- subcommands ---------------------------------------------------------------


def cmd_order(args) -> int:
    g = _load_graph(args.graph, args.graph_format)
    result = greedy.bounded_coloring(g, args.r)
    payload = {
        "r": args.r,
        "n": g.n,
        "col": result.report.col,
        "wcol": result.report.wcol,
        "max_est_seen": result.max_est_seen,
        "order": result.order,
    }
    k = result.max_est_seen
    if args.exact_adm:
        res = exact.minimize(g, args.r, "adm", _budget(args), workers=args.threads)
        if res.value is None:
            payload["adm_bracket"] = list(res.bracket)
        else:
            k = res.value
            payload["adm"] = k
    payload["bound_check"] = greedy.bound_check(result, k)
    if args.out:
        _write(args.out, format_order(result.order))
        payload["order_file"] = args.out
    _emit(args, payload)
    return EXIT_OK


def cmd_compute(args) -> int:
    g = _load_graph(args.graph, args.graph_format)
    budget = _budget(args)
    symmetry = not args.no_symmetry
    if args.k is not None:
        res = exact.decide(g, args.r, args.param, args.k, budget, symmetry=symmetry, workers=args.threads)
        _emit(args, res.to_dict())
        return {exact.Answer.YES: EXIT_OK, exact.Answer.NO: EXIT_NO}.get(res.answer, EXIT_BUDGET)
    res = exact.minimize(g, args.r, args.param, budget, symmetry=symmetry, workers=args.threads)
    _emit(args, res.to_dict())
    return EXIT_OK if res.exact else EXIT_BUDGET


def cmd_eval(args) -> int:
    g = _load_graph(args.graph, args.graph_format)
    try:
        order = parse_order(_read(args.order))
        sigma = as_total_order(g, order)
    except ValueError as exc:
        raise InputError(f"{args.order}: {exc}") from None
    payload = evaluate_order(g, sigma, args.r).to_dict()
    if args.param == "adm" or args.with_adm:
        payload["adm"] = exact.order_value(g, order, args.r, "adm")
    _emit(args, payload)
    return EXIT_OK


def cmd_reduce(args) -> int:
    phi = _load_cnf(args.cnf)
    try:
        rg = reductions.build(phi, args.kind, args.r)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    audit = reductions.audit_structure(rg)
    payload = rg.metadata()
    payload["audit_ok"] = audit.ok
    text = serialize_graph(rg.graph, args.graph_out_format)
    if args.out_graph:
        _write(args.out_graph, text)
        payload["graph_file"] = args.out_graph
    else:
        payload["graph"] = text
    if args.out_roles:
        _write(args.out_roles, rg.roles_json())
        payload["roles_file"] = args.out_roles
    if args.witness:
        try:
            values = sat.parse_assignment(_read(args.witness), phi.n)
            order = reductions.witness_order(rg, values)
        except ValueError as exc:
            raise InputError(f"{args.witness}: {exc}") from None
        value = reductions.witness_value(rg, order)
        payload["witness"] = {
            "parameter": rg.parameter,
            "value": value,
            "threshold": rg.threshold,
            "meets_threshold": value <= rg.threshold,
            "order": order,
        }
        if args.order_out:
            _write(args.order_out, format_order(order))
            payload["witness"]["order_file"] = args.order_out
    _emit(args, payload)
    return EXIT_OK


def cmd_sat(args) -> int:
    phi = _load_cnf(args.cnf)
    payload = {"transform": args.transform, "n_before": phi.n, "m_before": phi.m}
    try:
        if args.transform == "normalize2c3":
            norm = sat.normalize_to_2clause3sat(phi)
            out = norm.formula
            payload.update(
                gadgets=norm.gadgets,
                unsatisfiable=norm.unsatisfiable,
                fixed={str(k): v for k, v in sorted(norm.fixed.items())},
            )
            if args.map_out:
                _write(args.map_out, json.dumps({str(k): v for k, v in norm.var_map.items()}, indent=1))
                payload["map_file"] = args.map_out
        else:
            out = sat.repair_exact_rsat(phi, args.r)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    payload.update(n_after=out.n, m_after=out.m)
    if args.out:
        _write(args.out, out.to_dimacs())
        payload["cnf_file"] = args.out
    else:
        payload["cnf"] = out.to_dimacs()
    _emit(args, payload)
    return EXIT_OK


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    edges = [(u, v) for u in range(args.n) for v in range(u + 1, args.n) if rng.random() < args.p]
    g = Graph.from_edges(args.n, edges)
    text = serialize_graph(g, args.graph_out_format)
    if args.out:
        _write(args.out, text)
        _emit(args, {"n": g.n, "m": g.m, "seed": args.seed, "graph_file": args.out})
    else:
        sys.stdout.write(text)
    return EXIT_OK


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--threads", type=int, default=1, help="worker processes for exact search")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget-nodes", type=int, default=5_000_000)
    common.add_argument("--budget-seconds", type=float, default=None)
    common.add_argument("--graph-format", choices=("auto", "dimacs", "edge_list"), default="auto")

    def radius(text: str) -> int:
        r = int(text)
        if r < 1:
            raise argparse.ArgumentTypeError("radius must be >= 1")
        return r

    p = argparse.ArgumentParser(prog="colnum", description="Generalized coloring numbers toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("order", parents=[common], help="greedy order by estimated backconnectivity")
    s.add_argument("graph")
    s.add_argument("--r", type=radius, required=True)
    s.add_argument("--out", help="write the order here")
    s.add_argument("--exact-adm", action="store_true", help="check the bounds against exact adm_r")
    s.set_defaults(func=cmd_order)

    s = sub.add_parser("compute", parents=[common], help="exact decision (--k) or minimization")
    s.add_argument("graph")
    s.add_argument("--r", type=radius, required=True)
    s.add_argument("--param", choices=exact.PARAMS, required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--no-symmetry", action="store_true", help="disable twin symmetry breaking")
    s.set_defaults(func=cmd_compute)

    s = sub.add_parser("eval", parents=[common], help="reach/wreach of a given order")
    s.add_argument("graph")
    s.add_argument("order")
    s.add_argument("--r", type=radius, required=True)
    s.add_argument("--param", choices=exact.PARAMS, default=None)
    s.add_argument("--with-adm", action="store_true", help="also report adm_r of the order")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("reduce", parents=[common], help="build G(phi) from a CNF formula")
    s.add_argument("cnf")
    s.add_argument("--kind", choices=reductions.KINDS, required=True)
    s.add_argument("--r", type=radius)
    s.add_argument("--out-graph")
    s.add_argument("--graph-out-format", choices=("edge_list", "dimacs"), default="edge_list")
    s.add_argument("--out-roles")
    s.add_argument("--witness", help="satisfying assignment (signed literals)")
    s.add_argument("--order-out", help="write the witness order here")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("sat", parents=[common], help="CNF transformations")
    s.add_argument("transform", choices=("normalize2c3", "exact-r"))
    s.add_argument("cnf")
    s.add_argument("--r", type=radius, default=3)
    s.add_argument("--out")
    s.add_argument("--map-out", help="variable map sidecar (normalize2c3)")
    s.set_defaults(func=cmd_sat)

    s = sub.add_parser("gen", parents=[common], help="random G(n, p) graph")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--out")
    s.add_argument("--graph-out-format", choices=("edge_list", "dimacs"), default="edge_list")
    s.set_defaults(func=cmd_gen)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "threads", 1) < 1:
        print("colnum: --threads must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"colnum: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
