"""Command-line front end.

Reports are ordered KEY=VALUE lines, deterministic for fixed argv and
seed.  Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from typing import List, Optional

from . import oracle
from .centralizer import derived_centralizer
from .core import (
    GeneratorOrder,
    act,
    bracket,
    format_element,
    multidegrees,
)
from .equivalence import (
    ThetaInstance,
    build_phi_hom,
    compaction_witness,
    distinguish_cycles,
    eval_theta,
    lambda_zero,
    phi_lambda,
    search_theta_witness,
)
from .errors import AlgebraError, CertificationError, GraphError, ParseError, PcmlError
from .graphs import compaction, cycle_graph, parse_graph_spec, perp_classes
from .suite import run_suite
from .textio import parse_assoc_poly, parse_element, split_top_level

DEFAULT_DEGREE_BOUND = 6
DEGREE_ENV_VAR = "PCML_DEGREE_BOUND"


@dataclass
class Report:
    lines: List[str] = field(default_factory=list)
    status: int = 0

    def add(self, key: str, value) -> None:
        if isinstance(value, bool):
            value = "true" if value else "false"
        self.lines.append(f"{key}={value}")

    def add_raw(self, line: str) -> None:
        self.lines.append(line)


def _degree_bound(args) -> int:
    if getattr(args, "degree", None) is not None:
        return args.degree
    env = os.environ.get(DEGREE_ENV_VAR)
    if env:
        try:
            return int(env)
        except ValueError:
            raise AlgebraError(f"{DEGREE_ENV_VAR} must be an integer, got {env!r}")
    return DEFAULT_DEGREE_BOUND


def _graph_and_order(args):
    graph = parse_graph_spec(args.graph)
    if getattr(args, "order", None):
        try:
            perm = [int(x) for x in args.order.split(",")]
        except ValueError:
            raise AlgebraError(f"bad order {args.order!r}")
        order = GeneratorOrder(perm)
        if order.n != graph.n:
            raise AlgebraError("order length does not match the graph")
    else:
        order = GeneratorOrder.ascending(graph.n)
    return graph, order


def _parse_mdeg(text: str, n: int):
    try:
        delta = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise AlgebraError(f"bad multidegree {text!r}")
    if len(delta) != n or any(d < 0 for d in delta):
        raise AlgebraError(f"multidegree {text!r} does not fit a graph on {n} vertices")
    return delta


def _cmd_nf(args, report: Report) -> None:
    graph, order = _graph_and_order(args)
    element = parse_element(args.element, graph, order)
    report.add("RESULT", format_element(element))


def _cmd_bracket(args, report: Report) -> None:
    graph, order = _graph_and_order(args)
    left = parse_element(args.left, graph, order)
    right = parse_element(args.right, graph, order)
    report.add("RESULT", format_element(bracket(left, right)))


def _cmd_act(args, report: Report) -> None:
    graph, order = _graph_and_order(args)
    element = parse_element(args.element, graph, order)
    poly = parse_assoc_poly(args.poly, graph.n)
    report.add("RESULT", format_element(act(element, poly)))


def _cmd_dim(args, report: Report) -> None:
    graph, order = _graph_and_order(args)
    delta = _parse_mdeg(args.mdeg, graph.n)
    cert = oracle.certify_basis(graph, delta, order)
    vec = ",".join(str(d) for d in delta)
    status = "OK" if cert.ok else "FAIL"
    report.add_raw(f"delta={vec} count={cert.count} dim={cert.dim} {status}")
    if not cert.ok:
        report.status = 1


def _cmd_certify(args, report: Report) -> None:
    graph, order = _graph_and_order(args)
    bound = args.max_degree
    failures = 0
    for degree in range(2, bound + 1):
        for delta in multidegrees(graph.n, degree):
            cert = oracle.certify_basis(graph, delta, order)
            vec = ",".join(str(d) for d in delta)
            status = "OK" if cert.ok else "FAIL"
            report.add_raw(f"delta={vec} count={cert.count} dim={cert.dim} {status}")
            if not cert.ok:
                failures += 1
    report.add("FAILURES", failures)
    if failures:
        report.status = 1


def _cmd_centralizer(args, report: Report) -> None:
    graph, order = _graph_and_order(args)
    g = parse_element(args.element, graph, order)
    slice_ = derived_centralizer(g, _degree_bound(args))
    report.add("ELEMENT", format_element(g))
    report.add("DEGREE_BOUND", slice_.degree_bound)
    report.add("COUNT", len(slice_.elements))
    for k, h in enumerate(slice_.elements):
        report.add(f"BASIS_{k}", format_element(h))


def _cmd_theta(args, report: Report) -> None:
    graph = cycle_graph(args.n)
    order = GeneratorOrder.ascending(args.n)
    texts = split_top_level(args.assign, ",")
    m = args.m if args.m is not None else len(texts)
    if len(texts) != m:
        raise AlgebraError(f"assignment has {len(texts)} entries but m = {m}")
    assignment = [parse_element(t, graph, order) for t in texts]
    result = eval_theta(ThetaInstance(m, graph, order), assignment)
    report.add("RESULT", result.holds)
    if result.failing_atom is not None:
        atom = result.failing_atom
        report.add("FAILING_ATOM", f"{atom.family}({atom.i},{atom.j})")


def _cmd_witness(args, report: Report) -> None:
    if args.graph or args.gamma:
        _cmd_gamma_witness(args, report)
        return
    if args.n is None or args.m is None:
        raise AlgebraError("witness needs either --n/--m or --graph/--gamma")
    found = search_theta_witness(args.n, args.m, mode=args.mode)
    report.add("MODE", found.mode)
    report.add("CHECKED", found.checked)
    report.add("SPACE", found.space)
    if found.mode == "generator-assignments":
        report.add("WITNESS", ",".join(map(str, found.witness)) if found.witness else "none")
        report.add("EXHAUSTED", found.exhausted)
    else:
        report.add("NO_REPEAT_COUNT", len(found.no_repeat_sequences))
        report.add("EXHAUSTED", found.exhausted)


def _cmd_distinguish(args, report: Report) -> None:
    verdict = distinguish_cycles(args.n, args.m)
    if verdict.equivalent:
        report.add("SEPARATED", False)
        report.add("VERDICT", "equivalent")
        report.add("SENTENCE", verdict.sentence)
        return
    report.add("SEPARATED", verdict.separated)
    report.add("SENTENCE", verdict.sentence)
    if verdict.sentence == "Psi":
        report.add("COUNTEREXAMPLE", verdict.detail["counterexample"])
        report.add("COUNTEREXAMPLE_VALUE", format_element(verdict.detail["counterexample_value"]))
    else:
        search = verdict.detail["search"]
        report.add("THETA_IN_LARGE", verdict.detail["theta_holds_in_large"])
        report.add("SEQUENCES_CHECKED", search.checked)
    if not verdict.separated:
        report.status = 1


def _cmd_compact(args, report: Report) -> None:
    graph, _ = _graph_and_order(args)
    result = compaction(graph)
    report.add("VERTICES", result.graph.n)
    report.add("KEPT", ",".join(map(str, result.kept)))
    report.add("EDGES", ";".join(f"{i},{j}" for i, j in result.graph.edge_list()))
    report.add("MAP", ",".join(f"{old}:{new}" for old, new in sorted(result.vertex_map.items())))


def _cmd_perp(args, report: Report) -> None:
    graph, _ = _graph_and_order(args)
    classes = perp_classes(graph)
    report.add("CLASSES", len(classes))
    for k, block in enumerate(classes):
        report.add(f"CLASS_{k}", ",".join(map(str, sorted(block))))


def _parse_merge(args, graph) -> None:
    if args.merge is None:
        return
    try:
        remove, keep = (int(x) for x in args.merge.split(":"))
    except ValueError:
        raise AlgebraError(f"bad merge spec {args.merge!r}, expected REMOVE:KEEP")
    if (remove, keep) != (graph.n - 1, graph.n - 2):
        raise AlgebraError(
            f"the merge pair must be {graph.n - 1}:{graph.n - 2}; relabel the "
            "graph so the merged vertices are the last two"
        )


def _cmd_phi(args, report: Report) -> None:
    graph = parse_graph_spec(args.graph)
    _parse_merge(args, graph)
    hom = build_phi_hom(graph, args.lam)
    element = parse_element(args.element, graph, hom.source_order)
    image = phi_lambda(hom, element)
    report.add("LAMBDA", hom.lam)
    report.add("RESULT", format_element(image))


def _cmd_lambda0(args, report: Report) -> None:
    graph = parse_graph_spec(args.graph)
    _parse_merge(args, graph)
    hom = build_phi_hom(graph, 1)
    element = parse_element(args.element, graph, hom.source_order)
    report.add("LAMBDA0", lambda_zero(element, hom))


def _cmd_gamma_witness(args, report: Report) -> None:
    if not args.graph or not args.gamma:
        raise AlgebraError("gamma-witness needs --graph and --gamma FILE")
    graph = parse_graph_spec(args.graph)
    order = GeneratorOrder.ascending(graph.n)
    with open(args.gamma, "r", encoding="utf-8") as fh:
        texts = [line.strip() for line in fh if line.strip()]
    gamma = [parse_element(t, graph, order) for t in texts]
    result = compaction_witness(graph, gamma)
    report.add("GAMMA_SIZE", result.gamma_size)
    report.add("CLOSURE_SIZE", result.closure_size)
    report.add("NONZERO", result.nonzero_in_closure)
    report.add("REMOVED", result.removed_vertex)
    report.add("KEPT", result.kept_vertex)
    report.add("LAMBDA", result.lam)
    report.add("OK", result.ok)


def _cmd_suite(args, report: Report) -> None:
    results = run_suite(seed=args.seed, fail_fast=True, emit=report.add_raw)
    if any(not r.ok for r in results):
        report.status = 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcml",
        description="Exact computation in graph-defined metabelian Lie algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, graph=False, order=False, degree=False):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", default=None, help="also write the report to a file")
        if graph:
            p.add_argument("--graph", required=True, help="cycle:<n>, complete:<n>, path:<n>, or a JSON file")
        if order:
            p.add_argument("--order", default=None, help="comma list of generators, least first")
        if degree:
            p.add_argument("--degree", type=int, default=None, help=f"degree bound (default {DEFAULT_DEGREE_BOUND}, env {DEGREE_ENV_VAR})")
        return p

    p = common(sub.add_parser("nf", help="normal form of an element"), graph=True, order=True)
    p.add_argument("--element", required=True)

    p = common(sub.add_parser("bracket", help="Lie product of two elements"), graph=True, order=True)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)

    p = common(sub.add_parser("act", help="polynomial action on a derived element"), graph=True, order=True)
    p.add_argument("--element", required=True)
    p.add_argument("--poly", required=True)

    p = common(sub.add_parser("dim", help="certify one multidegree against the oracle"), graph=True, order=True)
    p.add_argument("--mdeg", required=True)

    p = common(sub.add_parser("certify", help="certify all multidegrees up to a degree"), graph=True, order=True)
    p.add_argument("--max-degree", type=int, default=4)

    p = common(sub.add_parser("centralizer", help="derived centralizer of a linear element"), graph=True, order=True, degree=True)
    p.add_argument("--element", required=True)

    p = common(sub.add_parser("theta", help="evaluate the cycle sentence"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--assign", required=True, help="comma-separated element list")

    p = common(sub.add_parser("witness", help="search for a sentence witness"))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--mode", default="generator-assignments", choices=["generator-assignments", "j-sequences"])
    p.add_argument("--graph", default=None)
    p.add_argument("--gamma", default=None)

    p = common(sub.add_parser("distinguish", help="separate two cycle algebras"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    common(sub.add_parser("compact", help="compaction of a graph"), graph=True)
    common(sub.add_parser("perp", help="closed-neighborhood classes"), graph=True)

    p = common(sub.add_parser("phi", help="merge homomorphism image"), graph=True)
    p.add_argument("--merge", default=None, help="REMOVE:KEEP, must be the last two vertices")
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--element", required=True)

    p = common(sub.add_parser("lambda0", help="nonvanishing threshold of an element"), graph=True)
    p.add_argument("--merge", default=None, help="REMOVE:KEEP, must be the last two vertices")
    p.add_argument("--element", required=True)

    p = common(sub.add_parser("gamma-witness", help="finite-set merge witness"), graph=True)
    p.add_argument("--gamma", required=True, help="file with one element per line")

    common(sub.add_parser("suite", help="run the acceptance suite"))
    return parser


COMMANDS = {
    "nf": _cmd_nf,
    "bracket": _cmd_bracket,
    "act": _cmd_act,
    "dim": _cmd_dim,
    "certify": _cmd_certify,
    "centralizer": _cmd_centralizer,
    "theta": _cmd_theta,
    "witness": _cmd_witness,
    "distinguish": _cmd_distinguish,
    "compact": _cmd_compact,
    "perp": _cmd_perp,
    "phi": _cmd_phi,
    "lambda0": _cmd_lambda0,
    "gamma-witness": _cmd_gamma_witness,
    "suite": _cmd_suite,
}


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    report = Report()
    report.add("SEED", args.seed)
    try:
        COMMANDS[args.command](args, report)
    except ParseError as exc:
        report.add("ERROR", exc)
        report.add("POSITION", exc.position)
        report.status = 2
    except (GraphError, AlgebraError) as exc:
        report.add("ERROR", exc)
        report.status = 2
    except CertificationError as exc:
        report.add("ERROR", exc)
        report.status = 1
    except PcmlError as exc:
        report.add("ERROR", exc)
        report.status = 1
    text = "\n".join(report.lines)
    print(text)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return report.status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
