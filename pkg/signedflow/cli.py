"""
Command-line entry point.

Exit codes: 0 success, 1 negative answer (infeasible, nothing found,
verification false, suite failure), 2 usage or validation error, 3 budget
exhausted or undecided, 4 internal contract violation.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from dotenv import load_dotenv
from pydantic import BaseModel

from . import __version__
from .budget import Outcome, SearchBudget
from .catalog import switching_class_representatives
from .config import get_settings
from .exceptions import (
    BudgetExhausted,
    ConfigurationError,
    ContractViolation,
    GuardError,
    ValidationError,
)
from .flows import verify_flow
from .formats import (
    BetaCertificate,
    format_certificate,
    format_embedding,
    format_flow,
    format_signed_graph,
    parse_certificate,
    parse_embedding,
    parse_flow,
    read_graph,
    read_text,
)
from .graph import UNBOUNDED, Orientation, count_inversing_classes, inversing_class_representatives, sign_symbol
from .orientations import (
    EulerianCertificate,
    EulerianForm,
    ModOrientationCertificate,
    PartitionCertificate,
    convert_eulerian_certificate,
    find_beta_orientation,
    find_mod_orientation,
    flow_orientation_transfer,
    orientation_to_partition,
    transfer_graph,
    verify_beta_orientation,
    verify_eulerian_certificate,
    verify_mod_orientation,
    verify_partition_certificate,
)
from .planar import check_duality, dual, fold_once, fold_to_saturation, hom_partition, hom_to_negative_cycle, negative_girth
from .schemas import ChromaticReport, CommandConfig, IndexReport, VerificationReport, fraction_text
from .solver import IndexStatus, circular_chromatic_number, circular_flow_index
from .suites import SuiteBounds, default_searches, default_suites

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3
EXIT_CONTRACT = 4

_STATUS_EXIT = {
    IndexStatus.EXACT: EXIT_OK,
    IndexStatus.UPPER_BOUND: EXIT_OK,
    IndexStatus.INFEASIBLE: EXIT_NEGATIVE,
    IndexStatus.UNKNOWN: EXIT_UNKNOWN,
}


def _signs(signature) -> str:
    return " ".join(sign_symbol(s) for s in signature.signs)


def _emit(args: argparse.Namespace, report: BaseModel, text: str) -> None:
    if args.json:
        print(report.model_dump_json(indent=2))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _write(path: Optional[Path], content: str) -> None:
    if path is not None:
        path.write_text(content, encoding="utf-8")
        logger.info("wrote %s", path)


def _budget(cfg: CommandConfig) -> SearchBudget:
    budget = SearchBudget.from_settings(cfg.max_p)
    update = {}
    if cfg.node_limit is not None:
        update["node_limit"] = cfg.node_limit
    if cfg.time_limit is not None:
        update["time_limit"] = cfg.time_limit
    return budget.model_copy(update=update) if update else budget


def _verification(args, subject: str, ok: bool, detail: str = "", **data: str) -> int:
    report = VerificationReport(subject=subject, ok=ok, detail=detail, data=data)
    _emit(args, report, f"{subject}: {'ok' if ok else 'FAILED'}" + (f" ({detail})" if detail else ""))
    return EXIT_OK if ok else EXIT_NEGATIVE


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------


def cmd_index(args, cfg: CommandConfig) -> int:
    g = read_graph(cfg.graph)
    result = circular_flow_index(g, _budget(cfg))
    report = IndexReport.from_result(result)
    if result.status is IndexStatus.EXACT:
        text = report.value
    elif result.status is IndexStatus.UPPER_BOUND:
        text = f"at most {report.value} ({result.reason})"
    elif result.status is IndexStatus.INFEASIBLE:
        text = f"infeasible: {result.reason}"
    else:
        below = ", ".join(report.undecided)
        text = f"unknown: {result.reason}" + (f"; undecided {below}" if below else "")
    _emit(args, report, text)
    if result.witness is not None:
        _write(args.witness, format_flow(*result.witness))
    if report.tight_cut is not None:
        _write(args.cut_out, report.tight_cut.model_dump_json(indent=2) + "\n")
    return _STATUS_EXIT[result.status]


def cmd_chromatic(args, cfg: CommandConfig) -> int:
    g = read_graph(cfg.graph)
    result = circular_chromatic_number(g, _budget(cfg), numerator_bound=cfg.max_p)
    report = ChromaticReport.from_result(result)
    _emit(args, report, report.value if report.value is not None else f"unknown within p <= {report.numerator_bound}")
    return _STATUS_EXIT[result.status]


def cmd_verify_flow(args, cfg: CommandConfig) -> int:
    g = read_graph(cfg.graph)
    D, f = parse_flow(read_text(cfg.flow), g)
    check = verify_flow(g, D, f)
    detail = "" if check else check.violation.message
    return _verification(args, f"{f.kind.describe()} flow", check.ok, detail)


def cmd_orient(args, cfg: CommandConfig) -> int:
    g = read_graph(cfg.graph)
    budget = _budget(cfg)
    if cfg.ell is not None:
        decision = find_mod_orientation(g, cfg.ell, budget)
        if not decision.found:
            refuted = decision.outcome is Outcome.NONE
            text = f"no modulo {cfg.ell}-orientation" if refuted else "unknown"
            if decision.reason:
                text += f": {decision.reason}"
            _emit(args, VerificationReport(subject="mod-orientation", ok=False, detail=decision.reason), text)
            return EXIT_NEGATIVE if refuted else EXIT_UNKNOWN
        certificate = decision.certificate
        if args.partition:
            certificate = orientation_to_partition(certificate, g)
        text = format_certificate(certificate)
    else:
        beta = parse_certificate(read_text(args.beta), g)
        if not isinstance(beta, BetaCertificate):
            raise ValidationError("--beta expects a 'cert beta' file")
        if cfg.modulus is not None and cfg.modulus != beta.beta.modulus:
            raise ConfigurationError(f"--modulus {cfg.modulus} differs from the file's modulus {beta.beta.modulus}")
        partial = dict(enumerate(beta.orientation.arcs)) if args.keep_arcs and beta.orientation else None
        result = find_beta_orientation(g, beta.beta, partial=partial, budget=budget)
        if not result.found:
            outcome = result.outcome.value
            _emit(args, VerificationReport(subject="beta-orientation", ok=False, detail=outcome), f"beta-orientation: {outcome}")
            return EXIT_NEGATIVE if result.outcome is Outcome.NONE else EXIT_UNKNOWN
        text = format_certificate(BetaCertificate(beta.beta, result.orientation))
    _write(args.out, text)
    _emit(args, VerificationReport(subject="orientation", ok=True, data={"certificate": text}), text)
    return EXIT_OK


def cmd_convert_eulerian(args, cfg: CommandConfig) -> int:
    g = read_graph(cfg.graph)
    certificate = parse_certificate(read_text(cfg.certificate), g)
    if not isinstance(certificate, EulerianCertificate):
        raise ValidationError("expected a 'cert eulerian' file")
    converted = convert_eulerian_certificate(certificate, EulerianForm(args.to), g)
    text = format_certificate(converted)
    _write(args.out, text)
    _emit(args, VerificationReport(subject=converted.form.value, ok=True, data={"certificate": text}), text)
    return EXIT_OK


def cmd_transfer(args, cfg: CommandConfig) -> int:
    g = read_graph(cfg.graph)
    transfer = transfer_graph(g, cfg.p, cfg.q)
    if args.source == "flow":
        D, f = parse_flow(read_text(cfg.certificate), g)
        orientation = flow_orientation_transfer(g, cfg.p, cfg.q, flow=(D, f))
        text = format_certificate(BetaCertificate(transfer.beta, orientation))
        _write(args.host, format_signed_graph(transfer.host))
    else:
        orientation = parse_certificate(read_text(cfg.certificate), transfer.host)
        if isinstance(orientation, BetaCertificate):
            orientation = orientation.orientation
        if not isinstance(orientation, Orientation):
            raise ValidationError("expected an orientation of the transfer multigraph")
        text = format_flow(*flow_orientation_transfer(g, cfg.p, cfg.q, orientation=orientation))
    _write(args.out, text)
    _emit(args, VerificationReport(subject=f"transfer-{args.source}", ok=True, data={"result": text}), text)
    return EXIT_OK


def cmd_dual(args, cfg: CommandConfig) -> int:
    g = read_graph(cfg.graph)
    emb = parse_embedding(read_text(cfg.embedding))
    dual_graph, dual_emb = dual(g, emb)
    _write(args.graph_out, format_signed_graph(dual_graph))
    _write(args.embedding_out, format_embedding(dual_emb))
    data = {"graph": format_signed_graph(dual_graph), "embedding": format_embedding(dual_emb)}
    if not args.check:
        _emit(args, VerificationReport(subject="dual", ok=True, data=data), data["graph"] + "# faces\n" + data["embedding"])
        return EXIT_OK
    result = check_duality(g, emb, _budget(cfg))
    data["flow_index"] = fraction_text(result.flow_index) or "unknown"
    data["chromatic_number"] = fraction_text(result.chromatic_number) or "unknown"
    if result.holds is None:
        _emit(args, VerificationReport(subject="duality", ok=False, detail="undecided", data=data), "duality: unknown")
        return EXIT_UNKNOWN
    return _verification(
        args, "duality", result.holds, f"index {data['flow_index']}, dual chromatic {data['chromatic_number']}", **data
    )


def cmd_hom(args, cfg: CommandConfig) -> int:
    g = read_graph(cfg.graph)
    decision = hom_to_negative_cycle(g, cfg.k, _budget(cfg), negated=args.negated)
    target = f"{'-' if args.negated else ''}C_-{cfg.k}"
    if not decision.found:
        outcome = decision.outcome.value
        _emit(args, VerificationReport(subject=f"hom to {target}", ok=False, detail=outcome), f"no map to {target}: {outcome}")
        return EXIT_NEGATIVE if decision.outcome is Outcome.NONE else EXIT_UNKNOWN
    mapping = decision.mapping
    lines = [f"v {v} -> {image}" for v, image in enumerate(mapping.vertex_image)]
    lines += [f"e {e} -> {image}" for e, image in enumerate(mapping.edge_image)]
    lines.append("switch " + " ".join(map(str, sorted(mapping.switching_set))))
    if args.partition:
        parts, D = hom_partition(g, mapping)
        lines += [f"part {i} " + " ".join(map(str, part)) for i, part in enumerate(parts)]
        lines += [f"o {e} {t} {h}" for e, (t, h) in enumerate(D.arcs)]
    text = "\n".join(lines) + "\n"
    _emit(args, VerificationReport(subject=f"hom to {target}", ok=True, data={"mapping": text}), text)
    return EXIT_OK


def cmd_fold(args, cfg: CommandConfig) -> int:
    g = read_graph(cfg.graph)
    emb = parse_embedding(read_text(cfg.embedding))
    result = fold_to_saturation(g, emb) if args.saturate else fold_once(g, emb, args.face)
    graph_text, emb_text = format_signed_graph(result.graph), format_embedding(result.embedding)
    _write(args.graph_out, graph_text)
    _write(args.embedding_out, emb_text)
    data = {"graph": graph_text, "embedding": emb_text, "vertex_map": " ".join(map(str, result.vertex_map))}
    _emit(args, VerificationReport(subject="fold", ok=True, data=data), graph_text + "# faces\n" + emb_text)
    return EXIT_OK


def cmd_classes(args, cfg: CommandConfig) -> int:
    g = read_graph(cfg.graph)
    if args.switching:
        representatives = list(switching_class_representatives(g))
        kind = "switching"
    else:
        representatives = list(inversing_class_representatives(g))
        kind = "inversing"
    lines = [f"{len(representatives)} {kind} classes"] + [_signs(s) for s in representatives]
    data = {"count": str(len(representatives))}
    if not args.switching:
        data["formula"] = str(count_inversing_classes(g))
    _emit(args, VerificationReport(subject=f"{kind}-classes", ok=True, data=data), "\n".join(lines))
    return EXIT_OK


def cmd_girth(args, cfg: CommandConfig) -> int:
    g = read_graph(cfg.graph)
    girth = negative_girth(g)
    text = "unbounded" if girth is UNBOUNDED else str(girth)
    _emit(args, VerificationReport(subject="negative-girth", ok=True, data={"girth": text}), text)
    return EXIT_OK


def cmd_verify_cert(args, cfg: CommandConfig) -> int:
    g = read_graph(cfg.graph)
    certificate = parse_certificate(read_text(cfg.certificate), g)
    if isinstance(certificate, Orientation):
        certificate.check(g)
        return _verification(args, "orientation", True)
    if isinstance(certificate, ModOrientationCertificate):
        return _verification(args, f"modulo {certificate.ell}-orientation", verify_mod_orientation(certificate, g))
    if isinstance(certificate, PartitionCertificate):
        check = verify_partition_certificate(certificate, g)
        detail = "" if check.ok else check.reason
        return _verification(args, f"{certificate.ell}-partition", check.ok, detail)
    if isinstance(certificate, BetaCertificate):
        if certificate.orientation is None:
            raise ValidationError("beta certificate carries no orientation to verify")
        return _verification(args, "beta-orientation", verify_beta_orientation(g, certificate.orientation, certificate.beta))
    return _verification(args, certificate.form.value, verify_eulerian_certificate(certificate, g))


def cmd_suite(args, cfg: CommandConfig) -> int:
    suite = default_suites().get(args.name)
    bounds = suite.default_bounds()
    overrides = {
        "max_vertices": args.max_v,
        "max_edges": args.max_e,
        "max_p": cfg.max_p,
        "samples": args.samples,
        "seed": args.seed,
        "node_limit": cfg.node_limit,
        "time_limit": cfg.time_limit,
    }
    overrides = {key: value for key, value in overrides.items() if value is not None}
    if args.stretch:
        overrides["stretch"] = True
    report = suite(SuiteBounds(**{**bounds.model_dump(), **overrides}))
    counts = report.counts()
    lines = [f"{report.suite}: " + ", ".join(f"{counts[k]} {k}" for k in sorted(counts)) if counts else f"{report.suite}: no cases"]
    for case in report.cases:
        if case.outcome == "fail":
            lines.append(f"FAIL {case.name}: {case.detail}")
            if case.instance:
                lines.append(case.instance.rstrip("\n"))
    _emit(args, report, "\n".join(lines))
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_search(args, cfg: CommandConfig) -> int:
    search = default_searches().get(args.problem)
    report = search(args.max_v, args.max_e, planar_eulerian=args.planar_eulerian, budget=_budget(cfg))
    lines = [
        f"{report.problem}: {report.summary} "
        f"({report.graphs_examined} graphs, {report.signatures_examined} signatures)"
    ] + report.findings
    _emit(args, report, "\n".join(lines))
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace, CommandConfig], int]] = {
    "index": cmd_index,
    "chromatic": cmd_chromatic,
    "verify-flow": cmd_verify_flow,
    "orient": cmd_orient,
    "convert-eulerian": cmd_convert_eulerian,
    "transfer": cmd_transfer,
    "dual": cmd_dual,
    "hom": cmd_hom,
    "fold": cmd_fold,
    "classes": cmd_classes,
    "girth": cmd_girth,
    "verify-cert": cmd_verify_cert,
    "suite": cmd_suite,
    "search": cmd_search,
}


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--max-p", type=int, help="largest candidate numerator")
    budget.add_argument("--node-limit", type=int, help="search node cap per candidate")
    budget.add_argument("--time-limit", type=float, help="wall-clock cap in seconds")

    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument("graph", type=Path, help="signed graph file")

    parser = argparse.ArgumentParser(prog="signedflow", description="Circular flows of signed graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--json", action="store_true", help="emit JSON reports")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index", parents=[graph, budget], help="circular flow index")
    p.add_argument("--witness", type=Path, help="write the optimal flow here")
    p.add_argument("--certificate", dest="cut_out", type=Path, help="write the tight cut here (JSON)")

    sub.add_parser("chromatic", parents=[graph, budget], help="circular chromatic number")

    p = sub.add_parser("verify-flow", parents=[graph], help="check a flow file")
    p.add_argument("--flow", type=Path, required=True)

    p = sub.add_parser("orient", parents=[graph, budget], help="modulo or boundary-prescribed orientations")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--mod", dest="ell", type=int, help="find a modulo L-orientation")
    mode.add_argument("--beta", type=Path, help="'cert beta' file with the boundary to realise")
    p.add_argument("--modulus", type=int, help="expected modulus of the --beta file")
    p.add_argument("--keep-arcs", action="store_true", help="keep the arcs listed in the --beta file")
    p.add_argument("--partition", action="store_true", help="convert the modulo orientation into a partition")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("convert-eulerian", parents=[graph], help="convert an Eulerian certificate")
    p.add_argument("--cert", dest="certificate", type=Path, required=True)
    p.add_argument("--to", required=True, choices=[form.value for form in EulerianForm])
    p.add_argument("--out", type=Path)

    p = sub.add_parser("transfer", parents=[graph], help="flows versus orientations of (2p-2q)G")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--from", dest="source", choices=["flow", "orientation"], required=True)
    p.add_argument("--cert", dest="certificate", type=Path, required=True)
    p.add_argument("--host", type=Path, help="write the transfer multigraph here")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("dual", parents=[graph, budget], help="plane dual")
    p.add_argument("--embedding", type=Path, required=True)
    p.add_argument("--check", action="store_true", help="compare index(G) with chromatic(G*)")
    p.add_argument("--graph-out", type=Path)
    p.add_argument("--embedding-out", type=Path)

    p = sub.add_parser("hom", parents=[graph, budget], help="homomorphism to a negative cycle")
    p.add_argument("--neg-cycle", dest="k", type=int, required=True)
    p.add_argument("--negated", action="store_true", help="target -C_-k instead")
    p.add_argument("--partition", action="store_true", help="print the induced edge partition")

    p = sub.add_parser("fold", parents=[graph], help="fold a plane bipartite graph")
    p.add_argument("--embedding", type=Path, required=True)
    p.add_argument("--saturate", action="store_true")
    p.add_argument("--face", type=int)
    p.add_argument("--graph-out", type=Path)
    p.add_argument("--embedding-out", type=Path)

    p = sub.add_parser("classes", parents=[graph], help="inversing or switching class representatives")
    p.add_argument("--switching", action="store_true")

    sub.add_parser("girth", parents=[graph], help="negative girth")

    p = sub.add_parser("verify-cert", parents=[graph], help="verify any certificate file")
    p.add_argument("--cert", dest="certificate", type=Path, required=True)

    p = sub.add_parser("suite", parents=[budget], help="run a verification suite")
    p.add_argument("name", choices=default_suites().names())
    p.add_argument("--max-v", type=int)
    p.add_argument("--max-e", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--stretch", action="store_true", help="include the slow stretch targets")

    p = sub.add_parser("search", parents=[budget], help="bounded counterexample search")
    p.add_argument("problem", choices=default_searches().names())
    p.add_argument("--max-v", type=int, required=True)
    p.add_argument("--max-e", type=int, required=True)
    p.add_argument("--planar-eulerian", action="store_true")
    return parser


def _config(args: argparse.Namespace) -> CommandConfig:
    values = {"command": args.command, "output": "json" if args.json else "human"}
    for name in ("graph", "embedding", "flow", "certificate", "p", "q", "k", "ell", "modulus", "max_p", "node_limit", "time_limit"):
        value = getattr(args, name, None)
        if value is not None:
            values[name] = value
    return CommandConfig.build(**values)


def _configure_logging(verbosity: int) -> None:
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = getattr(logging, get_settings().log_level)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _configure_logging(args.verbose)
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except (ValidationError, ConfigurationError, GuardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExhausted as exc:
        print(f"unknown: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except ContractViolation as exc:
        logger.critical("internal contract violated: %s", exc)
        return EXIT_CONTRACT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
