import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional

from . import __version__, console
from .algebra import f_matrix, render_monomial
from .budget import BudgetGuard
from .classical import verify_prop31
from .classifier import aut_f_report, classify
from .config import get_global_config, init_project, load_config
from .constants import DEFAULT_CONFIG, EXIT_BUDGET, EXIT_DISCREPANCY, EXIT_INPUT_ERROR, EXIT_OK
from .doctor import run_doctor
from .errors import BudgetExceededError
from .expression import parse_expression
from .graph import FAMILIES, DirectedMultigraph, make_family, parse_graph, serialize_graph
from .history import log_run, show_history
from .models import CommandResult
from .verification import admissible_permutation, parse_permutation, verify_theorem

COMMAND_FORMATS = {"eval": "text", "generate": "text"}
GUARD_KEYS = ("factorial_budget", "enumeration_guard", "prop31_guard", "automorphism_guard")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid int value: '{text}'") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--format", choices=["text", "json"], help="Output format on standard output")
    common.add_argument("--budget-factorial", type=_positive_int, dest="budget_factorial",
                        help=f"Max edges for brute-force permutation checks (default: {DEFAULT_CONFIG['factorial_budget']})")
    common.add_argument("--quiet", "-q", action="store_true", help="Suppress progress lines on standard error")
    common.add_argument("--log", action="store_true", dest="log_runs",
                        help="Append a record of this run to .leavittsym_logs.jsonl")
    return common


def get_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        description="leavitt-sym: exact arithmetic in graph C*-algebras and their permutational symmetry",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"leavitt-sym v{__version__}")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("classify", parents=[common], help="Classify a graph and name its quantum symmetry group")
    p.add_argument("graph", help="Graph file ('-' for standard input)")

    p = sub.add_parser("check-perm", parents=[common], help="Check whether an edge permutation is admissible")
    p.add_argument("graph", help="Graph file ('-' for standard input)")
    p.add_argument("permutation", help="Cycles '(e1 e2)(e3 e4)' or one-line images '[e2, e1, e3]'")

    p = sub.add_parser("verify", parents=[common], help="Exhaustive verification runs")
    p.add_argument("theorem_pos", nargs="?", metavar="THEOREM", help="et1 or prop31")
    p.add_argument("values", nargs="*", type=int, metavar="N", help="vmax emax for et1, n for prop31")
    p.add_argument("--theorem", help="et1 or prop31")
    p.add_argument("--vmax", type=int)
    p.add_argument("--emax", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--workers", type=_positive_int, help="Worker processes for brute-force checks")
    p.add_argument("--no-dedup", action="store_true", dest="no_dedup",
                   help="Brute-force every labeled graph instead of one per isomorphism class")

    p = sub.add_parser("eval", parents=[common], help="Evaluate an expression to normal form")
    p.add_argument("graph", help="Graph file ('-' for standard input)")
    p.add_argument("expression", help="e.g. \"S*(e12)*S(e12)\"")

    p = sub.add_parser("fmatrix", parents=[common], help="Print the diagonal matrix F of a graph")
    p.add_argument("graph", help="Graph file ('-' for standard input)")

    p = sub.add_parser("generate", parents=[common], help="Write a named graph family in the graph file format")
    p.add_argument("family", help=f"One of: {', '.join(FAMILIES)}")
    p.add_argument("n", type=int, nargs="?", default=1)

    sub.add_parser("doctor", parents=[common], help="Check the environment")
    p = sub.add_parser("init", parents=[common], help="Write a default .leavittsym.yaml")
    p.add_argument("path", nargs="?", default=".")
    sub.add_parser("history", parents=[common], help="Show logged runs")
    return parser


def _pick(cli_value: Any, key: str, config_data: Dict[str, Any], global_config: Dict[str, Any]) -> Any:
    for value in (cli_value, config_data.get(key), global_config.get(key)):
        if value is not None:
            return value
    return DEFAULT_CONFIG.get(key)


def resolve_config(args: argparse.Namespace, config_data: Dict[str, Any], global_config: Dict[str, Any]) -> argparse.Namespace:
    """Resolve configuration hierarchy: CLI > Local > Global > Defaults."""
    # Resolve Format: CLI > Local > Global > per-command default (text for eval/generate, json otherwise)
    args.format = _pick(getattr(args, "format", None), "format", config_data, global_config) or COMMAND_FORMATS.get(
        args.command, "json"
    )

    # Resolve Quiet and Logging: CLI flags only ever switch them on
    args.quiet = bool(_pick(getattr(args, "quiet", None), "quiet", config_data, global_config))
    args.log_runs = bool(_pick(getattr(args, "log_runs", None), "log_runs", config_data, global_config))

    # Resolve Workers: CLI > Local > Global > 1
    args.workers = int(_pick(getattr(args, "workers", None), "workers", config_data, global_config))

    # Resolve Dedup: --no-dedup wins over any config file
    args.dedup = False if getattr(args, "no_dedup", False) else bool(_pick(None, "dedup", config_data, global_config))

    # Resolve Guards: config files set all four, --budget-factorial overrides one
    budget = {key: _pick(None, key, config_data, global_config) for key in GUARD_KEYS}
    if getattr(args, "budget_factorial", None) is not None:
        budget["factorial_budget"] = args.budget_factorial
    args.budget = budget
    return args


def read_graph(source: str) -> DirectedMultigraph:
    text = sys.stdin.read() if source == "-" else Path(source).read_text()
    return parse_graph(text)


def _as_text(payload: Dict[str, Any]) -> str:
    lines = []
    for key, value in payload.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, ensure_ascii=False)
        elif isinstance(value, bool) or value is None:
            value = json.dumps(value)
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _emit(args: argparse.Namespace, payload: Dict[str, Any]) -> str:
    if args.format == "json":
        return json.dumps(payload, indent=2, ensure_ascii=False)
    return _as_text(payload)


def cmd_classify(args: argparse.Namespace) -> CommandResult:
    g = read_graph(args.graph)
    verdict = classify(g)
    payload = verdict.to_payload(aut_f_report(g))
    return CommandResult(output=_emit(args, payload), summary=f"{verdict.family.value} {verdict.group}")


def cmd_check_perm(args: argparse.Namespace) -> CommandResult:
    g = read_graph(args.graph)
    certificate = admissible_permutation(g, parse_permutation(g, args.permutation))
    if args.format == "json":
        output = json.dumps(certificate.model_dump(), indent=2, ensure_ascii=False)
    elif certificate.admissible:
        output = f"{certificate.cycles}: admissible"
    else:
        failure = certificate.failure
        assert failure is not None
        output = f"{certificate.cycles}: inadmissible at check {failure.check_index} ({failure.check})\n{failure.detail}"
        if failure.left is not None:
            output += f"\n  left:  {failure.left}"
        if failure.right is not None:
            output += f"\n  right: {failure.right}"
    verdict = "admissible" if certificate.admissible else "inadmissible"
    return CommandResult(output=output, summary=f"{certificate.cycles} {verdict}")


def _values(args: argparse.Namespace, *names: str) -> List[int]:
    found: List[int] = []
    positional = list(args.values)
    for name in names:
        value = getattr(args, name)
        if value is None:
            if not positional:
                raise ValueError(f"verify {args.theorem} needs --{name}")
            value = positional.pop(0)
        found.append(int(value))
    return found


def cmd_verify(args: argparse.Namespace) -> CommandResult:
    args.theorem = args.theorem or args.theorem_pos
    guard = BudgetGuard.from_config(args.budget)
    if args.theorem == "et1":
        v_max, e_max = _values(args, "vmax", "emax")
        report = verify_theorem(v_max, e_max, guard=guard, dedup=args.dedup, workers=args.workers)
        payload = report.model_dump()
        payload["passed"] = report.passed
        summary = f"et1 {v_max} {e_max}: {report.graphs} graphs, {len(report.discrepancies)} discrepancies"
        return CommandResult(
            exit_code=EXIT_OK if report.passed else EXIT_DISCREPANCY, output=_emit(args, payload), summary=summary
        )
    if args.theorem == "prop31":
        (n,) = _values(args, "n")
        prop = verify_prop31(n, guard=guard)
        payload = prop.model_dump()
        payload["passed"] = prop.passed
        payload["message"] = f"{prop.full_symmetry} graphs with full symmetry"
        return CommandResult(
            exit_code=EXIT_OK if prop.passed else EXIT_DISCREPANCY,
            output=_emit(args, payload),
            summary=f"prop31 {n}: {payload['message']}",
        )
    raise ValueError("verify needs a theorem: et1 or prop31")


def cmd_eval(args: argparse.Namespace) -> CommandResult:
    g = read_graph(args.graph)
    value = parse_expression(g, args.expression)
    rendered = value.render()
    if args.format == "text":
        return CommandResult(output=rendered, summary=rendered)
    payload = {
        "expression": args.expression,
        "result": rendered,
        "terms": [{"monomial": render_monomial(m), "coefficient": str(c)} for m, c in value.sorted_terms()],
    }
    return CommandResult(output=_emit(args, payload), summary=rendered)


def cmd_fmatrix(args: argparse.Namespace) -> CommandResult:
    g = read_graph(args.graph)
    report = f_matrix(g)
    payload = {"edges": report.edges, "f_diag": report.diagonal, "f_scalar": report.scalar}
    return CommandResult(output=_emit(args, payload), summary=f"diag{tuple(report.diagonal)}")


def cmd_generate(args: argparse.Namespace) -> CommandResult:
    g = make_family(args.family, args.n)
    return CommandResult(output=serialize_graph(g, args.format), summary=f"{args.family} {args.n}")


def dispatch(args: argparse.Namespace) -> CommandResult:
    if args.command == "classify":
        return cmd_classify(args)
    if args.command == "check-perm":
        return cmd_check_perm(args)
    if args.command == "verify":
        return cmd_verify(args)
    if args.command == "eval":
        return cmd_eval(args)
    if args.command == "fmatrix":
        return cmd_fmatrix(args)
    if args.command == "generate":
        return cmd_generate(args)
    if args.command == "doctor":
        return CommandResult(exit_code=EXIT_OK if run_doctor() else EXIT_DISCREPANCY)
    if args.command == "init":
        return CommandResult(exit_code=EXIT_OK if init_project(args.path) else EXIT_INPUT_ERROR)
    show_history()
    return CommandResult()


def run(argv: Optional[List[str]] = None) -> int:
    parser = get_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EXIT_OK

    # Merge .leavittsym.* and ~/.leavittsym/config.yaml under the CLI flags
    args = resolve_config(args, load_config("."), get_global_config())
    console.set_quiet(args.quiet)

    start_time = time.time()
    try:
        result = dispatch(args)
    except BudgetExceededError as e:
        console.warn(f"Error: {e}")
        result = CommandResult(exit_code=EXIT_BUDGET, summary=str(e))
    except (ValueError, OSError) as e:
        console.warn(f"Error: {e}")
        result = CommandResult(exit_code=EXIT_INPUT_ERROR, summary=str(e))

    # Results go to stdout, progress and errors already went to stderr
    if result.output:
        print(result.output)
    # history itself is never logged
    if args.log_runs and args.command != "history":
        log_run(args.command, list(argv if argv is not None else sys.argv[1:]), result.exit_code,
                time.time() - start_time, result.summary, budget_report=args.budget)
    return result.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
