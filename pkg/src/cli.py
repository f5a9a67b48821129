"""
Command-line front end.

Usage:
    python -m src.cli mul --n 3 --words "1 2 1"
    python -m src.cli trace --domain index=4 --n 3 --word "1"
    python -m src.cli verify --suite p-exchange --max 5 --json
    python -m src.cli verify --lemma 5.7 --max 4 --domain symbolic
    python -m src.cli insert --R 1 0 < element.json
    python -m src.cli dims --graph A4 --levels 32 --csv

Exit codes: 0 success / all cases pass, 1 verification failure, 2 usage or
input error.  Artifacts (text, JSON, CSV, DOT) go to stdout; logs to stderr.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import pandas as pd

from src.algebra.aof import build_R_vector, invariant_vectors, mu_parameter, parse_F
from src.algebra.errors import TLError, VerificationError
from src.algebra.graphs import (
    PrincipalGraph,
    bratteli_export,
    dims_table,
    embedability_check,
    graph_from_json,
    graph_from_name,
    growth_rate,
    path_dims,
)
from src.algebra.jones_words import build_f, build_p, verify_f_projection
from src.algebra.markov import composite_expectation, gram_matrix, markov_trace
from src.algebra.ocneanu import ArrowAtLevel, insert_R, insert_R_star
from src.algebra.scalars import CoeffDomain, make_domain
from src.algebra.spectral import (
    SpectralAlgebra,
    SpectralElement,
    apply_R_relation,
    coaction_expand,
    invariant_state,
    lift_R_relation,
    sp_product,
    sp_star,
)
from src.algebra.temperley_lieb import TLElement, format_normal_form, tl_product, word_to_element
from src.config import get_settings
from src.core.certificate import build_audit_csv
from src.core.engine import run_suite
from src.core.suite_registry import list_suites
from src.suites.base_suite import SuiteParams
from src.utils.logger import configure_root_logger, setup_logger
from src.utils.serialization import (
    element_to_model,
    gram_report_to_model,
    matrix_to_json,
    parse_element,
    parse_spectral,
    spectral_to_model,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# `verify --lemma` shorthands
LEMMA_SUITES = {"5.6": "run-merge", "5.7": "p-exchange"}


class UsageError(Exception):
    """A flag combination the parser cannot reject on its own."""


# ── Input helpers ──────────────────────────────────────────────────────────


def _read_stdin() -> str:
    try:
        return sys.stdin.read()
    except OSError as e:
        raise UsageError(f"cannot read stdin: {e}") from e


def _read_text(path: str) -> str:
    if path == "-":
        return _read_stdin()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"--input: cannot read '{path}': {e}") from e


def _letters(text: str) -> List[int]:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError as e:
        raise UsageError(f"--word/--words: '{text}' is not a list of integers") from e


def _domain(args) -> CoeffDomain:
    return make_domain(args.domain or get_settings().tl_default_domain, eps=args.eps)


def _element(args, domain: CoeffDomain) -> TLElement:
    """
    The element given by --input (JSON), by --word/--words on --n strands, or
    as JSON piped on stdin when neither is given.
    """
    if getattr(args, "input", None):
        return parse_element(_read_text(args.input), domain)
    words = getattr(args, "words", None) or ([args.word] if getattr(args, "word", None) else None)
    if words is None:
        if sys.stdin is None or sys.stdin.isatty():
            raise UsageError("give an element with --input FILE, --word/--words or JSON on stdin")
        text = _read_stdin()
        if not text.strip():
            raise UsageError("stdin is empty; give an element with --input FILE or --word/--words")
        return parse_element(text, domain)
    if args.n is None:
        raise UsageError("--n is required with --word/--words")
    return tl_product([word_to_element(_letters(w), args.n, domain) for w in words])


def _graph(args) -> PrincipalGraph:
    if args.graph_json:
        return graph_from_json(_read_text(args.graph_json))
    return graph_from_name(args.graph)


def _emit_element(x: TLElement, args) -> None:
    if args.json:
        print(element_to_model(x).model_dump_json(indent=2))
    else:
        print(format_normal_form(x))


def _emit_spectral(a: SpectralElement, args) -> None:
    if args.json:
        print(spectral_to_model(a).model_dump_json(indent=2))
    else:
        print(repr(a))


# ── Subcommands ────────────────────────────────────────────────────────────


def cmd_mul(args) -> int:
    _emit_element(_element(args, _domain(args)), args)
    return EXIT_OK


def cmd_nf(args) -> int:
    return cmd_mul(args)


def cmd_trace(args) -> int:
    domain = _domain(args)
    print(domain.format(markov_trace(_element(args, domain))))
    return EXIT_OK


def cmd_expect(args) -> int:
    x = _element(args, _domain(args))
    _emit_element(composite_expectation(x, args.steps), args)
    return EXIT_OK


def cmd_gram(args) -> int:
    report = gram_matrix(args.n, _domain(args))
    model = gram_report_to_model(report)
    if args.json:
        print(model.model_dump_json(indent=2))
    elif args.csv:
        labels = [str(d) for d in report.labels]
        print(pd.DataFrame(model.matrix, index=labels, columns=labels).to_csv(), end="")
    else:
        print(f"n={model.n} dimension={model.dimension} rank={model.rank} positive={model.positive}")
        if model.determinant is not None:
            print(f"determinant={model.determinant}")
    return EXIT_OK


def cmd_pword(args) -> int:
    n = args.n if args.n is not None else args.k + args.r + args.s
    _emit_element(build_p(args.k, args.r, args.s, n, _domain(args)), args)
    return EXIT_OK


def cmd_f(args) -> int:
    domain = _domain(args)
    n = args.n if args.n is not None else 2 * args.r
    report = verify_f_projection(args.r, domain, n)
    if args.json:
        print(json.dumps({
            "r": args.r,
            "element": element_to_model(build_f(args.r, n, domain)).model_dump(),
            "idempotent": report.idempotent,
            "self_adjoint": report.self_adjoint,
            "trace": domain.format(report.trace),
            "trace_ok": report.trace_ok,
            "matches_p": report.matches_p,
        }, indent=2, ensure_ascii=False))
    else:
        print(format_normal_form(build_f(args.r, n, domain)))
    return EXIT_OK if report.holds else EXIT_FAILED


def cmd_insert(args) -> int:
    domain = _domain(args)
    x = _element(args, domain)
    if args.R:
        r, s = args.R
        result = insert_R(r, s, ArrowAtLevel(x.n, x))
    elif args.Rstar:
        r, s = args.Rstar
        result = insert_R_star(r, s, ArrowAtLevel(x.n, x))
    else:
        raise UsageError("insert needs --R r s or --Rstar r s")
    _emit_element(result.value, args)
    return EXIT_OK


def cmd_spectral(args) -> int:
    domain = _domain(args)
    algebra = SpectralAlgebra(parse_F(args.F or "I2", domain))
    inputs = args.input_files
    needed = 2 if args.action == "mul" else 1
    if len(inputs) != needed:
        raise UsageError(f"spectral {args.action} needs {needed} --input file(s), got {len(inputs)}")
    elements = [parse_spectral(_read_text(path), algebra) for path in inputs]
    if args.action == "mul":
        _emit_spectral(sp_product(*elements), args)
    elif args.action == "star":
        _emit_spectral(sp_star(elements[0]), args)
    elif args.action == "state":
        print(domain.format(invariant_state(elements[0])))
    elif args.action == "coact":
        expansion = coaction_expand(elements[0])
        parts = [
            {"monomial": [[i + 1, j + 1] for i, j in monomial], "element": spectral_to_model(x).model_dump()}
            for monomial, x in sorted(expansion.parts.items())
        ]
        print(json.dumps(parts, indent=2, ensure_ascii=False))
    elif args.action in ("lower", "lift"):
        if args.at is None:
            raise UsageError(f"spectral {args.action} needs --at r s")
        r, s = args.at
        if args.action == "lower":
            _emit_spectral(apply_R_relation(r, s, elements[0], args.direction), args)
        else:
            _emit_spectral(lift_R_relation(r, s, elements[0]), args)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.list:
        for entry in list_suites():
            print(f"{entry['name']:<22} (max {entry['default_max']})  {entry['description']}")
        return EXIT_OK
    if args.lemma:
        suite = LEMMA_SUITES[args.lemma]
    elif args.conjugate_eq:
        suite = "conjugate-equations"
    elif args.suite:
        suite = args.suite
    else:
        raise UsageError("verify needs --suite NAME, --lemma 5.6|5.7 or --conjugate-eq (see --list)")
    params = SuiteParams(max=args.max, F=args.F, samples=args.samples, seed=args.seed)
    certificate = run_suite(suite, args.domain, params, eps=args.eps)
    if args.csv:
        print(build_audit_csv(certificate), end="")
    elif args.json:
        print(certificate.model_dump_json(indent=2))
    else:
        for case in certificate.failures():
            print(f"FAIL {case.task} :: {case.case} expected={case.expected} got={case.got} {case.detail}")
        print(f"{certificate.suite}: {certificate.total} cases, {certificate.failed} failed")
    return EXIT_OK if certificate.passed else EXIT_FAILED


def cmd_dims(args) -> int:
    graph = _graph(args)
    table = dims_table(graph, args.levels)
    verdict = None
    if args.hilbert_dim is not None:
        verdict = embedability_check(path_dims(graph, args.levels), args.hilbert_dim)
    if args.csv:
        print(table.to_csv(index=False), end="")
    elif args.json:
        print(json.dumps({
            "graph": graph.name,
            "rows": json.loads(table.to_json(orient="records")),
            "embedability": None if verdict is None else verdict.verdict,
        }, indent=2))
    else:
        print(table.to_string(index=False))
        if verdict is not None:
            print(verdict.verdict)
    return EXIT_OK


def cmd_growth(args) -> int:
    report = growth_rate(path_dims(_graph(args), args.levels))
    if args.csv:
        print(report.table.to_csv(index=False), end="")
    elif args.json:
        print(json.dumps({
            "estimate": report.estimate,
            "root_estimate": report.root_estimate,
            "rows": json.loads(report.table.to_json(orient="records")),
        }, indent=2))
    else:
        print(report.table.to_string(index=False))
        print(f"estimate={report.estimate!r} root_estimate={report.root_estimate!r}")
    return EXIT_OK


def cmd_bratteli(args) -> int:
    print(bratteli_export(_graph(args), args.levels), end="")
    return EXIT_OK


def cmd_aof(args) -> int:
    domain = _domain(args)
    F = parse_F(args.F or "I2", domain)
    summary = {
        "F": matrix_to_json(F.entries, domain),
        "sigma": F.sigma,
        "d": domain.format(F.d),
        "subfactor_ok": F.subfactor_ok,
        "loop_matches": F.loop_matches,
        "R_u": [domain.format(x) for x in build_R_vector(F).vector()],
        "invariant_dimensions": {r: invariant_vectors(r, F).dimension for r in range(args.levels + 1)},
    }
    if F.n == 2:
        summary["mu"] = mu_parameter(F)
    print(json.dumps(summary, indent=2, ensure_ascii=False))
    return EXIT_OK


# ── Parser ─────────────────────────────────────────────────────────────────


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--domain", type=str, default=None,
                        help="symbolic | index=q | index=4cos2(pi/m) | float:index=x,eps=e")
    common.add_argument("--eps", type=float, default=None, help="float-mode tolerance")
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true", help="JSON output")
    out.add_argument("--csv", action="store_true", help="CSV output")
    out.add_argument("--dot", action="store_true", help="DOT output (bratteli)")
    common.add_argument("-v", "--verbose", action="store_true", help="INFO logs on stderr")

    element = argparse.ArgumentParser(add_help=False)
    element.add_argument("--n", type=int, default=None, help="strand count")
    element.add_argument("--word", type=str, default=None, help='Jones word, e.g. "1 2 1"')
    element.add_argument("--words", type=str, nargs="+", default=None, help="words multiplied left to right")
    element.add_argument("--input", type=str, default=None, help="element JSON file ('-' for stdin)")

    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument("--graph", type=str, default="A4", help="built-in graph, e.g. A5")
    graph.add_argument("--graph-json", type=str, default=None, help='graph JSON {"adjacency": [[...]], "star": 0}')
    graph.add_argument("--levels", type=int, default=8)

    parser = argparse.ArgumentParser(prog="tl", description="Exact Temperley-Lieb and spectral-algebra calculus.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("mul", parents=[common, element], help="multiply words").set_defaults(func=cmd_mul)
    sub.add_parser("nf", parents=[common, element], help="reduced-word normal form").set_defaults(func=cmd_nf)
    sub.add_parser("trace", parents=[common, element], help="Markov trace").set_defaults(func=cmd_trace)

    p = sub.add_parser("expect", parents=[common, element], help="conditional expectations")
    p.add_argument("--steps", type=int, default=1)
    p.set_defaults(func=cmd_expect)

    p = sub.add_parser("gram", parents=[common], help="Gram matrix of the trace inner product")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("pword", parents=[common], help="p^(k)_(r,s)")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(func=cmd_pword)

    p = sub.add_parser("f", parents=[common], help="Jones projection f_(r-1)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(func=cmd_f)

    p = sub.add_parser("insert", parents=[common, element], help="R / R* insertion on an arrow")
    p.add_argument("--R", type=int, nargs=2, metavar=("r", "s"), default=None)
    p.add_argument("--Rstar", type=int, nargs=2, metavar=("r", "s"), default=None)
    p.set_defaults(func=cmd_insert)

    p = sub.add_parser("spectral", parents=[common], help="spectral algebra operations")
    p.add_argument("action", choices=["mul", "star", "state", "coact", "lower", "lift"])
    p.add_argument("--F", type=str, default=None, help='"I2", "t=0.7", "canonical" or JSON')
    p.add_argument("--input", dest="input_files", action="append", default=[], help="spectral element JSON")
    p.add_argument("--at", type=int, nargs=2, metavar=("r", "s"), default=None)
    p.add_argument("--direction", choices=["R*", "R"], default="R*")
    p.set_defaults(func=cmd_spectral)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    target = p.add_mutually_exclusive_group()
    target.add_argument("--suite", type=str, default=None)
    target.add_argument("--lemma", choices=sorted(LEMMA_SUITES), default=None,
                        help="5.6 = run-merge, 5.7 = p-exchange")
    target.add_argument("--conjugate-eq", action="store_true", help="same as --suite conjugate-equations")
    p.add_argument("--list", action="store_true", help="list the registered suites")
    p.add_argument("--max", "--max-level", dest="max", type=int, default=None)
    p.add_argument("--F", type=str, default=None)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dims", parents=[common, graph], help="path-model dimensions")
    p.add_argument("--hilbert-dim", type=int, default=None, help="embedability check against n^r")
    p.set_defaults(func=cmd_dims)

    sub.add_parser("growth", parents=[common, graph], help="growth rate of the dimensions").set_defaults(func=cmd_growth)
    sub.add_parser("bratteli", parents=[common, graph], help="Bratteli diagram as DOT").set_defaults(func=cmd_bratteli)

    p = sub.add_parser("aof", parents=[common], help="F-matrix data")
    p.add_argument("--F", type=str, default=None)
    p.add_argument("--levels", type=int, default=4)
    p.set_defaults(func=cmd_aof)
    return parser


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run the subcommand, and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    configure_root_logger(logging.INFO if args.verbose else logging.WARNING)
    settings = get_settings()
    if settings.log_dir:
        setup_logger(Path(settings.log_dir))

    try:
        return args.func(args)
    except UsageError as e:
        print(f"tl {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationError as e:
        print(f"tl {args.command}: verification failed: {e}", file=sys.stderr)
        return EXIT_FAILED
    except TLError as e:
        print(f"tl {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == '__main__':
    main()
