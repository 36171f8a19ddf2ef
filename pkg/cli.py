"""Command-line front end of theta-lab.

Every command prints one self-describing report, as ``key: value`` lines with
row-list sections (``--format text``) or as the same facts in JSON
(``--format json``).

Exit codes: 0 success, 1 a check failed, 2 usage or parse error, 3 domain error.

Examples:
    python cli.py theta a1_t1 --iterations 1 --out theta_a1.mat
    python cli.py orbit source/lib/corpus/a2_t2.mat
    python cli.py classify --kappa 4 --m 2 --workers 4 --out classes
    python cli.py verify --suite quick
"""
import argparse
import hashlib
import json
import logging
import math
import sys
from pathlib import Path
from typing import Dict
from typing import List

import numpy as np

from source.classification import Strategy
from source.classification import census
from source.classification import classify
from source.classification import default_workers
from source.corpus import corpus_names
from source.corpus import corpus_path
from source.corpus import export
from source.errors import EXIT_CHECK_FAILED
from source.errors import EXIT_DOMAIN
from source.errors import EXIT_OK
from source.errors import EXIT_USAGE
from source.errors import NotAdjacency
from source.errors import NotBinary
from source.errors import ThetaLabError
from source.geometry import Graph
from source.geometry import centres_radius2
from source.geometry import diameter
from source.geometry import girth
from source.geometry import has_polarity_form
from source.geometry import is_n_admissible
from source.geometry import is_terwilliger
from source.geometry import neighbourhood_geometry
from source.geometry import triangle_census
from source.matrices import classify_membership
from source.matrices import theta_iterate
from source.matrix_io import MatrixDocument
from source.matrix_io import read_matrix
from source.matrix_io import write_matrix
from source.patterns import DEFAULT_SEED
from source.solver import MAX_PERIOD
from source.solver import dio_sweep
from source.solver import fundamental_period
from source.solver import orbit
from source.standard_form import is_hs_form
from source.standard_form import triangle_free_centres
from source.verification import SUITES
from source.verification import run_suite

logger = logging.getLogger("theta_lab")


def _plain(value):
    """Make a value JSON-safe: numpy scalars to Python, infinity to "inf"."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return value


class Report:
    """One command's outcome: echo, input digests, results, row sections and exit status."""

    def __init__(self, command: str):
        self.command = command
        self.inputs: Dict[str, str] = {}
        self.results: Dict[str, object] = {}
        self.sections: Dict[str, List[object]] = {}
        self.exit_code = EXIT_OK

    def add_input(self, name: str, data: bytes):
        self.inputs[name] = hashlib.sha256(data).hexdigest()

    def set(self, key: str, value):
        self.results[key] = _plain(value)

    def add_row(self, section: str, row):
        self.sections.setdefault(section, []).append(_plain(row))

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "sections": self.sections,
            "exit_status": self.exit_code,
        }

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.as_dict(), indent=2)
        lines = [f"command: {self.command}"]
        lines.extend(f"input {name}: sha256 {digest}" for name, digest in self.inputs.items())
        lines.extend(f"{key}: {_text(value)}" for key, value in self.results.items())
        for section, rows in self.sections.items():
            lines.append(f"{section}:")
            lines.extend(f"  - {_text(row)}" for row in rows)
        lines.append(f"exit_status: {self.exit_code}")
        return "\n".join(lines)


def _text(value) -> str:
    if isinstance(value, dict):
        return ", ".join(f"{k}={_text(v)}" for k, v in value.items())
    if isinstance(value, list):
        return " ".join(_text(v) for v in value)
    if value is None:
        return "none"
    if isinstance(value, bool):
        return str(value).lower()
    return str(value)


def _load(report: Report, source: str, binary: bool = False) -> MatrixDocument:
    """Read a "mat v1" file, or a corpus matrix when ``source`` names one."""
    path = Path(source)
    if not path.exists() and source in corpus_names():
        path = corpus_path(source)
    document = read_matrix(path, binary=binary)
    report.add_input(source, path.read_bytes())
    return document


def _membership(report: Report, A, prefix: str = ""):
    for key, value in classify_membership(A).as_dict().items():
        report.set(f"{prefix}{key}", value)


def cmd_theta(args, report: Report):
    document = _load(report, args.input)
    result = theta_iterate(document.matrix, args.iterations)
    report.set("iterations", args.iterations)
    report.set("order", result.shape[0])
    _membership(report, result, prefix="result_")
    if args.out:
        write_matrix(args.out, result, labels=document.labels, comments=[f"Theta^{args.iterations} of {args.input}"])
        report.set("written", str(args.out))
    else:
        for row in result:
            report.add_row("matrix", row.tolist())


def cmd_orbit(args, report: Report):
    document = _load(report, args.input, binary=True)
    result = orbit(document.matrix, args.max_steps)
    report.set("summary", result.summary())
    report.set("period", result.period)
    report.set("preperiod", result.preperiod)
    report.set("leaves_class_at", result.leaves_class_at)
    report.set("negative_diagonal_after_leaving", result.negative_diagonal)
    report.set("steps", result.steps)


def cmd_classify(args, report: Report):
    strategy = Strategy[args.strategy]
    classes = classify(args.kappa, args.m, workers=args.workers, strategy=strategy, progress=args.progress)
    report.set("kappa", args.kappa)
    report.set("m", args.m)
    report.set("strategy", strategy.name)
    report.set("classes", len(classes))
    for solution in classes:
        row = {
            "name": solution.name,
            "aliases": solution.names[1:],
            "period": solution.fundamental_period,
            "hs_form": solution.hs_form,
            "key": solution.key.hex(),
        }
        if args.out:
            path = write_matrix(
                Path(args.out) / f"{solution.name}.mat",
                solution.representative,
                comments=[f"{', '.join(solution.names)}: kappa {args.kappa}, fundamental period {solution.fundamental_period}"],
            )
            row["file"] = str(path)
        report.add_row("classes", row)
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        summary = Path(args.out) / "summary.txt"
        summary.write_text(report.render("text") + "\n", encoding="utf-8")
        report.set("summary", str(summary))


def cmd_props(args, report: Report):
    document = _load(report, args.input)
    A = document.matrix
    _membership(report, A)
    try:
        graph = Graph(A, labels=document.labels)
    except (NotAdjacency, NotBinary) as e:
        report.set("graph", f"not an adjacency matrix ({e})")
        return
    total, per_vertex = triangle_census(graph)
    report.set("girth", girth(graph))
    report.set("diameter", diameter(graph))
    report.set("triangles", total)
    report.set("triangles_per_vertex", per_vertex)
    report.set("terwilliger_mu1", is_terwilliger(graph, 1))
    report.set("n_admissible", is_n_admissible(graph))
    report.set("centres_radius2", [graph.label(v) for v in centres_radius2(graph)])
    report.set("triangle_free_centres", [graph.label(v) for v in triangle_free_centres(A)])
    report.set("hs_form", is_hs_form(A))
    try:
        report.set("polarity_form", has_polarity_form(neighbourhood_geometry(graph)))
    except ThetaLabError as e:
        report.set("polarity_form", f"no neighbourhood geometry ({e})")
    period = fundamental_period(A, MAX_PERIOD) if classify_membership(A).is_D_kappa else None
    report.set("fundamental_period", period)


def cmd_verify(args, report: Report):
    result = run_suite(args.suite, seed=args.seed, workers=args.workers, only=args.only)
    report.set("suite", result.suite)
    report.set("seed", result.seed)
    for check in result.results:
        report.add_row("checks", {
            "name": check.name,
            "passed": check.passed,
            "seconds": round(check.seconds, 2),
            "detail": check.detail,
        })
    report.set("passed", result.passed)
    if not result.passed:
        report.set("failed", result.failed)
        report.exit_code = EXIT_CHECK_FAILED


def cmd_export(args, report: Report):
    path = export(args.name, args.out)
    report.add_input(args.name, corpus_path(args.name).read_bytes())
    report.set("written", str(path))


def cmd_dio(args, report: Report):
    sweep = dio_sweep(args.n_max, args.m_max, (args.kappa_min, args.kappa_max))
    report.set("bounds", {"n_max": args.n_max, "m_max": args.m_max, "kappa": [args.kappa_min, args.kappa_max]})
    report.set("family_1", len(sweep.family_1))
    report.set("family_2", len(sweep.family_2))
    report.set("exceptions", len(sweep.exceptions))
    for solution in sweep.exceptions:
        report.add_row("exceptions", {"n": solution.n, "m": solution.m, "kappa": solution.kappa})
    if args.all:
        for row in sweep.to_frame().to_dict(orient="records"):
            report.add_row("solutions", row)


def cmd_census(args, report: Report):
    frame = census(args.kappa, workers=args.workers, progress=args.progress)
    report.set("kappa", args.kappa)
    report.set("graphs", len(frame))
    report.set("solutions", int(frame["period"].notna().sum()))
    for row in frame.to_dict(orient="records"):
        if row["period"] is not None and not (isinstance(row["period"], float) and math.isnan(row["period"])):
            row["period"] = int(row["period"])
        else:
            row["period"] = None
        report.add_row("graphs", row)


def _matrix_argument(parser: argparse.ArgumentParser):
    parser.add_argument("input", help=f'"mat v1" file, or a corpus name ({", ".join(corpus_names())})')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="theta-lab",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging")
    parser.add_argument("--format", choices=["text", "json"], default="text", help="report rendering")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("theta", help="apply Theta m times")
    _matrix_argument(p)
    p.add_argument("-m", "--iterations", type=int, default=1, help="number of applications, 0 copies the input")
    p.add_argument("--out", help="write the result to this file instead of the report")
    p.set_defaults(handler=cmd_theta)

    p = commands.add_parser("orbit", help="period, preperiod or leaving step of the Theta-orbit")
    _matrix_argument(p)
    p.add_argument("--max-steps", type=int, default=MAX_PERIOD, help="Theta applications allowed")
    p.set_defaults(handler=cmd_orbit)

    p = commands.add_parser("classify", help="all solutions of Theta^m(A) = A up to p-equivalence")
    p.add_argument("--kappa", type=int, required=True, choices=[2, 3, 4])
    p.add_argument("--m", type=int, required=True, choices=range(1, MAX_PERIOD + 1), metavar="1..8")
    p.add_argument("--workers", type=int, default=default_workers(), help="worker processes (THETA_LAB_WORKERS)")
    p.add_argument("--strategy", choices=[s.name for s in Strategy], default=Strategy.standard_form.name)
    p.add_argument("--progress", action="store_true", help="show a progress bar")
    p.add_argument("--out", help="directory for one file per class and summary.txt")
    p.set_defaults(handler=cmd_classify)

    p = commands.add_parser("props", help="membership flags and graph certificates")
    _matrix_argument(p)
    p.set_defaults(handler=cmd_props)

    p = commands.add_parser("verify", help="run the reproduction suite")
    p.add_argument("--suite", default="full", help=f"one of {', '.join(sorted(SUITES))}")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed of the randomised checks")
    p.add_argument("--workers", type=int, default=default_workers(), help="worker processes (THETA_LAB_WORKERS)")
    p.add_argument("--only", nargs="+", help="run only these checks")
    p.set_defaults(handler=cmd_verify)

    p = commands.add_parser("export", help="write a corpus matrix")
    p.add_argument("--name", required=True, help=", ".join(corpus_names()))
    p.add_argument("--out", required=True, help="output file")
    p.set_defaults(handler=cmd_export)

    p = commands.add_parser("dio", help="sweep delta^m(kappa) = kappa")
    p.add_argument("--n-max", type=int, default=200)
    p.add_argument("--m-max", type=int, default=MAX_PERIOD)
    p.add_argument("--kappa-min", type=int, default=-14)
    p.add_argument("--kappa-max", type=int, default=14)
    p.add_argument("--all", action="store_true", help="list every solution, not only the exceptions")
    p.set_defaults(handler=cmd_dio)

    p = commands.add_parser("census", help="all kappa-regular C4-free graphs on kappa^2 + 1 vertices")
    p.add_argument("--kappa", type=int, required=True, choices=[2, 3])
    p.add_argument("--workers", type=int, default=default_workers(), help="worker processes (THETA_LAB_WORKERS)")
    p.add_argument("--progress", action="store_true", help="show a progress bar")
    p.set_defaults(handler=cmd_census)
    return parser


def main(argv: List[str] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    report = Report(" ".join(["theta-lab"] + list(sys.argv[1:] if argv is None else argv)))
    try:
        args.handler(args, report)
    except ThetaLabError as e:
        logger.debug("command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        logger.exception("command failed unexpectedly")
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    print(report.render(args.format))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
