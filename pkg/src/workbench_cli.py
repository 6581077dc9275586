"""
Slice Workbench - Command Line
argparse front end: one subcommand per computation, table / JSON / TSV
output on stdout, diagnostics on stderr
"""

import argparse
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional

import pandas as pd
from dotenv import load_dotenv

from report_models import (CohomologyReport, DetectionReport, GapReport, GeneratorTable,
                           RefinementReport, SliceRegionReport, SphereHomologyReport,
                           SSRunReport, ValueTable, VerificationReport)
from workbench_service import DEFAULT_FGL_PRECISION, WorkbenchService

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

REPORT_MODELS = {
    "sphere-homology": SphereHomologyReport,
    "gap": GapReport,
    "slice-region": SliceRegionReport,
    "refine": RefinementReport,
    "ss-run": SSRunReport,
    "detect": DetectionReport,
    "group-cohomology": CohomologyReport,
    "verify-all": VerificationReport,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "tsv"), default="table",
                        help="output format (default: table)")
    common.add_argument("--jobs", type=int, default=None,
                        help="worker processes for independent sub-computations")

    parser = argparse.ArgumentParser(
        prog="workbench",
        description="Exact computations for representation spheres, slices, formal groups and detection.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sphere-homology", parents=[common], help="Bredon (co)homology of S^V")
    p.add_argument("--group", default="C8")
    p.add_argument("--rep", required=True, help='e.g. "rho(8)", "2*rho(8)", "sigma + lambda(1)"')
    p.add_argument("--cohomology", action="store_true")
    p.add_argument("--level", type=int, default=None, help="order of the subgroup H (default G)")
    p.add_argument("--coeff", choices=("Z", "Z/2"), default="Z")

    p = sub.add_parser("gap", parents=[common], help="vanishing of H^i(S^{m rho}) for 0 < i < 4")
    p.add_argument("--group", default="C8")
    p.add_argument("--mmax", type=int, default=2)

    p = sub.add_parser("slice-region", parents=[common], help="vanishing range and E2 region chart")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True, help="slice dimension")
    p.add_argument("--k", type=int, default=None, help="suspension parameter for the region chart")
    p.add_argument("--smax", type=int, default=16)
    p.add_argument("--dmax", type=int, default=8)

    p = sub.add_parser("refine", parents=[common], help="mod 2 orbit refinement in degree 2d")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--d", type=int, required=True)

    p = sub.add_parser("ss-run", parents=[common], help="a-inverted slice spectral sequence")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--bound", type=int, default=None)

    p = sub.add_parser("fgl", parents=[common], help="formal group law generator tables")
    p.add_argument("table", choices=sorted(DEFAULT_FGL_PRECISION))
    p.add_argument("--prec", type=int, default=None)

    p = sub.add_parser("detect", parents=[common], help="detection report")
    p.add_argument("--jmax", type=int, default=None)

    p = sub.add_parser("group-cohomology", parents=[common], help="H^s(C8; R_2m) table")
    p.add_argument("--mmax", type=int, default=15)

    sub.add_parser("verify-all", parents=[common], help="run every acceptance check")
    return parser


def dispatch(service: WorkbenchService, args: argparse.Namespace) -> Dict[str, Any]:
    command = args.command
    if command == "sphere-homology":
        return service.sphere_homology(args.group, args.rep, args.cohomology, args.level, args.coeff)
    if command == "gap":
        return service.gap(args.group, args.mmax)
    if command == "slice-region":
        return service.slice_region(args.g, args.n, args.k, args.smax, args.dmax)
    if command == "refine":
        return service.refine(args.g, args.d)
    if command == "ss-run":
        return service.ss_run(args.g, args.bound)
    if command == "fgl":
        return service.fgl(args.table, args.prec)
    if command == "detect":
        return service.detect(args.jmax)
    if command == "group-cohomology":
        return service.cohomology_table(args.mmax)
    if command == "verify-all":
        return service.verify_all(args.jobs)
    raise ValueError(f"unknown command {command!r}")


def report_model(args: argparse.Namespace, data: Dict[str, Any]):
    if args.command == "fgl":
        model = ValueTable if args.table in ("haz", "tfun") else GeneratorTable
    else:
        model = REPORT_MODELS[args.command]
    return model.model_validate(data)


def checks_passed(args: argparse.Namespace, data: Dict[str, Any]) -> bool:
    """Whether every assertion carried by the payload holds."""
    command = args.command
    if command in ("gap", "verify-all"):
        return bool(data["passed"])
    if command == "detect":
        return data["verdict"] == "pass"
    if command == "refine":
        return data["rank"] == data["expected_rank"]
    if command == "fgl":
        return all(data["checks"].values())
    if command == "group-cohomology":
        return all(row["passed"] for row in data["entries"])
    return True


def render(args: argparse.Namespace, data: Dict[str, Any]) -> str:
    if args.format == "json":
        return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)
    rows: List[Dict[str, Any]] = report_model(args, data).rows()
    frame = pd.DataFrame(rows)
    if args.format == "tsv":
        return frame.to_csv(sep="\t", index=False).rstrip("\n")
    title = args.command if args.command != "fgl" else f"fgl {args.table}"
    body = frame.to_string(index=False) if not frame.empty else "(empty)"
    return f"{title}\n{body}"


def configure_logging():
    level = os.getenv("LOG_LEVEL", "WARNING").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse argv, run the subcommand and print its report.

    Returns:
        0 when every check passes, 1 on a failed check or computation,
        2 on a usage error
    """
    load_dotenv()
    configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    service = WorkbenchService(jobs=args.jobs)
    payload = dispatch(service, args)
    if not payload["success"]:
        error = payload["error"]
        print(f"❌ {error['code']}: {error['message']}", file=sys.stderr)
        if args.format == "json":
            print(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False))
        return EXIT_USAGE if error["code"] == "INVALID_INPUT" else EXIT_FAILED

    data = payload["data"]
    print(render(args, data))
    if not checks_passed(args, data):
        print(f"❌ {args.command}: a verification check failed", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
