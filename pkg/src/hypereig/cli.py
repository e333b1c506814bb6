"""Command-line interface.

    hypereig gen loose_path 2 3 -o p.hg
    hypereig spectral p.hg
    hypereig verify p.hg --json report.json

Exit codes: 0 success, 1 certificate failure, 2 input or parse error,
3 non-convergence.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import generators, io, report
from .bounds import certify_all, failures, summarize
from .errors import (
    DisconnectedInput,
    InfeasibleParameters,
    InvalidHypergraph,
    InvalidParameters,
    MaxIterationsExceeded,
    NoEdges,
    NotConverged,
    ParseError,
)
from .gap import audit_edge_deletions
from .incidence import build_incidence, verify_alpha_normal, verify_consistency
from .spectral import IterationOptions, power_iteration

EXIT_OK, EXIT_CERT, EXIT_INPUT, EXIT_CONVERGENCE = 0, 1, 2, 3

FAMILIES = {
    "single_edge": (generators.single_edge, ["r"]),
    "complete": (generators.complete, ["n", "r"]),
    "loose_path": (generators.loose_path, ["k", "r"]),
    "random": (generators.random_uniform, ["n", "r", "m"]),
    "random_connected": (generators.random_connected, ["n", "r", "m"]),
    "random_linear": (generators.random_linear, ["n", "r", "extra"]),
}
SEEDED = {"random", "random_connected", "random_linear"}


def _analysis_args(p: argparse.ArgumentParser, csv: bool = False) -> None:
    p.add_argument("file", help="hypergraph file ('n r m' header, then m edge lines)")
    p.add_argument("--tol", type=float, default=1e-12, help="relative bracket width (default 1e-12)")
    p.add_argument("--max-iters", type=int, default=100_000)
    p.add_argument("--shift", type=float, default=1.0)
    p.add_argument("--json", metavar="OUT", help="write the full JSON report here")
    if csv:
        p.add_argument("--csv", metavar="OUT", help="write per-row CSV here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypereig", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    _analysis_args(sub.add_parser("spectral", help="spectral radius and principal eigenvector"))
    _analysis_args(sub.add_parser("incidence", help="alpha-normal weighted incidence matrix"))
    _analysis_args(sub.add_parser("bounds", help="certify eigenvector bounds"), csv=True)
    _analysis_args(sub.add_parser("gap", help="audit single-edge deletion gaps"), csv=True)

    v = sub.add_parser("verify", help="full pipeline; nonzero exit on any failed check")
    _analysis_args(v, csv=True)
    v.add_argument("--gap-csv", metavar="OUT")
    v.add_argument("--perturb-rho", type=float, metavar="FACTOR",
                   help="testing hook: scale rho by FACTOR before certification")
    v.add_argument("--perturb-x", metavar="V:FACTOR",
                   help="testing hook: scale x[V] by FACTOR before certification")

    g = sub.add_parser("gen", help="generate a hypergraph file")
    g.add_argument("family", choices=sorted(FAMILIES))
    g.add_argument("params", nargs="+", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", help="output path (default: stdout)")
    return parser


def _options(args) -> IterationOptions:
    return IterationOptions(tolerance=args.tol, max_iterations=args.max_iters, shift=args.shift)


def _perturb(s, args):
    if args.perturb_rho is not None:
        s = replace(s, rho=s.rho * args.perturb_rho)
    if args.perturb_x is not None:
        v, factor = args.perturb_x.split(":")
        x = s.x.copy()
        x[int(v)] *= float(factor)
        s = replace(s, x=x)
    return s


def _print_spectral(s) -> None:
    print(f"rho          = {report.fmt_float(s.rho)}")
    print(f"bracket      = [{report.fmt_float(s.lambda_lo)}, {report.fmt_float(s.lambda_hi)}]")
    print(f"residual_inf = {s.residual_inf:.3e}")
    print(f"iterations   = {s.iterations}")
    print(f"x_max        = {s.x_max:.12g} (vertex {s.argmax})")
    print(f"x_min        = {s.x_min:.12g} (vertex {s.argmin})")


def _print_incidence(B, alpha_rep, cyc) -> None:
    status = "pass" if alpha_rep.passed and cyc.passed else "FAIL"
    print(f"alpha = {report.fmt_float(B.alpha)}  [{status}]")
    print(f"  row sums      max |dev| = {alpha_rep.row_sum_dev:.3e} (vertex {alpha_rep.row_sum_vertex})")
    print(f"  edge products max |dev| = {alpha_rep.edge_product_dev:.3e} (edge {alpha_rep.edge_product_edge})")
    print(f"  within-edge   spread    = {alpha_rep.spread_dev:.3e} (edge {alpha_rep.spread_edge})")
    print(f"  cycles        {cyc.cycles_checked}/{cyc.cycles_total} checked, max |dev| = {cyc.max_dev:.3e}")


def _print_bounds(certs) -> None:
    for bid, row in summarize(certs).items():
        print(f"  {bid:<22} applicable {row['applicable']:>4}/{row['total']:<4} failed {row['failed']}")
    tight = [c for c in certs if c.passed and c.slack is not None and abs(c.slack) <= 1e-9]
    for c in tight[:10]:
        print(f"  tight: {c.bound_id.value} at {list(c.subject)} (slack {c.slack:.1e})")
    if len(tight) > 10:
        print(f"  ... {len(tight) - 10} more tight certificates")
    for c in failures(certs):
        print(f"  FAIL: {c.bound_id.value} at {list(c.subject)}: actual {c.actual_value!r} vs bound {c.bound_value!r}")


def _print_gap(rep) -> None:
    print(f"gap audit: D = {rep.diameter}, {len(rep.records)} deletions "
          f"({rep.n_connected} connected, {rep.n_disconnected} disconnected)  "
          f"[{'pass' if rep.passed else 'FAIL'}]")
    for rec in rep.records:
        print(f"  edge {list(rec.edge)}: gap {rec.gap:.10g} >= bound {rec.bound:.6g}"
              f"{'' if rec.passed and rec.lemmas.ok else '  FAIL'}")


def _run(args) -> int:
    if args.command == "gen":
        fn, names = FAMILIES[args.family]
        if len(args.params) != len(names):
            print(f"error: {args.family} takes {' '.join(names)}", file=sys.stderr)
            return EXIT_INPUT
        kwargs = {"seed": args.seed} if args.family in SEEDED else {}
        H = fn(*args.params, **kwargs)
        text = io.serialize(H)
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK

    H = io.read(args.file)
    s = power_iteration(H, _options(args))
    doc = report.new_report(H)
    doc["spectral"] = report.spectral_section(s)
    ok = True
    cmd = args.command

    if cmd == "verify":
        s = _perturb(s, args)
    if cmd == "spectral" or cmd == "verify":
        _print_spectral(s)
    if cmd in ("incidence", "verify"):
        B = build_incidence(H, s)
        alpha_rep = verify_alpha_normal(B, H, s)
        cyc = verify_consistency(B, H)
        doc["incidence"] = report.incidence_section(B, alpha_rep, cyc)
        _print_incidence(B, alpha_rep, cyc)
        ok &= alpha_rep.passed and cyc.passed
    if cmd in ("bounds", "verify"):
        certs = certify_all(H, s)
        doc["bounds"] = report.bounds_section(certs)
        print(f"bounds: {len(certs)} certificates")
        _print_bounds(certs)
        ok &= not failures(certs)
        if args.csv:
            report.write_bounds_csv(certs, args.csv)
    if cmd in ("gap", "verify"):
        rep = audit_edge_deletions(H, s, _options(args))
        doc["gap"] = report.gap_section(rep)
        _print_gap(rep)
        ok &= rep.passed
        csv_path = args.gap_csv if cmd == "verify" else args.csv
        if csv_path:
            report.write_gap_csv(rep, csv_path)

    if args.json:
        report.write_json(doc, args.json)
    if cmd == "verify":
        print("verify: " + ("all checks passed" if ok else "FAILED"))
    return EXIT_OK if ok else EXIT_CERT


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except (ParseError, InvalidHypergraph, InvalidParameters, InfeasibleParameters,
            DisconnectedInput, NoEdges, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (MaxIterationsExceeded, NotConverged) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
