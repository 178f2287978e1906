"""Command-line interface: ``atlapprox check | bench | validate | translate``.

Exit codes: 0 for a conclusive answer (or success), 2 when the approximations
do not meet, 1 on any error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import AtlApproxError, BudgetExceeded
from .exact import check_ir, verdict
from .icgs import validate
from .logic import TR, Strategic, parse, tr, tr1, tr2, tr3
from .modelfile import load
from . import experiments

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


def _size(text: str) -> tuple[int, int]:
    try:
        n, k = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N,K, got {text!r}") from None
    return n, k


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="atlapprox", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="evaluate both approximations of a formula")
    p.add_argument("model", type=Path)
    p.add_argument("formula")
    p.add_argument("--state", help="state to check (default: the first declared)")
    p.add_argument("--exact", action="store_true", help="also run the exact strategy search")
    p.add_argument("--semantics", choices=("subjective", "objective"), default="subjective")

    p = sub.add_parser("validate", help="check the iCGS invariants of a model file")
    p.add_argument("model", type=Path)

    p = sub.add_parser("translate", help="print the fixpoint translations of a formula")
    p.add_argument("formula")

    p = sub.add_parser("bench", help="run an experiment family")
    p.add_argument("family", choices=("voting", "bridge", "bridge-am", "counterexamples"))
    p.add_argument("--k", type=int, action="append",
                   help="voters (voting) or hand size (bridge, with --n); repeatable for voting")
    p.add_argument("--n", type=int, help="suit size for bridge")
    p.add_argument("--size", type=_size, action="append", metavar="N,K",
                   help="bridge size; repeatable (default 1,1 and 2,2)")
    p.add_argument("--formula", choices=("phi1", "phi2", "both"), default="both")
    p.add_argument("--seeds", type=int, default=20)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--compare-tr2", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", type=Path, help="write the CSV report here")
    p.add_argument("--stretch", action="store_true",
                   help="allow the large instances (voting k >= 4, bridge n >= 3)")
    return parser


def cmd_check(args) -> int:
    model = load(args.model)
    report = validate(model)
    if not report.ok:
        print(f"invalid model:\n{report}", file=sys.stderr)
        return EXIT_ERROR
    f = parse(args.formula)
    state = args.state or model.states[0]
    v = verdict(model, state, f, semantics=args.semantics)
    print(f"state:   {state}")
    print(f"lower:   {v.lower}")
    print(f"upper:   {v.upper}")
    if args.exact:
        try:
            exact = model.state_id(state) in check_ir(model, f, args.semantics)
            print(f"exact:   {exact}")
        except BudgetExceeded as exc:
            print(f"exact:   budget exceeded ({exc})")
    print(f"verdict: {v.label}")
    return EXIT_OK if v.conclusive else EXIT_UNKNOWN


def cmd_validate(args) -> int:
    report = validate(load(args.model))
    print(report)
    return EXIT_OK if report.ok else EXIT_ERROR


def cmd_translate(args) -> int:
    f = parse(args.formula)
    print(f"tr:  {tr(f)}")
    print(f"TR:  {TR(f)}")
    if isinstance(f, Strategic) and f.temporal == "F" and f.semantics == "ir":
        print(f"tr1: {tr1(f.coalition, f.goal)}")
        print(f"tr2: {tr2(f.coalition, f.goal)}")
        print(f"tr3: {tr3(f.coalition, f.goal)}")
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.family == "counterexamples":
        rows = experiments.counterexample_rows()
        print(experiments.counterexample_table(rows))
        report = experiments.counterexample_report(rows)
    else:
        if args.family == "voting":
            ks = args.k or [1, 2, 3]
            if max(ks) >= 4 and not args.stretch:
                raise AtlApproxError("voting with k >= 4 is a stretch run; pass --stretch")
            names = ("phi1", "phi2") if args.formula == "both" else (args.formula,)
            jobs = experiments.voting_jobs(ks, names)
        else:
            if args.n is not None or args.k:
                if args.n is None or not args.k or len(args.k) != 1:
                    raise AtlApproxError("bridge needs both --n and a single --k")
                sizes = [(args.n, args.k[0])]
            else:
                sizes = args.size or [(1, 1), (2, 2)]
            if any(n >= 3 for n, _ in sizes) and not args.stretch:
                raise AtlApproxError("bridge with n >= 3 is a stretch run; pass --stretch")
            jobs = experiments.bridge_jobs(sizes, args.seeds, args.family == "bridge-am",
                                           args.exact, args.compare_tr2)
        report = experiments.run_jobs(jobs, args.jobs)
        print(report.table())
    if args.output:
        args.output.write_text(report.to_csv(), encoding="utf-8")
        print(f"wrote {args.output}")
    return EXIT_OK


COMMANDS = {"check": cmd_check, "validate": cmd_validate, "translate": cmd_translate,
            "bench": cmd_bench}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (AtlApproxError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
