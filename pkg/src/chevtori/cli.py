"""Command-line interface: verification subcommands with report files.

Every subcommand prints one line per checked claim, writes machine-readable
reports on request, and exits nonzero when any claim fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import verify
from .chevalley import eta_table, structure_constants
from .rootsystem import KINDS, root_system


def _parse_qs(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


def _emit(reports, args) -> int:
    ok = True
    for rep in reports:
        c = rep.counts()
        ok = ok and rep.ok
        print(
            f"[{('ok' if rep.ok else 'FAIL')}] {rep.command} {rep.kind}: "
            f"{c['pass']} pass, {c['fail']} fail, {c['logged']} logged "
            f"({rep.elapsed:.1f}s)"
        )
        if args.verbose:
            for r in rep.results:
                print(f"    {r.status:6s} {r.name} {r.detail}")
        else:
            for r in rep.results:
                if r.status != "pass":
                    print(f"    {r.status:6s} {r.name} {r.detail}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(verify.reports_to_json(reports))
        (out / "report.md").write_text(verify.reports_to_markdown(reports))
        print(f"reports written to {out}/report.json and {out}/report.md")
    return 0 if ok else 1


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="chevtori",
        description="Exact verification of lifts, complements and maximal-torus "
                    "structures in extended Weyl groups of types E6, E7, E8.",
    )
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--data", type=Path, default=None,
                    help="directory of table files (defaults to the bundled set)")
    ap.add_argument("--out", type=Path, default=None,
                    help="directory for report.json / report.md")
    ap.add_argument("--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("selftest", help="engine-vs-oracle and calibration checks")
    p.add_argument("--samples", type=int, default=None,
                   help="override the per-type oracle sample count")

    p = sub.add_parser("lifts", help="orders of tabulated lifts")
    p.add_argument("--type", dest="kind", choices=("E7", "E8"), required=True)
    p.add_argument("--isogeny", choices=("sc", "ad"), default="sc")

    p = sub.add_parser("nonsplit", help="non-splitting certificates")
    p.add_argument("--type", dest="kind", choices=("E7", "E8"), required=True)

    p = sub.add_parser("complements", help="tabulated complement generators")
    p.add_argument("--type", dest="kind", choices=("E7", "E8"), required=True)
    p.add_argument("--q", type=_parse_qs, default=verify.DEFAULT_QS)

    p = sub.add_parser("prose", help="concrete-field complement constructions")
    p.add_argument("--type", dest="kind", choices=("E7",), default="E7")
    p.add_argument("--q", type=_parse_qs, default=verify.PROSE_QS)

    p = sub.add_parser("tori", help="twisted torus orders and structures")
    p.add_argument("--type", dest="kind", choices=KINDS, required=True)
    p.add_argument("--q", type=_parse_qs, default=verify.DEFAULT_QS)

    p = sub.add_parser("report", help="run every verification and emit reports")
    p.add_argument("--q", type=_parse_qs, default=verify.DEFAULT_QS)
    p.add_argument("--prose-q", type=_parse_qs, default=verify.PROSE_QS)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--format", choices=("json", "md"), default=None,
                   help="print one report format to stdout")

    p = sub.add_parser("export", help="dump root / constant / eta tables as JSON")
    p.add_argument("--type", dest="kind", choices=KINDS, required=True)
    p.add_argument("--what", choices=("roots", "constants", "eta"),
                   default="roots")

    args = ap.parse_args(argv)

    if args.command == "export":
        if args.what == "roots":
            data = root_system(args.kind).export_table()
        elif args.what == "constants":
            data = structure_constants(args.kind).export_table()
        else:
            data = eta_table(args.kind).export_table()
        json.dump(data, sys.stdout, indent=1)
        print()
        return 0

    if args.command == "selftest":
        samples = (
            {k: args.samples for k in KINDS} if args.samples is not None else None
        )
        reports = [verify.cmd_selftest(seed=args.seed, data_dir=args.data,
                                       samples=samples)]
    elif args.command == "lifts":
        reports = [verify.cmd_verify_lifts(args.kind, args.isogeny,
                                           seed=args.seed, data_dir=args.data)]
    elif args.command == "nonsplit":
        reports = [verify.cmd_verify_nonsplit(args.kind, seed=args.seed,
                                              data_dir=args.data)]
    elif args.command == "complements":
        reports = [verify.cmd_verify_complements(args.kind, seed=args.seed,
                                                 data_dir=args.data, qs=args.q)]
    elif args.command == "prose":
        reports = [verify.cmd_verify_prose_complements(
            args.kind, qs=args.q, seed=args.seed, data_dir=args.data)]
    elif args.command == "tori":
        reports = [verify.cmd_verify_tori(args.kind, qs=args.q,
                                          seed=args.seed, data_dir=args.data)]
    else:  # report
        samples = (
            {k: args.samples for k in KINDS} if args.samples is not None else None
        )
        reports = verify.run_all(qs=args.q, prose_qs=args.prose_q,
                                 seed=args.seed, data_dir=args.data,
                                 samples=samples)
        if args.format == "json":
            print(verify.reports_to_json(reports))
        elif args.format == "md":
            print(verify.reports_to_markdown(reports))

    return _emit(reports, args)


if __name__ == "__main__":
    sys.exit(main())
