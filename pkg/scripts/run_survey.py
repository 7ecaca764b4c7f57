#!/usr/bin/env python3
"""Run the verification campaign over a discriminant range and dump a report.

Typical desk-scale runs:
    python3 scripts/run_survey.py --dmin -600 --dmax -1 --out /tmp/neg.json
    python3 scripts/run_survey.py --dmin 1 --dmax 5000 --checks hasse,scholz
"""

import argparse
import sys
import time

from cubictrace.survey import ALL_CHECKS, report_to_csv, report_to_json, run_survey, write_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dmin", type=int, required=True)
    ap.add_argument("--dmax", type=int, required=True)
    ap.add_argument("--checks", help="comma-separated subset of: " + ",".join(ALL_CHECKS))
    ap.add_argument("--out", help="write the report here instead of stdout")
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    args = ap.parse_args()

    checks = tuple(args.checks.split(",")) if args.checks else None
    t0 = time.time()
    rep = run_survey(args.dmin, args.dmax, checks=checks)
    dt = time.time() - t0
    if args.out:
        write_report(rep, args.out, fmt=args.format)
        print(f"wrote {args.out}  totals={rep.totals}  ({dt:.1f}s)", file=sys.stderr)
    else:
        print(report_to_json(rep) if args.format == "json" else report_to_csv(rep), end="")
    for f in rep.failures:
        print(f"VIOLATION d={f['d']} {f['check']}: {f['detail']}", file=sys.stderr)
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
