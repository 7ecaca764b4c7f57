#!/usr/bin/env python3
"""Enumerate cubic fields by fundamental discriminant, one JSON line per field.

    python3 scripts/enumerate_fields.py --dmin -1000 --dmax -1
    python3 scripts/enumerate_fields.py --dmin 1 --dmax 20000 --hessian
"""

import argparse
import json
import sys
import time

from cubictrace.cforms import enumerate_fundamental


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dmin", type=int, required=True)
    ap.add_argument("--dmax", type=int, required=True)
    ap.add_argument("--hessian", action="store_true", help="include the Hessian of each form")
    ap.add_argument("--out")
    args = ap.parse_args()

    t0 = time.time()
    reps = enumerate_fundamental(args.dmin, args.dmax)
    lines = []
    for f in reps:
        doc = {"d": f.disc, "form": ",".join(str(x) for x in f.coeffs())}
        if args.hessian:
            doc["hessian"] = ",".join(str(x) for x in f.hessian().coeffs())
        lines.append(json.dumps(doc, sort_keys=True))
    text = "\n".join(lines) + ("\n" if lines else "")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"{len(reps)} fields in [{args.dmin}, {args.dmax}]  ({time.time()-t0:.1f}s)",
          file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
