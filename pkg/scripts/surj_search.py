#!/usr/bin/env python3
"""Scan Gaussian cubic forms for preimages of the 3-torsion under phi1.

The box is |a_i| <= bound over forms (a0, 3a1, 3a2, a3) with the requested
cube discriminant.  Reports how often each 3-torsion class is hit; a class
with no hits means the box is too small, not that the map misses it.

    python3 scripts/surj_search.py --disc 9897 --bound 40
"""

import argparse
import sys
import time

from cubictrace.cubes import phi1_surjectivity_search


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--disc", type=int, required=True)
    ap.add_argument("--bound", type=int, required=True)
    ap.add_argument("--keep", type=int, default=6, help="witnesses to keep per class")
    args = ap.parse_args()

    t0 = time.time()
    r = phi1_surjectivity_search(args.disc, args.bound, keep=args.keep)
    for t in r["torsion_classes"]:
        qs = ",".join(str(x) for x in t.coeffs())
        wits = " ".join("(" + ",".join(str(x) for x in w) + ")" for w in r["hits"][t][:3])
        print(f"class ({qs}): {r['counts'][t]} hits  {wits}")
    print(f"surjective in box: {r['surjective_in_box']}  ({time.time()-t0:.1f}s)",
          file=sys.stderr)
    return 0 if r["surjective_in_box"] else 3


if __name__ == "__main__":
    sys.exit(main())
