"""Command-line interface.

Subcommand tree:
  qf      reduce | compose | classgroup | equiv
  cubic   disc | hessian | equiv | enumerate
  trace   form | zero | grouprel | caso3 | ternary-check
  cube    q1 | phi1 | grouprel2 | surj-search
  field   record | split | distinguish | hasse
  survey  run

Forms are comma-separated coefficient strings ("a,b,c" quadratic,
"a,b,c,d" cubic, "a0,a1,a2,a3" Gaussian).  Cubes and bases come from JSON
files.  Output is JSON (CSV for the tabular commands via --format csv).

Exit codes: 0 checks pass / query answered affirmatively, 1 a check or
predicate is violated, 2 invalid input, 3 inconclusive (search bound
exhausted or no certificate found).
"""

import argparse
import json
import sys

from .arith import is_fundamental_discriminant
from .cforms import CubicForm, cubic_equivalent, enumerate_fundamental
from .cubes import (
    Cube,
    GaussianCubicForm,
    cube_disc,
    phi1,
    phi1_surjectivity_search,
    q1,
    q2,
    q3,
    verify_grouprel2,
)
from .fields import Undecided, distinguishing_prime, make_record, hasse_count_check, splitting_type
from .qforms import (
    QuadraticForm,
    canonical_class_rep,
    class_group,
    compose,
    gl2_equivalent,
    proper_equivalent,
    reduce_form,
)
from .survey import ALL_CHECKS, report_to_csv, report_to_json, run_survey, write_report
from .tracelat import (
    explicit_trace_form,
    full_gram,
    gram_from_basis,
    ternary_equivalent_bounded,
    trace_zero_sublattice,
    verify_caso3,
    verify_grouprel,
)

PASS, VIOLATION, BAD_INPUT, INCONCLUSIVE = 0, 1, 2, 3


def _qf(s: str) -> QuadraticForm:
    parts = [int(x) for x in s.split(",")]
    if len(parts) != 3:
        raise ValueError(f"expected 3 comma-separated integers, got {s!r}")
    return QuadraticForm(*parts)


def _cubic(s: str) -> CubicForm:
    parts = [int(x) for x in s.split(",")]
    if len(parts) != 4:
        raise ValueError(f"expected 4 comma-separated integers, got {s!r}")
    return CubicForm(*parts)


def _gaussian(s: str) -> GaussianCubicForm:
    parts = [int(x) for x in s.split(",")]
    if len(parts) != 4:
        raise ValueError(f"expected 4 comma-separated integers, got {s!r}")
    return GaussianCubicForm(*parts)


def _fmt_qf(q: QuadraticForm) -> str:
    return ",".join(str(x) for x in q.coeffs())


def _fmt_cubic(f: CubicForm) -> str:
    return ",".join(str(x) for x in f.coeffs())


def _emit(doc, out=None):
    text = json.dumps(doc, sort_keys=True, indent=1)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _mat2_list(m):
    return [[m[0][0], m[0][1]], [m[1][0], m[1][1]]] if m is not None else None


def _load_gram(path: str):
    """A ternary Gram from a JSON file: either {"gram": [[..]x3]} verbatim or
    {"form": "a,b,c,d", "basis": [[c0,c1,c2]x3]} with rational strings."""
    with open(path) as fh:
        doc = json.load(fh)
    if "gram" in doc:
        g = doc["gram"]
        if len(g) != 3 or any(len(r) != 3 for r in g):
            raise ValueError("gram must be a 3x3 integer matrix")
        return tuple(tuple(int(x) for x in row) for row in g)
    return gram_from_basis(_cubic(doc["form"]), doc["basis"])


# ---------------------------------------------------------------------------
# qf


def cmd_qf_reduce(args):
    f = _qf(args.form)
    red, m = reduce_form(f)
    _emit({"input": _fmt_qf(f), "reduced": _fmt_qf(red), "matrix": _mat2_list(m),
           "discriminant": f.disc})
    return PASS


def cmd_qf_compose(args):
    f, g = _qf(args.form1), _qf(args.form2)
    h = compose(f, g)
    _emit({"form1": _fmt_qf(f), "form2": _fmt_qf(g), "composed": _fmt_qf(h),
           "class": _fmt_qf(canonical_class_rep(h))})
    return PASS


def cmd_qf_classgroup(args):
    cg = class_group(args.discriminant)
    doc = {"discriminant": cg.disc, "class_count": cg.order,
           "invariant_factors": list(cg.invariant_factors()),
           "representatives": [_fmt_qf(x) for x in cg.elements]}
    if args.format == "csv":
        lines = ["a,b,c"] + [_fmt_qf(x) for x in cg.elements]
        text = "\n".join(lines) + "\n"
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            print(text, end="")
    else:
        _emit(doc, args.out)
    return PASS


def cmd_qf_equiv(args):
    f, g = _qf(args.form1), _qf(args.form2)
    ok_p, m_p = proper_equivalent(f, g)
    ok_g, m_g = gl2_equivalent(f, g)
    _emit({"proper": ok_p, "gl2": ok_g,
           "witness": _mat2_list(m_p if ok_p else m_g)})
    return PASS if ok_g else VIOLATION


# ---------------------------------------------------------------------------
# cubic


def cmd_cubic_disc(args):
    f = _cubic(args.form)
    _emit({"form": _fmt_cubic(f), "discriminant": f.disc,
           "fundamental": is_fundamental_discriminant(f.disc)})
    return PASS


def cmd_cubic_hessian(args):
    f = _cubic(args.form)
    h = f.hessian()
    _emit({"form": _fmt_cubic(f), "hessian": _fmt_qf(h), "discriminant": h.disc})
    return PASS


def cmd_cubic_equiv(args):
    f, g = _cubic(args.form1), _cubic(args.form2)
    if f.disc != g.disc:
        _emit({"status": "inequivalent", "reason": "discriminants differ",
               "witness": None})
        return VIOLATION
    status, m = cubic_equivalent(f, g)
    _emit({"status": status, "witness": _mat2_list(m)})
    return {"equivalent": PASS, "inequivalent": VIOLATION}.get(status, INCONCLUSIVE)


def cmd_cubic_enumerate(args):
    reps = enumerate_fundamental(args.dmin, args.dmax)
    if args.format == "csv":
        lines = ["d,form"] + [f"{f.disc},\"{_fmt_cubic(f)}\"" for f in reps]
        text = "\n".join(lines) + "\n"
    else:
        text = "\n".join(json.dumps({"d": f.disc, "form": _fmt_cubic(f)},
                                    sort_keys=True) for f in reps)
        text += "\n" if reps else ""
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return PASS


# ---------------------------------------------------------------------------
# trace


def cmd_trace_form(args):
    lat = full_gram(_cubic(args.form))
    _emit({"form": _fmt_cubic(lat.form), "gram": [list(r) for r in lat.gram],
           "determinant": lat.form.disc})
    return PASS


def cmd_trace_zero(args):
    f = _cubic(args.form)
    tz = trace_zero_sublattice(f) if args.method == "kernel" else explicit_trace_form(f)
    _emit({"form": _fmt_cubic(f), "binary": _fmt_qf(tz.binary),
           "case": tz.case_tag, "discriminant": tz.binary.disc})
    return PASS


def cmd_trace_grouprel(args):
    f = _cubic(args.form)
    r = verify_grouprel(f)
    _emit({"form": _fmt_cubic(f), "holds": r["holds"], "sign": r["sign"]})
    return PASS if r["holds"] else VIOLATION


def cmd_trace_caso3(args):
    f = _cubic(args.form)
    r = verify_caso3(f)
    _emit({"form": _fmt_cubic(f), "holds": r["holds"], "case": r["case"],
           "sign": r["sign"], "projection": _fmt_qf(r["projection"]),
           "sixth": _fmt_qf(r["sixth"])})
    return PASS if r["holds"] else VIOLATION


def cmd_trace_ternary_check(args):
    t1 = _load_gram(args.gram1)
    t2 = _load_gram(args.gram2)
    u = ternary_equivalent_bounded(t1, t2, bound=args.bound)
    _emit({"gram1": [list(r) for r in t1], "gram2": [list(r) for r in t2],
           "bound": args.bound,
           "witness": [list(r) for r in u] if u is not None else None})
    return PASS if u is not None else INCONCLUSIVE


# ---------------------------------------------------------------------------
# cube


def _load_cube(path: str) -> Cube:
    with open(path) as fh:
        doc = json.load(fh)
    a, b = doc["A"], doc["B"]
    return Cube(tuple(tuple(int(x) for x in r) for r in a),
                tuple(tuple(int(x) for x in r) for r in b))


def cmd_cube_q1(args):
    c = _load_cube(args.cube)
    _emit({"q1": _fmt_qf(q1(c)), "q2": _fmt_qf(q2(c)), "q3": _fmt_qf(q3(c)),
           "discriminant": cube_disc(c)})
    return PASS


def cmd_cube_phi1(args):
    g = _gaussian(args.form)
    q = phi1(g)
    _emit({"gaussian": ",".join(str(x) for x in g.coeffs()),
           "cubic": _fmt_cubic(g.cubic()), "phi1": _fmt_qf(q),
           "discriminant": q.disc})
    return PASS


def cmd_cube_grouprel2(args):
    f = _cubic(args.form)
    r = verify_grouprel2(f)
    _emit({"form": _fmt_cubic(f), "holds": r["holds"], "sign": r["sign"],
           "projection": _fmt_qf(r["projection"])})
    return PASS if r["holds"] else VIOLATION


def cmd_cube_surj_search(args):
    r = phi1_surjectivity_search(args.disc, args.bound, keep=args.keep)
    doc = {"discriminant": r["delta"], "coeff_bound": r["coeff_bound"],
           "torsion_classes": [_fmt_qf(t) for t in r["torsion_classes"]],
           "counts": {_fmt_qf(k): v for k, v in r["counts"].items()},
           "hits": {_fmt_qf(k): [",".join(str(x) for x in g) for g in v]
                    for k, v in r["hits"].items()},
           "missing": [_fmt_qf(t) for t in r["missing"]],
           "surjective_in_box": r["surjective_in_box"]}
    _emit(doc, args.out)
    return PASS if r["surjective_in_box"] else INCONCLUSIVE


# ---------------------------------------------------------------------------
# field


def cmd_field_record(args):
    rec = make_record(_cubic(args.form))
    _emit({"form": _fmt_cubic(rec.form), "discriminant": rec.disc,
           "signature": rec.signature,
           "trace_zero": {"binary": _fmt_qf(rec.trace_zero.binary),
                          "case": rec.trace_zero.case_tag},
           "hessian_class": _fmt_qf(rec.hessian_class)})
    return PASS


def cmd_field_split(args):
    st = splitting_type(_cubic(args.form), args.prime)
    _emit({"form": args.form, "prime": args.prime, "label": st.label,
           "shape": [list(x) for x in st.shape]})
    return PASS


def cmd_field_distinguish(args):
    f, g = _cubic(args.form1), _cubic(args.form2)
    p = distinguishing_prime(f, g, p_max=args.pmax)
    if p is None:
        _emit({"prime": None, "pmax": args.pmax})
        return INCONCLUSIVE
    _emit({"prime": p, "split1": splitting_type(f, p).label,
           "split2": splitting_type(g, p).label})
    return PASS


def cmd_field_hasse(args):
    r = hasse_count_check(args.discriminant)
    _emit(r)
    return PASS if r["ok"] else VIOLATION


# ---------------------------------------------------------------------------
# survey


def cmd_survey_run(args):
    checks = tuple(args.checks.split(",")) if args.checks else None
    rep = run_survey(args.dmin, args.dmax, checks=checks)
    if args.out:
        write_report(rep, args.out, fmt=args.format)
        print(f"wrote {args.out}: {rep.totals}", file=sys.stderr)
    else:
        print(report_to_json(rep) if args.format == "json" else report_to_csv(rep),
              end="" if args.format == "csv" else "\n")
    return PASS if rep.ok else VIOLATION


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cubictrace",
                                 description="integral trace forms of cubic fields, exactly")
    top = ap.add_subparsers(dest="group", required=True)

    qf = top.add_parser("qf", help="binary quadratic forms").add_subparsers(
        dest="cmd", required=True)
    p = qf.add_parser("reduce", help="reduce a form, with witness")
    p.add_argument("form")
    p.set_defaults(func=cmd_qf_reduce)
    p = qf.add_parser("compose", help="Gauss composition")
    p.add_argument("form1")
    p.add_argument("form2")
    p.set_defaults(func=cmd_qf_compose)
    p = qf.add_parser("classgroup", help="narrow form class group of a discriminant")
    p.add_argument("discriminant", type=int)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_qf_classgroup)
    p = qf.add_parser("equiv", help="SL2/GL2 equivalence of two forms")
    p.add_argument("form1")
    p.add_argument("form2")
    p.set_defaults(func=cmd_qf_equiv)

    cu = top.add_parser("cubic", help="binary cubic forms").add_subparsers(
        dest="cmd", required=True)
    p = cu.add_parser("disc", help="discriminant")
    p.add_argument("form")
    p.set_defaults(func=cmd_cubic_disc)
    p = cu.add_parser("hessian", help="Hessian covariant")
    p.add_argument("form")
    p.set_defaults(func=cmd_cubic_hessian)
    p = cu.add_parser("equiv", help="GL2 equivalence of two cubic forms")
    p.add_argument("form1")
    p.add_argument("form2")
    p.set_defaults(func=cmd_cubic_equiv)
    p = cu.add_parser("enumerate", help="field representatives over a range")
    p.add_argument("--dmin", type=int, required=True)
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cubic_enumerate)

    tr = top.add_parser("trace", help="trace forms and identities").add_subparsers(
        dest="cmd", required=True)
    p = tr.add_parser("form", help="full 3x3 trace Gram")
    p.add_argument("form")
    p.set_defaults(func=cmd_trace_form)
    p = tr.add_parser("zero", help="trace-zero binary form")
    p.add_argument("form")
    p.add_argument("--method", choices=("explicit", "kernel"), default="explicit")
    p.set_defaults(func=cmd_trace_zero)
    p = tr.add_parser("grouprel", help="half trace form * C_d vs Hessian")
    p.add_argument("form")
    p.set_defaults(func=cmd_trace_grouprel)
    p = tr.add_parser("caso3", help="3-ramified projection identity")
    p.add_argument("form")
    p.set_defaults(func=cmd_trace_caso3)
    p = tr.add_parser("ternary-check", help="bounded ternary isometry search")
    p.add_argument("gram1", help="JSON file: {gram} or {form, basis}")
    p.add_argument("gram2", help="JSON file: {gram} or {form, basis}")
    p.add_argument("--bound", type=int, default=6)
    p.set_defaults(func=cmd_trace_ternary_check)

    cb = top.add_parser("cube", help="Bhargava cubes").add_subparsers(
        dest="cmd", required=True)
    p = cb.add_parser("q1", help="the three quadratic projections of a cube")
    p.add_argument("cube", help="JSON file: {A: [[..]], B: [[..]]}")
    p.set_defaults(func=cmd_cube_q1)
    p = cb.add_parser("phi1", help="projection of a Gaussian cubic form")
    p.add_argument("form", help="a0,a1,a2,a3")
    p.set_defaults(func=cmd_cube_phi1)
    p = cb.add_parser("grouprel2", help="cube-composition restatement of the trace identity")
    p.add_argument("form")
    p.set_defaults(func=cmd_cube_grouprel2)
    p = cb.add_parser("surj-search", help="hunt Gaussian preimages of 3-torsion classes")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--keep", type=int, default=6)
    p.add_argument("--out")
    p.set_defaults(func=cmd_cube_surj_search)

    fi = top.add_parser("field", help="cubic field records").add_subparsers(
        dest="cmd", required=True)
    p = fi.add_parser("record", help="validated field record")
    p.add_argument("form")
    p.set_defaults(func=cmd_field_record)
    p = fi.add_parser("split", help="splitting type at a prime")
    p.add_argument("form")
    p.add_argument("prime", type=int)
    p.set_defaults(func=cmd_field_split)
    p = fi.add_parser("distinguish", help="find a prime separating two fields")
    p.add_argument("form1")
    p.add_argument("form2")
    p.add_argument("--pmax", type=int, default=1000)
    p.set_defaults(func=cmd_field_distinguish)
    p = fi.add_parser("hasse", help="field count vs class-group prediction")
    p.add_argument("discriminant", type=int)
    p.set_defaults(func=cmd_field_hasse)

    sv = top.add_parser("survey", help="verification campaigns").add_subparsers(
        dest="cmd", required=True)
    p = sv.add_parser("run", help="run checks over a discriminant range")
    p.add_argument("--dmin", type=int, required=True)
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--checks", help="comma-separated subset of: " + ",".join(ALL_CHECKS))
    p.add_argument("--out", help="report path")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_survey_run)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Undecided as e:
        print(f"inconclusive: {e}", file=sys.stderr)
        return INCONCLUSIVE
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
