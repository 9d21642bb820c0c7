"""Command line interface.

Exit status: 0 when the property holds (or the command succeeded), 1 when
it fails, 2 on bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import documents as docs
from .condstar import check_condition_star
from .gale import ConfigurationError, PointConfig, VectorConfig, gale_transform
from .lattice import smith_normal_form
from .series import ParameterError, construct_series_example, verify_series
from .sl3 import RowReport, UnsupportedCase, load_table, parse_case_label, verify_row, verify_spec
from .spanning import is_positively_2_spanning

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    def __init__(self, kind: str, message: str, **extra):
        super().__init__(message)
        self.payload = dict(error=kind, message=message, **extra)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError("io", "cannot read %s: %s" % (path, exc.strerror)) from None


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _vector_str(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


# ---------------------------------------------------------------------------


def cmd_gale(args) -> int:
    cfg = docs.parse_config(_read(args.input))
    if not isinstance(cfg, PointConfig):
        raise UsageError("precondition", "gale expects a \"points\" document")
    try:
        g = gale_transform(cfg)
    except ConfigurationError as exc:
        raise UsageError("precondition", str(exc), rule="n >= d+2 and affinely spanning") from None
    if args.format == "json" or args.output:
        _emit(args, docs.serialize_config(g))
    else:
        lines = ["Gale transform: %d vectors in Q^%d" % (len(g), g.dim)]
        lines += ["  g%d = %s" % (i, _vector_str(v)) for i, v in enumerate(g)]
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _verdict_dict(v) -> dict:
    out = {"holds": v.holds}
    if v.witness is not None:
        out["witness"] = {
            "deleted_index": v.witness.index,
            "h": [docs.format_rational(x) for x in v.witness.h],
        }
    if v.holds:
        out["certificates"] = [[docs.format_rational(x) for x in lam] for lam in v.certificates]
    return out


def cmd_check2span(args) -> int:
    cfg = docs.parse_config(_read(args.input))
    if not isinstance(cfg, VectorConfig):
        raise UsageError("precondition", "check2span expects a \"vectors\" document")
    v = is_positively_2_spanning(cfg)
    if args.format == "json":
        _emit(args, docs.dumps(dict(_verdict_dict(v), dim=cfg.dim, n=len(cfg))))
    else:
        lines = ["%d vectors in Q^%d: %s" % (len(cfg), cfg.dim,
                 "positively 2-spanning" if v.holds else "NOT positively 2-spanning")]
        if v.holds:
            if cfg.dim == 0:
                lines.append("  (vacuous: no hyperplanes in dimension 0)")
            for j, lam in enumerate(v.certificates):
                lines.append("  without #%d: dependence %s" % (j, _vector_str(lam)))
        else:
            w = v.witness
            what = "the empty configuration" if w.index is None else "deleting #%d" % w.index
            lines.append("  %s: every remaining g has h.g >= 0 for h = %s" % (what, _vector_str(w.h)))
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if v.holds else EXIT_FAIL


def _star_dict(rep) -> dict:
    return {
        "holds": rep.holds,
        "spanning": _verdict_dict(rep.spanning),
        "generation": [
            {"index": c.index, "element": docs.element_to_dict(c.element), "generates": c.generates}
            for c in rep.generation
        ],
        "reason": rep.reason,
    }


def cmd_checkstar(args) -> int:
    coll, _ = docs.parse_weight_system(_read(args.input))
    rep = check_condition_star(coll)
    if args.format == "json":
        _emit(args, docs.dumps(_star_dict(rep)))
    else:
        lines = ["group %s, %d weights (total multiplicity %d)" % (
            coll.group, len(coll.weights), coll.total_multiplicity)]
        lines.append("  positively 2-spanning: %s" % ("yes" if rep.spanning.holds else "no"))
        for c in rep.generation:
            lines.append("  delete %s (#%d): rest %s" % (
                c.element, c.index, "generates" if c.generates else "does NOT generate"))
        lines.append("condition *: %s" % ("holds" if rep.holds else "fails (%s)" % rep.reason))
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if rep.holds else EXIT_FAIL


def _case_dict(c) -> dict:
    return {
        "label": c.label,
        "r": c.r,
        "passed": c.passed,
        "checks": [{"name": k.name, "passed": k.passed, "detail": k.detail} for k in c.checks],
    }


def cmd_verify_sl3(args) -> int:
    try:
        table = load_table(args.table)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError("table", "cannot load table: %s" % exc) from None
    if args.case:
        name, r = parse_case_label(args.case)
        row = next((x for x in table if x.label == name), None)
        if row is None:
            raise UsageError("usage", "no table row %r" % name)
        if r is None:
            reports = [verify_row(row, args.pairing)]
        else:
            if r not in row.r_values:
                raise UsageError("usage", "row %s has no variant r=%d" % (name, r))
            rep = verify_spec(row.spec(r), row.dim_q, "%s,r=%d" % (name, r), r, args.pairing)
            reports = [RowReport(rep.label, (rep,))]
    else:
        reports = [verify_row(row, args.pairing) for row in table]
    npass = sum(r.passed for r in reports)
    if args.format == "json":
        _emit(args, docs.dumps({
            "passed": npass == len(reports),
            "passed_rows": npass,
            "total_rows": len(reports),
            "rows": [{"label": r.label, "passed": r.passed,
                      "variants": [_case_dict(v) for v in r.variants]} for r in reports],
        }))
    else:
        lines = ["%-8s %-6s %-6s %-6s %-6s %s" % ("case", "star", "orbit", "dimQ", "ineq", "result")]
        yn = {True: "ok", False: "FAIL"}
        for row in reports:
            for v in row.variants:
                c = {k.name: k.passed for k in v.checks}
                lines.append("%-8s %-6s %-6s %-6s %-6s %s" % (
                    v.label, yn[c["condition_star"]], yn[c["open_orbit"]], yn[c["dim_q"]],
                    yn[c["constraints"]], "pass" if v.passed else "FAIL"))
        lines.append("%d/%d rows pass" % (npass, len(reports)))
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if npass == len(reports) else EXIT_FAIL


def _series_report_dict(rep) -> dict:
    return {
        "passed": rep.passed,
        "condition_star": rep.condition_star,
        "open_orbit": rep.open_orbit,
        "rank": rep.rank_ok,
        "chi_det": list(rep.chi_det),
    }


def cmd_make_series(args) -> int:
    try:
        inst = construct_series_example(args.n, args.d)
    except ParameterError as exc:
        raise UsageError("parameter", str(exc)) from None
    module = {"n": inst.n, "summands": inst.summand_tags}
    doc = docs.weight_system_to_dict(inst.collection, module)
    rep = verify_series(inst) if args.verify else None
    if args.output:
        Path(args.output).write_text(docs.dumps(doc), encoding="utf-8")
    if args.format == "json":
        out = doc if rep is None else {"document": doc, "verification": _series_report_dict(rep)}
        if not args.output:
            sys.stdout.write(docs.dumps(out))
        elif rep is not None:
            sys.stdout.write(docs.dumps({"verification": _series_report_dict(rep)}))
    else:
        if not args.output:
            sys.stdout.write(docs.dumps(doc))
        if rep is not None:
            sys.stdout.write(
                "verification (n=%d, d=%d): condition * %s, open orbit %s, rank %s -> %s\n" % (
                    rep.n, rep.d, *("ok" if x else "FAIL" for x in (rep.condition_star, rep.open_orbit, rep.rank_ok)),
                    "pass" if rep.passed else "FAIL"))
    return EXIT_OK if rep is None or rep.passed else EXIT_FAIL


def cmd_snf(args) -> int:
    rows, ncols = docs.parse_int_matrix(_read(args.input))
    snf = smith_normal_form(rows, ncols)
    out = {
        "D": snf.D,
        "U": snf.U,
        "V": snf.V,
        "invariant_factors": [x for x in snf.diagonal if x],
    }
    if args.format == "json" or args.output:
        _emit(args, docs.dumps(out))
    else:
        lines = []
        for name in ("D", "U", "V"):
            lines.append("%s =" % name)
            lines += ["  " + " ".join("%3d" % x for x in r) for r in out[name]] or ["  (empty)"]
        lines.append("invariant factors: %s" % out["invariant_factors"])
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toricsl", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_input=True):
        if with_input:
            sp.add_argument("input", help="input JSON document ('-' for stdin)")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--output", "-o", help="write the result to this file")

    sp = sub.add_parser("gale", help="Gale transform of a point configuration")
    common(sp)
    sp.set_defaults(func=cmd_gale)

    sp = sub.add_parser("check2span", help="test a vector configuration for positive 2-spanning")
    common(sp)
    sp.set_defaults(func=cmd_check2span)

    sp = sub.add_parser("checkstar", help="test condition * for a weight system")
    common(sp)
    sp.set_defaults(func=cmd_checkstar)

    sp = sub.add_parser("verify-sl3", help="verify the SL_3 weight table")
    common(sp, with_input=False)
    sp.add_argument("--case", help="single row or variant, e.g. 2c or 2b,r=1")
    sp.add_argument("--table", help="table file (default: the bundled one)")
    sp.add_argument("--pairing", choices=("difference", "sum"), default="difference",
                    help="weight convention for the pairing invariants")
    sp.set_defaults(func=cmd_verify_sl3)

    sp = sub.add_parser("make-series", help="weight system for SL_n with class group rank d")
    common(sp, with_input=False)
    sp.add_argument("n", type=int)
    sp.add_argument("d", type=int)
    sp.add_argument("--verify", action="store_true", help="also verify the construction")
    sp.set_defaults(func=cmd_make_series)

    sp = sub.add_parser("snf", help="Smith normal form of an integer matrix")
    common(sp)
    sp.set_defaults(func=cmd_snf)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except docs.DocumentError as exc:
        payload = exc.to_dict()
    except UsageError as exc:
        payload = exc.payload
    except (UnsupportedCase, ValueError) as exc:
        payload = {"error": "input", "message": str(exc)}
    sys.stderr.write(json.dumps(payload) + "\n")
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
