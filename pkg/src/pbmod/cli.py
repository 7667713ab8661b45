"""Command line: ``pbmod encode | verify | compare``.

Exit codes: 0 success, 1 a verification failed, 2 unreadable or
malformed input, 3 encoding error, 4 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional, Sequence, Tuple

from pbmod.core import PBConstraint, Status, normalize
from pbmod.encoding import FAMILIES, EncoderSpec, translate, translate_many
from pbmod.errors import ParseError, PBModError, ResourceLimit
from pbmod.io import dump_var_map, parse_opb, write_dimacs
from pbmod.up_engine import check_arc_consistency, check_valid_translation

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_ENCODE, EXIT_LIMIT = 0, 1, 2, 3, 4
AC_MAX_VARS = 12


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read(path: str) -> List[PBConstraint]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _Exit(EXIT_PARSE, "cannot read %s: %s" % (path, exc.strerror))
    except UnicodeDecodeError:
        raise _Exit(EXIT_PARSE, "%s is not UTF-8 text" % path)
    try:
        return parse_opb(text)
    except PBModError as exc:
        raise _Exit(EXIT_PARSE, "%s: %s" % (path, exc))


def _specs(families: str, moduli: Optional[str], radix: int, pb_backend: str) -> List[EncoderSpec]:
    names = list(FAMILIES) if families == "all" else [f.strip() for f in families.split(",") if f.strip()]
    out = []
    for name in names:
        try:
            modular = EncoderSpec(name).is_modular
            out.append(EncoderSpec.parse(name, moduli if modular else None, radix, pb_backend))
        except (ValueError, PBModError) as exc:
            raise _Exit(EXIT_ENCODE, "bad encoder %r: %s" % (name, exc))
    return out


def _spec(args) -> EncoderSpec:
    specs = _specs(args.encoder, args.moduli, args.radix, args.pb_backend)
    if len(specs) != 1:
        raise _Exit(EXIT_ENCODE, "encode takes exactly one encoder")
    if args.moduli and not specs[0].is_modular:
        raise _Exit(EXIT_ENCODE, "--moduli only applies to modular encoders")
    return specs[0]


def dense(constraints: Sequence[PBConstraint]) -> Tuple[List[PBConstraint], Dict[int, str]]:
    """Renumber source variables 1..k in increasing name order."""
    names = sorted({v for q in constraints for v in q.variables})
    index = {v: i + 1 for i, v in enumerate(names)}
    out = []
    for q in constraints:
        terms = [(a, index[l] if l > 0 else -index[-l]) for a, l in q.terms]
        out.append(PBConstraint(terms, q.op, q.bound))
    return out, {index[v]: "x%d" % v for v in names}


def _constraint_stats(i: int, q: PBConstraint, spec: EncoderSpec) -> Dict:
    pos = normalize(q)
    t = translate(q, spec)
    row = {
        "index": i,
        "n": len(q.terms),
        "S": pos.total if pos.status is Status.PROPER else None,
        "moduli": [m for m, _ in t.components],
    }
    row.update(t.stats())
    return row


def cmd_encode(args) -> int:
    constraints, names = dense(_read(args.input))
    spec = _spec(args)
    try:
        t = translate_many(constraints, spec)
        stats = [_constraint_stats(i, q, spec) for i, q in enumerate(constraints)]
    except PBModError as exc:
        raise _Exit(EXIT_ENCODE, "encoding failed: %s: %s" % (type(exc).__name__, exc))
    cnf, vmap = write_dimacs(t, args.assert_root, names)
    with open(args.out, "wb") as fh:
        fh.write(cnf)
    with open(args.out + ".map.json", "wb") as fh:
        fh.write(dump_var_map(vmap))
    if args.stats:
        total = dict(t.stats())
        if args.assert_root:
            total["clauses"] += 1
            total["literals"] += 1
        doc = {"encoder": spec.family, "constraints": stats, "total": total}
        with open(args.stats, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    constraints = _read(args.input)
    specs = _specs(args.encoder, args.moduli, args.radix, args.pb_backend)
    ok = True
    print("%-5s %-16s %3s  %s" % ("index", "encoder", "n", "result"))
    for i, q in enumerate(constraints):
        for spec in specs:
            if len(q.variables) > args.limit_vars:
                raise _Exit(EXIT_LIMIT, "constraint %d has %d variables, limit is %d"
                            % (i, len(q.variables), args.limit_vars))
            try:
                result = check_valid_translation(q, translate(q, spec), max_inputs=args.limit_vars)
            except ResourceLimit as exc:
                raise _Exit(EXIT_LIMIT, "constraint %d: %s" % (i, exc))
            except PBModError as exc:
                raise _Exit(EXIT_ENCODE, "constraint %d: %s: %s" % (i, type(exc).__name__, exc))
            verdict = "pass" if result else "FAIL (%s; witness %s)" % (result.reason, result.witness)
            ok = ok and result.passed
            print("%-5d %-16s %3d  %s" % (i, spec.family, len(q.variables), verdict))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_compare(args) -> int:
    constraints = _read(args.input)
    specs = _specs(args.encoders, args.moduli, args.radix, args.pb_backend)
    rows = []
    for i, q in enumerate(constraints):
        n = len(q.variables)
        for spec in specs:
            try:
                t = translate(q, spec)
                report = check_arc_consistency(q, t, max_inputs=AC_MAX_VARS) if n <= AC_MAX_VARS else None
            except ResourceLimit as exc:
                raise _Exit(EXIT_LIMIT, "constraint %d: %s" % (i, exc))
            except PBModError as exc:
                raise _Exit(EXIT_ENCODE, "constraint %d: %s: %s" % (i, type(exc).__name__, exc))
            row = {"constraint_index": i, "encoder": spec.family, "status": "ok"}
            row.update(t.stats())
            row["up_detectable"] = report.up_detectable if report else None
            row["up_inferable"] = report.up_inferable if report else None
            row["up_detectable_empty"] = report.empty_detectable if report else None
            row["up_inferable_empty"] = report.empty_inferable if report else None
            rows.append(row)
        rows.append({"constraint_index": i, "encoder": "totalizer", "status": "unavailable",
                     "vars": None, "clauses": None, "literals": None,
                     "up_detectable": None, "up_inferable": None,
                     "up_detectable_empty": None, "up_inferable_empty": None})
    print("%-5s %-16s %7s %8s %9s %6s %6s" % ("index", "encoder", "vars", "clauses", "literals", "detect", "infer"))
    for r in rows:
        print("%-5d %-16s %7s %8s %9s %6s %6s" % (
            r["constraint_index"], r["encoder"], _cell(r["vars"]), _cell(r["clauses"]),
            _cell(r["literals"]), _cell(r["up_detectable"]), _cell(r["up_inferable"])))
    with open(args.report, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(rows, indent=2) + "\n")
    return EXIT_OK


def _cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pbmod", description="Pseudo-Boolean to CNF translation.")
    sub = parser.add_subparsers(dest="command", required=True)

    def encoder_options(p, flag, default):
        p.add_argument(flag, default=default, help="encoder family, comma list or 'all'")
        p.add_argument("--moduli", help="primes | naturals | primepowers | list:2,3,5")
        p.add_argument("--radix", type=int, default=4, help="digit radix for sortnet")
        p.add_argument("--pb-backend", default="bdd", choices=["bdd", "adder", "sortnet"],
                       help="PB encoder used by modular-via-pb")

    p = sub.add_parser("encode", help="write DIMACS and a variable map")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    encoder_options(p, "--encoder", "modular-dp")
    p.add_argument("--assert-root", action="store_true")
    p.add_argument("--stats", metavar="JSONFILE")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("verify", help="check translation validity by exhaustive solving")
    p.add_argument("--in", dest="input", required=True)
    encoder_options(p, "--encoder", "modular-dp")
    p.add_argument("--limit-vars", type=int, default=16)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", help="sizes and propagation strength per encoder")
    p.add_argument("--in", dest="input", required=True)
    encoder_options(p, "--encoders", "all")
    p.add_argument("--report", required=True, metavar="JSONFILE")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        print("pbmod: %s" % exc, file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
