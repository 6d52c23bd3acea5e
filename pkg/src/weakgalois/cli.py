"""Command line front end: ``weakgalois <command> ...``.

Exit codes: 0 pass (or constructed), 1 checked and failed or hypothesis
failed, 2 usage or parse error.  Paths of the form ``demo:<name>`` load a
built-in example instead of a file.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import galois as gal
from .exactlin import QQ, Field
from .examples import DEMOS, comodule_subalgebra_pipeline, demo_parts
from .fileformat import ParseError, StructureFile, dumps, from_parts, load
from .report import Check, HypothesisFailed, Report, TheoremViolation, truth
from .structures import (
    RightModule,
    check_algebra,
    check_coalgebra,
    check_comodule_algebra,
    check_module_coalgebra,
)
from .weak_entwining import (
    build_coring_ll,
    build_coring_rr,
    check_coring,
    check_invertible,
    check_ll,
    check_rr,
    check_weak_entwined_module_rr,
    make_invertible,
)
from .weak_hopf import build_invertible_from_weak_hopf, check_weak_bialgebra, check_weak_hopf

CHECKS = (
    "algebra",
    "coalgebra",
    "weak-entwining-rr",
    "weak-entwining-ll",
    "invertible",
    "weak-bialgebra",
    "weak-hopf",
    "comodule-algebra",
    "module-coalgebra",
    "entwined-module",
)
ROUTES = ("direct", "coseparable", "projective", "kreimer-takeuchi", "subalgebra")


class UsageError(Exception):
    pass


def parse_field(text: str) -> Field:
    if text in ("Q", "QQ"):
        return QQ
    if text.startswith("Fp:"):
        try:
            return Field.prime(int(text[3:]))
        except ValueError as exc:
            raise UsageError(f"bad field {text!r}: {exc}") from None
    raise UsageError(f"bad field {text!r}; use Q or Fp:<p>")


def load_structure(path: str, field: Field = QQ) -> StructureFile:
    if path.startswith("demo:"):
        name = path[5:]
        if name not in DEMOS:
            raise UsageError(f"unknown demo {name!r}; known: {', '.join(DEMOS)}")
        return from_parts(field, demo_parts(name, field))
    try:
        return load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


# -- commands -------------------------------------------------------------------------------


def cmd_check(sf: StructureFile, what: str) -> Report:
    if what == "algebra":
        sf.need("algebra")
        return check_algebra(sf.algebra)
    if what == "coalgebra":
        sf.need("coalgebra")
        return check_coalgebra(sf.coalgebra)
    if what == "weak-entwining-rr":
        return check_rr(sf.rr())
    if what == "weak-entwining-ll":
        return check_ll(sf.ll())
    if what == "invertible":
        return check_invertible(sf.rr(), sf.ll())
    if what == "weak-bialgebra":
        return check_weak_bialgebra(sf.weak_bialgebra())
    if what == "weak-hopf":
        return check_weak_hopf(sf.weak_hopf())
    if what == "comodule-algebra":
        return check_comodule_algebra(sf.algebra, sf.comodule(), sf.weak_bialgebra())
    if what == "module-coalgebra":
        wb = sf.weak_bialgebra()
        sf.need("action")
        return check_module_coalgebra(sf.coalgebra, RightModule(wb.alg, sf.action), wb)
    if what == "entwined-module":
        return check_weak_entwined_module_rr(sf.rr(), sf.comodule(), sf.algebra.mul)
    raise UsageError(f"unknown check {what!r}")


def cmd_coring(sf: StructureFile, side: str):
    axioms = check_rr(sf.rr()) if side == "rr" else check_ll(sf.ll())
    rep = Report(f"coring ({side})")
    rep.extend(axioms, "entwining.")
    if not axioms.ok:
        return rep, None
    g = None
    if side == "rr" and sf.coaction is not None:
        g = sf.coaction @ sf.algebra.unit
    build = build_coring_rr if side == "rr" else build_coring_ll
    try:
        x = build(sf.rr() if side == "rr" else sf.ll(), grouplike=g)
    except TheoremViolation as exc:
        rep.add(Check("construction", False, {"at": None, "reason": str(exc)}))
        return rep, None
    rep.extend(check_coring(x), "coring.")
    rep.dims.update({"carrier": x.dim, "balanced square": x.balanced.dim})
    return rep, x


def coring_to_dict(x) -> dict:
    k = x.field

    def rows(mat):
        return [[k.format(v) for v in r] for r in mat]

    out = {
        "side": x.side,
        "carrier": rows(x.carrier.basis),
        "left": rows(x.left.mat),
        "right": rows(x.right.mat),
        "coproduct": rows(x.coproduct.mat),
        "balanced_representatives": rows(x.balanced.sect.mat),
        "counit": rows(x.counit.mat),
    }
    if x.grouplike is not None:
        out["grouplike"] = [k.format(v) for v in x.grouplike.mat[:, 0]]
    return out


def _invertible(sf: StructureFile):
    if sf.psiR is not None and sf.psiL is not None:
        return make_invertible(sf.rr(), sf.ll())
    h = sf.weak_hopf()
    return build_invertible_from_weak_hopf(h, sf.algebra, sf.comodule())


def cmd_galois(sf: StructureFile, route: str) -> Report:
    if route == "direct":
        try:
            ctx = gal.galois_context(sf.rr(), sf.comodule())
        except HypothesisFailed as exc:
            return _not_applicable("direct canonical map", exc)
        verdict = gal.canonical_map(ctx)
        rep = verdict.report()
        rep.add(truth("coinvariants agree", gal.coinvariants_grouplike(ctx) == ctx.B))
        rep.data["canBijective"] = verdict.galois
        return rep
    if route == "subalgebra":
        sf.need("subalgebra")
        try:
            return comodule_subalgebra_pipeline(sf.weak_hopf(), sf.subalgebra)
        except HypothesisFailed as exc:
            return _not_applicable("comodule subalgebra", exc)
    if route == "kreimer-takeuchi":
        rep = gal.kreimer_takeuchi_check(sf.weak_hopf(), sf.algebra, sf.comodule())
        rep.data["canBijective"] = bool(rep.data.get("galois"))
        return rep
    pipeline = {"coseparable": gal.theorem51_pipeline, "projective": gal.theorem61_pipeline}[route]
    try:
        rep = pipeline(_invertible(sf), sf.comodule())
    except HypothesisFailed as exc:
        return _not_applicable(route, exc)
    rep.data["canBijective"] = True
    return rep


def _not_applicable(title: str, exc: HypothesisFailed) -> Report:
    rep = Report(title, applicable=False)
    if exc.report is not None:
        rep.checks = list(exc.report.checks)
        rep.dims = dict(exc.report.dims)
    rep.data["hypothesis_failed"] = exc.name
    return rep


def cmd_cointegral(sf: StructureFile) -> Report:
    sf.need("coalgebra")
    c = sf.coalgebra
    found = gal.find_cointegral(c)
    if found is None:
        rep = Report("cointegral", dims={"C": c.dim})
        rep.add(truth("cointegral exists", False))
        return rep
    rep = gal.check_cointegral(c, found.delta)
    rep.data["delta"] = [c.field.format(v) for v in found.delta.mat[0]]
    return rep


# -- entry point -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report on stdout")
    common.add_argument("--verbose", action="store_true", help="include witnesses for passing checks")
    common.add_argument("--field", default="Q", help="field for demo: paths (Q or Fp:<p>)")

    p = argparse.ArgumentParser(prog="weakgalois", description="Exact checks for weak entwinings and Galois extensions.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="run an axiom checker")
    c.add_argument("--what", required=True, choices=CHECKS)
    c.add_argument("path")
    c = sub.add_parser("coring", parents=[common], help="build and verify the coring")
    c.add_argument("path")
    c.add_argument("--side", choices=("rr", "ll"), default="rr")
    c.add_argument("--out")
    c = sub.add_parser("galois", parents=[common], help="decide or prove the Galois property")
    c.add_argument("path")
    c.add_argument("--route", choices=ROUTES, default="direct")
    c = sub.add_parser("cointegral", parents=[common], help="search for a cointegral")
    c.add_argument("path")
    c = sub.add_parser("demo", parents=[common], help="print a built-in structure file")
    c.add_argument("name", choices=sorted(DEMOS))
    return p


def emit(rep: Report, args) -> int:
    if args.json:
        print(rep.to_json(verbose=args.verbose))
    else:
        print(rep.summary())
        if args.verbose and rep.data:
            print(json.dumps(rep.data, indent=2, ensure_ascii=False))
    return 0 if rep.status == "pass" else 1


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        field = parse_field(args.field)
        if args.command == "demo":
            print(dumps(from_parts(field, demo_parts(args.name, field))))
            return 0
        sf = load_structure(args.path, field)
        try:
            if args.command == "check":
                rep = cmd_check(sf, args.what)
            elif args.command == "coring":
                rep, x = cmd_coring(sf, args.side)
                if args.out and x is not None:
                    with open(args.out, "w", encoding="utf-8") as fh:
                        fh.write(json.dumps(coring_to_dict(x), indent=2) + "\n")
            elif args.command == "galois":
                rep = cmd_galois(sf, args.route)
            else:
                rep = cmd_cointegral(sf)
        except TheoremViolation as exc:
            rep = Report(args.command)
            rep.add(Check("theorem violation", False, {"at": None, "reason": str(exc)}))
        return emit(rep, args)
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
