"""``ell``: command-line front end.

Groups are written ``"m1,m2,...:a1,a2,..."`` for ``_aA`` with ``A = Z/m1 + Z/m2 + ...``
(modulus 0 is Z).  Output is JSON carrying ``"schema": "ellgrp/1"`` unless
``--pretty`` is given.  Exit status: 0 success, 1 mathematical error
(singular curve, unmet precondition, ...), 2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .abelian import reduce, subgroup_closure
from .classify import canonical_form, classify_table
from .constructions import congruence_from_subgroup, coproduct, quotient
from .core import CayleyTable, PointedAbelian, flex_points, to_table, verify_axioms
from .curves import PrimeFieldCtx, TernaryCubic, curve_group, enumerate_points, is_smooth
from .errors import EllError
from .morphisms import (
    enumerate_morphisms, hom_exists, is_isomorphic, mor_elliptic, predicted_mor_structure,
)
from .rings import circ_factor, euclid_witness, is_circ_prime

SCHEMA = "ellgrp/1"
TABLE_LIMIT = 64
INT_LIMIT = 10 ** 12


class UsageError(Exception):
    """Bad command-line input; exit status 2."""


def _group(text: str) -> PointedAbelian:
    try:
        return PointedAbelian.parse(text)
    except (EllError, ValueError) as exc:
        raise UsageError(f"bad group descriptor {text!r}: {exc}") from exc


def _int(text: str, limit: int = INT_LIMIT) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise UsageError(f"not an integer: {text!r}") from exc
    if abs(v) > limit:
        raise UsageError(f"|{v}| exceeds {limit}")
    return v


def _int_list(text: str) -> list[int]:
    return [_int(t) for t in text.split(",") if t.strip()]


def _guard(n: int, force: bool) -> None:
    if n > TABLE_LIMIT and not force:
        raise UsageError(f"{n} elements exceeds {TABLE_LIMIT}; pass --force (may be slow)")


def _finite_table(P: PointedAbelian, force: bool) -> CayleyTable:
    if not P.is_finite:
        raise UsageError(f"{P.shape} is infinite")
    _guard(P.order, force)
    return to_table(P)


def _read_table(path: str) -> CayleyTable:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
        return CayleyTable.from_json(text)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except (EllError, ValueError) as exc:
        raise UsageError(f"malformed table in {path}: {exc}") from exc


def _curve(args) -> tuple[TernaryCubic, PrimeFieldCtx]:
    try:
        F = PrimeFieldCtx(args.p)
    except EllError as exc:
        raise UsageError(str(exc)) from exc
    if (args.cubic is None) == (args.weierstrass is None):
        raise UsageError("give exactly one of --cubic and --weierstrass")
    try:
        if args.cubic is not None:
            return TernaryCubic.parse(args.cubic), F
        a, b = _int_list(args.weierstrass)
    except (EllError, ValueError) as exc:
        raise UsageError(f"bad curve: {exc}") from exc
    return TernaryCubic.weierstrass(a, b), F


# -- commands ----------------------------------------------------------------


def cmd_verify_table(args) -> dict:
    T = _read_table(args.file)
    _guard(T.size, args.force)
    r = verify_axioms(T)
    out = {"size": T.size, "eg1": r.eg1, "eg2": r.eg2, "eg3": r.eg3, "ok": r.ok}
    if r.first_violation:
        out["violation"] = {"law": r.first_violation[0], "witness": list(r.first_violation[1])}
    return out


def cmd_table(args) -> dict:
    return json.loads(_finite_table(_group(args.group), args.force).to_json())


def cmd_classify(args) -> dict:
    if args.table:
        T = _read_table(args.table)
        _guard(T.size, args.force)
        if not 0 <= args.base < max(T.size, 1):
            raise UsageError("base index out of range")
        return {"canonical": classify_table(T, args.base).to_dict()}
    if not args.group:
        raise UsageError("give --group or --table")
    cf = canonical_form(_group(args.group))
    return {"canonical": cf.to_dict(), "form": str(cf)}


def cmd_hom(args) -> dict:
    S, T = _group(args.source), _group(args.target)
    out: dict = {"exists": hom_exists(S, T)}
    if T.is_finite:
        mors = enumerate_morphisms(S, T)
        out["count"] = len(mors)
        out["empty"] = not mors
        if args.list:
            out["morphisms"] = [f.to_dict() for f in mors]
    else:
        out["empty"] = not out["exists"]
    return out


def cmd_iso(args) -> dict:
    return {"isomorphic": is_isomorphic(_group(args.left), _group(args.right), args.method)}


def cmd_coproduct(args) -> dict:
    D = coproduct(_group(args.left), _group(args.right))
    return {
        "recipe": D.recipe,
        "object": D.object.descriptor(),
        "canonical": canonical_form(D.object).to_dict(),
        "inj_left": D.inj_left.to_dict(),
        "inj_right": D.inj_right.to_dict(),
    }


def cmd_quotient(args) -> dict:
    P = _group(args.group)
    table = _finite_table(P, args.force)
    try:
        c = reduce(P.shape, _int_list(args.base)) if args.base else P.shape.zero
        gens = [reduce(P.shape, _int_list(g)) for g in args.subgroup.split(";") if g.strip()]
    except EllError as exc:
        raise UsageError(str(exc)) from exc
    # subgroups of (S, +_c) are the translates c + H of subgroups H of A
    K = [c + h for h in subgroup_closure(gens, P.shape)]
    cong = congruence_from_subgroup(P, c, K)
    Q = quotient(table, cong)
    return {
        "classes": [list(cls) for cls in cong.classes],
        "table": json.loads(Q.to_json()),
        "canonical": classify_table(Q).to_dict(),
    }


def cmd_factor(args) -> dict:
    return {"input": args.n, "factors": list(circ_factor(args.n).factors)}


def cmd_circ_prime(args) -> dict:
    return {"input": args.n, "prime": is_circ_prime(args.n), "norm": abs(3 * args.n - 1)}


def cmd_euclid(args) -> dict:
    primes = _int_list(args.primes)
    return {"input": primes, "witness": euclid_witness(primes)}


def cmd_curve(args) -> dict:
    C, F = _curve(args)
    if C.is_zero(F):
        raise UsageError("the cubic is identically zero mod p")
    smooth = is_smooth(C, F)
    pts = enumerate_points(C, F)
    out: dict = {"points": len(pts)}
    if args.list:
        out["point_list"] = [list(P.coords) for P in pts]
    if not smooth:
        out["smooth"] = False
        return out
    if args.classify or args.table:
        _guard(len(pts), args.force)
        T = curve_group(C, F)
        out["flexes"] = len(flex_points(T))
        if args.classify:
            out["canonical"] = classify_table(T).to_dict()
        if args.table:
            out["table"] = json.loads(T.to_json())
    return out


def cmd_mor_structure(args) -> dict:
    S, T = _group(args.source), _group(args.target)
    if not T.is_finite:
        raise UsageError("the target must be finite")
    predicted = predicted_mor_structure(S, T)
    out: dict = {"predicted": predicted.descriptor() if predicted else None}
    if predicted is None:
        out["empty"] = True
        return out
    mors = enumerate_morphisms(S, T)
    _guard(len(mors), args.force)
    M = mor_elliptic(S, T)
    out.update(
        empty=False,
        size=len(M),
        axioms_ok=verify_axioms(M.table).ok,
        canonical=classify_table(M.table).to_dict(),
        predicted_canonical=canonical_form(predicted).to_dict(),
    )
    return out


# -- plumbing ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ell", description="Elliptic groups and elliptic rings.")
    ap.add_argument("--version", action="version", version=f"ell {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human readable output")
    common.add_argument("--force", action="store_true",
                        help=f"allow tables above {TABLE_LIMIT} elements (may be slow)")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        return p

    p = add("verify-table", cmd_verify_table, "check EG1-EG3 on a CayleyTable JSON file ('-' for stdin)")
    p.add_argument("file")
    p = add("table", cmd_table, "print the Cayley table of a finite _aA")
    p.add_argument("--group", required=True)
    p = add("classify", cmd_classify, "canonical form of a group or table")
    p.add_argument("--group")
    p.add_argument("--table")
    p.add_argument("--base", type=int, default=0, help="base index for --table")
    p = add("hom", cmd_hom, "morphisms between two groups")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--list", action="store_true")
    p = add("iso", cmd_iso, "isomorphism test")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--method", choices=["canonical", "enumerate"], default="canonical")
    p = add("coproduct", cmd_coproduct, "explicit coproduct diagram")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p = add("quotient", cmd_quotient, "quotient by the congruence of a subgroup")
    p.add_argument("--group", required=True)
    p.add_argument("--subgroup", required=True, help="generators of H in A, e.g. '3;0,1'")
    p.add_argument("--base", help="element c; the congruence class of c is c + H")
    for name, fn, help_ in (("factor", cmd_factor, "∘-factorization in Ell1(Z)"),
                            ("circ-prime", cmd_circ_prime, "∘-primality test")):
        p = add(name, fn, help_)
        p.add_argument("n", type=_int_arg)
    p = add("euclid", cmd_euclid, "a ∘-prime outside the given list")
    p.add_argument("primes")
    p = add("curve", cmd_curve, "points and group of a plane cubic over F_p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--cubic", help="10 coefficients: x3,y3,z3,x2y,x2z,xy2,y2z,xz2,yz2,xyz")
    p.add_argument("--weierstrass", help="'a,b' for y^2 z = x^3 + a x z^2 + b z^3")
    p.add_argument("--classify", action="store_true")
    p.add_argument("--table", action="store_true")
    p.add_argument("--list", action="store_true")
    p = add("mor-structure", cmd_mor_structure, "Mor(S, T) as an elliptic group")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    return ap


def _int_arg(text: str) -> int:
    try:
        return _int(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _pretty(data, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for key, value in data.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_pretty(value, indent + 1))
        else:
            lines.append(f"{pad}{key}: {json.dumps(value) if isinstance(value, (list, bool)) or value is None else value}")
    return "\n".join(lines)


def _emit(data: dict, pretty: bool) -> None:
    if pretty:
        print(_pretty({k: v for k, v in data.items() if k != "schema"}))
    else:
        print(json.dumps(data, separators=(",", ":")))


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload = args.func(args)
    except UsageError as exc:
        print(f"ell: error: {exc}", file=sys.stderr)
        return 2
    except EllError as exc:
        _emit({"schema": SCHEMA, "error": type(exc).__name__, "message": str(exc)}, args.pretty)
        return 1
    _emit({"schema": SCHEMA, **payload}, args.pretty)
    return 0


if __name__ == "__main__":
    sys.exit(main())
