"""Command line front end: ``conjstab <command> [--input FILE] ...``.

Exit codes: 0 success, 2 domain or input error, 1 internal failure.
"""
from __future__ import annotations

import argparse
import sys

from . import jsonio
from .algebra import (
    algebra_closure, is_completely_reducible, is_irreducible, is_isotropic,
)
from .corpus import run_corpus
from .jsonio import InputError
from .linalg import LinalgError
from .onepar import InvalidPointError, limit_conj, limit_tuple, weight_decomp
from .stability import (
    NotARepresentationError, RepPresentation, center_dim, classify, classify_rep,
    destabilize, find_intertwiner, h_approx, hm_crosscheck, orbit_notes,
    stabilizer_dim,
)

COMMANDS = ("classify", "limit", "mu", "algebra", "centralizer", "orbit-member",
            "destab", "hm-check", "h-approx", "check-rep", "corpus")


class DomainError(Exception):
    def __init__(self, code: str, message: str, location: str | None = None):
        super().__init__(message)
        self.code = code
        self.location = location


def _read(args) -> object:
    if args.input and args.input != "-":
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    return jsonio.load_json(text)


def _point(obj, field):
    return jsonio.parse_point(obj, field)


def _wrapped(obj, keys: set):
    if not isinstance(obj, dict):
        raise InputError("BAD_TYPE", "expected an object")
    for k in obj:
        if k not in keys:
            raise InputError("UNKNOWN_KEY", f"unexpected key {k!r}", f"$.{k}")
    for k in keys:
        if k not in obj:
            raise InputError("MISSING_KEY", f"missing key {k!r}")
    return obj


def cmd_classify(obj, args):
    return classify(_point(obj, args.field), args.seed).to_dict()


def cmd_algebra(obj, args):
    a = algebra_closure(_point(obj, args.field))
    return {
        "dim": a.dim,
        "radical_dim": a.radical_dim,
        "commutant_dim": a.commutant_dim,
        "irreducible": is_irreducible(a),
        "completely_reducible": is_completely_reducible(a),
        "isotropic": is_isotropic(a),
    }


def cmd_centralizer(obj, args):
    x = _point(obj, args.field)
    a = algebra_closure(x)
    return {
        "commutant_dim": a.commutant_dim,
        "stabilizer_dim": stabilizer_dim(x.group, a.commutant_dim),
        "center_dim": center_dim(x.group),
        "basis": [jsonio.matrix_to_json(m) for m in a.commutant_basis],
    }


def cmd_limit(obj, args):
    obj = _wrapped(obj, {"point", "cochar"})
    x = jsonio.parse_point(obj["point"], args.field, "$.point")
    lam = jsonio.parse_cochar(obj["cochar"], x.n, args.field, "$.cochar")
    if x.group == "SL" and sum(lam.weights) != 0:
        raise InputError("BAD_WEIGHTS", "SL cocharacter weights must sum to zero", "$.cochar.weights")
    lim = limit_tuple(lam, x)
    return {"exists": lim is not None, "limit": jsonio.point_to_json(lim) if lim else None}


def cmd_mu(obj, args):
    obj = _wrapped(obj, {"cochar", "matrix"})
    v = jsonio.parse_matrix(obj["matrix"], args.field, "$.matrix")
    lam = jsonio.parse_cochar(obj["cochar"], v.n, args.field, "$.cochar")
    if v.is_zero():
        raise DomainError("ZERO_VECTOR", "mu is undefined for the zero matrix", "$.matrix")
    dec = weight_decomp(lam, v)
    return {
        "mu": dec.components[0][0],
        "limit_exists": limit_conj(lam, v) is not None,
        "components": [{"weight": w, "matrix": jsonio.matrix_to_json(c)} for w, c in dec.components],
    }


def cmd_orbit_member(obj, args):
    obj = _wrapped(obj, {"x", "y"})
    x = jsonio.parse_point(obj["x"], args.field, "$.x")
    y = jsonio.parse_point(obj["y"], args.field, "$.y")
    if (x.group, x.kind, x.n, len(x)) != (y.group, y.kind, y.n, len(y)):
        raise InputError("SIZE_MISMATCH", "x and y differ in group, kind, size or length")
    g = find_intertwiner(x, y, args.seed)
    return {
        "member": g is not None,
        "intertwiner": jsonio.matrix_to_json(g) if g is not None else None,
        "notes": orbit_notes(x, g),
        "seed": args.seed,
    }


def cmd_destab(obj, args):
    w = destabilize(_point(obj, args.field), args.seed)
    return {"witness": w.to_dict() if w else None, "seed": args.seed}


def cmd_hm_check(obj, args):
    out = hm_crosscheck(_point(obj, args.field), args.bound, args.seed).to_dict()
    out["seed"] = args.seed
    return out


def cmd_h_approx(obj, args):
    return h_approx(_point(obj, args.field), args.bound).to_dict()


def cmd_check_rep(obj, args):
    obj = _wrapped(obj, {"presentation", "point"})
    pres = obj["presentation"]
    jsonio._expect_keys(pres, {"generators", "relators"}, {"generators", "relators"}, "$.presentation")
    ngens = pres["generators"]
    if not isinstance(ngens, int) or isinstance(ngens, bool) or ngens < 1:
        raise InputError("BAD_PRESENTATION", "generators must be a positive integer", "$.presentation.generators")
    rels = pres["relators"]
    if not isinstance(rels, list):
        raise InputError("BAD_PRESENTATION", "relators must be a list", "$.presentation.relators")
    words = tuple(jsonio.parse_word(r, ngens, f"$.presentation.relators[{k}]") for k, r in enumerate(rels))
    x = jsonio.parse_point(obj["point"], args.field, "$.point")
    if x.kind != "group":
        raise InputError("BAD_KIND", "representation images must be group elements", "$.point.kind")
    if len(x) != ngens:
        raise InputError("SIZE_MISMATCH", f"expected {ngens} images", "$.point.matrices")
    try:
        return classify_rep(RepPresentation(ngens, words), x, args.seed).to_dict()
    except NotARepresentationError as e:
        raise DomainError("RELATOR_FAILED", str(e), f"$.presentation.relators[{e.index}]") from None


HANDLERS = {
    "classify": cmd_classify,
    "limit": cmd_limit,
    "mu": cmd_mu,
    "algebra": cmd_algebra,
    "centralizer": cmd_centralizer,
    "orbit-member": cmd_orbit_member,
    "destab": cmd_destab,
    "hm-check": cmd_hm_check,
    "h-approx": cmd_h_approx,
    "check-rep": cmd_check_rep,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="conjstab",
                                description="Stability of matrix tuples under simultaneous conjugation.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", help="JSON input file (default: standard input)")
    p.add_argument("--bound", type=int, default=2, help="weight bound B for cocharacter sampling")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", choices=("Q", "QI"), default="Q")
    p.add_argument("--format", choices=("json",), default="json")
    return p


def run(args, out=None) -> int:
    out = out or sys.stdout
    try:
        if args.bound < 1:
            raise InputError("BAD_BOUND", "bound must be at least 1")
        if args.command == "corpus":
            cases = run_corpus()
            passed = all(c["passed"] for c in cases)
            out.write(jsonio.dumps({"cases": cases, "passed": passed}))
            return 0 if passed else 1
        result = HANDLERS[args.command](_read(args), args)
    except (InputError, DomainError) as e:
        out.write(jsonio.dumps({"error": {"code": e.code, "message": str(e),
                                          "location": e.location}}))
        return 2
    except (InvalidPointError, LinalgError) as e:
        out.write(jsonio.dumps({"error": {"code": e.code, "message": str(e), "location": None}}))
        return 2
    out.write(jsonio.dumps(result))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except Exception as e:  # invariant breach
        sys.stderr.write(f"internal error: {type(e).__name__}: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
