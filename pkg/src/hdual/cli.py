"""Command-line front end.

Exit status: 0 on success, 1 when a check answers no (reflexive/equal/member/
lagrangian-check), 2 on errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from .errors import BudgetExceededError, HdualError, ParseError
from .field import GF
from .groebner import Ideal, buchberger, default_budget, elimination_ideal, ideal_equal
from .hasse import hasse_derive, hasse_h
from .duality import (check_reflexive, conormal_ideal, dual_ideal, suggest_h)
from .forms import cone_check, lagrangian_check, omega
from .poly import MonomialOrder, PolyRing, is_bihomogeneous, is_h_homogeneous
from .presets import run_preset

log = logging.getLogger("hdual")

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2


class Outcome:
    def __init__(self, doc: dict, text: str, status: int = EXIT_OK):
        self.doc = doc
        self.text = text
        self.status = status


# --- input helpers --------------------------------------------------------------

def _field(args) -> GF:
    return GF.parse(args.field, args.modulus)


def _names(spec: str) -> list:
    spec = spec.strip()
    if spec.isdigit():
        return [f"x{i}" for i in range(int(spec))]
    return [v.strip() for v in spec.split(",") if v.strip()]


def _read(text: str) -> str:
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            return fh.read()
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            return fh.read()
    return text


def parse_generators(ring: PolyRing, text: str) -> list:
    """One polynomial per line or per ``;``-separated piece.  Errors report the
    line and column in the original text."""
    gens = []
    for lineno, line in enumerate(text.splitlines() or [""], start=1):
        offset = 0
        for piece in line.split(";"):
            if piece.strip() and not piece.strip().startswith("#"):
                try:
                    gens.append(ring.parse(piece))
                except ParseError as exc:
                    raise ParseError(exc.message, text, lineno, offset + exc.column) from None
            offset += len(piece) + 1
    if not gens:
        raise ParseError("no generators given", text)
    return gens


def _ring_and_gens(args, order=None):
    F = _field(args)
    if not args.vars:
        raise HdualError("--vars is required")
    ring = PolyRing(F, _names(args.vars), order)
    if not args.gens:
        raise HdualError("--gens is required")
    return ring, parse_generators(ring, _read(args.gens))


def _levels(spec, default):
    if spec is None:
        return default
    return tuple(sorted({int(v) for v in spec.split(",") if v.strip()}))


def magma_listing(gens, ring: PolyRing, order_name="Lexicographical") -> str:
    lines = [f"Ideal of Polynomial ring of rank {ring.nvars} over GF({ring.field.spec_string()})",
             f"Order: {order_name}",
             f"Variables: {', '.join(ring.names)}",
             "Basis:", "["]
    body = [f"    {g}" for g in gens]
    lines.append(",\n".join(body))
    lines.append("]")
    return "\n".join(lines)


def _basis(gens):
    return [str(g) for g in gens]


# --- commands -------------------------------------------------------------------

def cmd_derive(args):
    ring, gens = _ring_and_gens(args)
    variables = _names(args.var) if args.var else list(ring.names)
    out = []
    for g in gens:
        row = {}
        for v in variables:
            if args.level is not None:
                d = hasse_h(g, v, args.level)
            else:
                d = hasse_derive(g, v, args.order)
            row[v] = str(d)
        out.append(row)
    doc = {"command": "derive", "level": args.level,
           "order": None if args.level is not None else args.order, "derivatives": out}
    if len(out) == 1 and len(variables) == 1:
        text = next(iter(out[0].values()))
    else:
        text = "\n".join("; ".join(f"{k}: {v}" for k, v in row.items()) for row in out)
    return Outcome(doc, text)


def cmd_gb(args):
    ring, gens = _ring_and_gens(args)
    order = MonomialOrder.grevlex(ring.nvars) if args.order == "grevlex" else MonomialOrder.lex(ring.nvars)
    gb = buchberger(gens, order, budget=args.budget)
    doc = {"command": "gb", "order": args.order, "basis": _basis(gb)}
    name = "Lexicographical" if args.order == "lex" else "Graded Reverse Lexicographical"
    return Outcome(doc, magma_listing(gb, ring, name))


def cmd_eliminate(args):
    ring, gens = _ring_and_gens(args)
    if not args.keep:
        raise HdualError("--keep is required")
    J = elimination_ideal(Ideal(gens, ring), _names(args.keep), budget=args.budget)
    gb = J.groebner_basis()
    return Outcome({"command": "eliminate", "keep": _names(args.keep), "basis": _basis(gb)},
                   magma_listing(gb, ring))


def cmd_member(args):
    ring, gens = _ring_and_gens(args)
    f = parse_generators(ring, args.poly)[0]
    I = Ideal(gens, ring)
    rem = I.reduce(f)
    ok = not rem
    return Outcome({"command": "member", "member": ok, "remainder": str(rem)},
                   "true" if ok else f"false (remainder {rem})", EXIT_OK if ok else EXIT_NO)


def cmd_equal(args):
    ring, gens = _ring_and_gens(args)
    other = parse_generators(ring, _read(args.other))
    ok = ideal_equal(Ideal(gens, ring), Ideal(other, ring))
    verdict = "equal" if ok else "not-equal"
    return Outcome({"command": "equal", "verdict": verdict}, verdict, EXIT_OK if ok else EXIT_NO)


def cmd_conormal(args):
    ring, gens = _ring_and_gens(args)
    H = _levels(args.levels, (args.h,))
    C = conormal_ideal(gens, H, args.use_lambda)
    doc = {"command": "conormal", "levels": list(H), "use_lambda": C.use_lambda,
           "variables": list(C.ring.names), "generators": _basis(C.generators)}
    return Outcome(doc, magma_listing(C.generators, C.ring))


def cmd_dual(args):
    ring, gens = _ring_and_gens(args)
    H = _levels(args.levels, (args.h,))
    C = conormal_ideal(gens, H, args.use_lambda)
    t0 = time.perf_counter()
    D = dual_ideal(C, args.h, args.budget)
    elapsed = time.perf_counter() - t0
    doc = {"command": "dual", "h": args.h, "levels": list(H),
           "variables": list(D.ring.names), "basis": _basis(D.generators)}
    if args.timings:
        doc["timings"] = {"dual": round(elapsed, 3)}
    return Outcome(doc, magma_listing(D.generators, D.ring))


def cmd_reflexive(args):
    ring, gens = _ring_and_gens(args)
    rep = check_reflexive(gens, args.h, args.h2, args.budget, args.use_lambda)
    doc = rep.to_dict()
    if not args.timings:
        doc.pop("timings")
    doc["command"] = "reflexive"
    parts = []
    parts.append(f"dual (level {rep.h}):")
    parts.append(magma_listing(rep.dual.generators, rep.dual.ring))
    if rep.second_dual is not None:
        parts.append(f"second dual (level {rep.h2}):")
        parts.append(magma_listing(rep.second_dual.generators, rep.second_dual.ring))
    parts.extend(f"warning: {w}" for w in rep.warnings)
    parts.append(f"verdict: {rep.verdict}")
    return Outcome(doc, "\n".join(parts), EXIT_OK if rep.equal else EXIT_NO)


def cmd_suggest_h(args):
    ring, gens = _ring_and_gens(args)
    h = suggest_h(gens, args.h_max)
    return Outcome({"command": "suggest-h", "h": h}, str(h))


def cmd_h_homog(args):
    ring, gens = _ring_and_gens(args)
    rows = []
    for g in gens:
        rows.append({"polynomial": str(g), "h_degree": is_h_homogeneous(g, args.h),
                     "homogeneous": g.is_homogeneous(), "bihomogeneous": is_bihomogeneous(g, args.h)})
    text = "\n".join(f"{r['polynomial']}: h-degree {r['h_degree']}, bihomogeneous {str(r['bihomogeneous']).lower()}"
                     for r in rows)
    return Outcome({"command": "h-homog", "h": args.h, "results": rows}, text)


def cmd_lagrangian(args):
    ring, gens = _ring_and_gens(args)
    H = _levels(args.levels, (args.h,))
    C = conormal_ideal(gens, H, args.use_lambda)
    cert = lagrangian_check(C, args.h)
    cone = cone_check(C)
    doc = {"command": "lagrangian-check", "cone": cone, **cert.to_dict()}
    lines = [f"omega after substitution: {cert.residual}"]
    for j, nu, c, ok in cert.pairs:
        lines.append(f"  pair (j={j}, nu={nu}): {c} {'cancels' if ok else 'does not cancel'}")
    lines.append(f"cone: {str(cone).lower()}")
    lines.append(f"lagrangian: {str(cert.holds).lower()}")
    ok = cert.holds and cone
    return Outcome(doc, "\n".join(lines), EXIT_OK if ok else EXIT_NO)


def cmd_omega(args):
    F = _field(args)
    v = [F.parse_element(t) for t in args.v.split(",")]
    w = [F.parse_element(t) for t in args.w.split(",")]
    val = omega(v, w, args.h, F)
    return Outcome({"command": "omega-eval", "h": args.h, "value": str(val)}, str(val))


def _one_preset(name, args):
    return run_preset(name, args.budget, args.seed)


def cmd_preset(args):
    if args.jobs > 1 and len(args.names) > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            docs = list(pool.map(lambda n: _one_preset(n, args), args.names))
    else:
        docs = [_one_preset(n, args) for n in args.names]
    doc = docs[0] if len(docs) == 1 else {"command": "preset", "results": docs}
    text = "\n\n".join(_preset_text(d) for d in docs)
    status = EXIT_NO if any(d.get("verdict") == "not-equal" for d in docs) else EXIT_OK
    return Outcome(doc, text, status)


def _preset_text(doc) -> str:
    lines = [f"preset {doc['preset']}{tuple(doc['args']) if doc['args'] else ''}"]
    for key, val in doc.items():
        if key in ("preset", "args"):
            continue
        if isinstance(val, list) and val and isinstance(val[0], str):
            lines.append(f"{key}:")
            lines.append("[\n" + ",\n".join(f"    {v}" for v in val) + "\n]")
        else:
            lines.append(f"{key}: {val}")
    return "\n".join(lines)


# --- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="3", help="p or p^k (default 3)")
    common.add_argument("--modulus", help="extension modulus coefficients, constant first")
    common.add_argument("--vars", help="comma-separated names, or a count n for x0..x{n-1}")
    common.add_argument("--gens", help="generators inline (';' or newline separated), or a file")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget", type=int, default=None,
                        help="Buchberger pair budget (default $HDUAL_BUDGET or 2000000)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--timings", action="store_true", help="include wall-clock timings")
    common.add_argument("--partial", default="hdual-partial.json",
                        help="where to write partial results when the budget runs out")
    common.add_argument("-v", "--verbose", action="store_true")

    lam = argparse.ArgumentParser(add_help=False)
    g = lam.add_mutually_exclusive_group()
    g.add_argument("--lambda", dest="use_lambda", action="store_const", const=True, default=None,
                   help="use multipliers l1..lr (default: only when r > 1)")
    g.add_argument("--no-lambda", dest="use_lambda", action="store_const", const=False)

    p = argparse.ArgumentParser(prog="hdual", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("derive", parents=[common], help="Hasse derivatives")
    s.add_argument("--var", help="variables to differentiate in (default all)")
    s.add_argument("--level", type=int, help="level h: derivative of order p^h")
    s.add_argument("--order", type=int, default=1, help="derivative order when --level is absent")
    s.set_defaults(func=cmd_derive)

    s = sub.add_parser("gb", parents=[common], help="reduced Groebner basis")
    s.add_argument("--order", choices=("lex", "grevlex"), default="lex")
    s.set_defaults(func=cmd_gb)

    s = sub.add_parser("eliminate", parents=[common], help="elimination ideal")
    s.add_argument("--keep", help="variables to keep")
    s.set_defaults(func=cmd_eliminate)

    s = sub.add_parser("member", parents=[common], help="ideal membership")
    s.add_argument("--poly", required=True)
    s.set_defaults(func=cmd_member)

    s = sub.add_parser("equal", parents=[common], help="ideal equality")
    s.add_argument("--other", required=True, help="second generator list (inline or file)")
    s.set_defaults(func=cmd_equal)

    for name, func, hlp in (("conormal", cmd_conormal, "conormal ideal"),
                            ("dual", cmd_dual, "dual variety"),
                            ("lagrangian-check", cmd_lagrangian, "symbolic Lagrangian check")):
        s = sub.add_parser(name, parents=[common, lam], help=hlp)
        s.add_argument("--h", type=int, default=0)
        s.add_argument("--levels", help="comma-separated level set (default: {h})")
        s.set_defaults(func=func)

    for name in ("reflexive", "bidual"):
        s = sub.add_parser(name, parents=[common, lam], help="dual of the dual, compared with the input")
        s.add_argument("--h", type=int, default=0)
        s.add_argument("--h2", type=int, default=0)
        s.set_defaults(func=cmd_reflexive)

    s = sub.add_parser("suggest-h", parents=[common], help="heuristic level")
    s.add_argument("--h-max", type=int, default=6)
    s.set_defaults(func=cmd_suggest_h)

    s = sub.add_parser("h-homog", parents=[common], help="h-degree and bihomogeneity")
    s.add_argument("--h", type=int, default=0)
    s.set_defaults(func=cmd_h_homog)

    s = sub.add_parser("omega-eval", parents=[common], help="evaluate the q-symplectic form")
    s.add_argument("--h", type=int, default=0)
    s.add_argument("--v", required=True, help="comma-separated coordinates (l | m)")
    s.add_argument("--w", required=True)
    s.set_defaults(func=cmd_omega)

    s = sub.add_parser("preset", parents=[common], help="run named examples")
    s.add_argument("names", nargs="+", help="e.g. appendix-fermat7 'hermitian(3,1,2)'")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_preset)
    return p


def render(outcome: Outcome, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(outcome.doc, indent=2, sort_keys=True)
    return outcome.text


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.budget is None:
        args.budget = default_budget()
    try:
        outcome = args.func(args)
    except BudgetExceededError as exc:
        partial = exc.partial or []
        with open(args.partial, "w", encoding="utf-8") as fh:
            json.dump({"error": str(exc), "partial": [str(g) for g in partial]}, fh, indent=2)
        print(f"error: {exc} (partial results in {args.partial})", file=sys.stderr)
        return EXIT_ERROR
    except (HdualError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(render(outcome, args.format))
    return outcome.status


if __name__ == "__main__":
    sys.exit(main())
