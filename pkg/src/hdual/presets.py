"""Named worked examples: constructors plus the pipelines the CLI runs on them."""

from __future__ import annotations

import ast
import random
import re

from .errors import ConfigurationError, ParseError
from .field import GF, is_prime
from .duality import (check_reflexive, conormal_ideal, dual_ideal, dual_variety,
                      intermediate_ideal, quadratic_form_dual)
from .forms import cone_check, lagrangian_check
from .poly import PolyRing


def _ring(F, n):
    return PolyRing(F, [f"x{i}" for i in range(n + 1)])


def fermat(F: GF, n: int, d: int) -> list:
    """``sum_{i=0}^n x_i^d``."""
    R = _ring(F, n)
    return [sum((R.var(i) ** d for i in range(n + 1)), R.zero)]


def hermitian(p: int, h: int, n: int) -> list:
    return fermat(GF(p), n, p**h + 1)


def fermat_2p1(p: int, n: int) -> list:
    return fermat(GF(p), n, 2 * p + 1)


def generalized_fermat(F: GF, n: int, k: int, lambdas) -> list:
    """``x0^k + x1^k + x2^k`` and ``l_i x0^k + x1^k + x_{i+2}^k`` for i = 1..n-2."""
    if n < 2:
        raise ConfigurationError("generalized Fermat curves need n >= 2")
    lambdas = list(lambdas)
    if len(lambdas) != n - 2:
        raise ConfigurationError(f"need {n - 2} lambda values, got {len(lambdas)}")
    R = _ring(F, n)
    x = R.gens
    gens = [x[0] ** k + x[1] ** k + x[2] ** k]
    for i, lam in enumerate(lambdas, start=1):
        gens.append(x[0] ** k * F(lam) + x[1] ** k + x[i + 2] ** k)
    return gens


def random_plane_curve(p: int, d: int, seed: int) -> list:
    """A random ternary form of degree d over GF(p) with a nonzero x0^d term."""
    rng = random.Random(seed)
    F = GF(p)
    R = _ring(F, 2)
    terms = {}
    for a in range(d + 1):
        for b in range(d + 1 - a):
            terms[(a, b, d - a - b)] = rng.randrange(p)
    terms[(d, 0, 0)] = 1
    return [R.from_dict(terms)]


# --- preset parsing -----------------------------------------------------------

PRESETS = ("appendix-fermat7", "fermat5-char101", "hermitian", "fermat-2p1",
           "gen-fermat", "quadratic", "random-plane-curve")


def parse_preset(text: str):
    """``name`` or ``name(args)`` / ``name:args`` -> (name, args tuple)."""
    m = re.fullmatch(r"\s*([a-z0-9-]+)\s*(?:\((.*)\)|:(.*))?\s*", text)
    if not m:
        raise ParseError(f"bad preset {text!r}", text)
    name = m.group(1)
    raw = m.group(2) if m.group(2) is not None else m.group(3)
    if name not in PRESETS:
        raise ConfigurationError(f"unknown preset {name!r}; known: {', '.join(PRESETS)}")
    if not raw:
        return name, ()
    try:
        args = ast.literal_eval(f"({raw},)")
    except (ValueError, SyntaxError) as exc:
        raise ParseError(f"bad preset arguments {raw!r}", text) from exc
    return name, tuple(args)


def _basis(gens):
    return [str(g) for g in gens]


def _need(args, k, usage):
    if len(args) != k:
        raise ConfigurationError(f"usage: {usage}")


def run_preset(text: str, budget=None, seed=0) -> dict:
    """Run a preset and return its report document."""
    name, args = parse_preset(text)
    doc = {"preset": name, "args": list(args)}
    if name == "appendix-fermat7":
        _need(args, 0, "appendix-fermat7")
        I = fermat(GF(3), 2, 7)
        C = conormal_ideal(I, (0, 1))
        doc.update(field="3", input=_basis(I), conormal=_basis(C.generators),
                   intermediate=_basis(intermediate_ideal(C, budget).generators))
        doc["dual"] = _basis(dual_ideal(C, 1, budget).generators)
        rep = check_reflexive(I, 1, 0, budget)
        doc.update(second_dual=_basis(rep.second_dual.generators), verdict=rep.verdict)
    elif name == "fermat5-char101":
        _need(args, 0, "fermat5-char101")
        I = fermat(GF(101), 2, 5)
        rep = check_reflexive(I, 0, 0, budget)
        doc.update(field="101", input=_basis(I), dual=_basis(rep.dual.generators),
                   second_dual=_basis(rep.second_dual.generators), verdict=rep.verdict)
    elif name == "hermitian":
        _need(args, 3, "hermitian(p,h,n)")
        p, h, n = args
        I = hermitian(p, h, n)
        D = dual_variety(I, h, budget=budget)
        q = p**h
        ident = [[1 if i == j else 0 for j in range(n + 1)] for i in range(n + 1)]
        Q = quadratic_form_dual(ident, q, GF(p))
        doc.update(field=str(p), input=_basis(I), dual=_basis(D.generators),
                   closed_form=_basis(Q.dual.generators),
                   agree=_basis(D.generators) == _basis(Q.dual.generators))
    elif name == "fermat-2p1":
        _need(args, 2, "fermat-2p1(p,n)")
        p, n = args
        I = fermat_2p1(p, n)
        D = dual_variety(I, 1, budget=budget)
        doc.update(field=str(p), input=_basis(I), h=1, dual=_basis(D.generators))
    elif name == "gen-fermat":
        if len(args) not in (4, 5):
            raise ConfigurationError("usage: gen-fermat(p,h,n,[lambdas]) or gen-fermat(p,h,n,[lambdas],k)")
        p, h, n, lambdas = args[:4]
        k = args[4] if len(args) == 5 else p**h + 1
        I = generalized_fermat(GF(p), n, k, lambdas)
        C = conormal_ideal(I, (h,))
        cert = lagrangian_check(C, h)
        doc.update(field=str(p), input=_basis(I), h=h, k=k, conormal=_basis(C.generators),
                   lagrangian=cert.holds, cone=cone_check(C))
        doc["dual"] = _basis(dual_ideal(C, h, budget).generators)
    elif name == "quadratic":
        if len(args) not in (2, 3):
            raise ConfigurationError("usage: quadratic(A,q) or quadratic(A,q,p)")
        A, q = args[:2]
        p = args[2] if len(args) == 3 else next(d for d in range(2, q + 1) if q % d == 0 and is_prime(d))
        F = GF(p)
        Q = quadratic_form_dual(A, q, F)
        D = dual_variety([Q.form], Q.h, budget=budget)
        doc.update(field=str(p), q=q, form=str(Q.form), dual=_basis(Q.dual.generators),
                   elimination=_basis(D.generators), relation=str(Q.relation),
                   agree=_basis(D.generators) == _basis(Q.dual.generators))
    elif name == "random-plane-curve":
        _need(args, 2, "random-plane-curve(p,d)")
        p, d = args
        I = random_plane_curve(p, d, seed)
        rep = check_reflexive(I, 0, 0, budget)
        doc.update(field=str(p), seed=seed, input=_basis(I), dual=_basis(rep.dual.generators),
                   verdict=rep.verdict)
    return doc


__all__ = ["fermat", "hermitian", "fermat_2p1", "generalized_fermat",
           "random_plane_curve", "parse_preset", "run_preset", "PRESETS"]
