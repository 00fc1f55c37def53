"""Conormal ideals, dual varieties and reflexivity checks.

The level-h conormal ideal of ``I = <f_1..f_r>`` lives in
``k[x, l_1..l_r, y^(h) for h in H]`` and is generated by ``I`` together with
``y_j^(h) - sum_i l_i * D^(h)_{x_j} f_i``.  Eliminating everything except one
``y`` block gives the level-h dual variety.

Covector variables are named ``y{j}`` when there is a single level and
``y{j}_{h}`` otherwise; multipliers are ``l{i}``.
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field

from .errors import (ConfigurationError, NoSuggestionError, NotOnVarietyError,
                     SingularMatrixError)
from .field import GF, FieldElement
from .groebner import Ideal, elimination_ideal, ideal_equal
from .hasse import hasse_h
from .poly import MonomialOrder, Polynomial, PolyRing, is_bihomogeneous

H_MAX = 6


def _as_ideal(I) -> Ideal:
    if isinstance(I, Ideal):
        return I
    if isinstance(I, Polynomial):
        return Ideal([I])
    return Ideal(list(I))


def xi_names(n: int, levels, prefix="y") -> dict:
    """``{h: [names]}`` for the covector blocks."""
    levels = sorted(levels)
    if len(levels) == 1:
        return {levels[0]: [f"{prefix}{j}" for j in range(n)]}
    return {h: [f"{prefix}{j}_{h}" for j in range(n)] for h in levels}


# --- conormal ----------------------------------------------------------------

@dataclass
class ConormalIdeal:
    base: Ideal
    levels: tuple
    use_lambda: bool
    ring: PolyRing
    ideal: Ideal
    x_names: list
    lambda_names: list
    xi: dict  # level -> list of covector names
    weights: tuple = None

    @property
    def generators(self):
        return self.ideal.generators

    def xi_indices(self, h) -> list:
        return [self.ring.index[n] for n in self.xi[h]]

    def __str__(self):
        return "\n".join(str(g) for g in self.generators)


def conormal_ideal(I, H=(0,), use_lambda=None, prefix="y") -> ConormalIdeal:
    """Level-H conormal ideal of ``I``.

    ``use_lambda`` defaults to ``True`` exactly when ``I`` has more than one
    generator; with a single generator the multiplier is fixed to 1.
    """
    I = _as_ideal(I)
    gens = [g for g in I.generators if g.terms]
    if not gens:
        raise ConfigurationError("the conormal ideal of the zero ideal is undefined")
    H = tuple(sorted(set(int(h) for h in H)))
    if not H or H[0] < 0:
        raise ConfigurationError("levels must be a non-empty set of integers >= 0")
    r = len(gens)
    if use_lambda is None:
        use_lambda = r > 1
    if not use_lambda and r > 1:
        raise ConfigurationError("use_lambda=False needs a single generator")
    base = I.ring
    n = base.nvars
    lam = [f"l{i + 1}" for i in range(r)] if use_lambda else []
    xi = xi_names(n, H, prefix)
    names = list(base.names) + lam + [v for h in H for v in xi[h]]
    if len(set(names)) != len(names):
        raise ConfigurationError("base variable names clash with multiplier or covector names")
    ring = PolyRing(base.field, names)
    lifted = [g.rename(ring) for g in gens]
    out = list(lifted)
    lvars = [ring.var(v) for v in lam]
    for h in H:
        for j in range(n):
            if use_lambda:
                s = ring.zero
                for lv, g in zip(lvars, lifted):
                    s = s + lv * hasse_h(g, j, h)
            else:
                s = hasse_h(lifted[0], j, h)
            out.append(ring.var(xi[h][j]) - s)
    weights = _weights(base, gens, H, use_lambda, n)
    return ConormalIdeal(I, H, use_lambda, ring, Ideal(out, ring), list(base.names),
                         lam, xi, weights)


def _weights(base, gens, H, use_lambda, n):
    # A grading making the conormal ideal homogeneous speeds up elimination
    # (sugar then equals true degree).  Exists when every f_i is homogeneous.
    if not all(g.is_homogeneous() for g in gens):
        return None
    degs = [g.total_degree() for g in gens]
    p = base.field.p
    w = [1] * n
    if use_lambda:
        top = max(degs)
        w += [top - d + 1 for d in degs]
        shift = top + 1
    else:
        shift = degs[0]
    for h in H:
        v = shift - p**h
        w += [v if v > 0 else 1] * n
    return tuple(w)


# --- dual varieties ----------------------------------------------------------

@dataclass
class DualVariety:
    """Ideal in the covector variables of one level (lex order)."""
    ideal: Ideal
    level: int
    conormal: ConormalIdeal = None
    order: str = "lex"

    @property
    def ring(self):
        return self.ideal.ring

    @property
    def generators(self):
        return self.ideal.groebner_basis()

    def is_zero(self):
        return not self.generators

    def relabel(self, ring: PolyRing) -> Ideal:
        """The same ideal with variable j renamed to ``ring``'s variable j."""
        gens = [g.rename(ring, list(range(ring.nvars))) for g in self.generators]
        J = Ideal(gens, ring)
        return J

    def __str__(self):
        return "\n".join(str(g) for g in self.generators)


def _subring_ideal(J: Ideal, names) -> Ideal:
    ring = PolyRing(J.ring.field, names)
    gens = [g.rename(ring, [ring.index.get(n) for n in J.ring.names])
            for g in J.groebner_basis()]
    out = Ideal(gens, ring)
    out._seed(ring.order, gens)  # a lex basis restricted to a lex tail block stays reduced
    return out


def _check_lex(C: ConormalIdeal):
    if C.ring.order != MonomialOrder.lex(C.ring.nvars):
        raise ConfigurationError("conormal ring must carry the lex order")


def intermediate_ideal(C: ConormalIdeal, budget=None) -> Ideal:
    """Eliminate x and the multipliers, keeping every covector block."""
    _check_lex(C)
    keep = [v for h in C.levels for v in C.xi[h]]
    J = elimination_ideal(C.ideal, keep, weights=C.weights, budget=budget)
    return _subring_ideal(J, keep)


def dual_ideal(C: ConormalIdeal, h: int = None, budget=None) -> DualVariety:
    """The level-h dual: eliminate all variables outside the ``y^(h)`` block.

    An empty result (the dual fills the space) is the zero ideal.
    """
    if h is None:
        if len(C.levels) != 1:
            raise ConfigurationError("select a level: the conormal ideal has several")
        h = C.levels[0]
    if h not in C.levels:
        raise ConfigurationError(f"level {h} is not among the conormal levels {list(C.levels)}")
    _check_lex(C)
    keep = C.xi[h]
    J = elimination_ideal(C.ideal, keep, weights=C.weights, budget=budget)
    return DualVariety(_subring_ideal(J, keep), h, C)


def dual_variety(I, h: int, use_lambda=None, budget=None, prefix="y") -> DualVariety:
    """Shortcut: ``dual_ideal(conormal_ideal(I, {h}), h)``."""
    return dual_ideal(conormal_ideal(I, (h,), use_lambda, prefix), h, budget)


# --- pointwise checks ----------------------------------------------------------

def _rank(F: GF, rows) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = F.inv(rows[rank][c])
        rows[rank] = [F.mul(inv, v) for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                m = rows[i][c]
                rows[i] = [F.sub(a, F.mul(m, b)) for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def gradient_matrix(I, point, h: int) -> list:
    """``[D^(h)_{x_j} f_i(P)]`` as raw field values."""
    I = _as_ideal(I)
    gens = [g for g in I.generators if g.terms]
    return [[hasse_h(g, j, h).evaluate(point).value for j in range(I.ring.nvars)] for g in gens]


def is_h_nonsingular(I, point, h: int) -> bool:
    """Whether the level-h gradient matrix at ``point`` has full rank r."""
    I = _as_ideal(I)
    gens = [g for g in I.generators if g.terms]
    for g in gens:
        if g.evaluate(point):
            raise NotOnVarietyError(f"point does not lie on V(I): {g} does not vanish")
    F = I.ring.field
    return _rank(F, gradient_matrix(I, point, h)) == len(gens)


def suggest_h(I, h_max: int = H_MAX) -> int:
    """Heuristic level: smallest h whose h-gradient is nonzero and has an
    exponent not divisible by p.  This is not the inseparable degree."""
    I = _as_ideal(I)
    gens = [g for g in I.generators if g.terms]
    if not gens:
        raise ConfigurationError("the zero ideal has no gradient")
    p = I.ring.field.p
    for h in range(h_max + 1):
        entries = [hasse_h(g, j, h) for g in gens for j in range(I.ring.nvars)]
        nonzero = [e for e in entries if e.terms]
        if not nonzero:
            continue
        if any(x % p for e in nonzero for m in e.terms for x in m):
            return h
    raise NoSuggestionError(f"no level h <= {h_max} qualifies")


# --- generalized quadratic forms -----------------------------------------------

def _mat(F, A):
    return [[F(v).value for v in row] for row in A]


def mat_mul(F, A, B):
    return [[_dot(F, row, col) for col in zip(*B)] for row in A]


def _dot(F, u, v):
    s = 0
    for a, b in zip(u, v):
        if a and b:
            s = F.add(s, F.mul(a, b))
    return s


def mat_inv(F, A):
    n = len(A)
    if any(len(r) != n for r in A):
        raise SingularMatrixError("matrix is not square")
    M = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(A)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        M[c], M[piv] = M[piv], M[c]
        inv = F.inv(M[c][c])
        M[c] = [F.mul(inv, v) for v in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                m = M[i][c]
                M[i] = [F.sub(a, F.mul(m, b)) for a, b in zip(M[i], M[c])]
    return [r[n:] for r in M]


def transpose(A):
    return [list(c) for c in zip(*A)]


def mat_frob(F, A, e):
    return [[F.frob(v, e) for v in row] for row in A]


def quadratic_form(ring: PolyRing, A, q: int) -> Polynomial:
    """``f_A = x^t A x^q``."""
    F = ring.field
    A = _mat(F, A)
    out = ring.zero
    xs = ring.gens
    for a, row in enumerate(A):
        for b, c in enumerate(row):
            if c:
                out = out + xs[a] * xs[b] ** q * FieldElement(F, c)
    return out


@dataclass
class QuadraticFormDual:
    """Closed-form data for the dual of ``f_A = x^t A x^q``, q = p^h.

    ``dual`` holds ``y^t B y^q`` with ``B = ((A^-1)^t)^(q)`` (entrywise
    Frobenius).  ``relation`` is ``y1^t A^-1 y`` where ``y = A x^q`` is the
    level-0 gradient and ``y1 = A^t x`` the level-h gradient;
    ``substitution`` is the matrix M with ``M y1^q = y``.
    """
    A: list
    q: int
    h: int
    form: Polynomial
    dual: DualVariety
    B: list
    relation: Polynomial
    substitution: list


def quadratic_form_dual(A, q: int, field: GF = None, prefix="y") -> QuadraticFormDual:
    if field is None:
        field = next((v.field for row in A for v in row if isinstance(v, FieldElement)), None)
        if field is None:
            raise ConfigurationError("pass the field for integer matrices")
    F = field
    p = F.p
    h, t = 0, q
    while t % p == 0 and t > 1:
        t //= p
        h += 1
    if t != 1:
        raise ConfigurationError(f"q={q} is not a power of p={p}")
    A = _mat(F, A)
    n = len(A)
    Ainv = mat_inv(F, A)
    B = mat_frob(F, transpose(Ainv), h)
    xring = PolyRing(F, [f"x{j}" for j in range(n)])
    form = quadratic_form(xring, A, q)
    yring = PolyRing(F, [f"{prefix}{j}" for j in range(n)])
    g = quadratic_form(yring, B, q)
    dual = DualVariety(Ideal([g.monic()], yring), h)
    names0 = xi_names(n, (0, h), prefix) if h else {0: [f"{prefix}{j}_0" for j in range(n)]}
    if h:
        rring = PolyRing(F, names0[0] + names0[h])
        y0 = [rring.var(v) for v in names0[0]]
        y1 = [rring.var(v) for v in names0[h]]
    else:
        names1 = [f"{prefix}{j}_1" for j in range(n)]
        rring = PolyRing(F, names0[0] + names1)
        y0 = [rring.var(v) for v in names0[0]]
        y1 = [rring.var(v) for v in names1]
    rel = rring.zero
    for a in range(n):
        for b in range(n):
            if Ainv[a][b]:
                rel = rel + y1[a] * y0[b] * FieldElement(F, Ainv[a][b])
    At = transpose(A)
    M = mat_mul(F, A, mat_inv(F, mat_frob(F, At, h)))
    return QuadraticFormDual(A, q, h, form, dual, B, rel, M)


# --- reflexivity ---------------------------------------------------------------

@dataclass
class ReflexivityReport:
    original: Ideal
    h: int
    dual: DualVariety
    h2: int
    second_dual: DualVariety
    verdict: str
    timings: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return self.verdict == "equal"

    def to_dict(self) -> dict:
        def basis(D):
            return None if D is None else [str(g) for g in D.generators]
        return {
            "h": self.h,
            "h2": self.h2,
            "original": [str(g) for g in self.original.groebner_basis()],
            "dual": basis(self.dual),
            "second_dual": basis(self.second_dual),
            "verdict": self.verdict,
            "warnings": list(self.warnings),
            "timings": {k: round(v, 3) for k, v in self.timings.items()},
        }


def check_reflexive(I, h: int, h2: int = 0, budget=None, use_lambda=None) -> ReflexivityReport:
    """Dual at level h, then dual of that at level h2, compared with ``I``.

    Comparison is literal equality of reduced lex bases after renaming the
    second dual's covector variables back to the original names.
    """
    I = _as_ideal(I)
    notes = []
    gens = [g for g in I.generators if g.terms]
    if not all(is_bihomogeneous(g, h) for g in gens):
        msg = f"generators are not bihomogeneous at level {h}; the reflexivity theorem may not apply"
        warnings.warn(msg)
        notes.append(msg)
    xring = PolyRing(I.ring.field, I.ring.names)
    I_lex = Ideal([g.rename(xring) for g in gens], xring)
    timings = {}
    t0 = time.perf_counter()
    Z = dual_variety(I_lex, h, use_lambda, budget)
    timings["dual"] = time.perf_counter() - t0
    if Z.is_zero():
        notes.append("the dual fills the ambient space; no second dual")
        return ReflexivityReport(I_lex, h, Z, h2, None, "not-equal", timings, notes)
    t0 = time.perf_counter()
    Zx = Z.relabel(xring)
    W = dual_variety(Zx, h2, None, budget)
    timings["second_dual"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    if W.is_zero():
        verdict = "not-equal"
    else:
        verdict = "equal" if ideal_equal(W.relabel(xring), I_lex) else "not-equal"
    timings["compare"] = time.perf_counter() - t0
    return ReflexivityReport(I_lex, h, Z, h2, W, verdict, timings, notes)
