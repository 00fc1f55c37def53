"""Semilinear forms, the q-symplectic pairing and level-graded differential forms.

A differential form is a sum of ``coefficient * d^(h1)v1 ^ ... ^ d^(hk)vk``
where each symbol ``(i, h)`` stands for ``d^(h)`` of ring variable ``i``.
Symbols at different levels are independent generators of the exterior
algebra, so ``d^(1)x0 ^ dx0`` is a nonzero 2-form.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConfigurationError, RingMismatchError
from .field import GF, FieldElement
from .hasse import hasse_h
from .poly import Polynomial, PolyRing


# --- p^h-linear forms ------------------------------------------------------------

def _vec(F: GF, v):
    return [F(c).value for c in v]


@dataclass(frozen=True)
class PhLinearForm:
    """``phi(v) = sum a_i v_i^(p^h)``."""
    field: GF
    coeffs: tuple
    h: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(_vec(self.field, self.coeffs)))

    def __call__(self, v) -> FieldElement:
        return ph_eval(self, v)

    def scale(self, c) -> "PhLinearForm":
        c = self.field(c).value
        return PhLinearForm(self.field, [FieldElement(self.field, self.field.mul(c, a)) for a in self.coeffs], self.h)

    def __add__(self, other):
        if self.field != other.field or self.h != other.h or len(self.coeffs) != len(other.coeffs):
            raise ConfigurationError("forms must share field, level and dimension")
        F = self.field
        return PhLinearForm(F, [FieldElement(F, F.add(a, b)) for a, b in zip(self.coeffs, other.coeffs)], self.h)


def ph_eval(phi: PhLinearForm, v) -> FieldElement:
    F = phi.field
    if len(v) != len(phi.coeffs):
        raise ValueError(f"vector has {len(v)} entries, form has {len(phi.coeffs)}")
    s = 0
    for a, x in zip(phi.coeffs, _vec(F, v)):
        if a and x:
            s = F.add(s, F.mul(a, F.frob(x, phi.h)))
    return FieldElement(F, s)


def double_dual(v, h: int, field: GF = None):
    """The functional ``F(v): phi -> phi(v^(1/p^(2h)))^(p^h)``."""
    if field is None:
        field = next((c.field for c in v if isinstance(c, FieldElement)), None)
        if field is None:
            raise ConfigurationError("pass the field for integer vectors")
    F = field
    root = [FieldElement(F, F.frob(c, -2 * h)) for c in _vec(F, v)]

    def functional(phi: PhLinearForm) -> FieldElement:
        if phi.h != h:
            raise ConfigurationError(f"form has level {phi.h}, expected {h}")
        return FieldElement(F, F.frob(ph_eval(phi, root).value, h))

    return functional


# --- q-symplectic pairing ----------------------------------------------------------

def omega(v, w, h: int, field: GF = None) -> FieldElement:
    """``sum(l_i^(p^h) m'_i - m_i l'_i^(p^h))`` for ``v = (l | m)``, ``w = (l' | m')``."""
    if len(v) != len(w) or len(v) % 2:
        raise ValueError("vectors must have equal, even length")
    if field is None:
        field = next((c.field for c in list(v) + list(w) if isinstance(c, FieldElement)), None)
        if field is None:
            raise ConfigurationError("pass the field for integer vectors")
    F = field
    v, w = _vec(F, v), _vec(F, w)
    m = len(v) // 2
    s = 0
    for i in range(m):
        s = F.add(s, F.mul(F.frob(v[i], h), w[m + i]))
        s = F.sub(s, F.mul(v[m + i], F.frob(w[i], h)))
    return FieldElement(F, s)


@dataclass(frozen=True)
class QSymplecticForm:
    field: GF
    dim: int  # n + 1
    h: int

    def e(self, i):
        v = [0] * (2 * self.dim)
        v[i] = 1
        return v

    def f(self, i):
        v = [0] * (2 * self.dim)
        v[self.dim + i] = 1
        return v

    def __call__(self, v, w) -> FieldElement:
        return omega(v, w, self.h, self.field)


# --- differential forms ------------------------------------------------------------

def _merge(a: tuple, b: tuple):
    """Sign and sorted tuple of ``a ^ b``; sign 0 when a symbol repeats."""
    if set(a) & set(b):
        return 0, None
    seq = list(a) + list(b)
    # count inversions to get the permutation sign
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return (-1) ** inv, tuple(sorted(seq))


class DifferentialForm:
    """Finite sum of polynomial coefficients times wedge monomials.

    Keys are strictly increasing tuples of symbols ``(var_index, level)``.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms=None):
        self.ring = ring
        self.terms = {k: c for k, c in (terms or {}).items() if c.terms}

    @classmethod
    def function(cls, f: Polynomial) -> "DifferentialForm":
        return cls(f.ring, {(): f})

    @classmethod
    def symbol(cls, ring: PolyRing, var, h: int = 0) -> "DifferentialForm":
        i = ring.index[var] if isinstance(var, str) else var
        return cls(ring, {((i, h),): ring.one})

    def degree(self):
        degs = {len(k) for k in self.terms}
        if len(degs) > 1:
            raise ValueError("form is not homogeneous")
        return degs.pop() if degs else 0

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatchError("forms live over different rings")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return DifferentialForm(self.ring, out)

    def __neg__(self):
        return DifferentialForm(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f) -> "DifferentialForm":
        f = self.ring(f)
        return DifferentialForm(self.ring, {k: c * f for k, c in self.terms.items()})

    def wedge(self, other) -> "DifferentialForm":
        self._check(other)
        out = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                sign, k = _merge(ka, kb)
                if not sign:
                    continue
                c = ca * cb if sign > 0 else -(ca * cb)
                out[k] = out[k] + c if k in out else c
        return DifferentialForm(self.ring, out)

    __xor__ = wedge

    def __eq__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return self.ring == other.ring and (self - other).is_zero()

    __hash__ = None

    def symbol_name(self, s) -> str:
        i, h = s
        return f"d{self.ring.names[i]}" if h == 0 else f"d{h}{self.ring.names[i]}"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            wedge = "^".join(self.symbol_name(s) for s in k)
            cs = str(c)
            if not k:
                parts.append(cs)
            elif cs == "1":
                parts.append(wedge)
            elif len(c.terms) == 1:
                parts.append(f"{cs}*{wedge}")
            else:
                parts.append(f"({cs})*{wedge}")
        return " + ".join(parts)

    def __repr__(self):
        return f"DifferentialForm({self})"


def d_h(form, h: int, variables=None) -> DifferentialForm:
    """``d^(h)``: ``f dS -> sum_i D^(h)_{x_i}(f) d^(h)x_i ^ dS``.

    ``variables`` restricts differentiation to some ring variables (indices or
    names); the others behave as constants.
    """
    if isinstance(form, Polynomial):
        form = DifferentialForm.function(form)
    ring = form.ring
    idx = range(ring.nvars) if variables is None else \
        [ring.index[v] if isinstance(v, str) else v for v in variables]
    out = DifferentialForm(ring)
    for k, c in form.terms.items():
        for i in idx:
            dc = hasse_h(c, i, h)
            if dc.terms:
                out = out + DifferentialForm(ring, {((i, h),): dc}).wedge(DifferentialForm(ring, {k: ring.one}))
    return out


def d_total(form, levels, variables=None) -> DifferentialForm:
    """Sum of ``d^(h)`` over ``levels``."""
    if isinstance(form, Polynomial):
        form = DifferentialForm.function(form)
    out = DifferentialForm(form.ring)
    for h in levels:
        out = out + d_h(form, h, variables)
    return out


@dataclass
class VectorField:
    """``X = sum a_{h,i} D^(h)_{x_i}``; keys ``(var_index, level)``."""
    ring: PolyRing
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        norm = {}
        for (i, h), a in self.coeffs.items():
            i = self.ring.index[i] if isinstance(i, str) else i
            a = self.ring(a)
            if a.terms:
                norm[(i, h)] = a
        self.coeffs = norm


def contract(X: VectorField, form: DifferentialForm) -> DifferentialForm:
    """``i_X``: on 1-forms ``sum a_{h,i}^(p^h) b_{h,i}``; on higher degree the
    signed derivation ``i_X(s1^...^sk) = sum_m (-1)^m a(s_m)^(p^h) s1^..^(no s_m)^..^sk``.
    Degree-0 forms map to zero."""
    if X.ring != form.ring:
        raise RingMismatchError("vector field and form live over different rings")
    ring = form.ring
    p = ring.field.p
    out = {}
    cache = {}
    for k, c in form.terms.items():
        for m, s in enumerate(k):
            a = X.coeffs.get(s)
            if a is None:
                continue
            if s not in cache:
                cache[s] = a ** (p ** s[1])
            t = c * cache[s]
            if m % 2:
                t = -t
            rest = k[:m] + k[m + 1:]
            out[rest] = out[rest] + t if rest in out else t
    return DifferentialForm(ring, out)


# --- Lagrangian and cone checks ------------------------------------------------------

@dataclass
class LagrangianCertificate:
    """Outcome of :func:`lagrangian_check`.

    ``residual`` is the 2-form after substitution (zero when the check
    holds).  ``pairs`` lists ``(j, nu, coefficient, cancelled)`` for each
    mixed term ``d^(h)x_j ^ dx_nu``: the coefficient from the
    ``d^(h)x ^ d(y^(h))`` half against the one from the ``dx ^ d(y^(0))``
    half, which agree by ``D^(0)_nu D^(h)_j = D^(h)_j D^(0)_nu``.
    """
    holds: bool
    level: int
    residual: DifferentialForm
    pairs: list
    symmetric_terms: int
    notes: list

    def __bool__(self):
        return self.holds

    def to_dict(self):
        return {
            "holds": self.holds,
            "level": self.level,
            "residual": str(self.residual),
            "pairs": [{"j": j, "nu": nu, "coefficient": str(c), "cancelled": ok}
                      for j, nu, c, ok in self.pairs],
            "symmetric_terms": self.symmetric_terms,
            "notes": list(self.notes),
        }


def _solved_xi(C, h):
    """``[s_j]`` with ``y_j^(h) - s_j`` among the generators of C."""
    ring = C.ring
    names = C.xi[h]
    idx = [ring.index[v] for v in names]
    xi_set = {ring.index[v] for hh in C.levels for v in C.xi[hh]}
    out = [None] * len(names)
    for g in C.generators:
        used = set(g.variables())
        hit = [j for j, i in enumerate(idx) if i in used]
        if len(hit) != 1:
            continue
        j = hit[0]
        i = idx[j]
        e = tuple(1 if t == i else 0 for t in range(ring.nvars))
        if g.terms.get(e) != 1 or len(used & xi_set) != 1:
            continue
        if any(m[i] for m in g.terms if m != e):
            continue
        out[j] = ring.var(i) - g
    if any(s is None for s in out):
        raise ConfigurationError(f"conormal ideal lacks solved generators for level {h}")
    return out


def _derived_xi(C, h):
    ring = C.ring
    gens = [g.rename(ring) for g in C.base.generators if g.terms]
    n = len(C.x_names)
    if C.use_lambda:
        lam = [ring.var(v) for v in C.lambda_names]
        return [sum((l * hasse_h(g, j, h) for l, g in zip(lam, gens)), ring.zero) for j in range(n)]
    return [hasse_h(gens[0], j, h) for j in range(n)]


def lagrangian_check(C, h: int = None) -> LagrangianCertificate:
    """Check that ``omega`` vanishes on the level-h conormal ideal ``C``.

    For h > 0 the form is ``sum d^(h)x_j ^ d(y_j^(h)) + sum dx_j ^ d(y_j^(0))``
    with ``d = d^(0) + d^(h)`` acting on the x variables and the multipliers
    held constant; ``y^(h)`` is read off C's generators and ``y^(0)`` too when
    level 0 is present (otherwise it is built from the base ideal).  For h = 0
    it is the classical ``sum dx_j ^ d(y_j)``.  Dimension is not checked.
    """
    if h is None:
        h = max(C.levels)
    if h not in C.levels:
        raise ConfigurationError(f"level {h} is not among the conormal levels")
    ring = C.ring
    n = len(C.x_names)
    xs = list(range(n))
    levels = (0,) if h == 0 else (0, h)
    sh = _solved_xi(C, h)
    s0 = sh if h == 0 else (_solved_xi(C, 0) if 0 in C.levels else _derived_xi(C, 0))
    notes = ["dimension condition not verified",
             "multipliers treated as constants"]
    if h and 0 not in C.levels:
        notes.append("level-0 covectors derived from the base ideal")
    om = DifferentialForm(ring)
    if h == 0:
        for j in xs:
            om = om + DifferentialForm.symbol(ring, j, 0).wedge(d_total(sh[j], levels, xs))
    else:
        for j in xs:
            om = om + DifferentialForm.symbol(ring, j, h).wedge(d_total(sh[j], levels, xs))
            om = om + DifferentialForm.symbol(ring, j, 0).wedge(d_total(s0[j], levels, xs))
    pairs = []
    sym = 0
    if h == 0:
        for j in xs:
            for nu in xs:
                if nu <= j:
                    continue
                c1 = hasse_h(sh[j], nu, 0)
                c2 = hasse_h(sh[nu], j, 0)
                if c1.terms or c2.terms:
                    pairs.append((j, nu, c1, c1 == c2))
    else:
        for j in xs:
            for nu in xs:
                c1 = hasse_h(sh[j], nu, 0)
                c2 = hasse_h(s0[nu], j, h)
                if c1.terms or c2.terms:
                    pairs.append((j, nu, c1, c1 == c2))
        for j in xs:
            for nu in xs:
                if nu > j:
                    sym += bool(hasse_h(sh[j], nu, h).terms) + bool(hasse_h(s0[j], nu, 0).terms)
    return LagrangianCertificate(om.is_zero(), h, om, pairs, sym, notes)


def cone_check(C) -> bool:
    """Every generator involving multipliers or covectors is homogeneous of
    degree 1 in them jointly.  Without multipliers, covector-free terms of such
    a generator count as degree 1 (the multiplier is the constant 1)."""
    ring = C.ring
    block = {ring.index[v] for v in C.lambda_names}
    block |= {ring.index[v] for h in C.levels for v in C.xi[h]}
    for g in C.generators:
        if not block.intersection(g.variables()):
            continue
        for m in g.terms:
            deg = sum(m[i] for i in block)
            if deg == 0 and not C.use_lambda:
                deg = 1
            if deg != 1:
                return False
    return True
