"""Buchberger's algorithm over finite fields.

The kernel packs each monomial into one int::

    X = (order key) << EBITS | (exponent vector)

where the order key is the matrix-order image ``rows @ e`` with one
fixed-width field per row (row 0 most significant) and the exponent vector
has one field per variable.  Every field carries a guard bit.  Both parts
are linear in ``e``, so monomial multiplication is ``+``, the monomial order
is ``<`` on ints, and divisibility is a borrow test on the exponent part.

Pairs are pruned with the Gebauer-Moeller criteria.  For homogeneous input
(with respect to the selection weights) pairs are taken by lowest sugar;
otherwise by smallest lcm in the target order.
"""

from __future__ import annotations

import heapq
import logging
import os

from .errors import BudgetExceededError, DegreeOverflowError, RingMismatchError
from .field import FieldElement
from .poly import MonomialOrder, Polynomial, PolyRing

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 2_000_000

_EW = 16  # bits per exponent field, top bit is the guard
_RW = 40  # bits per order-row field, top bit is the guard


def default_budget() -> int:
    env = os.environ.get("HDUAL_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


class _Kernel:
    """One Groebner computation: owns the encoding and the working basis."""

    def __init__(self, ring: PolyRing, order: MonomialOrder, weights=None, budget=None):
        if order.nvars != ring.nvars:
            raise ValueError("order and ring have different variable counts")
        self.ring = ring
        self.field = ring.field
        self.prime = ring.field.k == 1
        self.p = ring.field.p
        self.n = n = ring.nvars
        self.rows = order.rows
        self.weights = tuple(weights) if weights else (1,) * n
        self.budget = default_budget() if budget is None else budget
        self.ebits = n * _EW
        self.emask = (1 << self.ebits) - 1
        self.fmask = (1 << (_EW - 1)) - 1
        self.GE = sum(1 << (i * _EW + _EW - 1) for i in range(n))
        nrows = len(self.rows)
        self.GK = sum(1 << (self.ebits + r * _RW + _RW - 1) for r in range(nrows))
        self.rmax = (1 << (_RW - 1)) - 1
        self.pairs_done = 0
        # working basis, indexed by insertion
        self.lead = []
        self.tail = []  # [(X, -c)] descending, coefficients negated
        self.sugar = []
        self.ldeg = []

    # encoding ---------------------------------------------------------------

    def encode(self, exp) -> int:
        E = 0
        for i, e in enumerate(exp):
            if e > self.fmask:
                raise DegreeOverflowError(f"exponent {e} exceeds kernel field width")
            E |= e << (i * _EW)
        K = 0
        for row in self.rows:
            v = 0
            for r, e in zip(row, exp):
                if r and e:
                    v += r * e
            if v > self.rmax:
                raise DegreeOverflowError("order key exceeds kernel field width")
            K = (K << _RW) | v
        return (K << self.ebits) | E

    def decode(self, X) -> tuple:
        E = X & self.emask
        m = self.fmask
        return tuple((E >> (i * _EW)) & m for i in range(self.n))

    def wdeg(self, X) -> int:
        return sum(w * e for w, e in zip(self.weights, self.decode(X)))

    def lcm(self, a, b) -> int:
        return self.encode([max(x, y) for x, y in zip(self.decode(a), self.decode(b))])

    def divides(self, a, b) -> bool:
        GE = self.GE
        return ((b | GE) - a) & GE == GE

    def check_overflow(self, terms):
        guard = self.GE | self.GK
        for X, _ in terms:
            if X & guard:
                raise DegreeOverflowError("degree overflow inside Groebner computation")

    def to_terms(self, f: Polynomial) -> list:
        return sorted(((self.encode(e), c) for e, c in f.terms.items()), reverse=True)

    def to_poly(self, terms) -> Polynomial:
        return Polynomial(self.ring, {self.decode(X): c for X, c in terms})

    # coefficient helpers ------------------------------------------------------

    def make_monic(self, terms):
        c0 = terms[0][1]
        if c0 == 1:
            return terms
        F = self.field
        inv = F.inv(c0)
        if self.prime:
            p = self.p
            return [(X, c * inv % p) for X, c in terms]
        return [(X, F.mul(c, inv)) for X, c in terms]

    # reduction ----------------------------------------------------------------

    def normal_form(self, acc: dict, reducers, full=True) -> list:
        """Reduce the polynomial held in ``acc`` ({X: c}, consumed) by the
        basis elements ``reducers``.  Returns descending ``[(X, c)]``."""
        # zero entries must go: a key present in acc is assumed to be queued
        for X in [X for X, c in acc.items() if not c]:
            del acc[X]
        heap = [-X for X in acc]
        heapq.heapify(heap)
        leads = [(self.lead[g], self.tail[g]) for g in reducers]
        GE = self.GE
        rem = []
        pop, push = heapq.heappop, heapq.heappush
        if self.prime:
            p = self.p
            while heap:
                X = -pop(heap)
                c = acc.pop(X, 0)
                if not c:
                    continue
                for L, tail in leads:
                    if ((X | GE) - L) & GE == GE:
                        m = X - L
                        get = acc.get
                        for Y, d in tail:
                            Z = Y + m
                            v = get(Z)
                            if v is None:
                                acc[Z] = c * d % p
                                push(heap, -Z)
                            else:
                                acc[Z] = (v + c * d) % p
                        break
                else:
                    rem.append((X, c))
                    if not full:
                        break
        else:
            F = self.field
            fadd, fmul = F.add, F.mul
            while heap:
                X = -pop(heap)
                c = acc.pop(X, 0)
                if not c:
                    continue
                for L, tail in leads:
                    if ((X | GE) - L) & GE == GE:
                        m = X - L
                        for Y, d in tail:
                            Z = Y + m
                            v = acc.get(Z)
                            if v is None:
                                acc[Z] = fmul(c, d)
                                push(heap, -Z)
                            else:
                                acc[Z] = fadd(v, fmul(c, d))
                        break
                else:
                    rem.append((X, c))
                    if not full:
                        break
        if not full and heap:
            rest = {}
            while heap:
                X = -pop(heap)
                c = acc.pop(X, 0)
                if c:
                    rest[X] = c
            rem.extend(sorted(rest.items(), reverse=True))
        return rem

    # basis management ---------------------------------------------------------

    def _add(self, terms, sugar) -> int:
        terms = self.make_monic(terms)
        self.check_overflow(terms)
        F = self.field
        if self.prime:
            p = self.p
            tail = [(X, -c % p) for X, c in terms[1:]]
        else:
            tail = [(X, F.neg(c)) for X, c in terms[1:]]
        self.lead.append(terms[0][0])
        self.tail.append(tail)
        self.sugar.append(sugar)
        self.ldeg.append(self.wdeg(terms[0][0]))
        return len(self.lead) - 1

    def spoly(self, i, j, L) -> dict:
        mi = L - self.lead[i]
        mj = L - self.lead[j]
        acc = {}
        F = self.field
        if self.prime:
            p = self.p
            for Y, d in self.tail[i]:
                acc[Y + mi] = -d % p
            for Y, d in self.tail[j]:
                Z = Y + mj
                acc[Z] = (acc.get(Z, 0) + d) % p
        else:
            for Y, d in self.tail[i]:
                acc[Y + mi] = F.neg(d)
            for Y, d in self.tail[j]:
                Z = Y + mj
                acc[Z] = F.add(acc.get(Z, 0), d)
        return acc

    def run(self, polys) -> list:
        """Reduced Groebner basis of ``polys`` as a list of term lists."""
        self.G = []
        self.pairs = pairs = {}
        self.heap = heap = []
        inputs = [self.to_terms(f) for f in polys if f.terms]
        inputs.sort(key=lambda t: t[0][0])
        # sugar only pays off when it tracks a true grading; otherwise select
        # by the lcm in the target order
        self.use_sugar = all(len({self.wdeg(X) for X, _ in t}) == 1 for t in inputs)
        for terms in inputs:
            sugar = max(self.wdeg(X) for X, _ in terms)
            rem = self.normal_form(dict(terms), self.G)
            if rem:
                self._update(self._add(rem, sugar))
        while heap:
            s, L, i, j = heapq.heappop(heap)
            if pairs.pop((i, j), None) is None:
                continue
            self.pairs_done += 1
            if self.pairs_done > self.budget:
                raise BudgetExceededError(
                    f"Groebner pair budget of {self.budget} exceeded",
                    partial=[self.to_poly(self._full(g)) for g in self.G])
            rem = self.normal_form(self.spoly(i, j, L), self.G)
            if rem:
                self._update(self._add(rem, s))
        return self._reduce_basis()

    def _full(self, g):
        F = self.field
        neg = (lambda c: -c % self.p) if self.prime else F.neg
        return [(self.lead[g], 1)] + [(X, neg(d)) for X, d in self.tail[g]]

    def _update(self, h):
        G, pairs, heap = self.G, self.pairs, self.heap
        lead = self.lead
        Lh = lead[h]
        divides = self.divides
        C = [(g, self.lcm(Lh, lead[g])) for g in G]
        D = []
        for k, (g, L) in enumerate(C):
            if L == Lh + lead[g]:
                D.append((g, L, True))
                continue
            if any(divides(L2, L) for _, L2 in C[k + 1:]):
                continue
            if any(divides(L2, L) for _, L2, _ in D):
                continue
            D.append((g, L, False))
        # old pairs: Gebauer-Moeller B-criterion
        lcm_h = {}

        def lcm_with_h(g):
            v = lcm_h.get(g)
            if v is None:
                v = lcm_h[g] = self.lcm(lead[g], Lh)
            return v

        for (i, j), (s, L) in list(pairs.items()):
            if divides(Lh, L) and lcm_with_h(i) != L and lcm_with_h(j) != L:
                del pairs[(i, j)]
        hs, hd = self.sugar[h], self.ldeg[h]
        for g, L, disjoint in D:
            if disjoint:
                continue
            dL = self.wdeg(L) if self.use_sugar else 0
            s = max(self.sugar[g] + dL - self.ldeg[g], hs + dL - hd) if self.use_sugar else 0
            key = (g, h)
            pairs[key] = (s, L)
            heapq.heappush(heap, (s, L, g, h))
        self.G = [g for g in G if not divides(Lh, lead[g])] + [h]

    def _reduce_basis(self) -> list:
        G = sorted(self.G, key=lambda g: self.lead[g])
        out = []
        for g in G:
            others = [o for o in G if o != g]
            tail = {X: c for X, c in self._full(g)[1:]}
            rest = self.normal_form(tail, others)
            out.append([(self.lead[g], 1)] + rest)
        out.sort(key=lambda t: t[0][0], reverse=True)
        return out


# --- public API ----------------------------------------------------------------

def _resolve_order(ring, order):
    if order is None:
        return ring.order
    if isinstance(order, str):
        if order == "lex":
            return MonomialOrder.lex(ring.nvars)
        if order == "grevlex":
            return MonomialOrder.grevlex(ring.nvars)
        raise ValueError(f"unknown order {order!r}")
    return order


def buchberger(polys, order=None, *, weights=None, budget=None, ring=None) -> list:
    """Reduced Groebner basis (monic, sorted by leading monomial descending)."""
    polys = list(polys)
    if ring is None:
        if not polys:
            raise ValueError("need a ring for an empty generator list")
        ring = polys[0].ring
    for f in polys:
        if f.ring != ring:
            raise RingMismatchError("generators live in different rings")
    order = _resolve_order(ring, order)
    k = _Kernel(ring, order, weights, budget)
    basis = k.run(polys)
    log.debug("groebner: %d elements, %d pairs reduced", len(basis), k.pairs_done)
    return [k.to_poly(t) for t in basis]


def reduce(f: Polynomial, G, order=None):
    """Multivariate division of ``f`` by the sequence ``G``.

    Returns ``(remainder, quotients)`` with ``f = sum(q_i * G[i]) + r`` and no
    monomial of ``r`` divisible by a leading monomial of ``G``.  The first
    divisor in sequence order is always used.
    """
    ring = f.ring
    order = _resolve_order(ring, order)
    F = ring.field
    G = [g for g in G]
    if not G:
        raise ValueError("cannot divide by an empty list")
    leads = [g.leading_term(order) if g.terms else None for g in G]
    quotients = [dict() for _ in G]
    rest = dict(f.terms)
    rem = {}
    key = order.key
    while rest:
        e = max(rest, key=key)
        c = rest[e]
        for idx, lt in enumerate(leads):
            if lt is None:
                continue
            le, lc = lt
            if all(a >= b for a, b in zip(e, le)):
                m = tuple(a - b for a, b in zip(e, le))
                q = F.mul(c, F.inv(lc.value))
                quotients[idx][m] = F.add(quotients[idx].get(m, 0), q)
                for ge, gc in G[idx].terms.items():
                    te = tuple(a + b for a, b in zip(ge, m))
                    v = F.sub(rest.get(te, 0), F.mul(q, gc))
                    if v:
                        rest[te] = v
                    else:
                        rest.pop(te, None)
                break
        else:
            rem[e] = c
            del rest[e]
    quots = [Polynomial(ring, {m: v for m, v in q.items() if v}) for q in quotients]
    return Polynomial(ring, rem), quots


def normal_form(f: Polynomial, basis, order=None) -> Polynomial:
    """Fully reduced remainder of ``f`` against ``basis`` (fast kernel path)."""
    ring = f.ring
    order = _resolve_order(ring, order)
    k = _Kernel(ring, order)
    idx = []
    for g in basis:
        if g.terms:
            t = k.make_monic(k.to_terms(g))
            idx.append(k._add(t, 0))
    rem = k.normal_form(dict(k.to_terms(f)), idx)
    return k.to_poly(rem)


def s_polynomial(f: Polynomial, g: Polynomial, order=None) -> Polynomial:
    ring = f.ring
    order = _resolve_order(ring, order)
    (ef, cf), (eg, cg) = f.leading_term(order), g.leading_term(order)
    L = tuple(max(a, b) for a, b in zip(ef, eg))
    mf = ring.monomial(tuple(a - b for a, b in zip(L, ef)), cf.inverse())
    mg = ring.monomial(tuple(a - b for a, b in zip(L, eg)), cg.inverse())
    return mf * f - mg * g


def is_groebner(G, order=None) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    G = [g for g in G if g.terms]
    for a in range(len(G)):
        for b in range(a + 1, len(G)):
            if normal_form(s_polynomial(G[a], G[b], order), G, order):
                return False
    return True


def is_reduced(G, order=None) -> bool:
    G = [g for g in G if g.terms]
    if not G:
        return True
    ring = G[0].ring
    order = _resolve_order(ring, order)
    leads = [g.leading_term(order) for g in G]
    if any(lc.value != 1 for _, lc in leads):
        return False
    for i, g in enumerate(G):
        for j, (le, _) in enumerate(leads):
            if i == j:
                continue
            for e in g.terms:
                if all(a >= b for a, b in zip(e, le)):
                    return False
    return True


class Ideal:
    """A finitely generated ideal with cached reduced Groebner bases."""

    def __init__(self, generators, ring: PolyRing = None):
        generators = list(generators)
        if ring is None:
            if not generators:
                raise ValueError("need a ring for an ideal without generators")
            ring = generators[0].ring
        self.ring = ring
        self.generators = tuple(ring(g) for g in generators)
        self._gb = {}

    def groebner_basis(self, order=None, *, weights=None, budget=None) -> list:
        order = _resolve_order(self.ring, order)
        key = (order, tuple(weights) if weights else None)
        if key not in self._gb and order not in self._gb:
            gens = [g for g in self.generators if g.terms]
            gb = buchberger(gens, order, weights=weights, budget=budget, ring=self.ring) if gens else []
            self._gb[order] = gb
        return list(self._gb[order])

    def _seed(self, order, basis):
        self._gb[_resolve_order(self.ring, order)] = list(basis)

    def is_zero(self) -> bool:
        return all(not g.terms for g in self.generators)

    def reduce(self, f: Polynomial, order=None) -> Polynomial:
        gb = self.groebner_basis(order)
        if not gb:
            return f
        return normal_form(self.ring(f), gb, order)

    def contains(self, f) -> bool:
        return not self.reduce(self.ring(f))

    __contains__ = contains

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    __hash__ = None

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"


def ideal_member(f: Polynomial, I: Ideal, order=None) -> bool:
    return not I.reduce(f, order)


def ideal_equal(I: Ideal, J: Ideal, order=None) -> bool:
    if I.ring != J.ring:
        raise RingMismatchError("ideals live in different rings")
    return I.groebner_basis(order) == J.groebner_basis(order)


def elimination_ideal(I: Ideal, keep, *, order=None, weights=None, budget=None) -> Ideal:
    """``I ∩ k[keep]`` as an ideal of the same ring.

    The computation runs under the block order (eliminated block grevlex >
    kept block grevlex); the surviving generators are then re-run under
    ``order`` (default: the ring's order) so the cached basis is canonical.
    ``keep`` holds variable names or indices.
    """
    ring = I.ring
    keep_idx = sorted({ring.index[v] if isinstance(v, str) else v for v in keep})
    elim = [i for i in range(ring.nvars) if i not in set(keep_idx)]
    out_order = _resolve_order(ring, order)
    if not elim:
        J = Ideal(I.groebner_basis(out_order), ring)
        J._seed(out_order, J.generators)
        return J
    block = MonomialOrder.elimination(ring.nvars, elim, weights=weights)
    gb = I.groebner_basis(block, weights=weights, budget=budget)
    elim_set = set(elim)
    kept = [g for g in gb if not elim_set.intersection(g.variables())]
    if kept:
        final = buchberger(kept, out_order, weights=weights, budget=budget, ring=ring)
    else:
        final = []
    J = Ideal(final, ring)
    J._seed(out_order, final)
    return J


def restrict_ring(f: Polynomial, ring: PolyRing) -> Polynomial:
    """Move ``f`` into ``ring`` by variable name (all used variables must exist there)."""
    return f.rename(ring, [ring.index.get(n) for n in f.ring.names])


def coefficient_of(f: Polynomial, exp) -> FieldElement:
    return f.coefficient(exp)
