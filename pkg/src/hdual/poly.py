"""Sparse multivariate polynomials over a finite field.

A :class:`Polynomial` maps exponent tuples to nonzero raw field values (see
:mod:`hdual.field`).  Monomial orders are matrix orders with non-negative
integer rows; this covers lex, (weighted) grevlex and block elimination
orders, and lets the Groebner kernel pack order keys into single ints.
"""

from __future__ import annotations

import json
import re
from operator import add as _add

from .errors import (DegreeOverflowError, LevelOverflowError, ParseError,
                     RingMismatchError, UndefinedDegreeError)
from .field import GF, FieldElement

MAX_EXPONENT = 2**15 - 1


# --- monomial orders ---------------------------------------------------------

def _lex_rows(n, idx):
    rows = []
    for i in idx:
        row = [0] * n
        row[i] = 1
        rows.append(tuple(row))
    return rows


def _grevlex_rows(n, idx, weights=None):
    # Grevlex on the variables ``idx`` (highest first) as prefix weight sums:
    # comparing -e_last after equal degree is comparing the degree of the rest.
    rows = []
    for j in range(len(idx), 0, -1):
        row = [0] * n
        for i in idx[:j]:
            row[i] = weights[i] if weights else 1
        rows.append(tuple(row))
    return rows


class MonomialOrder:
    """A matrix monomial order: monomials compare by ``rows @ exponents``
    lexicographically, larger key = larger monomial.

    All rows are non-negative, so every order built here is a well-order
    compatible with multiplication, and 1 is the minimum.
    """

    def __init__(self, rows, name="matrix", blocks=None):
        self.rows = tuple(tuple(r) for r in rows)
        self.nvars = len(self.rows[0]) if self.rows else 0
        self.name = name
        self.blocks = blocks

    @classmethod
    def lex(cls, n: int) -> "MonomialOrder":
        return cls(_lex_rows(n, range(n)), "lex")

    @classmethod
    def grevlex(cls, n: int, weights=None) -> "MonomialOrder":
        return cls(_grevlex_rows(n, list(range(n)), weights), "grevlex")

    @classmethod
    def block(cls, n: int, blocks, inner="grevlex", weights=None) -> "MonomialOrder":
        """Block order: ``blocks[0]`` dominates ``blocks[1]`` and so on.

        ``inner`` is ``"grevlex"``, ``"lex"`` or a list with one entry per
        block.  Any monomial containing a variable of an earlier block is
        larger than every monomial in the later blocks alone.
        """
        blocks = [sorted(b) for b in blocks]
        if sorted(i for b in blocks for i in b) != list(range(n)):
            raise ValueError("blocks must partition the variables")
        inners = [inner] * len(blocks) if isinstance(inner, str) else list(inner)
        rows = []
        for b, kind in zip(blocks, inners):
            if kind == "lex":
                rows += _lex_rows(n, b)
            elif kind == "grevlex":
                rows += _grevlex_rows(n, b, weights)
            else:
                raise ValueError(f"unknown inner order {kind!r}")
        return cls(rows, "block", blocks=[tuple(b) for b in blocks])

    @classmethod
    def split(cls, n: int, split_index: int, inner="grevlex", weights=None) -> "MonomialOrder":
        return cls.block(n, [range(split_index), range(split_index, n)], inner, weights)

    @classmethod
    def elimination(cls, n: int, eliminate, inner="grevlex", weights=None) -> "MonomialOrder":
        eliminate = sorted(set(eliminate))
        keep = [i for i in range(n) if i not in set(eliminate)]
        if not eliminate or not keep:
            return cls.grevlex(n, weights) if inner == "grevlex" else cls.lex(n)
        return cls.block(n, [eliminate, keep], inner, weights)

    def key(self, exp) -> tuple:
        return tuple(sum(r * e for r, e in zip(row, exp) if r) for row in self.rows)

    def compare(self, a, b) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"MonomialOrder({self.name}, n={self.nvars})"


# --- rings -------------------------------------------------------------------

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class PolyRing:
    """``field[names...]`` with a default order used for printing and for
    Groebner computations that do not ask for another one."""

    def __init__(self, field: GF, names, order=None):
        names = tuple(names)
        for n in names:
            if not _NAME_RE.fullmatch(n) or n == "t":
                raise ValueError(f"invalid variable name {n!r}")
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.field = field
        self.names = names
        self.nvars = len(names)
        self.index = {n: i for i, n in enumerate(names)}
        if order is None or order == "lex":
            order = MonomialOrder.lex(self.nvars)
        elif order == "grevlex":
            order = MonomialOrder.grevlex(self.nvars)
        self.order = order

    @classmethod
    def standard(cls, field, n, prefix="x", order=None):
        return cls(field, [f"{prefix}{i}" for i in range(n)], order)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.field == other.field and self.names == other.names

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"PolyRing({self.field}, {list(self.names)})"

    def with_order(self, order) -> "PolyRing":
        return PolyRing(self.field, self.names, order)

    # element constructors
    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise RingMismatchError(f"{value.ring} polynomial used in {self}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.constant(value)

    def constant(self, c) -> "Polynomial":
        raw = self.field(c).value
        return Polynomial(self, {(0,) * self.nvars: raw} if raw else {})

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def var(self, name_or_index) -> "Polynomial":
        i = self.index[name_or_index] if isinstance(name_or_index, str) else name_or_index
        exp = [0] * self.nvars
        exp[i] = 1
        return Polynomial(self, {tuple(exp): 1})

    @property
    def gens(self) -> list:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exp, coeff=1) -> "Polynomial":
        raw = self.field(coeff).value
        return Polynomial(self, {tuple(exp): raw} if raw else {})

    def from_dict(self, terms) -> "Polynomial":
        """Build from ``{exponent tuple: coefficient}`` (ints or field elements)."""
        out = {}
        for exp, c in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.nvars or min(exp, default=0) < 0:
                raise ValueError(f"bad exponent vector {exp}")
            raw = self.field(c).value
            if raw:
                prev = out.get(exp)
                raw = raw if prev is None else self.field.add(prev, raw)
                if raw:
                    out[exp] = raw
                else:
                    out.pop(exp, None)
        return Polynomial(self, out)

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()

    def from_json(self, data) -> "Polynomial":
        if isinstance(data, str):
            data = json.loads(data)
        return self.from_dict({tuple(t["exponents"]): list(t["coeff"]) for t in data})


# --- polynomials -------------------------------------------------------------

class Polynomial:
    """Immutable sparse polynomial. ``terms`` maps exponent tuples to
    nonzero raw field values; never mutate it after construction."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # helpers
    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, FieldElement)):
            return self.ring.constant(other)
        return NotImplemented

    def _combine(self, other, sign):
        F = self.ring.field
        out = dict(self.terms)
        if F.k == 1:
            p = F.p
            for e, c in other.terms.items():
                v = (out.get(e, 0) + sign * c) % p
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        else:
            for e, c in other.terms.items():
                c = c if sign > 0 else F.neg(c)
                v = F.add(out.get(e, 0), c)
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial(self.ring, out)

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self._combine(other, -1)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other._combine(self, -1)

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {e: F.neg(c) for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        out = {}
        if F.k == 1:
            p = F.p
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(map(_add, e1, e2))
                    out[e] = (out.get(e, 0) + c1 * c2) % p
        else:
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(map(_add, e1, e2))
                    out[e] = F.add(out.get(e, 0), F.mul(c1, c2))
        res = Polynomial(self.ring, {e: c for e, c in out.items() if c})
        res._check_degree()
        return res

    __rmul__ = __mul__

    def _check_degree(self):
        for e in self.terms:
            if max(e, default=0) > MAX_EXPONENT:
                raise DegreeOverflowError(f"exponent above {MAX_EXPONENT}")

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        F = self.ring.field
        raw = F(c).value
        if not raw:
            return self.ring.zero
        return Polynomial(self.ring, {e: F.mul(v, raw) for e, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.names, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # inspection
    def sorted_terms(self, order=None) -> list:
        """``[(exponents, FieldElement)]`` sorted descending in ``order``."""
        order = order or self.ring.order
        F = self.ring.field
        key = order.key
        return [(e, FieldElement(F, self.terms[e])) for e in sorted(self.terms, key=key, reverse=True)]

    def leading_term(self, order=None):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        order = order or self.ring.order
        e = max(self.terms, key=order.key)
        return e, FieldElement(self.ring.field, self.terms[e])

    def leading_monomial(self, order=None) -> tuple:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order=None) -> FieldElement:
        return self.leading_term(order)[1]

    def monic(self, order=None) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.leading_coefficient(order).inverse())

    def coefficient(self, exp) -> FieldElement:
        return FieldElement(self.ring.field, self.terms.get(tuple(exp), 0))

    def constant_coefficient(self) -> FieldElement:
        return self.coefficient((0,) * self.ring.nvars)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, var) -> int:
        i = self.ring.index[var] if isinstance(var, str) else var
        return max((e[i] for e in self.terms), default=-1)

    def weighted_degree(self, weights) -> int:
        return max((sum(w * x for w, x in zip(weights, e)) for e in self.terms), default=-1)

    def is_homogeneous(self, weights=None) -> bool:
        if weights is None:
            degs = {sum(e) for e in self.terms}
        else:
            degs = {sum(w * x for w, x in zip(weights, e)) for e in self.terms}
        return len(degs) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def variables(self) -> list:
        """Indices of the variables that occur."""
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return sorted(used)

    def __len__(self):
        return len(self.terms)

    # evaluation and substitution
    def evaluate(self, point) -> FieldElement:
        F = self.ring.field
        if len(point) != self.ring.nvars:
            raise ValueError(f"point has {len(point)} coordinates, ring has {self.ring.nvars}")
        vals = [F(v).value for v in point]
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, x in zip(vals, e):
                if x:
                    t = F.mul(t, F.power(v, x))
            total = F.add(total, t)
        return FieldElement(F, total)

    __call__ = evaluate

    def substitute(self, images, ring=None) -> "Polynomial":
        """Ring map sending variable ``i`` to ``images[i]`` (a Polynomial in
        ``ring``; defaults to this ring)."""
        ring = ring or self.ring
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        images = [ring(g) for g in images]
        cache = {}

        def power(i, x):
            k = (i, x)
            if k not in cache:
                cache[k] = images[i] ** x
            return cache[k]

        out = ring.zero
        F = ring.field
        for e, c in self.terms.items():
            t = ring.constant(FieldElement(F, c))
            for i, x in enumerate(e):
                if x:
                    t = t * power(i, x)
            out = out + t
        return out

    def rename(self, ring: PolyRing, mapping=None) -> "Polynomial":
        """Move to ``ring`` by sending variable ``i`` to variable
        ``mapping[i]`` (index or name; default: same name)."""
        if ring.field != self.ring.field:
            raise RingMismatchError("rename cannot change the field")
        if mapping is None:
            mapping = [ring.index[n] for n in self.ring.names]
        else:
            mapping = [ring.index[m] if isinstance(m, str) else m for m in mapping]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for i, x in enumerate(e):
                if x:
                    if mapping[i] is None:
                        raise ValueError(f"variable {self.ring.names[i]} has no image")
                    ne[mapping[i]] += x
            out[tuple(ne)] = c
        return Polynomial(ring, out)

    def map_coefficients(self, fn) -> "Polynomial":
        """Apply ``fn`` (raw int -> raw int) to every coefficient."""
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if v:
                out[e] = v
        return Polynomial(self.ring, out)

    def frobenius_coefficients(self, e: int = 1) -> "Polynomial":
        F = self.ring.field
        return self.map_coefficients(lambda c: F.frob(c, e))

    # text / json
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self})"

    def to_json(self, order=None) -> list:
        F = self.ring.field
        return [{"exponents": list(e), "coeff": F.digits(c.value)}
                for e, c in self.sorted_terms(order)]


def format_monomial(names, exp) -> str:
    parts = []
    for n, x in zip(names, exp):
        if x == 1:
            parts.append(n)
        elif x:
            parts.append(f"{n}^{x}")
    return "*".join(parts)


def format_polynomial(f: Polynomial, order=None) -> str:
    if not f.terms:
        return "0"
    F = f.ring.field
    out = []
    for e, c in f.sorted_terms(order):
        mono = format_monomial(f.ring.names, e)
        cs = F.format_raw(c.value)
        if F.k > 1 and not cs.isdigit():
            cs = f"({cs})"
        if not mono:
            out.append(cs)
        elif c.value == 1:
            out.append(mono)
        else:
            out.append(f"{cs}*{mono}")
    return " + ".join(out)


class _Parser:
    """Recursive-descent parser for ``2*x0^6 + y0 - (t+1)*x1*x2^3``."""

    _TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*^()]))")

    def __init__(self, ring, text):
        self.ring = ring
        self.text = text
        self.tokens = []
        pos = 0
        stripped_end = len(text.rstrip())
        while pos < stripped_end:
            m = self._TOKEN.match(text, pos)
            if not m or m.end() == pos:
                self._error("unexpected character", pos + len(text[pos:]) - len(text[pos:].lstrip()))
            start = m.start(m.lastindex)
            kind = ("int", "name", "op")[m.lastindex - 1]
            val = m.group(m.lastindex)
            if kind == "op" and val == "**":
                val = "^"
            self.tokens.append((kind, val, start))
            pos = m.end()
        self.i = 0

    def _error(self, msg, pos):
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        raise ParseError(msg, self.text, line, col)

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def _next(self):
        tok = self._peek()
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        ring = self.ring
        if not self.tokens:
            self._error("empty polynomial", 0)
        total = ring.zero
        sign = 1
        kind, val, pos = self._peek()
        if val in ("+", "-"):
            self._next()
            sign = -1 if val == "-" else 1
        while True:
            term = self._term()
            total = total + term if sign > 0 else total - term
            kind, val, pos = self._peek()
            if kind is None:
                return total
            if val in ("+", "-"):
                self._next()
                sign = -1 if val == "-" else 1
                continue
            self._error(f"unexpected {val!r}", pos)

    def _term(self) -> Polynomial:
        ring = self.ring
        exp = [0] * ring.nvars
        F = ring.field
        craw = 1
        while True:
            kind, val, pos = self._next()
            if kind == "int":
                craw = F.mul(craw, int(val) % F.p)
            elif kind == "name":
                if val not in ring.index:
                    self._error(f"unknown variable {val!r}", pos)
                power = 1
                if self._peek()[1] == "^":
                    self._next()
                    k2, v2, p2 = self._next()
                    if k2 != "int":
                        self._error("expected integer exponent", p2)
                    power = int(v2)
                exp[ring.index[val]] += power
            elif val == "(":
                depth, start = 1, self.i
                while depth:
                    k2, v2, p2 = self._next()
                    if k2 is None:
                        self._error("unbalanced parenthesis", pos)
                    depth += {"(": 1, ")": -1}.get(v2, 0)
                inner = self.text[self.tokens[start][2]:self.tokens[self.i - 1][2]]
                try:
                    c = F.parse_element(inner)
                except ParseError:
                    self._error(f"bad coefficient ({inner})", pos)
                craw = F.mul(craw, c.value)
            else:
                self._error(f"unexpected {val!r}" if val else "unexpected end of input", pos)
            if self._peek()[1] == "*":
                self._next()
                continue
            break
        if max(exp, default=0) > MAX_EXPONENT:
            raise DegreeOverflowError(f"exponent above {MAX_EXPONENT}")
        return Polynomial(ring, {tuple(exp): craw} if craw else {})


def parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    return ring.parse(text)


# --- q-adic degree predicates ------------------------------------------------

def h_degree(m, q: int) -> int:
    """Degree of the q^th-power part of the monomial ``m``: sum of m_i // q."""
    return sum(e // q for e in m)


def is_h_homogeneous(f: Polynomial, h: int):
    """``deg_h(f)`` when all monomials share one q-adic degree (q = p^h), else None."""
    if not f.terms:
        raise UndefinedDegreeError("the zero polynomial has no h-degree")
    q = f.ring.field.p ** h
    degs = {h_degree(e, q) for e in f.terms}
    return degs.pop() if len(degs) == 1 else None


def is_bihomogeneous(f: Polynomial, h: int) -> bool:
    if not f.terms:
        raise UndefinedDegreeError("the zero polynomial has no degree")
    return f.is_homogeneous() and is_h_homogeneous(f, h) is not None


# --- ghost variables ---------------------------------------------------------

class GhostRing(PolyRing):
    """``base[x_i^(j) : 0 <= j <= N]``; level 0 keeps the base names and
    level j >= 1 is named ``{name}_{j}``.  Variables are level-major."""

    def __init__(self, base: PolyRing, N: int):
        if N < 0:
            raise ValueError("N must be >= 0")
        names = []
        self.slots = []
        for j in range(N + 1):
            for i, n in enumerate(base.names):
                names.append(n if j == 0 else f"{n}_{j}")
                self.slots.append((i, j))
        super().__init__(base.field, names)
        self.base = base
        self.N = N

    def ghost_index(self, i: int, j: int) -> int:
        return j * self.base.nvars + i

    def __eq__(self, other):
        return PolyRing.__eq__(self, other)

    __hash__ = PolyRing.__hash__


def ghost_lift(f: Polynomial, N: int) -> Polynomial:
    """Rewrite every x_i^(d_0 + d_1 p + ...) as prod_j (x_i^(j))^(d_j)."""
    ring = GhostRing(f.ring, N)
    p = f.ring.field.p
    n = f.ring.nvars
    out = {}
    for e, c in f.terms.items():
        ne = [0] * ring.nvars
        for i, x in enumerate(e):
            j = 0
            while x:
                x, d = divmod(x, p)
                if d:
                    if j > N:
                        raise LevelOverflowError(
                            f"exponent of {f.ring.names[i]} needs level {j} > N={N}")
                    ne[j * n + i] = d
                j += 1
        out[tuple(ne)] = c
    return Polynomial(ring, out)


def ghost_project(F: Polynomial) -> Polynomial:
    """The substitution x_i^(j) -> x_i^(p^j)."""
    ring = F.ring
    if not isinstance(ring, GhostRing):
        raise RingMismatchError("ghost_project needs a polynomial over a GhostRing")
    p = ring.field.p
    base = ring.base
    out = {}
    fld = ring.field
    for e, c in F.terms.items():
        ne = [0] * base.nvars
        for k, x in enumerate(e):
            if x:
                i, j = ring.slots[k]
                ne[i] += x * p**j
        ne = tuple(ne)
        v = fld.add(out.get(ne, 0), c)
        if v:
            out[ne] = v
        else:
            out.pop(ne, None)
    res = Polynomial(base, out)
    res._check_degree()
    return res
