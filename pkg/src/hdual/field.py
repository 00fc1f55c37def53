"""Exact arithmetic in GF(p) and GF(p^k).

Elements are stored internally as plain ints in ``[0, p^k)``: the base-p
digits of the int are the coefficients of the representative polynomial
(constant term first) modulo the field's irreducible modulus.  The
polynomial and Groebner kernels work on these raw ints directly; user code
gets :class:`FieldElement` wrappers.
"""

from __future__ import annotations

import re
from functools import lru_cache

from .errors import FieldMismatchError, ParseError

MAX_CHARACTERISTIC = 2**31
# Extension fields up to this order get log/exp tables for multiplication.
_TABLE_LIMIT = 2**16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# --- dense polynomials over GF(p), constant term first -----------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _pdivmod(a, b, p):
    a = _trim(list(a))
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv_lead = pow(b[-1], p - 2, p)
    while a and len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return _trim(q), a


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base, e, m, p):
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(poly, p: int) -> bool:
    """Ben-Or irreducibility test for a polynomial over GF(p) (constant term first)."""
    f = _trim(list(poly))
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    xp = x
    for _ in range(k // 2):
        xp = _ppowmod(xp, p, f, p)
        if len(_pgcd(f, _psub(xp, x, p), p)) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, k: int) -> tuple:
    """Lowest monic irreducible of degree ``k`` over GF(p).

    Candidates are ordered by the integer whose base-p digits are the
    non-leading coefficients (constant term least significant).
    """
    if k == 1:
        return (0, 1)
    for c in range(p**k):
        digits = []
        for _ in range(k):
            c, r = divmod(c, p)
            digits.append(r)
        cand = tuple(digits) + (1,)
        if digits[0] and is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class GF:
    """The finite field GF(p^k) with a fixed polynomial-basis representation."""

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"characteristic {p!r} is not prime")
        if p >= MAX_CHARACTERISTIC:
            raise ValueError(f"characteristic must be below 2^31, got {p}")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus is None:
            modulus = default_modulus(p, k)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {k}")
            if not is_irreducible(modulus, p):
                raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.order = p**k
        self.modulus = modulus
        self._exp = self._log = None
        if k > 1 and self.order <= _TABLE_LIMIT:
            self._build_tables()

    # construction ---------------------------------------------------------

    @classmethod
    def parse(cls, text: str, modulus=None) -> "GF":
        """Parse ``"p"`` or ``"p^k"``; ``modulus`` is a coefficient list or
        a comma-separated string, constant term first."""
        m = re.fullmatch(r"\s*(\d+)\s*(?:\^\s*(\d+))?\s*", text)
        if not m:
            raise ParseError(f"bad field spec {text!r}", text)
        p = int(m.group(1))
        k = int(m.group(2)) if m.group(2) else 1
        if isinstance(modulus, str):
            modulus = [int(c) for c in modulus.split(",")]
        return cls(p, k, modulus)

    def _build_tables(self):
        q = self.order
        for g in range(2, q):
            exp = [0] * (q - 1)
            seen = set()
            a = 1
            ok = True
            for i in range(q - 1):
                if a in seen:
                    ok = False
                    break
                seen.add(a)
                exp[i] = a
                a = self._mul_poly(a, g)
            if ok and a == 1:
                break
        else:  # pragma: no cover
            raise AssertionError("no primitive element")
        log = [0] * q
        for i, a in enumerate(exp):
            log[a] = i
        self._exp, self._log = exp, log

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError(f"{value.field} element used in {self}")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        if isinstance(value, (list, tuple)):
            if len(value) > self.k:
                value = _pmod([int(c) % self.p for c in value], list(self.modulus), self.p)
            return FieldElement(self, self.from_digits(value))
        if isinstance(value, str):
            return self.parse_element(value)
        raise TypeError(f"cannot convert {value!r} to {self}")

    def from_raw(self, raw: int) -> "FieldElement":
        return FieldElement(self, raw)

    def from_digits(self, digits) -> int:
        raw = 0
        for c in reversed(list(digits)):
            raw = raw * self.p + int(c) % self.p
        return raw

    def digits(self, raw: int) -> list:
        out = []
        for _ in range(self.k):
            raw, r = divmod(raw, self.p)
            out.append(r)
        return out

    def parse_element(self, text: str) -> "FieldElement":
        """Parse an integer or a polynomial in ``t`` such as ``2*t+1``."""
        s = text.replace(" ", "")
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        if not s:
            raise ParseError("empty field element", text)
        if not re.fullmatch(r"[+-]?[^+-]+(?:[+-][^+-]+)*", s):
            raise ParseError(f"bad field element {text!r}", text)
        acc = {}
        for sign, term in re.findall(r"([+-]?)([^+-]+)", s):
            m = re.fullmatch(r"(?:(\d+)\*?)?(t(?:\^(\d+))?)?", term)
            if not m or (m.group(1) is None and m.group(2) is None):
                raise ParseError(f"bad field element {text!r}", text)
            c = int(m.group(1)) if m.group(1) else 1
            e = (int(m.group(3)) if m.group(3) else 1) if m.group(2) else 0
            if e > 0 and self.k == 1:
                raise ParseError(f"generator t used in prime field {self}", text)
            acc[e] = acc.get(e, 0) + (-c if sign == "-" else c)
        coeffs = [acc.get(e, 0) % self.p for e in range(max(acc) + 1)]
        return self(coeffs)

    def format_raw(self, raw: int) -> str:
        if self.k == 1:
            return str(raw)
        d = self.digits(raw)
        parts = []
        for e in range(self.k - 1, -1, -1):
            c = d[e]
            if not c:
                continue
            if e == 0:
                parts.append(str(c))
            else:
                mono = "t" if e == 1 else f"t^{e}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(parts) if parts else "0"

    # raw arithmetic ---------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.k == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        out, mult = 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * mult
            mult *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if self.k == 1:
            return -a % p
        if p == 2:
            return a
        out, mult = 0, 1
        while a:
            a, r = divmod(a, p)
            out += (-r % p) * mult
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_poly(self, a: int, b: int) -> int:
        prod = _pmul(self.digits(a), self.digits(b), self.p)
        return self.from_digits(_pmod(prod, self.modulus, self.p))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if not a or not b:
            return 0
        if self._log is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return self._mul_poly(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in {self}")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self._inv_euclid(a)

    def _inv_euclid(self, a: int) -> int:
        p = self.p
        r0, r1 = list(self.modulus), self.digits(a)
        _trim(r1)
        s0, s1 = [], [1]
        while r1:
            quo, rem = _pdivmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _psub(s0, _pmul(quo, s1, p), p)
        # r0 is a nonzero constant
        c = pow(r0[0], p - 2, p)
        return self.from_digits([x * c % p for x in s0])

    def power(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        if self.k == 1:
            return pow(a, n, self.p)
        if a == 0:
            return 0 if n else 1
        if self._log is not None:
            return self._exp[self._log[a] * n % (self.order - 1)]
        result = 1
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def frob(self, a: int, e: int = 1) -> int:
        """``a^(p^e)``; negative ``e`` takes p-th roots (the field is perfect)."""
        e %= self.k
        if e == 0:
            return a
        return self.power(a, self.p**e)

    # misc -----------------------------------------------------------------

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """The class of ``t`` (equals 0 in a prime field)."""
        return self([0, 1]) if self.k > 1 else self.zero

    def elements(self):
        for raw in range(self.order):
            yield FieldElement(self, raw)

    def __eq__(self, other):
        return (isinstance(other, GF) and self.p == other.p and self.k == other.k
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.p})" if self.k == 1 else f"GF({self.p}^{self.k})"

    def spec_string(self) -> str:
        return str(self.p) if self.k == 1 else f"{self.p}^{self.k}"


class FieldElement:
    """Immutable element of a :class:`GF`."""

    __slots__ = ("field", "value")

    def __init__(self, field: GF, value: int):
        self.field = field
        self.value = value

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"cannot combine {self.field} and {other.field}")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(b, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.value, self.field.inv(b)))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(b, self.field.inv(self.value)))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.power(self.value, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def frobenius(self, e: int = 1) -> "FieldElement":
        return FieldElement(self.field, self.field.frob(self.value, e))

    @property
    def rep(self) -> list:
        """Coefficient vector of the representative, constant term first."""
        return self.field.digits(self.value)

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.value))

    def __str__(self):
        return self.field.format_raw(self.value)

    def __repr__(self):
        return f"{self.field}({self})"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def frobenius(a: FieldElement, e: int) -> FieldElement:
    return a.frobenius(e)
