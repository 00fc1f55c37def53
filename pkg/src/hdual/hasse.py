"""Hasse derivatives over GF(p^k).

``D_i^n x^m = C(m_i, n) x^(m - n e_i)`` with the binomial reduced mod p.
The level-h operator is ``D_i^(p^h)``.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import FieldMismatchError
from .poly import Polynomial


@lru_cache(maxsize=None)
def _small_binom(a: int, b: int, p: int) -> int:
    if b < 0 or b > a:
        return 0
    num = den = 1
    for t in range(b):
        num = num * (a - t) % p
        den = den * (t + 1) % p
    return num * pow(den, p - 2, p) % p


def binom_mod(m: int, n: int, p: int) -> int:
    """``C(m, n) mod p`` by Lucas' theorem."""
    if n < 0 or n > m:
        return 0
    out = 1
    while n:
        a, b = m % p, n % p
        if b > a:
            return 0
        out = out * _small_binom(a, b, p) % p
        m //= p
        n //= p
    return out


def _var_index(f: Polynomial, i) -> int:
    return f.ring.index[i] if isinstance(i, str) else i


def hasse_derive(f: Polynomial, i, n: int) -> Polynomial:
    """``D_{x_i}^n f``."""
    if n < 0:
        raise ValueError("derivative order must be non-negative")
    i = _var_index(f, i)
    if n == 0:
        return f
    F = f.ring.field
    p = F.p
    out = {}
    for e, c in f.terms.items():
        if e[i] < n:
            continue
        b = binom_mod(e[i], n, p)
        if not b:
            continue
        m = e[:i] + (e[i] - n,) + e[i + 1:]
        v = F.add(out.get(m, 0), F.mul(b, c))
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return Polynomial(f.ring, out)


def hasse_multi(f: Polynomial, alpha) -> Polynomial:
    """``D^alpha f`` for a multi-index ``alpha`` (one entry per variable)."""
    for i, a in enumerate(alpha):
        if a:
            f = hasse_derive(f, i, a)
    return f


def hasse_h(f: Polynomial, i, h: int) -> Polynomial:
    """Level-h derivative ``D^(h)_{x_i} f = D_{x_i}^{p^h} f``."""
    return hasse_derive(f, i, f.ring.field.p ** h)


def nabla_h(f: Polynomial, h: int) -> list:
    """The h-gradient ``[D^(h)_{x_0} f, ..., D^(h)_{x_n} f]``."""
    return [hasse_h(f, i, h) for i in range(f.ring.nvars)]


def frob_rep_check(f: Polynomial, q: int, n: int) -> bool:
    """Check ``D_i^{qn}(f^q) = (D_i^n f)^q`` for every variable ``i``.

    ``q`` must be a power of the characteristic.  Both sides are compared
    literally; the identity holds over any GF(p^k) because raising to ``q``
    is additive there.
    """
    p = f.ring.field.p
    t = q
    while t % p == 0 and t > 1:
        t //= p
    if t != 1:
        raise FieldMismatchError(f"{q} is not a power of the characteristic {p}")
    fq = f ** q
    return all(hasse_derive(fq, i, q * n) == hasse_derive(f, i, n) ** q
               for i in range(f.ring.nvars))
