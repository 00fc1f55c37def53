import math

import pytest
from hypothesis import assume, given, strategies as st

from hdual import (GF, FieldMismatchError, GhostRing, binom_mod, frob_rep_check, ghost_lift,
                   ghost_project, hasse_derive, hasse_h, hasse_multi, is_h_homogeneous, nabla_h)
from hdual.poly import PolyRing

from conftest import polys, ring_of

KEYS = st.sampled_from(["3", "5", "9"])


@st.composite
def field_poly(draw, nvars=2, max_exp=12):
    R = ring_of(draw(KEYS), nvars)
    return draw(polys(R, max_terms=5, max_exp=max_exp))


@given(st.integers(0, 400), st.integers(0, 400), st.sampled_from([2, 3, 5, 7]))
def test_lucas_against_math_comb(m, n, p):
    assert binom_mod(m, n, p) == math.comb(m, n) % p


def test_examples():
    R = ring_of("3", 3)
    x0 = R.var(0)
    assert hasse_derive(x0**7, 0, 1) == x0**6
    assert hasse_h(x0**7, 0, 1) == x0**4 * 2
    assert hasse_derive(R.constant(2), 1, 3).is_zero()
    f = R.parse("x0^4 + x1^4 + x2^4")
    assert hasse_h(f, "x0", 1) == x0
    assert nabla_h(f, 1) == R.gens
    assert nabla_h(f, 0) == [v**3 for v in R.gens]
    assert nabla_h(R.constant(1), 1) == [R.zero] * 3
    S = PolyRing.standard(GF(101), 1)
    assert hasse_h(S.parse("x0^5"), 0, 0) == S.parse("5*x0^4")
    for key, h in [("3", 1), ("5", 1), ("3", 2)]:
        T = ring_of(key, 1)
        q = T.field.p ** h
        assert hasse_h(T.var(0) ** (2 * q), 0, h) == T.var(0) ** q * 2


def test_frob_rep_examples():
    R = ring_of("3", 1)
    g = R.parse("x0^3 + x0^6")
    assert hasse_derive(g, 0, 3) == R.parse("1 + 2*x0^3")
    assert hasse_derive(g, 0, 2).is_zero()
    assert frob_rep_check(R.parse("x0 + x0^2"), 3, 1)
    with pytest.raises(FieldMismatchError):
        frob_rep_check(R.parse("x0"), 6, 1)


@given(field_poly(), st.data(), st.integers(0, 12), st.integers(0, 1))
def test_leibniz(f, data, n, i):
    g = data.draw(polys(f.ring, max_terms=4, max_exp=8))
    lhs = hasse_derive(f * g, i, n)
    rhs = f.ring.zero
    for j in range(n + 1):
        rhs = rhs + hasse_derive(f, i, j) * hasse_derive(g, i, n - j)
    assert lhs == rhs


@given(field_poly(max_exp=20), st.integers(0, 9), st.integers(0, 9), st.integers(0, 1))
def test_composition_with_lucas(f, a, b, i):
    p = f.ring.field.p
    lhs = hasse_derive(hasse_derive(f, i, a), i, b)
    assert lhs == hasse_derive(f, i, a + b).scale(binom_mod(a + b, a, p))


@given(field_poly(max_exp=30), st.integers(1, 2), st.integers(0, 1), st.integers(0, 1))
def test_level_commutation(f, h, i, j):
    assert hasse_h(hasse_h(f, i, 0), j, h) == hasse_h(hasse_h(f, j, h), i, 0)


@given(field_poly(max_exp=40), st.integers(0, 2), st.integers(0, 1))
def test_vanishing_ladder(f, mu, i):
    p = f.ring.field.p
    assume(hasse_derive(f, i, p**mu).is_zero())
    for m in range(p**mu, p ** (mu + 1)):
        assert hasse_derive(f, i, m).is_zero()


@given(field_poly(max_exp=6), st.integers(0, 4), st.integers(1, 2))
def test_frob_rep(f, n, e):
    q = f.ring.field.p ** e
    assume(q <= 9)
    assert frob_rep_check(f, q, n)


@given(st.sampled_from([2, 3, 5]), st.integers(0, 3), st.data())
def test_ghost_compatibility(p, N, data):
    base = PolyRing.standard(GF(p), 2)
    G = GhostRing(base, N)
    F = data.draw(polys(G, max_terms=5, exps=st.tuples(*[st.integers(0, p - 1)] * G.nvars)))
    k = data.draw(st.integers(0, G.nvars - 1))
    i, j = G.slots[k]
    assert ghost_project(hasse_derive(F, k, 1)) == hasse_h(ghost_project(F), i, j)


@st.composite
def h_homogeneous(draw, key, h, nvars=3):
    """Random h-homogeneous polynomial: sum of x^(q*a + r) with |a| fixed, r < q."""
    R = ring_of(key, nvars)
    q = R.field.p ** h
    deg = draw(st.integers(0, 4))
    n_terms = draw(st.integers(1, 5))
    terms = {}
    for _ in range(n_terms):
        cuts = sorted(draw(st.lists(st.integers(0, deg), min_size=nvars - 1, max_size=nvars - 1)))
        a = [b - c for b, c in zip(cuts + [deg], [0] + cuts)]
        r = draw(st.lists(st.integers(0, q - 1), min_size=nvars, max_size=nvars))
        terms[tuple(q * ai + ri for ai, ri in zip(a, r))] = draw(st.integers(1, R.field.p - 1))
    return R.from_dict(terms), deg


@pytest.mark.parametrize("key,h", [("3", 1), ("5", 1), ("3", 2)])
@given(data=st.data())
def test_h_euler(key, h, data):
    f, deg = data.draw(h_homogeneous(key, h))
    assume(f.terms)
    assert is_h_homogeneous(f, h) == deg
    R = f.ring
    q = R.field.p ** h
    lhs = R.zero
    for i, xi in enumerate(R.gens):
        lhs = lhs + xi**q * hasse_h(f, i, h)
    assert lhs == f.scale(deg % R.field.p)


def test_hasse_multi_and_names():
    R = ring_of("5", 2)
    f = R.parse("x0^5*x1^3")
    assert hasse_multi(f, (5, 1)) == hasse_derive(hasse_derive(f, "x0", 5), "x1", 1)
    with pytest.raises(ValueError):
        hasse_derive(f, 0, -1)


def test_ghost_lift_of_derivative_example():
    R = ring_of("3", 1)
    lifted = ghost_lift(R.parse("x0^7"), 1)
    assert ghost_project(hasse_derive(lifted, 1, 1)) == hasse_h(R.parse("x0^7"), 0, 1)
