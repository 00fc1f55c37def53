import pytest
from hypothesis import given, strategies as st

from hdual import (GF, GhostRing, LevelOverflowError, MonomialOrder, ParseError,
                   PolyRing, RingMismatchError, UndefinedDegreeError, ghost_lift,
                   ghost_project, h_degree, is_bihomogeneous, is_h_homogeneous)

from conftest import elements, polys, ring_of

R3 = ring_of("3", 3)
R9 = ring_of("9", 3)


def test_arithmetic_examples():
    x0, x1, x2 = R3.gens
    assert (x0 + x1) ** 3 == x0**3 + x1**3
    assert (x0 + x1) * R3.one == x0 + x1
    assert (x0 + x1) * (x0 - x1) == R3.parse("x0^2 + 2*x1^2")


def test_evaluate_examples():
    f = R3.parse("x0^7 + x1^7 + x2^7")
    F = R3.field
    assert f.evaluate([F(1), F(2), F(0)]) == 0
    assert R3.parse("x0*x1 + 2").evaluate([0, 0, 0]) == F(2)
    assert R3.parse("x0*x1").evaluate([2, 2, 1]) == F(1)


def test_h_degree_examples():
    assert h_degree((7, 2), 3) == 2
    assert h_degree((9, 0), 9) == 1
    assert h_degree((4,), 3) == 1
    assert is_h_homogeneous(R3.parse("x0^4 + x1^4 + x2^4"), 1) == 1
    assert is_h_homogeneous(R3.parse("x0^4 + x1^2"), 1) is None
    assert is_h_homogeneous(R3.parse("x0^7 + x1^7 + x2^7"), 1) == 2
    with pytest.raises(UndefinedDegreeError):
        is_h_homogeneous(R3.zero, 1)


def test_bihomogeneous_examples():
    p = 3
    R = PolyRing.standard(GF(p), p + 2)
    x = R.gens
    assert is_bihomogeneous(sum((v ** (p + 1) for v in x), R.zero), 1)
    prod = R.one
    for v in x[1:]:
        prod = prod * v
    assert not is_bihomogeneous(x[0] ** (p + 1) - prod, 1)
    assert is_bihomogeneous(x[0] + x[1], 0)


def test_ghost_examples():
    R = ring_of("3", 1)
    g = ghost_lift(R.parse("x0^7"), 1)
    assert str(g) == "x0*x0_1^2"
    assert ghost_project(g) == R.parse("x0^7")
    G = GhostRing(R, 2)
    assert ghost_project(G.parse("x0_2")) == R.parse("x0^9")
    assert ghost_lift(R.constant(2), 3) == GhostRing(R, 3).constant(2)
    with pytest.raises(LevelOverflowError):
        ghost_lift(R.parse("x0^9"), 1)
    with pytest.raises(RingMismatchError):
        ghost_project(R.parse("x0"))


def test_hermitian_lift_is_bihomogeneous_shape():
    R = ring_of("5", 3)
    f = R.parse("x0^6 + x1^6 + x2^6")
    assert str(ghost_lift(f, 1)) == "x0*x0_1 + x1*x1_1 + x2*x2_1"


@given(polys(R3, max_exp=26))
def test_ghost_round_trip(f):
    assert ghost_project(ghost_lift(f, 2)) == f


@given(polys(ring_of("3", 2), max_exp=8), polys(ring_of("3", 2), max_exp=8))
def test_ghost_project_is_multiplicative(f, g):
    fl, gl = ghost_lift(f, 1), ghost_lift(g, 1)
    assert ghost_project(fl * gl) == f * g


@given(polys(R9))
def test_parse_print_round_trip(f):
    assert R9.parse(str(f)) == f


@given(polys(R9), polys(R9), polys(R9))
def test_ring_axioms(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f
    assert (f - f).is_zero()


@given(polys(R9), st.lists(elements(R9.field), min_size=3, max_size=3),
       st.lists(elements(R9.field), min_size=3, max_size=3))
def test_evaluate_is_a_ring_map(f, a, b):
    g = R9.parse("x0*x1 + (t)*x2")
    assert (f * g).evaluate(a) == f.evaluate(a) * g.evaluate(a)
    assert (f + g).evaluate(b) == f.evaluate(b) + g.evaluate(b)


def test_parse_errors_report_position():
    with pytest.raises(ParseError) as exc:
        R3.parse("x0 + * x1")
    assert exc.value.column is not None
    with pytest.raises(ParseError):
        R3.parse("x9")


def test_orders():
    lex = MonomialOrder.lex(3)
    grl = MonomialOrder.grevlex(3)
    assert lex.compare((1, 0, 0), (0, 5, 5)) > 0
    assert grl.compare((1, 0, 0), (0, 5, 5)) < 0
    # grevlex ties on degree broken by the last variable
    assert grl.compare((1, 0, 1), (0, 2, 0)) < 0
    el = MonomialOrder.elimination(3, [2])
    assert el.compare((0, 0, 1), (9, 9, 0)) > 0
