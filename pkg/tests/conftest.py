import hypothesis.strategies as st
from hypothesis import settings

from hdual import GF, PolyRing

settings.register_profile("default", deadline=None)
settings.load_profile("default")

FIELDS = {"3": GF(3), "5": GF(5), "9": GF.parse("3^2"), "2": GF(2), "4": GF.parse("2^2")}


@st.composite
def polys(draw, ring, max_terms=6, max_exp=8, exps=None):
    """Random polynomial in ``ring``; ``exps`` overrides the exponent strategy."""
    F = ring.field
    n = ring.nvars
    exp_st = exps if exps is not None else st.tuples(*[st.integers(0, max_exp)] * n)
    terms = draw(st.dictionaries(exp_st, st.integers(1, F.order - 1), max_size=max_terms))
    return ring.from_dict({e: F.from_raw(c) for e, c in terms.items()})


def ring_of(key, n, prefix="x"):
    return PolyRing.standard(FIELDS[key], n, prefix)


def elements(F):
    return st.integers(0, F.order - 1).map(F.from_raw)
