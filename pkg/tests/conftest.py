from hypothesis import HealthCheck, settings, strategies as st

from dkron.algebra_core import Poly, RatFunc

settings.register_profile("dkron", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("dkron")


@st.composite
def polys(draw, p=3, max_deg=3, nonzero=False):
    c = draw(st.lists(st.integers(0, p - 1), min_size=0, max_size=max_deg + 1))
    f = Poly(p, tuple(c))
    if nonzero and not f:
        f = Poly(p, (1,))
    return f


@st.composite
def ratfuncs(draw, p=3, max_deg=2, nonzero=False):
    num = draw(polys(p, max_deg, nonzero))
    den = draw(polys(p, max_deg, nonzero=True))
    return RatFunc(num, den)
