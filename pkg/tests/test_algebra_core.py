from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dkron.algebra_core import (ExpPoly, ExpRat, GroundField, LogExact, LogPoly, Poly, RatFunc,
                                berlekamp_massey, field_tower, hnf_rows, mat_det, mat_inv, mat_mul,
                                parse_poly, rational_generating_function)
from dkron.algebra_core.polys import factor_small, is_irreducible, is_squarefree, monic_polys, pgcd
from dkron.errors import DkronError, NoRecurrence

from conftest import polys, ratfuncs

fracs = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))
exppolys = st.dictionaries(st.integers(-4, 4).map(lambda k: Fraction(k, 2)), fracs, max_size=4).map(ExpPoly)


def test_ground_field_rejects_non_prime():
    with pytest.raises(DkronError):
        GroundField(9)


@pytest.mark.parametrize("m", [2, 3])
def test_extension_field_inverse_and_order(m):
    F = field_tower(GroundField(3), m)
    z = F.zeta
    one = F.pow(z, 0)
    assert F.pow(z, 3 ** m - 1) == one
    for a in range(1, 3 ** m):
        assert F.from_digits(F.digits(a)) == a
        assert F.mul(a, F.inv(a)) == one
        assert F.pow(a, 3 ** m - 1) == one


@given(polys(3, 4), polys(3, 3, nonzero=True))
def test_poly_division(a, b):
    qt, r = divmod(a, b)
    assert qt * b + r == a
    assert r.deg < b.deg or not r


@given(polys(5, 3), polys(5, 3), polys(5, 2))
def test_poly_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a


@given(ratfuncs(3), ratfuncs(3, nonzero=True))
def test_ratfunc_field(x, y):
    assert (x / y) * y == x
    assert (x * y).deg == x.deg + y.deg if x else True


def test_parse_poly_roundtrip():
    f = parse_poly(3, "T^3+T+2")
    assert f == RatFunc(Poly(3, (2, 1, 0, 1)))
    assert parse_poly(3, "1/T").deg == -1


def test_factorization_helpers():
    f = Poly(3, (2, 1, 0, 1))
    assert is_squarefree(f)
    lc, fac = factor_small(f)
    prod = Poly(3, (lc,))
    for g, e in fac:
        prod = prod * g ** e
    assert prod == f
    assert len(list(monic_polys(3, 2))) == 9
    assert pgcd(Poly(3, (0, 1)) * f, Poly(3, (0, 0, 1))).deg == 1


def test_matrices_and_hnf():
    T = RatFunc.T(3)
    one = RatFunc.const(3, 1)
    g = [[T, one], [one, one]]
    assert mat_det(g) == T - one
    ident = mat_mul(g, mat_inv(g))
    assert ident == [[one, RatFunc.const(3, 0)], [RatFunc.const(3, 0), one]]
    H = hnf_rows([[Poly(3, (0, 1)), Poly(3, (1,))], [Poly(3, (0, 0, 1)), Poly(3, (0,))]])
    det = H[0][0] * H[1][1]
    assert det.deg == 2


# exact log arithmetic

@given(fracs, fracs, fracs, fracs)
def test_logexact_group(a, b, c, d):
    x, y = LogExact(a, b), LogExact(c, d)
    assert x + y - y == x
    assert (x * 3) / 3 == x
    assert LogExact.from_json(x.to_json()) == x


def test_logpoly_product():
    L = LogPoly({1: 2}) * LogPoly({0: 1, 1: 1})
    assert L == LogPoly({1: 2, 2: 2})
    assert LogPoly({0: 3, 1: -1}).to_logexact() == LogExact(3, -1)


# exponential polynomials

@given(exppolys, exppolys, exppolys)
def test_exppoly_ring(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a).is_zero()


@given(exppolys, st.sampled_from([Fraction(-1), Fraction(1, 2), Fraction(2)]))
def test_exppoly_evaluation_is_homomorphic(a, s):
    b = ExpPoly({Fraction(1): 2, Fraction(0): -1})
    assert (a * b).evaluate(3, s) == a.evaluate(3, s) * b.evaluate(3, s)


def test_exprat_laurent_simple_pole():
    # 1/(1 - q^{-s}) = 1/(s ln q) + 1/2 + ...
    R = ExpRat(ExpPoly({0: 1}), ExpPoly({0: 1, 1: -1}))
    lau = R.laurent(1)
    assert lau.coeff(-1) == LogPoly({-1: 1})
    assert lau.coeff(0) == LogPoly({0: Fraction(1, 2)})
    assert lau.coeff(1) == LogPoly({1: Fraction(1, 12)})


def test_exprat_cancellation_equality():
    num = ExpPoly({0: 1, 2: -1})
    den = ExpPoly({0: 1, 1: -1})
    assert ExpRat(num, den) == ExpRat(ExpPoly({0: 1, 1: 1}))


# Berlekamp-Massey

@given(st.lists(st.integers(-3, 3), min_size=1, max_size=3),
       st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_bm_recovers_linear_recurrence(coeffs, init):
    L = len(coeffs)
    seq = [Fraction(x) for x in (init + [0] * L)[:L]]
    while len(seq) < 2 * L + 8:
        seq.append(sum(Fraction(c) * seq[-1 - i] for i, c in enumerate(coeffs)))
    C, comp = berlekamp_massey(seq)
    assert comp <= L
    for n in range(comp, len(seq)):
        assert sum(C[i] * seq[n - i] for i in range(comp + 1)) == 0


def test_generating_function_of_geometric_series():
    num, den = rational_generating_function([3 ** n for n in range(12)])
    assert num == [1] and den == [1, -3]


def test_generating_function_refuses_unverified():
    with pytest.raises(NoRecurrence):
        rational_generating_function([1, 2, 3])
