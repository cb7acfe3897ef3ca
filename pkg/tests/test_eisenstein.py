import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dkron.algebra_core import ExpPoly, GroundField, LogExact, Poly, RatFunc
from dkron.eisenstein import (analyze, eis_exact, eis_jacobi_exact, eis_schwartz, functional_equation_check,
                              kronecker_check, mirabolic_vertex, norm_exponent, second_limit_check,
                              stieltjes_check, taylor_at_zero)
from dkron.errors import DkronError, OnLattice
from dkron.lattices import SchwartzData, lattice_from_point
from dkron.period_domain import PointH, VertexLabel, standard_point
from dkron.suite import kronecker_points, random_point

seeds = st.integers(0, 10 ** 6)


def dirichlet_sum(L, s, B=60):
    """sum over nonzero lattice points with |lambda| <= q^B of N^s |lambda|^{-rs}, from shell counts."""
    q, r = L.q, L.r
    levels = sorted({n + k for n in L.norms for k in range(0, B + 1)})
    tot, prev = 0.0, 1
    N = float(norm_exponent(L))
    for v in levels:
        c = L.count_box(v)
        tot += (c - prev) * q ** (N * s - r * s * float(v))
        prev = c
    return tot


def approx(R, q, s):
    n, d = R.evaluate(q, s)
    return n.approx() / d.approx()


@given(seeds)
def test_closed_form_matches_dirichlet_series(seed):
    rng = random.Random(seed)
    q = rng.choice([3, 5])
    r = rng.choice([1, 2, 2, 3])
    z = PointH(1, [], GroundField(q)) if r == 1 else random_point(rng, q, r)
    L = lattice_from_point(z)
    E = eis_exact(L)
    assert approx(E, q, 3) == pytest.approx(dirichlet_sum(L, 3), rel=1e-10)


def test_rank_one_matches_carlitz_zeta_shape():
    # sum over nonzero a in A of |a|^{-s} = (q-1) / (1 - q^{1-s})
    L = lattice_from_point(PointH(1, [], GroundField(3)))
    E = eis_exact(L)
    from dkron.algebra_core import ExpRat
    assert E == ExpRat(ExpPoly({0: 2}), ExpPoly({0: 1, 1: -3}))


@pytest.mark.parametrize("q,r,texts,expect", [
    (3, 1, None, Fraction(-3, 2)),
    (5, 1, None, Fraction(-5, 4)),
    (3, 2, ["zeta"], Fraction(-9, 4)),
    (5, 2, ["zeta"], Fraction(-25, 12)),
    (3, 3, ["zeta^2", "zeta"], Fraction(-81, 26)),
])
def test_frozen_kronecker_derivatives(q, r, texts, expect):
    gf = GroundField(q)
    z = PointH(1, [], gf) if r == 1 else PointH.parse(gf, r, texts)
    k = kronecker_check(lattice_from_point(z))
    assert k["ok"] and k["lattice_form"]["ok"]
    assert k["value0"] == LogExact(-1)
    assert k["deriv0"] == LogExact(0, expect)


@given(seeds)
def test_kronecker_formula_random_points(seed):
    rng = random.Random(seed)
    q = rng.choice([3, 5])
    z = random_point(rng, q, 2)
    assert kronecker_check(lattice_from_point(z))["ok"]


@pytest.mark.parametrize("r", [1, 2, 3])
def test_auxiliary_polynomial_independence(r):
    for z, Y in kronecker_points(3, r)[:2]:
        L = lattice_from_point(z, Y)
        base = eis_exact(L)
        for a in (Poly(3, (0, 0, 1)), Poly(3, (1, 1))):
            assert eis_exact(L, a) == base


def test_nonconstant_auxiliary_required():
    L = lattice_from_point(standard_point(GroundField(3), 2))
    with pytest.raises(DkronError):
        eis_exact(L, Poly(3, (1,)))


def test_jacobi_series_value_and_derivative():
    L = lattice_from_point(PointH.parse(GroundField(3), 2, ["zeta*T^(1/2)"]))
    for x in list(L.torsion_reps(Poly.T(3)))[1:5]:
        c = second_limit_check(L, x)
        assert c["ok"] and c["value0"] == LogExact(0)


def test_jacobi_at_lattice_point_raises():
    L = lattice_from_point(standard_point(GroundField(3), 2))
    with pytest.raises(OnLattice):
        eis_jacobi_exact(L, [RatFunc.const(3, 0), RatFunc.const(3, 0)])


def test_taylor_coefficients_at_zero():
    L = lattice_from_point(PointH.parse(GroundField(3), 2, ["zeta"]))
    c = taylor_at_zero(eis_exact(L), 2)
    assert c[0].to_logexact() == LogExact(-1)
    assert c[1].to_logexact() == LogExact(0, Fraction(-9, 4))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_stieltjes_three_routes(n):
    for q, r in ((3, 1), (3, 2)):
        z, Y = kronecker_points(q, r)[1]
        c = stieltjes_check(lattice_from_point(z, Y), Poly.T(q), n)
        assert c["ok"]


def test_schwartz_series_with_delta_at_zero_is_plain_series():
    z = PointH.parse(GroundField(3), 2, ["zeta*T"])
    E = eis_schwartz(z, None, SchwartzData.delta0(2, 3))
    assert E == eis_exact(lattice_from_point(z))


def test_mirabolic_unit_phi_residue():
    res = mirabolic_vertex(VertexLabel((1, 0), {}), SchwartzData.delta0(2, 3), averaged=True)
    from dkron.algebra_core import LogPoly
    assert res["residue"] == LogPoly({-1: Fraction(-1, 4)})


@pytest.mark.parametrize("y", [None, "T", "1/T", "T^2+1"])
def test_rank_one_functional_equation(y):
    from dkron.algebra_core import parse_poly
    yy = None if y is None else parse_poly(3, y)
    assert functional_equation_check(yy, 3)["ok"]
