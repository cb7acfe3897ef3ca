from fractions import Fraction

import pytest

from dkron.algebra_core import GroundField, Poly, RatFunc
from dkron.cm_heights import make_order
from dkron.drinfeld import (apply_rho, discriminant_a_valuation, discriminant_valuation,
                            drinfeld_coeffs, exp_valuation, homothety_invariant, ideal_star,
                            norm_compat_check)
from dkron.cinfty import CInftyElem
from dkron.errors import OnLattice
from dkron.lattices import lattice_from_point
from dkron.period_domain import PointH, standard_point


def _pt(q, r, texts=None):
    gf = GroundField(q)
    if r == 1:
        return PointH(1, [], gf)
    return standard_point(gf, r) if texts is None else PointH.parse(gf, r, texts)


@pytest.mark.parametrize("q,r,texts", [(3, 1, None), (5, 1, None), (7, 1, None), (3, 2, None)])
def test_discriminant_product_matches_series_expansion(q, r, texts):
    L = lattice_from_point(_pt(q, r, texts))
    dc = drinfeld_coeffs(L, Poly.T(q))
    assert dc.residual_free
    assert dc.top_valuation() == discriminant_valuation(L)
    assert dc.coeffs[0].agrees(CInftyElem.from_ratfunc(RatFunc.T(q), dc.coeffs[0].F))


def test_frozen_discriminants():
    # values recorded from the series-expansion route above
    assert discriminant_valuation(lattice_from_point(_pt(3, 2))) == 9
    assert discriminant_valuation(lattice_from_point(_pt(5, 2))) == 25
    assert discriminant_valuation(lattice_from_point(_pt(3, 1))) == 3
    assert discriminant_valuation(lattice_from_point(_pt(5, 1))) == 5


def test_rho_maps_torsion_to_zero():
    L = lattice_from_point(_pt(3, 1))
    dc = drinfeld_coeffs(L, Poly.T(3))
    from dkron.drinfeld import exp_value
    for x in list(L.torsion_reps(Poly.T(3)))[1:]:
        e = exp_value(L, x, max(L.norms) + 3)
        v = apply_rho(dc, e)
        assert v.is_known_zero() or v.ord() > e.ord() + 1


def test_discriminant_levels_agree():
    L = lattice_from_point(_pt(3, 2, ["zeta*T + 1"]))
    d1 = discriminant_a_valuation(L, Poly.T(3))
    d2 = discriminant_a_valuation(L, Poly.T(3) + Poly(3, (1,)))
    assert d1 == d2


def test_exp_valuation_routes_agree():
    L = lattice_from_point(_pt(3, 2, ["zeta*T^(1/2)"]))
    T = RatFunc.T(3)
    for x in ([T.inv(), RatFunc.const(3, 0)], [T.inv(), T.inv() * 2], [T + T.inv(), RatFunc.const(3, 1) / T]):
        assert exp_valuation(L, x) == exp_valuation(L, L.value(x))


def test_exp_valuation_on_lattice_raises():
    L = lattice_from_point(_pt(3, 2))
    with pytest.raises(OnLattice):
        exp_valuation(L, [RatFunc.const(3, 1), RatFunc.const(3, 0)])


def test_homothety_invariance():
    L = lattice_from_point(_pt(3, 2, ["zeta*T"]))
    c = CInftyElem.from_ratfunc(RatFunc.T(3), L.F)
    assert homothety_invariant(L) == homothety_invariant(L.scaled(c))


def test_norm_compatibility_index_q():
    L = lattice_from_point(_pt(5, 2))
    one, zero, T = RatFunc.const(5, 1), RatFunc.const(5, 0), RatFunc.T(5)
    assert norm_compat_check(L, L.sublattice([[one, zero], [zero, T]]))["ok"]


def test_ideal_star_norm_relation():
    O = make_order("T^3+T+2", "1", 3)
    I = O.unit_ideal()
    T, zero = RatFunc.T(3), RatFunc.const(3, 0)
    A = I.scale((T, zero))
    Lbig, Lsmall, d = ideal_star(O, I, A)
    q, r = 3, 2
    assert Lsmall.index_in_parent() == q ** r
    lhs = discriminant_valuation(Lbig, check=False)
    rhs = q ** r * discriminant_valuation(Lsmall, check=False) + (q ** r - 1) * d
    assert lhs == rhs
