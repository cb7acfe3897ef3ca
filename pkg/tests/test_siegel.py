import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dkron.algebra_core import GroundField, LogExact, RatFunc
from dkron.drinfeld import discriminant_valuation
from dkron.errors import NotInPeriodDomain
from dkron.lattices import SchwartzData, lattice_from_point
from dkron.period_domain import PointH, VertexLabel, standard_point, vertex_point
from dkron.siegel import (eta, lattice_jacobi_check, lerch_check, level_compat_check, siegel_report,
                          siegel_unit_valuation, transformation_check)
from dkron.suite import random_gamma, random_point

seeds = st.integers(0, 10 ** 6)
T = RatFunc.T(3)
Z0 = RatFunc.const(3, 0)


def balanced():
    return SchwartzData(2, 3, {(T.inv(), Z0): 1, (Z0, T.inv()): -1})


def test_delta_only_datum_gives_discriminant():
    z = PointH.parse(GroundField(3), 2, ["zeta*T"])
    D = SchwartzData.delta0(2, 3, weight=2)
    assert siegel_unit_valuation(z, D) == 2 * discriminant_valuation(lattice_from_point(z))


def test_eta_is_homothety_free_for_balanced_data():
    z = standard_point(GroundField(3), 2)
    rep = siegel_report(z, balanced())
    assert rep.mu == 0 and rep.eta == rep.exponent


def test_balanced_level_datum_at_symmetric_vertex():
    assert eta(standard_point(GroundField(3), 2), balanced()) == 0


@given(seeds)
def test_transformation_law(seed):
    rng = random.Random(seed)
    z = random_point(rng, 3, 2)
    g = random_gamma(rng, 3)
    D = SchwartzData(2, 3, {(T.inv(), Z0): 2, (Z0, Z0): 1, (T.inv(), T.inv()): -1})
    try:
        c = transformation_check(g, z, D)
    except NotInPeriodDomain:
        return
    assert c["ok"]


def test_level_refinement():
    z = PointH.parse(GroundField(3), 2, ["zeta*T^(1/2)"])
    D = SchwartzData(2, 3, {(T.inv(), Z0): 1, (Z0, Z0): 3})
    one = RatFunc.const(3, 1)
    assert level_compat_check(z, D, [[T, Z0], [Z0, one]])["ok"]
    assert level_compat_check(z, D, [[T, one], [Z0, T]])["ok"]


@pytest.mark.parametrize("diag", [(0, 0), (1, 0), (2, 0)])
@pytest.mark.parametrize("which", ["unit", "balanced"])
def test_laurent_data_of_mirabolic_series(diag, which):
    z = vertex_point(VertexLabel(diag, {}), GroundField(3))
    D = SchwartzData.delta0(2, 3) if which == "unit" else balanced()
    c = lerch_check(z, D)
    assert c["ok"]


def test_unaveraged_laurent_data():
    z = vertex_point(VertexLabel((1, 0), {}), GroundField(3))
    assert lerch_check(z, SchwartzData.delta0(2, 3), averaged=False)["ok"]


def test_lattice_normalized_jacobi_derivative():
    L = lattice_from_point(PointH.parse(GroundField(3), 2, ["zeta + 1/T"]))
    for x in list(L.torsion_reps(T.num))[1:4]:
        assert lattice_jacobi_check(L, x)["ok"]
