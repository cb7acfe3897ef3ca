import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dkron.algebra_core import GroundField, RatFunc, mat_det
from dkron.errors import DkronError, NotInPeriodDomain
from dkron.period_domain import (PointH, VertexLabel, act_on_label, building_map, coefficient_identity_sides,
                                 j_factor, mobius_act, standard_point, vertex_point)
from dkron.suite import random_gamma, random_point, random_vector

seeds = st.integers(0, 10 ** 6)


def test_rational_point_is_rejected():
    with pytest.raises(DkronError):
        PointH.parse(GroundField(3), 2, ["T + 1"]).profile()


def test_standard_point_profile():
    z = standard_point(GroundField(3), 2)
    prof = z.profile()
    assert prof.im_total == 0 and prof.is_vertex()


def test_imaginary_part_of_ramified_point():
    z = PointH.parse(GroundField(3), 2, ["zeta*T^(1/3)"])
    assert z.profile().im_total == Fraction(1, 3)


@given(seeds)
def test_building_map_is_a_probability_simplex(seed):
    rng = random.Random(seed)
    z = random_point(rng, rng.choice([3, 5]), rng.choice([2, 3]))
    bp = building_map(z)
    ws = [w for _, w in bp.simplex]
    assert sum(ws) == 1 and all(w > 0 for w in ws)
    assert len(ws) <= z.r


@given(seeds)
def test_coefficient_identity(seed):
    rng = random.Random(seed)
    q = rng.choice([3, 5])
    r = rng.choice([2, 3])
    z = random_point(rng, q, r)
    x = random_vector(rng, q, r)
    lhs, rhs = coefficient_identity_sides(z, x)
    assert lhs == rhs


@given(seeds)
def test_imaginary_part_transformation(seed):
    rng = random.Random(seed)
    q = rng.choice([3, 5])
    z = random_point(rng, q, 2)
    g = random_gamma(rng, q)
    try:
        gz = mobius_act(g, z)
    except NotInPeriodDomain:
        return
    j = j_factor(g, z)
    assert gz.profile().im_total == z.profile().im_total + mat_det(g).deg - 2 * j.log_abs()


@given(seeds)
def test_building_map_is_equivariant(seed):
    rng = random.Random(seed)
    q = 3
    z = random_point(rng, q, 2)
    g = random_gamma(rng, q)
    gz = mobius_act(g, z)
    image = {act_on_label(g, v, q): w for v, w in building_map(z).simplex}
    assert image == building_map(gz).as_dict()


def test_vertex_points_map_to_their_vertex():
    gf = GroundField(3)
    for diag in [(0, 0), (1, 0), (3, 1)]:
        lab = VertexLabel(diag, {})
        bp = building_map(vertex_point(lab, gf))
        assert len(bp.simplex) == 1 and bp.simplex[0][1] == 1
