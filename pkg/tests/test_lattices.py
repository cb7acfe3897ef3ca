import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dkron.algebra_core import GroundField, Poly, RatFunc
from dkron.cinfty import CInftyElem
from dkron.errors import DkronError
from dkron.lattices import SchwartzData, dual_lattice, lattice_from_point
from dkron.period_domain import PointH, standard_point
from dkron.suite import random_point

seeds = st.integers(0, 10 ** 6)


def _rand_coords(rng, q, r):
    T = RatFunc.T(q)
    out = []
    for _ in range(r):
        c = RatFunc(Poly(q, tuple(rng.randrange(q) for _ in range(rng.randrange(0, 3)))))
        if rng.random() < 0.6:
            c = c + RatFunc(Poly(q, (rng.randrange(q),))) / T
        out.append(c)
    return out


@given(seeds)
def test_shell_distribution_matches_enumeration(seed):
    rng = random.Random(seed)
    q = rng.choice([3, 5])
    r = rng.choice([1, 2, 2, 3])
    z = PointH(1, [], GroundField(q)) if r == 1 else random_point(rng, q, r)
    L = lattice_from_point(z)
    x = _rand_coords(rng, q, r)
    B = L.coords_norm(x)
    if B is None:
        B = 0
    if L.count_box(B) > 400:
        return
    grouped = L.shell_distribution(x, B)
    w = L.value(x)
    brute = {}
    pts = [CInftyElem.zero(L.F)] + [lam for _, lam in L.enumerate_points(B, with_values=True)]
    for lam in pts:
        d = lam - w
        key = None if d.is_known_zero() else d.log_abs()
        brute[key] = brute.get(key, 0) + 1
    assert grouped == brute


@given(seeds)
def test_reduced_basis_gives_point_counts(seed):
    rng = random.Random(seed)
    q = rng.choice([3, 5])
    L = lattice_from_point(random_point(rng, q, 2))
    B = max(L.norms)
    if L.count_box(B) > 300:
        return
    pts = L.enumerate_points(B, with_values=True)
    assert all(lam.log_abs() <= B for _, lam in pts)
    assert len(pts) + 1 == L.count_box(B)


def test_standard_lattice_covolume():
    L = lattice_from_point(standard_point(GroundField(3), 2))
    assert L.covolume() == Fraction(1, 2) * sum(L.norms)


def test_scaling_shifts_covolume():
    L = lattice_from_point(PointH.parse(GroundField(3), 2, ["zeta*T^(1/2)"]))
    c = CInftyElem.from_ratfunc(RatFunc.T(3) ** 2, L.F)
    assert L.scaled(c).covolume() == L.covolume() + 2


def test_sublattice_index():
    L = lattice_from_point(standard_point(GroundField(3), 2))
    T, one, zero = RatFunc.T(3), RatFunc.const(3, 1), RatFunc.const(3, 0)
    S = L.sublattice([[T, zero], [one, T]])
    assert S.index_in_parent() == 9
    assert len(list(S.quotient_reps())) == 9
    assert S.covolume() == L.covolume() + 1


def test_dependent_generators_rejected():
    gf = GroundField(3)
    from dkron.lattices import Lattice
    from dkron.algebra_core import field_tower
    F = field_tower(gf, 1)
    one = CInftyElem.const(F, 1)
    with pytest.raises(DkronError):
        Lattice([one, CInftyElem.from_ratfunc(RatFunc.T(3), F)])


def test_schwartz_data_basics():
    T = RatFunc.T(3)
    zero = RatFunc.const(3, 0)
    D = SchwartzData(2, 3, {(T.inv(), zero): 2, (zero, zero): -1, (T + T.inv(), zero): 1})
    assert D.D0 == -1 and D.mu == 2
    assert D.value((T.inv(), zero)) == 3
    assert D.level == Poly.T(3)


def test_schwartz_refinement_preserves_mass():
    T = RatFunc.T(3)
    zero, one = RatFunc.const(3, 0), RatFunc.const(3, 1)
    D = SchwartzData(2, 3, {(T.inv(), zero): 1, (zero, zero): 1})
    D2 = D.refine([[T, zero], [zero, one]])
    assert D2.mu == 3 * D.mu


def test_dual_lattice_rank_one():
    z = PointH(1, [], GroundField(3))
    T = RatFunc.T(3)
    L = lattice_from_point(z, [[T]])
    assert dual_lattice(L).covolume() == -1
    with pytest.raises(DkronError):
        dual_lattice(lattice_from_point(standard_point(GroundField(3), 2)))
