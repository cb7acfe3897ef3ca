from fractions import Fraction

import pytest
from hypothesis import given

from dkron.algebra_core import GroundField, RatFunc, field_tower
from dkron.cinfty import CInftyElem, parse_elem
from dkron.errors import DkronError

from conftest import ratfuncs

F3 = field_tower(GroundField(3), 2)


def emb(x):
    return CInftyElem.from_ratfunc(x, F3)


@given(ratfuncs(3), ratfuncs(3))
def test_embedding_is_additive_and_multiplicative(x, y):
    assert (emb(x) + emb(y)).agrees(emb(x + y))
    assert (emb(x) * emb(y)).agrees(emb(x * y))


@given(ratfuncs(3, nonzero=True), ratfuncs(3, nonzero=True))
def test_absolute_value_is_multiplicative(x, y):
    assert (emb(x) * emb(y)).log_abs() == emb(x).log_abs() + emb(y).log_abs()
    assert emb(x).log_abs() == x.deg


@given(ratfuncs(3, nonzero=True))
def test_inverse(x):
    u = emb(x)
    assert (u * u.inv()).agrees(CInftyElem.const(F3, 1))


def test_ultrametric_cancellation():
    a = parse_elem("T^2 + T", GroundField(3))
    b = parse_elem("T^2 + 1", GroundField(3))
    assert (a - b).log_abs() == 1


@pytest.mark.parametrize("text", ["T", "zeta*T^3 + 1", "2*T^(1/2) + T^(-1)", "zeta + 1/T"])
def test_sqrt_squares_back(text):
    x = parse_elem(text, GroundField(3))
    s = x.sqrt()
    assert (s * s).agrees(x)
    assert s.log_abs() == x.log_abs() / 2


def test_sqrt_of_nonsquare_constant_extends_field():
    x = CInftyElem.const(field_tower(GroundField(3), 1), 2)
    s = x.sqrt()
    assert s.F.m == 2 and (s * s).agrees(x)


def test_fractional_exponents():
    x = parse_elem("T^(1/3)", GroundField(5))
    assert x.log_abs() == Fraction(1, 3)
    assert (x * x * x).agrees(parse_elem("T", GroundField(5)))


def test_parse_errors():
    with pytest.raises(DkronError):
        parse_elem("T^^2", GroundField(3))


def test_leading_term_of_zero_raises():
    with pytest.raises(DkronError):
        CInftyElem.zero(F3).lead()
