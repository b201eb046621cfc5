from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from hopf_verifier.series import (ExpOfUnit, InverseOfNonUnit, SeriesError, ZSeries,
                                  series_arith, series_exp_inv)

N = 6
fracs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
series = st.lists(fracs, min_size=N + 1, max_size=N + 1).map(lambda c: ZSeries(c, N))
nilpotent = series.map(lambda s: s - ZSeries.const(s[0], N))


def test_exp_of_z_is_exponential_series():
    e = ZSeries.z(N).exp()
    assert [e[k] for k in range(N + 1)] == [Fraction(1, factorial(k)) for k in range(N + 1)]


def test_geometric_inverse():
    inv = (ZSeries.one(N) - ZSeries.z(N)).inverse()
    assert all(inv[k] == 1 for k in range(N + 1))


def test_errors():
    with pytest.raises(ExpOfUnit):
        ZSeries.one(N).exp()
    with pytest.raises(InverseOfNonUnit):
        ZSeries.z(N).inverse()
    with pytest.raises(SeriesError):
        ZSeries.one(N).shift_down(1)
    with pytest.raises(ValueError):
        series_arith(ZSeries.one(N), ZSeries.one(N), "div")


def test_truncation_drops_high_orders():
    s = ZSeries.z(N, 4) + ZSeries.z(N, 2)
    assert s.truncate(3) == ZSeries.z(3, 2)
    assert (ZSeries.z(N, 4) * ZSeries.z(N, 4)).is_zero()
    assert s.valuation() == 2 and s.degree() == 4


@given(series, series, series)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == ZSeries.zero(N)


@given(series)
def test_inverse_roundtrip(a):
    if a[0] == 0:
        return
    assert a * a.inverse() == ZSeries.one(N)
    assert series_exp_inv(a, "inverse") == a.inverse()


@given(nilpotent, nilpotent)
def test_exp_is_a_homomorphism(a, b):
    assert (a + b).exp() == a.exp() * b.exp()
    assert a.exp() * (-a).exp() == ZSeries.one(N)
