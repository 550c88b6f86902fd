from __future__ import annotations

from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from adlv.coweights import (
    GCocharacter,
    GaloisIndex,
    IndexedInt,
    SuperbasicDatum,
    dominance_leq,
    dominant_sort,
    embed,
    g_dominance_leq,
    is_minuscule,
    kappa_match,
    newton_point,
    orbit_sum,
    weyl_orbit,
)
from adlv.errors import InvalidInput, NotSuperbasic

F = Fraction


def test_orbit_sum_examples():
    assert orbit_sum(GCocharacter(((0, 1), (0, 0)))) == (0, 1)
    assert orbit_sum(GCocharacter(((0, 0, 1), (0, 0, 1)))) == (0, 0, 2)
    assert orbit_sum(embed((F(1, 4), F(1, 4)), 2)) == (F(1, 2), F(1, 2))


def test_dominant_sort():
    assert dominant_sort((2, 0, 1)) == (0, 1, 2)
    assert dominant_sort((0, 1, 2)) == (0, 1, 2)
    assert dominant_sort((1, 1)) == (1, 1)
    assert dominant_sort(GCocharacter(((1, 0), (2, 0)))) == GCocharacter(((0, 1), (0, 2)))


def test_dominance_leq_examples():
    assert dominance_leq((F(1, 2), F(1, 2)), (0, 1))
    assert not dominance_leq((0, 1), (F(1, 2), F(1, 2)))
    assert dominance_leq((0, 3, 1), (0, 3, 1))
    assert not dominance_leq((0, 1), (0, 2))


def test_g_dominance_leq():
    assert g_dominance_leq(GCocharacter(((1, 1), (0, 1))), GCocharacter(((0, 2), (0, 1))))
    assert g_dominance_leq(GCocharacter(((0, 2),)), GCocharacter(((0, 2),)))
    assert not g_dominance_leq(GCocharacter(((1, 1), (0, 1))), GCocharacter(((0, 1), (0, 2))))


def test_weyl_orbit():
    assert len(weyl_orbit(GCocharacter(((0, 0, 1), (0, 0, 1))))) == 9
    mu = GCocharacter(((2, 2), (1, 1)))
    assert weyl_orbit(mu) == {mu}
    assert weyl_orbit(GCocharacter(((0, 1),))) == {GCocharacter(((0, 1),)), GCocharacter(((1, 0),))}


def test_is_minuscule():
    assert is_minuscule(GCocharacter(((0, 0, 1), (0, 0, 1))))
    assert not is_minuscule(GCocharacter(((0, 1, 3),)))
    assert is_minuscule(GCocharacter(((2, 2), (5, 5))))


def test_newton_point():
    assert newton_point(SuperbasicDatum(1, 7, (3,))) == (F(3, 7),) * 7
    assert newton_point(SuperbasicDatum(2, 2, (1, 0))) == (F(1, 4),) * 2
    with pytest.raises(NotSuperbasic):
        newton_point(SuperbasicDatum(1, 2, (2,)))


def test_kappa_match():
    assert kappa_match(GCocharacter(((0, 1, 3),)), SuperbasicDatum(1, 3, (4,)))
    assert not kappa_match(GCocharacter(((0, 1),)), SuperbasicDatum(1, 2, (2,)))
    assert kappa_match(GCocharacter(((0, 0),)), SuperbasicDatum(1, 2, (0,)))


def test_indexed_int_order_and_shift():
    a, b = IndexedInt(0, 3), IndexedInt(1, 5)
    assert not a.leq(b) and not b.leq(a)
    assert (a + 4) == IndexedInt(0, 7)
    assert a.lt(a + 1)
    assert GaloisIndex(5, 3) == 2


def test_superbasic_datum_f():
    ds = SuperbasicDatum(2, 3, (1, 0))
    assert ds.f(IndexedInt(0, 0)) == IndexedInt(1, 0)
    a = IndexedInt(1, 4)
    assert ds.f(ds.f(a)) == a + ds.m


def test_shape_errors():
    with pytest.raises(InvalidInput):
        GCocharacter(((0, 1), (0,)))
    with pytest.raises(InvalidInput):
        GCocharacter.from_flat((0, 1, 2), 2, 2)


small = st.integers(-4, 4)


@given(st.lists(small, min_size=1, max_size=6).flatmap(
    lambda v: st.tuples(st.just(v), st.permutations(v), st.permutations(v))))
def test_dominance_is_partial_order(data):
    a, b, c = (tuple(x) for x in data)
    assert dominance_leq(a, a)
    if dominance_leq(a, b) and dominance_leq(b, a):
        assert a == b
    if dominance_leq(a, b) and dominance_leq(b, c):
        assert dominance_leq(a, c)


@given(st.lists(small, min_size=1, max_size=6))
def test_sorted_dominates_every_rearrangement(v):
    # with increasing dominance, the decreasing arrangement is the ⪯-smallest rearrangement
    assert dominance_leq(tuple(sorted(v, reverse=True)), tuple(v))
    assert dominance_leq(tuple(v), tuple(sorted(v)))


@given(st.integers(1, 3), st.integers(1, 4), st.data())
def test_orbit_sum_linear(d, h, data):
    rows = st.lists(st.lists(small, min_size=h, max_size=h), min_size=d, max_size=d)
    x = GCocharacter(data.draw(rows))
    y = GCocharacter(data.draw(rows))
    assert orbit_sum(x + y) == tuple(a + b for a, b in zip(orbit_sum(x), orbit_sum(y)))


@given(st.lists(st.lists(st.integers(0, 2), min_size=1, max_size=4), min_size=1, max_size=2)
       .filter(lambda rs: len({len(r) for r in rs}) == 1))
def test_weyl_orbit_size_is_multinomial(rows):
    mu = GCocharacter(rows)
    expected = 1
    for r in rows:
        n = factorial(len(r))
        for v in set(r):
            n //= factorial(r.count(v))
        expected *= n
    orbit = weyl_orbit(mu)
    assert len(orbit) == expected
    assert all(sorted(w.rows[t]) == sorted(rows[t]) for w in orbit for t in range(len(rows)))
