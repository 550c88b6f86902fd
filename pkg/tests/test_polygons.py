from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from adlv.coweights import GCocharacter, SuperbasicDatum, dominance_leq, dominant_sort, embed
from adlv.errors import InvalidInput, KappaMismatch
from adlv.polygons import (
    Polygon,
    bracket,
    dim_formula,
    frac,
    half_defect,
    lattice_points,
    lattice_points_between,
    length_to_dom,
    moved,
    pairing,
    pairing_g,
    replace_two,
    rho_pairing,
    superbasic_dim_formula,
    transfer_length,
    two_element_length,
)
from adlv.suites import random_valid_pair

F = Fraction
NU7 = (F(3, 7),) * 7
MU7 = (0, 0, 0, 0, 0, 1, 2)


def test_bracket_examples():
    assert bracket((0, 0, 0)) == 0
    assert bracket(tuple(-x for x in NU7)) == 6
    assert bracket(MU7) == -1


def test_pairing_examples():
    assert pairing(NU7, MU7) == 5
    assert pairing((1, 4, 2), (1, 4, 2)) == 0
    assert pairing((F(1, 2), F(1, 2)), (0, 1)) == 0


def test_pairing_g_examples():
    assert pairing_g(GCocharacter(((0, 2),)), GCocharacter(((1, 1),))) == pairing((0, 2), (1, 1))
    assert pairing_g((F(1, 4), F(1, 4)), GCocharacter(((0, 1), (0, 0))), 2) == 0
    assert pairing_g((F(4, 3),) * 3, GCocharacter(((0, 1, 3),)), 1) == 2


def test_lattice_points_seven_entries():
    pts = lattice_points(NU7, MU7)
    assert pts == [(3, 1), (4, 1), (5, 1), (5, 2), (6, 2)]
    assert lattice_points_between((1, 2), (1, 2)) == 0
    assert lattice_points_between((F(4, 3),) * 3, (0, 1, 3)) == 2


def test_lattice_points_preconditions():
    with pytest.raises(InvalidInput):
        lattice_points((0, 1), (F(1, 2), F(1, 2)))
    with pytest.raises(InvalidInput):
        lattice_points((F(1, 2), F(1, 2)), (F(1, 3), F(2, 3)))


def test_polygon_values():
    p = Polygon.of((0, 1, 3))
    assert p.breakpoints == ((0, 0), (1, 0), (2, 1), (3, 4))
    assert p(F(5, 2)) == F(5, 2)
    with pytest.raises(InvalidInput):
        p(4)


def test_rho_pairing_examples():
    mu = GCocharacter(((0, 1, 3),))
    assert rho_pairing(mu - embed((F(4, 3),) * 3, 1)) == 3
    assert rho_pairing(GCocharacter(((2, 2, 2),))) == 0
    assert rho_pairing(GCocharacter(((0, 1), (0, 0))) - embed((F(1, 4),) * 2, 2)) == F(1, 2)


def test_half_defect_examples():
    assert half_defect(SuperbasicDatum(1, 3, (4,))) == 1
    assert half_defect(SuperbasicDatum(1, 2, (1,))) == F(1, 2)
    assert half_defect((0, 1, 2), 1) == 0
    assert frac(F(-1, 3)) == F(2, 3)


def test_dim_formula_examples():
    assert superbasic_dim_formula(GCocharacter(((0, 1),)), SuperbasicDatum(1, 2, (1,))) == 0
    assert superbasic_dim_formula(GCocharacter(((0, 1, 3),)), SuperbasicDatum(1, 3, (4,))) == 2
    assert superbasic_dim_formula(GCocharacter(((0, 1), (0, 0))), SuperbasicDatum(2, 2, (1, 0))) == 0
    with pytest.raises(KappaMismatch):
        dim_formula(GCocharacter(((0, 1),)), (1, 1), 1)


def test_length_examples():
    assert length_to_dom((0, 1, 2)) == 0
    assert length_to_dom((1, 0)) == 1
    assert length_to_dom((2, 0, 1)) == 3
    assert transfer_length((0, 1), 1, 2, 0) == 0
    assert transfer_length((0, 1), 1, 2, 1) == 1
    assert transfer_length((0, 1, 2), 2, 2, 3) == 0
    with pytest.raises(InvalidInput):
        transfer_length((0, 1), 2, 1, 1)
    with pytest.raises(InvalidInput):
        transfer_length((0, 1), 1, 3, 1)


def test_transfer_closed_form_fails_on_the_diagonal():
    # the double sum is only meaningful for i < j; i = j moves nothing
    v, beta = (0, 0), 1
    naive = sum(v.count(k + l) for k in range(1, beta + 1) for l in range(v[0] - beta, v[0])) - beta
    assert naive == 1
    assert transfer_length(v, 1, 1, beta) == 0 == pairing(v, v)


ints = st.integers(-5, 5)


@given(st.lists(ints, min_size=1, max_size=8))
def test_length_to_dom_is_pairing(v):
    assert length_to_dom(v) == pairing(v, dominant_sort(tuple(v)))


@given(st.lists(ints, min_size=1, max_size=8), st.data())
def test_transfer_length_is_pairing(v, data):
    v = tuple(sorted(v))
    h = len(v)
    i = data.draw(st.integers(1, h))
    j = data.draw(st.integers(i, h))
    beta = data.draw(st.integers(0, 6))
    assert transfer_length(v, i, j, beta) == pairing(v, dominant_sort(moved(v, i, j, beta)))


@given(st.lists(ints, min_size=2, max_size=8), st.data())
def test_two_element_length(v, data):
    v = tuple(sorted(v))
    a, b = sorted(data.draw(st.lists(st.integers(0, len(v) - 1), min_size=2, max_size=2, unique=True)))
    n2, n3 = v[a], v[b]
    k = data.draw(st.integers(0, 5))
    w = replace_two(v, (n2, n3), (n2 - k, n3 + k))
    assert dominance_leq(v, w)
    assert two_element_length(v, n2 - k, n2, n3, n3 + k) == pairing(v, w)


@given(st.integers(0, 10 ** 6))
def test_geometric_oracle(seed):
    v1, v2 = random_valid_pair(random.Random(seed))
    assert dominance_leq(v1, v2)
    p = pairing(v1, v2)
    assert p == lattice_points_between(v1, v2) == bracket([b - a for a, b in zip(v1, v2)]) >= 0


@given(st.lists(ints, min_size=1, max_size=6), st.data())
def test_additivity(v1, data):
    h = len(v1)
    v2 = data.draw(st.lists(ints, min_size=h, max_size=h))
    v3 = data.draw(st.lists(ints, min_size=h, max_size=h))
    assert pairing(v1, v3) == pairing(v1, v2) + pairing(v2, v3)


def test_pairing_identity_small_grid():
    for d, h in ((1, 2), (1, 3), (2, 2), (2, 3)):
        rows = list(itertools.combinations_with_replacement(range(3), h))
        for combo in itertools.product(rows, repeat=d):
            mu = GCocharacter(combo)
            ds = SuperbasicDatum.for_mu(mu)
            if not ds.is_superbasic():
                continue
            nu = (F(ds.m, d * h),) * h
            assert pairing_g(nu, mu, d) == rho_pairing(mu - embed(nu, d)) - half_defect(ds)
