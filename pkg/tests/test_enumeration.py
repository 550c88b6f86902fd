from __future__ import annotations

import itertools
from math import gcd

import pytest

from adlv.charts import ELChart, ExtendedELChart, chart_from_type, cyclic_phi, hodge_point, validate
from adlv.coweights import GCocharacter, SuperbasicDatum, is_minuscule
from adlv.enumeration import (
    candidate_rows,
    candidate_types,
    dimension,
    enumerate_charts,
    phi_extensions,
    top_charts,
)
from adlv.errors import InvalidInput, KappaMismatch, NotSuperbasic
from adlv.polygons import superbasic_dim_formula


def G(*rows):
    return GCocharacter(tuple(tuple(r) for r in rows))


def test_candidate_types_examples():
    assert set(candidate_types(G((0, 1)), SuperbasicDatum(1, 2, (1,)))) == {G((0, 1))}
    # (0, 1, 0) has partial sum 1 > 2/3 at k = 2, and (1, 0, 0) fails already at k = 1
    assert set(candidate_types(G((0, 0, 1)), SuperbasicDatum(1, 3, (1,)))) == {G((0, 0, 1))}
    assert len(brute_force_charts(1, 3, (1,), 6)[G((0, 0, 1))]) == 1


def test_candidate_rows_are_rearrangements_below():
    rows = set(candidate_rows((0, 2)))
    assert rows == {(0, 2), (2, 0), (1, 1)}


def test_preconditions():
    with pytest.raises(InvalidInput):
        enumerate_charts(G((-1, 2)), SuperbasicDatum(1, 2, (1,)))
    with pytest.raises(KappaMismatch):
        enumerate_charts(G((0, 1)), SuperbasicDatum(1, 2, (3,)))
    with pytest.raises(NotSuperbasic):
        enumerate_charts(G((1, 1)))
    with pytest.raises(InvalidInput):
        enumerate_charts(G((1, 0)), SuperbasicDatum(1, 2, (1,)))


def test_small_counts():
    res = enumerate_charts(G((0, 1)))
    assert res.chart_count == 1 and res.max_dim == 0
    assert dimension(G((0, 1, 3))) == 2
    assert dimension(G((0, 1), (0, 0))) == 0
    assert len(top_charts(G((0, 0, 1)))) == 1
    assert len(top_charts(G((0, 0, 1), (0, 0, 1)))) > 1


def test_phi_extensions():
    A = chart_from_type(G((0, 1)), SuperbasicDatum(1, 2, (1,)))
    assert phi_extensions(A, G((0, 1))) == [cyclic_phi(A)]
    # type dominant (0, 1, 3) is not below (1, 1, 2)
    B = chart_from_type(G((0, 1, 3)), SuperbasicDatum(1, 3, (4,)))
    assert phi_extensions(B, G((1, 1, 2))) == []


def test_grid_invariants(grid_results):
    for mu, res in grid_results.items():
        charts = res.charts
        assert charts, mu
        assert len(set(charts)) == len(charts)
        assert res.max_dim == max(res.dims)
        assert res.max_dim == superbasic_dim_formula(mu, res.datum)
        assert cyclic_phi(chart_from_type(mu, res.datum)) in res.top_charts()
        for ext in charts:
            assert validate(ext) == []
            assert hodge_point(ext) == mu
        if is_minuscule(mu):
            assert all(e == cyclic_phi(e.chart) for e in charts)
        if mu.d == 1 and is_minuscule(mu):
            assert res.top_count == 1


def test_determinism():
    mu = G((0, 1, 2), (0, 1, 1))
    a = enumerate_charts(mu)
    b = enumerate_charts(mu)
    assert [e.sort_key() for e in a.charts] == [e.sort_key() for e in b.charts]
    assert a.dims == b.dims


def brute_force_charts(d: int, h: int, slopes: tuple, R: int) -> dict:
    """Every normalized chart with generators in [-R, R] and every phi table allowed by (a) and (c)."""
    ds = SuperbasicDatum(d, h, slopes)
    per_comp = [[v for v in range(-R, R + 1) if v % h == r] for r in range(h)]
    comp_choices = list(itertools.product(*per_comp))
    out: dict = {}
    for gens in itertools.product(comp_choices, repeat=d):
        if sum(gens[0]) != h * (h - 1) // 2:
            continue
        try:
            A = ELChart(ds, gens)
        except InvalidInput:
            continue
        ranges = [[range(A.phi0(t, v) + 1) for v in A.a_low(t)] for t in range(d)]
        tables_per_comp = [list(itertools.product(*r)) for r in ranges]
        for tables in itertools.product(*tables_per_comp):
            ext = ExtendedELChart(A, tables)
            if validate(ext):
                continue
            out.setdefault(hodge_point(ext), set()).add(ext)
    return out


BRUTE_CASES = [
    (1, 2, (1,)), (1, 2, (3,)), (1, 2, (5,)), (1, 2, (7,)),
    (1, 3, (1,)), (1, 3, (2,)), (1, 3, (4,)), (1, 3, (5,)), (1, 3, (7,)),
    (2, 2, (1, 0)), (2, 2, (0, 1)), (2, 2, (2, 1)), (2, 2, (1, 2)), (2, 2, (3, 0)), (2, 2, (0, 3)),
]


@pytest.mark.parametrize("d,h,slopes", BRUTE_CASES)
def test_completeness_against_brute_force(d, h, slopes):
    R = 2 * sum(slopes) + 2 * h
    found = brute_force_charts(d, h, slopes, R)
    m = sum(slopes)
    assert gcd(m, h) == 1
    rows = [r for r in itertools.combinations_with_replacement(range(m + 1), h)]
    expected_mus = set()
    for combo in itertools.product(rows, repeat=d):
        mu = GCocharacter(combo)
        if tuple(int(s) for s in mu.row_sums()) != slopes:
            continue
        expected_mus.add(mu)
        res = enumerate_charts(mu, SuperbasicDatum(d, h, slopes))
        charts = set(res.charts)
        for ext in charts:
            assert all(-R <= v <= R for g in ext.chart.gens for v in g), "window too small"
        assert charts == found.get(mu, set()), mu
    # charts whose Hodge rows sum to other slopes belong to a sigma-conjugate datum,
    # which is enumerated under its own slopes (covered by the other cases)
    matching = {mu for mu in found if tuple(int(s) for s in mu.row_sums()) == slopes}
    assert matching <= expected_mus
