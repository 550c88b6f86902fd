from __future__ import annotations

import pytest

from adlv.charts import chart_from_type, cyclic_phi, is_cyclic, v_dim
from adlv.components import (
    WITNESS_RULES,
    component_count,
    conjecture_report,
    floor_ceil_vector,
    lemma7_checks,
    psi_chain,
    s1_s2_decomposition,
    sandwich_ok,
    tilde_mu,
)
from adlv.coweights import GCocharacter, SuperbasicDatum, is_minuscule, newton_point
from adlv.errors import InvalidInput
from adlv.polygons import pairing_g
from adlv.suites import grid


def G(*rows):
    return GCocharacter(tuple(tuple(r) for r in rows))


def cyclic_of(mu):
    return cyclic_phi(chart_from_type(mu, SuperbasicDatum.for_mu(mu)))


def test_tilde_mu_examples():
    ext = cyclic_of(G((0, 1)))
    assert tilde_mu(ext) == G((0, 1))
    assert sandwich_ok(ext, G((0, 1)))
    s = s1_s2_decomposition(cyclic_of(G((0, 1, 3))))
    assert s.total == 2


def test_non_cyclic_rejected(grid_charts):
    ext = next(e for _, e in grid_charts if not is_cyclic(e))
    for fn in (tilde_mu, s1_s2_decomposition, psi_chain):
        with pytest.raises(InvalidInput):
            fn(ext)


def test_cyclic_grid_identities(grid_charts):
    seen = 0
    for mu, ext in grid_charts:
        if not is_cyclic(ext):
            continue
        seen += 1
        tm = tilde_mu(ext)
        nu = newton_point(ext.chart.datum)
        assert sandwich_ok(ext, mu)
        s = s1_s2_decomposition(ext)
        assert s.total == v_dim(ext)
        assert s.s1 == pairing_g(tm, mu)
        assert s.s2 <= pairing_g(nu, tm, mu.d)
        ch = psi_chain(ext)
        assert ch.ok and ch.orientation == "tilde_mu->nu"
        assert len(ch.psi_hat) == mu.h
    assert seen


def test_tilde_mu_of_a_dominant_type_cyclic_chart():
    mu = G((0, 0, 1), (0, 0, 1))
    s = s1_s2_decomposition(cyclic_of(mu))
    assert s.s1 == pairing_g(tilde_mu(cyclic_of(mu)), mu)


def test_component_count_examples():
    for mu in grid(2, ((1, 2), (1, 3), (1, 4)), minuscule_only=True):
        assert component_count(mu) == 1
    assert component_count(G((0, 0, 1), (0, 0, 1))) >= 2
    assert component_count(G((0, 0, 2), (1, 1, 1))) == component_count(G((0, 0, 2)))


def test_two_moving_rows_give_several_components():
    rep = lemma7_checks(G((0, 0, 1), (0, 0, 1)))
    assert rep.part == 1 and rep.ok and rep.count >= 2
    assert len(rep.witnesses) == 2
    assert rep.witnesses[0][0] != rep.witnesses[1][0]
    assert rep.witnesses[1][2] in {name for name, _, _ in WITNESS_RULES}


def test_one_moving_row_reduces_to_d1():
    rep = lemma7_checks(G((0, 0, 2), (1, 1, 1)))
    assert rep.part == 2 and rep.ok and rep.reference_count == rep.count


def test_component_lemma_rejects_constant_rows():
    with pytest.raises(InvalidInput):
        lemma7_checks(G((1,), (0,)))


def test_floor_ceil_vector():
    assert floor_ceil_vector(2, 3) == (0, 1, 1)
    assert floor_ceil_vector(7, 3) == (2, 2, 3)
    assert floor_ceil_vector(1, 1) == (1,)


def test_conjecture_report_example():
    rep = conjecture_report(G((0, 0, 1), (0, 0, 1)))
    assert rep.predicted_top == 2 == rep.predicted_top_sorted
    assert rep.top_count == 2
    assert rep.chart_count == 3
    assert rep.match_flags["all_cyclic"] and rep.match_flags["image_admissible"]
    assert sum(rep.image.values()) == rep.chart_count
    d = rep.as_dict()
    assert d["predicted_top"] == 2 and d["mu"] == [[0, 0, 1], [0, 0, 1]]


def test_conjecture_report_d1():
    for mu in grid(1, ((1, 2), (1, 3), (1, 4)), minuscule_only=True):
        rep = conjecture_report(mu)
        assert rep.predicted_top == 1 == rep.top_count


def test_conjecture_rejects_non_minuscule():
    mu = G((0, 1, 3))
    assert not is_minuscule(mu)
    with pytest.raises(InvalidInput):
        conjecture_report(mu)
