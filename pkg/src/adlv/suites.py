"""Verification suites: each check returns a :class:`CheckResult`.

The numbered checks ``criterion_1`` ... ``criterion_11`` are the acceptance
criteria; the remaining checks are supporting properties. Grid sizes are
``"small"`` (quick smoke run) or ``"full"`` (the acceptance grids).
"""

from __future__ import annotations

import itertools
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .charts import (
    PhiComponent,
    chart_from_type,
    cyclic_phi,
    hodge_point,
    is_cyclic,
    v_dim,
)
from .components import (
    component_count,
    conjecture_report,
    lemma7_checks,
    psi_chain,
    s1_s2_decomposition,
    sandwich_ok,
    tilde_mu,
)
from .coweights import GCocharacter, SuperbasicDatum, dominant_sort, is_minuscule, newton_point
from .deformation import ComponentFrame, component_steps
from .enumeration import component_key, enumerate_charts
from .levi import general_dim, newton_points, recursion_check
from .polygons import (
    bracket,
    half_defect,
    lattice_points,
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

SHAPES = ((1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (3, 2))
GRID_MAX = {"small": 2, "full": 4}
SEVEN_ENTRY_POINTS = [(3, 1), (4, 1), (5, 1), (5, 2), (6, 2)]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    cases: int = 0
    report_only: bool = False
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else ("REPORT" if self.report_only else "FAIL")
        return f"[{tag}] {self.name}: {self.detail} ({self.cases} cases, {self.seconds:.1f}s)"


def workers() -> int:
    env = os.environ.get("ADLV_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _pmap(fn, items: list) -> list:
    n = workers()
    if n <= 1 or len(items) < 8:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * n))))


def _timed(name: str, fn) -> CheckResult:
    t = time.perf_counter()
    res = fn()
    res.name = name
    res.seconds = time.perf_counter() - t
    return res


def grid(max_entry: int = 4, shapes=SHAPES, minuscule_only: bool = False) -> list:
    """Dominant mu >= 0 with entries <= max_entry and total coprime to h."""
    out = []
    for d, h in shapes:
        rows = list(itertools.combinations_with_replacement(range(max_entry + 1), h))
        for combo in itertools.product(rows, repeat=d):
            mu = GCocharacter(combo)
            if gcd(int(mu.total()), h) != 1:
                continue
            if minuscule_only and not is_minuscule(mu):
                continue
            out.append(mu)
    return out


@lru_cache(maxsize=None)
def _enum(mu: GCocharacter):
    return enumerate_charts(mu)


def _grid_for(size: str) -> list:
    return grid(GRID_MAX[size])


# -- criterion 1 ---------------------------------------------------------------

def _dim_pair(mu: GCocharacter) -> tuple:
    datum = SuperbasicDatum.for_mu(mu)
    return mu, enumerate_charts(mu, datum).max_dim, superbasic_dim_formula(mu, datum)


def criterion_1(size: str = "full") -> CheckResult:
    mus = _grid_for(size)
    bad = [(str(mu), a, b) for mu, a, b in _pmap(_dim_pair, mus) if a != b]
    return CheckResult("", not bad, f"enumerated dimension = closed formula, {len(bad)} mismatches",
                       len(mus), failures=bad[:10])


# -- criterion 2 ---------------------------------------------------------------

def criterion_2(size: str = "full") -> CheckResult:
    nu1 = (Fraction(3, 7),) * 7
    nu2 = (0, 0, 0, 0, 0, 1, 2)
    p = pairing(nu1, nu2)
    pts = lattice_points(nu1, nu2)
    ok = p == 5 and len(pts) == 5 and pts == SEVEN_ENTRY_POINTS
    return CheckResult("", ok, f"pairing = {p}, points = {pts}", 1)


# -- criterion 3 ---------------------------------------------------------------

def criterion_3(size: str = "full") -> CheckResult:
    bad = []
    mus = _grid_for(size)
    for mu in mus:
        datum = SuperbasicDatum.for_mu(mu)
        nu = newton_point(datum)
        lhs = pairing_g(nu, mu, datum.d)
        rhs = rho_pairing(mu - GCocharacter((nu,) * datum.d)) - half_defect(datum)
        if lhs != rhs:
            bad.append((str(mu), lhs, rhs))
    return CheckResult("", not bad, f"pairing_g(nu, mu) = <rho, mu - nu> - defect/2, {len(bad)} mismatches",
                       len(mus), failures=bad[:10])


# -- criterion 4 ---------------------------------------------------------------

def criterion_4(size: str = "full") -> CheckResult:
    bad = []
    mus = _grid_for(size)
    for mu in mus:
        datum = SuperbasicDatum.for_mu(mu)
        bound = pairing_g(newton_point(datum), mu, datum.d)
        cyc = v_dim(cyclic_phi(chart_from_type(mu, datum)))
        top = _enum(mu).max_dim
        if cyc != bound or top > bound:
            bad.append((str(mu), cyc, top, bound))
    return CheckResult("", not bad, f"cyclic chart of type mu attains the bound, none exceeds it, "
                       f"{len(bad)} failures", len(mus), failures=bad[:10])


# -- criterion 5 ---------------------------------------------------------------

def criterion_5(size: str = "full") -> CheckResult:
    bad, n = [], 0
    mus = grid(GRID_MAX[size], minuscule_only=True)
    for mu in mus:
        for blk in _enum(mu).blocks:
            n += blk.count
            if not all(all(p.cyclic) for p in blk.parts):
                bad.append(str(mu))
    return CheckResult("", not bad, f"{n} charts over {len(mus)} minuscule mu, {len(bad)} with non-cyclic charts",
                       n, failures=bad[:10])


# -- criteria 6, 7 -------------------------------------------------------------

def _random_int_vector(rng: random.Random, h: int) -> tuple:
    return tuple(rng.randint(-5, 5) for _ in range(h))


def criterion_6(size: str = "full", trials: int = 1000, seed: int = 20240601) -> CheckResult:
    rng = random.Random(seed)
    bad = []
    for _ in range(trials):
        h = rng.randint(1, 8)
        v = _random_int_vector(rng, h)
        if length_to_dom(v) != pairing(v, dominant_sort(v)):
            bad.append(("length_to_dom", v))
        w = tuple(sorted(v))
        i = rng.randint(1, h)
        j = rng.randint(i, h)
        beta = rng.randint(0, 5)
        if transfer_length(w, i, j, beta) != pairing(w, dominant_sort(moved(w, i, j, beta))):
            bad.append(("transfer_length", w, i, j, beta))
        if h >= 2:
            a, b = sorted(rng.sample(range(h), 2))
            n2, n3 = w[a], w[b]
            k = rng.randint(0, 4)
            n1, n4 = n2 - k, n3 + k
            w2 = replace_two(w, (n2, n3), (n1, n4))
            if two_element_length(w, n1, n2, n3, n4) != pairing(w, w2):
                bad.append(("two_element", w, (n1, n2, n3, n4)))
    return CheckResult("", not bad, f"{len(bad)} disagreements with direct pairing", trials, failures=bad[:10])


def random_valid_pair(rng: random.Random) -> tuple:
    """A rational v1 and integral v2 with v1 ⪯ v2."""
    h = rng.randint(1, 8)
    v2 = tuple(sorted(_random_int_vector(rng, h)))
    q = rng.randint(1, 9)
    ps2 = list(itertools.accumulate(v2))
    ps1 = [p + Fraction(rng.randint(0, 3 * q), q) for p in ps2[:-1]] + [ps2[-1]]
    v1 = tuple(b - a for a, b in zip([0] + ps1[:-1], ps1))
    return v1, v2


def criterion_7(size: str = "full", trials: int = 1000, seed: int = 7) -> CheckResult:
    rng = random.Random(seed)
    bad = []
    for _ in range(trials):
        v1, v2 = random_valid_pair(rng)
        p = pairing(v1, v2)
        if not p == len(lattice_points(v1, v2)) == bracket([b - a for a, b in zip(v1, v2)]):
            bad.append((v1, v2))
    return CheckResult("", not bad, f"pairing = lattice count = bracket(v2 - v1), {len(bad)} failures",
                       trials, failures=bad[:10])


# -- criterion 8 ---------------------------------------------------------------

def non_cyclic_components(mus: list) -> list:
    """Distinct non-cyclic component solutions, as PhiComponents in normalized position."""
    seen, out = set(), []
    for mu in mus:
        for blk in _enum(mu).blocks:
            for p in blk.parts:
                gens, fgens = component_key(blk.chart, p.tau)
                for tab, cyc in zip(p.tables, p.cyclic):
                    key = (gens, fgens, tab)
                    if cyc or key in seen:
                        continue
                    seen.add(key)
                    out.append(PhiComponent(gens, fgens, blk.chart.h, tab))
    return out


def criterion_8(size: str = "full") -> CheckResult:
    comps = non_cyclic_components(_grid_for(size))
    bad, steps = [], 0
    for comp in comps:
        fr = ComponentFrame(comp)
        for i in range(fr.n + 1):
            if fr.at(i).violations():
                bad.append(("phi_i invalid", comp.gens, comp.vals, i))
        for rec in component_steps(comp, diagnostics=False):
            steps += 1
            if not (rec.alpha > 0 and rec.hodge_increase_ok and rec.counts_ok and rec.bound_ok):
                bad.append(("step", comp.gens, rec.i, rec.alpha, rec.v_diff, rec.delta))
    return CheckResult("", not bad, f"{len(comps)} non-cyclic components, {steps} unit steps, "
                       f"{len(bad)} failures", steps, failures=bad[:10])


# -- criterion 9 ---------------------------------------------------------------

def levi_instances(size: str = "full") -> list:
    top = 3 if size == "full" else 2
    shapes = [(1, h) for h in (1, 2, 3, 4)] + [(2, h) for h in (1, 2, 3)]
    if size != "full":
        shapes = [(1, h) for h in (1, 2, 3)] + [(2, h) for h in (1, 2)]
    out = []
    for d, h in shapes:
        rows = list(itertools.combinations_with_replacement(range(top + 1), h))
        for combo in itertools.product(rows, repeat=d):
            mu = GCocharacter(combo)
            out.extend((mu, gd) for gd in newton_points(mu))
    return out


def _recursion_case(item):
    mu, gd = item
    r = recursion_check(mu, gd)
    return r.ok, str(mu), gd.newton, r.lhs, r.rhs


def criterion_9(size: str = "full") -> CheckResult:
    items = levi_instances(size)
    bad = [x[1:] for x in _pmap(_recursion_case, items) if not x[0]]
    return CheckResult("", not bad, f"recursion through the Levi = general_dim, {len(bad)} mismatches",
                       len(items), failures=bad[:10])


# -- criteria 10, 11 -----------------------------------------------------------

def criterion_10(size: str = "full") -> CheckResult:
    top = 6 if size == "full" else 4
    mus = grid(GRID_MAX[size], [(1, h) for h in range(1, top + 1)], minuscule_only=True)
    bad = [(str(mu), c) for mu in mus if (c := component_count(mu)) != 1]
    return CheckResult("", not bad, f"|M_mu| = 1 for every d=1 minuscule mu with h <= {top}, "
                       f"{len(bad)} exceptions", len(mus), failures=bad)


def criterion_11(size: str = "full") -> CheckResult:
    mu = GCocharacter(((0, 0, 1), (0, 0, 1)))
    rep = conjecture_report(mu)
    sand = all(sandwich_ok(e, mu) for e in _enum(mu).charts)
    image = {str(k): v for k, v in sorted(rep.image.items(), key=lambda kv: kv[0].rows)}
    ok = rep.predicted_top == 2 and sand and rep.match_flags["all_cyclic"]
    detail = (f"predicted_top = {rep.predicted_top}, top_count = {rep.top_count}, "
              f"charts = {rep.chart_count}, orbit_count = {rep.orbit_count}, sandwich = {sand}, "
              f"tilde_mu image = {image}")
    return CheckResult("", ok, detail, rep.chart_count)


CRITERIA = {
    1: ("dimension formula on the desk grid", criterion_1),
    2: ("lattice points under the (3/7)^7 chord", criterion_2),
    3: ("pairing identity with rho and the defect", criterion_3),
    4: ("bound attained by the cyclic chart", criterion_4),
    5: ("minuscule charts are cyclic", criterion_5),
    6: ("length lemmas, randomized", criterion_6),
    7: ("geometric oracle, randomized", criterion_7),
    8: ("deformation bookkeeping", criterion_8),
    9: ("Levi recursion identity", criterion_9),
    10: ("d=1 minuscule singleton", criterion_10),
    11: ("conjecture report", criterion_11),
}


def run_criterion(k: int, size: str = "full") -> CheckResult:
    title, fn = CRITERIA[k]
    return _timed(f"criterion {k}: {title}", lambda: fn(size))


# -- supporting checks ---------------------------------------------------------

def check_general_dim(size: str = "full") -> CheckResult:
    bad = []
    mus = _grid_for(size)
    from .levi import GeneralClassDatum
    for mu in mus:
        datum = SuperbasicDatum.for_mu(mu)
        gd = GeneralClassDatum(datum.d, datum.h, newton_point(datum), datum.m)
        if general_dim(mu, gd) != _enum(mu).max_dim:
            bad.append(str(mu))
    return CheckResult("", not bad, f"general_dim = enumeration, {len(bad)} mismatches", len(mus), failures=bad)


def check_cyclic_combinatorics(size: str = "full") -> CheckResult:
    bad, n = [], 0
    for mu in _grid_for(size):
        for ext, dim in _enum(mu).iter_charts():
            if not is_cyclic(ext):
                continue
            n += 1
            s = s1_s2_decomposition(ext)
            tm = tilde_mu(ext)
            datum = ext.chart.datum
            nu = newton_point(datum)
            pc = psi_chain(ext)
            if not (s.total == dim and s.s1 == pairing_g(tm, mu) and s.s2 <= pairing_g(nu, tm, datum.d)
                    and sandwich_ok(ext, mu) and pc.ok and pc.orientation == "tilde_mu->nu"
                    and hodge_point(ext) == mu):
                bad.append((str(mu), ext.chart.gens))
    return CheckResult("", not bad, f"S1 + S2 = |V|, sandwich, psi chain on {n} cyclic charts, "
                       f"{len(bad)} failures", n, failures=bad[:10])


def check_two_row_lemma(size: str = "full") -> CheckResult:
    top = 2 if size == "full" else 1
    bad, n = [], 0
    for d, h in ((2, 2), (2, 3), (3, 2)):
        rows = list(itertools.combinations_with_replacement(range(top + 1), h))
        for combo in itertools.product(rows, repeat=d):
            mu = GCocharacter(combo)
            if gcd(int(mu.total()), h) != 1 or all(len(set(r)) == 1 for r in combo):
                continue
            n += 1
            rep = lemma7_checks(mu)
            if not rep.ok:
                bad.append((str(mu), rep.part, rep.count, rep.reference_count))
    return CheckResult("", not bad, f"both parts of the two-row lemma, {len(bad)} failures", n, failures=bad)


def check_conjecture_grid(size: str = "full") -> CheckResult:
    shapes = ((1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (3, 2), (2, 4), (3, 3))
    mus = grid(1, shapes, minuscule_only=True)
    mismatched = []
    for mu in mus:
        rep = conjecture_report(mu)
        if not all(rep.match_flags.values()):
            mismatched.append((str(mu), {k: v for k, v in rep.match_flags.items() if not v}))
    return CheckResult("", not mismatched, f"{len(mus) - len(mismatched)} of {len(mus)} minuscule mu match "
                       f"the conjectured counts", len(mus), report_only=True, failures=mismatched)


SUITES = {
    "metrics": [2, 3, 6, 7],
    "charts": [1, 4, 5, "general_dim", "cyclic"],
    "deformation": [8],
    "levi": [9],
    "components": [10, 11, "two_row", "conjecture"],
}
EXTRA = {
    "general_dim": ("closed formula through the general datum", check_general_dim),
    "cyclic": ("cyclic chart combinatorics", check_cyclic_combinatorics),
    "two_row": ("two-row component lemma", check_two_row_lemma),
    "conjecture": ("conjecture experiment over the minuscule grid", check_conjecture_grid),
}


def run_suite(name: str, size: str = "full") -> list:
    names = ["metrics", "charts", "deformation", "levi", "components"] if name == "all" else [name]
    out = []
    for s in names:
        for item in SUITES[s]:
            if isinstance(item, int):
                out.append(run_criterion(item, size))
            else:
                title, fn = EXTRA[item]
                out.append(_timed(title, lambda fn=fn: fn(size)))
    return out
