"""Combinatorics of cyclic charts and top-dimensional components.

For a cyclic chart of type mu' the generators of each component are sorted,
carrying along the type entry used to reach their successor. This gives
``tilde_mu``, the splitting ``|V| = S1 + S2`` and the chain ``psi^1, ..., psi^h``
that bounds S2 by lattice points.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from .charts import ExtendedELChart, chart_from_type, cyclic_phi, is_cyclic, type_condition, type_of, v_dim
from .coweights import (
    GCocharacter,
    SuperbasicDatum,
    distinct_permutations,
    dominance_leq,
    is_minuscule,
    newton_point,
    orbit_sum,
    partial_sums,
)
from .enumeration import enumerate_charts
from .errors import InvalidInput
from .polygons import pairing_g


def _require_cyclic(ext: ExtendedELChart):
    if not is_cyclic(ext):
        raise InvalidInput("this construction is only defined for cyclic charts")


def _sorted_pairs(ext: ExtendedELChart) -> list:
    """Per tau: [(b, mu'_{tau+1}, suc(b))] sorted by b, all as plain integers."""
    tv = type_of(ext.chart)
    d, h = ext.chart.d, ext.chart.h
    out = []
    for tau in range(d):
        pairs = []
        for i in range(h):
            k = tau + i * d
            b = tv.b[k]
            pairs.append((b.value, tv.flat[k], tv.b[(k + 1) % (d * h)].value))
        out.append(sorted(pairs))
    return out


def tilde_mu(ext: ExtendedELChart) -> GCocharacter:
    """Row tau+1 lists the type entries leaving the generators of component tau, by increasing generator."""
    _require_cyclic(ext)
    d = ext.chart.d
    rows = [None] * d
    for tau, pairs in enumerate(_sorted_pairs(ext)):
        rows[(tau + 1) % d] = tuple(p[1] for p in pairs)
    return GCocharacter(tuple(rows))


def sandwich_ok(ext: ExtendedELChart, mu: GCocharacter) -> bool:
    """``d nu ⪯ orbit_sum(tilde_mu) ⪯ orbit_sum(mu)``."""
    datum = ext.chart.datum
    t = orbit_sum(tilde_mu(ext))
    dnu = [datum.d * x for x in newton_point(datum)]
    return dominance_leq(dnu, t) and dominance_leq(t, orbit_sum(mu))


@dataclass(frozen=True)
class S1S2:
    s1: int
    s2: int

    @property
    def total(self) -> int:
        return self.s1 + self.s2


def s1_s2_decomposition(ext: ExtendedELChart) -> S1S2:
    _require_cyclic(ext)
    h = ext.chart.h
    tm = tilde_mu(ext)
    s1 = sum(max(r[i] - r[j], 0) for r in tm.rows for i in range(h) for j in range(i + 1, h))
    s2 = 0
    for pairs in _sorted_pairs(ext):
        suc = [p[2] for p in pairs]
        s2 += sum(max(floor(Fraction(suc[j] - suc[i], h)), 0) for i in range(h) for j in range(i))
    return S1S2(s1, s2)


def _count_between(lower, upper) -> int:
    """Integer points with ``P(lower)(x) < y <= P(upper)(x)`` for 1 <= x <= h-1."""
    lo, hi = partial_sums(lower), partial_sums(upper)
    return sum(max(floor(b) - floor(a), 0) for a, b in zip(lo[:-1], hi[:-1]))


@dataclass
class PsiChain:
    psi_hat: list  # h relative vectors
    orientation: str  # "tilde_mu->nu" or "nu->tilde_mu"
    monotone: bool
    step_points: list  # lattice points gained at steps 2..h
    step_bounds: list
    bounds_ok: bool
    total_points: int
    s2: int

    @property
    def ok(self) -> bool:
        return self.monotone and self.bounds_ok and self.total_points >= self.s2 and self.orientation != "unknown"


def psi_chain(ext: ExtendedELChart) -> PsiChain:
    _require_cyclic(ext)
    datum = ext.chart.datum
    d, h = datum.d, datum.h
    sp = _sorted_pairs(ext)
    chain = []
    for i in range(1, h + 1):
        total = [Fraction(0)] * h
        for tau, pairs in enumerate(sp):
            suc = [p[2] for p in pairs]
            suc_i = sorted(suc[:i]) + suc[i:]
            m_next = datum.slopes[(tau + 1) % d]
            for j, (b, _, _) in enumerate(pairs):
                total[j] += Fraction(m_next, h) - Fraction(suc_i[j] - b, h)
        chain.append(tuple(total))
    t = orbit_sum(tilde_mu(ext))
    dnu = tuple(d * x for x in newton_point(datum))
    if chain[0] == t and chain[-1] == dnu:
        orientation = "tilde_mu->nu"
    elif chain[0] == dnu and chain[-1] == t:
        orientation = "nu->tilde_mu"
    else:
        orientation = "unknown"
    monotone = all(dominance_leq(chain[i], chain[i - 1]) for i in range(1, h))
    points, bounds = [], []
    for i in range(1, h):
        points.append(_count_between(chain[i - 1], chain[i]))
        b = 0
        for pairs in sp:
            suc = [p[2] for p in pairs]
            b += sum(max(floor(Fraction(suc[j] - suc[i], h)), 0) for j in range(i))
        bounds.append(b)
    return PsiChain(
        psi_hat=chain, orientation=orientation, monotone=monotone, step_points=points,
        step_bounds=bounds, bounds_ok=all(p >= b for p, b in zip(points, bounds)),
        total_points=sum(points), s2=s1_s2_decomposition(ext).s2,
    )


def component_count(mu: GCocharacter, datum: SuperbasicDatum | None = None) -> int:
    return enumerate_charts(mu, datum).top_count


def _constant(row) -> bool:
    return len(set(row)) == 1


@dataclass
class ComponentLemmaReport:
    part: int
    count: int
    witnesses: list = field(default_factory=list)  # (type, v_dim, rule) of top cyclic charts
    reference_count: int | None = None
    ok: bool = False


def _rotate(row, k: int) -> tuple:
    """k = 1 moves the last entry to the front, k = -1 the first entry to the back."""
    row = tuple(row)
    return row[-1:] + row[:-1] if k == 1 else row[1:] + row[:1]


# (rule name, rotate rows below tau2?, direction); the first one is the literal rule
WITNESS_RULES = (
    ("rows below tau2, last to front", True, 1),
    ("rows below tau2, first to back", True, -1),
    ("rows from tau2 on, last to front", False, 1),
    ("rows from tau2 on, first to back", False, -1),
)


def _second_witness(mu: GCocharacter, datum: SuperbasicDatum, t2: int, top: int):
    """First rotated type, in rule order, whose cyclic chart is top-dimensional and differs from mu."""
    for name, below, k in WITNESS_RULES:
        rows = tuple(_rotate(r, k) if (t < t2) == below else tuple(r) for t, r in enumerate(mu.rows))
        typ = GCocharacter(rows)
        if typ == mu or not type_condition(typ, datum.m):
            continue
        dim = v_dim(cyclic_phi(chart_from_type(typ, datum)))
        if dim == top:
            return (typ, dim, name)
    return None


def lemma7_checks(mu: GCocharacter, datum: SuperbasicDatum | None = None) -> ComponentLemmaReport:
    if datum is None:
        datum = SuperbasicDatum.for_mu(mu)
    moving = [t for t, r in enumerate(mu.rows) if not _constant(r)]
    res = enumerate_charts(mu, datum)
    top = res.max_dim
    if len(moving) >= 2:
        witnesses = [(mu, v_dim(cyclic_phi(chart_from_type(mu, datum))), "type mu")]
        second = _second_witness(mu, datum, moving[1], top)
        if second is not None:
            witnesses.append(second)
        ok = res.top_count >= 2 and len(witnesses) == 2 and witnesses[0][1] == top
        return ComponentLemmaReport(1, res.top_count, witnesses, None, ok)
    if len(moving) == 1:
        row = GCocharacter((mu.rows[moving[0]],))
        ref = component_count(row)
        return ComponentLemmaReport(2, res.top_count, [], ref, ref == res.top_count)
    raise InvalidInput("every row of mu is constant; neither part of the lemma applies")


def floor_ceil_vector(m: int, h: int) -> tuple:
    q, r = divmod(m, h)
    return (q,) * (h - r) + (q + 1,) * r


@dataclass
class ConjectureReport:
    mu: GCocharacter
    datum: SuperbasicDatum
    chart_count: int
    orbit_count: int
    top_count: int
    predicted_top: int
    predicted_top_sorted: int
    image: Counter
    match_flags: dict

    def as_dict(self) -> dict:
        return {
            "mu": [list(r) for r in self.mu.rows],
            "slopes": list(self.datum.slopes),
            "chart_count": self.chart_count,
            "orbit_count": self.orbit_count,
            "top_count": self.top_count,
            "predicted_top": self.predicted_top,
            "predicted_top_sorted": self.predicted_top_sorted,
            "match_flags": dict(self.match_flags),
        }


def conjecture_report(mu: GCocharacter, datum: SuperbasicDatum | None = None) -> ConjectureReport:
    if not is_minuscule(mu):
        raise InvalidInput("the conjecture concerns minuscule mu only")
    if datum is None:
        datum = SuperbasicDatum.for_mu(mu)
    res = enumerate_charts(mu, datum)
    d, h, m = datum.d, datum.h, datum.m
    dnu = [d * x for x in newton_point(datum)]
    orbit = [GCocharacter(c) for c in itertools.product(*(distinct_permutations(r) for r in mu.rows))]
    admissible = {w for w in orbit if dominance_leq(dnu, orbit_sum(w))}
    predicted = sum(1 for w in admissible if pairing_g(newton_point(datum), w, d) == 0)
    fc = floor_ceil_vector(m, h)
    predicted_sorted = sum(1 for w in orbit if orbit_sum(w) == fc)
    image = Counter()
    all_cyclic = True
    for ext, _ in res.iter_charts():
        if not is_cyclic(ext):
            all_cyclic = False
            continue
        image[tilde_mu(ext)] += 1
    flags = {
        "all_cyclic": all_cyclic,
        "injective": all(v == 1 for v in image.values()),
        "image_admissible": set(image) <= admissible,
        "surjective": admissible <= set(image),
        "top_matches_prediction": res.top_count == predicted,
        "top_matches_sorted_prediction": res.top_count == predicted_sorted,
    }
    flags["bijective"] = flags["injective"] and flags["surjective"] and flags["image_admissible"]
    return ConjectureReport(mu, datum, res.chart_count, len(admissible), res.top_count,
                            predicted, predicted_sorted, image, flags)
