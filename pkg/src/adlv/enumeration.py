"""Exhaustive enumeration of the extended EL-charts with a given Hodge point.

A chart type fixes the EL-chart. The axioms on phi, the Hodge row and the set V
all split over Galois components, so the extensions of one chart are the
product of independent per-component solution sets. The per-component search
assigns ``A_low`` from the top down, which makes axiom (c) automatic once
``phi(a) < phi(a + h)`` is enforced and lets axiom (d) be checked on every
up-set as soon as it is complete.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod

from .charts import ELChart, ExtendedELChart, PhiComponent, chart_from_type, type_condition
from .coweights import (
    GCocharacter,
    SuperbasicDatum,
    dominance_leq,
    distinct_permutations,
    kappa_match,
)
from .errors import InternalDisagreement, InvalidInput, KappaMismatch, NotSuperbasic


def check_instance(mu: GCocharacter, datum: SuperbasicDatum):
    if (mu.d, mu.h) != (datum.d, datum.h):
        raise InvalidInput("mu and the datum have different shapes")
    if not mu.is_integral() or any(x < 0 for x in mu.flat()):
        raise InvalidInput("mu must be a non-negative integral cocharacter")
    if not mu.is_dominant():
        raise InvalidInput("mu must be dominant (rows weakly increasing)")
    if not kappa_match(mu, datum):
        raise KappaMismatch(f"sum of mu is {mu.total()}, but m = {datum.m}")
    if gcd(datum.m, datum.h) != 1:
        raise NotSuperbasic(f"gcd(m={datum.m}, h={datum.h}) != 1")
    if tuple(mu.row_sums()) != datum.slopes:
        raise InvalidInput("slopes must equal the row sums of mu (the normalization used for enumeration)")


@lru_cache(maxsize=None)
def candidate_rows(row: tuple) -> tuple:
    """All lambda with lambda_dom ⪯ row; entries are confined to [min row, max row]."""
    h, total = len(row), sum(row)
    lo, hi = min(row), max(row)
    doms = []

    def grow(prefix, s):
        k = len(prefix)
        if k == h:
            if s == total and dominance_leq(prefix, row):
                doms.append(tuple(prefix))
            return
        start = prefix[-1] if prefix else lo
        for x in range(start, hi + 1):
            if s + x * (h - k) > total:
                break
            grow(prefix + [x], s + x)

    grow([], 0)
    return tuple(sorted(p for dom in doms for p in distinct_permutations(dom)))


def candidate_types(mu: GCocharacter, datum: SuperbasicDatum) -> list:
    """Types mu' with mu'_dom ⪯ mu row by row that satisfy the Newton condition."""
    check_instance(mu, datum)
    rows = [candidate_rows(tuple(r)) for r in mu.rows]
    out = []
    for combo in itertools.product(*rows):
        t = GCocharacter(combo)
        if type_condition(t, datum.m):
            out.append(t)
    return out


def _solve(gens: tuple, fgens: tuple, h: int, target: tuple) -> tuple:
    """All phi tables on A_low for one component whose level counts match ``target``."""
    empty = PhiComponent(gens, fgens, h, [0] * _low_size(gens, h))
    low, thr, base = empty.low, empty.thr, empty.base
    nstar = max(base)
    if max(target) > nstar:
        return ()
    N = nstar + 1
    L = [sum(1 for x in target if x <= n) for n in range(N + 1)]
    F = [sum(1 for p in base if p <= n) for n in range(N + 1)]
    need = [L[n] - F[n] for n in range(N + 1)]
    if min(need) < 0 or sum(need) != len(low):
        return ()
    # forced suffix counts from y in (thr, thr + h]: chains whose base is >= y
    Fy = {}
    for y in range(thr, thr + h + 1):
        Fy[y] = [sum(1 for r, p in enumerate(base) if thr + r >= y and p <= n)
                 + sum(1 for r, p in enumerate(base) if thr + r < y and p + 1 <= n)
                 for n in range(N + 1)]
    E = low[::-1]
    k_max = len(E)
    phi = {}
    cnt = [0] * (N + 1)
    snaps = []
    out = []
    lo = gens[0]

    def suffix_above(y):
        """Counts over {c >= y} for y > current position, as (forced, assigned)."""
        if y >= thr:
            return Fy[min(y, thr + h)] if y <= thr + h else None, None
        j = bisect_left(low, y)  # low[j:] are the assigned elements >= y
        idx = len(low) - j - 1
        return F, (snaps[idx] if idx >= 0 else None)

    def d_ok(x_hi, x_lo):
        """Axiom (d) for every x in (x_lo, x_hi]; all of {c >= x} is assigned."""
        for x in range(x_hi, x_lo, -1):
            forced, assigned = suffix_above(x + h)
            for n in range(N):
                right = forced[n + 1] + (assigned[n + 1] if assigned else 0)
                if F[n] + cnt[n] > right:
                    return False
        return True

    def rec(k):
        if k == k_max:
            if d_ok(E[-1] if E else thr - 1, lo - h - 1):
                out.append(tuple(phi[v] for v in low))
            return
        a = E[k]
        up = phi[a + h] if a + h < thr else empty.phi0(a + h)
        hi = min(empty.phi0(a), up - 1)
        nxt = E[k + 1] if k + 1 < k_max else None
        for x in range(0, hi + 1):
            if cnt[x] >= need[x]:
                continue
            phi[a] = x
            cnt[x] += 1
            snaps.append(tuple(cnt))
            if nxt is None or d_ok(a, nxt):
                rec(k + 1)
            snaps.pop()
            cnt[x] -= 1
        phi.pop(a, None)

    rec(0)
    return tuple(sorted(out))


def _low_size(gens: tuple, h: int) -> int:
    res = {g % h: g for g in gens}
    thr = max(gens) - h + 1
    return sum(1 for v in range(min(gens), thr) if v >= res[v % h])


@lru_cache(maxsize=200000)
def _solve_normalized(gens: tuple, fgens: tuple, h: int, target: tuple) -> tuple:
    sols = _solve(gens, fgens, h, target)
    dims = tuple(PhiComponent(gens, fgens, h, t).v_dim() for t in sols)
    cyc = tuple(PhiComponent(gens, fgens, h, t).is_cyclic() for t in sols)
    return sols, dims, cyc


def component_key(chart: ELChart, tau: int) -> tuple:
    t = (tau + 1) % chart.d
    m = chart.datum.slopes[t]
    s = chart.gens[tau][0]
    return (tuple(g - s for g in chart.gens[tau]), tuple(g - m - s for g in chart.gens[t]))


@dataclass(frozen=True)
class ComponentSolutions:
    tau: int
    tables: tuple
    dims: tuple
    cyclic: tuple

    @property
    def max_dim(self):
        return max(self.dims) if self.dims else None

    def argmax(self) -> tuple:
        top = self.max_dim
        return tuple(i for i, v in enumerate(self.dims) if v == top)


def component_solutions(chart: ELChart, tau: int, target_row: tuple) -> ComponentSolutions:
    """Extensions of phi on component tau realizing Hodge row ``target_row`` (row tau+1)."""
    gens, fgens = component_key(chart, tau)
    sols, dims, cyc = _solve_normalized(gens, fgens, chart.h, tuple(target_row))
    return ComponentSolutions(tau, sols, dims, cyc)


@dataclass(frozen=True)
class TypeBlock:
    """All extensions of the chart of one type, kept in product form."""

    mu_prime: GCocharacter
    chart: ELChart
    parts: tuple  # ComponentSolutions per tau

    @property
    def count(self) -> int:
        return prod(len(p.tables) for p in self.parts)

    @property
    def max_dim(self):
        return sum(p.max_dim for p in self.parts) if self.count else None

    def top_count(self) -> int:
        return prod(len(p.argmax()) for p in self.parts)

    def extended(self, choice: tuple) -> ExtendedELChart:
        return ExtendedELChart(self.chart, tuple(p.tables[i] for p, i in zip(self.parts, choice)))

    def charts(self):
        for choice in itertools.product(*(range(len(p.tables)) for p in self.parts)):
            yield self.extended(choice), sum(p.dims[i] for p, i in zip(self.parts, choice))

    def top_charts(self):
        for choice in itertools.product(*(p.argmax() for p in self.parts)):
            yield self.extended(choice)


def phi_extensions(A: ELChart, mu: GCocharacter) -> list:
    d = A.d
    parts = [component_solutions(A, tau, tuple(mu.rows[(tau + 1) % d])) for tau in range(d)]
    blk = TypeBlock(None, A, tuple(parts))
    return [e for e, _ in blk.charts()]


@dataclass(frozen=True)
class EnumerationResult:
    mu: GCocharacter
    datum: SuperbasicDatum
    blocks: tuple  # non-empty TypeBlocks in lexicographic type order

    @property
    def chart_count(self) -> int:
        return sum(b.count for b in self.blocks)

    @property
    def max_dim(self):
        dims = [b.max_dim for b in self.blocks]
        return max(dims) if dims else None

    @property
    def top_count(self) -> int:
        top = self.max_dim
        return sum(b.top_count() for b in self.blocks if b.max_dim == top)

    def iter_charts(self):
        for b in self.blocks:
            yield from b.charts()

    @property
    def charts(self) -> list:
        return [e for e, _ in self.iter_charts()]

    @property
    def dims(self) -> list:
        return [v for _, v in self.iter_charts()]

    def top_charts(self) -> list:
        top = self.max_dim
        return [e for b in self.blocks if b.max_dim == top for e in b.top_charts()]

    def component_parts(self):
        """Distinct per-component solution sets across all types."""
        for b in self.blocks:
            for p in b.parts:
                yield b, p


def enumerate_charts(mu: GCocharacter, datum: SuperbasicDatum | None = None) -> EnumerationResult:
    if datum is None:
        datum = SuperbasicDatum.for_mu(mu)
    check_instance(mu, datum)
    d = datum.d
    blocks = []
    for t in candidate_types(mu, datum):
        A = chart_from_type(t, datum)
        parts = []
        for tau in range(d):
            p = component_solutions(A, tau, tuple(mu.rows[(tau + 1) % d]))
            if not p.tables:
                break
            parts.append(p)
        else:
            blocks.append(TypeBlock(t, A, tuple(parts)))
    res = EnumerationResult(mu, datum, tuple(blocks))
    if not blocks:
        raise InternalDisagreement(f"no extended EL-chart for {mu} although kappa matches")
    return res


def dimension(mu: GCocharacter, datum: SuperbasicDatum | None = None) -> int:
    return enumerate_charts(mu, datum).max_dim


def top_charts(mu: GCocharacter, datum: SuperbasicDatum | None = None) -> list:
    return enumerate_charts(mu, datum).top_charts()
