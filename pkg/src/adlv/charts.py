"""EL-charts, their types, and extended EL-charts (A, phi).

An EL-chart ``A`` is stored through its generators ``B = A \\ (A + h)``: per
Galois component exactly one generator in every residue class mod h. An
extended chart stores ``phi`` only on ``A_low``, the elements of ``A`` below
``threshold(tau) = max B_(tau) - h + 1``. From the threshold on every larger
integer lies in ``A``, so axiom (c) forces ``phi = phi0 = height(f(.))`` there.

Hodge rows: the level counts of phi on component tau describe row tau+1 of the
Hodge point. This is the indexing under which the cyclic chart of type mu' has
Hodge point mu'_dom row by row.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .coweights import (
    GCocharacter,
    IndexedInt,
    SuperbasicDatum,
    dominant_sort,
    orbit_sum,
    partial_sums,
)
from .errors import InternalDisagreement, InvalidInput


def f_step(a: IndexedInt, datum: SuperbasicDatum) -> IndexedInt:
    return datum.f(a)


@dataclass(frozen=True)
class ELChart:
    datum: SuperbasicDatum
    gens: tuple  # gens[tau] = sorted generator values of component tau
    _by_res: tuple = field(default=(), compare=False, repr=False, hash=False)

    def __post_init__(self):
        d, h = self.datum.d, self.datum.h
        gens = tuple(tuple(sorted(int(v) for v in g)) for g in self.gens)
        if len(gens) != d:
            raise InvalidInput(f"need generators for {d} components")
        by_res = []
        for tau, g in enumerate(gens):
            res = {v % h: v for v in g}
            if len(g) != h or len(res) != h:
                raise InvalidInput(f"component {tau}: generators must hit every residue mod {h} once")
            by_res.append(tuple(res[r] for r in range(h)))
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "_by_res", tuple(by_res))
        for tau, g in enumerate(gens):
            for v in g:
                fb = self.datum.f(IndexedInt(tau, v))
                if not self.contains(fb):
                    raise InvalidInput(f"not stable under f: f({v}_({tau})) = {fb} lies outside A")

    @classmethod
    def from_B(cls, datum: SuperbasicDatum, B: Iterable[IndexedInt]) -> "ELChart":
        comps = [[] for _ in range(datum.d)]
        for b in B:
            if not 0 <= b.tau < datum.d:
                raise InvalidInput(f"component index {b.tau} out of range")
            comps[b.tau].append(b.value)
        return cls(datum, tuple(tuple(c) for c in comps))

    @property
    def d(self) -> int:
        return self.datum.d

    @property
    def h(self) -> int:
        return self.datum.h

    @property
    def B(self) -> frozenset:
        return frozenset(IndexedInt(t, v) for t, g in enumerate(self.gens) for v in g)

    def gen(self, tau: int, value: int) -> int:
        """The generator of component tau congruent to ``value`` mod h."""
        return self._by_res[tau % self.d][value % self.h]

    def contains(self, a: IndexedInt) -> bool:
        return a.value >= self.gen(a.tau, a.value)

    def has(self, tau: int, value: int) -> bool:
        return value >= self._by_res[tau][value % self.h]

    def height(self, a: IndexedInt) -> int:
        g = self.gen(a.tau, a.value)
        if a.value < g:
            raise InvalidInput(f"{a} is not in A")
        return (a.value - g) // self.h

    def hgt(self, tau: int, value: int) -> int:
        return (value - self._by_res[tau][value % self.h]) // self.h

    def phi0(self, tau: int, value: int) -> int:
        """``height(f(a))`` for ``a = value_(tau)`` in A."""
        t = (tau + 1) % self.d
        return self.hgt(t, value + self.datum.slopes[t])

    def min_value(self, tau: int) -> int:
        return self.gens[tau][0]

    def threshold(self, tau: int) -> int:
        return self.gens[tau][-1] - self.h + 1

    def a_low(self, tau: int) -> tuple:
        thr = self.threshold(tau)
        return tuple(v for v in range(self.min_value(tau), thr) if self.has(tau, v))

    def is_normalized(self) -> bool:
        return sum(self.gens[0]) == self.h * (self.h - 1) // 2

    def shifted(self, n: int) -> "ELChart":
        return ELChart(self.datum, tuple(tuple(v + n for v in g) for g in self.gens))

    def __str__(self):
        return " | ".join("{" + ",".join(map(str, g)) + "}" for g in self.gens)


def contains(A: ELChart, a: IndexedInt) -> bool:
    return A.contains(a)


def height(A: ELChart, a: IndexedInt) -> int:
    return A.height(a)


def normalize(datum: SuperbasicDatum, B: Iterable[IndexedInt]) -> tuple:
    """Return ``(A + n, n)`` for the unique n making ``A`` normalized."""
    A = ELChart.from_B(datum, B)
    h = datum.h
    num = h * (h - 1) // 2 - sum(A.gens[0])
    if num % h:
        raise InternalDisagreement("normalizing shift is not integral")
    n = num // h
    return A.shifted(n), n


@dataclass(frozen=True)
class TypeVector:
    mu_prime: GCocharacter
    b: tuple  # b_0, ..., b_{dh-1} as IndexedInt
    flat: tuple  # flat[j-1] = mu'_j for j = 1..dh

    def b_at(self, tau: int, i: int) -> IndexedInt:
        """``b_{tau,i} = b_{tau+(i-1)d}`` with 1-based i."""
        d = self.mu_prime.d
        return self.b[tau + (i - 1) * d]

    def suc(self, a: IndexedInt) -> IndexedInt:
        k = self.b.index(a)
        return self.b[(k + 1) % len(self.b)]


def _flat_to_grid(j: int, d: int) -> tuple:
    """Flat type index j in 1..dh to (tau, i) with 1-based i."""
    tau = j % d
    return (tau, (j - tau) // d + 1) if tau else (0, j // d)


def type_of(A: ELChart) -> TypeVector:
    d, h = A.d, A.h
    b = [IndexedInt(0, A.gens[0][0])]
    flat = []
    for _ in range(d * h):
        fb = A.datum.f(b[-1])
        nxt = IndexedInt(fb.tau, A.gen(fb.tau, fb.value))
        flat.append((fb.value - nxt.value) // h)
        b.append(nxt)
    if b[-1] != b[0] or len(set(b[:-1])) != d * h:
        raise InternalDisagreement("successor cycle does not close up")
    rows = [[0] * h for _ in range(d)]
    for j in range(1, d * h + 1):
        tau, i = _flat_to_grid(j, d)
        rows[tau][i - 1] = flat[j - 1]
    return TypeVector(GCocharacter(tuple(tuple(r) for r in rows)), tuple(b[:-1]), tuple(flat))


def type_condition(mu_prime: GCocharacter, m: int) -> bool:
    """Partial sums of the orbit sum bounded by ``k*m/h``, with equality at h."""
    h = mu_prime.h
    ps = partial_sums(orbit_sum(mu_prime))
    return ps[-1] == m and all(p <= Fraction(k * m, h) for k, p in enumerate(ps[:-1], 1))


def chart_from_type(mu_prime: GCocharacter, datum: SuperbasicDatum) -> ELChart:
    d, h = datum.d, datum.h
    if (mu_prime.d, mu_prime.h) != (d, h):
        raise InvalidInput("type has the wrong shape")
    if any(x < 0 for x in mu_prime.flat()):
        raise InvalidInput("type entries must be non-negative (f-stability)")
    if not type_condition(mu_prime, datum.m):
        raise InvalidInput("type violates the partial sum condition against the Newton point")
    b = IndexedInt(0, 0)
    B = [b]
    for j in range(1, d * h):
        tau, i = _flat_to_grid(j, d)
        fb = datum.f(b)
        b = IndexedInt(fb.tau, fb.value - mu_prime.rows[tau][i - 1] * h)
        B.append(b)
    A, _ = normalize(datum, B)
    if type_of(A).mu_prime != mu_prime:
        raise InternalDisagreement("type round trip failed")
    return A


class PhiComponent:
    """phi restricted to one Galois component.

    Only raw data enters: the generators of this component, the generators of
    the next component shifted by ``-m_{tau+1}`` (so that
    ``phi0(v) = height of v in the shifted next component``), h, and the table
    on ``A_low``. Translating both generator sets by the same integer changes
    nothing, which the enumeration uses for caching.
    """

    __slots__ = ("gens", "fgens", "tau", "h", "low", "vals", "thr", "lo", "base", "_res", "_fres")

    def __init__(self, gens, fgens, h: int, values: Iterable[int], tau: int = 0):
        self.gens = tuple(sorted(gens))
        self.fgens = tuple(sorted(fgens))
        self.h = h
        self.tau = tau
        self._res = {g % h: g for g in self.gens}
        self._fres = {g % h: g for g in self.fgens}
        self.thr = self.gens[-1] - h + 1
        self.lo = self.gens[0]
        self.low = tuple(v for v in range(self.lo, self.thr) if v >= self._res[v % h])
        values = tuple(values)
        if len(values) != len(self.low):
            raise InvalidInput(f"component {tau}: phi table has {len(values)} entries, A_low has {len(self.low)}")
        self.vals = dict(zip(self.low, values))
        self.base = tuple(self.phi0(self.thr + r) for r in range(h))

    @classmethod
    def of_chart(cls, chart: ELChart, tau: int, values: Iterable[int]) -> "PhiComponent":
        t = (tau + 1) % chart.d
        m = chart.datum.slopes[t]
        return cls(chart.gens[tau], [g - m for g in chart.gens[t]], chart.h, values, tau)

    def member(self, v: int) -> bool:
        return v >= self._res[v % self.h]

    def phi(self, v: int):
        """phi(v) or None for elements outside A."""
        if v >= self.thr:
            return (v - self._fres[v % self.h]) // self.h
        return self.vals.get(v)

    def phi0(self, v: int) -> int:
        return (v - self._fres[v % self.h]) // self.h

    @property
    def p_min(self) -> int:
        return min(self.base)

    @property
    def n_star(self) -> int:
        return max(self.base)

    def top_level(self) -> int:
        return max([self.n_star] + list(self.vals.values())) + 1

    def level_counts(self, upto: int) -> list:
        counts = [0] * (upto + 1)
        for x in self.vals.values():
            if x <= upto:
                counts[x] += 1
        for p in self.base:
            for n in range(max(p, 0), upto + 1):
                counts[n] += 1
        return counts

    def hodge_row(self) -> tuple:
        N = self.top_level()
        L = self.level_counts(N)
        if L[N] != self.h:
            raise InternalDisagreement("level counts do not stabilize at h")
        row = []
        prev = 0
        for n, c in enumerate(L):
            if c < prev:
                raise InvalidInput(f"component {self.tau}: level counts decrease at {n}")
            row.extend([n] * (c - prev))
            prev = c
        return tuple(row)

    def is_cyclic(self) -> bool:
        return all(x == self.phi0(v) for v, x in self.vals.items())

    def v_pairs(self) -> list:
        """Pairs (a, c) of values with a < c and phi(a) > phi(c) > phi(a - h)."""
        h, thr, pm = self.h, self.thr, self.p_min
        out = []
        for a in range(self.lo, thr + h):
            pa = self.phi(a)
            if pa is None:
                continue
            below = self.phi(a - h)
            if below is None:
                below = -1
            elif pa - below < 2:
                continue
            for c in range(a + 1, thr + h * max(pa - pm, 1)):
                pc = self.phi(c)
                if pc is not None and below < pc < pa:
                    out.append((a, c))
        return out

    def v_dim(self) -> int:
        return len(self.v_pairs())

    def safe_margin(self) -> int:
        """Margin above ``thr + h`` beyond which no pair of V can live."""
        window = [x for x in (self.phi(v) for v in range(self.lo, self.thr + self.h)) if x is not None]
        return self.h * max(max(window) - self.p_min + 1, 0)

    def violations(self) -> list:
        out = []
        h, thr, lo, tau = self.h, self.thr, self.lo, self.tau
        for v, x in self.vals.items():
            if x < 0:
                out.append(f"(a) phi({v}_({tau})) = {x} is negative")
            if x > self.phi0(v):
                out.append(f"(c) phi({v}_({tau})) = {x} exceeds height f(a) = {self.phi0(v)}")
        for v in range(lo, thr):
            x = self.phi(v)
            if x is None:
                continue
            y = self.phi(v + h)
            if y < x + 1:
                out.append(f"(b) phi({v + h}_({tau})) = {y} < phi({v}_({tau})) + 1")
        if out:
            return out
        N = self.top_level()
        top = thr + h * (N + 2 - self.p_min)
        counts = [0] * (N + 2)
        snap = {}
        for c in range(top - 1, lo - h - 1, -1):
            x = self.phi(c)
            if x is not None and x <= N + 1:
                counts[x] += 1
            snap[c] = tuple(counts)
        for x in range(lo - h, thr + h + 1):
            s, t = snap[x], snap[x + h]
            for n in range(N + 1):
                if s[n] > t[n + 1]:
                    out.append(f"(d) at a = {x}_({tau}), n = {n}: {s[n]} > {t[n + 1]}")
        return out

    def adapted_family(self) -> list:
        """Greedy decomposition of A_(tau) into h phi-chains, truncated at the cyclic region."""
        h, thr = self.h, self.thr
        N = self.top_level()
        top = thr + h * (N + 2 - self.p_min)
        by_level = {}
        for c in range(self.lo, top):
            x = self.phi(c)
            if x is not None and x <= N:
                by_level.setdefault(x, []).append(c)
        seqs = []
        for n in range(N + 1):
            avail = sorted(by_level.get(n, []))
            taken = set()
            free = []
            for s in seqs:
                last = s[-1]
                if self.phi(last) != n - 1:
                    continue
                if self.phi(last + h) == n:
                    s.append(last + h)
                    taken.add(last + h)
                else:
                    free.append(s)
            rest = [c for c in avail if c not in taken]
            for s in sorted(free, key=lambda s: -s[-1]):
                cands = [c for c in rest if c > s[-1] + h]
                if not cands:
                    raise InvalidInput(f"component {self.tau}: no adapted continuation at level {n} (axiom (d) fails)")
                s.append(cands[0])
                rest.remove(cands[0])
            seqs.extend([c] for c in rest)
        if len(seqs) != h:
            raise InternalDisagreement(f"adapted family has {len(seqs)} chains, expected {h}")
        return sorted(seqs)


@dataclass(frozen=True)
class ExtendedELChart:
    chart: ELChart
    tables: tuple  # tables[tau] = phi values on chart.a_low(tau), ascending

    def __post_init__(self):
        tables = tuple(tuple(int(x) for x in t) for t in self.tables)
        if len(tables) != self.chart.d:
            raise InvalidInput("need one phi table per component")
        for tau, t in enumerate(tables):
            if len(t) != len(self.chart.a_low(tau)):
                raise InvalidInput(f"component {tau}: phi table does not cover A_low")
        object.__setattr__(self, "tables", tables)

    @classmethod
    def from_mapping(cls, chart: ELChart, phi_low: Mapping) -> "ExtendedELChart":
        tables = []
        for tau in range(chart.d):
            low = chart.a_low(tau)
            missing = [v for v in low if IndexedInt(tau, v) not in phi_low]
            if missing:
                raise InvalidInput(f"phi missing on {missing[0]}_({tau})")
            tables.append(tuple(phi_low[IndexedInt(tau, v)] for v in low))
        extra = [a for a in phi_low if a.tau >= chart.d or a.value not in chart.a_low(a.tau)]
        if extra:
            raise InvalidInput(f"phi given outside A_low at {extra[0]}")
        return cls(chart, tuple(tables))

    @property
    def phi_low(self) -> dict:
        return {IndexedInt(t, v): x for t in range(self.chart.d)
                for v, x in zip(self.chart.a_low(t), self.tables[t])}

    def component(self, tau: int) -> PhiComponent:
        return PhiComponent.of_chart(self.chart, tau, self.tables[tau])

    def components(self) -> list:
        return [self.component(t) for t in range(self.chart.d)]

    def phi(self, a: IndexedInt):
        return self.component(a.tau).phi(a.value)

    def sort_key(self):
        return (self.chart.gens, self.tables)


def cyclic_phi(A: ELChart) -> ExtendedELChart:
    return ExtendedELChart(A, tuple(tuple(A.phi0(t, v) for v in A.a_low(t)) for t in range(A.d)))


def validate(ext: ExtendedELChart) -> list:
    out = [] if ext.chart.is_normalized() else ["chart is not normalized"]
    for comp in ext.components():
        out.extend(comp.violations())
    return out


def hodge_point(ext: ExtendedELChart) -> GCocharacter:
    d = ext.chart.d
    rows = [None] * d
    for comp in ext.components():
        rows[(comp.tau + 1) % d] = comp.hodge_row()
    return GCocharacter(tuple(rows))


def is_cyclic(ext: ExtendedELChart) -> bool:
    return all(c.is_cyclic() for c in ext.components())


def v_set(ext: ExtendedELChart) -> set:
    return {(IndexedInt(c.tau, a), IndexedInt(c.tau, b)) for c in ext.components() for a, b in c.v_pairs()}


def v_dim(ext: ExtendedELChart) -> int:
    return sum(c.v_dim() for c in ext.components())


def safe_margin(ext: ExtendedELChart) -> int:
    return max(c.safe_margin() for c in ext.components())


def v_set_bruteforce(ext: ExtendedELChart, window_margin: int) -> set:
    """Double loop over ``[min A, threshold + h + margin)`` on every component."""
    need = safe_margin(ext)
    if window_margin < need:
        raise InvalidInput(f"window margin {window_margin} below the safe bound {need}")
    A = ext.chart
    out = set()
    for tau in range(A.d):
        top = A.threshold(tau) + A.h + window_margin
        elems = [IndexedInt(tau, v) for v in range(A.min_value(tau), top) if A.has(tau, v)]
        for a in elems:
            pa = ext.phi(a)
            prev = ext.phi(a - A.h)
            for c in elems:
                if a.lt(c):
                    pc = ext.phi(c)
                    if pa > pc and (prev is None or pc > prev):
                        out.add((a, c))
    return out


def adapted_family(ext: ExtendedELChart) -> list:
    """Per component, h chains; chain elements are values in that component."""
    return [c.adapted_family() for c in ext.components()]


def type_dominant(A: ELChart) -> GCocharacter:
    return dominant_sort(type_of(A).mu_prime)
