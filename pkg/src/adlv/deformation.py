"""The canonical deformation from the cyclic phi0 to phi, and its step bookkeeping.

Everything happens one Galois component at a time: ``phi_i`` on component
tau only depends on ``i_tau``, and a unit step in direction sigma changes
nothing outside component sigma.

Closed form used here (x-list decreasing, 1-based ``i``)::

    phi_i(a) = phi0(a)                 if i = 0
             = phi(a)                  if a >= x_i
             = phi(a + k h) - k        otherwise, k minimal with a + k h >= x_i
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .charts import ExtendedELChart, PhiComponent, hodge_point, type_of
from .coweights import GCocharacter, dominance_leq, dominant_sort
from .errors import InternalDisagreement, InvalidInput
from .polygons import pairing


def _window_top(comp: PhiComponent, level: int) -> int:
    """Every c >= the returned value has phi(c) > level."""
    return comp.thr + comp.h * max(level - comp.p_min + 2, 1)


class ComponentFrame:
    """Deformation data of one component: jumps of phi in decreasing order."""

    def __init__(self, comp: PhiComponent):
        self.comp = comp
        h = comp.h
        self.x = tuple(sorted((a for a in comp.low if comp.phi(a + h) > comp.phi(a) + 1), reverse=True))

    @property
    def n(self) -> int:
        return len(self.x)

    def table(self, i: int) -> tuple:
        if not 0 <= i <= self.n:
            raise InvalidInput(f"deformation index {i} outside [0, {self.n}]")
        c, h = self.comp, self.comp.h
        if i == 0:
            return tuple(c.phi0(a) for a in c.low)
        xi = self.x[i - 1]
        out = []
        for a in c.low:
            if a >= xi:
                out.append(c.phi(a))
            else:
                k = -(-(xi - a) // h)
                out.append(c.phi(a + k * h) - k)
        return tuple(out)

    def at(self, i: int) -> PhiComponent:
        c = self.comp
        return PhiComponent(c.gens, c.fgens, c.h, self.table(i), c.tau)

    def alpha(self, i: int) -> int:
        """Jump excess at the element handled by the step i -> i+1."""
        x = self.x[i]
        return self.comp.phi(x + self.comp.h) - self.comp.phi(x) - 1

    def unit_step_table(self, i: int, current: tuple) -> tuple:
        """Apply the recursive step i -> i+1 to a table for phi_i."""
        c, h = self.comp, self.comp.h
        x = self.x[i]
        a = self.alpha(i)
        n = (x - c._res[x % h]) // h
        hit = {x - j * h for j in range(n + 1)}
        return tuple(v - a if e in hit else v for e, v in zip(c.low, current))

    def step(self, i: int, diagnostics: bool = True) -> "StepRecord":
        if not 0 <= i < self.n:
            raise InvalidInput(f"no unit step from {i} (n = {self.n})")
        return _step(self, i, diagnostics)


@dataclass
class StepRecord:
    tau: int
    i: int
    x: int
    alpha: int
    n: int
    delta: int
    d1: frozenset
    d2: frozenset
    d3: frozenset
    v_diff: int
    hodge_before: tuple
    hodge_after: tuple
    pairing_of_hodges: int
    path_independent: bool
    added_ok: bool
    removed_ok: bool
    extra: dict = field(default_factory=dict)

    @property
    def counts_ok(self) -> bool:
        return self.v_diff == len(self.d1) + len(self.d3) - len(self.d2)

    @property
    def bound_ok(self) -> bool:
        return self.v_diff <= self.delta

    @property
    def hodge_increase_ok(self) -> bool:
        if self.alpha <= 0:
            return True
        return dominance_leq(self.hodge_before, self.hodge_after) and self.hodge_before != self.hodge_after

    @property
    def ok(self) -> bool:
        return (self.counts_ok and self.bound_ok and self.hodge_increase_ok and self.path_independent
                and self.added_ok and self.removed_ok)


def _step(frame: ComponentFrame, i: int, diagnostics: bool) -> StepRecord:
    c0 = frame.comp
    h = c0.h
    x = frame.x[i]
    alpha = frame.alpha(i)
    n = (x - c0._res[x % h]) // h
    t_i = frame.table(i)
    t_ip = frame.table(i + 1)
    stepped = frame.unit_step_table(i, t_i)
    P = PhiComponent(c0.gens, c0.fgens, h, t_i, c0.tau)
    Q = PhiComponent(c0.gens, c0.fgens, h, t_ip, c0.tau)
    mu_i, mu_ip = P.hodge_row(), Q.hodge_row()
    px = P.phi(x)
    delta = sum(mu_i.count(px - k - l) for k in range(alpha) for l in range(n + 1)) - min(alpha, n + 1)

    V_i, V_ip = set(P.v_pairs()), set(Q.v_pairs())
    top = _window_top(P, max(px, Q.phi(x + h)) + 1)
    A = [v for v in range(P.lo, top) if P.member(v)]
    gens = set(P.gens)

    a1 = x + h
    d1 = frozenset((a1, c) for c in A if c > a1 and Q.phi(a1) > Q.phi(c) > Q.phi(x))
    a2 = x - n * h
    d2 = frozenset((a2, c) for c in A if c > a2 and P.phi(a2) > P.phi(c) and Q.phi(a2) <= Q.phi(c))
    d3 = frozenset((b, x - dl * h) for dl in range(n + 1) for b in gens
                   if b != a2 and b < x - dl * h
                   and Q.phi(b) > Q.phi(x - dl * h) and P.phi(b) <= P.phi(x - dl * h))

    rec = StepRecord(
        tau=c0.tau, i=i, x=x, alpha=alpha, n=n, delta=delta, d1=d1, d2=d2, d3=d3,
        v_diff=len(V_ip) - len(V_i), hodge_before=mu_i, hodge_after=mu_ip,
        pairing_of_hodges=pairing(mu_i, mu_ip), path_independent=(stepped == t_ip),
        added_ok=(V_ip - V_i == set(d1 | d3)), removed_ok=(V_i - V_ip == set(d2)),
    )
    if diagnostics:
        lo1, hi1 = px - alpha + 1, px
        lo2, hi2 = px - alpha - n, px - n - 1
        s1 = sum(1 for a in A if a > x + h and lo1 <= P.phi(a) <= hi1)
        s2 = sum(1 for a in A if a > x - n * h and lo2 <= P.phi(a) <= hi2)
        s3 = sum(1 for b in gens for dl in range(n + 1)
                 if b != a2 and b < x - dl * h and px - dl - alpha + 1 <= P.phi(b) <= px - dl)
        C1 = {a for a in A if a <= x + h and lo1 <= P.phi(a) <= hi1}
        C2 = {a for a in A if a <= x - n * h and lo2 <= P.phi(a) <= hi2}
        C3 = C1 - {a + (n + 1) * h for a in C2}
        rec.extra = {
            "S1": s1, "S2": s2, "S3": s3, "C3": len(C3),
            "C2_shift_inside_C1": all(a + (n + 1) * h in C1 for a in C2),
            "C3_bound": len(C3) >= s3 + min(alpha, n + 1),
            "S_identity": rec.v_diff == s1 - s2 + s3,
        }
    return rec


@dataclass
class DeformationFrame:
    base: ExtendedELChart
    parts: tuple  # ComponentFrame per tau

    @property
    def x_lists(self) -> tuple:
        return tuple(p.x for p in self.parts)

    @property
    def n_vec(self) -> tuple:
        return tuple(p.n for p in self.parts)


def deformation_frame(ext: ExtendedELChart) -> DeformationFrame:
    return DeformationFrame(ext, tuple(ComponentFrame(c) for c in ext.components()))


def phi_index(frame: DeformationFrame, i_vec) -> ExtendedELChart:
    i_vec = tuple(i_vec)
    if len(i_vec) != len(frame.parts):
        raise InvalidInput("deformation index has the wrong length")
    return ExtendedELChart(frame.base.chart, tuple(p.table(i) for p, i in zip(frame.parts, i_vec)))


def step_delta(frame: DeformationFrame, i_vec, sigma: int, diagnostics: bool = True) -> StepRecord:
    i_vec = tuple(i_vec)
    if not all(0 <= i <= n for i, n in zip(i_vec, frame.n_vec)):
        raise InvalidInput("deformation index outside the box")
    return frame.parts[sigma].step(i_vec[sigma], diagnostics)


def canonical_path(n_vec) -> list:
    """Index vectors from 0 to n, raising component 0 first, then 1, and so on."""
    cur = [0] * len(n_vec)
    path = [tuple(cur)]
    for s, n in enumerate(n_vec):
        for _ in range(n):
            cur[s] += 1
            path.append(tuple(cur))
    return path


@dataclass
class HodgeChainReport:
    hodges: list
    steps: list
    start_ok: bool
    end_ok: bool

    @property
    def ok(self) -> bool:
        return self.start_ok and self.end_ok and all(s.hodge_increase_ok for s in self.steps)


def hodge_chain_check(frame: DeformationFrame) -> HodgeChainReport:
    path = canonical_path(frame.n_vec)
    hodges = [hodge_point(phi_index(frame, p)) for p in path]
    steps = []
    for a, b in zip(path, path[1:]):
        s = next(k for k in range(len(a)) if a[k] != b[k])
        steps.append(step_delta(frame, a, s, diagnostics=False))
    start = hodges[0] == dominant_sort(type_of(frame.base.chart).mu_prime)
    end = hodges[-1] == hodge_point(frame.base)
    return HodgeChainReport(hodges, steps, start, end)


def component_steps(comp: PhiComponent, diagnostics: bool = True) -> list:
    """All unit steps of one component; the full box is a product of these."""
    fr = ComponentFrame(comp)
    if fr.table(fr.n) != tuple(comp.vals[a] for a in comp.low):
        raise InternalDisagreement("deformation endpoint does not reproduce phi")
    return [fr.step(i, diagnostics) for i in range(fr.n)]
