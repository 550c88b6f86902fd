"""General sigma-conjugacy classes: Mazur's inequality, the closed formula, and the
consistency of the dimension recursion through a Levi subgroup.

The Levi subgroup ``M`` is a product of ``Res GL_{h_j}`` blocks along the
diagonal, chosen so that ``b`` is superbasic in ``M``. Positive simple coroots
are ``e_{i+1} - e_i``, matching weakly increasing dominance.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd

from .coweights import (
    GCocharacter,
    dominance_leq,
    embed,
    is_dominant,
    orbit_sum,
    partial_sums,
    rel,
)
from .enumeration import candidate_rows
from .errors import InternalDisagreement, InvalidInput, KappaMismatch, MazurFailure
from .polygons import dim_formula, half_defect, rho_pairing


@dataclass(frozen=True)
class GeneralClassDatum:
    d: int
    h: int
    newton: tuple
    kappa: int

    def __post_init__(self):
        nu = rel(self.newton)
        object.__setattr__(self, "newton", nu)
        if len(nu) != self.h:
            raise InvalidInput(f"Newton point needs {self.h} entries")
        if not is_dominant(nu):
            raise InvalidInput("Newton point must be weakly increasing")
        if self.d * sum(nu) != self.kappa:
            raise InvalidInput("kappa differs from d times the sum of the Newton point")
        for start, size in _runs(nu):
            if (self.d * nu[start] * size).denominator != 1:
                raise InvalidInput("a Newton block has non-integral total valuation")


def _runs(nu) -> list:
    out, i = [], 0
    while i < len(nu):
        j = i
        while j < len(nu) and nu[j] == nu[i]:
            j += 1
        out.append((i, j - i))
        i = j
    return out


@dataclass(frozen=True)
class LeviPartition:
    blocks: tuple  # heights
    slopes: tuple  # per block, entry of nu on that block

    @property
    def h(self) -> int:
        return sum(self.blocks)

    def ranges(self) -> list:
        out, s = [], 0
        for b in self.blocks:
            out.append(range(s, s + b))
            s += b
        return out

    @classmethod
    def whole(cls, h: int, slope=Fraction(0)) -> "LeviPartition":
        return cls((h,), (Fraction(slope),))

    @classmethod
    def torus(cls, h: int) -> "LeviPartition":
        return cls((1,) * h, (Fraction(0),) * h)


def newton_levi(datum: GeneralClassDatum) -> LeviPartition:
    """Split each isoclinic block of height H and valuation v into gcd(v, H) superbasic pieces."""
    blocks, slopes = [], []
    for start, H in _runs(datum.newton):
        s = datum.newton[start]
        v = int(datum.d * s * H)
        g = gcd(v, H)
        blocks.extend([H // g] * g)
        slopes.extend([s] * g)
    return LeviPartition(tuple(blocks), tuple(slopes))


def mazur_nonempty(mu: GCocharacter, datum: GeneralClassDatum) -> bool:
    if not mu.is_dominant():
        raise InvalidInput("mu must be dominant")
    if mu.total() != datum.kappa:
        return False
    return dominance_leq([datum.d * x for x in datum.newton], orbit_sum(mu))


def general_dim(mu: GCocharacter, datum: GeneralClassDatum) -> int:
    if mu.total() != datum.kappa:
        raise KappaMismatch("kappa(mu) differs from kappa(b)")
    if not mazur_nonempty(mu, datum):
        raise MazurFailure("Mazur's inequality fails: X_mu(b) is empty")
    return dim_formula(mu, datum.newton, datum.d)


def sigma_mu_set(mu: GCocharacter) -> set:
    """All mu' with mu'_dom ⪯ mu row by row."""
    return {GCocharacter(c) for c in itertools.product(*(candidate_rows(tuple(r)) for r in mu.rows))}


def _m_dominant_row(row, part: LeviPartition) -> bool:
    return all(is_dominant([row[i] for i in rg]) for rg in part.ranges())


def sigma_m_dom(mu: GCocharacter, part: LeviPartition) -> set:
    return {x for x in sigma_mu_set(mu) if all(_m_dominant_row(r, part) for r in x.rows)}


def m_leq_row(r1, r2, part: LeviPartition) -> bool:
    """``r1 <=_M r2``: r2 - r1 is a non-negative sum of simple coroots inside the blocks."""
    for rg in part.ranges():
        diff = [r2[i] - r1[i] for i in rg]
        ps = partial_sums(diff)
        if ps[-1] != 0 or any(p > 0 for p in ps):
            return False
    return True


def m_leq(x: GCocharacter, y: GCocharacter, part: LeviPartition) -> bool:
    return all(m_leq_row(a, b, part) for a, b in zip(x.rows, y.rows))


def sigma_m_max(mu: GCocharacter, part: LeviPartition) -> set:
    """Maximal elements of Sigma(mu)_{M-dom}; the order is a product over rows."""
    per_row = []
    for r in mu.rows:
        cands = [c for c in candidate_rows(tuple(r)) if _m_dominant_row(c, part)]
        per_row.append([c for c in cands if not any(o != c and m_leq_row(c, o, part) for o in cands)])
    return {GCocharacter(c) for c in itertools.product(*per_row)}


def rho_m_weights(part: LeviPartition) -> tuple:
    w = []
    for H in part.blocks:
        w.extend(Fraction(2 * j - H - 1, 2) for j in range(1, H + 1))
    return tuple(w)


def rho_m_pairing(x, part: LeviPartition, d: int | None = None) -> Fraction:
    if not isinstance(x, GCocharacter):
        x = embed(x, d)
    w = rho_m_weights(part)
    return sum((wi * Fraction(v) for row in x.rows for wi, v in zip(w, row)), Fraction(0))


def d_value(mu: GCocharacter, mu_m: GCocharacter, part: LeviPartition) -> int:
    if mu_m not in sigma_m_max(mu, part):
        raise InvalidInput("mu_M is not M-maximal in Sigma(mu); only the equality case is exposed")
    val = rho_pairing(mu + mu_m) - 2 * rho_m_pairing(mu_m, part)
    if val.denominator != 1:
        raise InternalDisagreement(f"d(mu, mu_M) = {val} is not integral")
    return int(val)


def kappa_m(x: GCocharacter, part: LeviPartition) -> tuple:
    return tuple(sum(row[i] for row in x.rows for i in rg) for rg in part.ranges())


def block_dim(mu_m: GCocharacter, datum: GeneralClassDatum, part: LeviPartition) -> int:
    """dim of X^M_{mu_M}(b) as the sum of the superbasic block formulas."""
    total = 0
    for rg in part.ranges():
        sub = GCocharacter(tuple(tuple(row[i] for i in rg) for row in mu_m.rows))
        total += dim_formula(sub, [datum.newton[i] for i in rg], datum.d)
    return total


@dataclass
class RecursionReport:
    mu: GCocharacter
    datum: GeneralClassDatum
    partition: LeviPartition
    candidates: list  # (mu_M, dim_M, d_value)
    correction: Fraction
    rhs: int
    lhs: int

    @property
    def ok(self) -> bool:
        return self.rhs == self.lhs


def recursion_check(mu: GCocharacter, datum: GeneralClassDatum) -> RecursionReport:
    lhs = general_dim(mu, datum)
    part = newton_levi(datum)
    d = datum.d
    target = tuple(int(d * datum.newton[rg.start] * len(rg)) for rg in part.ranges())
    cands = []
    for mm in sorted(sigma_m_max(mu, part), key=lambda g: g.rows):
        if kappa_m(mm, part) != target:
            continue
        cands.append((mm, block_dim(mm, datum, part), d_value(mu, mm, part)))
    if not cands:
        raise InternalDisagreement("no M-maximal element in the kappa_M fiber")
    nu = datum.newton
    nu_dom = tuple(sorted(nu))
    two_rho_n = 2 * (rho_pairing(nu, d) - rho_m_pairing(nu, part, d))
    correction = rho_pairing([a - b for a, b in zip(nu, nu_dom)], d) - two_rho_n
    best = max(dm + dv for _, dm, dv in cands)
    rhs = best + correction
    if rhs.denominator != 1:
        raise InternalDisagreement(f"recursion right-hand side {rhs} is not integral")
    return RecursionReport(mu, datum, part, cands, correction, int(rhs), lhs)


def newton_points(mu: GCocharacter) -> list:
    """All Newton points of classes with kappa equal to that of mu that satisfy Mazur."""
    d, h = mu.d, mu.h
    hodge = partial_sums(orbit_sum(mu))
    m = int(mu.total())
    out = []

    def grow(x, y, last_slope, pts):
        if x == h:
            if y == m:
                out.append(tuple(pts))
            return
        for x2 in range(x + 1, h + 1):
            lo = hodge[x2 - 1]
            hi = Fraction(m * x2, h)
            for y2 in range(int(lo), floor(hi) + 1):
                if y2 < lo:
                    continue
                s = Fraction(y2 - y, x2 - x)
                if last_slope is not None and s <= last_slope:
                    continue
                grow(x2, y2, s, pts + [(x2, y2)])

    grow(0, 0, None, [])
    res = []
    for pts in out:
        nu, px, py = [], 0, 0
        for x2, y2 in pts:
            nu.extend([Fraction(y2 - py, (x2 - px) * d)] * (x2 - px))
            px, py = x2, y2
        gd = GeneralClassDatum(d, h, tuple(nu), m)
        if mazur_nonempty(mu, gd):
            res.append(gd)
    return res
