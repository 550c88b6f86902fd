"""Brackets, length pairings, polygons and the closed dimension formula.

Conventions: ``<omega_i, v> = -(v_1 + ... + v_i)``, so ``bracket(v)`` sums the
floors of the negated proper partial sums. The half-sum of positive roots acts
on each Galois row through the weights ``i - (h+1)/2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Sequence

from .coweights import (
    GCocharacter,
    SuperbasicDatum,
    dominance_leq,
    dominant_sort,
    embed,
    is_dominant,
    kappa_match,
    newton_point,
    orbit_sum,
    partial_sums,
    rel,
)
from .errors import InternalDisagreement, InvalidInput, KappaMismatch


def frac(x) -> Fraction:
    x = Fraction(x)
    return x - floor(x)


def bracket(v: Sequence) -> int:
    """``[v] = sum_{i<h} floor(-(v_1 + ... + v_i))``."""
    ps = partial_sums(rel(v))
    return sum(floor(-p) for p in ps[:-1])


def pairing(v1: Sequence, v2: Sequence) -> int:
    """``<v1, v2> = [-v1] + [v2]``."""
    if len(v1) != len(v2):
        raise InvalidInput("vectors of different length")
    return bracket([-Fraction(x) for x in v1]) + bracket(v2)


def _as_orbit_sum(x, d: int | None):
    if isinstance(x, GCocharacter):
        return orbit_sum(x)
    if d is None:
        raise InvalidInput("a relative cocharacter needs d to be embedded")
    return orbit_sum(embed(x, d))


def pairing_g(x, y, d: int | None = None) -> int:
    """Pairing of Galois orbit sums; relative inputs are embedded diagonally."""
    return pairing(_as_orbit_sum(x, d), _as_orbit_sum(y, d))


@dataclass(frozen=True)
class Polygon:
    breakpoints: tuple  # ((0, 0), (1, P_1), ..., (h, P_h))

    @classmethod
    def of(cls, v: Sequence) -> "Polygon":
        ps = (Fraction(0),) + partial_sums(rel(v))
        return cls(tuple((i, p) for i, p in enumerate(ps)))

    @property
    def h(self) -> int:
        return len(self.breakpoints) - 1

    def __call__(self, x) -> Fraction:
        """Value of the piecewise linear function at ``0 <= x <= h``."""
        x = Fraction(x)
        if not 0 <= x <= self.h:
            raise InvalidInput("outside the polygon's domain")
        i = min(floor(x), self.h - 1)
        (x0, y0), (x1, y1) = self.breakpoints[i], self.breakpoints[i + 1]
        return y0 + (y1 - y0) * (x - x0)


def lattice_points(v1: Sequence, v2: Sequence) -> list:
    """Integer points on or below P(v1) and strictly above P(v2), 1 <= x <= h-1."""
    v1, v2 = rel(v1), rel(v2)
    if not dominance_leq(v1, v2):
        raise InvalidInput("need v1 ⪯ v2")
    if any(x.denominator != 1 for x in v2):
        raise InvalidInput("v2 must be integral")
    top, bottom = Polygon.of(v1), Polygon.of(v2)
    pts = []
    for x in range(1, len(v1)):
        lo, hi = bottom(x), top(x)
        y = floor(lo) + 1
        while y <= hi:
            pts.append((x, y))
            y += 1
    return pts


def lattice_points_between(v1: Sequence, v2: Sequence) -> int:
    return len(lattice_points(v1, v2))


def rho_weights(h: int) -> tuple:
    return tuple(Fraction(2 * i - h - 1, 2) for i in range(1, h + 1))


def rho_pairing(x, d: int | None = None) -> Fraction:
    """``<rho, x>`` summed over the Galois rows."""
    if not isinstance(x, GCocharacter):
        if d is None:
            raise InvalidInput("a relative cocharacter needs d to be embedded")
        x = embed(x, d)
    w = rho_weights(x.h)
    return sum((wi * Fraction(xi) for row in x.rows for wi, xi in zip(w, row)), Fraction(0))


def half_defect(nu, d: int | None = None) -> Fraction:
    """Half the defect: sum of fractional parts of ``<omega_i, d*nu>``.

    ``nu`` is either a :class:`SuperbasicDatum` or a dominant Newton point
    (in which case ``d`` is required).
    """
    if isinstance(nu, SuperbasicDatum):
        d = nu.d
        nu = newton_point(nu)
    if d is None:
        raise InvalidInput("half_defect of a Newton point needs d")
    nu = rel(nu)
    if not is_dominant(nu):
        raise InvalidInput("Newton point must be dominant")
    ps = partial_sums([d * x for x in nu])
    return sum((frac(-p) for p in ps[:-1]), Fraction(0))


def dim_formula(mu: GCocharacter, nu: Sequence, d: int) -> int:
    """``<rho, mu - nu> - defect/2`` for a Newton point nu of a class with kappa matching mu."""
    nu = rel(nu)
    if mu.d != d or mu.h != len(nu):
        raise InvalidInput("shape mismatch between mu and nu")
    if sum(Fraction(x) for x in mu.flat()) != d * sum(nu):
        raise KappaMismatch("kappa(mu) differs from kappa(b)")
    val = rho_pairing(mu - embed(nu, d)) - half_defect(nu, d)
    if val.denominator != 1 or val < 0:
        raise InternalDisagreement(f"closed formula gave {val}, not a non-negative integer")
    return int(val)


def superbasic_dim_formula(mu: GCocharacter, datum: SuperbasicDatum) -> int:
    if not kappa_match(mu, datum):
        raise KappaMismatch(f"sum of mu is {mu.total()}, but m = {datum.m}")
    return dim_formula(mu, newton_point(datum), datum.d)


def length_to_dom(v: Sequence[int]) -> int:
    """``sum_{i<j} max(v_i - v_j, 0)``."""
    v = list(v)
    return sum(max(v[i] - v[j], 0) for i in range(len(v)) for j in range(i + 1, len(v)))


def transfer_length(v: Sequence[int], i: int, j: int, beta: int) -> int:
    """Length from dominant ``v`` to the dominant sort of ``v`` with ``beta`` moved from i to j.

    Indices are 1-based. The double-sum closed form needs two distinct
    coordinates; for ``i == j`` nothing moves and the length is 0.
    """
    v = tuple(v)
    h = len(v)
    if not (1 <= i <= j <= h):
        raise InvalidInput(f"need 1 <= i <= j <= {h}")
    if beta < 0:
        raise InvalidInput("beta must be non-negative")
    if not is_dominant(v):
        raise InvalidInput("v must be dominant")
    if i == j:
        return 0
    total = 0
    for k in range(1, beta + 1):
        for l in range(v[i - 1] - beta, v[j - 1]):
            total += v.count(k + l)
    return total - beta


def moved(v: Sequence[int], i: int, j: int, beta: int) -> tuple:
    w = list(v)
    w[i - 1] -= beta
    w[j - 1] += beta
    return tuple(w)


def two_element_length(v: Sequence[int], n1: int, n2: int, n3: int, n4: int) -> int:
    """Length from dominant ``v`` to the vector with ``n2, n3`` replaced by ``n1, n4``."""
    if not n1 <= n2 <= n3 <= n4:
        raise InvalidInput("need n1 <= n2 <= n3 <= n4")
    v = tuple(v)
    total = 0
    for k in range(n4 - n3):
        for l in range(n4 - n2):
            total += v.count(n4 - k - l - 1)
    return total + n1 - n2


def replace_two(v: Sequence[int], old: tuple, new: tuple) -> tuple:
    w = list(v)
    for x in old:
        w.remove(x)
    return tuple(sorted(w + list(new)))


__all__ = [
    "Polygon", "bracket", "dim_formula", "dominant_sort", "frac", "half_defect",
    "lattice_points", "lattice_points_between", "length_to_dom", "moved", "pairing",
    "pairing_g", "replace_two", "rho_pairing", "rho_weights", "superbasic_dim_formula",
    "transfer_length", "two_element_length",
]
