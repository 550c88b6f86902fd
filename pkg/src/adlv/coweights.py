"""Absolute and relative cocharacters of Res_{k'/k} GL_h and the superbasic datum.

Absolute cocharacters live in prod_{tau in Z/d} Z^h and are stored as ``d``
rows of ``h`` entries. Relative cocharacters live in Q^h and are plain tuples of
:class:`fractions.Fraction`. Dominant means weakly increasing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate, permutations
from math import gcd
from typing import Iterable, NamedTuple, Sequence, Union

from .errors import InvalidInput, NotSuperbasic

Number = Union[int, Fraction]
RelCocharacter = tuple  # tuple[Fraction, ...]


def rel(values: Iterable[Number | str]) -> RelCocharacter:
    """Coerce to an exact relative cocharacter."""
    return tuple(Fraction(v) for v in values)


class GaloisIndex(int):
    """A residue class modulo d, kept in its standard representative."""

    def __new__(cls, tau: int, d: int):
        if d <= 0:
            raise InvalidInput("d must be positive")
        return super().__new__(cls, tau % d)


class IndexedInt(NamedTuple):
    """The element ``value_(tau)`` of the disjoint union of d copies of Z."""

    tau: int
    value: int

    def __add__(self, n):  # type: ignore[override]
        return IndexedInt(self.tau, self.value + n)

    def __sub__(self, n):
        return IndexedInt(self.tau, self.value - n)

    def leq(self, other: "IndexedInt") -> bool:
        """The partial order: comparable only inside one component."""
        return self.tau == other.tau and self.value <= other.value

    def lt(self, other: "IndexedInt") -> bool:
        return self.tau == other.tau and self.value < other.value

    def __str__(self):
        return f"{self.value}_({self.tau})"


@dataclass(frozen=True)
class GCocharacter:
    """``d`` rows of ``h`` entries; row ``tau`` is the factor indexed by tau."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if not rows or not rows[0]:
            raise InvalidInput("a cocharacter needs at least one row and one column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise InvalidInput("all rows must have the same length")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_flat(cls, values: Sequence[Number], d: int, h: int) -> "GCocharacter":
        if len(values) != d * h:
            raise InvalidInput(f"expected {d * h} entries, got {len(values)}")
        return cls(tuple(tuple(values[t * h:(t + 1) * h]) for t in range(d)))

    @classmethod
    def zero(cls, d: int, h: int) -> "GCocharacter":
        return cls(((0,) * h,) * d)

    @property
    def d(self) -> int:
        return len(self.rows)

    @property
    def h(self) -> int:
        return len(self.rows[0])

    def __getitem__(self, tau):
        return self.rows[tau % self.d]

    def __iter__(self):
        return iter(self.rows)

    def _check_shape(self, other: "GCocharacter"):
        if (self.d, self.h) != (other.d, other.h):
            raise InvalidInput("cocharacters of different shape")

    def __add__(self, other: "GCocharacter") -> "GCocharacter":
        self._check_shape(other)
        return GCocharacter(tuple(tuple(x + y for x, y in zip(r, s))
                                  for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "GCocharacter") -> "GCocharacter":
        self._check_shape(other)
        return GCocharacter(tuple(tuple(x - y for x, y in zip(r, s))
                                  for r, s in zip(self.rows, other.rows)))

    def total(self) -> Number:
        return sum(sum(r) for r in self.rows)

    def row_sums(self) -> tuple:
        return tuple(sum(r) for r in self.rows)

    def flat(self) -> tuple:
        return tuple(x for r in self.rows for x in r)

    def is_dominant(self) -> bool:
        return all(is_dominant(r) for r in self.rows)

    def is_integral(self) -> bool:
        return all(Fraction(x).denominator == 1 for x in self.flat())

    def __str__(self):
        return "(" + ", ".join("(" + ",".join(str(x) for x in r) + ")" for r in self.rows) + ")"


def embed(nu: Sequence[Number], d: int) -> GCocharacter:
    """Diagonal embedding of a relative cocharacter into d copies."""
    row = rel(nu)
    return GCocharacter((row,) * d)


def partial_sums(v: Sequence[Number]) -> tuple:
    return tuple(accumulate(v))


def is_dominant(v: Sequence[Number]) -> bool:
    return all(v[i] <= v[i + 1] for i in range(len(v) - 1))


def orbit_sum(mu: GCocharacter) -> RelCocharacter:
    """Column sums over the Galois direction."""
    return tuple(Fraction(sum(col)) for col in zip(*mu.rows))


def dominant_sort(v):
    """Weakly increasing rearrangement (row by row for absolute cocharacters)."""
    if isinstance(v, GCocharacter):
        return GCocharacter(tuple(tuple(sorted(r)) for r in v.rows))
    return tuple(sorted(v))


def dominance_leq(v1: Sequence[Number], v2: Sequence[Number]) -> bool:
    """``v1 ⪯ v2``: proper partial sums of v1 dominate those of v2, totals agree."""
    if len(v1) != len(v2):
        raise InvalidInput("vectors of different length")
    p1, p2 = partial_sums(v1), partial_sums(v2)
    if p1[-1] != p2[-1]:
        return False
    return all(a >= b for a, b in zip(p1[:-1], p2[:-1]))


def g_dominance_leq(mu1: GCocharacter, mu2: GCocharacter) -> bool:
    mu1._check_shape(mu2)
    return all(dominance_leq(r, s) for r, s in zip(mu1.rows, mu2.rows))


def distinct_permutations(row: Sequence[int]) -> list:
    return sorted(set(permutations(row)))


def weyl_orbit(mu: GCocharacter) -> set:
    """All independent rearrangements of the rows of ``mu``."""
    out = [()]
    for r in mu.rows:
        out = [acc + (p,) for acc in out for p in distinct_permutations(r)]
    return {GCocharacter(rows) for rows in out}


def is_minuscule(mu: GCocharacter) -> bool:
    return all(max(r) - min(r) <= 1 for r in mu.rows)


@dataclass(frozen=True)
class SuperbasicDatum:
    """``b(e_{tau,i}) = e_{tau,i+m_tau}`` for ``Res GL_h`` over a degree ``d`` extension."""

    d: int
    h: int
    slopes: tuple

    def __post_init__(self):
        slopes = tuple(int(s) for s in self.slopes)
        if self.d <= 0 or self.h <= 0:
            raise InvalidInput("d and h must be positive")
        if len(slopes) != self.d:
            raise InvalidInput(f"need {self.d} slopes, got {len(slopes)}")
        object.__setattr__(self, "slopes", slopes)

    @classmethod
    def for_mu(cls, mu: GCocharacter) -> "SuperbasicDatum":
        """The normalized representative whose slopes are the row sums of mu."""
        return cls(mu.d, mu.h, tuple(int(s) for s in mu.row_sums()))

    @property
    def m(self) -> int:
        return sum(self.slopes)

    def is_superbasic(self) -> bool:
        return gcd(self.m, self.h) == 1

    def check_superbasic(self):
        if not self.is_superbasic():
            raise NotSuperbasic(f"gcd(m={self.m}, h={self.h}) != 1")

    def slope(self, tau: int) -> int:
        return self.slopes[tau % self.d]

    def f(self, a: IndexedInt) -> IndexedInt:
        """``a_(tau) -> (a + m_{tau+1})_(tau+1)``."""
        t = (a.tau + 1) % self.d
        return IndexedInt(t, a.value + self.slopes[t])


def newton_point(datum: SuperbasicDatum) -> RelCocharacter:
    datum.check_superbasic()
    return (Fraction(datum.m, datum.d * datum.h),) * datum.h


def kappa_match(mu: GCocharacter, datum: SuperbasicDatum) -> bool:
    return mu.total() == datum.m
