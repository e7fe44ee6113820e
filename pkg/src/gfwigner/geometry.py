"""Lines, rays and striations of the phase space GF(d) x GF(d).

A point is a pair ``(alpha, beta)``; a sloped line is ``beta = mu alpha + nu``
and a vertical line is ``alpha = nu``.  Internally points and parameters are
element codes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import MixedFields
from .field import ElementLike, FieldElement, FieldSpec


@dataclass(frozen=True)
class PhasePoint:
    alpha: FieldElement
    beta: FieldElement

    def __post_init__(self):
        if self.alpha.spec != self.beta.spec:
            raise MixedFields("point coordinates from different fields")

    @property
    def codes(self) -> tuple[int, int]:
        return self.alpha.code, self.beta.code

    def __str__(self) -> str:
        return f"({self.alpha}, {self.beta})"


def point(spec: FieldSpec, alpha: ElementLike, beta: ElementLike) -> PhasePoint:
    return PhasePoint(spec.element(alpha), spec.element(beta))


@dataclass(frozen=True)
class Line:
    """``beta = slope * alpha + intercept``, or ``alpha = intercept`` when
    ``slope`` is ``None`` (vertical)."""

    spec: FieldSpec = field(repr=False)
    slope: int | None
    intercept: int

    @property
    def vertical(self) -> bool:
        return self.slope is None

    def coefficients(self) -> tuple[int, int, int]:
        """``(zeta, eta, theta)`` with the line written as ``zeta a + eta b = theta``."""
        s = self.spec
        if self.vertical:
            return 1, 0, self.intercept
        return int(s.neg_table[self.slope]), 1, self.intercept

    def point_codes(self) -> np.ndarray:
        """The d points as an array of ``(alpha, beta)`` code pairs."""
        s = self.spec
        a = np.arange(s.d)
        if self.vertical:
            return np.stack([np.full(s.d, self.intercept), a], axis=1)
        b = s.add_table[s.mul_table[self.slope, a], self.intercept]
        return np.stack([a, b], axis=1)

    def contains(self, alpha: ElementLike, beta: ElementLike) -> bool:
        s = self.spec
        a, b = s.code(alpha), s.code(beta)
        if self.vertical:
            return a == self.intercept
        return b == s.add_table[s.mul_table[self.slope, a], self.intercept]

    def __str__(self) -> str:
        s = self.spec
        if self.vertical:
            return f"alpha = {s.label(self.intercept)}"
        return f"beta = {s.label(self.slope)} alpha + {s.label(self.intercept)}"


def sloped_line(spec: FieldSpec, mu: ElementLike, nu: ElementLike) -> Line:
    return Line(spec, spec.code(mu), spec.code(nu))


def vertical_line(spec: FieldSpec, nu: ElementLike) -> Line:
    return Line(spec, None, spec.code(nu))


def line_points(line: Line) -> list[PhasePoint]:
    s = line.spec
    return [PhasePoint(s.element(int(a)), s.element(int(b))) for a, b in line.point_codes()]


def intersect(l1: Line, l2: Line) -> PhasePoint | str:
    """Common point of two lines, or ``"parallel"`` / ``"identical"``.

    With lines ``z a + e b = t`` and ``z' a + e' b = t'`` the solution is
    ``a = (e t' - e' t) / (z' e - z e')`` and
    ``b = (z t' - z' t) / (z e' - z' e)``.
    """
    s = l1.spec
    if l2.spec != s:
        raise MixedFields("lines over different fields")
    z1, e1, t1 = l1.coefficients()
    z2, e2, t2 = l2.coefficients()
    mul, sub = s.mul_table, s.sub_table
    det = int(sub[mul[z1, e2], mul[z2, e1]])  # z e' - z' e
    if det == 0:
        return "identical" if (l1.slope, l1.intercept) == (l2.slope, l2.intercept) else "parallel"
    inv_det = int(s.inv_table[det])
    a = int(mul[sub[mul[e1, t2], mul[e2, t1]], s.inv_table[s.neg_table[det]]])
    b = int(mul[sub[mul[z1, t2], mul[z2, t1]], inv_det])
    return PhasePoint(s.element(a), s.element(b))


@dataclass(frozen=True)
class Striation:
    """The d parallel lines of one slope (``None`` for vertical)."""

    spec: FieldSpec = field(repr=False)
    slope: int | None

    @property
    def lines(self) -> list[Line]:
        return [Line(self.spec, self.slope, nu) for nu in range(self.spec.d)]

    def ray(self) -> Line:
        return Line(self.spec, self.slope, 0)

    def line_index(self) -> np.ndarray:
        """``idx[alpha, beta]`` = intercept of the line through that point."""
        s = self.spec
        a = np.arange(s.d)
        if self.slope is None:
            return np.repeat(a[:, None], s.d, axis=1)
        return s.sub_table[a[None, :], s.mul_table[self.slope, a][:, None]]

    def label(self) -> str:
        return "inf" if self.slope is None else self.spec.label(self.slope)


def striation_table(spec: FieldSpec) -> list[Striation]:
    """All d+1 striations: slopes in code order, then the vertical one."""
    return [Striation(spec, mu) for mu in range(spec.d)] + [Striation(spec, None)]


def iter_lines(spec: FieldSpec) -> Iterator[Line]:
    for st in striation_table(spec):
        yield from st.lines


def ray_operator_labels(striation: Striation) -> list[tuple[int, int]]:
    """Displacement labels ``(alpha, beta)`` on the ray of this striation,
    origin excluded.  Operators with labels on one ray commute."""
    s = striation.spec
    if striation.slope is None:
        return [(0, b) for b in range(1, s.d)]
    return [(a, int(s.mul_table[striation.slope, a])) for a in range(1, s.d)]
