"""Exact roots of unity.

A :class:`UnitPhase` is ``exp(2*pi*i*exponent/modulus)`` with the exponent
kept as an integer.  Every field ``GF(p^n)`` uses the modulus ``L = 4p`` so
that characters (``p``-th roots) and their principal square roots (needed in
characteristic two) live in the same group.
"""

from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np


def phase_modulus(p: int) -> int:
    return 4 * p


@lru_cache(maxsize=None)
def unit_table(modulus: int) -> np.ndarray:
    """Complex values of all ``modulus``-th roots of unity.

    Quarter turns are written out exactly so ``1, i, -1, -i`` carry no
    rounding error.
    """
    vals = np.exp(2j * np.pi * np.arange(modulus) / modulus)
    if modulus % 4 == 0:
        q = modulus // 4
        vals[0], vals[q], vals[2 * q], vals[3 * q] = 1, 1j, -1, -1j
    elif modulus % 2 == 0:
        vals[0], vals[modulus // 2] = 1, -1
    else:
        vals[0] = 1
    vals.setflags(write=False)
    return vals


def to_complex(exponents, modulus: int) -> np.ndarray:
    """Vectorised conversion of exponent arrays to complex values."""
    return unit_table(modulus)[np.mod(exponents, modulus)]


@dataclass(frozen=True)
class UnitPhase:
    exponent: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "exponent", int(self.exponent) % self.modulus)

    @classmethod
    def one(cls, modulus: int) -> UnitPhase:
        return cls(0, modulus)

    def _check(self, other: UnitPhase):
        if not isinstance(other, UnitPhase):
            return NotImplemented
        if other.modulus != self.modulus:
            raise ValueError(f"phase moduli differ: {self.modulus} vs {other.modulus}")
        return other

    def __mul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return UnitPhase(self.exponent + other.exponent, self.modulus)

    def __truediv__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return UnitPhase(self.exponent - other.exponent, self.modulus)

    def __pow__(self, k: int) -> UnitPhase:
        return UnitPhase(self.exponent * k, self.modulus)

    def conjugate(self) -> UnitPhase:
        return UnitPhase(-self.exponent, self.modulus)

    def __complex__(self) -> complex:
        return complex(unit_table(self.modulus)[self.exponent])

    @property
    def value(self) -> complex:
        return complex(self)

    @property
    def angle(self) -> float:
        """Argument in ``(-pi, pi]``."""
        e = self.exponent
        if 2 * e > self.modulus:
            e -= self.modulus
        return 2 * math.pi * e / self.modulus

    def sqrt(self) -> UnitPhase:
        """Principal square root (argument halved from ``(-pi, pi]``).

        Raises ``ValueError`` when the root is not representable with the
        same modulus.
        """
        e = self.exponent
        if 2 * e > self.modulus:
            e -= self.modulus
        if e % 2:
            raise ValueError(f"sqrt of {self} needs a finer modulus")
        return UnitPhase(e // 2, self.modulus)

    def is_close(self, z: complex, tol: float = 1e-12) -> bool:
        return abs(complex(self) - z) < tol

    def to_json(self) -> dict:
        return {"num": self.exponent, "den": self.modulus}

    @classmethod
    def from_json(cls, obj: dict) -> UnitPhase:
        return cls(int(obj["num"]), int(obj["den"]))

    def __str__(self) -> str:
        q, r = divmod(4 * self.exponent, self.modulus)
        if r == 0:
            return ("1", "i", "-1", "-i")[q]
        g = math.gcd(self.exponent, self.modulus)
        return f"exp(2pi i {self.exponent // g}/{self.modulus // g})"


def exact_sum(phases: Iterable[UnitPhase], p: int) -> int | None:
    """Exact value of a sum of ``p``-th roots of unity, if it is an integer.

    Uses that ``1 + w + ... + w^(p-1) = 0`` is the only relation among the
    ``p``-th roots (``w = exp(2 pi i / p)``, ``p`` prime), so
    ``sum a_j w^j`` is an integer iff ``a_1 = ... = a_(p-1)``, in which case
    it equals ``a_0 - a_1``.  Returns ``None`` for non-integer sums and raises
    if some phase is not a ``p``-th root.
    """
    counts: Counter[int] = Counter()
    for ph in phases:
        step = ph.modulus // p
        if ph.modulus % p or ph.exponent % step:
            raise ValueError(f"{ph} is not a {p}-th root of unity")
        counts[ph.exponent // step] += 1
    rest = {counts[j] for j in range(1, p)}
    if len(rest) > 1:
        return None
    a1 = rest.pop() if rest else 0
    return counts[0] - a1


def close_to_phase(z: complex, modulus: int, tol: float = 1e-9) -> UnitPhase | None:
    """Snap a complex number onto the nearest ``modulus``-th root, if within tol."""
    k = round(cmath.phase(z) * modulus / (2 * math.pi)) % modulus
    ph = UnitPhase(k, modulus)
    return ph if abs(complex(ph) - z) < tol else None
