"""Generalized Pauli group over GF(p^n) as dense matrices.

All matrices are assembled in *code order* (row/column ``k`` is the basis
ket labelled by the element with code ``k``) and only permuted into a
requested :class:`~gfwigner.field.Ordering` when wrapped into an
:class:`Operator` or :class:`Ket`.  Phases are carried as integer exponents
modulo ``spec.L`` until the matrix is formed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Union

import numpy as np

from .errors import DimensionMismatch, EvenCharacteristic, MixedOrdering, NonPhysicalState
from .field import ElementLike, FieldSpec, Ordering, default_ordering
from .phase import UnitPhase, to_complex

if TYPE_CHECKING:
    from .rotations import RotationSet

#: Tolerance for whole-matrix assertions.
MATRIX_TOL = 1e-9
#: Tolerance for single products.
PRODUCT_TOL = 1e-12


# -- ordered containers ------------------------------------------------------

def _to_ordered(mat: np.ndarray, order: Ordering) -> np.ndarray:
    if order.is_identity:
        return mat
    c = order.code_array
    return mat[np.ix_(c, c)] if mat.ndim == 2 else mat[c]


def _to_codes(mat: np.ndarray, order: Ordering) -> np.ndarray:
    if order.is_identity:
        return mat
    idx = order.index
    return mat[np.ix_(idx, idx)] if mat.ndim == 2 else mat[idx]


@dataclass(frozen=True, eq=False)
class Operator:
    """A d x d matrix whose rows and columns follow ``ordering``."""

    matrix: np.ndarray
    ordering: Ordering

    def __post_init__(self):
        d = self.ordering.spec.d
        if self.matrix.shape != (d, d):
            raise DimensionMismatch(f"expected {d}x{d}, got {self.matrix.shape}")

    @classmethod
    def from_codes(cls, mat: np.ndarray, ordering: Ordering | None = None) -> Operator:
        order = ordering
        if order is None:
            raise ValueError("ordering required")
        return cls(_to_ordered(np.asarray(mat, dtype=complex), order), order)

    @property
    def spec(self) -> FieldSpec:
        return self.ordering.spec

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def in_codes(self) -> np.ndarray:
        """The same operator with rows/columns in code order."""
        return _to_codes(self.matrix, self.ordering)

    def reorder(self, ordering: Ordering) -> Operator:
        if ordering.spec != self.spec:
            raise MixedOrdering("orderings belong to different fields")
        return Operator(_to_ordered(self.in_codes(), ordering), ordering)

    def _same(self, other) -> None:
        if other.ordering != self.ordering:
            raise MixedOrdering(f"{other.ordering.strategy} vs {self.ordering.strategy} ordering")

    def __matmul__(self, other):
        if isinstance(other, Operator):
            self._same(other)
            return Operator(self.matrix @ other.matrix, self.ordering)
        if isinstance(other, Ket):
            self._same(other)
            return Ket(self.matrix @ other.vector, self.ordering)
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        self._same(other)
        return Operator(self.matrix + other.matrix, self.ordering)

    def __sub__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        self._same(other)
        return Operator(self.matrix - other.matrix, self.ordering)

    def __mul__(self, z):
        if isinstance(z, UnitPhase):
            z = complex(z)
        if not np.isscalar(z):
            return NotImplemented
        return Operator(self.matrix * z, self.ordering)

    __rmul__ = __mul__

    def __neg__(self):
        return Operator(-self.matrix, self.ordering)

    def dag(self) -> Operator:
        return Operator(self.matrix.conj().T, self.ordering)

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.matrix))) if self.matrix.size else 0.0

    def allclose(self, other: Operator, tol: float = MATRIX_TOL) -> bool:
        self._same(other)
        return bool(np.max(np.abs(self.matrix - other.matrix)) < tol)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    def __repr__(self) -> str:
        return f"Operator(dim={self.dim}, ordering={self.ordering.strategy})\n{np.round(self.matrix, 6)}"


@dataclass(frozen=True, eq=False)
class Ket:
    vector: np.ndarray
    ordering: Ordering

    def __post_init__(self):
        if self.vector.shape != (self.ordering.spec.d,):
            raise DimensionMismatch(f"expected length {self.ordering.spec.d}, got {self.vector.shape}")

    @classmethod
    def from_codes(cls, vec: np.ndarray, ordering: Ordering) -> Ket:
        return cls(_to_ordered(np.asarray(vec, dtype=complex), ordering), ordering)

    @property
    def spec(self) -> FieldSpec:
        return self.ordering.spec

    def in_codes(self) -> np.ndarray:
        return _to_codes(self.vector, self.ordering)

    def reorder(self, ordering: Ordering) -> Ket:
        return Ket(_to_ordered(self.in_codes(), ordering), ordering)

    def inner(self, other: Ket) -> complex:
        """``<self|other>``."""
        if other.ordering != self.ordering:
            raise MixedOrdering("kets use different orderings")
        return complex(np.vdot(self.vector, other.vector))

    def norm(self) -> float:
        return float(np.linalg.norm(self.vector))

    def normalized(self) -> Ket:
        return Ket(self.vector / self.norm(), self.ordering)

    def projector(self) -> Operator:
        return Operator(np.outer(self.vector, self.vector.conj()), self.ordering)

    def allclose(self, other: Ket, tol: float = MATRIX_TOL) -> bool:
        if other.ordering != self.ordering:
            raise MixedOrdering("kets use different orderings")
        return bool(np.max(np.abs(self.vector - other.vector)) < tol)

    def amplitude(self, a: ElementLike) -> complex:
        return complex(self.vector[self.ordering.perm(a)])

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.vector, dtype=dtype)


OperatorLike = Union[Operator, np.ndarray]
KetLike = Union[Ket, np.ndarray]


def code_matrix(x: OperatorLike, spec: FieldSpec) -> np.ndarray:
    """Matrix of ``x`` in code order; bare arrays are taken as already in code order."""
    if isinstance(x, Operator):
        if x.spec != spec:
            raise MixedOrdering(f"operator over {x.spec} used with {spec}")
        return x.in_codes()
    m = np.asarray(x, dtype=complex)
    if m.shape != (spec.d, spec.d):
        raise DimensionMismatch(f"expected {spec.d}x{spec.d}, got {m.shape}")
    return m


def code_vector(x: KetLike, spec: FieldSpec) -> np.ndarray:
    if isinstance(x, Ket):
        if x.spec != spec:
            raise MixedOrdering(f"ket over {x.spec} used with {spec}")
        return x.in_codes()
    v = np.asarray(x, dtype=complex)
    if v.shape != (spec.d,):
        raise DimensionMismatch(f"expected length {spec.d}, got {v.shape}")
    return v


def _order(spec: FieldSpec, ordering: Ordering | None) -> Ordering:
    if ordering is None:
        return default_ordering(spec)
    if ordering.spec != spec:
        raise MixedOrdering("ordering belongs to another field")
    return ordering


# -- raw builders in code order ----------------------------------------------

def z_exponents(spec: FieldSpec, a: int) -> np.ndarray:
    """Diagonal of ``Z_a`` as character exponents: ``chi(a x)`` for each code x."""
    return spec.chi_table[spec.mul_table[a]]


def z_matrix(spec: FieldSpec, a: int) -> np.ndarray:
    return np.diag(to_complex(z_exponents(spec, a), spec.L))


def x_matrix(spec: FieldSpec, b: int) -> np.ndarray:
    d = spec.d
    m = np.zeros((d, d), dtype=complex)
    m[spec.add_table[b], np.arange(d)] = 1  # X_b |x> = |x + b>
    return m


def zx_matrix(spec: FieldSpec, a: int, b: int, phase_exp: int = 0) -> np.ndarray:
    """``chi^phase * Z_a X_b`` without forming the two factors."""
    d = spec.d
    rows = spec.add_table[b]
    m = np.zeros((d, d), dtype=complex)
    m[rows, np.arange(d)] = to_complex(spec.chi_table[spec.mul_table[a, rows]] + phase_exp, spec.L)
    return m


def fourier_matrix(spec: FieldSpec) -> np.ndarray:
    # F = d^{-1/2} sum chi(ab) |a><b|
    return to_complex(spec.chi_table[spec.mul_table], spec.L) / np.sqrt(spec.d)


# -- public builders ---------------------------------------------------------

def build_Z(a: ElementLike, spec: FieldSpec, ordering: Ordering | None = None) -> Operator:
    """``Z_a |x> = chi(a x) |x>``."""
    return Operator.from_codes(z_matrix(spec, spec.code(a)), _order(spec, ordering))


def build_X(b: ElementLike, spec: FieldSpec, ordering: Ordering | None = None) -> Operator:
    """``X_b |x> = |x + b>``."""
    return Operator.from_codes(x_matrix(spec, spec.code(b)), _order(spec, ordering))


def build_fourier(spec: FieldSpec, ordering: Ordering | None = None) -> Operator:
    return Operator.from_codes(fourier_matrix(spec), _order(spec, ordering))


def basis_ket(a: ElementLike, spec: FieldSpec, ordering: Ordering | None = None) -> Ket:
    v = np.zeros(spec.d, dtype=complex)
    v[spec.code(a)] = 1
    return Ket.from_codes(v, _order(spec, ordering))


def conjugate_ket(a: ElementLike, spec: FieldSpec, ordering: Ordering | None = None) -> Ket:
    """``|a~> = F|a>``, the eigenvector of every ``X_b`` with eigenvalue ``chi(-ab)``."""
    return Ket.from_codes(fourier_matrix(spec)[:, spec.code(a)], _order(spec, ordering))


def phase_phi(tau: ElementLike, upsilon: ElementLike, rot: RotationSet) -> UnitPhase:
    """Phase of the displacement operator ``D(tau, upsilon)``.

    ``phi(tau, upsilon) = c_{tau, upsilon/tau}``; both axes carry no phase.
    """
    spec = rot.spec
    return UnitPhase(int(rot.phi_exponents[spec.code(tau), spec.code(upsilon)]), spec.L)


def displacement_matrix(rot: RotationSet, a: int, b: int) -> np.ndarray:
    return zx_matrix(rot.spec, a, b, int(rot.phi_exponents[a, b]))


def displacement_stack(rot: RotationSet) -> np.ndarray:
    """All ``D(a, b)`` in code order, shape ``(d, d, d, d)`` indexed ``[a, b]``."""
    spec = rot.spec
    d = spec.d
    out = np.zeros((d, d, d, d), dtype=complex)
    cols = np.arange(d)
    for b in range(d):
        rows = spec.add_table[b]
        # exponent of chi(a (x + b)) for every a (axis 0) and column x
        expo = spec.chi_table[spec.mul_table[:, rows]] + rot.phi_exponents[:, b][:, None]
        out[:, b, rows, cols] = to_complex(expo, spec.L)
    return out


def build_displacement(a: ElementLike, b: ElementLike, rot: RotationSet,
                       ordering: Ordering | None = None) -> Operator:
    """``D(a, b) = phi(a, b) Z_a X_b``."""
    spec = rot.spec
    return Operator.from_codes(displacement_matrix(rot, spec.code(a), spec.code(b)), _order(spec, ordering))


def build_parity(spec: FieldSpec, ordering: Ordering | None = None) -> Operator:
    """``P = (1/d) sum_{a,b} D(a, b)`` for the canonical odd-characteristic phases.

    Equals the reflection ``|a> -> |-a>``.
    """
    if spec.p == 2:
        raise EvenCharacteristic("the parity operator is defined for odd characteristic only")
    from .rotations import canonical_rotation_set_odd

    rot = canonical_rotation_set_odd(spec)
    P = displacement_stack(rot).sum(axis=(0, 1)) / spec.d
    return Operator.from_codes(P, _order(spec, ordering))


def reflection_matrix(spec: FieldSpec) -> np.ndarray:
    d = spec.d
    m = np.zeros((d, d), dtype=complex)
    m[spec.neg_table, np.arange(d)] = 1
    return m


def unitarity_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0]))))


def density_codes(x, spec: FieldSpec) -> np.ndarray:
    """Density matrix in code order from an Operator, Ket, vector or matrix.

    Vectors are turned into projectors (after normalization).
    """
    if isinstance(x, Ket) or (isinstance(x, np.ndarray) and x.ndim == 1) or isinstance(x, (list, tuple)):
        v = code_vector(x if isinstance(x, Ket) else np.asarray(x, dtype=complex), spec)
        nrm = np.linalg.norm(v)
        if nrm == 0:
            raise NonPhysicalState("zero vector")
        v = v / nrm
        return np.outer(v, v.conj())
    return code_matrix(x, spec)


def check_density(rho: np.ndarray, *, physical: bool = True, tol: float = MATRIX_TOL) -> None:
    """Raise NonPhysicalState unless ``rho`` is Hermitian with unit trace
    (and positive semidefinite when ``physical``)."""
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise NonPhysicalState("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise NonPhysicalState(f"trace {np.trace(rho).real:.6g} != 1")
    if physical and np.min(np.linalg.eigvalsh((rho + rho.conj().T) / 2)) < -tol:
        raise NonPhysicalState("density matrix has a negative eigenvalue")
