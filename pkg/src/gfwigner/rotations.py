"""Rotation operators ``V_mu`` and their coefficient tables.

A rotation set is the full table ``c[k, mu]`` (as exponents modulo ``L``) of
the eigenphases of ``V_mu = sum_k c_{k,mu} |k~><k~|``.  Every admissible set
is stored as a canonical set plus a shift function ``h`` with ``h(0) = 0``;
the shifted operators are ``V_mu X_{h(mu)}``, whose coefficients are
``c_{k,mu} chi(-k h(mu))``.

In characteristic two the canonical set takes the principal square root of
``chi(s_l^2 mu)`` on the elements ``s_l`` of a basis and extends to the rest
of the field through ``c_{k+a,mu} = c_{k,mu} c_{a,mu} chi(-mu a k)``.  A
sign flip on basis element ``s_l`` is the same as a shift with
``tr(s_l h(mu)) = 1``, so signs and shifts are interchangeable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    EvenCharacteristic,
    IdentityViolation,
    NoSolution,
    OddCharacteristic,
    ShiftAtZero,
    ZeroSqueeze,
    WrongLength,
)
from .field import (
    Basis,
    ElementLike,
    FieldElement,
    FieldSpec,
    Ordering,
    dual_basis,
    make_basis,
    polynomial_basis,
    self_dual_basis,
)
from .operators import (
    MATRIX_TOL,
    PRODUCT_TOL,
    Operator,
    _order,
    fourier_matrix,
    x_matrix,
)
from .phase import UnitPhase, to_complex


@dataclass(frozen=True, eq=False)
class RotationSet:
    """Coefficient table ``c[k, mu]`` (exponents mod ``spec.L``) with provenance.

    ``h`` holds the shift relative to the canonical set, one code per slope.
    ``basis`` and ``signs`` are only meaningful in characteristic two;
    ``signs[mu, l] = 1`` means the root on basis element ``l`` was negated.
    """

    spec: FieldSpec = field(repr=False)
    c: np.ndarray = field(repr=False)
    h: tuple[int, ...]
    basis: Basis | None = None
    signs: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        d = self.spec.d
        if self.c.shape != (d, d):
            raise WrongLength(f"coefficient table must be {d}x{d}")
        if len(self.h) != d:
            raise WrongLength(f"shift table must have {d} entries")
        if self.h[0] != 0:
            raise ShiftAtZero("h(0) must be 0")
        self.c.setflags(write=False)

    @property
    def kind(self) -> str:
        return "shifted" if any(self.h) else "canonical"

    def __eq__(self, other) -> bool:
        if not isinstance(other, RotationSet):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.c, other.c)

    def __hash__(self) -> int:
        return hash((self.spec, self.c.tobytes()))

    def coefficient(self, k: ElementLike, mu: ElementLike) -> UnitPhase:
        s = self.spec
        return UnitPhase(int(self.c[s.code(k), s.code(mu)]), s.L)

    def values(self) -> np.ndarray:
        """Complex coefficient table ``c[k, mu]``."""
        return to_complex(self.c, self.spec.L)

    @cached_property
    def phi_exponents(self) -> np.ndarray:
        """``phi[t, u] = c_{t, u/t}`` for ``t != 0``; row 0 is all ones."""
        s = self.spec
        d = s.d
        phi = np.zeros((d, d), dtype=np.int64)
        for t in range(1, d):
            phi[t] = self.c[t, s.mul_table[s.inv_table[t]]]
        phi.setflags(write=False)
        return phi

    def shift(self, mu: ElementLike) -> FieldElement:
        return self.spec.element(self.h[self.spec.code(mu)])

    def to_json(self) -> dict:
        s = self.spec
        obj: dict = {"kind": self.kind, "h": [s.label(x) for x in self.h]}
        if self.basis is not None:
            obj["basis"] = self.basis.labels
            obj["signs"] = {s.label(mu): [int(b) for b in self.signs[mu]] for mu in range(s.d)}
        return obj


# -- coefficient tables ------------------------------------------------------

def _odd_table(spec: FieldSpec) -> np.ndarray:
    # c_{k,mu} = chi(-2^{-1} k^2 mu)
    s = spec
    k2 = s.mul_table[np.arange(s.d), np.arange(s.d)]
    coef = s.mul_table[s.neg_table[s.half_code], k2]
    return s.chi_table[s.mul_table[coef[:, None], np.arange(s.d)[None, :]]]


def _even_table(spec: FieldSpec, basis: Basis) -> np.ndarray:
    s = spec
    d, L = s.d, s.L
    b = np.array(basis.codes)
    mu = np.arange(d)
    # principal square root of chi(b_l^2 mu), which is +1 or -1
    sq = s.chi_table[s.mul_table[s.mul_table[b, b][:, None], mu[None, :]]]
    roots = np.where(sq == 0, 0, L // 4)  # shape (n, d)
    c = np.zeros((d, d), dtype=np.int64)
    digits = basis.expand_table
    for k in range(d):
        k_bits = digits[k]
        e = (k_bits[:, None] * roots).sum(axis=0)
        on = b[k_bits == 1]
        for i, j in itertools.combinations(on, 2):
            e = e + s.chi_table[s.mul_table[s.mul_table[i, j], mu]]
        c[k] = e % L
    return c


def _apply_shift(spec: FieldSpec, c: np.ndarray, h: Sequence[int]) -> np.ndarray:
    # c'_{k,mu} = c_{k,mu} chi(-k h(mu))
    s = spec
    hk = s.mul_table[:, np.asarray(h)]  # [k, mu] -> k h(mu)
    return (c - s.chi_table[hk]) % s.L


def default_even_basis(spec: FieldSpec) -> Basis:
    """Self-dual basis when one exists, otherwise the polynomial basis."""
    return self_dual_basis(spec) or polynomial_basis(spec)


def canonical_rotation_set_odd(spec: FieldSpec) -> RotationSet:
    if spec.p == 2:
        raise EvenCharacteristic("use canonical_rotation_set_even in characteristic 2")
    return RotationSet(spec, _odd_table(spec), (0,) * spec.d)


def canonical_rotation_set_even(spec: FieldSpec, basis: Basis | None = None,
                                signs: np.ndarray | Mapping | None = None) -> RotationSet:
    """Characteristic-two set from principal roots on ``basis``.

    ``signs`` optionally negates individual basis roots: an array of shape
    ``(d, n)`` of bits, or a mapping from slope to a length-``n`` bit list.
    """
    if spec.p != 2:
        raise OddCharacteristic("use canonical_rotation_set_odd for odd characteristic")
    basis = basis or default_even_basis(spec)
    base = RotationSet(spec, _even_table(spec, basis), (0,) * spec.d, basis,
                       np.zeros((spec.d, spec.n), dtype=np.int64))
    if signs is None:
        return base
    return shifted_rotation_set(base, signs_to_shift(spec, basis, _sign_array(spec, signs)))


def canonical_rotation_set(spec: FieldSpec, basis: Basis | None = None) -> RotationSet:
    if spec.p == 2:
        return canonical_rotation_set_even(spec, basis)
    return canonical_rotation_set_odd(spec)


def _sign_array(spec: FieldSpec, signs) -> np.ndarray:
    if isinstance(signs, Mapping):
        arr = np.zeros((spec.d, spec.n), dtype=np.int64)
        for mu, bits in signs.items():
            if len(bits) != spec.n:
                raise WrongLength(f"need {spec.n} sign bits per slope")
            arr[spec.code(mu)] = [int(b) % 2 for b in bits]
        return arr
    arr = np.asarray(signs, dtype=np.int64) % 2
    if arr.shape != (spec.d, spec.n):
        raise WrongLength(f"sign table must have shape ({spec.d}, {spec.n})")
    return arr


def signs_to_shift(spec: FieldSpec, basis: Basis, signs: np.ndarray) -> tuple[int, ...]:
    """``h(mu) = sum of the dual-basis elements whose roots are negated``."""
    dual = dual_basis(basis)
    h = []
    for mu in range(spec.d):
        h.append(dual.combine(signs[mu]).code)
    return tuple(h)


def shift_to_signs(spec: FieldSpec, basis: Basis, h: Sequence[int]) -> np.ndarray:
    """Sign bits ``tr(s_l h(mu))`` for every slope and basis element."""
    b = np.array(basis.codes)
    return spec.trace_table[spec.mul_table[np.asarray(h)[:, None], b[None, :]]].astype(np.int64)


def _shift_codes(spec: FieldSpec, h) -> tuple[int, ...]:
    if isinstance(h, Mapping):
        out = [0] * spec.d
        for mu, v in h.items():
            out[spec.code(mu)] = spec.code(v)
    elif callable(h):
        out = [spec.code(h(spec.element(mu))) for mu in range(spec.d)]
    else:
        if len(h) != spec.d:
            raise WrongLength(f"shift table must have {spec.d} entries")
        out = [spec.code(v) for v in h]
    if out[0] != 0:
        raise ShiftAtZero("h(0) must be 0")
    return tuple(out)


def shifted_rotation_set(rot: RotationSet, h) -> RotationSet:
    """The set ``V_mu X_{h(mu)}``; ``h`` is a table, mapping or callable."""
    s = rot.spec
    hc = _shift_codes(s, h)
    total = tuple(int(s.add_table[a, b]) for a, b in zip(rot.h, hc))
    c = _apply_shift(s, rot.c, hc)
    signs = shift_to_signs(s, rot.basis, total) if rot.basis is not None else None
    return RotationSet(s, c, total, rot.basis, signs)


def rotation_set_from_json(spec: FieldSpec, obj: Mapping) -> RotationSet:
    """Inverse of :meth:`RotationSet.to_json` (``h`` wins over ``signs``)."""
    basis = make_basis(spec, obj["basis"]) if obj.get("basis") else None
    if spec.p == 2:
        base = canonical_rotation_set_even(spec, basis)
    else:
        base = canonical_rotation_set_odd(spec)
    if obj.get("h") is not None:
        h = obj["h"]
        if isinstance(h, Mapping):
            return shifted_rotation_set(base, h)
        return shifted_rotation_set(base, [spec.parse(str(x)) for x in h])
    if obj.get("signs") is not None:
        if spec.p != 2:
            raise EvenCharacteristic("sign tables only exist in characteristic 2")
        return canonical_rotation_set_even(spec, base.basis, obj["signs"])
    return base


def functional_defect(rot: RotationSet) -> int:
    """Number of triples violating ``c_{k+a} = c_k c_a chi(-mu a k)`` (exact)."""
    s = rot.spec
    d = s.d
    bad = 0
    for mu in range(d):
        col = rot.c[:, mu]
        lhs = col[s.add_table]
        rhs = col[:, None] + col[None, :] - s.chi_table[s.mul_table[s.mul_table, mu]]
        bad += int(np.count_nonzero((lhs - rhs) % s.L))
    return bad


# -- operators ---------------------------------------------------------------

def v_matrix(rot: RotationSet, mu: int) -> np.ndarray:
    F = fourier_matrix(rot.spec)
    return (F * to_complex(rot.c[:, mu], rot.spec.L)) @ F.conj().T


def build_V(rot: RotationSet, mu: ElementLike, ordering: Ordering | None = None) -> Operator:
    """``V_mu = sum_k c_{k,mu} |k~><k~|`` for this set (shift included)."""
    s = rot.spec
    return Operator.from_codes(v_matrix(rot, s.code(mu)), _order(s, ordering))


def build_V_shifted(rot: RotationSet, mu: ElementLike, nu: ElementLike,
                    ordering: Ordering | None = None) -> Operator:
    """``V_{mu,nu} = V_mu X_nu``."""
    s = rot.spec
    m = v_matrix(rot, s.code(mu)) @ x_matrix(s, s.code(nu))
    return Operator.from_codes(m, _order(s, ordering))


def square_shift(spec: FieldSpec, mu: ElementLike) -> FieldElement:
    """``mu^(2^(n-1))``, the square root of ``mu`` in characteristic two."""
    m = spec.element(mu)
    return m ** (2 ** (spec.n - 1)) if m.code else m


def verify_square_even(rot: RotationSet, mu: ElementLike, tol: float = PRODUCT_TOL) -> FieldElement:
    """Check ``V_mu^2 = X_{mu^(2^(n-1))}`` for a canonical set and return the label.

    For a shifted set the shift commutes with ``V_mu`` and squares away, so the
    same law holds.
    """
    s = rot.spec
    if s.p != 2:
        raise OddCharacteristic("the square law is specific to characteristic 2")
    r = square_shift(s, mu)
    V = v_matrix(rot, s.code(mu))
    dev = np.max(np.abs(V @ V - x_matrix(s, r.code)))
    if dev >= tol:
        raise IdentityViolation(f"V_mu^2 != X_(mu^(2^(n-1))) for mu={s.label(s.code(mu))}: {dev:.3g}")
    return r


def inverse_label(spec: FieldSpec, mu: ElementLike, nu: ElementLike) -> tuple[FieldElement, FieldElement]:
    """Labels ``(mu, nu')`` with ``V_{mu,nu}^{-1} = V_{mu,nu'}`` in characteristic two."""
    if spec.p != 2:
        raise OddCharacteristic("the inverse rule is specific to characteristic 2")
    return spec.element(mu), square_shift(spec, mu) + spec.element(nu)


@dataclass(frozen=True, eq=False)
class CocycleTable:
    spec: FieldSpec = field(repr=False)
    f: np.ndarray = field(repr=False)

    def __call__(self, mu: ElementLike, mu2: ElementLike) -> FieldElement:
        s = self.spec
        return s.element(int(self.f[s.code(mu), s.code(mu2)]))

    def labels(self) -> list[list[str]]:
        return [[self.spec.label(x) for x in row] for row in self.f]


def cocycle(rot: RotationSet, *, check_matrices: bool = True, tol: float = PRODUCT_TOL) -> CocycleTable:
    """Solve ``c_{a,mu} c_{a,mu'} = chi(a f) c_{a,mu+mu'}`` for ``f(mu, mu')``.

    Each candidate ``f`` is tested on basis elements only and the winner is
    then confirmed on every ``a``.  With ``check_matrices`` the group law
    ``V_mu V_mu' = V_{mu+mu'} X_f`` is also checked as matrices.
    """
    s = rot.spec
    if s.p != 2:
        raise OddCharacteristic("the cocycle is defined in characteristic 2")
    d, L = s.d, s.L
    basis = rot.basis or polynomial_basis(s)
    b = np.array(basis.codes)
    chi_af = s.chi_table[s.mul_table]  # [a, f]
    f = np.zeros((d, d), dtype=np.int64)
    V = [v_matrix(rot, m) for m in range(d)] if check_matrices else None
    for mu in range(d):
        for mu2 in range(mu, d):
            tot = s.add_table[mu, mu2]
            need = (rot.c[:, mu] + rot.c[:, mu2] - rot.c[:, tot]) % L  # exponent of chi(a f)
            cand = np.flatnonzero(np.all(chi_af[b] == need[b][:, None], axis=0))
            if len(cand) != 1:
                raise NoSolution(f"no unique f({s.label(mu)}, {s.label(mu2)})")
            g = int(cand[0])
            if not np.array_equal(chi_af[:, g], need):
                raise NoSolution(f"f({s.label(mu)}, {s.label(mu2)}) fails off the basis")
            f[mu, mu2] = f[mu2, mu] = g
            if V is not None:
                dev = np.max(np.abs(V[mu] @ V[mu2] - V[tot] @ x_matrix(s, g)))
                if dev >= tol:
                    raise IdentityViolation(f"group law fails at ({s.label(mu)}, {s.label(mu2)}): {dev:.3g}")
    f.setflags(write=False)
    return CocycleTable(s, f)


def u_matrix(rot: RotationSet, mu: int) -> np.ndarray:
    return np.diag(to_complex(rot.c[rot.spec.neg_table, mu], rot.spec.L))


def build_U(rot: RotationSet, mu: ElementLike, ordering: Ordering | None = None) -> Operator:
    """``U_mu = F V_mu F^dagger = sum_k c_{-k,mu} |k><k|``."""
    s = rot.spec
    return Operator.from_codes(u_matrix(rot, s.code(mu)), _order(s, ordering))


def s_matrix(spec: FieldSpec, xi: int) -> np.ndarray:
    if xi == 0:
        raise ZeroSqueeze("squeeze factor must be nonzero")
    d = spec.d
    m = np.zeros((d, d), dtype=complex)
    m[np.arange(d), spec.mul_table[xi]] = 1  # <k| S |xi k> = 1
    return m


def build_S(spec: FieldSpec, xi: ElementLike, ordering: Ordering | None = None) -> Operator:
    """Squeezing ``S_xi = sum_k |k><xi k|``."""
    return Operator.from_codes(s_matrix(spec, spec.code(xi)), _order(spec, ordering))


def odd_group_defect(rot: RotationSet) -> float:
    """Largest deviation from ``V_mu V_mu' = V_{mu+mu'}`` over all pairs."""
    s = rot.spec
    if s.p == 2:
        raise EvenCharacteristic("the Abelian group law holds in odd characteristic")
    V = [v_matrix(rot, m) for m in range(s.d)]
    worst = 0.0
    for a in range(s.d):
        for b in range(a, s.d):
            worst = max(worst, float(np.max(np.abs(V[a] @ V[b] - V[s.add_table[a, b]]))))
    return worst


__all__ = [
    "MATRIX_TOL",
    "RotationSet",
    "CocycleTable",
    "canonical_rotation_set",
    "canonical_rotation_set_odd",
    "canonical_rotation_set_even",
    "default_even_basis",
    "shifted_rotation_set",
    "signs_to_shift",
    "shift_to_signs",
    "rotation_set_from_json",
    "functional_defect",
    "build_V",
    "build_V_shifted",
    "verify_square_even",
    "square_shift",
    "inverse_label",
    "cocycle",
    "build_U",
    "build_S",
    "odd_group_defect",
]
