"""Field-labelled states as n-particle states of p-level systems.

Expanding ``alpha = sum_j a_j b_j`` in a basis ``b`` sends ``|alpha>`` to
``|a_1> (x) ... (x) |a_n>``.  Flat tensor index: ``sum_j a_j p^(j-1)``, so
``a_1`` varies fastest and an operator acting on slot ``i`` alone is
``kron(O_n, ..., O_1)`` with ``O_i`` in place.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import BasisMismatch, MixedStateUnsupported, NotSorted, WrongLength
from .field import Basis, FieldSpec, Ordering, dual_basis
from .operators import Ket, KetLike, Operator, _order, code_vector, z_exponents
from .phase import to_complex

SCHMIDT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class TensorState:
    """``amplitudes[a_1, ..., a_n]`` with the basis that defines the digits."""

    amplitudes: np.ndarray
    basis: Basis

    def __post_init__(self):
        s = self.basis.spec
        if self.amplitudes.shape != (s.p,) * s.n:
            raise BasisMismatch(f"expected shape {(s.p,) * s.n}, got {self.amplitudes.shape}")

    @property
    def spec(self) -> FieldSpec:
        return self.basis.spec

    def flat(self) -> np.ndarray:
        """Vector with ``a_1`` the fastest digit."""
        return self.amplitudes.transpose(tuple(reversed(range(self.spec.n)))).reshape(-1)

    @classmethod
    def from_flat(cls, vec: np.ndarray, basis: Basis) -> TensorState:
        s = basis.spec
        arr = np.asarray(vec, dtype=complex).reshape((s.p,) * s.n)
        return cls(arr.transpose(tuple(reversed(range(s.n)))), basis)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def amplitude(self, digits: Sequence[int]) -> complex:
        return complex(self.amplitudes[tuple(digits)])

    def terms(self, tol: float = SCHMIDT_TOL) -> dict[str, complex]:
        """Nonzero amplitudes keyed by ket strings such as ``"01"`` (a_1 first)."""
        out = {}
        for digits in np.ndindex(*self.amplitudes.shape):
            a = self.amplitudes[digits]
            if abs(a) > tol:
                out["".join(str(x) for x in digits)] = complex(a)
        return out

    def to_json(self) -> dict:
        v = self.flat()
        s = self.spec
        return {
            "dim": s.d,
            "re": [float(x) for x in v.real],
            "im": [float(x) for x in v.imag],
            "basis": self.basis.labels,
            "p": s.p,
            "n": s.n,
        }


def tensor_from_json(spec: FieldSpec, obj: dict) -> TensorState:
    if obj.get("p") != spec.p or obj.get("n") != spec.n:
        raise BasisMismatch("tensor state does not match the field")
    from .field import make_basis

    basis = make_basis(spec, obj["basis"])
    vec = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
    if vec.shape != (spec.d,):
        raise BasisMismatch(f"expected {spec.d} amplitudes")
    return TensorState.from_flat(vec, basis)


def tensor_permutation(b: Basis) -> np.ndarray:
    """``perm[code]`` = flat tensor index of that element's digit tuple."""
    s = b.spec
    return b.expand_table @ (s.p ** np.arange(s.n))


def to_physical(state: KetLike, b: Basis) -> TensorState:
    s = b.spec
    if isinstance(state, Ket) and state.spec != s:
        raise BasisMismatch("state and basis belong to different fields")
    try:
        v = code_vector(state, s)
    except Exception as exc:
        raise BasisMismatch(str(exc)) from exc
    flat = np.zeros(s.d, dtype=complex)
    flat[tensor_permutation(b)] = v
    return TensorState.from_flat(flat, b)


def from_physical(t: TensorState, b: Basis | None = None, ordering: Ordering | None = None) -> Ket:
    if b is not None and (b.spec != t.spec or b.codes != t.basis.codes):
        raise BasisMismatch("tensor state was built over a different basis")
    if ordering is not None and ordering.spec != t.spec:
        raise BasisMismatch("ordering belongs to a different field")
    v = t.flat()[tensor_permutation(t.basis)]
    return Ket.from_codes(v, _order(t.spec, ordering))


def tensor_matrix(m: np.ndarray, b: Basis) -> np.ndarray:
    """Code-order matrix rewritten in flat tensor indexing."""
    perm = tensor_permutation(b)
    out = np.empty_like(m)
    out[np.ix_(perm, perm)] = m
    return out


def slot_operator(ops: Sequence[np.ndarray]) -> np.ndarray:
    """``ops[0]`` acts on slot 1; returns ``kron(ops[n-1], ..., ops[0])``."""
    return reduce(np.kron, reversed(list(ops)))


def single_z_exponents(p: int, L: int) -> np.ndarray:
    """Exponents (in units of 1/L turns) of the p-level ``Z = diag(w^a)``."""
    return np.arange(p) * (L // p)


@dataclass
class FactorizationReport:
    slot: int
    element: str
    dual_basis: list[str]
    slot_ok: bool
    general_ok: bool
    max_deviation: float

    @property
    def passed(self) -> bool:
        return self.slot_ok and self.general_ok


def factorize_Z(spec: FieldSpec, b: Basis, i: int) -> FactorizationReport:
    """Check ``Z_{b'_i} = I (x) .. Z .. (x) I`` (slot ``i``, 1-based) and
    ``Z_beta = Z^{c_1} (x) ... (x) Z^{c_n}`` for ``beta = sum c_j b'_j``.

    Phases are compared as integer exponents; ``max_deviation`` is the
    float gap of the slot-``i`` matrices.
    """
    if b.spec != spec:
        raise BasisMismatch("basis belongs to a different field")
    if not 1 <= i <= spec.n:
        raise ValueError(f"slot must lie in 1..{spec.n}")
    dual = dual_basis(b)
    perm = tensor_permutation(b)
    digits = b.expand_table  # digits[code, j]
    zp = single_z_exponents(spec.p, spec.L)
    L = spec.L

    def field_exps(beta: int) -> np.ndarray:
        e = np.empty(spec.d, dtype=np.int64)
        e[perm] = z_exponents(spec, beta)
        return e % L

    def slot_exps(coeffs: Sequence[int]) -> np.ndarray:
        # flat index f has digits a_j; exponent sum_j c_j * zp[a_j]
        flat_digits = np.empty_like(digits)
        flat_digits[perm] = digits
        return (flat_digits @ np.asarray(coeffs) * (L // spec.p)) % L

    target = dual.codes[i - 1]
    unit = [0] * spec.n
    unit[i - 1] = 1
    lhs = field_exps(target)
    rhs = slot_exps(unit)
    slot_ok = bool(np.array_equal(lhs, rhs))
    eye = np.eye(spec.p)
    kron = slot_operator([np.diag(to_complex(zp, L)) if j == i - 1 else eye for j in range(spec.n)])
    dev = float(np.max(np.abs(np.diag(to_complex(lhs, L)) - kron)))

    dual_digits = dual.expand_table
    general_ok = all(
        np.array_equal(field_exps(beta), slot_exps(dual_digits[beta])) for beta in range(spec.d)
    )
    return FactorizationReport(i, spec.label(target), dual.labels, slot_ok, general_ok, dev)


@dataclass
class SchmidtReport:
    cut: tuple[int, ...]
    rank: int
    singular_values: np.ndarray = field(repr=False)

    @property
    def product(self) -> bool:
        return self.rank == 1

    @property
    def verdict(self) -> str:
        return "product" if self.product else "entangled"


def product_check(t: TensorState, cut: Iterable[int], tol: float = SCHMIDT_TOL) -> SchmidtReport:
    """Schmidt rank across ``cut`` (1-based slots on one side) vs the rest."""
    if not isinstance(t, TensorState):
        raise MixedStateUnsupported("only pure tensor states have a Schmidt decomposition")
    n = t.spec.n
    side = tuple(sorted(set(int(c) for c in cut)))
    if not side or any(not 1 <= c <= n for c in side):
        raise ValueError(f"cut slots must lie in 1..{n}")
    rest = tuple(j for j in range(1, n + 1) if j not in side)
    arr = t.amplitudes / t.norm()
    axes = [c - 1 for c in side] + [c - 1 for c in rest]
    mat = arr.transpose(axes).reshape(t.spec.p ** len(side), -1)
    sv = np.linalg.svd(mat, compute_uv=False)
    return SchmidtReport(side, int(np.sum(sv > tol)), sv)


def free_hamiltonian(spec: FieldSpec, ordering: Ordering | None, energies: Sequence[float]) -> Operator:
    """``H = sum_i E_i |alpha_i><alpha_i|`` with ``alpha_i`` the i-th element of the ordering."""
    e = np.asarray(energies, dtype=float)
    if e.shape != (spec.d,):
        raise WrongLength(f"need {spec.d} energies, got {e.size}")
    if np.any(np.diff(e) < 0):
        raise NotSorted("energies must be non-decreasing")
    return Operator(np.diag(e).astype(complex), _order(spec, ordering))


__all__ = [
    "SCHMIDT_TOL",
    "TensorState",
    "tensor_from_json",
    "tensor_permutation",
    "to_physical",
    "from_physical",
    "tensor_matrix",
    "slot_operator",
    "FactorizationReport",
    "factorize_Z",
    "SchmidtReport",
    "product_check",
    "free_hamiltonian",
]
