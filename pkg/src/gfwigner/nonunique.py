"""Wigner functions from shifted rotation sets and counting how many differ.

Replacing ``V_mu`` by ``V_mu X_{h(mu)}`` changes the displacement phases to
``phi'(g, e) = phi(g, e) chi(-g h(e/g))``.  Writing ``e = n - m`` and
``s = e/g``, the grid splits into a part that ignores ``h`` plus one term
per nonzero slope ``s``:

    W'(a, b) = base(a, b) + sum_{s != 0} G_s[h(s)](a, b)
    G_s[v](a, b) = (1/d) sum_{g != 0} C[g, g s] chi(-g v) chi(-g b) chi(a g s)
    C[g, e] = sum_m rho[m, m + e] chi(g (m + e)) phi(g, e)

The characters ``chi(-g b) chi(a g s)`` are independent for distinct
``(g, s)``, so two values ``v, v'`` at slope ``s`` give the same term iff
``tr(g (v - v')) = 0`` for every ``g`` with ``C[g, g s] != 0``.  The number
of distinct grids is therefore ``prod_s p^(rank_s)`` where ``rank_s`` is the
Z_p-rank of those ``g``; brute-force enumeration over all ``d^(d-1)`` shift
functions confirms it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ShiftAtZero, TooLarge
from .field import FieldSpec, Ordering
from .operators import MATRIX_TOL, _order, density_codes
from .phase import to_complex
from .phase_space import WignerGrid, build_kernel, striation_sums, wigner
from .rotations import RotationSet, _shift_codes, shifted_rotation_set

#: Largest field for which all d^(d-1) shift functions are enumerated.
MAX_BRUTE_FORCE_D = 8
#: Quantization step used to hash grids before exact comparison.
HASH_SCALE = 1e7


def alternate_wigner(rho, rot: RotationSet, h, ordering: Ordering | None = None) -> WignerGrid:
    """Grid built from the set ``V_mu X_{h(mu)}`` (``h`` relative to ``rot``)."""
    new = shifted_rotation_set(rot, h)
    return wigner(density_codes(rho, rot.spec), build_kernel(new, _order(rot.spec, ordering)))


def _grid(rho: np.ndarray, rot: RotationSet) -> np.ndarray:
    return np.real(wigner(rho, build_kernel(rot)).in_codes())


def constant_shift_form(rho, rot: RotationSet, kappa) -> np.ndarray:
    """``W(a, b + k) - rho[b + k, b + k] + rho[b, b]``: the grid for
    ``h(mu) = k`` on every nonzero slope (code order)."""
    s = rot.spec
    r = density_codes(rho, s)
    w = _grid(r, rot)
    k = s.code(kappa)
    idx = np.arange(s.d)
    bk = s.add_table[idx, k]
    diag = np.real(np.diag(r))
    return w[:, bk] - diag[bk][None, :] + diag[None, :]


def linear_shift_form(rho, rot: RotationSet, kappa) -> np.ndarray:
    """``W(a - k, b) + q(a) - q(a - k)`` with ``q(a) = (1/d) sum_b W(a, b)``:
    the grid for ``h(x) = k x`` (code order)."""
    s = rot.spec
    r = density_codes(rho, s)
    w = _grid(r, rot)
    k = s.code(kappa)
    idx = np.arange(s.d)
    ak = s.sub_table[idx, k]
    q = w.sum(axis=1) / s.d
    return w[ak, :] + q[:, None] - q[ak][:, None]


def shifted_line_defect(rho, rot: RotationSet, h) -> float:
    """Largest gap between line sums of the shifted grid on ``(mu, nu)`` and of
    the original grid on ``(mu, nu + h(mu))``; vertical lines must agree."""
    s = rot.spec
    r = density_codes(rho, s)
    hc = _shift_codes(s, h)
    new = striation_sums(_grid(r, shifted_rotation_set(rot, hc)), s)
    old = striation_sums(_grid(r, rot), s)
    idx = np.arange(s.d)
    moved = np.array([old[mu, s.add_table[idx, hc[mu]]] for mu in range(s.d)])
    return float(max(np.max(np.abs(new[:-1] - moved)), np.max(np.abs(new[-1] - old[-1]))))


# -- additive decomposition ------------------------------------------------------

def _coefficients(r: np.ndarray, rot: RotationSet) -> np.ndarray:
    """``C[g, e] = sum_m rho[m, m+e] chi(g (m+e)) phi(g, e)``, from the support of rho."""
    s = rot.spec
    d, L = s.d, s.L
    C = np.zeros((d, d), dtype=complex)
    ms, ns = np.nonzero(np.abs(r) > 0)
    for m, n in zip(ms, ns):
        e = s.sub_table[n, m]
        C[:, e] += r[m, n] * to_complex(s.chi_table[s.mul_table[:, n]] + rot.phi_exponents[:, e], L)
    return C


@dataclass(frozen=True, eq=False)
class ShiftDecomposition:
    """``W'_h = base + sum_j parts[j, h(slopes[j])]`` (code order, real)."""

    spec: FieldSpec
    base: np.ndarray
    parts: np.ndarray  # [slope index, value, a, b]
    coefficients: np.ndarray = field(repr=False)

    @property
    def slopes(self) -> np.ndarray:
        return np.arange(1, self.spec.d)

    def grid(self, h) -> np.ndarray:
        hc = _shift_codes(self.spec, h)
        return self.base + sum(self.parts[j, hc[s]] for j, s in enumerate(self.slopes))


def decompose(rho, rot: RotationSet) -> ShiftDecomposition:
    s = rot.spec
    d, L = s.d, s.L
    r = density_codes(rho, s)
    C = _coefficients(r, rot)
    idx = np.arange(d)
    chi_gb = to_complex(-s.chi_table[s.mul_table], L)  # [g, b] -> chi(-g b)
    chi_ae = to_complex(s.chi_table[s.mul_table], L)  # [a, e] -> chi(a e)
    # base: g = 0 or e = 0
    base = (np.outer(chi_ae[:, :].dot(C[0]), np.ones(d))  # g = 0: sum_e C[0,e] chi(a e)
            + np.outer(np.ones(d), C[1:, 0] @ chi_gb[1:]))  # e = 0, g != 0
    base = base / d
    parts = np.zeros((d - 1, d, d, d))
    for j, sl in enumerate(range(1, d)):
        e_of_g = s.mul_table[idx, sl]  # e = g s
        coef = C[idx, e_of_g]  # [g]
        coef[0] = 0
        # term[g][a, b] = coef[g] chi(a e_g) chi(-g b)
        terms = coef[:, None, None] * chi_ae[:, e_of_g].T[:, :, None] * chi_gb[:, None, :]  # [g, a, b]
        shift = chi_gb[:, :].T  # [v, g] -> chi(-g v)
        parts[j] = np.real(np.tensordot(shift, terms, axes=(1, 0))) / d
    return ShiftDecomposition(s, np.real(base), parts, C)


def _rank_mod_p(vectors: np.ndarray, p: int) -> int:
    m = np.array(vectors, dtype=np.int64) % p
    if m.size == 0:
        return 0
    rank = 0
    rows, cols = m.shape
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if m[r, c]), None)
        if piv is None:
            continue
        m[[rank, piv]] = m[[piv, rank]]
        m[rank] = (m[rank] * pow(int(m[rank, c]), p - 2, p)) % p
        for r in range(rows):
            if r != rank and m[r, c]:
                m[r] = (m[r] - m[r, c] * m[rank]) % p
        rank += 1
    return rank


@dataclass
class ConditionCount:
    """Classes per nonzero slope and their product."""

    per_slope: dict[str, int]
    active: dict[str, list[str]]
    total: int


def count_by_conditions(rho, rot: RotationSet, tol: float = 1e-12) -> ConditionCount:
    """Distinct-grid count from the trace conditions, without enumeration.

    At slope ``s`` the values ``v`` and ``v'`` agree iff
    ``tr(g (v - v')) = 0`` for every active ``g`` (``C[g, g s] != 0``).
    """
    s = rot.spec
    C = _coefficients(density_codes(rho, s), rot)
    per, active, total = {}, {}, 1
    for sl in range(1, s.d):
        gs = [g for g in range(1, s.d) if abs(C[g, s.mul_table[g, sl]]) > tol]
        rank = _rank_mod_p(np.array([s.coeffs_of(g) for g in gs]).reshape(-1, s.n), s.p)
        per[s.label(sl)] = s.p**rank
        active[s.label(sl)] = [s.label(g) for g in gs]
        total *= s.p**rank
    return ConditionCount(per, active, total)


# -- brute force -----------------------------------------------------------------

@dataclass
class DistinctReport:
    spec: FieldSpec
    total_structures: int
    distinct: int
    class_sizes: list[int]
    representatives: list[tuple[int, ...]]
    grids: list[np.ndarray] = field(repr=False)
    conditions: ConditionCount | None = None

    def to_json(self) -> dict:
        s = self.spec
        obj = {
            "total_structures": self.total_structures,
            "distinct": self.distinct,
            "class_sizes": self.class_sizes,
            "representatives": [[s.label(x) for x in h] for h in self.representatives],
        }
        if self.conditions is not None:
            obj["condition_count"] = self.conditions.total
            obj["condition_classes_per_slope"] = self.conditions.per_slope
        return obj


def _digits(t: np.ndarray, d: int, width: int) -> np.ndarray:
    out = np.empty((len(t), width), dtype=np.int64)
    for j in range(width):
        t, out[:, j] = np.divmod(t, d)
    return out


def count_distinct_wigner(state, rot: RotationSet, *, max_d: int = MAX_BRUTE_FORCE_D,
                          chunk: int = 1 << 16, tol: float = MATRIX_TOL, seed: int = 12345) -> DistinctReport:
    """Enumerate every shift function ``h`` (``h(0) = 0``) and count distinct grids.

    Grids are quantized and hashed in vectorized chunks; the representatives
    of the hash classes are then merged when they agree within ``tol``.
    """
    s = rot.spec
    d = s.d
    if d > max_d:
        raise TooLarge(f"full enumeration of {d}^{d - 1} shift functions refused for d > {max_d}")
    dec = decompose(state, rot)
    width = d - 1
    total = d**width
    rng = np.random.default_rng(seed)
    m1 = rng.integers(0, 2**63, size=d * d, dtype=np.uint64) * np.uint64(2) + np.uint64(1)
    m2 = rng.integers(0, 2**63, size=d * d, dtype=np.uint64) * np.uint64(2) + np.uint64(1)
    classes: dict[tuple[int, int], list[int]] = {}  # key -> [first index, count]
    parts = dec.parts.reshape(width, d, d * d)
    base = dec.base.reshape(d * d)
    for start in range(0, total, chunk):
        t = np.arange(start, min(start + chunk, total), dtype=np.int64)
        dig = _digits(t, d, width)
        w = np.broadcast_to(base, (len(t), d * d)).copy()
        for j in range(width):
            w += parts[j, dig[:, j]]
        q = np.rint(w * HASH_SCALE).astype(np.int64).view(np.uint64)
        keys = np.stack([(q * m1).sum(axis=1), (q * m2).sum(axis=1)], axis=1)
        uniq, first, counts = np.unique(keys, axis=0, return_index=True, return_counts=True)
        for key, f, c in zip(map(tuple, uniq.tolist()), first, counts):
            if key in classes:
                classes[key][1] += int(c)
            else:
                classes[key] = [int(t[f]), int(c)]
    reps = sorted(classes.values())
    grids: list[np.ndarray] = []
    hs: list[tuple[int, ...]] = []
    sizes: list[int] = []
    for idx, count in reps:
        h = (0,) + tuple(int(x) for x in _digits(np.array([idx]), d, width)[0])
        g = dec.grid(h)
        for i, other in enumerate(grids):
            if np.max(np.abs(g - other)) < tol:
                sizes[i] += count
                break
        else:
            grids.append(g)
            hs.append(h)
            sizes.append(count)
    return DistinctReport(s, total, len(grids), sizes, hs, grids, count_by_conditions(state, rot))


__all__ = [
    "MAX_BRUTE_FORCE_D",
    "alternate_wigner",
    "constant_shift_form",
    "linear_shift_form",
    "shifted_line_defect",
    "ShiftDecomposition",
    "decompose",
    "ConditionCount",
    "count_by_conditions",
    "DistinctReport",
    "count_distinct_wigner",
]
