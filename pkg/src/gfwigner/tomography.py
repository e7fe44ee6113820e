"""State reconstruction from line probabilities.

Expanding ``rho = sum_{k,l} f[k, l] D(k, l)`` with ``f = (1/d) Tr[D^dagger rho]``,
each line probability only sees the displacements on the matching ray:

    w(mu, nu) = <psi^mu_nu| rho |psi^mu_nu> = sum_k f[k, mu k] chi(k nu)
    w~(k)     = <k~| rho |k~>               = sum_l f[0, l] chi(-k l)

Both are inverted by a finite Fourier transform over the intercept.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import IncompleteTomogram, NonPhysicalState, ProvenanceMismatch
from .field import FieldSpec, Ordering
from .operators import MATRIX_TOL, Operator, _order, check_density, density_codes, displacement_stack
from .phase import to_complex
from .phase_space import MubFamily, line_probabilities
from .rotations import RotationSet


@dataclass(frozen=True, eq=False)
class Tomogram:
    """Line probabilities in code order: ``sloped[mu, nu]`` and ``vertical[k]``."""

    spec: FieldSpec
    sloped: np.ndarray
    vertical: np.ndarray
    rot: RotationSet | None = None
    shots: int | None = None
    seed: int | None = None

    def __post_init__(self):
        d = self.spec.d
        if self.sloped.shape != (d, d) or self.vertical.shape != (d,):
            raise IncompleteTomogram(f"need {d}x{d} sloped and {d} vertical entries")
        if not (np.all(np.isfinite(self.sloped)) and np.all(np.isfinite(self.vertical))):
            raise IncompleteTomogram("tomogram has missing entries")

    def normalization_defect(self) -> float:
        return float(max(np.max(np.abs(self.sloped.sum(axis=1) - 1)), abs(self.vertical.sum() - 1)))

    def min_entry(self) -> float:
        return float(min(self.sloped.min(), self.vertical.min()))

    def as_array(self) -> np.ndarray:
        """``(d+1, d)`` array with the vertical family last."""
        return np.vstack([self.sloped, self.vertical[None]])

    def to_json(self) -> dict:
        s = self.spec
        lab = s.label
        obj = {
            "sloped": {lab(mu): {lab(nu): float(self.sloped[mu, nu]) for nu in range(s.d)} for mu in range(s.d)},
            "vertical": {lab(k): float(self.vertical[k]) for k in range(s.d)},
            "shots": self.shots,
            "seed": self.seed,
        }
        if self.rot is not None:
            obj["rotations"] = self.rot.to_json()
        return obj


def tomogram_from_json(spec: FieldSpec, obj: Mapping, rot: RotationSet | None = None) -> Tomogram:
    d = spec.d
    sloped = np.full((d, d), np.nan)
    vertical = np.full(d, np.nan)
    try:
        for mu, row in obj["sloped"].items():
            for nu, v in row.items():
                sloped[spec.code(mu), spec.code(nu)] = float(v)
        for k, v in obj["vertical"].items():
            vertical[spec.code(k)] = float(v)
    except (KeyError, AttributeError) as exc:
        raise IncompleteTomogram(f"tomogram is missing {exc}") from exc
    if np.isnan(sloped).any():
        raise IncompleteTomogram("sloped line probabilities are incomplete")
    if np.isnan(vertical).any():
        raise IncompleteTomogram("vertical line probabilities are incomplete")
    if rot is None and obj.get("rotations") is not None:
        from .rotations import rotation_set_from_json

        rot = rotation_set_from_json(spec, obj["rotations"])
    return Tomogram(spec, sloped, vertical, rot, obj.get("shots"), obj.get("seed"))


def tomogram_of(rho, mubs: MubFamily) -> Tomogram:
    if isinstance(rho, Operator) and rho.ordering.spec != mubs.spec:
        raise ProvenanceMismatch("state and line states belong to different fields")
    probs = line_probabilities(density_codes(rho, mubs.spec), mubs)
    return Tomogram(mubs.spec, probs[:-1].copy(), probs[-1].copy(), mubs.rot)


def displacement_coefficients(rho, rot: RotationSet) -> np.ndarray:
    """``f[k, l] = (1/d) Tr[D(k, l)^dagger rho]`` in code order."""
    s = rot.spec
    r = density_codes(rho, s)
    D = displacement_stack(rot)
    return np.einsum("klij,ij->kl", D.conj(), r) / s.d


def tomogram_identity_defect(rho, t: Tomogram, rot: RotationSet) -> float:
    """Max gap in ``w(mu, nu) = sum_k f[k, mu k] chi(k nu)``."""
    s = rot.spec
    f = displacement_coefficients(rho, rot)
    idx = np.arange(s.d)
    chi = to_complex(s.chi_table[s.mul_table], s.L)  # [k, nu]
    pred = np.array([f[idx, s.mul_table[mu]] @ chi for mu in range(s.d)])
    return float(np.max(np.abs(pred - t.sloped)))


@dataclass
class Reconstruction:
    rho: Operator
    coefficients: np.ndarray = field(repr=False)
    asymmetry: float
    origin_discrepancy: float

    def projected(self) -> Operator:
        """Nearest physical state by eigenvalue clipping."""
        return Operator.from_codes(psd_projection(self.rho.in_codes()), self.rho.ordering)


def reconstruct(t: Tomogram, rot: RotationSet | None = None, ordering: Ordering | None = None) -> Reconstruction:
    """Invert a complete tomogram.

    ``f[k, l] = (1/d) sum_nu w(l/k, nu) chi(-k nu)`` for ``k != 0`` and
    ``f[0, l] = (1/d) sum_k w~(k) chi(k l)``; then ``rho = sum f D`` and the
    result is symmetrized (the removed anti-Hermitian part is reported as
    ``asymmetry``).  ``f[0, 0]`` comes from the vertical family; its
    disagreement with the normalization of each sloped family is reported
    as ``origin_discrepancy``.
    """
    rot = rot or t.rot
    if rot is None:
        raise ProvenanceMismatch("reconstruction needs the rotation set that defined the line states")
    if t.rot is not None and rot != t.rot:
        raise ProvenanceMismatch("tomogram was taken with a different rotation set")
    s = t.spec
    d, L = s.d, s.L
    chi = s.chi_table[s.mul_table]  # [k, nu] exponents
    f = np.zeros((d, d), dtype=complex)
    for k in range(1, d):
        slopes = s.mul_table[s.inv_table[k]]  # l -> l/k
        f[k] = t.sloped[slopes] @ to_complex(-chi[k], L) / d
    f[0] = to_complex(chi, L) @ t.vertical / d
    origin = float(np.max(np.abs(t.sloped.sum(axis=1) / d - f[0, 0])))
    rho = np.einsum("kl,klij->ij", f, displacement_stack(rot))
    asym = float(np.max(np.abs(rho - rho.conj().T)))
    rho = (rho + rho.conj().T) / 2
    return Reconstruction(Operator.from_codes(rho, _order(s, ordering)), f, asym, origin)


def simulate_counts(rho, mubs: MubFamily, shots: int, seed: int | None = None) -> Tomogram:
    """Replace each basis distribution with multinomial frequencies.

    One generator is created per call from ``seed``; bases are sampled in
    slope code order, then the vertical family.
    """
    if shots < 1:
        raise ValueError("shots must be positive")
    s = mubs.spec
    r = density_codes(rho, s)
    check_density(r)
    probs = line_probabilities(r, mubs)
    rng = np.random.default_rng(seed)
    freq = np.empty_like(probs)
    for i, row in enumerate(probs):
        pv = np.clip(row, 0, None)
        freq[i] = rng.multinomial(shots, pv / pv.sum()) / shots
    return Tomogram(s, freq[:-1], freq[-1], mubs.rot, shots, seed)


# -- state utilities -----------------------------------------------------------------

def random_pure_state(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random vector from a normalized complex Gaussian."""
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def random_density(d: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Normalized Wishart matrix ``G G^dagger / Tr``."""
    g = rng.normal(size=(d, rank or d)) + 1j * rng.normal(size=(d, rank or d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def psd_projection(rho: np.ndarray) -> np.ndarray:
    """Clip negative eigenvalues of the Hermitian part and renormalize the trace."""
    h = (rho + rho.conj().T) / 2
    vals, vecs = np.linalg.eigh(h)
    vals = np.clip(vals, 0, None)
    if vals.sum() == 0:
        raise NonPhysicalState("no positive part to project onto")
    vals /= vals.sum()
    return (vecs * vals) @ vecs.conj().T


def _psd_sqrt(m: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh((m + m.conj().T) / 2)
    return (vecs * np.sqrt(np.clip(vals, 0, None))) @ vecs.conj().T


def fidelity(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Uhlmann fidelity ``(Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2``."""
    r = _psd_sqrt(np.asarray(rho))
    vals = np.linalg.eigvalsh(r @ np.asarray(sigma) @ r)
    return float(np.sum(np.sqrt(np.clip(vals, 0, None))) ** 2)


__all__ = [
    "MATRIX_TOL",
    "Tomogram",
    "tomogram_from_json",
    "tomogram_of",
    "displacement_coefficients",
    "tomogram_identity_defect",
    "Reconstruction",
    "reconstruct",
    "simulate_counts",
    "random_pure_state",
    "random_density",
    "psd_projection",
    "fidelity",
]
