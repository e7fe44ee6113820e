"""Phase-point kernel, Wigner map, mutually unbiased bases and line sums.

The kernel is ``Delta(a, b) = (1/d) sum_{k,l} chi(a l - b k) D(k, l)``.
Its matrix elements reduce to

    Delta(a, b)[x, y] = (1/d) chi(a (x - y)) G[x - b, x - y],
    G[s, l] = sum_k chi(k s) phi(k, l),

which costs O(d^4) for all d^2 kernels at once.  Arrays here are in code
order; orderings are applied when results are wrapped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import numpy as np

from .errors import EvenCharacteristic, IdentityViolation, MixedOrdering, ProvenanceMismatch
from .field import ElementLike, FieldSpec, Ordering
from .geometry import Line, striation_table
from .operators import (
    MATRIX_TOL,
    PRODUCT_TOL,
    Ket,
    Operator,
    _order,
    _to_codes,
    _to_ordered,
    code_matrix,
    density_codes,
    displacement_matrix,
    fourier_matrix,
)
from .phase import to_complex
from .rotations import RotationSet, s_matrix, u_matrix, v_matrix


# -- kernel --------------------------------------------------------------------

def _g_table(rot: RotationSet) -> np.ndarray:
    """``G[s, l] = sum_k chi(k s) phi(k, l)``."""
    s = rot.spec
    chi = to_complex(s.chi_table[s.mul_table], s.L)  # [s, k], symmetric
    phi = to_complex(rot.phi_exponents, s.L)  # [k, l]
    return chi @ phi


def kernel_array(rot: RotationSet) -> np.ndarray:
    """All kernels in code order, shape ``(d, d, d, d)`` indexed ``[a, b, x, y]``."""
    s = rot.spec
    d = s.d
    G = _g_table(rot)
    x = np.arange(d)
    lam = s.sub_table[x[:, None], x[None, :]]  # [x, y] -> x - y
    sft = s.sub_table[x[None, :], x[:, None]]  # [b, x] -> x - b
    chi_al = to_complex(s.chi_table[s.mul_table[:, lam]], s.L)  # [a, x, y]
    g_b = G[sft[:, :, None], lam[None, :, :]]  # [b, x, y]
    return chi_al[:, None] * g_b[None, :] / d


@dataclass(frozen=True, eq=False)
class KernelSet:
    rot: RotationSet
    ordering: Ordering
    delta: np.ndarray = field(repr=False)  # code order, [a, b, x, y]

    @property
    def spec(self) -> FieldSpec:
        return self.rot.spec

    def operator(self, a: ElementLike, b: ElementLike) -> Operator:
        s = self.spec
        return Operator.from_codes(self.delta[s.code(a), s.code(b)], self.ordering)

    def __getitem__(self, ab) -> Operator:
        return self.operator(*ab)


def build_kernel(rot: RotationSet, ordering: Ordering | None = None) -> KernelSet:
    return KernelSet(rot, _order(rot.spec, ordering), kernel_array(rot))


def kernel_by_displacements(rot: RotationSet) -> np.ndarray:
    """Kernel from the defining sum over displacement operators (slow path)."""
    s = rot.spec
    d = s.d
    out = np.zeros((d, d, d, d), dtype=complex)
    for k in range(d):
        for l in range(d):
            D = displacement_matrix(rot, k, l)
            # chi(a l - b k) for all (a, b)
            ph = s.chi_table[s.mul_table[:, l]][:, None] - s.chi_table[s.mul_table[:, k]][None, :]
            out += to_complex(ph, s.L)[:, :, None, None] * D
    return out / d


@dataclass
class KernelReport:
    d: int
    hermiticity: float
    normalization: float
    covariance: float
    orthogonality: float
    covariance_checks: int
    overlap_constant: float
    tol: float = MATRIX_TOL

    @property
    def passed(self) -> bool:
        return max(self.hermiticity, self.normalization, self.covariance, self.orthogonality) < self.tol

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "hermiticity": self.hermiticity,
            "normalization": self.normalization,
            "covariance": self.covariance,
            "covariance_checks": self.covariance_checks,
            "orthogonality": self.orthogonality,
            "overlap_constant": self.overlap_constant,
            "tolerance": self.tol,
            "passed": self.passed,
        }


def check_kernel(k: KernelSet, *, exhaustive: bool | None = None, samples: int = 200,
                 seed: int = 0, tol: float = MATRIX_TOL) -> KernelReport:
    """Run the four kernel postulates and measure the overlap constant.

    Covariance ``D(k,l) Delta(a,b) D(k,l)^dagger = Delta(a+k, b+l)`` is checked
    for every tuple when ``exhaustive`` (default for d <= 4), otherwise on
    ``samples`` seeded random tuples.
    """
    rot = k.rot
    s = rot.spec
    d = s.d
    K = k.delta
    herm = float(np.max(np.abs(K - np.conj(np.swapaxes(K, 2, 3)))))
    norm = float(np.max(np.abs(K.sum(axis=(0, 1)) / d - np.eye(d))))
    flat = K.reshape(d * d, d * d)
    gram = flat.conj() @ flat.T  # Tr[Delta_i Delta_j^dagger] = sum conj(D_j) D_i
    orth = float(np.max(np.abs(gram - d * np.eye(d * d))))

    if exhaustive is None:
        exhaustive = d <= 4
    cov = 0.0
    checks = 0
    if exhaustive:
        for kk in range(d):
            for ll in range(d):
                D = displacement_matrix(rot, kk, ll)
                moved = np.einsum("ij,abjk,lk->abil", D, K, D.conj())
                target = K[s.add_table[:, kk]][:, s.add_table[:, ll]]
                cov = max(cov, float(np.max(np.abs(moved - target))))
                checks += d * d
    else:
        rng = np.random.default_rng(seed)
        for kk, ll, a, b in rng.integers(0, d, size=(samples, 4)):
            D = displacement_matrix(rot, kk, ll)
            moved = D @ K[a, b] @ D.conj().T
            target = K[s.add_table[a, kk], s.add_table[b, ll]]
            cov = max(cov, float(np.max(np.abs(moved - target))))
            checks += 1
    return KernelReport(d, herm, norm, cov, orth, checks, overlap_constant(k, seed=seed), tol)


def overlap_constant(k: KernelSet, seed: int = 0) -> float:
    """The constant ``c`` in ``Tr(f g) = c sum W_f W_g``, measured on random operators."""
    d = k.spec.d
    rng = np.random.default_rng(seed)
    f = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    wf = np.einsum("abxy,yx->ab", k.delta, f)
    wg = np.einsum("abxy,yx->ab", k.delta, g)
    return float((np.trace(f @ g) / np.sum(wf * wg)).real)


# -- Wigner grids ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class WignerGrid:
    """Real grid ``W[alpha, beta]`` with axes following ``ordering``.

    ``imag_max`` is the largest imaginary part discarded when the grid was
    formed from traces.
    """

    values: np.ndarray
    ordering: Ordering
    rot: RotationSet | None = None
    imag_max: float = 0.0

    @classmethod
    def from_codes(cls, w: np.ndarray, ordering: Ordering, rot: RotationSet | None = None) -> WignerGrid:
        imag = float(np.max(np.abs(np.imag(w)))) if np.iscomplexobj(w) else 0.0
        return cls(_to_ordered(np.real(w).astype(float), ordering), ordering, rot, imag)

    @property
    def spec(self) -> FieldSpec:
        return self.ordering.spec

    def in_codes(self) -> np.ndarray:
        return _to_codes(self.values, self.ordering)

    def at(self, a: ElementLike, b: ElementLike) -> float:
        o = self.ordering
        return float(self.values[o.perm(a), o.perm(b)])

    def reorder(self, ordering: Ordering) -> WignerGrid:
        return WignerGrid(_to_ordered(self.in_codes(), ordering), ordering, self.rot, self.imag_max)

    def marginals(self) -> tuple[np.ndarray, np.ndarray]:
        """``(p, q)`` in ordering order: ``p[alpha] = (1/d) sum_beta W`` is the
        probability of the conjugate-basis state, ``q[beta] = (1/d) sum_alpha W``
        that of the position state."""
        d = self.spec.d
        return self.values.sum(axis=1) / d, self.values.sum(axis=0) / d

    def line_sums(self) -> np.ndarray:
        """``(1/d) sum W`` over every line: rows are striations (slopes in code
        order, vertical last), columns intercept codes."""
        return striation_sums(self.in_codes(), self.spec)

    def allclose(self, other: WignerGrid, tol: float = MATRIX_TOL) -> bool:
        return max_diff(self, other) < tol


def max_diff(a: WignerGrid, b: WignerGrid) -> float:
    if a.spec != b.spec:
        raise MixedOrdering("grids over different fields")
    return float(np.max(np.abs(a.in_codes() - b.in_codes())))


def striation_sums(w: np.ndarray, spec: FieldSpec) -> np.ndarray:
    d = spec.d
    out = np.zeros((d + 1, d))
    for i, st in enumerate(striation_table(spec)):
        out[i] = np.bincount(st.line_index().ravel(), weights=np.real(w).ravel(), minlength=d) / d
    return out


def _trace_with(k: KernelSet, f: np.ndarray) -> np.ndarray:
    # Tr[f Delta(a,b)] = sum_{x,y} Delta[a,b,x,y] f[y,x]
    return np.einsum("abxy,yx->ab", k.delta, f)


def wigner_map(f, k: KernelSet, *, hermitian: bool = True) -> WignerGrid | np.ndarray:
    """Symbol ``W_f(a, b) = Tr[f Delta(a, b)]``.

    Returns a real :class:`WignerGrid` for Hermitian input, or the complex
    array in code order when ``hermitian`` is False.
    """
    if isinstance(f, Operator) and f.ordering != k.ordering:
        raise MixedOrdering("operator and kernel use different orderings")
    w = _trace_with(k, code_matrix(f, k.spec))
    if not hermitian:
        return w
    return WignerGrid.from_codes(w, k.ordering, k.rot)


def wigner(rho, k: KernelSet) -> WignerGrid:
    """Wigner grid of a state given as density matrix, Ket or amplitude vector."""
    if isinstance(rho, (Operator, Ket)) and rho.ordering != k.ordering:
        raise MixedOrdering("state and kernel use different orderings")
    return WignerGrid.from_codes(_trace_with(k, density_codes(rho, k.spec)), k.ordering, k.rot)


def inverse_map(w, k: KernelSet) -> Operator:
    """``f = (1/d) sum W_f(a, b) Delta(a, b)``; accepts a grid or a code-order array."""
    if isinstance(w, WignerGrid):
        if w.ordering != k.ordering:
            raise MixedOrdering("grid and kernel use different orderings")
        w = w.in_codes()
    f = np.einsum("ab,abxy->xy", np.asarray(w), k.delta) / k.spec.d
    return Operator.from_codes(f, k.ordering)


def wigner_of_density(rho, rot: RotationSet, ordering: Ordering | None = None) -> WignerGrid:
    """Wigner grid from the explicit triple sum

        W(a, b) = (1/d) sum_{g,m,n} chi(g (n - b) + a (n - m)) phi(g, n - m) rho[m, n],

    independent of the kernel matrices.
    """
    s = rot.spec
    d, L = s.d, s.L
    r = density_codes(rho, s)
    idx = np.arange(d)
    diff = s.sub_table[idx[None, :], idx[:, None]]  # [m, n] -> n - m
    # exponent of chi(a (n - m)) for [a, m, n]
    e_a = s.chi_table[s.mul_table[:, diff]]
    w = np.zeros((d, d), dtype=complex)
    for g in range(d):
        e_phi = rot.phi_exponents[g, diff]  # [m, n]
        e_b = s.chi_table[s.mul_table[g, s.sub_table[idx[None, :], idx[:, None]]]]  # [b, n]: g (n - b)
        # sum over m, n of rho * chi(a(n-m)) phi * chi(g(n-b))
        amn = to_complex(e_a + e_phi[None], L) * r[None]  # [a, m, n]
        w += np.einsum("amn,bn->ab", amn, to_complex(e_b, L))
    return WignerGrid.from_codes(w / d, _order(s, ordering), rot)


# -- mutually unbiased bases -----------------------------------------------------

@dataclass(frozen=True, eq=False)
class MubFamily:
    """Line states in code order.

    ``sloped[mu, nu]`` is ``X_nu V_mu |0>`` (line ``beta = mu alpha + nu``),
    ``vertical[nu]`` is ``Z_nu F |0>`` (line ``alpha = nu``).
    ``eigen[mu, nu, a]`` is the exponent of the eigenvalue of
    ``Z_a X_{mu a}`` on ``sloped[mu, nu]``.
    """

    rot: RotationSet
    ordering: Ordering
    sloped: np.ndarray = field(repr=False)
    vertical: np.ndarray = field(repr=False)
    eigen: np.ndarray = field(repr=False)

    @property
    def spec(self) -> FieldSpec:
        return self.rot.spec

    def state(self, mu: ElementLike | None, nu: ElementLike) -> Ket:
        """Line state; ``mu=None`` selects the vertical family."""
        s = self.spec
        v = self.vertical[s.code(nu)] if mu is None else self.sloped[s.code(mu), s.code(nu)]
        return Ket.from_codes(v, self.ordering)

    def line_state(self, line: Line) -> np.ndarray:
        if line.vertical:
            return self.vertical[line.intercept]
        return self.sloped[line.slope, line.intercept]

    def bases(self) -> np.ndarray:
        """All d+1 bases as ``(d+1, d, d)``: [basis, state, component], vertical last."""
        return np.concatenate([self.sloped, self.vertical[None]], axis=0)

    def overlap_report(self) -> dict:
        B = self.bases()
        d = self.spec.d
        nb = B.shape[0]
        flat = B.reshape(-1, d)
        prob = np.abs(flat.conj() @ flat.T) ** 2
        same = np.kron(np.eye(nb), np.ones((d, d))).astype(bool)
        ortho = max(float(np.max(np.abs(B[i].conj() @ B[i].T - np.eye(d)))) for i in range(nb))
        cross = float(np.max(np.abs(prob[~same] - 1 / d)))
        return {"orthonormality": ortho, "unbiasedness": cross}


def build_mubs(rot: RotationSet, ordering: Ordering | None = None, tol: float = PRODUCT_TOL) -> MubFamily:
    s = rot.spec
    d, L = s.d, s.L
    idx = np.arange(d)
    sloped = np.zeros((d, d, d), dtype=complex)
    for mu in range(d):
        v0 = v_matrix(rot, mu)[:, 0]
        # (X_nu v)[x] = v[x - nu]
        sloped[mu] = v0[s.sub_table[idx[None, :], idx[:, None]]]
    vertical = fourier_matrix(s).T.copy()  # row nu = F|nu> = Z_nu F|0>
    # eigenvalue of Z_a X_{mu a}: chi(a nu) conj(c_{a, mu})
    eigen = (s.chi_table[s.mul_table][None, :, :] - rot.c.T[:, None, :]) % L  # [mu, nu, a]
    fam = MubFamily(rot, _order(s, ordering), sloped, vertical, eigen)
    _check_eigen(fam, tol)
    return fam


def _check_eigen(fam: MubFamily, tol: float) -> None:
    s = fam.spec
    d, L = s.d, s.L
    idx = np.arange(d)
    for mu in range(d):
        for a in range(d):
            b = int(s.mul_table[mu, a])
            zx = to_complex(s.chi_table[s.mul_table[a, s.add_table[b]]], L)  # row factor chi(a (x + b))
            for nu in range(d):
                v = fam.sloped[mu, nu]
                out = np.zeros(d, dtype=complex)
                out[s.add_table[b]] = zx * v
                lam = to_complex(fam.eigen[mu, nu, a], L)
                dev = np.max(np.abs(out - lam * v))
                if dev >= tol:
                    raise IdentityViolation(
                        f"line state ({s.label(mu)}, {s.label(nu)}) is not an eigenvector of "
                        f"Z_a X_(mu a) at a={s.label(a)}: {dev:.3g}")


def line_sum(w: WignerGrid, line: Line) -> float:
    if line.spec != w.spec:
        raise MixedOrdering("line and grid over different fields")
    vals = w.in_codes()
    pts = line.point_codes()
    return float(vals[pts[:, 0], pts[:, 1]].sum() / w.spec.d)


def line_probabilities(rho, mubs: MubFamily) -> np.ndarray:
    """``<psi|rho|psi>`` for all lines, laid out like :func:`striation_sums`."""
    r = density_codes(rho, mubs.spec)
    B = mubs.bases()
    return np.real(np.einsum("lsi,ij,lsj->ls", B.conj(), r, B))


@dataclass
class LineReport:
    max_violation: float
    marginal_violation: float
    tol: float = MATRIX_TOL

    @property
    def passed(self) -> bool:
        return max(self.max_violation, self.marginal_violation) < self.tol


def verify_line_identity(rho, k: KernelSet, mubs: MubFamily, tol: float = MATRIX_TOL) -> LineReport:
    """Compare line sums of the grid with line-state probabilities, all lines."""
    if k.rot != mubs.rot:
        raise ProvenanceMismatch("kernel and line states come from different rotation sets")
    s = k.spec
    r = density_codes(rho, s)
    w = _trace_with(k, r)
    sums = striation_sums(w, s)
    probs = line_probabilities(r, mubs)
    d = s.d
    pos = np.real(np.diag(r))
    conj = probs[-1]
    marg = max(float(np.max(np.abs(np.real(w).sum(axis=0) / d - pos))),
               float(np.max(np.abs(np.real(w).sum(axis=1) / d - conj))))
    return LineReport(float(np.max(np.abs(sums - probs))), marg, tol)


def line_indicator(spec: FieldSpec, line: Line) -> np.ndarray:
    """``delta`` grid of a line in code order."""
    g = np.zeros((spec.d, spec.d))
    pts = line.point_codes()
    g[pts[:, 0], pts[:, 1]] = 1
    return g


# -- covariance in odd characteristic --------------------------------------------

@dataclass
class CovarianceReport:
    which: str
    parameter: str
    adjoint: bool
    deviation: float
    tol: float = MATRIX_TOL

    @property
    def passed(self) -> bool:
        return self.deviation < self.tol


def _transform(rot: RotationSet, which: str, x: int) -> np.ndarray:
    if which == "V":
        return v_matrix(rot, x)
    if which == "U":
        return u_matrix(rot, x)
    if which == "S":
        return s_matrix(rot.spec, x)
    raise ValueError(f"unknown transformation {which!r}")


def covariant_transform_check(rho, rot: RotationSet, which: str, param: ElementLike, *,
                              adjoint: bool = False, k: KernelSet | None = None,
                              tol: float = MATRIX_TOL) -> CovarianceReport:
    """Check how the grid moves when the state is conjugated by ``V_mu``,
    ``U_mu`` or ``S_xi`` (odd characteristic).

    With ``rho' = M rho M^dagger``:

    ``V_mu``: ``W'(a, b) = W(a, b - mu a)``
    ``U_mu``: ``W'(a, b) = W(a + mu b, b)``
    ``S_xi``: ``W'(a, b) = W(a / xi, xi b)``

    ``adjoint=True`` conjugates by ``M^dagger`` instead, which inverts each
    map (``b + mu a``, ``a - mu b``, ``(xi a, b / xi)``).
    """
    s = rot.spec
    if s.p == 2:
        raise EvenCharacteristic("covariance under V, U, S is checked for odd characteristic")
    k = k or build_kernel(rot)
    r = density_codes(rho, s)
    x = s.code(param)
    which = which.upper()
    M = _transform(rot, which, x)
    if adjoint:
        M = M.conj().T
    w = np.real(_trace_with(k, r))
    w2 = np.real(_trace_with(k, M @ r @ M.conj().T))
    a = np.arange(s.d)[:, None]
    b = np.arange(s.d)[None, :]
    mul = s.mul_table
    shift = s.sub_table if not adjoint else s.add_table
    if which == "V":
        expected = w[a, shift[b, mul[x, a]]]
    elif which == "U":
        back = s.add_table if not adjoint else s.sub_table
        expected = w[back[a, mul[x, b]], b]
    else:
        xi, xinv = (x, int(s.inv_table[x]))
        if not adjoint:
            xi, xinv = xinv, xi
        expected = w[mul[xi, a], mul[xinv, b]]
    return CovarianceReport(which, s.label(x), adjoint, float(np.max(np.abs(w2 - expected))), tol)


def squeeze_composition(rot: RotationSet, mu: ElementLike, xi: ElementLike) -> np.ndarray:
    """``V_{-xi(xi-1)/mu} U^dagger_{-mu/xi} V_{(xi-1)/mu} U^dagger_mu`` in code order.

    Proportional to ``S_xi^dagger`` for every ``mu != 0`` and ``xi != 0``.
    """
    s = rot.spec
    if s.p == 2:
        raise EvenCharacteristic("the composition law is checked for odd characteristic")
    m, g = s.element(mu), s.element(xi)
    a1 = (g - s.one) / m
    a2 = -(m / g)
    a3 = -(g * (g - s.one)) / m
    ud = lambda t: u_matrix(rot, t.code).conj().T
    return v_matrix(rot, a3.code) @ ud(a2) @ v_matrix(rot, a1.code) @ ud(m)


def squeeze_composition_defect(rot: RotationSet, mu: ElementLike, xi: ElementLike) -> float:
    """Distance between ``S_xi^dagger`` and the V/U composition up to a global phase."""
    s = rot.spec
    M = squeeze_composition(rot, mu, xi)
    S = s_matrix(s, s.code(xi)).conj().T
    i, j = np.unravel_index(np.argmax(np.abs(S)), S.shape)
    ph = M[i, j] / S[i, j]
    if abs(abs(ph) - 1) > MATRIX_TOL:
        return float("inf")
    return float(np.max(np.abs(M - ph * S)))


__all__ = [
    "KernelSet",
    "KernelReport",
    "WignerGrid",
    "MubFamily",
    "LineReport",
    "CovarianceReport",
    "build_kernel",
    "kernel_array",
    "kernel_by_displacements",
    "check_kernel",
    "overlap_constant",
    "wigner_map",
    "wigner",
    "inverse_map",
    "wigner_of_density",
    "build_mubs",
    "line_sum",
    "line_probabilities",
    "line_indicator",
    "striation_sums",
    "verify_line_identity",
    "covariant_transform_check",
    "squeeze_composition",
    "squeeze_composition_defect",
    "max_diff",
]
