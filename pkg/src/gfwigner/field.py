"""Arithmetic in GF(p^n).

Elements are coefficient vectors over Z_p with respect to the polynomial
basis ``{1, t, ..., t^(n-1)}``, where ``t`` is a root of the field's
irreducible polynomial.  Internally every element also has an integer
*code* ``sum_j c_j p^j`` (constant coefficient least significant); all bulk
computations run on lookup tables indexed by codes.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    ElementParse,
    LengthMismatch,
    MissingBasis,
    MissingPrimitive,
    MixedFields,
    NotPrime,
    ReduciblePolynomial,
    SingularSystem,
    UnsupportedSize,
    WrongDegree,
    ZeroInverse,
    FieldError,
)
from .phase import UnitPhase, phase_modulus

#: Largest field order accepted by :func:`make_field` unless overridden.
MAX_ORDER = 64

# Monic irreducible polynomials, constant term first.
DEFAULT_POLYNOMIALS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (3, 2): (2, 1, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 1, 1),
    (7, 2): (3, 1, 1),
}


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p**0.5) + 1))


# -- polynomials over Z_p (lists, constant term first) ---------------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _poly_trim([x % p for x in a])
    m = _poly_trim([x % p for x in m])
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        q = (a[-1] * inv_lead) % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - q * mi) % p
        _poly_trim(a)
    return a


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= n/2."""
    n = len(_poly_trim(list(poly))) - 1
    if n < 1:
        return False
    for deg in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _poly_mod(poly, list(low) + [1], p):
                return False
    return True


def _first_irreducible(p: int, n: int) -> tuple[int, ...]:
    for low in itertools.product(range(p), repeat=n):
        cand = tuple(reversed(low)) + (1,)
        if cand[0] and is_irreducible(cand, p):
            return cand
    raise ReduciblePolynomial(f"no irreducible polynomial of degree {n} over Z_{p}")


# -- field context ---------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    p: int
    n: int
    poly: tuple[int, ...]

    @property
    def d(self) -> int:
        return self.p**self.n

    @property
    def order(self) -> int:
        return self.d

    @property
    def L(self) -> int:
        """Modulus of the :class:`UnitPhase` group used with this field."""
        return phase_modulus(self.p)

    @property
    def is_prime_field(self) -> bool:
        return self.n == 1

    @property
    def characteristic(self) -> int:
        return self.p

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.n})"

    # codes <-> coefficient vectors
    def coeffs_of(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    def code_of(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self.n:
            raise LengthMismatch(f"expected {self.n} coefficients, got {len(coeffs)}")
        return sum((int(c) % self.p) * self.p**j for j, c in enumerate(coeffs))

    # lookup tables --------------------------------------------------------
    @cached_property
    def add_table(self) -> np.ndarray:
        d, p = self.d, self.p
        digits = np.array([self.coeffs_of(c) for c in range(d)], dtype=np.int64).reshape(d, self.n)
        weights = p ** np.arange(self.n)
        tab = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        return _frozen(tab)

    @cached_property
    def mul_table(self) -> np.ndarray:
        d = self.d
        tab = np.zeros((d, d), dtype=np.int64)
        for a in range(d):
            ca = self.coeffs_of(a)
            for b in range(a, d):
                cb = self.coeffs_of(b)
                prod = [0] * (2 * self.n - 1)
                for i, x in enumerate(ca):
                    if x:
                        for j, y in enumerate(cb):
                            prod[i + j] += x * y
                r = _poly_mod(prod, self.poly, self.p)
                r = r + [0] * (self.n - len(r))
                tab[a, b] = tab[b, a] = self.code_of(r)
        return _frozen(tab)

    @cached_property
    def neg_table(self) -> np.ndarray:
        return _frozen(np.array([self.code_of([-c for c in self.coeffs_of(a)]) for a in range(self.d)]))

    @cached_property
    def sub_table(self) -> np.ndarray:
        return _frozen(self.add_table[:, self.neg_table])

    @cached_property
    def inv_table(self) -> np.ndarray:
        """Multiplicative inverses; entry 0 is a sentinel 0."""
        inv = np.zeros(self.d, dtype=np.int64)
        ones = np.argwhere(self.mul_table == 1)
        inv[ones[:, 0]] = ones[:, 1]
        return _frozen(inv)

    @cached_property
    def frobenius_table(self) -> np.ndarray:
        return _frozen(np.array([self._pow_code(a, self.p) for a in range(self.d)]))

    @cached_property
    def trace_table(self) -> np.ndarray:
        # tr(a) = a + a^p + ... + a^(p^(n-1))
        acc = np.arange(self.d)
        cur = np.arange(self.d)
        for _ in range(self.n - 1):
            cur = self.frobenius_table[cur]
            acc = self.add_table[acc, cur]
        if np.any(acc >= self.p):
            raise FieldError("trace left the prime field; polynomial is not irreducible")
        return _frozen(acc)

    @cached_property
    def chi_table(self) -> np.ndarray:
        """Exponent (mod ``L``) of the additive character ``chi(a)``."""
        return _frozen(self.trace_table * (self.L // self.p))

    @cached_property
    def primitive_code(self) -> int:
        d = self.d
        if d == 2:
            return 1
        for a in range(1, d):
            if self._mult_order(a) == d - 1:
                return a
        raise MissingPrimitive("no primitive element found")  # unreachable for a field

    @cached_property
    def log_table(self) -> np.ndarray:
        """``log[a] = k`` with ``g^k = a`` for the primitive ``g``, k in 1..d-1; log[0] = 0."""
        log = np.zeros(self.d, dtype=np.int64)
        x = 1
        for k in range(1, self.d):
            x = int(self.mul_table[x, self.primitive_code])
            log[x] = k
        return _frozen(log)

    @cached_property
    def half_code(self) -> int:
        """Code of 2^{-1} (odd characteristic only)."""
        if self.p == 2:
            raise FieldError("2 is not invertible in characteristic 2")
        return int(self.inv_table[self.add_table[1, 1]])

    def _pow_code(self, a: int, k: int) -> int:
        result, base = 1, a
        while k:
            if k & 1:
                result = int(self.mul_table[result, base])
            base = int(self.mul_table[base, base])
            k >>= 1
        return result

    def _mult_order(self, a: int) -> int:
        x, k = a, 1
        while x != 1:
            x = int(self.mul_table[x, a])
            k += 1
        return k

    # element construction -------------------------------------------------
    def element(self, x: "ElementLike") -> FieldElement:
        """Coerce codes, coefficient vectors, strings, or elements of this field."""
        if isinstance(x, FieldElement):
            if x.spec != self:
                raise MixedFields(f"element of {x.spec} used with {self}")
            return x
        if isinstance(x, (int, np.integer)):
            x = int(x)
            if not 0 <= x < self.d:
                raise ElementParse(f"code {x} out of range for {self}")
            return FieldElement(self, self.coeffs_of(x))
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (tuple, list)):
            if len(x) != self.n:
                raise LengthMismatch(f"expected {self.n} coefficients, got {len(x)}")
            return FieldElement(self, tuple(int(c) % self.p for c in x))
        raise ElementParse(f"cannot interpret {x!r} as an element of {self}")

    def code(self, x: "ElementLike") -> int:
        if isinstance(x, (int, np.integer)) and 0 <= x < self.d:
            return int(x)
        return self.element(x).code

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, self.coeffs_of(c)) for c in range(self.d)]

    @property
    def zero(self) -> FieldElement:
        return self.element(0)

    @property
    def one(self) -> FieldElement:
        return self.element(1)

    @property
    def theta(self) -> FieldElement:
        """The polynomial root ``t`` (equal to ``x`` as a polynomial)."""
        if self.n == 1:
            return self.element(int(-self.poly[0]) % self.p)
        return self.element(self.p)

    def parse(self, s: str) -> FieldElement:
        """Parse ``"0"``, ``"1"``, ``"t^k"`` (power of the primitive element)
        or, for prime fields, any integer literal."""
        s = s.strip().replace(" ", "")
        m = re.fullmatch(r"(?:t|θ|σ|theta|sigma)(?:\^(-?\d+))?", s)
        if m:
            k = int(m.group(1)) if m.group(1) is not None else 1
            return self.element(self._pow_code(self.primitive_code, k % (self.d - 1)))
        if re.fullmatch(r"-?\d+", s):
            v = int(s)
            if self.n > 1 and v not in (0, 1):
                raise ElementParse(f"{s!r}: use 't^k' for elements of {self}")
            return self.element(v % self.p)
        m = re.fullmatch(r"\[([-\d,]*)\]", s)
        if m:
            return self.element([int(c) for c in m.group(1).split(",") if c])
        raise ElementParse(f"cannot parse element {s!r}")

    def label(self, code: int) -> str:
        """Text label of an element: integers for prime fields, else 0/1/t^k."""
        code = int(code)
        if self.n == 1:
            return str(code)
        if code == 0:
            return "0"
        if code == 1:
            return "1"
        return f"t^{int(self.log_table[code])}"

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "poly": list(self.poly)}


ElementLike = Union["FieldElement", int, str, Sequence[int]]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


def make_field(p: int, n: int = 1, poly: Sequence[int] | None = None, *, max_order: int = MAX_ORDER) -> FieldSpec:
    """Validated field context for GF(p^n).

    ``poly`` lists coefficients constant term first and must be monic of
    degree ``n`` and irreducible over Z_p; when omitted a built-in default is
    used.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1:
        raise WrongDegree("extension degree must be >= 1")
    if p**n > max_order:
        raise UnsupportedSize(f"GF({p}^{n}) has {p**n} elements, above the cap {max_order}")
    if poly is None:
        if n == 1:
            poly = (0, 1)
        else:
            poly = DEFAULT_POLYNOMIALS.get((p, n)) or _first_irreducible(p, n)
    poly = tuple(int(c) % p for c in poly)
    while len(poly) > 1 and poly[-1] == 0:
        poly = poly[:-1]
    if len(poly) - 1 != n:
        raise WrongDegree(f"polynomial has degree {len(poly) - 1}, expected {n}")
    if poly[-1] != 1:
        raise WrongDegree("polynomial must be monic")
    if not is_irreducible(poly, p):
        raise ReduciblePolynomial(f"{format_poly(poly)} is reducible over Z_{p}")
    return FieldSpec(p, n, poly)


def format_poly(poly: Sequence[int]) -> str:
    terms = []
    for k in range(len(poly) - 1, -1, -1):
        c = poly[k]
        if not c:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        coef = str(c) if (c != 1 or k == 0) else ""
        terms.append(coef + mono)
    return " + ".join(terms) or "0"


# -- elements ----------------------------------------------------------------

@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec = field(repr=False)
    coeffs: tuple[int, ...]

    @property
    def code(self) -> int:
        return self.spec.code_of(self.coeffs)

    def __int__(self) -> int:
        return self.code

    def __index__(self) -> int:
        return self.code

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise MixedFields(f"{self.spec} vs {other.spec}")
            return other.code
        if isinstance(other, (int, np.integer)):
            return self.spec.element(int(other) % self.spec.p).code
        return NotImplemented

    def _wrap(self, code) -> FieldElement:
        return FieldElement(self.spec, self.spec.coeffs_of(int(code)))

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.spec.add_table[self.code, o])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.spec.sub_table[self.code, o])

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.spec.sub_table[o, self.code])

    def __neg__(self):
        return self._wrap(self.spec.neg_table[self.code])

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.spec.mul_table[self.code, o])

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if self.code == 0:
            raise ZeroInverse("0 has no multiplicative inverse")
        return self._wrap(self.spec.inv_table[self.code])

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * self._wrap(o).inverse()

    def __pow__(self, k: int) -> FieldElement:
        if k < 0:
            return self.inverse() ** (-k)
        if self.code == 0:
            return self if k else self._wrap(1)
        return self._wrap(self.spec._pow_code(self.code, k))

    def __bool__(self) -> bool:
        return self.code != 0

    def trace(self) -> int:
        return int(self.spec.trace_table[self.code])

    def __str__(self) -> str:
        return self.spec.label(self.code)


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def trace(a: FieldElement) -> int:
    """Field trace ``a + a^p + ... + a^(p^(n-1))`` as an integer in [0, p)."""
    return a.trace()


def character(a: FieldElement) -> UnitPhase:
    """Additive character ``exp(2 pi i tr(a) / p)``."""
    return UnitPhase(int(a.spec.chi_table[a.code]), a.spec.L)


def primitive_element(spec: FieldSpec) -> FieldElement:
    """First element in code order whose multiplicative order is d - 1."""
    return spec.element(spec.primitive_code)


# -- bases -------------------------------------------------------------------

@dataclass(frozen=True)
class Basis:
    spec: FieldSpec = field(repr=False)
    codes: tuple[int, ...]
    kind: str = "custom"

    def __post_init__(self):
        if len(self.codes) != self.spec.n:
            raise LengthMismatch(f"a basis of {self.spec} needs {self.spec.n} elements")
        if len(set(self._combine_table.values())) != self.spec.d:
            raise SingularSystem(f"elements {self.labels} are linearly dependent")

    @property
    def elements(self) -> list[FieldElement]:
        return [self.spec.element(c) for c in self.codes]

    @property
    def labels(self) -> list[str]:
        return [self.spec.label(c) for c in self.codes]

    @cached_property
    def _combine_table(self) -> dict[tuple[int, ...], int]:
        spec = self.spec
        out = {}
        for coeffs in itertools.product(range(spec.p), repeat=spec.n):
            acc = 0
            for c, b in zip(coeffs, self.codes):
                term = int(spec.mul_table[c, b])  # c < p is also the code of c*1
                acc = int(spec.add_table[acc, term])
            out[coeffs] = acc
        return out

    @cached_property
    def expand_table(self) -> np.ndarray:
        """``expand_table[code]`` = coordinate vector of that element."""
        tab = np.zeros((self.spec.d, self.spec.n), dtype=np.int64)
        for coeffs, code in self._combine_table.items():
            tab[code] = coeffs
        tab.setflags(write=False)
        return tab

    def expand(self, a: ElementLike) -> tuple[int, ...]:
        return tuple(int(x) for x in self.expand_table[self.spec.code(a)])

    def combine(self, coeffs: Sequence[int]) -> FieldElement:
        if len(coeffs) != self.spec.n:
            raise LengthMismatch(f"expected {self.spec.n} coefficients, got {len(coeffs)}")
        return self.spec.element(self._combine_table[tuple(int(c) % self.spec.p for c in coeffs)])

    def gram(self) -> np.ndarray:
        """Trace form ``tr(b_i b_j)``."""
        s = self.spec
        c = np.array(self.codes)
        return s.trace_table[s.mul_table[np.ix_(c, c)]]

    @property
    def is_self_dual(self) -> bool:
        return bool(np.array_equal(self.gram(), np.eye(self.spec.n, dtype=np.int64)))


def expand(a: ElementLike, b: Basis) -> tuple[int, ...]:
    return b.expand(a)


def combine(coeffs: Sequence[int], b: Basis) -> FieldElement:
    return b.combine(coeffs)


def make_basis(spec: FieldSpec, elements: Iterable[ElementLike], kind: str = "custom") -> Basis:
    return Basis(spec, tuple(spec.code(e) for e in elements), kind)


def polynomial_basis(spec: FieldSpec) -> Basis:
    return Basis(spec, tuple(spec.p**j for j in range(spec.n)), "polynomial")


def normal_basis(spec: FieldSpec, generator: ElementLike) -> Basis:
    """``{a, a^p, ..., a^(p^(n-1))}``; raises SingularSystem if dependent."""
    a = spec.code(generator)
    codes = [a]
    for _ in range(spec.n - 1):
        codes.append(int(spec.frobenius_table[codes[-1]]))
    return Basis(spec, tuple(codes), "normal")


def dual_basis(b: Basis) -> Basis:
    """The basis ``b'`` with ``tr(b_i b'_j) = delta_ij``.

    Each ``b'_j`` is the unique solution of n linear conditions over Z_p,
    found by scanning the field.
    """
    spec = b.spec
    bc = np.array(b.codes)
    traces = spec.trace_table[spec.mul_table[bc]]  # shape (n, d)
    out = []
    for j in range(spec.n):
        target = np.zeros(spec.n, dtype=np.int64)
        target[j] = 1
        hits = np.flatnonzero(np.all(traces == target[:, None], axis=0))
        if len(hits) != 1:
            raise SingularSystem("trace form is degenerate on this basis")
        out.append(int(hits[0]))
    kind = "self-dual" if tuple(out) == b.codes else "custom"
    return Basis(spec, tuple(out), kind)


def self_dual_basis(spec: FieldSpec) -> Basis | None:
    """A self-dual basis, preferring a normal one; ``None`` if none exists.

    Generators are tried in primitive-power order (t, t^2, ...), which makes
    the choice deterministic: ``{t, t^2}`` for GF(4), ``{t^3, t^6, t^5}`` for
    GF(8) with x^3 + x + 1.
    """
    g = spec.primitive_code
    powers = [spec._pow_code(g, k) for k in range(1, spec.d)]
    for a in powers:
        try:
            nb = normal_basis(spec, a)
        except SingularSystem:
            continue
        if nb.is_self_dual:
            return Basis(spec, nb.codes, "self-dual")
    if spec.d > 256:
        return None
    for combo in itertools.combinations(powers, spec.n):
        try:
            cand = Basis(spec, combo, "self-dual")
        except SingularSystem:
            continue
        if cand.is_self_dual:
            return cand
    return None


def basis_catalog(spec: FieldSpec) -> list[Basis]:
    """Bases offered by default: polynomial, its dual, the default self-dual
    basis and every other normal basis (sets counted once)."""
    out: list[Basis] = []

    seen: set[frozenset[int]] = set()

    def push(b: Basis | None):
        if b is not None and frozenset(b.codes) not in seen:
            seen.add(frozenset(b.codes))
            out.append(b)

    pb = polynomial_basis(spec)
    push(pb)
    push(dual_basis(pb))
    push(self_dual_basis(spec))
    for a in range(1, spec.d):
        try:
            push(normal_basis(spec, a))
        except SingularSystem:
            continue
    return out


# -- orderings -----------------------------------------------------------------

@dataclass(frozen=True)
class Ordering:
    """A bijection between field elements and axis indices ``0..d-1``.

    ``codes[i]`` is the code of the element placed at index ``i``.
    """

    spec: FieldSpec = field(repr=False)
    strategy: str
    codes: tuple[int, ...]
    basis: tuple[int, ...] | None = None

    def __post_init__(self):
        if sorted(self.codes) != list(range(self.spec.d)):
            raise FieldError("ordering is not a bijection onto the field")

    @cached_property
    def index(self) -> np.ndarray:
        """``index[code]`` = axis position of that element."""
        idx = np.empty(self.spec.d, dtype=np.int64)
        idx[list(self.codes)] = np.arange(self.spec.d)
        idx.setflags(write=False)
        return idx

    @cached_property
    def code_array(self) -> np.ndarray:
        a = np.array(self.codes, dtype=np.int64)
        a.setflags(write=False)
        return a

    def perm(self, a: ElementLike) -> int:
        return int(self.index[self.spec.code(a)])

    def element_at(self, i: int) -> FieldElement:
        return self.spec.element(self.codes[i])

    @property
    def labels(self) -> list[str]:
        return [self.spec.label(c) for c in self.codes]

    @property
    def is_identity(self) -> bool:
        return self.codes == tuple(range(self.spec.d))

    def to_json(self) -> dict:
        obj = {"strategy": self.strategy, "elements": self.labels}
        if self.basis is not None:
            obj["basis"] = [self.spec.label(c) for c in self.basis]
        return obj


def default_ordering(spec: FieldSpec) -> Ordering:
    """Radix ordering over the polynomial basis (the identity on codes)."""
    return Ordering(spec, "radix", tuple(range(spec.d)), polynomial_basis(spec).codes)


def ordering(spec: FieldSpec, strategy: str = "radix", *, basis: Basis | None = None,
             primitive: ElementLike | None = None) -> Ordering:
    """Arrange the field elements on an axis.

    ``radix``: index ``sum_j a_j p^(j-1)`` from the coordinates in ``basis``
    (``a_1`` least significant).  ``primitive``: ``0 -> 0`` and
    ``g^k -> k``.  ``trace``: sorted by trace value, then by power of ``g``
    (zero first).  Prime fields always get the natural order 0..p-1.
    """
    strategy = {"primitive-power": "primitive", "trace-major": "trace"}.get(strategy, strategy)
    if strategy not in ("radix", "primitive", "trace"):
        raise FieldError(f"unknown ordering strategy {strategy!r}")
    if strategy == "radix" and basis is None:
        raise MissingBasis("radix ordering needs a basis")
    if spec.n == 1:
        return Ordering(spec, strategy, tuple(range(spec.d)), basis.codes if basis else None)
    if strategy == "radix":
        if basis.spec != spec:
            raise MixedFields("basis belongs to another field")
        weights = spec.p ** np.arange(spec.n)
        keys = basis.expand_table @ weights
        codes = tuple(int(c) for c in np.argsort(keys, kind="stable"))
        return Ordering(spec, "radix", codes, basis.codes)
    if primitive is None:
        raise MissingPrimitive(f"{strategy} ordering needs a primitive element")
    g = spec.code(primitive)
    if g == 0 or spec._mult_order(g) != spec.d - 1:
        raise MissingPrimitive(f"{spec.label(g)} is not primitive")
    powers = {spec._pow_code(g, k): k for k in range(1, spec.d)}
    power_of = lambda c: 0 if c == 0 else powers[c]
    if strategy == "primitive":
        codes = tuple(sorted(range(spec.d), key=power_of))
    else:
        codes = tuple(sorted(range(spec.d), key=lambda c: (int(spec.trace_table[c]), power_of(c))))
    return Ordering(spec, strategy, codes)
