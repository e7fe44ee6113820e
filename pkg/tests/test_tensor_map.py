import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gfwigner.errors import BasisMismatch, MixedStateUnsupported, NotSorted, WrongLength
from gfwigner.field import basis_catalog, dual_basis, make_basis, make_field, ordering, polynomial_basis
from gfwigner.operators import basis_ket, x_matrix
from gfwigner.tensor_map import (
    TensorState,
    factorize_Z,
    free_hamiltonian,
    from_physical,
    product_check,
    slot_operator,
    tensor_from_json,
    tensor_matrix,
    tensor_permutation,
    to_physical,
)

FIELDS = [(2, 2), (2, 3), (3, 2), (2, 4), (5, 1), (3, 3)]


def superposition(spec):
    v = np.zeros(spec.d, dtype=complex)
    v[0] = v[1] = 1 / np.sqrt(2)
    return v


def test_gf4_superposition_depends_on_basis(gf4):
    v = superposition(gf4)
    poly = to_physical(v, polynomial_basis(gf4))
    assert set(poly.terms()) == {"00", "10"}
    assert product_check(poly, [1]).product
    sd = to_physical(v, make_basis(gf4, ["t^1", "t^2"]))
    assert set(sd.terms()) == {"00", "11"}
    rep = product_check(sd, [1])
    assert rep.rank == 2 and rep.verdict == "entangled"


def test_basis_kets_are_digit_strings(gf8):
    b = make_basis(gf8, ["t^3", "t^6", "t^5"])
    t = to_physical(basis_ket("t^1", gf8), b)
    assert t.terms() == {"011": 1}


@pytest.mark.parametrize("pn", FIELDS)
def test_permutation_is_bijection(pn):
    s = make_field(*pn)
    for b in basis_catalog(s):
        perm = tensor_permutation(b)
        assert sorted(perm) == list(range(s.d)) and perm[0] == 0


@given(st.sampled_from(FIELDS), st.data())
def test_round_trip(pn, data):
    s = make_field(*pn)
    b = data.draw(st.sampled_from(basis_catalog(s)))
    seed = data.draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    v = rng.normal(size=s.d) + 1j * rng.normal(size=s.d)
    t = to_physical(v, b)
    assert t.norm() == pytest.approx(np.linalg.norm(v))
    np.testing.assert_allclose(from_physical(t, b).in_codes(), v)
    np.testing.assert_allclose(TensorState.from_flat(t.flat(), b).amplitudes, t.amplitudes)


@pytest.mark.parametrize("pn", FIELDS + [(2, 5), (2, 6)])
def test_z_factorizes(pn):
    s = make_field(*pn)
    for b in basis_catalog(s):
        for i in range(1, s.n + 1):
            rep = factorize_Z(s, b, i)
            assert rep.passed and rep.max_deviation < 1e-12
            assert rep.element == dual_basis(b).labels[i - 1]


@pytest.mark.parametrize("pn", FIELDS)
def test_x_factorizes(pn):
    # translation by the i-th basis element is the cyclic shift on slot i
    s = make_field(*pn)
    shift = np.roll(np.eye(s.p), 1, axis=0)
    for b in basis_catalog(s):
        for i, code in enumerate(b.codes):
            ops = [shift if j == i else np.eye(s.p) for j in range(s.n)]
            np.testing.assert_allclose(tensor_matrix(x_matrix(s, code), b), slot_operator(ops))


def test_factorize_slot_range(gf4):
    with pytest.raises(ValueError):
        factorize_Z(gf4, polynomial_basis(gf4), 3)
    with pytest.raises(BasisMismatch):
        factorize_Z(gf4, polynomial_basis(make_field(2, 3)), 1)


def test_product_states_have_rank_one():
    s = make_field(2, 3)
    b = polynomial_basis(s)
    rng = np.random.default_rng(0)
    qs = [rng.normal(size=2) + 1j * rng.normal(size=2) for _ in range(3)]
    amp = np.einsum("i,j,k->ijk", *qs)
    t = TensorState(amp, b)
    for cut in ([1], [2], [3], [1, 2]):
        assert product_check(t, cut).rank == 1


def test_product_check_errors(gf4):
    with pytest.raises(MixedStateUnsupported):
        product_check(np.eye(4) / 4, [1])
    t = to_physical(superposition(gf4), polynomial_basis(gf4))
    with pytest.raises(ValueError):
        product_check(t, [3])


def test_mismatches(gf4, gf8):
    t = to_physical(superposition(gf4), polynomial_basis(gf4))
    with pytest.raises(BasisMismatch):
        from_physical(t, make_basis(gf4, ["t^1", "t^2"]))
    with pytest.raises(BasisMismatch):
        TensorState(np.zeros(4), polynomial_basis(gf4))
    with pytest.raises(BasisMismatch):
        to_physical(basis_ket(0, gf8), polynomial_basis(gf4))


def test_json_round_trip(gf8):
    b = make_basis(gf8, ["t^3", "t^6", "t^5"])
    t = to_physical(np.arange(8) / np.linalg.norm(np.arange(8)), b)
    back = tensor_from_json(gf8, t.to_json())
    np.testing.assert_allclose(back.amplitudes, t.amplitudes)
    with pytest.raises(BasisMismatch):
        tensor_from_json(make_field(2, 2), t.to_json())


def test_free_hamiltonian(gf4):
    o = ordering(gf4, "primitive", primitive=gf4.parse("t^1"))
    H = free_hamiltonian(gf4, o, [0, 1, 2, 3])
    np.testing.assert_allclose(np.linalg.eigvalsh(H.matrix), [0, 1, 2, 3])
    # the ground state is |0>, the next level the primitive element
    assert abs(H.in_codes()[gf4.code("t^1"), gf4.code("t^1")] - 1) < 1e-15
    with pytest.raises(NotSorted):
        free_hamiltonian(gf4, o, [1, 0, 2, 3])
    with pytest.raises(WrongLength):
        free_hamiltonian(gf4, o, [0, 1])


def test_slot_operator_order():
    a = np.diag([1, 2])
    b = np.diag([1, 3])
    # slot 1 is the fastest digit
    np.testing.assert_allclose(np.diag(slot_operator([a, b])), [1, 2, 3, 6])
