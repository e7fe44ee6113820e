import itertools

import numpy as np
import pytest
from conftest import field_of
from hypothesis import given
from hypothesis import strategies as st

from gfwigner.errors import EvenCharacteristic, OddCharacteristic, ShiftAtZero, WrongLength, ZeroSqueeze
from gfwigner.field import basis_catalog, make_field, trace
from gfwigner.operators import unitarity_defect, x_matrix
from gfwigner.rotations import (
    build_S,
    build_U,
    build_V,
    canonical_rotation_set,
    canonical_rotation_set_even,
    cocycle,
    functional_defect,
    inverse_label,
    odd_group_defect,
    rotation_set_from_json,
    shift_to_signs,
    shifted_rotation_set,
    signs_to_shift,
    square_shift,
    verify_square_even,
)

EVEN = [2, 4, 8, 16]
ODD = [3, 5, 7, 9]


def rot_of(d, basis_index=0):
    s = field_of(d)
    if s.p == 2:
        return canonical_rotation_set(s, basis_catalog(s)[basis_index])
    return canonical_rotation_set(s)


@pytest.mark.parametrize("d", EVEN + ODD)
def test_functional_equation_exact(d):
    assert functional_defect(rot_of(d)) == 0


@pytest.mark.parametrize("d", EVEN)
def test_every_even_basis_gives_valid_set(d):
    s = field_of(d)
    for b in basis_catalog(s):
        assert functional_defect(canonical_rotation_set(s, b)) == 0


@pytest.mark.parametrize("d", EVEN)
def test_even_square_relations(d):
    rot = rot_of(d)
    s, L = rot.spec, rot.spec.L
    for k in range(d):
        for mu in range(d):
            # c^2 = chi(k^2 mu) and conj(c) = chi(k sqrt(mu)) c
            k2mu = s.mul_table[s.mul_table[k, k], mu]
            assert (2 * rot.c[k, mu]) % L == s.chi_table[k2mu]
            root = square_shift(s, mu).code
            assert (-rot.c[k, mu]) % L == (s.chi_table[s.mul_table[k, root]] + rot.c[k, mu]) % L


@pytest.mark.parametrize("d", ODD)
def test_odd_coefficients(d):
    s = field_of(d)
    rot = canonical_rotation_set(s)
    half = s.inv_table[2 % s.p]
    for k, mu in itertools.product(range(d), repeat=2):
        x = s.neg_table[s.mul_table[s.mul_table[half, s.mul_table[k, k]], mu]]
        assert rot.c[k, mu] == s.chi_table[x]


def test_z3_example():
    s = make_field(3)
    rot = canonical_rotation_set(s)
    assert complex(rot.coefficient(1, 1)) == pytest.approx(np.exp(2j * np.pi / 3))


@pytest.mark.parametrize("d", [2, 4, 8])
def test_even_sign_sets(d):
    s = field_of(d)
    base = canonical_rotation_set(s)
    seen = set()
    for bits in itertools.product([0, 1], repeat=s.n):
        signs = {1: list(bits)}
        r = canonical_rotation_set_even(s, base.basis, signs)
        assert functional_defect(r) == 0
        seen.add(r.c[:, 1].tobytes())
    assert len(seen) == 2**s.n


@pytest.mark.parametrize("d", EVEN)
def test_signs_and_shifts_agree(d):
    s = field_of(d)
    b = canonical_rotation_set(s).basis
    rng = np.random.default_rng(d)
    signs = rng.integers(0, 2, size=(d, s.n))
    signs[0] = 0
    h = signs_to_shift(s, b, signs)
    np.testing.assert_array_equal(shift_to_signs(s, b, h), signs)


@pytest.mark.parametrize("d", EVEN + ODD)
def test_shifted_coefficients(d):
    rot = rot_of(d)
    s = rot.spec
    rng = np.random.default_rng(1)
    h = [0] + list(rng.integers(0, d, size=d - 1))
    r = shifted_rotation_set(rot, h)
    assert functional_defect(r) == 0
    for mu in range(d):
        V = build_V(rot, mu).matrix @ x_matrix(s, h[mu])
        np.testing.assert_allclose(build_V(r, mu).matrix, V, atol=1e-12)


def test_shift_at_zero():
    with pytest.raises(ShiftAtZero):
        shifted_rotation_set(rot_of(4), [1, 0, 0, 0])
    with pytest.raises(WrongLength):
        shifted_rotation_set(rot_of(4), [0, 1])


@pytest.mark.parametrize("d", EVEN + ODD)
def test_v_unitary_and_diagonal_in_conjugate_basis(d):
    rot = rot_of(d)
    for mu in range(d):
        assert unitarity_defect(build_V(rot, mu).matrix) < 1e-12
    np.testing.assert_allclose(build_V(rot, 0).matrix, np.eye(d), atol=1e-12)


@pytest.mark.parametrize("d", EVEN)
def test_even_square_law(d):
    rot = rot_of(d)
    s = rot.spec
    for mu in range(d):
        r = verify_square_even(rot, mu)
        assert (r * r).code == mu


@pytest.mark.parametrize("d", EVEN)
def test_even_inverse_label(d):
    rot = rot_of(d)
    s = rot.spec
    for mu in range(d):
        for nu in range(d):
            V = build_V(rot, mu).matrix @ x_matrix(s, nu)
            m, n2 = inverse_label(s, mu, nu)
            W = build_V(rot, m).matrix @ x_matrix(s, n2.code)
            np.testing.assert_allclose(V @ W, np.eye(d), atol=1e-12)


@pytest.mark.parametrize("d", [4, 8])
def test_cocycle_group_law(d):
    rot = rot_of(d)
    f = cocycle(rot)
    s = rot.spec
    assert all(f(0, mu).code == 0 for mu in range(d))
    assert all(f(mu, mu) == verify_square_even(rot, mu) for mu in range(d))


@pytest.mark.parametrize("d", ODD)
def test_odd_group_is_abelian(d):
    assert odd_group_defect(rot_of(d)) < 1e-12


def test_parity_errors():
    with pytest.raises(OddCharacteristic):
        cocycle(rot_of(3))
    with pytest.raises(OddCharacteristic):
        verify_square_even(rot_of(5), 1)
    with pytest.raises(EvenCharacteristic):
        odd_group_defect(rot_of(4))
    with pytest.raises(ZeroSqueeze):
        build_S(field_of(5), 0)


def test_u_is_fourier_conjugate_of_v():
    from gfwigner.operators import fourier_matrix

    for d in (4, 5, 8):
        rot = rot_of(d)
        F = fourier_matrix(rot.spec)
        for mu in range(d):
            np.testing.assert_allclose(build_U(rot, mu).matrix, F @ build_V(rot, mu).matrix @ F.conj().T, atol=1e-12)


def test_squeeze_z5_permutation():
    s = make_field(5)
    S = build_S(s, 2).matrix
    # <k| S |2k> = 1, so S|2k> = |k>
    for k in range(5):
        e = np.zeros(5)
        e[(2 * k) % 5] = 1
        assert np.argmax(S @ e) == k
    assert unitarity_defect(S) == 0


@given(st.sampled_from(EVEN + ODD), st.data())
def test_json_round_trip(d, data):
    s = field_of(d)
    base = rot_of(d, data.draw(st.integers(0, len(basis_catalog(s)) - 1)) if s.p == 2 else 0)
    h = [0] + [data.draw(st.integers(0, d - 1)) for _ in range(d - 1)]
    r = shifted_rotation_set(base, h)
    back = rotation_set_from_json(s, r.to_json())
    assert back == r and back.h == r.h


@pytest.mark.parametrize("d", EVEN)
def test_sign_flip_is_trace_shift(d):
    s = field_of(d)
    rot = canonical_rotation_set(s)
    for l, bl in enumerate(rot.basis.codes):
        bits = [0] * s.n
        bits[l] = 1
        r = canonical_rotation_set_even(s, rot.basis, {1: bits})
        h = r.h[1]
        assert [trace(s.element(s.mul_table[h, b])) for b in rot.basis.codes] == bits
