import cmath

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gfwigner.phase import UnitPhase, close_to_phase, exact_sum, phase_modulus, to_complex

moduli = st.sampled_from([8, 12, 20, 28])


def test_quarter_turns_are_exact():
    L = 8
    assert complex(UnitPhase(0, L)) == 1
    assert complex(UnitPhase(2, L)) == 1j
    assert complex(UnitPhase(4, L)) == -1
    assert complex(UnitPhase(6, L)) == -1j
    assert [str(UnitPhase(k, L)) for k in (0, 2, 4, 6)] == ["1", "i", "-1", "-i"]


def test_modulus():
    assert phase_modulus(2) == 8
    assert phase_modulus(3) == 12


@given(moduli, st.integers(), st.integers())
def test_multiplication_adds_exponents(L, a, b):
    x, y = UnitPhase(a, L), UnitPhase(b, L)
    assert complex(x * y) == pytest.approx(complex(x) * complex(y), abs=1e-12)
    assert (x * y) / y == x
    assert x * x.conjugate() == UnitPhase.one(L)


@given(moduli, st.integers(-1000, 1000))
def test_value_matches_exponential(L, a):
    assert complex(UnitPhase(a, L)) == pytest.approx(cmath.exp(2j * cmath.pi * a / L), abs=1e-12)
    assert to_complex([a], L)[0] == pytest.approx(cmath.exp(2j * cmath.pi * a / L), abs=1e-12)


@given(moduli, st.integers())
def test_principal_sqrt(L, a):
    z = UnitPhase(2 * a, L)
    r = z.sqrt()
    assert r * r == z
    ang = cmath.phase(complex(r))
    assert -cmath.pi / 2 < ang <= cmath.pi / 2 + 1e-12


def test_sqrt_needs_even_exponent():
    with pytest.raises(ValueError):
        UnitPhase(1, 8).sqrt()


def test_json_round_trip():
    z = UnitPhase(5, 12)
    assert z.to_json() == {"num": 5, "den": 12}
    assert UnitPhase.from_json(z.to_json()) == z


def test_exact_sum_of_roots():
    # sum of all p-th roots vanishes
    L = 12
    assert exact_sum([UnitPhase(4 * k, L) for k in range(3)], 3) == 0
    assert exact_sum([UnitPhase(0, L)] * 3, 3) == 3


def test_close_to_phase():
    assert close_to_phase(1j, 8) == UnitPhase(2, 8)
    assert close_to_phase(0.5, 8) is None


def test_mixed_moduli_rejected():
    with pytest.raises(ValueError):
        UnitPhase(1, 8) * UnitPhase(1, 12)
