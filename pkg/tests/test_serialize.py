import json

import numpy as np
import pytest
from conftest import field_of
from hypothesis import given
from hypothesis import strategies as st

from gfwigner import serialize as sz
from gfwigner.errors import DimensionMismatch, FieldError
from gfwigner.field import make_field, ordering, self_dual_basis
from gfwigner.operators import Ket, Operator
from gfwigner.phase_space import build_kernel, wigner
from gfwigner.rotations import canonical_rotation_set
from gfwigner.tomography import random_density, random_pure_state


def test_rounding_folds_negative_zero():
    assert sz.fmt(-1e-15) == "0.000000000000"
    assert sz.fmt(0.5) == "0.500000000000"
    assert str(sz.rnd(-0.0)) == "0.0"


@pytest.mark.parametrize("d", [2, 3, 4, 8, 9])
def test_field_round_trip(d):
    s = field_of(d)
    obj = json.loads(sz.dumps(sz.field_to_json(s)))
    spec, order = sz.field_from_json(obj)
    assert spec == s and order.codes == sz.ordering_from_json(s, None).codes


def test_field_with_custom_ordering(gf8):
    o = ordering(gf8, "radix", basis=self_dual_basis(gf8))
    spec, back = sz.field_from_json(json.loads(sz.dumps(sz.field_to_json(gf8, o))))
    assert back.codes == o.codes


def test_bad_field():
    with pytest.raises(FieldError):
        sz.field_from_json({"n": 2})
    with pytest.raises(FieldError):
        sz.field_from_json({"p": 2, "n": 2, "poly": [1, 0, 1]})


@given(st.sampled_from([2, 3, 4, 5, 8]), st.integers(0, 2**32 - 1))
def test_matrix_and_ket_round_trip(d, seed):
    s = field_of(d)
    rng = np.random.default_rng(seed)
    o = sz.ordering_from_json(s, None)
    op = Operator(random_density(d, rng), o)
    back = sz.matrix_from_json(s, json.loads(sz.dumps(sz.matrix_to_json(op))))
    np.testing.assert_allclose(back.matrix, op.matrix, atol=1e-11)
    k = Ket(random_pure_state(d, rng), o)
    kb = sz.ket_from_json(s, json.loads(sz.dumps(sz.ket_to_json(k))))
    np.testing.assert_allclose(kb.vector, k.vector, atol=1e-11)


def test_dimension_checks(gf4):
    with pytest.raises(DimensionMismatch):
        sz.matrix_from_json(gf4, {"re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]})
    with pytest.raises(DimensionMismatch):
        sz.ket_from_json(gf4, {"re": [1, 0]})


def test_matrix_csv_layout(gf4):
    o = sz.ordering_from_json(gf4, None)
    text = sz.matrix_to_csv(Operator(np.eye(4) * (1 + 2j), o))
    rows = text.strip().split("\n")
    assert len(rows) == 4 and rows[0].split(",")[:2] == ["1.000000000000", "2.000000000000"]


@pytest.mark.parametrize("d", [3, 4, 8])
def test_wigner_csv_round_trip(d):
    s = field_of(d)
    rot = canonical_rotation_set(s)
    w = wigner(random_density(d, np.random.default_rng(d)), build_kernel(rot))
    text = sz.wigner_to_csv(w)
    assert text.splitlines()[0].startswith("beta\\alpha,0,1")
    np.testing.assert_allclose(sz.wigner_from_csv(text, s), w.in_codes(), atol=1e-11)
    assert sz.wigner_to_csv(w) == text


def test_wigner_json_and_line_sums(gf4):
    rot = canonical_rotation_set(gf4)
    w = wigner(np.eye(4) / 4, build_kernel(rot))
    obj = sz.wigner_to_json(w)
    assert obj["values"] == [[0.25] * 4] * 4
    assert obj["marginals"]["alpha"] == [0.25] * 4
    rows = sz.line_sums_to_csv(w).strip().split("\n")
    assert len(rows) == 6 and rows[-1].startswith("inf,")


def test_write_text_creates_dirs(tmp_path):
    p = sz.write_text(tmp_path / "a" / "b.txt", "x")
    assert p.read_text() == "x"


def test_prime_field_json_has_no_basis():
    s = make_field(5)
    obj = sz.field_to_json(s)
    assert obj["p"] == 5 and obj["n"] == 1
