"""Acceptance criteria 1-10.

Each criterion is a function returning ``(passed, detail)``; the pytest
wrappers record the outcome (printed in the terminal summary) and assert.
Run ``python3 tests/test_acceptance.py`` for the bare PASS/FAIL lines.
"""

import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))
from conftest import ACCEPTANCE, field_of  # noqa: E402

from gfwigner.field import basis_catalog, make_basis, ordering, polynomial_basis, self_dual_basis
from gfwigner.geometry import iter_lines
from gfwigner.nonunique import count_distinct_wigner
from gfwigner.operators import fourier_matrix, phase_phi, x_matrix
from gfwigner.phase_space import (
    build_kernel,
    build_mubs,
    check_kernel,
    covariant_transform_check,
    line_indicator,
    squeeze_composition_defect,
    wigner,
)
from gfwigner.rotations import (
    canonical_rotation_set,
    cocycle,
    shifted_rotation_set,
    square_shift,
    v_matrix,
    verify_square_even,
)
from gfwigner.tensor_map import factorize_Z, product_check, to_physical
from gfwigner.tomography import random_density, reconstruct, tomogram_of

TOL = 1e-9
PRODUCT_TOL = 1e-12


def criterion_1():
    t0 = time.perf_counter()
    worst, reports = 0.0, []
    for d in (2, 3, 4, 5, 7, 8, 9):
        rep = check_kernel(build_kernel(canonical_rotation_set(field_of(d))), samples=200)
        worst = max(worst, rep.hermiticity, rep.normalization, rep.covariance, rep.orthogonality)
        reports.append(rep.passed and (d > 4 or rep.covariance_checks == d**4))
    elapsed = time.perf_counter() - t0
    ok = all(reports) and worst < TOL and elapsed < 60
    return ok, f"SW postulates d in 2..9, max deviation {worst:.1e}, {elapsed:.1f} s"


def criterion_2():
    worst_o, worst_u = 0.0, 0.0
    for d in (2, 3, 4, 5, 7, 8, 9):
        rep = build_mubs(canonical_rotation_set(field_of(d))).overlap_report()
        worst_o = max(worst_o, rep["orthonormality"])
        worst_u = max(worst_u, rep["unbiasedness"])
    return worst_o < TOL and worst_u < TOL, f"orthonormality {worst_o:.1e}, |overlap|^2 - 1/d {worst_u:.1e}"


GF4_V = {"t^1": [0, 0, 2, 6], "t^2": [0, 2, 0, 6], "1": [0, 2, 2, 4]}  # exponents of i over L=8
GF4_PHI = {
    ("t^1", "t^1"): 2, ("t^1", "t^2"): 0, ("t^1", "1"): 2,
    ("t^2", "t^1"): 0, ("t^2", "t^2"): 2, ("t^2", "1"): 2,
    ("1", "t^1"): 6, ("1", "t^2"): 6, ("1", "1"): 4,
}
GF4_PHI_SHIFTED = {**GF4_PHI, ("t^1", "t^1"): 6, ("1", "1"): 0}


def _phi_table(rot):
    s = rot.spec
    return {(a, b): phase_phi(s.parse(a), s.parse(b), rot).exponent for a, b in GF4_PHI}


def criterion_3():
    s = field_of(4)
    rot = canonical_rotation_set(s)
    prim = ordering(s, "primitive", primitive=s.parse("t^1"))  # 0, t, t^2, t^3 = 1
    idx = list(prim.codes)
    F = fourier_matrix(s)
    ok = True
    for mu, exps in GF4_V.items():
        m = s.code(mu)
        ok &= [int(e) for e in rot.c[idx, m]] == exps
        diag = F.conj().T @ v_matrix(rot, m) @ F
        ok &= np.allclose(diag[np.ix_(idx, idx)], np.diag(1j ** (np.array(exps) // 2)), atol=PRODUCT_TOL)
    ok &= _phi_table(rot) == GF4_PHI
    shifted = shifted_rotation_set(rot, {s.parse("1"): s.parse("t^1")})
    ok &= [int(e) for e in shifted.c[idx, 1]] == [0, 6, 2, 0]  # diag(1, -i, i, 1)
    table = _phi_table(shifted)
    changed = {k for k in GF4_PHI if table[k] != GF4_PHI[k]}
    ok &= table == GF4_PHI_SHIFTED and changed == {("t^1", "t^1"), ("1", "1")}
    return bool(ok), "GF(4) V tables, phi table and X_t-shifted phi table exact"


GF4_F = {("t^1", "t^1"): "t^2", ("t^1", "t^2"): "0", ("t^1", "1"): "t^2",
         ("t^2", "t^2"): "t^1", ("t^2", "1"): "t^1", ("1", "1"): "1"}


def criterion_4():
    s = field_of(4)
    rot = canonical_rotation_set(s)
    f = cocycle(rot)
    values = all(f(s.parse(a), s.parse(b)).code == s.parse(v).code for (a, b), v in GF4_F.items())
    dev = 0.0
    for m1 in range(s.d):
        for m2 in range(s.d):
            lhs = v_matrix(rot, m1) @ v_matrix(rot, m2)
            rhs = v_matrix(rot, int(s.add_table[m1, m2])) @ x_matrix(s, f(m1, m2).code)
            dev = max(dev, float(np.max(np.abs(lhs - rhs))))
    return values and dev < PRODUCT_TOL, f"f table matches, group law deviation {dev:.1e}"


def criterion_5():
    ok, dev = True, 0.0
    for d in (2, 4, 8, 16):
        s = field_of(d)
        rot = canonical_rotation_set(s)
        chi = s.chi_table[s.mul_table]
        for mu in range(d):
            sq = square_shift(s, mu).code
            ok &= verify_square_even(rot, mu).code == sq
            # exact: c^2 in the conjugate basis equals the eigenvalue chi(-k sq) of X_sq
            ok &= bool(np.all((2 * rot.c[:, mu] + chi[:, sq]) % s.L == 0))
            dev = max(dev, float(np.max(np.abs(v_matrix(rot, mu) @ v_matrix(rot, mu) - x_matrix(s, sq)))))
    for d in (3, 5, 9):
        s = field_of(d)
        rot = canonical_rotation_set(s)
        for m1 in range(d):
            for m2 in range(d):
                m12 = int(s.add_table[m1, m2])
                ok &= bool(np.all((rot.c[:, m1] + rot.c[:, m2] - rot.c[:, m12]) % s.L == 0))
                dev = max(dev, float(np.max(np.abs(v_matrix(rot, m1) @ v_matrix(rot, m2) - v_matrix(rot, m12)))))
    return bool(ok) and dev < PRODUCT_TOL, f"exact exponent identities, matrix deviation {dev:.1e}"


def criterion_6():
    rng = np.random.default_rng(6)
    worst, sets = 0.0, 0
    for d in (3, 4, 8):
        s = field_of(d)
        base = canonical_rotation_set(s)
        rots = [base] + [shifted_rotation_set(base, [0] + list(rng.integers(0, d, d - 1))) for _ in range(5)]
        for rot in rots:
            k, m = build_kernel(rot), build_mubs(rot)
            for line in iter_lines(s):
                w = wigner(m.line_state(line), k).in_codes()
                worst = max(worst, float(np.max(np.abs(w - line_indicator(s, line)))))
            sets += 1
    return worst < TOL, f"{sets} rotation sets over d=3,4,8, max deviation {worst:.1e}"


def criterion_7():
    out = []
    ok = True
    for d, expect, budget in ((4, 2, 1.0), (8, 8, 300.0)):
        s = field_of(d)
        psi = np.zeros(d, dtype=complex)
        psi[0] = psi[1] = 2**-0.5  # |0> + |t^(d-1)> with t^(d-1) = 1
        t0 = time.perf_counter()
        rep = count_distinct_wigner(psi, canonical_rotation_set(s))
        elapsed = time.perf_counter() - t0
        ok &= (rep.distinct == expect and rep.total_structures == d ** (d - 1)
               and sum(rep.class_sizes) == d ** (d - 1) and rep.conditions.total == expect
               and elapsed < budget)
        out.append(f"GF({d}) {rep.distinct}/{rep.total_structures} in {elapsed:.1f} s")
    return bool(ok), ", ".join(out)


def criterion_8():
    worst_rt, worst_ls = 0.0, 0.0
    for d in (3, 4, 8):
        s = field_of(d)
        rot = canonical_rotation_set(s)
        m, k = build_mubs(rot), build_kernel(rot)
        rng = np.random.default_rng(800 + d)
        for _ in range(100):
            rho = random_density(d, rng)
            t = tomogram_of(rho, m)
            worst_rt = max(worst_rt, float(np.max(np.abs(reconstruct(t).rho.in_codes() - rho))))
            worst_ls = max(worst_ls, float(np.max(np.abs(wigner(rho, k).line_sums() - t.as_array()))))
    return max(worst_rt, worst_ls) < TOL, f"round trip {worst_rt:.1e}, line sums vs tomogram {worst_ls:.1e}"


GF8_RADIX = {"0": 0, "t^1": 6, "t^2": 5, "t^3": 1, "t^4": 3, "t^5": 4, "t^6": 2, "1": 7}


def criterion_9():
    s8 = field_of(8)
    o = ordering(s8, "radix", basis=make_basis(s8, ["t^3", "t^6", "t^5"]))
    table_ok = all(o.perm(s8.parse(a)) == i for a, i in GF8_RADIX.items())
    s4 = field_of(4)
    psi = np.zeros(4, dtype=complex)
    psi[0] = psi[1] = 2**-0.5
    r_poly = product_check(to_physical(psi, polynomial_basis(s4)), [1]).rank
    r_sd = product_check(to_physical(psi, self_dual_basis(s4)), [1]).rank
    fact = all(factorize_Z(s, b, i).passed
               for s in (s4, s8) for b in basis_catalog(s) for i in range(1, s.n + 1))
    ok = table_ok and r_poly == 1 and r_sd == 2 and fact
    return ok, f"GF(8) radix table {'ok' if table_ok else 'wrong'}, Schmidt ranks {r_poly}/{r_sd}, Z factorization {'ok' if fact else 'fails'}"


def criterion_10():
    worst = {"V": 0.0, "U": 0.0, "S": 0.0, "U_literal": 0.0, "S_literal": 0.0, "composition": 0.0}
    for d in (3, 5, 9):
        s = field_of(d)
        rot = canonical_rotation_set(s)
        k = build_kernel(rot)
        rng = np.random.default_rng(1000 + d)
        for _ in range(20):
            rho = random_density(d, rng)
            for x in range(1, d):
                worst["V"] = max(worst["V"], covariant_transform_check(rho, rot, "V", x, k=k).deviation)
                # printed U and S laws hold for the adjoint operators
                worst["U"] = max(worst["U"], covariant_transform_check(rho, rot, "U", x, adjoint=True, k=k).deviation)
                worst["S"] = max(worst["S"], covariant_transform_check(rho, rot, "S", x, adjoint=True, k=k).deviation)
                worst["U_literal"] = max(worst["U_literal"], covariant_transform_check(rho, rot, "U", x, k=k).deviation)
                worst["S_literal"] = max(worst["S_literal"], covariant_transform_check(rho, rot, "S", x, k=k).deviation)
        for mu in range(1, d):
            for xi in range(1, d):
                worst["composition"] = max(worst["composition"], squeeze_composition_defect(rot, mu, xi))
    ok = max(worst.values()) < TOL
    return ok, "d=3,5,9: V law as printed; U, S laws as printed for U^dagger, S^dagger and mirrored for U, S; " \
               f"max deviation {max(worst.values()):.1e}"


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 11)}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    ok, detail = CRITERIA[number]()
    ACCEPTANCE[number] = (bool(ok), detail)
    print(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for n, fn in CRITERIA.items():
        ok, detail = fn()
        failed += not ok
        print(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}", flush=True)
    sys.exit(1 if failed else 0)
