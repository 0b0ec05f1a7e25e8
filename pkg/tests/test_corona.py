from math import factorial

import numpy as np
import pytest

from conftest import cmat, cvec, rng
from koszul.corona import (
    check_hypotheses,
    corona_row,
    pointwise_min_norm_solution,
    scalar_corona_solve,
)
from koszul.detk import det_k_gram
from koszul.poly import DiscGrid, Polynomial, PolyMatrix


def P(*cs):
    return Polynomial(tuple(complex(c) for c in cs))


def test_trivial_constant_instance_passes(small_grid):
    F = PolyMatrix.from_rows([[P(1), P(0)]])
    H = PolyMatrix.from_rows([[P(1)]])
    hyp = check_hypotheses(F, H, small_grid)
    assert hyp.k_detected == 1
    assert hyp.min_margin >= -1e-12
    assert hyp.norm_estimate == pytest.approx(1.0)
    assert hyp.passed_norm and hyp.passed_minor_bound and hyp.passed_range
    assert hyp.all_passed


def test_range_failure_reported_at_the_degenerate_point():
    grid = DiscGrid.make([0.0, 0.5], 8)
    F = PolyMatrix.from_rows([[P(0, 1), P(0)]])
    H = PolyMatrix.from_rows([[P(1)]])
    hyp = check_hypotheses(F, H, grid)
    assert not hyp.passed_range
    assert hyp.argmax_range_point == 0
    assert hyp.max_range_residual == pytest.approx(1.0)


def test_shape_mismatch_rejected(small_grid):
    F = PolyMatrix.from_rows([[P(1), P(0)]])
    H = PolyMatrix.from_rows([[P(1)], [P(0)]])
    with pytest.raises(ValueError):
        check_hypotheses(F, H, small_grid)


def test_norm_modes(small_grid):
    F = PolyMatrix.from_rows([[P(0.5), P(0)]])
    H = PolyMatrix.from_rows([[P(0.01)]])
    strict = check_hypotheses(F, H, small_grid, norm_mode="strict")
    loose = check_hypotheses(F, H, small_grid, norm_mode="inequality")
    assert not strict.passed_norm
    assert loose.passed_norm
    with pytest.raises(ValueError):
        check_hypotheses(F, H, small_grid, norm_mode="bogus")


def test_expected_k_mismatch_is_a_warning_not_an_error(small_grid):
    F = PolyMatrix.from_rows([[P(1), P(0)], [P(0), P(1)]]).scale(1 / np.sqrt(2))
    H = PolyMatrix.from_rows([[P(0.1)], [P(0.1)]])
    hyp = check_hypotheses(F, H, small_grid, expected_k=1)
    assert hyp.k_detected == 2
    assert hyp.k_mismatch


def test_scale_consistency_of_report(small_grid):
    r = rng(0)
    F = PolyMatrix.from_rows(
        [[Polynomial(tuple(0.2 * cvec(r, 3))) for _ in range(3)] for _ in range(2)]
    )
    H = PolyMatrix.from_rows([[P(0.001)], [P(0.001, 0.001)]])
    lam = 0.5
    base = check_hypotheses(F, H, small_grid, norm_mode="inequality")
    scaled = check_hypotheses(F.scale(lam), H, small_grid, norm_mode="inequality")
    assert scaled.norm_estimate == pytest.approx(lam * base.norm_estimate, rel=1e-12)
    # the minor sums underlying the margins follow the |lambda|^(2k) law
    k = base.k_detected
    for z in small_grid.points[:5]:
        assert det_k_gram(F.scale(lam).eval(z), k) == pytest.approx(
            lam ** (2 * k) * det_k_gram(F.eval(z), k), rel=1e-10
        )


def test_pointwise_min_norm_identity_case():
    u, resid = pointwise_min_norm_solution(np.eye(2), [1.0, 2.0])
    np.testing.assert_allclose(u, [1.0, 2.0])
    assert resid <= 1e-14


def test_pointwise_min_norm_spreads_symmetrically():
    u, resid = pointwise_min_norm_solution(np.array([[1.0, 1.0]]), [2.0])
    np.testing.assert_allclose(u, [1.0, 1.0], atol=1e-12)
    assert resid <= 1e-12


def test_pointwise_min_norm_on_consistent_systems():
    r = rng(1)
    for _ in range(25):
        m, d = int(r.integers(1, 4)), int(r.integers(1, 5))
        F = cmat(r, m, d)
        u0 = cvec(r, d)
        H = F @ u0
        u, resid = pointwise_min_norm_solution(F, H)
        assert resid <= 1e-10 * max(1.0, np.linalg.norm(H))
        assert np.linalg.norm(u) <= np.linalg.norm(u0) + 1e-10
        # minimal norm: no component in the kernel of F
        kernel_part = u - np.linalg.pinv(F) @ (F @ u)
        assert np.linalg.norm(kernel_part) <= 1e-10


def test_corona_row_m1_layout():
    F = PolyMatrix.from_rows([[P(1), P(0)]])
    R = corona_row(F, 1)
    assert R.shape == (1, 2)
    assert R.entry(0, 0).coeffs == (1 + 0j,)
    assert R.entry(0, 1).is_zero


def test_corona_row_norm_identity_random():
    r = rng(2)
    for _ in range(10):
        m, d = int(r.integers(1, 4)), int(r.integers(2, 5))
        k = int(r.integers(1, min(m, d) + 1))
        F = PolyMatrix.from_rows(
            [[Polynomial(tuple(cvec(r, 2))) for _ in range(d)] for _ in range(m)]
        )
        R = corona_row(F, k)
        for z in 0.8 * (r.random(5) * np.exp(2j * np.pi * r.random(5))):
            Rz = R.eval(z)
            lhs = float((Rz @ Rz.conj().T)[0, 0].real)
            rhs = factorial(k) ** 2 * det_k_gram(F.eval(z), k)
            assert abs(lhs - rhs) <= 1e-8 * max(abs(rhs), 1e-30)


def test_corona_row_k_out_of_range():
    F = PolyMatrix.from_rows([[P(1), P(0)]])
    with pytest.raises(ValueError):
        corona_row(F, 2)


def test_scalar_solve_m1_trivial(small_grid):
    F = PolyMatrix.from_rows([[P(1), P(0)]])
    res = scalar_corona_solve(F, P(1), i=1, k=1, grid=small_grid)
    assert res.success
    assert res.residual <= 1e-12
    assert res.v.entry(0, 0).coeffs == (1 + 0j,)
    assert res.v.entry(1, 0).is_zero


def test_scalar_solve_two_row_bezout(small_grid):
    s = 1 / np.sqrt(2)
    F = PolyMatrix.from_rows([[P(s), P(0)], [P(0), P(s)]])
    res = scalar_corona_solve(F, P(1), i=1, k=1, grid=small_grid)
    assert res.success
    assert res.residual <= 1e-10
    for z in small_grid.points[:4]:
        Rz = corona_row(F, 1).eval(z)
        assert abs((Rz @ res.v.eval(z))[0, 0] - 1) <= 1e-10


def test_scalar_solve_reports_miss(small_grid):
    # h = 1 against a row vanishing at 0 forces a reported miss at low cap
    F = PolyMatrix.from_rows([[P(0, 1), P(0, 2)]])
    res = scalar_corona_solve(F, P(1), i=1, k=1, degree_cap=4, grid=DiscGrid.make([0.0, 0.4], 8))
    assert not res.success
    assert res.residual > 1e-4
