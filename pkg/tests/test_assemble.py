from math import comb, factorial

import numpy as np
import pytest

from conftest import cmat, cvec, rng
from koszul.assemble import (
    build_Gi,
    concat_solve,
    norm_bound,
    offdiagonal_annihilation_check,
    radical_necessary_check,
    solve_full,
)
from koszul.combinat import enumerate_tuples
from koszul.corona import scalar_corona_solve
from koszul.errors import PreconditionError
from koszul.estimates import K_constant
from koszul.exterior import chain_row, q_matrix
from koszul.opdet import BlockOperatorMatrix, operator_det
from koszul.poly import DiscGrid, Polynomial, PolyMatrix


def P(*cs):
    return Polynomial(tuple(complex(c) for c in cs))


def selector_det(F_point, i, pi, k, alpha=None):
    """Numeric mirror of the per-tuple assembly block, for identity tests."""
    m, d = F_point.shape
    if alpha is None:
        alpha = np.zeros(m)
        alpha[i - 1] = 1.0
    rows = [[alpha[j - 1] * np.eye(d) for j in pi]]
    for s in range(1, k):
        rows.append([q_matrix(F_point[j - 1], s).matrix for j in pi])
    return operator_det(BlockOperatorMatrix.from_rows(rows))


def test_wedge_collapse_to_ordered_chain():
    # the all-lowering block determinant collapses to k! times the
    # increasing-order chain of operators
    r = rng(0)
    F = cmat(r, 4, 5)
    for sigma in [(1, 2), (2, 4), (1, 3, 4)]:
        k = len(sigma)
        rows = [[q_matrix(F[j - 1], s).matrix for j in sigma] for s in range(1, k + 1)]
        det = operator_det(BlockOperatorMatrix.from_rows(rows))
        prod = None
        for s, j in enumerate(sigma, start=1):
            Q = q_matrix(F[j - 1], s).matrix
            prod = Q if prod is None else prod @ Q
        assert np.linalg.norm(det - factorial(k) * prod) <= 1e-12 * np.linalg.norm(prod)


def test_row_composition_identity_full_size_any_coefficients():
    # with as many tuple slots as the rank, the composed first row of the
    # selector determinant matches the chain for arbitrary coefficients
    r = rng(1)
    for m, d in [(2, 3), (3, 4)]:
        F = cmat(r, m, d)
        alpha = cvec(r, m)
        pi = tuple(range(1, m + 1))
        lhs = m * F[0].reshape(1, d) @ selector_det(F, None, pi, m, alpha=alpha)
        rhs = factorial(m) * alpha[0] * chain_row(list(F))
        assert np.linalg.norm(lhs - rhs) <= 1e-10 * max(1.0, np.linalg.norm(rhs))


def test_row_composition_identity_consistent_coefficients_low_rank():
    # below full size the identity needs coefficients in the pointwise
    # range of F together with the rank bound
    r = rng(2)
    m, k, d = 4, 2, 5
    F = cmat(r, m, k) @ cmat(r, k, d)
    u = cvec(r, d)
    alpha = F @ u
    for pi in enumerate_tuples(m, k):
        lhs = k * F[0].reshape(1, d) @ selector_det(F, None, pi.entries, k, alpha=alpha)
        rhs = factorial(k) * alpha[0] * chain_row([F[p - 1] for p in pi])
        assert np.linalg.norm(lhs - rhs) <= 1e-8 * max(1.0, np.linalg.norm(rhs))


def test_build_Gi_k1_places_the_selected_block():
    F = PolyMatrix.from_rows([[P(1), P(0)], [P(0), P(1)]])
    v = PolyMatrix.from_rows([[P(0.3)], [P(0.4)], [P(0.5)], [P(0.6)]])
    G1 = build_Gi(F, v, i=1, k=1)
    assert G1.entry(0, 0).coeffs == (0.3 + 0j,)
    assert G1.entry(1, 0).coeffs == (0.4 + 0j,)
    G2 = build_Gi(F, v, i=2, k=1)
    assert G2.entry(0, 0).coeffs == (0.5 + 0j,)
    assert G2.entry(1, 0).coeffs == (0.6 + 0j,)


def test_build_Gi_hand_expanded_diagonal_two_by_two(small_grid):
    # constant diagonal F: the two-slot determinant has exactly two terms
    # and the assembled vector is (h / c1, 0)
    c1, c2 = 0.6, -0.8
    F = PolyMatrix.from_rows([[P(c1), P(0)], [P(0), P(c2)]])
    h = P(0.1, 0.05)
    res = scalar_corona_solve(F, h, i=1, k=2, grid=small_grid)
    assert res.success
    G1 = build_Gi(F, res.v, i=1, k=2)
    for z in small_grid.points[:6]:
        np.testing.assert_allclose(
            G1.eval(z), np.array([[h(z) / c1], [0.0]]), atol=1e-12
        )


def test_build_Gi_shape_validation():
    F = PolyMatrix.from_rows([[P(1), P(0)], [P(0), P(1)]])
    bad_v = PolyMatrix.from_rows([[P(1)], [P(0)]])
    with pytest.raises(ValueError):
        build_Gi(F, bad_v, i=1, k=1)
    with pytest.raises(ValueError):
        build_Gi(F, bad_v, i=3, k=1)


def test_norm_bound_values():
    K = K_constant()
    assert norm_bound(1, 1) == pytest.approx(K)
    assert norm_bound(2, 1) == pytest.approx(2 * K)
    assert norm_bound(3, 2) == pytest.approx(6 * K)
    with pytest.raises(ValueError):
        norm_bound(2, 3)


def test_solve_full_m1_exact(small_grid):
    F = PolyMatrix.from_rows([[P(1), P(0)]])
    h = P(0.2, -0.1)
    H = PolyMatrix.from_rows([[h]])
    bundle = solve_full(F, H, small_grid)
    assert bundle.success
    assert bundle.max_residual <= 1e-12
    assert bundle.G.entry(0, 0).coeffs == h.coeffs
    assert bundle.G.entry(1, 0).is_zero


def test_solve_full_diagonal_constant_fixture(small_grid):
    s = 1 / np.sqrt(2)
    F = PolyMatrix.from_rows([[P(s), P(0)], [P(0), P(s)]])
    H = PolyMatrix.from_rows([[P(0.01)], [P(0, 0.02)]])
    bundle = solve_full(F, H, small_grid, norm_mode="inequality")
    assert bundle.success
    assert bundle.max_residual <= 1e-12
    for z in small_grid.points[:4]:
        np.testing.assert_allclose(F.eval(z) @ bundle.G.eval(z), H.eval(z), atol=1e-12)


def test_solve_full_flags_range_failure():
    grid = DiscGrid.make([0.0, 0.4], 8)
    F = PolyMatrix.from_rows([[P(0, 1), P(0)]])
    H = PolyMatrix.from_rows([[P(1)]])
    bundle = solve_full(F, H, grid)
    assert not bundle.success
    assert bundle.failure == "hypothesis-range"


def test_offdiagonal_annihilation_orthogonal_rows(small_grid):
    s = 1 / np.sqrt(2)
    F = PolyMatrix.from_rows([[P(s), P(0)], [P(0), P(s)]])
    H = PolyMatrix.from_rows([[P(0.01)], [P(0.02)]])
    bundle = solve_full(F, H, small_grid, norm_mode="inequality")
    for i in (1, 2):
        rep = offdiagonal_annihilation_check(F, bundle.G_parts[i - 1], i, small_grid, k=bundle.k)
        assert rep.max_residual <= 1e-12
        assert rep.excluded_points == ()


def test_offdiagonal_annihilation_excludes_rank_drops(fixtures_by_id, grid):
    fx = fixtures_by_id["f3"]
    bundle = solve_full(fx.F, fx.H, grid)
    assert bundle.success
    rep = offdiagonal_annihilation_check(fx.F, bundle.G_parts[0], 1, grid, k=bundle.k)
    # the second row vanishes at z = 1/2, which sits on the default grid
    assert 0.5 + 0j in rep.excluded_points
    assert rep.max_residual <= 1e-6


def test_data_driven_norm_chain_on_fixtures(fixtures_by_id, grid):
    for fid in ("f0", "f1"):
        fx = fixtures_by_id[fid]
        bundle = solve_full(fx.F, fx.H, grid)
        bnm = comb(fx.m - 1, bundle.k - 1)
        for i in range(fx.m):
            sup_Gi = max(np.linalg.norm(bundle.G_parts[i].eval(z)) for z in grid.points)
            assert sup_Gi <= factorial(bundle.k) * bnm * bundle.sup_v[i] * (1 + 1e-9)


def test_bundle_bound_fields(fixtures_by_id, grid):
    fx = fixtures_by_id["f1"]
    bundle = solve_full(fx.F, fx.H, grid)
    m, k = fx.m, bundle.k
    assert bundle.bound_closed_form == pytest.approx(m * comb(m - 1, k - 1) * K_constant())
    assert bundle.bound_closed_form_loose == pytest.approx(
        m * factorial(k) * comb(m - 1, k - 1) * K_constant()
    )
    assert bundle.bound_data_driven == pytest.approx(
        m * factorial(k) * comb(m - 1, k - 1) * max(bundle.sup_v)
    )


def test_radical_check_trivial(small_grid):
    h = P(0.3, 0.1)
    F = PolyMatrix.from_rows([[P(1)]])
    G = PolyMatrix.from_rows([[h]])
    H = PolyMatrix.from_rows([[h]])
    rep = radical_necessary_check(F, G, H, 1, small_grid)
    assert rep.passed
    assert rep.min_margin >= -1e-10


def test_radical_check_on_solved_fixture(fixtures_by_id, grid):
    fx = fixtures_by_id["f1"]
    bundle = solve_full(fx.F, fx.H, grid)
    rep = radical_necessary_check(fx.F, bundle.G, fx.H, 1, grid)
    assert rep.passed
    assert rep.min_margin >= -1e-10
    assert rep.constant == pytest.approx(bundle.sup_G ** 2)
    assert rep.constant_exponent_2m == pytest.approx(bundle.sup_G ** (2 * fx.m))


def test_radical_check_scaling(small_grid):
    h = P(0.3, 0.1)
    F = PolyMatrix.from_rows([[P(1)]])
    G = PolyMatrix.from_rows([[h]])
    H = PolyMatrix.from_rows([[h]])
    base = radical_necessary_check(F, G, H, 1, small_grid)
    scaled = radical_necessary_check(F, G.scale(2.0), H.scale(2.0), 1, small_grid)
    assert scaled.constant == pytest.approx(4 * base.constant, rel=1e-12)
    assert scaled.passed


def test_radical_check_precondition(small_grid):
    F = PolyMatrix.from_rows([[P(1)]])
    G = PolyMatrix.from_rows([[P(0.3)]])
    H = PolyMatrix.from_rows([[P(0.9)]])
    with pytest.raises(PreconditionError):
        radical_necessary_check(F, G, H, 1, small_grid)


def test_radical_check_squared_target(small_grid):
    # F G = H^2 with G carrying the squared entry
    h = P(0.2, 0.1)
    F = PolyMatrix.from_rows([[P(1)]])
    G = PolyMatrix.from_rows([[h * h]])
    H = PolyMatrix.from_rows([[h]])
    rep = radical_necessary_check(F, G, H, 2, small_grid)
    assert rep.passed


def test_concat_empty_second_block_reduces_to_solve(fixtures_by_id, grid):
    fx = fixtures_by_id["f0"]
    res = concat_solve(fx.F, None, fx.H, grid)
    plain = solve_full(fx.F, fx.H, grid)
    assert res.bundle.max_residual == pytest.approx(plain.max_residual, abs=1e-15)
    assert res.G2.rows == 0
    assert res.exact_split


def test_concat_trivial_blocks(small_grid):
    F1 = PolyMatrix.from_rows([[P(1), P(0)]])
    F2 = PolyMatrix.from_rows([[P(0), P(0)]])
    h = P(0.3, -0.2)
    H = PolyMatrix.from_rows([[h]])
    res = concat_solve(F1, F2, H, small_grid)
    assert res.bundle.success
    assert res.G1.entry(0, 0).coeffs == h.coeffs
    for row in res.G2.entries:
        assert row[0].is_zero


def test_concat_two_block_fixture(fixtures_by_id, grid):
    fa, fb = fixtures_by_id["f1"], fixtures_by_id["f1b"]
    res = concat_solve(fa.F, fb.F, fa.H, grid, norm_mode="inequality")
    b = res.bundle
    assert b.success
    assert b.max_residual <= 1e-6 * b.hypothesis_report.sup_H
    assert res.exact_split
    assert res.split_residual <= 1e-13 * max(b.sup_G, 1.0)
    # recombination reproduces H on the grid
    for z in grid.points[::97]:
        lhs = fa.F.eval(z) @ res.G1.eval(z) + fb.F.eval(z) @ res.G2.eval(z)
        np.testing.assert_allclose(lhs, fa.H.eval(z), atol=1e-9)


def test_concat_row_mismatch():
    F1 = PolyMatrix.from_rows([[P(1)]])
    F2 = PolyMatrix.from_rows([[P(1)], [P(0)]])
    with pytest.raises(ValueError):
        concat_solve(F1, F2, PolyMatrix.from_rows([[P(1)]]))
