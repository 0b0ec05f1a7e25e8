"""Hypothesis checks and the degree-capped scalar division step.

The three hypotheses checked on a grid: the k-th minor sum of F F^*
raised to 3/2 dominates every |h_i|; the multiplier norm of F is 1 (or at
most 1 in inequality mode); and H lies in the pointwise range of F.  The
division step assembles the stacked chain row over all k-tuples of row
indices and solves for polynomial coefficients; it is a search with a
degree cap, so a miss is reported rather than raised.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .combinat import enumerate_tuples
from .detk import det_k_gram
from .exterior import chain_row
from .opdet import numeric_rank
from .poly import (
    CoefficientSolveReport,
    DiscGrid,
    PolyMatrix,
    coefficient_match_solve,
    grid_map,
    spectral_norm,
    sup_operator_norm,
)


@dataclass(frozen=True)
class HypothesisReport:
    """Grid verdicts for the three hypotheses plus the detected rank."""

    k_detected: int
    k_expected: int | None
    k_mismatch: bool
    minor_margins: tuple[float, ...]
    min_margin: float
    argmin_margin_point: complex
    norm_estimate: float
    norm_mode: str
    range_residuals: tuple[float, ...]
    max_range_residual: float
    argmax_range_point: complex
    sup_H: float
    passed_minor_bound: bool
    passed_norm: bool
    passed_range: bool

    @property
    def all_passed(self) -> bool:
        return self.passed_minor_bound and self.passed_norm and self.passed_range


def pointwise_min_norm_solution(F_point, H_point) -> tuple[np.ndarray, float]:
    """Minimal-norm least-squares solution of F u = H at one point."""
    F = np.atleast_2d(np.asarray(F_point, dtype=complex))
    H = np.asarray(H_point, dtype=complex).reshape(-1)
    u = np.linalg.pinv(F, rcond=1e-10) @ H
    return u, float(np.linalg.norm(F @ u - H))


def check_hypotheses(
    F: PolyMatrix,
    H: PolyMatrix,
    grid: DiscGrid | None = None,
    norm_mode: str = "strict",
    expected_k: int | None = None,
) -> HypothesisReport:
    if H.rows != F.rows or H.cols != 1:
        raise ValueError(f"H must be {F.rows} x 1, got {H.shape}")
    if norm_mode not in ("strict", "inequality"):
        raise ValueError(f"unknown norm mode {norm_mode!r}")
    grid = grid or DiscGrid.default()

    F_vals = grid_map(F.eval, grid.points)
    H_vals = grid_map(H.eval, grid.points)

    k = max((numeric_rank(Fz) for Fz in F_vals), default=0)
    k_mismatch = expected_k is not None and expected_k != k

    margins = []
    for Fz, Hz in zip(F_vals, H_vals):
        dk = det_k_gram(Fz, k) if k >= 1 else 0.0
        margins.append(max(dk, 0.0) ** 1.5 - float(np.max(np.abs(Hz))))
    imin = int(np.argmin(margins))

    norm_est = max(spectral_norm(Fz) for Fz in F_vals)
    if norm_mode == "strict":
        passed_norm = abs(norm_est - 1.0) <= 1e-6
    else:
        passed_norm = norm_est <= 1.0 + 1e-6

    range_residuals = [
        pointwise_min_norm_solution(Fz, Hz)[1] for Fz, Hz in zip(F_vals, H_vals)
    ]
    imax = int(np.argmax(range_residuals))
    sup_H = max(float(np.linalg.norm(Hz)) for Hz in H_vals)

    return HypothesisReport(
        k_detected=k,
        k_expected=expected_k,
        k_mismatch=k_mismatch,
        minor_margins=tuple(margins),
        min_margin=float(margins[imin]),
        argmin_margin_point=grid.points[imin],
        norm_estimate=float(norm_est),
        norm_mode=norm_mode,
        range_residuals=tuple(range_residuals),
        max_range_residual=float(range_residuals[imax]),
        argmax_range_point=grid.points[imax],
        sup_H=sup_H,
        passed_minor_bound=margins[imin] >= -1e-12,
        passed_norm=passed_norm,
        passed_range=range_residuals[imax] <= 1e-8 * sup_H,
    )


def corona_row(F: PolyMatrix, k: int) -> PolyMatrix:
    """The k!-scaled stacked chain row over all k-tuples of row indices.

    Block pi holds the ordered chain of the rows selected by pi; blocks in
    canonical tuple order, each of width C(d, k).  The squared pointwise
    norm of the row equals (k!)^2 times the k-th minor sum of F F^*.
    """
    m, d = F.shape
    if k < 1 or k > min(m, d):
        raise ValueError(f"need 1 <= k <= min(m, d) = {min(m, d)}, got k={k}")
    blocks = None
    for pi in enumerate_tuples(m, k):
        rows = [list(F.entries[i]) for i in pi.zero_based]
        block = chain_row(rows)
        blocks = block if blocks is None else blocks.hstack(block)
    return blocks.scale(float(factorial(k)))


@dataclass(frozen=True)
class ScalarSolveResult:
    v: PolyMatrix  # stacked C(m,k)*C(d,k) x 1 solution, canonical tuple order
    target_row: int
    k: int
    residual: float
    success: bool
    sup_v: float
    degree_cap: int
    solve_report: CoefficientSolveReport


def scalar_corona_solve(
    F: PolyMatrix,
    h_target,
    i: int,
    k: int,
    degree_cap: int | None = None,
    tol: float | None = None,
    grid: DiscGrid | None = None,
) -> ScalarSolveResult:
    """Solve (stacked chain row) . v = h for polynomial coefficients of v.

    ``i`` records which target row the solution feeds; the row itself does
    not depend on it.  Failure to meet ``tol`` is reported in the result,
    since a solution may exist at a higher degree cap.
    """
    if isinstance(h_target, PolyMatrix):
        if h_target.shape != (1, 1):
            raise ValueError(f"target must be scalar, got {h_target.shape}")
        h_target = h_target.entry(0, 0)
    grid = grid or DiscGrid.default()
    if degree_cap is None:
        degree_cap = 2 * max(F.max_degree, h_target.degree) + 4
    if tol is None:
        sup_h = max(abs(h_target(z)) for z in grid.points)
        tol = 1e-8 * max(1.0, sup_h)
    R = corona_row(F, k)
    b = PolyMatrix.from_rows([[h_target]])
    v, rep = coefficient_match_solve(R, b, degree_cap=degree_cap, tol=tol, grid=grid)
    sup_v = sup_operator_norm(v, grid)
    return ScalarSolveResult(
        v=v, target_row=i, k=k,
        residual=rep.residual, success=rep.success,
        sup_v=sup_v, degree_cap=degree_cap, solve_report=rep,
    )
