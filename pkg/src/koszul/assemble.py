"""Assembly of division solutions from stacked chain-row coefficients.

Each target row i gets its own vector G_i: for every k-tuple of row
indices, the ordered block determinant with a coordinate-selector top row
and the degree-lowering operators below is applied to that tuple's block
of the solved coefficient vector, summed over tuples, and scaled by k.
Tuples not containing i contribute nothing because their selector row is
zero.  G is the sum of the G_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

import numpy as np

from .combinat import enumerate_tuples
from .corona import ScalarSolveResult, check_hypotheses, HypothesisReport, scalar_corona_solve
from .detk import det_k_gram
from .errors import PreconditionError
from .estimates import K_constant
from .exterior import q_matrix
from .opdet import BlockOperatorMatrix, numeric_rank, operator_det
from .poly import DiscGrid, PolyMatrix, grid_map, sup_operator_norm


def build_Gi(F: PolyMatrix, v_i: PolyMatrix, i: int, k: int) -> PolyMatrix:
    """Assemble the d x 1 vector for target row i from its solved coefficients.

    v_i stacks one C(d, k) block per k-tuple in canonical order.  The k = 1
    case reduces to copying the block of the selected row.
    """
    m, d = F.shape
    if not 1 <= i <= m:
        raise ValueError(f"target row {i} out of range 1..{m}")
    if k < 1 or k > min(m, d):
        raise ValueError(f"need 1 <= k <= min(m, d), got k={k}")
    tuples_k = enumerate_tuples(m, k)
    block_len = comb(d, k)
    if v_i.shape != (len(tuples_k) * block_len, 1):
        raise ValueError(
            f"expected stacked vector of shape ({len(tuples_k) * block_len}, 1), "
            f"got {v_i.shape}"
        )
    poly_rows = [list(F.entries[r]) for r in range(m)]
    G = PolyMatrix.zeros(d, 1)
    for t_index, pi in enumerate(tuples_k):
        if i not in pi:
            continue  # selector row vanishes on these tuples
        block = _selector_block(poly_rows, d, i, pi, k)
        v_block = v_i.submatrix(
            slice(t_index * block_len, (t_index + 1) * block_len), slice(0, 1)
        )
        G = G + block @ v_block
    return G.scale(float(k))


def _selector_block(poly_rows, d: int, i: int, pi, k: int) -> PolyMatrix:
    """Ordered block determinant for one tuple: selector top row, then the
    degree-lowering operators of the tuple's rows."""
    rows = [[PolyMatrix.identity(d) if j == i else PolyMatrix.zeros(d, d) for j in pi]]
    for s in range(1, k):
        rows.append([q_matrix(poly_rows[j - 1], s).matrix for j in pi])
    return operator_det(BlockOperatorMatrix.from_rows(rows))


def norm_bound(m: int, k: int) -> float:
    """The closed-form multiplier-norm bound m * C(m-1, k-1) * K."""
    if k < 1 or k > m:
        raise ValueError(f"need 1 <= k <= m, got k={k}, m={m}")
    return m * comb(m - 1, k - 1) * K_constant()


@dataclass(frozen=True)
class OffdiagReport:
    max_residual: float
    argmax_point: complex | None
    excluded_points: tuple[complex, ...]


def offdiagonal_annihilation_check(
    F: PolyMatrix, G_i: PolyMatrix, i: int, grid: DiscGrid, k: int | None = None
) -> OffdiagReport:
    """Grid maximum of |f_j(z) . G_i(z)| over rows j != i.

    Points where the numeric rank of F(z) drops below k are excluded from
    the maximum and listed, since the vanishing argument only applies at
    full detected rank.
    """
    m, d = F.shape
    F_vals = grid_map(F.eval, grid.points)
    if k is None:
        k = max(numeric_rank(Fz) for Fz in F_vals)
    included_max, argmax = 0.0, None
    excluded = []
    for z, Fz in zip(grid.points, F_vals):
        Gz = G_i.eval(z)
        if numeric_rank(Fz) < k:
            excluded.append(z)
            continue
        for j in range(1, m + 1):
            if j == i:
                continue
            val = abs((Fz[j - 1:j, :] @ Gz)[0, 0])
            if val > included_max:
                included_max, argmax = val, z
    return OffdiagReport(
        max_residual=included_max, argmax_point=argmax, excluded_points=tuple(excluded)
    )


@dataclass(frozen=True)
class SolutionBundle:
    """Everything solve_full produces for one instance."""

    G: PolyMatrix
    G_parts: tuple[PolyMatrix, ...]
    scalar_solutions: tuple[ScalarSolveResult, ...]
    hypothesis_report: HypothesisReport
    k: int
    residuals: tuple[float, ...]
    max_residual: float
    mean_residual: float
    argmax_point: complex
    sup_G: float
    sup_v: tuple[float, ...]
    bound_closed_form: float            # m * C(m-1, k-1) * K
    bound_closed_form_loose: float      # m * k! * C(m-1, k-1) * K
    bound_data_driven: float            # m * k! * C(m-1, k-1) * max_i sup |v_i|
    failed_rows: tuple[int, ...]
    failure: str | None

    @property
    def success(self) -> bool:
        return self.failure is None and not self.failed_rows

    def residual_ok(self, rel: float = 1e-6) -> bool:
        return self.max_residual <= rel * max(self.hypothesis_report.sup_H, 1e-300)


def solve_full(
    F: PolyMatrix,
    H: PolyMatrix,
    grid: DiscGrid | None = None,
    degree_cap: int | None = None,
    tol: float | None = None,
    norm_mode: str = "strict",
) -> SolutionBundle:
    """Run the scalar division for every row, assemble G, and measure it.

    Requires the range hypothesis to hold on the grid; a failed scalar
    solve is flagged in the bundle rather than raised.
    """
    grid = grid or DiscGrid.default()
    hyp = check_hypotheses(F, H, grid, norm_mode=norm_mode)
    m, d = F.shape
    k = hyp.k_detected

    def aborted(reason: str) -> SolutionBundle:
        nan = float("nan")
        return SolutionBundle(
            G=PolyMatrix.zeros(d, 1), G_parts=(), scalar_solutions=(),
            hypothesis_report=hyp, k=k, residuals=(0.0,) * len(grid),
            max_residual=0.0, mean_residual=0.0, argmax_point=grid.points[0],
            sup_G=0.0, sup_v=(), bound_closed_form=nan,
            bound_closed_form_loose=nan, bound_data_driven=nan,
            failed_rows=(), failure=reason,
        )

    if not hyp.passed_range:
        return aborted("hypothesis-range")
    if k < 1:
        return aborted("rank-zero")

    solutions, parts, failed = [], [], []
    for i in range(1, m + 1):
        sol = scalar_corona_solve(
            F, H.entry(i - 1, 0), i, k, degree_cap=degree_cap, tol=tol, grid=grid
        )
        solutions.append(sol)
        if not sol.success:
            failed.append(i)
        parts.append(build_Gi(F, sol.v, i, k))

    G = parts[0]
    for p in parts[1:]:
        G = G + p
    residuals = grid_map(
        lambda z: float(np.linalg.norm(F.eval(z) @ G.eval(z) - H.eval(z))), grid.points
    )
    imax = int(np.argmax(residuals))
    sup_v = tuple(s.sup_v for s in solutions)
    binom = comb(m - 1, k - 1)
    return SolutionBundle(
        G=G,
        G_parts=tuple(parts),
        scalar_solutions=tuple(solutions),
        hypothesis_report=hyp,
        k=k,
        residuals=tuple(residuals),
        max_residual=float(residuals[imax]),
        mean_residual=float(np.mean(residuals)),
        argmax_point=grid.points[imax],
        sup_G=sup_operator_norm(G, grid),
        sup_v=sup_v,
        bound_closed_form=m * binom * K_constant(),
        bound_closed_form_loose=m * factorial(k) * binom * K_constant(),
        bound_data_driven=m * factorial(k) * binom * (max(sup_v) if sup_v else 0.0),
        failed_rows=tuple(failed),
        failure=None,
    )


@dataclass(frozen=True)
class RadicalReport:
    power: int
    constant: float            # (grid sup of |G|)^2, the implemented constant
    constant_exponent_2m: float  # (grid sup of |G|)^(2m), recorded for comparison
    margins: tuple[float, ...]
    min_margin: float
    argmin_point: complex
    precondition_residual: float
    passed: bool


def radical_necessary_check(
    F: PolyMatrix, G: PolyMatrix, H: PolyMatrix, n: int, grid: DiscGrid | None = None
) -> RadicalReport:
    """Check C * det_1(F F^*) >= |h_i|^(2n) pointwise, C = (sup |G|)^2.

    Requires F G = H^n on the grid (entrywise n-th power of H); the margin
    then holds by Cauchy-Schwarz at every point.  The 2m-exponent variant
    of the constant is recorded alongside for comparison.
    """
    if n < 1:
        raise ValueError(f"power must be a positive integer, got {n}")
    grid = grid or DiscGrid.default()
    m = F.rows
    Hn = PolyMatrix.from_rows([[H.entry(r, 0) ** n] for r in range(m)])
    pre_resid = max(
        grid_map(
            lambda z: float(np.linalg.norm(F.eval(z) @ G.eval(z) - Hn.eval(z))),
            grid.points,
        )
    )
    sup_Hn = max(float(np.linalg.norm(Hn.eval(z))) for z in grid.points)
    if pre_resid > 1e-6 * max(sup_Hn, 1.0):
        raise PreconditionError(
            f"F G = H^{n} fails on the grid: residual {pre_resid:.3e}"
        )
    sup_G = sup_operator_norm(G, grid)
    C = sup_G ** 2
    margins = []
    for z in grid.points:
        d1 = det_k_gram(F.eval(z), 1)
        Hz = np.abs(H.eval(z)).max()
        margins.append(C * d1 - float(Hz) ** (2 * n))
    imin = int(np.argmin(margins))
    return RadicalReport(
        power=n,
        constant=C,
        constant_exponent_2m=sup_G ** (2 * m),
        margins=tuple(margins),
        min_margin=float(margins[imin]),
        argmin_point=grid.points[imin],
        precondition_residual=pre_resid,
        passed=margins[imin] >= -1e-10,
    )


@dataclass(frozen=True)
class ConcatResult:
    G1: PolyMatrix
    G2: PolyMatrix
    bundle: SolutionBundle
    exact_split: bool       # G1 stacked over G2 reproduces G bitwise
    split_residual: float   # coefficient residual of F1 G1 + F2 G2 = FG


def concat_solve(
    F1: PolyMatrix,
    F2: PolyMatrix | None,
    H: PolyMatrix,
    grid: DiscGrid | None = None,
    degree_cap: int | None = None,
    tol: float | None = None,
    norm_mode: str = "strict",
) -> ConcatResult:
    """Solve against the column concatenation of two blocks and split G.

    The split itself is a row slice of G, so restacking G1 over G2 must
    reproduce G coefficient for coefficient; the recombined product
    F1 G1 + F2 G2 matches the unsplit product up to summation reordering.
    """
    if F2 is not None and F2.cols > 0 and F2.rows != F1.rows:
        raise ValueError(f"row count mismatch: {F1.rows} vs {F2.rows}")
    big = F1 if F2 is None or F2.cols == 0 else F1.hstack(F2)
    bundle = solve_full(big, H, grid=grid, degree_cap=degree_cap, tol=tol, norm_mode=norm_mode)
    d1 = F1.cols
    G1 = bundle.G.submatrix(slice(0, d1), slice(0, 1))
    G2 = bundle.G.submatrix(slice(d1, big.cols), slice(0, 1))
    exact_split = G1.entries + G2.entries == bundle.G.entries
    recombined = F1 @ G1
    if G2.rows > 0 and F2 is not None and F2.cols > 0:
        recombined = recombined + F2 @ G2
    whole = big @ bundle.G
    diff = recombined - whole
    split_residual = max(
        (abs(c) for row in diff.entries for e in row for c in e.coeffs), default=0.0
    )
    return ConcatResult(
        G1=G1, G2=G2, bundle=bundle, exact_split=exact_split, split_residual=split_residual
    )
