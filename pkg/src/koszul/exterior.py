"""Exterior powers of C^d and the wedge/contraction operators built from rows.

For a row vector a, the adjoint operator sends w to conj(a) ^ w and raises
the degree by one; its adjoint lowers the degree and has entries that are
signed copies of the row entries themselves (no conjugates), so a row of
polynomials yields an operator with polynomial entries.  Numeric and
polynomial instances share one construction path; all signs come from
:func:`koszul.combinat.insertion_sign`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from . import combinat
from .combinat import IndexTuple, enumerate_tuples
from .poly import Polynomial, PolyMatrix


def exterior_basis(d: int, n: int) -> list[IndexTuple]:
    """Standard basis tuples of the degree-n exterior power of C^d."""
    if n > d:
        raise ValueError(f"degree {n} exceeds ambient dimension {d}")
    return enumerate_tuples(d, n)


@dataclass(frozen=True)
class WedgeOperator:
    """Matrix of a degree-raising (adjoint=True) or degree-lowering operator."""

    matrix: object  # numpy array or PolyMatrix
    source_degree: int
    target_degree: int
    adjoint: bool

    @property
    def shape(self):
        return self.matrix.shape


def _lowering_entries(d: int, n: int):
    """Entry positions of the degree-lowering operator on standard bases.

    Yields (row, col, sign, p) with p the 1-based row-vector index whose
    entry lands at that position: the (row, col) entry is sign * a_p.
    """
    rows = exterior_basis(d, n)
    cols = exterior_basis(d, n + 1)
    row_index = {t.entries: i for i, t in enumerate(rows)}
    for cidx, tau in enumerate(cols):
        for p in tau:
            sigma = tau.drop(p)
            yield row_index[sigma.entries], cidx, combinat.insertion_sign(p, sigma), p


def q_matrix(a, n: int) -> WedgeOperator:
    """Degree-lowering operator of a row: degree n+1 -> degree n.

    Accepts a numeric vector or a sequence of polynomials.  Entries are 0
    or signed row entries, so polynomial rows give polynomial operators.
    """
    a = list(a)
    d = len(a)
    if n + 1 > d:
        raise ValueError(f"need n+1 <= d, got n={n}, d={d}")
    is_poly = any(isinstance(e, Polynomial) for e in a)
    if is_poly:
        a = [e if isinstance(e, Polynomial) else Polynomial.const(e) for e in a]
        shape = (comb(d, n), comb(d, n + 1))
        M = [[Polynomial((0j,)) for _ in range(shape[1])] for _ in range(shape[0])]
        for r, c, sign, p in _lowering_entries(d, n):
            M[r][c] = M[r][c] + sign * a[p - 1]
        mat = PolyMatrix.from_rows(M)
    else:
        av = np.asarray(a, dtype=complex)
        mat = np.zeros((comb(d, n), comb(d, n + 1)), dtype=complex)
        for r, c, sign, p in _lowering_entries(d, n):
            mat[r, c] += sign * av[p - 1]
    return WedgeOperator(mat, source_degree=n + 1, target_degree=n, adjoint=False)


def q_star_matrix(a, n: int) -> WedgeOperator:
    """Degree-raising operator w -> conj(a) ^ w: degree n -> degree n+1."""
    av = np.asarray(list(a), dtype=complex)
    d = len(av)
    if n + 1 > d:
        raise ValueError(f"need n+1 <= d, got n={n}, d={d}")
    mat = np.zeros((comb(d, n + 1), comb(d, n)), dtype=complex)
    for r, c, sign, p in _lowering_entries(d, n):
        mat[c, r] += sign * np.conj(av[p - 1])
    return WedgeOperator(mat, source_degree=n, target_degree=n + 1, adjoint=True)


def clifford_residual(a, n: int) -> float:
    """Residual of Q_n* Q_n + Q_{n+1} Q_{n+1}* = |a|^2 I on degree n+1.

    Contract: at most 1e-10 * |a|^2 for any nonzero a with n + 2 <= d.
    """
    av = np.asarray(list(a), dtype=complex)
    if not np.any(av):
        raise ValueError("row must be nonzero")
    d = len(av)
    if n + 2 > d:
        raise ValueError(f"need n+2 <= d, got n={n}, d={d}")
    Qn = q_matrix(av, n).matrix
    Qn1 = q_matrix(av, n + 1).matrix
    norm2 = float(np.vdot(av, av).real)
    I = np.eye(comb(d, n + 1))
    return float(np.linalg.norm(Qn.conj().T @ Qn + Qn1 @ Qn1.conj().T - norm2 * I, 2))


def contraction_anticommute_residual(a, b, n: int) -> float:
    """Residual of Q_a^(n) Q_b^(n+1) = -Q_b^(n) Q_a^(n+1).

    Contract: at most 1e-12 * |a| * |b|; exactly zero when a == b.
    """
    av = np.asarray(list(a), dtype=complex)
    bv = np.asarray(list(b), dtype=complex)
    d = len(av)
    if n + 2 > d:
        raise ValueError(f"need n+2 <= d, got n={n}, d={d}")
    lhs = q_matrix(av, n).matrix @ q_matrix(bv, n + 1).matrix
    rhs = q_matrix(bv, n).matrix @ q_matrix(av, n + 1).matrix
    return float(np.linalg.norm(lhs + rhs, 2))


def exact_compose(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Matrix product whose exactly-opposite term pairs cancel bitwise.

    BLAS and SIMD complex kernels fuse multiply-adds, which spoils the
    cancellation this package's exact-zero checks rely on.  Splitting into
    real components keeps every elementwise product correctly rounded and
    symmetric in its operands, so term pairs that are opposite in exact
    arithmetic stay opposite in floating point and sum to exact zeros.
    """
    Ar, Ai = np.ascontiguousarray(A.real), np.ascontiguousarray(A.imag)
    Br, Bi = np.ascontiguousarray(B.real), np.ascontiguousarray(B.imag)
    a_r, a_i = Ar[:, :, None], Ai[:, :, None]
    b_r, b_i = Br[None, :, :], Bi[None, :, :]
    re = (a_r * b_r - a_i * b_i).sum(axis=1)
    im = (a_r * b_i + a_i * b_r).sum(axis=1)
    return re + 1j * im


def range_kernel_composition(a, n: int) -> np.ndarray:
    """The composition of two successive degree-raising operators of one row.

    Identically zero: the raised range sits inside the next kernel.  Each
    entry is a sum of at most two exactly-opposite products, so the result
    is bitwise zero and callers may compare against zero without tolerance.
    """
    up1 = q_star_matrix(a, n).matrix
    up2 = q_star_matrix(a, n + 1).matrix
    return exact_compose(up2, up1)


def chain_row(rows):
    """Ordered product row_1 . Q_{row_2}^(1) ... Q_{row_k}^(k-1).

    Maps degree k to scalars; returned as a 1 x C(d, k) row.  Numeric rows
    give a numpy row, polynomial rows give a PolyMatrix.  Squaring its
    norm recovers the Gram determinant of the stacked rows.
    """
    rows = list(rows)
    k = len(rows)
    if k == 0:
        raise ValueError("need at least one row")
    first = list(rows[0])
    d = len(first)
    if k > d:
        raise ValueError(f"need k <= d, got k={k}, d={d}")
    is_poly = any(
        isinstance(e, Polynomial) for r in rows for e in list(r)
    )
    if is_poly:
        out = PolyMatrix.from_rows([[_coerce_poly(e) for e in first]])
        for s in range(1, k):
            out = out @ q_matrix([_coerce_poly(e) for e in list(rows[s])], s).matrix
        return out
    out = np.asarray(first, dtype=complex).reshape(1, d)
    for s in range(1, k):
        out = out @ q_matrix(rows[s], s).matrix
    return out


def _coerce_poly(e) -> Polynomial:
    return e if isinstance(e, Polynomial) else Polynomial.const(e)
