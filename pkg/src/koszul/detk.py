"""Sums of principal minors (the generalized determinant det_k).

det_k(B) adds the determinants of all k x k principal submatrices of B,
iterated in the canonical lexicographic tuple order.  Minors are computed
by LU factorization per minor; the eigenvalue and Cauchy-Binet routes live
here too but only as independent oracles, never as the primary path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .combinat import compress, enumerate_tuples


@dataclass(frozen=True)
class HermitianMatrix:
    """A square matrix symmetrized on construction."""

    matrix: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.matrix, dtype=complex)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {A.shape}")
        object.__setattr__(self, "matrix", (A + A.conj().T) / 2)

    @property
    def m(self) -> int:
        return self.matrix.shape[0]


def _as_square(B) -> np.ndarray:
    if isinstance(B, HermitianMatrix):
        return B.matrix
    A = np.asarray(B, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    return A


def det_k(B, k: int) -> complex:
    """Sum of all k x k principal minors of B."""
    A = _as_square(B)
    m = A.shape[0]
    if k < 1 or k > m:
        raise ValueError(f"need 1 <= k <= {m}, got k={k}")
    total = 0j
    for pi in enumerate_tuples(m, k):
        total += complex(np.linalg.det(compress(A, pi)))
    return total


def det_k_gram(F_point, k: int) -> float:
    """det_k of F F^* for a rectangular F; non-negative, ~0 beyond the rank."""
    F = np.atleast_2d(np.asarray(F_point, dtype=complex))
    val = det_k(F @ F.conj().T, k)
    return float(val.real)


def elementary_symmetric(values, k: int) -> complex:
    """e_k of a list of numbers by the stable recurrence."""
    values = list(values)
    if k < 0 or k > len(values):
        raise ValueError(f"need 0 <= k <= {len(values)}, got k={k}")
    e = [0j] * (k + 1)
    e[0] = 1 + 0j
    for lam in values:
        for j in range(min(k, len(e) - 1), 0, -1):
            e[j] = e[j] + lam * e[j - 1]
    return e[k]


def det_k_eigen_oracle(B, k: int) -> float:
    """Oracle: e_k of the eigenvalues of a Hermitian matrix."""
    A = _as_square(B)
    eig = np.linalg.eigvalsh((A + A.conj().T) / 2)
    return float(elementary_symmetric(eig, k).real)


def det_k_minor_sum_oracle(F_point, k: int) -> float:
    """Oracle: squared moduli of all k x k minors of F (rows x columns)."""
    F = np.atleast_2d(np.asarray(F_point, dtype=complex))
    m, d = F.shape
    if k > m or k > d:
        return 0.0
    total = 0.0
    for rho in enumerate_tuples(m, k):
        rows = F[list(rho.zero_based), :]
        for gamma in enumerate_tuples(d, k):
            sub = rows[:, list(gamma.zero_based)]
            total += abs(np.linalg.det(sub)) ** 2
    return total
