"""Ordered determinants of block-operator matrices.

The determinant of a grid of operators is the permutation-signed sum of
products taken strictly in row order; blocks need not commute, so the
order is part of the definition.  Block (j, k) maps the space with
signature index j+1 into the space with index j: every block in row j
shares its source and target, and each column just selects which operator
sits in that slot.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial

import numpy as np

from .errors import PreconditionError
from .exterior import chain_row, q_matrix

#: Relative singular-value threshold for numeric rank decisions.
RANK_RTOL = 1e-10


def _block_shape(b):
    return b.shape


@dataclass(frozen=True)
class BlockOperatorMatrix:
    """An n x n grid of operator blocks with a common dimension signature.

    ``signature`` lists the n+1 space dimensions; block (j, k) must have
    shape (signature[j], signature[j+1]), which makes every row-ordered
    product of one block per row composable.
    """

    blocks: tuple[tuple[object, ...], ...]
    signature: tuple[int, ...]

    def __post_init__(self):
        n = len(self.blocks)
        if len(self.signature) != n + 1:
            raise ValueError(
                f"signature needs {n + 1} dimensions for an {n}x{n} grid, "
                f"got {len(self.signature)}"
            )
        for j, row in enumerate(self.blocks):
            if len(row) != n:
                raise ValueError(f"row {j} has {len(row)} blocks, expected {n}")
            want = (self.signature[j], self.signature[j + 1])
            for k, b in enumerate(row):
                if _block_shape(b) != want:
                    raise ValueError(
                        f"block ({j},{k}) has shape {_block_shape(b)}, expected {want}"
                    )

    @classmethod
    def from_rows(cls, rows) -> "BlockOperatorMatrix":
        rows = tuple(tuple(r) for r in rows)
        signature = [_block_shape(rows[0][0])[0]]
        for row in rows:
            signature.append(_block_shape(row[0])[1])
        return cls(rows, tuple(signature))

    @property
    def n(self) -> int:
        return len(self.blocks)


def permutation_sign(perm) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def operator_det(B: BlockOperatorMatrix):
    """Signed sum over permutations of row-ordered block products.

    Returns an operator of shape (signature[0], signature[-1]).  Factorial
    expansion; intended for n <= 6.
    """
    n = B.n
    acc = None
    for perm in itertools.permutations(range(n)):
        term = B.blocks[0][perm[0]]
        for j in range(1, n):
            term = term @ B.blocks[j][perm[j]]
        signed = term if permutation_sign(perm) > 0 else -term
        acc = signed if acc is None else acc + signed
    return acc


def numeric_rank(A: np.ndarray, rtol: float = RANK_RTOL) -> int:
    """Count of singular values above rtol times the largest."""
    A = np.atleast_2d(np.asarray(A))
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def _scalar_top_blocks(scalars):
    return [np.array([[complex(s)]]) for s in scalars]


def _mixed_block_matrix(top_scalars, f_rows) -> BlockOperatorMatrix:
    """Block matrix with a scalar first row, then f rows, then their
    degree-lowering operators of increasing degree."""
    cols = len(top_scalars)
    p = cols - 1
    d = len(f_rows[0])
    rows = [_scalar_top_blocks(top_scalars)]
    rows.append([np.asarray(f, dtype=complex).reshape(1, d) for f in f_rows])
    for s in range(1, p):
        rows.append([q_matrix(f, s).matrix for f in f_rows])
    return BlockOperatorMatrix.from_rows(rows)


def top_row_expansion_residual(h_scalars, f_rows) -> float:
    """Residual of the scalar-top-row determinant identity.

    The determinant of the mixed block matrix (scalars, rows, then their
    lowering operators) collapses to p! times an alternating expansion in
    which each scalar multiplies the ordered chain of the remaining rows.
    Holds for arbitrary complex data; contract is ~1e-9 at unit scale.
    """
    h = [complex(x) for x in h_scalars]
    p = len(h) - 1
    if p < 1:
        raise ValueError("need at least two columns")
    if len(f_rows) != p + 1:
        raise ValueError("need one row per scalar")
    d = len(f_rows[0])
    if p > d:
        raise ValueError(f"need p <= d, got p={p}, d={d}")
    lhs = operator_det(_mixed_block_matrix(h, f_rows))
    rhs = h[0] * chain_row(f_rows[1:])
    for l in range(1, p + 1):
        rest = [f_rows[0]] + [f_rows[c] for c in range(1, p + 1) if c != l]
        rhs = rhs + ((-1) ** l) * h[l] * chain_row(rest)
    rhs = factorial(p) * rhs
    return float(np.linalg.norm(lhs - rhs))


def rank_vanishing_det(F_point: np.ndarray, u: np.ndarray, pi) -> np.ndarray:
    """The mixed determinant whose top row is the consistent data F u.

    For the p+1 rows selected by pi, with F of rank at most p, the result
    vanishes.  Returned raw so callers can probe the full-rank case too.
    """
    F = np.asarray(F_point, dtype=complex)
    u = np.asarray(u, dtype=complex).reshape(-1)
    pi = list(pi)
    H = F @ u
    scalars = [H[i - 1] for i in pi]
    rows = [F[i - 1] for i in pi]
    return operator_det(_mixed_block_matrix(scalars, rows))


def rank_vanishing_residual(F_point: np.ndarray, u: np.ndarray, pi) -> float:
    """Norm of :func:`rank_vanishing_det` under the rank-deficiency precondition.

    Requires numeric rank of F at most p = len(pi) - 1; raises
    PreconditionError otherwise so callers can skip rather than misreport.
    """
    F = np.asarray(F_point, dtype=complex)
    p = len(list(pi)) - 1
    s = np.linalg.svd(F, compute_uv=False)
    if len(s) > p and s[0] > 0 and s[p] > RANK_RTOL * s[0]:
        raise PreconditionError(
            f"rank precondition failed: sigma_{p + 1}/sigma_1 = {s[p] / s[0]:.3e}"
        )
    return float(np.linalg.norm(rank_vanishing_det(F, u, pi)))
