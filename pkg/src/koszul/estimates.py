"""Auxiliary constants and the iterated-logarithm gauge function.

K is the closed-form constant 1 + 4*sqrt(e) + 8*sqrt(2)*e + 72*e^(3/2),
strictly between 361 and 362.  The gauge alpha(t) is the triple-log
expression normalized so that alpha(1) = 1 and alpha(0) = 0; it needs a
base constant c > e^e so every log in sight stays positive on (0, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .poly import DiscGrid, PolyMatrix, grid_map

E_TO_E = math.e ** math.e


def K_constant() -> float:
    """1 + 4*sqrt(e) + 8*sqrt(2)*e + 72*e^(3/2) in double precision."""
    e = math.e
    return 1.0 + 4.0 * math.sqrt(e) + 8.0 * math.sqrt(2.0) * e + 72.0 * e ** 1.5


def _alpha_unnormalized(t: float, c: float) -> float:
    x = c / t
    l1 = math.log(x)
    l2 = math.log(l1)
    l3 = math.log(l2)
    return l1 ** -1.5 * l2 ** -1.5 / l3


@dataclass(frozen=True)
class AlphaParams:
    """Gauge parameters: base c > e^e, normalizer fixed by alpha(1) = 1.

    A0 is always derived from c; supplying it independently would let the
    normalization drift.
    """

    c: float = 16.0
    A0: float = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.c <= E_TO_E:
            raise ValueError(f"need c > e^e = {E_TO_E:.6f}, got {self.c}")
        if self.A0 is not None:
            raise ValueError("A0 is derived from c and cannot be supplied")
        object.__setattr__(self, "A0", 1.0 / _alpha_unnormalized(1.0, self.c))


def alpha(t: float, params: AlphaParams | None = None) -> float:
    """The normalized triple-log gauge; exactly 0 at t = 0."""
    params = params or AlphaParams()
    if t < 0 or t > 1:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    if t == 0:
        return 0.0
    return params.A0 * _alpha_unnormalized(t, params.c)


@dataclass(frozen=True)
class AlphaMarginReport:
    margins: tuple[float, ...]
    min_margin: float
    argmin_point: complex
    params_c: float
    passed: bool


def alpha_hypothesis_check(
    F: PolyMatrix,
    h,
    grid: DiscGrid,
    params: AlphaParams | None = None,
) -> AlphaMarginReport:
    """Pointwise margins of t * alpha(t) - |h(z)| with t = F(z) F(z)^*.

    Only the scalar-row case is supported (F must be 1 x d) and F must be
    normalized: t above 1 + 1e-9 anywhere raises PreconditionError.
    """
    params = params or AlphaParams()
    if F.rows != 1:
        raise ValueError(f"scalar-row check needs a 1 x d matrix, got {F.shape}")
    if isinstance(h, PolyMatrix):
        if h.shape != (1, 1):
            raise ValueError(f"h must be scalar, got shape {h.shape}")
        h = h.entry(0, 0)

    def margin(z):
        row = F.eval(z)
        t = float((row @ row.conj().T)[0, 0].real)
        if t > 1 + 1e-9:
            raise PreconditionError(f"F is not normalized: F(z)F(z)* = {t} at z = {z}")
        t = min(max(t, 0.0), 1.0)
        return t * alpha(t, params) - abs(h(z))

    margins = grid_map(margin, grid.points)
    imin = int(np.argmin(margins))
    return AlphaMarginReport(
        margins=tuple(margins),
        min_margin=float(margins[imin]),
        argmin_point=grid.points[imin],
        params_c=params.c,
        passed=margins[imin] >= -1e-12,
    )
