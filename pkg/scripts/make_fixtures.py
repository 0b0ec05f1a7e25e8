#!/usr/bin/env python3
"""Regenerate the committed fixtures.

Each fixture is built the same way: pick a polynomial matrix with
structurally coprime top minors (so exact polynomial solutions exist),
scale it so its grid sup-norm is 1, pick a small known preimage u, set
H = F u, and shrink u until the minor-sum bound dominates every |h_i|
with a factor-of-two margin.  Deterministic; writes into fixtures/.
"""

import pathlib
import sys

import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from koszul.corona import check_hypotheses
from koszul.detk import det_k_gram
from koszul.fixtures import Fixture, save_fixture
from koszul.opdet import numeric_rank
from koszul.poly import DiscGrid, Polynomial, PolyMatrix

OUT = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def p(*coeffs):
    return Polynomial(tuple(complex(c) for c in coeffs))


def normalize(F_raw: PolyMatrix, grid: DiscGrid) -> PolyMatrix:
    s = max(np.linalg.norm(F_raw.eval(z), 2) for z in grid.points)
    return F_raw.scale(1.0 / s)


def fit_preimage(F: PolyMatrix, u0: PolyMatrix, grid: DiscGrid) -> tuple[PolyMatrix, PolyMatrix]:
    """Scale u0 so that det_k(F F*)^(3/2) >= 2 max_i |h_i| on the grid."""
    k = max(numeric_rank(F.eval(z)) for z in grid.points)
    H0 = F @ u0
    lam = np.inf
    for z in grid.points:
        hmax = float(np.max(np.abs(H0.eval(z))))
        if hmax < 1e-14:
            continue
        lam = min(lam, max(det_k_gram(F.eval(z), k), 0.0) ** 1.5 / hmax)
    lam = 0.5 * lam
    u = u0.scale(lam)
    return u, F @ u


def build_f0():
    grid = DiscGrid.default()
    F_raw = PolyMatrix.from_rows([[p(-0.8, 1.6), p(0.7)]])
    F = normalize(F_raw, grid)
    u0 = PolyMatrix.from_rows([[p(0.3, 0.2j)], [p(-0.25 + 0.1j)]])
    u, H = fit_preimage(F, u0, grid)
    return Fixture("f0", 1, 2, 8, F, H, u_known=u)


def build_f1():
    grid = DiscGrid.default()
    F_raw = PolyMatrix.from_rows([
        [p(1), p(0, 0.5), p(0)],
        [p(0, -1 / 3), p(1), p(0, 0, 0.25)],
    ])
    F = normalize(F_raw, grid)
    u0 = PolyMatrix.from_rows([[p(0.5, 0.25j)], [p(-0.4 + 0.1j)], [p(0, 0.3)]])
    u, H = fit_preimage(F, u0, grid)
    return Fixture("f1", 2, 3, 8, F, H, u_known=u)


def build_f2():
    grid = DiscGrid.default()
    F_raw = PolyMatrix.from_rows([
        [p(1), p(0), p(0), p(0, 0.5)],
        [p(0), p(1), p(0), p(0, 0, -0.2)],
        [p(0), p(0), p(1), p(1 / 7, 1 / 7)],
    ])
    F = normalize(F_raw, grid)
    u0 = PolyMatrix.from_rows(
        [[p(0.3, 0.1j)], [p(-0.2, 0, 0.1)], [p(0.15j)], [p(0.1, -0.1)]]
    )
    u, H = fit_preimage(F, u0, grid)
    return Fixture("f2", 3, 4, 8, F, H, u_known=u)


def build_f3():
    # second row vanishes at z = 1/2, which sits on the default grid: the
    # rank of F(1/2) drops to 1 while the detected max rank is 2
    grid = DiscGrid.default()
    zmh = p(-0.5, 1)  # z - 1/2
    F_raw = PolyMatrix.from_rows([
        [p(1), p(0), p(0)],
        [p(0), zmh * p(1.2), zmh * p(0.75)],
    ])
    F = normalize(F_raw, grid)
    u0 = PolyMatrix.from_rows([
        [zmh ** 3 * p(0.6)],
        [zmh ** 2 * p(0.5, 0.2j)],
        [zmh ** 2 * p(-0.3)],
    ])
    u, H = fit_preimage(F, u0, grid)
    return Fixture("f3", 2, 3, 8, F, H, u_known=u)


def build_f1b():
    # concatenation partner for f1: same row count, two extra columns
    return Fixture(
        "f1b", 2, 2, 8,
        PolyMatrix.from_rows([[p(0, 0.25), p(0.3)], [p(0.2), p(0, 0, -1 / 6)]]),
        PolyMatrix.from_rows([[p(0)], [p(0)]]),
    )


def main():
    OUT.mkdir(exist_ok=True)
    for build in (build_f0, build_f1, build_f2, build_f3, build_f1b):
        fx = build()
        save_fixture(fx, OUT / f"{fx.fixture_id}.json")
        if fx.fixture_id == "f1b":
            print(f"{fx.fixture_id}: concat partner, no hypothesis target")
            continue
        hyp = check_hypotheses(fx.F, fx.H, fx.grid or DiscGrid.default())
        print(
            f"{fx.fixture_id}: k={hyp.k_detected} min_margin={hyp.min_margin:.3e} "
            f"norm={hyp.norm_estimate:.12f} range_resid={hyp.max_range_residual:.2e} "
            f"all_passed={hyp.all_passed}"
        )


if __name__ == "__main__":
    main()
