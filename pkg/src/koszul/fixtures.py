"""Fixture and solution files.

A fixture is a JSON tree: dimensions m and d, polynomial arrays F (m x d)
and H (m x 1), an optional known preimage u_known, and optional grid
parameters.  Complex numbers are [re, im] pairs; polynomials are coefficient
lists in ascending degree.  Emission goes through json's shortest-repr
floats, so a parse/emit round trip reproduces every coefficient bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .poly import DEFAULT_DEGREE_CAP, DiscGrid, PolyMatrix, Polynomial


def _poly_to_json(p: Polynomial) -> list:
    return [[c.real, c.imag] for c in p.coeffs]


def _poly_from_json(obj, degree_cap: int, where: str) -> Polynomial:
    if not isinstance(obj, list) or not obj:
        raise ValueError(f"{where}: polynomial must be a non-empty list of [re, im] pairs")
    coeffs = []
    for pair in obj:
        if not isinstance(pair, list) or len(pair) != 2:
            raise ValueError(f"{where}: coefficient must be a [re, im] pair, got {pair!r}")
        coeffs.append(complex(float(pair[0]), float(pair[1])))
    p = Polynomial(tuple(coeffs))
    if p.degree > degree_cap:
        raise ValueError(f"{where}: degree {p.degree} exceeds cap {degree_cap}")
    return p


def _matrix_to_json(M: PolyMatrix) -> list:
    return [[_poly_to_json(e) for e in row] for row in M.entries]


def _matrix_from_json(obj, rows: int, cols: int, degree_cap: int, name: str) -> PolyMatrix:
    if not isinstance(obj, list) or len(obj) != rows:
        raise ValueError(f"{name}: expected {rows} rows")
    out = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != cols:
            raise ValueError(f"{name}: row {i} must have {cols} entries")
        out.append([_poly_from_json(e, degree_cap, f"{name}[{i}][{j}]")
                    for j, e in enumerate(row)])
    if not out:
        return PolyMatrix.zeros(rows, cols)
    return PolyMatrix.from_rows(out)


@dataclass(frozen=True)
class Fixture:
    fixture_id: str
    m: int
    d: int
    degree_cap: int
    F: PolyMatrix
    H: PolyMatrix
    u_known: PolyMatrix | None = None
    grid: DiscGrid | None = None

    def to_json_dict(self) -> dict:
        out = {
            "id": self.fixture_id,
            "m": self.m,
            "d": self.d,
            "degree_cap": self.degree_cap,
            "F": _matrix_to_json(self.F),
            "H": _matrix_to_json(self.H),
        }
        if self.u_known is not None:
            out["u_known"] = _matrix_to_json(self.u_known)
        if self.grid is not None:
            out["grid"] = {"radii": list(self.grid.radii), "angles": self.grid.angles}
        return out


def parse_fixture(obj: dict) -> Fixture:
    try:
        m = int(obj["m"])
        d = int(obj["d"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"fixture is missing integer m/d fields: {exc}")
    if m <= 0 or d < 0:
        raise ValueError(f"need m >= 1 and d >= 0, got m={m}, d={d}")
    degree_cap = int(obj.get("degree_cap", DEFAULT_DEGREE_CAP))
    F = _matrix_from_json(obj.get("F"), m, d, degree_cap, "F")
    H = _matrix_from_json(obj.get("H"), m, 1, degree_cap, "H")
    u_known = None
    if obj.get("u_known") is not None:
        u_known = _matrix_from_json(obj["u_known"], d, 1, degree_cap, "u_known")
    grid = None
    if obj.get("grid") is not None:
        gs = obj["grid"]
        try:
            grid = DiscGrid.make(gs["radii"], int(gs["angles"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"bad grid parameters: {exc}")
    return Fixture(
        fixture_id=str(obj.get("id", "unnamed")),
        m=m, d=d, degree_cap=degree_cap, F=F, H=H, u_known=u_known, grid=grid,
    )


def emit_fixture(fx: Fixture) -> str:
    return json.dumps(fx.to_json_dict(), indent=2, sort_keys=True) + "\n"


def load_fixture(path) -> Fixture:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not valid JSON: {exc}")
    return parse_fixture(obj)


def save_fixture(fx: Fixture, path) -> None:
    with open(path, "w") as fh:
        fh.write(emit_fixture(fx))


def emit_solution(G: PolyMatrix, meta: dict | None = None) -> str:
    obj = {"d": G.rows, "G": [_poly_to_json(row[0]) for row in G.entries]}
    if meta:
        obj["meta"] = meta
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def parse_solution(obj: dict) -> PolyMatrix:
    if "G" not in obj or not isinstance(obj["G"], list):
        raise ValueError("solution file needs a G array")
    polys = [[_poly_from_json(p, degree_cap=10 ** 6, where=f"G[{i}]")]
             for i, p in enumerate(obj["G"])]
    if not polys:
        return PolyMatrix.zeros(0, 1)
    return PolyMatrix.from_rows(polys)


def load_solution(path) -> PolyMatrix:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not valid JSON: {exc}")
    return parse_solution(obj)


def save_solution(G: PolyMatrix, path, meta: dict | None = None) -> None:
    with open(path, "w") as fh:
        fh.write(emit_solution(G, meta))
