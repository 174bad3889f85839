"""Instance manifests: JSON description of (L, S, t, g, points, seed)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .calculus import VectorForm
from .parser import ParseError, parse_expression, parse_rational
from .ratpoly import MultiPoly


class ManifestError(ValueError):
    pass


@dataclass
class Manifest:
    dimension_n: int
    structure: object = "canonical"
    semispray_vertical: list | None = None
    semispray: list | None = None
    strong_torsion: list | None = None
    metric: list | None = None
    points: list = field(default_factory=list)
    seed: int = 0


def _expr(src, n: int, where: str) -> MultiPoly:
    if isinstance(src, (int,)) and not isinstance(src, bool):
        src = str(src)
    if not isinstance(src, str):
        raise ManifestError(f"{where}: expected an expression string, got {src!r}")
    try:
        return parse_expression(src, n)
    except ParseError as exc:
        raise ManifestError(f"{where}: {exc}") from exc


def _matrix(rows, size: int, n: int, where: str) -> list:
    if not isinstance(rows, list) or len(rows) != size or any(not isinstance(r, list) or len(r) != size for r in rows):
        raise ManifestError(f"{where}: expected a {size}x{size} matrix")
    return [[_expr(e, n, f"{where}[{i}][{j}]") for j, e in enumerate(row)] for i, row in enumerate(rows)]


def _vector(items, size: int, n: int, where: str) -> list:
    if not isinstance(items, list) or len(items) != size:
        raise ManifestError(f"{where}: expected {size} expressions")
    return [_expr(e, n, f"{where}[{i}]") for i, e in enumerate(items)]


def parse_manifest(data: dict) -> Manifest:
    if not isinstance(data, dict):
        raise ManifestError("manifest must be a JSON object")
    known = {"dimension_n", "structure", "semispray_vertical", "semispray", "strong_torsion", "metric", "points", "seed"}
    extra = set(data) - known
    if extra:
        raise ManifestError(f"unknown manifest fields: {sorted(extra)}")
    n = data.get("dimension_n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ManifestError("dimension_n must be an integer >= 1")
    N = 2 * n
    m = Manifest(dimension_n=n)
    structure = data.get("structure", "canonical")
    if structure == "canonical":
        m.structure = "canonical"
        if "semispray" in data:
            m.semispray = _vector(data["semispray"], N, n, "semispray")
        elif "semispray_vertical" in data:
            m.semispray_vertical = _vector(data["semispray_vertical"], n, n, "semispray_vertical")
        else:
            raise ManifestError("semispray_vertical is required")
    elif isinstance(structure, dict):
        for key in ("L", "kernel_frame", "C"):
            if key not in structure:
                raise ManifestError(f"structure.{key} is required for a non-canonical L")
        frame = structure["kernel_frame"]
        if not isinstance(frame, list) or len(frame) != n:
            raise ManifestError(f"structure.kernel_frame must list {n} vector fields")
        m.structure = {
            "L": _matrix(structure["L"], N, n, "structure.L"),
            "kernel_frame": [_vector(f, N, n, f"structure.kernel_frame[{i}]") for i, f in enumerate(frame)],
            "C": _vector(structure["C"], N, n, "structure.C"),
        }
        if "semispray" not in data:
            raise ManifestError("a non-canonical L needs all 2n semispray components in 'semispray'")
        m.semispray = _vector(data["semispray"], N, n, "semispray")
    else:
        raise ManifestError("structure must be \"canonical\" or an object with L, kernel_frame, C")
    if data.get("strong_torsion") is not None:
        m.strong_torsion = _matrix(data["strong_torsion"], n, n, "strong_torsion")
    if data.get("metric") is not None:
        m.metric = _matrix(data["metric"], n, n, "metric")
    pts = data.get("points", [])
    if not isinstance(pts, list):
        raise ManifestError("points must be a list")
    for k, p in enumerate(pts):
        if not isinstance(p, list) or len(p) != N:
            raise ManifestError(f"points[{k}] must have {N} coordinates")
        try:
            m.points.append(tuple(parse_rational(c) for c in p))
        except ValueError as exc:
            raise ManifestError(f"points[{k}]: {exc}") from exc
    seed = data.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ManifestError("seed must be an integer")
    m.seed = seed
    return m


def load_manifest(path) -> Manifest:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ManifestError(f"cannot read manifest: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"invalid JSON: {exc}") from exc
    return parse_manifest(data)


def torsion_form(matrix: list, n: int) -> VectorForm:
    """``t = t^i_a dx^a (x) d/dy^i`` from its n x n coefficient matrix."""
    N = 2 * n
    full = [[MultiPoly.zero(N)] * N for _ in range(N)]
    for i in range(n):
        for a in range(n):
            full[n + i][a] = matrix[i][a]
    return VectorForm.from_matrix(full)
