"""Mesh grids and byte-stable OBJ / CSV / JSON serialization."""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .ruled import RuledSurface, sample_grid

SCHEMA_VERSION = 1
FORMATS = ("obj", "csv", "json")

__all__ = ["MeshGrid", "mesh_from_surface", "export_mesh", "fmt_num", "dumps_json", "clean_json"]


def fmt_num(x: float) -> str:
    """12 significant digits, no locale, ``-0`` printed as ``0``."""
    x = float(x)
    if x == 0.0:
        return "0"
    if not math.isfinite(x):
        raise ValueError("cannot serialize a non-finite number")
    return f"{x:.12g}"


def clean_json(x):
    """Round floats to 12 significant digits; NaN and inf become null."""
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return None
        return 0.0 if x == 0.0 else float(f"{x:.12g}")
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, dict):
        return {str(k): clean_json(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [clean_json(v) for v in x]
    return x


def dumps_json(doc) -> str:
    return json.dumps(clean_json(doc), indent=2, sort_keys=True) + "\n"


@dataclass(frozen=True)
class MeshGrid:
    """``rows x cols`` vertices in row-major order (s outer, v inner)."""

    s: np.ndarray
    v: np.ndarray
    points: np.ndarray
    scalar: np.ndarray | None = None
    mask: np.ndarray | None = None

    def __post_init__(self):
        r, c = len(self.s), len(self.v)
        if r < 2 or c < 2:
            raise ValueError("mesh grid needs at least 2 x 2 vertices")
        if self.points.shape != (r, c, 3):
            raise ValueError(f"points must have shape ({r}, {c}, 3)")
        if not np.all(np.isfinite(self.points)):
            raise ValueError("mesh positions must be finite")
        mask = np.zeros((r, c), dtype=bool) if self.mask is None else np.asarray(self.mask, dtype=bool)
        object.__setattr__(self, "mask", mask)
        if self.scalar is not None:
            sc = np.array(self.scalar, dtype=float)
            sc[mask] = np.nan
            if not np.all(np.isfinite(sc[~mask])):
                raise ValueError("scalar channel must be finite on unmasked vertices")
            object.__setattr__(self, "scalar", sc)

    @property
    def shape(self):
        return self.points.shape[:2]

    def faces(self):
        """1-based triangle index triples; faces touching masked vertices are dropped."""
        rows, cols = self.shape
        out = []
        for i in range(rows - 1):
            for j in range(cols - 1):
                quad = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
                if any(self.mask[p] for p in quad):
                    continue
                a, b, c, d = (p[0] * cols + p[1] + 1 for p in quad)
                out += [(a, b, c), (a, c, d)]
        return out


def mesh_from_surface(surface: RuledSurface, s_values, v_values) -> MeshGrid:
    g = sample_grid(surface, s_values, v_values)
    return MeshGrid(g.s, g.v, g.points, g.K, g.mask)


def _obj(grid: MeshGrid) -> str:
    buf = io.StringIO()
    for p in grid.points.reshape(-1, 3):
        buf.write("v " + " ".join(fmt_num(x) for x in p) + "\n")
    for f in grid.faces():
        buf.write("f {} {} {}\n".format(*f))
    return buf.getvalue()


def _csv(grid: MeshGrid) -> str:
    buf = io.StringIO()
    buf.write("s,v,x,y,z,K\n")
    rows, cols = grid.shape
    for i in range(rows):
        for j in range(cols):
            vals = [grid.s[i], grid.v[j], *grid.points[i, j]]
            k = "" if grid.scalar is None or grid.mask[i, j] else fmt_num(grid.scalar[i, j])
            buf.write(",".join(fmt_num(x) for x in vals) + "," + k + "\n")
    return buf.getvalue()


def _json(grid: MeshGrid) -> str:
    doc = {
        "schema": SCHEMA_VERSION,
        "rows": grid.shape[0],
        "cols": grid.shape[1],
        "s": grid.s,
        "v": grid.v,
        "points": grid.points.reshape(-1, 3),
        "K": None if grid.scalar is None else grid.scalar.reshape(-1),
        "mask": grid.mask.reshape(-1).tolist(),
        "faces": grid.faces(),
    }
    return dumps_json(doc)


def export_mesh(grid: MeshGrid, fmt: str, path=None) -> str:
    """Serialize ``grid``; writes to ``path`` when given and returns the text."""
    writers = {"obj": _obj, "csv": _csv, "json": _json}
    if fmt not in writers:
        raise ValueError(f"unknown mesh format {fmt!r}; expected one of {', '.join(FORMATS)}")
    text = writers[fmt](grid)
    if path is not None:
        with open(path, "w", newline="\n", encoding="ascii") as fh:
            fh.write(text)
    return text
