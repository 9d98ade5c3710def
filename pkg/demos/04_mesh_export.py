"""
Mesh export
===========

Sample a surface on a grid and write OBJ, CSV or JSON.  Singular vertices
are masked and the faces touching them are left out.
"""

# %%
import pathlib
import tempfile

import numpy as np

from devgeom.curves import parse_curve
from devgeom.export import export_mesh, mesh_from_surface
from devgeom.special import make_special

helix = parse_curve("helix:a=2,b=1")
surf = make_special("tangent", helix)

# %%
# v = 0 is the edge of regression of the tangent developable.
grid = mesh_from_surface(surf, np.linspace(-6, 6, 25), np.linspace(-1.5, 1.5, 7))
print("masked vertices:", int(grid.mask.sum()), "faces kept:", len(grid.faces()))

# %%
out = pathlib.Path(tempfile.mkdtemp())
for fmt in ("obj", "csv", "json"):
    path = out / f"tangent_helix.{fmt}"
    text = export_mesh(grid, fmt, path)
    print(f"{path}: {len(text.splitlines())} lines")

# %%
# The binormal surface is not flat: K = -tau^2 / (1 + v^2 tau^2)^2.
grid = mesh_from_surface(make_special("binormal", helix), [0.0, 1.0], np.linspace(-2, 2, 5))
print(export_mesh(grid, "csv"))
