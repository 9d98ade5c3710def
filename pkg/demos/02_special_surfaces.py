"""
Ruled surfaces from the Frenet apparatus
========================================

The six ruled surfaces over a curve: which are flat, and how the closed
form fundamental coefficients compare with the generic computation.
"""

# %%
import numpy as np

from devgeom import ruled as rs
from devgeom.curves import parse_curve
from devgeom.errors import SingularPointError
from devgeom.special import KINDS, closed_form_forms, make_special

slant = parse_curve("slant:sigma=0.3")

# %%
# Flatness: the developable kinds satisfy det(T, delta, delta') = 0 along
# the base and their Gaussian curvature vanishes.
for kind in KINDS:
    surf = make_special(kind, slant)
    flag, res = rs.is_developable(surf)
    g = rs.sample_grid(surf, np.linspace(-4, 4, 17), np.linspace(-2, 2, 9))
    print(f"{kind:<19} developable={flag!s:<5} det residual={res:.2e}  "
          f"max|K|={np.nanmax(np.abs(g.K)):.2e}  singular samples={int(g.mask.sum())}")

# %%
# Closed form against generic coefficients at one point.
s, v = 0.7, 1.1
for kind in KINDS:
    cf = closed_form_forms(kind, slant, s, v)
    ff = rs.fundamental_forms(rs.surface_jet(make_special(kind, slant), s, v))
    err = max(abs(getattr(cf, k) - getattr(ff, k)) for k in "EFGefg")
    print(f"{kind:<19} orientation={cf.orientation:+.0f}  max coefficient difference {err:.1e}")

# %%
# The tangential-darboux surface is singular along v = sigma; on a slant
# helix that is a constant line.
td = make_special("tangential-darboux", slant)
try:
    rs.unit_normal(rs.surface_jet(td, 1.0, 0.3))
except SingularPointError as exc:
    print("singular:", exc)
