"""
Frenet frames and the helix family
==================================

Curvature, torsion and the slant-helix invariant sigma on the catalog
curves, and how a curve is classified from its invariants.
"""

# %%
import numpy as np

from devgeom.curves import (FrenetCurve, classify_curve, curve_invariants, default_samples,
                            frenet_apparatus, parse_curve)

# %%
# A circular helix (2 cos t, 2 sin t, t) reparametrized by arc length has
# kappa = a / (a^2 + b^2) = 0.4 and tau = b / (a^2 + b^2) = 0.2 everywhere.
helix = parse_curve("helix:a=2,b=1")
fd = frenet_apparatus(helix.jet(1.0))
print(f"helix  kappa={fd.kappa:.12f}  tau={fd.tau:.12f}")
print("frame is orthonormal:", np.allclose(np.array([fd.T, fd.N, fd.B]) @ np.array([fd.T, fd.N, fd.B]).T, np.eye(3)))

# %%
# Invariants along each catalog curve.  rho = tau / kappa is constant for
# general helices; sigma is constant for slant helices.
for name in ("circle", "helix:a=2,b=1", "slant:sigma=0.3", "twisted-cubic"):
    curve = parse_curve(name)
    inv = curve_invariants(curve, default_samples(curve, 64))
    cls = classify_curve(curve)
    print(f"{name:<16} class={cls.verdict:<15} "
          f"kappa in [{inv['kappa'].min():.3f}, {inv['kappa'].max():.3f}]  "
          f"sigma in [{inv['sigma'].min():+.4f}, {inv['sigma'].max():+.4f}]")

# %%
# Curves can also be integrated from prescribed kappa(s) and tau(s).
# kappa = 1 and tau = s / 2 give a curve whose rho is linear in s.
linear_rho = FrenetCurve(lambda s: 1.0 + 0.0 * s, lambda s: 0.5 * s, (-2.0, 2.0), name="linear-rho")
for s in (-1.0, 0.0, 1.5):
    f = frenet_apparatus(linear_rho.jet(s))
    print(f"s={s:+.1f}  kappa={f.kappa:.9f}  tau={f.tau:+.9f}  (expected {0.5 * s:+.9f})")
