"""Look at the metric far out and near the excluded set.

Far along u1 the metric coefficients approach the torus value r1 r2, but
the transformed surface is only defined off the curves where psi1 psi2 = 0,
and those curves do occur. This prints both sides of that picture.
"""
import math

import numpy as np

from ribaucour_flat import core, verify
from ribaucour_flat.core import Family, GeneratorConfig, TorusParams
from ribaucour_flat.grids import GridSpec

params = TorusParams(0.6)
cfg = GeneratorConfig(4.0, Family.COSH_SINH)

for u1 in (2.0, 5.0, 10.0, 20.0):
    psi = np.array(core.metric_coefficients(params, cfg, u1, np.array([-1.0, 0.0, 1.0])))
    print(f"u1={u1:5.1f}: max | |psi_i| - r1 r2 | = {np.max(np.abs(np.abs(psi) - params.a)):.2e}")

roots = verify.locate_margin_roots(params, cfg, 0.0, np.linspace(-3, 3, 601))
print("margin zeros on u1 = 0:", np.round(roots, 9))
print("closed form asinh(3)/1.2 =", math.asinh(3) / 1.2)

scan = verify.completeness_scan(params, cfg, GridSpec(-4, 4, -4, 4, 201, 201))
print(f"min |psi1| = {scan.min_abs_psi1:.2e} at {tuple(scan.argmin_psi1)}")
print(f"min |psi2| = {scan.min_abs_psi2:.2e} at {tuple(scan.argmin_psi2)}")
print(f"{len(scan.singular_samples)} lattice points within the mask threshold, "
      f"{len(scan.singular_roots)} refined zeros along the columns")
