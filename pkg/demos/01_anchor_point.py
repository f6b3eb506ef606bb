"""Walk through the transform at a single point by hand.

The fig1 preset (r1 = 3/5, c = 4, cosh/sinh generators) at u = (0, 0):
every quantity is a small rational, so the printed numbers can be checked
by hand.
"""
import numpy as np

from ribaucour_flat import core
from ribaucour_flat.core import Family, GeneratorConfig, TorusParams

params = TorusParams(0.6)
cfg = GeneratorConfig(4.0, Family.COSH_SINH)

frame = core.torus_frame(params, 0.0, 0.0)
print("seed point X     ", frame.X)
print("seed normal N    ", frame.N)
print("principal frame  ", frame.e1, frame.e2)

b = core.eval_scalars(params, cfg, 0.0, 0.0)
print(f"f={b.f} g={b.g} f'={b.fp} g'={b.gp}")
print(f"Omega={b.Omega:.4f} W={b.W:.4f} S={b.S:.4f} T1={b.T1:.4f} T2={b.T2:.4f}")

Xt = core.transformed_point(params, cfg, 0.0, 0.0)
Nt = core.transformed_normal(params, cfg, 0.0, 0.0)
print("transformed X~   ", np.round(Xt, 15))
print("transformed N~   ", np.round(Nt, 15))
print("|X~|^2, |N~|^2, X~.N~ :", Xt @ Xt, Nt @ Nt, Xt @ Nt)

psi1, psi2 = core.metric_coefficients(params, cfg, 0.0, 0.0)
lt1, lt2 = core.principal_curvatures(params, cfg, 0.0, 0.0)
print(f"metric psi = ({psi1:.4f}, {psi2:.4f}); curvatures ({lt1:.6f}, {lt2:.6f}); product {lt1 * lt2:.15f}")

# both surfaces touch the same sphere at this point
print("contact point from the torus      ", core.sphere_congruence_point(params, cfg, 0.0, 0.0))
print("contact point from the new surface", core.sphere_congruence_point(params, cfg, 0.0, 0.0, from_transformed=True))

# the expanded normal formula as printed is not a unit vector
v = core.printed_normal_expansion(params, cfg, 0.0, 0.0)
print("printed-expansion normal", v, " |v|^2 =", v @ v)
