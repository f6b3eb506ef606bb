"""Run the residual suite for each figure preset and print the worst rows.

Each row compares a closed form with either another closed form or a
difference quotient; the tolerance column is what the row must beat.
"""
import math

from ribaucour_flat import verify
from ribaucour_flat.core import Family, GeneratorConfig, TorusParams
from ribaucour_flat.presets import PRESETS

for name, d in PRESETS.items():
    params = TorusParams(d["r1"])
    kw = {k: d[k] for k in ("a1", "b1", "eps1", "eps2") if k in d}
    cfg = GeneratorConfig(d["c"], Family(d["family"]), **kw)
    report = verify.run_suite(params, cfg, n_samples=512, checks=["algebraic", "fd", "ribaucour", "flatness"])
    worst = max((c for c in report.checks if c.status != "info"), key=lambda c: c.max_abs / c.tolerance)
    print(f"{name:6s} {'ok  ' if report.passed else 'FAIL'} {len(report.checks)} rows; "
          f"closest to its tolerance: {worst.name} {worst.max_abs:.2e} / {worst.tolerance:.0e}")

# a shifted general-coefficient surface is a rotated copy of the canonical one
params = TorusParams(0.6)
k = params.r2 / params.r1
A2, B2 = 0.7, -0.3
cfg = GeneratorConfig(4.0, Family.GENERAL, a1=2.0 * math.cosh(A2), a2=2.0 * math.sinh(A2),
                      b1=2.0 * k * math.sinh(B2), b2=2.0 * k * math.cosh(B2))
report = verify.run_suite(params, cfg, n_samples=512, checks=["congruence"])
print("general config, congruence residual:", f"{report.get('congruence_shift').max_abs:.1e}")
