"""Render the figure presets as shaded surfaces (needs matplotlib).

Meshes are built at a reduced resolution and drawn after stereographic
projection; the images land in ./figures.
"""
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from ribaucour_flat import mesh
from ribaucour_flat.core import Family, GeneratorConfig, TorusParams
from ribaucour_flat.grids import GridSpec
from ribaucour_flat.presets import PRESETS

os.makedirs("figures", exist_ok=True)
for name, d in PRESETS.items():
    params = TorusParams(d["r1"])
    kw = {k: d[k] for k in ("a1", "b1", "eps1", "eps2") if k in d}
    cfg = GeneratorConfig(d["c"], Family(d["family"]), **kw)
    g = d["grid"]
    grid = GridSpec(g["u1"][0], g["u1"][1], g["u2"][0], g["u2"][1], 120, 120)
    m = mesh.build_mesh(params, cfg, grid)
    # far-away vertices near the pole dominate the view; clip them
    keep = np.all(np.linalg.norm(m.vertices[m.faces], axis=-1) < 4.0, axis=1)
    fig = plt.figure(figsize=(6, 6))
    ax = fig.add_subplot(projection="3d")
    v = m.vertices
    ax.plot_trisurf(v[:, 0], v[:, 1], v[:, 2], triangles=m.faces[keep], cmap="viridis", linewidth=0)
    ax.set_title(f"{name}: r1={d['r1']}, c={d['c']}, {d['family']}")
    ax.set_axis_off()
    fig.savefig(f"figures/{name}.png", dpi=120, bbox_inches="tight")
    plt.close(fig)
    count, _ = m.connected_components()
    print(f"{name}: {len(m.faces)} faces, {count} pieces -> figures/{name}.png")
