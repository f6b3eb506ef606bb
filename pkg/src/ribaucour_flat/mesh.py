"""Sample, mask, project and tessellate transformed surfaces."""
from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields, replace

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import core
from .core import GeneratorConfig, TorusParams
from .errors import EmptyMesh, MeshIOError, NearPole, OutOfRange, UnprojectedMesh
from .grids import GridSpec

DEFAULT_MASK_THRESHOLD = 1e-3
ATTRIBUTES = ("psi1", "psi2", "lt1", "lt2", "margin")


@dataclass(frozen=True)
class ProjectionSpec:
    kind: str = "stereographic"
    pre_rotation: tuple = (0.0, 0.0)
    pole_tolerance: float = 1e-6

    def __post_init__(self):
        if self.kind not in ("none", "stereographic"):
            raise OutOfRange("projection.kind", self.kind, "projection kind must be 'none' or 'stereographic'")
        if not self.pole_tolerance > 0:
            raise OutOfRange("projection.pole_tol", self.pole_tolerance, "pole tolerance must be positive")
        object.__setattr__(self, "pre_rotation", tuple(float(v) for v in self.pre_rotation))

    def to_dict(self):
        return {"kind": self.kind, "pre_rotate": list(self.pre_rotation), "pole_tol": self.pole_tolerance}


def _stereographic(p, spec):
    q = core.rotation_rtp(spec.pre_rotation[0], spec.pre_rotation[1], p)
    denom = 1.0 - q[..., 3]
    ok = denom >= spec.pole_tolerance
    with np.errstate(divide="ignore", invalid="ignore"):
        out = q[..., :3] / np.where(ok, denom, np.nan)[..., None]
    return out, ok


def project_stereographic(p, spec: ProjectionSpec = ProjectionSpec()):
    """(x1, x2, x3) / (1 - x4) after the pre-rotation; NearPole if 1 - x4 is
    below the pole tolerance."""
    out, ok = _stereographic(np.asarray(p, dtype=float), spec)
    if not np.all(ok):
        raise NearPole("point lies within the pole tolerance of (0, 0, 0, 1)")
    return out


@dataclass
class SampledField:
    """EvalRecord on a lattice plus the vertex mask (True = kept)."""

    grid: GridSpec
    record: core.EvalRecord
    keep: np.ndarray
    tallies: dict
    meta: dict
    projection: ProjectionSpec | None = None
    projected: np.ndarray | None = None

    @property
    def points(self):
        return self.record.Xt


def _concat_records(parts):
    def cat(vals):
        return np.concatenate(vals, axis=0)

    r0 = parts[0]
    frame = core.TorusFrame(*(cat([getattr(p.frame, k) for p in parts]) for k in ("X", "N", "e1", "e2")),
                            r0.frame.a, r0.frame.lambda1, r0.frame.lambda2)
    scal = core.ScalarBundle(**{k.name: cat([getattr(p.scalars, k.name) for p in parts])
                                for k in fields(core.ScalarBundle)})
    rest = {k.name: cat([getattr(p, k.name) for p in parts])
            for k in fields(core.EvalRecord) if k.name not in ("frame", "scalars")}
    return core.EvalRecord(frame=frame, scalars=scal, **rest)


def sample_grid(params: TorusParams, cfg: GeneratorConfig, grid: GridSpec,
                mask_threshold: float = DEFAULT_MASK_THRESHOLD, threads: int | None = 1) -> SampledField:
    """Evaluate every lattice vertex; mask singular, overflowing or non-finite ones.

    Rows are split across ``threads`` workers and reassembled in order, so
    the result does not depend on the thread count.
    """
    cfg = core.validate_config(params, cfg)
    if not mask_threshold >= 0:
        raise OutOfRange("mask_threshold", mask_threshold)
    U1, U2 = grid.lattice()
    threads = max(1, int(threads or 1))
    if threads == 1:
        rec = core.evaluate(params, cfg, U1, U2)
    else:
        chunks = np.array_split(np.arange(grid.n2), threads)
        chunks = [c for c in chunks if len(c)]
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda c: core.evaluate(params, cfg, U1[c], U2[c]), chunks))
        rec = _concat_records(parts)
    finite = np.all(np.isfinite(rec.Xt), axis=-1) & np.isfinite(rec.margin)
    singular = finite & ~rec.overflow & ~(np.abs(rec.margin) > max(mask_threshold, core.REGULAR_TOL))
    keep = rec.regular & ~singular
    tallies = {
        "overflow": int(np.count_nonzero(rec.overflow)),
        "nonfinite": int(np.count_nonzero(~finite & ~rec.overflow)),
        "singular": int(np.count_nonzero(singular)),
        "near_pole": 0,
    }
    meta = {"params": core.describe(params, cfg), "grid": grid.to_dict(), "mask_threshold": mask_threshold}
    return SampledField(grid, rec, keep, tallies, meta)


def apply_projection(sampled: SampledField, spec: ProjectionSpec | None) -> SampledField:
    """Attach projected coordinates; vertices near the pole are masked."""
    if spec is None or spec.kind == "none":
        return replace(sampled, projection=spec, projected=None)
    proj, ok = _stereographic(sampled.record.Xt, spec)
    near = sampled.keep & ~ok
    tallies = dict(sampled.tallies, near_pole=int(np.count_nonzero(near)))
    meta = dict(sampled.meta, projection=spec.to_dict())
    return replace(sampled, keep=sampled.keep & ok, tallies=tallies, meta=meta, projection=spec, projected=proj)


@dataclass
class SurfaceMesh:
    """Triangles over the kept lattice vertices.

    ``vertices`` holds the projected 3-vectors when a projection was applied,
    otherwise the raw 4-vectors (also always available as ``raw``).
    ``mask`` covers the whole lattice in row-major order; ``grid_index``
    maps each mesh vertex back into it.
    """

    vertices: np.ndarray
    raw: np.ndarray
    faces: np.ndarray
    attributes: dict
    mask: np.ndarray
    grid_index: np.ndarray
    meta: dict = field(default_factory=dict)
    tallies: dict = field(default_factory=dict)

    @property
    def is_projected(self):
        return self.vertices.shape[1] == 3

    @property
    def masked_fraction(self):
        return 1.0 - np.count_nonzero(self.mask) / self.mask.size

    def connected_components(self):
        """(count, label per vertex) over the face adjacency; isolated
        vertices count as their own components."""
        n = len(self.vertices)
        f = self.faces
        rows = np.concatenate([f[:, 0], f[:, 1], f[:, 2]])
        cols = np.concatenate([f[:, 1], f[:, 2], f[:, 0]])
        adj = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
        return connected_components(adj, directed=False)

    def summary(self):
        margin = self.attributes["margin"]
        return {
            "vertices": int(len(self.vertices)),
            "faces": int(len(self.faces)),
            "grid_vertices": int(self.mask.size),
            "masked": int(self.mask.size - np.count_nonzero(self.mask)),
            "masked_fraction": float(self.masked_fraction),
            "min_abs_margin": float(np.min(np.abs(margin))) if len(margin) else None,
            "tallies": dict(self.tallies),
        }


def tessellate(sampled: SampledField) -> SurfaceMesh:
    """Two triangles per grid cell whose four corners are kept.

    Cells whose corner margins differ in sign straddle the excluded set and
    are dropped as well (tallied as ``crossing_cells``). The split diagonal
    runs from (u1, u2) to (u1 + du1, u2 + du2).
    """
    keep = sampled.keep
    n2, n1 = keep.shape
    margin = sampled.record.margin
    sgn = np.sign(np.where(keep, margin, 0.0))

    k00, k10 = keep[:-1, :-1], keep[:-1, 1:]
    k01, k11 = keep[1:, :-1], keep[1:, 1:]
    full = k00 & k10 & k01 & k11
    s = sgn[:-1, :-1]
    same = (sgn[:-1, 1:] == s) & (sgn[1:, :-1] == s) & (sgn[1:, 1:] == s)
    cells = full & same

    flat_keep = keep.ravel()
    new_index = np.full(flat_keep.size, -1, dtype=np.int64)
    grid_index = np.flatnonzero(flat_keep)
    new_index[grid_index] = np.arange(len(grid_index))
    new_index = new_index.reshape(keep.shape)

    jj, ii = np.nonzero(cells)
    v00 = new_index[jj, ii]
    v10 = new_index[jj, ii + 1]
    v01 = new_index[jj + 1, ii]
    v11 = new_index[jj + 1, ii + 1]
    faces = np.empty((2 * len(jj), 3), dtype=np.int64)
    faces[0::2] = np.stack([v00, v10, v11], axis=-1)
    faces[1::2] = np.stack([v00, v11, v01], axis=-1)
    if len(faces) == 0:
        raise EmptyMesh("no grid cell has four regular corners")

    rec = sampled.record
    raw = rec.Xt.reshape(-1, 4)[grid_index]
    verts = raw if sampled.projected is None else sampled.projected.reshape(-1, 3)[grid_index]
    attrs = {name: getattr(rec, name).ravel()[grid_index] for name in ATTRIBUTES}
    tallies = dict(sampled.tallies, crossing_cells=int(np.count_nonzero(full & ~same)))
    return SurfaceMesh(verts, raw, faces, attrs, flat_keep.copy(), grid_index, dict(sampled.meta), tallies)


def build_mesh(params: TorusParams, cfg: GeneratorConfig, grid: GridSpec,
               projection: ProjectionSpec | None = ProjectionSpec(),
               mask_threshold: float = DEFAULT_MASK_THRESHOLD, threads: int | None = 1) -> SurfaceMesh:
    sampled = sample_grid(params, cfg, grid, mask_threshold, threads)
    return tessellate(apply_projection(sampled, projection))


def _fmt(x):
    return format(float(x), ".17g")


def obj_text(mesh: SurfaceMesh) -> str:
    if not mesh.is_projected:
        raise UnprojectedMesh("OBJ export needs 3-D vertices; apply a projection first")
    if len(mesh.faces) == 0:
        raise EmptyMesh("mesh has no faces")
    lines = [f"v {_fmt(x)} {_fmt(y)} {_fmt(z)}" for x, y, z in mesh.vertices]
    lines += [f"f {i + 1} {j + 1} {k + 1}" for i, j, k in mesh.faces]
    return "\n".join(lines) + "\n"


def _write(path, text):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise MeshIOError(f"cannot write {path}: {exc}") from exc


def export_obj(mesh: SurfaceMesh, path) -> None:
    """Write ``v x y z`` lines (17 significant digits) then 1-indexed ``f`` lines."""
    _write(path, obj_text(mesh))


def _floats(a):
    a = np.asarray(a, dtype=float)
    return [None if not math.isfinite(v) else v for v in a.tolist()] if a.ndim == 1 else [_floats(r) for r in a]


def mesh_to_dict(mesh: SurfaceMesh) -> dict:
    out = {
        "params": mesh.meta.get("params", {}),
        "grid": mesh.meta.get("grid", {}),
        "vertices": _floats(mesh.raw),
        "mask": [bool(v) for v in mesh.mask],
        "grid_index": [int(v) for v in mesh.grid_index],
        "faces": mesh.faces.tolist(),
        "attributes": {k: _floats(v) for k, v in mesh.attributes.items()},
    }
    if mesh.is_projected:
        out["projected"] = _floats(mesh.vertices)
        out["projection"] = mesh.meta.get("projection", {})
    return out


def export_json(obj, path) -> None:
    """Write a mesh, a report (anything with ``to_dict``) or a plain dict as JSON."""
    if isinstance(obj, SurfaceMesh):
        if len(obj.faces) == 0:
            raise EmptyMesh("mesh has no faces")
        data = mesh_to_dict(obj)
    elif hasattr(obj, "to_dict"):
        data = obj.to_dict()
    else:
        data = obj
    _write(path, json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n")
