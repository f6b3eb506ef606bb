"""Command-line front end: ``ribaucour {generate,verify,info}``.

Exit codes: 0 success, 1 invalid configuration, 2 runtime failure,
3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import core, mesh, verify
from .core import Family, GeneratorConfig, TorusParams
from .errors import ConfigError, GridTooLarge, OutOfRange, RibaucourError
from .grids import GridSpec
from .presets import PRESETS, preset

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME, EXIT_VERIFY = 0, 1, 2, 3

CONFIG_KEYS = {
    "r1", "c", "family", "a1", "a2", "b1", "b2", "eps1", "eps2",
    "grid", "projection", "mask_threshold", "fd_step",
}
# carried by presets and `info` output, accepted and ignored on input
META_KEYS = {"preset", "note", "anchor", "r2"}


@dataclass
class RunConfig:
    name: str
    params: TorusParams
    cfg: GeneratorConfig
    grid: GridSpec
    projection: mesh.ProjectionSpec
    mask_threshold: float
    fd: verify.FDConfig
    source: dict = field(default_factory=dict)

    def to_dict(self):
        out = core.describe(self.params, self.cfg)
        out.pop("r2")
        out.update(
            grid=self.grid.to_dict(),
            projection=self.projection.to_dict(),
            mask_threshold=self.mask_threshold,
            fd_step=self.fd.step,
        )
        for key in ("preset", "note"):
            if key in self.source:
                out[key] = self.source[key]
        return out


def _number(raw, key):
    if isinstance(raw, bool):
        raise ConfigError(f"invalid value for {key!r}: expected a number, got {raw!r}")
    try:
        v = float(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"invalid value for {key!r}: expected a number, got {raw!r}") from None
    if not math.isfinite(v):
        raise ConfigError(f"invalid value for {key!r}: {raw!r} is not finite")
    return v


def _pair(raw, key, conv=float):
    if not isinstance(raw, (list, tuple)) or len(raw) != 2:
        raise ConfigError(f"invalid value for {key!r}: expected a pair, got {raw!r}")
    return [conv(_number(v, key)) for v in raw]


def _build(data: dict) -> RunConfig:
    unknown = set(data) - CONFIG_KEYS - META_KEYS
    if unknown:
        raise ConfigError(f"unknown configuration key(s): {', '.join(sorted(unknown))}")
    for key in ("r1", "c"):
        if key not in data:
            raise ConfigError(f"missing required key {key!r}")
    try:
        params = TorusParams(_number(data["r1"], "r1"))
    except OutOfRange as exc:
        raise ConfigError(f"invalid value for 'r1': {exc}") from None
    try:
        family = Family(data.get("family", "cosh-sinh"))
    except ValueError:
        raise ConfigError(f"invalid value for 'family': {data.get('family')!r}") from None
    kw = {}
    for key in ("a1", "a2", "b1", "b2"):
        if key in data:
            kw[key] = _number(data[key], key)
    for key in ("eps1", "eps2"):
        if key in data:
            v = _number(data[key], key)
            if v not in (1.0, -1.0):
                raise ConfigError(f"invalid value for {key!r}: must be +1 or -1")
            kw[key] = int(v)
    cfg = GeneratorConfig(_number(data["c"], "c"), family, **kw)
    try:
        cfg = core.validate_config(params, cfg)
    except OutOfRange as exc:
        raise ConfigError(f"invalid value for {exc.key!r}: {exc}") from None
    except RibaucourError as exc:
        names = "'a1', 'a2', 'b1', 'b2'" if family is Family.GENERAL else "'a1', 'b1'"
        raise ConfigError(f"invalid generator coefficients ({names}): {exc}") from None

    g = data.get("grid")
    if g is None:
        rect = verify.default_rect(cfg)
        g = {"u1": list(rect[:2]), "u2": list(rect[2:]), "n": [400, 400]}
    if not isinstance(g, dict):
        raise ConfigError(f"invalid value for 'grid': {g!r}")
    try:
        u1 = _pair(g.get("u1"), "grid.u1")
        u2 = _pair(g.get("u2"), "grid.u2")
        n = _pair(g.get("n"), "grid.n", int)
        grid = GridSpec(u1[0], u1[1], u2[0], u2[1], n[0], n[1])
    except OutOfRange as exc:
        raise ConfigError(f"invalid value for {exc.key!r}: {exc}") from None
    except GridTooLarge as exc:
        raise ConfigError(f"invalid value for 'grid.n': {exc}") from None

    pr = data.get("projection", {})
    if not isinstance(pr, dict):
        raise ConfigError(f"invalid value for 'projection': {pr!r}")
    try:
        projection = mesh.ProjectionSpec(
            kind=pr.get("kind", "stereographic"),
            pre_rotation=tuple(_pair(pr.get("pre_rotate", [0.0, 0.0]), "projection.pre_rotate")),
            pole_tolerance=_number(pr.get("pole_tol", 1e-6), "projection.pole_tol"),
        )
        mask_threshold = _number(data.get("mask_threshold", mesh.DEFAULT_MASK_THRESHOLD), "mask_threshold")
        if mask_threshold < 0:
            raise OutOfRange("mask_threshold", mask_threshold, "mask_threshold must be >= 0")
        fd = verify.FDConfig(step=_number(data.get("fd_step", 1e-5), "fd_step"))
    except OutOfRange as exc:
        raise ConfigError(f"invalid value for {exc.key!r}: {exc}") from None
    name = data.get("preset") or "surface"
    return RunConfig(name, params, cfg, grid, projection, mask_threshold, fd, dict(data))


def _split_floats(text, count, key):
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != count:
        raise ConfigError(f"invalid value for {key!r}: expected {count} comma-separated numbers, got {text!r}")
    return [_number(p, key) for p in parts]


def parse_config(args) -> RunConfig:
    """Merge preset < config file < flags and validate."""
    data = {}
    if getattr(args, "preset", None):
        try:
            data.update(preset(args.preset))
        except KeyError as exc:
            raise ConfigError(str(exc.args[0])) from None
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                loaded = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed JSON in {args.config}: {exc}") from None
        if not isinstance(loaded, dict):
            raise ConfigError("config file must hold a JSON object")
        data.update(loaded)
    for key in ("r1", "c", "a1", "a2", "b1", "b2", "eps1", "eps2", "mask_threshold", "fd_step"):
        v = getattr(args, key, None)
        if v is not None:
            data[key] = v
    if getattr(args, "family", None):
        data["family"] = args.family
    if getattr(args, "grid", None):
        a, b, c, d, n1, n2 = _split_floats(args.grid, 6, "grid")
        if n1 != int(n1) or n2 != int(n2):
            raise ConfigError("invalid value for 'grid.n': vertex counts must be integers")
        data["grid"] = {"u1": [a, b], "u2": [c, d], "n": [int(n1), int(n2)]}
    if getattr(args, "projection", None) or getattr(args, "pre_rotate", None):
        pr = dict(data.get("projection", {}))
        if args.projection:
            pr["kind"] = args.projection
        if args.pre_rotate:
            pr["pre_rotate"] = _split_floats(args.pre_rotate, 2, "pre_rotate")
        data["projection"] = pr
    return _build(data)


def _jsonable(x):
    a = np.asarray(x, dtype=float)
    if a.ndim == 0:
        v = float(a)
        return v if math.isfinite(v) else None
    return [_jsonable(v) for v in a]


def anchor_record(run: RunConfig, u1=0.0, u2=0.0) -> dict:
    rec = core.evaluate(run.params, run.cfg, u1, u2)
    b = rec.scalars
    th = b.theta[..., None]
    return {
        "u": [u1, u2],
        "r2": run.params.r2,
        "f": _jsonable(b.f), "g": _jsonable(b.g), "fp": _jsonable(b.fp), "gp": _jsonable(b.gp),
        "Omega": _jsonable(b.Omega), "W": _jsonable(b.W), "S": _jsonable(b.S),
        "T1": _jsonable(b.T1), "T2": _jsonable(b.T2), "theta": _jsonable(b.theta),
        "Xt": _jsonable(rec.Xt), "Nt": _jsonable(rec.Nt),
        "psi1": _jsonable(rec.psi1), "psi2": _jsonable(rec.psi2),
        "lt1": _jsonable(rec.lt1), "lt2": _jsonable(rec.lt2),
        "margin": _jsonable(rec.margin),
        "congruence_point": _jsonable(np.cos(th) * rec.frame.X + np.sin(th) * rec.frame.N),
        "regular": bool(rec.regular),
    }


def run_info(run: RunConfig, out=None) -> int:
    out = out or sys.stdout
    doc = run.to_dict()
    doc["anchor"] = anchor_record(run)
    out.write(json.dumps(doc, indent=1, sort_keys=True) + "\n")
    return EXIT_OK


def run_generate(run: RunConfig, outdir: str, fmt: str | None = None, threads: int | None = None, out=None) -> int:
    out = out or sys.stdout
    m = mesh.build_mesh(run.params, run.cfg, run.grid, run.projection, run.mask_threshold, threads)
    fmt = fmt or ("obj" if m.is_projected else "json")
    os.makedirs(outdir, exist_ok=True)
    written = []
    if fmt in ("obj", "both"):
        path = os.path.join(outdir, run.name + ".obj")
        mesh.export_obj(m, path)
        written.append(path)
    if fmt in ("json", "both"):
        path = os.path.join(outdir, run.name + ".mesh.json")
        mesh.export_json(m, path)
        written.append(path)
    summary = dict(m.summary(), config=run.to_dict(), files=[os.path.basename(p) for p in written])
    path = os.path.join(outdir, run.name + ".summary.json")
    mesh.export_json(summary, path)
    written.append(path)
    for p in written:
        out.write(f"wrote {p}\n")
    return EXIT_OK


def run_verify(run: RunConfig, outdir: str | None = None, checks=None, samples: int = 1024, seed: int = 0,
               out=None) -> int:
    out = out or sys.stdout
    report = verify.run_suite(
        run.params, run.cfg, rect=run.grid.rect, n_samples=samples, seed=seed, fd=run.fd,
        mask_threshold=run.mask_threshold, checks=checks, scan_grid=run.grid,
    )
    for c in report.checks:
        out.write(f"{c.status:>17}  {c.name:<28} max={c.max_abs:.3e} tol={c.tolerance:.0e} n={c.count} skipped={c.skipped}\n")
    if report.scan is not None:
        s = report.scan
        out.write(
            f"{'info':>17}  scan: min|psi1|={s.min_abs_psi1:.3e} at {tuple(s.argmin_psi1)}, "
            f"min|psi2|={s.min_abs_psi2:.3e} at {tuple(s.argmin_psi2)}, "
            f"max line deviation={s.max_line_deviation:.3e}, margin roots={len(s.singular_roots)}\n"
        )
    if outdir:
        os.makedirs(outdir, exist_ok=True)
        path = os.path.join(outdir, run.name + ".verify.json")
        mesh.export_json(report, path)
        out.write(f"wrote {path}\n")
    bad = report.first_failure()
    if bad is not None:
        sys.stderr.write(f"verification failed: {bad.name} (max {bad.max_abs:.3e} > tol {bad.tolerance:.0e})\n")
        return EXIT_VERIFY
    return EXIT_OK


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--preset", choices=sorted(PRESETS))
    common.add_argument("--config", help="JSON configuration file")
    common.add_argument("--r1", type=float)
    common.add_argument("--c", type=float)
    common.add_argument("--family", choices=[f.value for f in Family])
    for key in ("a1", "a2", "b1", "b2"):
        common.add_argument("--" + key, type=float)
    common.add_argument("--eps1", type=int)
    common.add_argument("--eps2", type=int)
    common.add_argument("--grid", help="u1_min,u1_max,u2_min,u2_max,n1,n2 (write --grid=-2,2,... when the first value is negative)")
    common.add_argument("--projection", choices=["stereographic", "none"])
    common.add_argument("--pre-rotate", dest="pre_rotate", help="theta,phi")
    common.add_argument("--mask-threshold", dest="mask_threshold", type=float)
    common.add_argument("--fd-step", dest="fd_step", type=float)
    common.add_argument("--threads", type=int, default=None, help="worker threads (default: all cores)")

    p = argparse.ArgumentParser(prog="ribaucour", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    g = sub.add_parser("generate", parents=[common], help="write a mesh and a summary")
    g.add_argument("-o", "--output", default=".")
    g.add_argument("--format", choices=["obj", "json", "both"])
    v = sub.add_parser("verify", parents=[common], help="run the residual suite")
    v.add_argument("-o", "--output")
    v.add_argument("--check", action="append", help=f"check group, one of {', '.join(verify.CHECK_GROUPS)}")
    v.add_argument("--samples", type=int, default=1024)
    v.add_argument("--seed", type=int, default=0)
    sub.add_parser("info", parents=[common], help="print the record at (0, 0)")
    return p


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for malformed flags; that code means "runtime" here
        return EXIT_OK if exc.code in (0, None) else EXIT_CONFIG
    try:
        run = parse_config(args)
    except (ConfigError, RibaucourError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG
    threads = args.threads if args.threads is not None else (os.cpu_count() or 1)
    try:
        if args.command == "info":
            return run_info(run)
        if args.command == "generate":
            return run_generate(run, args.output, args.format, threads)
        bad = set(args.check or ()) - set(verify.CHECK_GROUPS)
        if bad:
            sys.stderr.write(f"error: unknown check(s) {sorted(bad)}; choose from {', '.join(verify.CHECK_GROUPS)}\n")
            return EXIT_CONFIG
        return run_verify(run, args.output, args.check, args.samples, args.seed)
    except RibaucourError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
