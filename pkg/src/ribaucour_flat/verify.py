"""Independent numerical oracles for the closed forms in :mod:`core`.

Derivatives here come from central differences of closed-form evaluators;
nothing in this module reuses the analytic derivative formulas it checks.
Per-point checks return arrays of residuals; :func:`run_suite` folds them
into a :class:`ResidualReport`.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from . import core
from .core import REGULAR_TOL, GeneratorConfig, ParamPoint, TorusParams
from .errors import OutOfRange, StencilHitsSingularity
from .grids import GridSpec, sample_points

ALGEBRAIC_TOL = 1e-12
FD_TOL = 1e-6
CURVATURE_FD_TOL = 1e-4
CONGRUENCE_TOL = 1e-10
DEFAULT_MASK_THRESHOLD = 1e-3
# second differences of the generators, in units of the generator argument
SECOND_DIFF_STEP = 1e-3


@dataclass(frozen=True)
class FDConfig:
    """Difference steps.

    ``curvature_step`` is used by the nested second differences of the
    intrinsic-curvature check; at ``step`` itself those are dominated by
    roundoff.
    """

    step: float = 1e-5
    richardson: bool = True
    curvature_step: float = 1e-3

    def __post_init__(self):
        for key in ("step", "curvature_step"):
            v = getattr(self, key)
            if not (1e-9 < v < 1e-2):
                raise OutOfRange("fd_" + key, v, f"fd_{key} must lie in (1e-9, 1e-2), got {v!r}")

    @property
    def for_curvature(self):
        return FDConfig(self.curvature_step, self.richardson, self.curvature_step)


def central_diff(field: Callable, u1, u2, axis: int, fd: FDConfig = FDConfig(), margin: Callable | None = None):
    """Central difference of ``field(u1, u2)`` along ``axis`` (1 or 2).

    With ``fd.richardson`` the steps h and h/2 are combined, cancelling the
    O(h^2) term. If ``margin`` is given, the stencil is first checked against
    the excluded set and StencilHitsSingularity is raised if it touches or
    crosses it.
    """
    if axis not in (1, 2):
        raise ValueError("axis must be 1 or 2")
    u1 = np.asarray(u1, dtype=float)
    u2 = np.asarray(u2, dtype=float)
    h = fd.step

    def shifted(t):
        return (u1 + t, u2) if axis == 1 else (u1, u2 + t)

    if margin is not None:
        _check_stencil(margin, u1, u2, shifted, h)

    def plain(step):
        fp = np.asarray(field(*shifted(step)), dtype=float)
        fm = np.asarray(field(*shifted(-step)), dtype=float)
        return (fp - fm) / (2.0 * step)

    d = plain(h)
    if fd.richardson:
        d = (4.0 * plain(h / 2.0) - d) / 3.0
    return d


def _check_stencil(margin, u1, u2, shifted, h):
    m0 = np.asarray(margin(u1, u2), dtype=float)
    bad = ~(np.abs(m0) > REGULAR_TOL)
    for t in (-h, h):
        m = np.asarray(margin(*shifted(t)), dtype=float)
        bad |= ~(np.abs(m) > REGULAR_TOL) | (np.sign(m) != np.sign(m0))
    if np.any(bad):
        idx = np.unravel_index(np.argmax(bad), np.shape(bad))
        b1, b2 = np.broadcast_arrays(u1, u2)
        raise StencilHitsSingularity(
            f"difference stencil at (u1, u2) = ({b1[idx]!r}, {b2[idx]!r}) meets the excluded set"
        )


def _margin_fn(params, cfg):
    if cfg is None:
        return lambda u1, u2: np.ones(np.broadcast(u1, u2).shape)
    return lambda u1, u2: core.singularity_margin(params, cfg, u1, u2)


def _psi_fn(params, cfg):
    if cfg is None:
        a = params.a

        def seed(u1, u2):
            shape = np.broadcast(np.asarray(u1), np.asarray(u2)).shape
            return np.full(shape, a), np.full(shape, a)

        return seed
    return lambda u1, u2: core.metric_coefficients(params, cfg, u1, u2)


def _dot(a, b):
    return np.sum(a * b, axis=-1)


def _norm(a):
    return np.sqrt(_dot(a, a))


def check_surface_point(params: TorusParams, cfg: GeneratorConfig, u1, u2, fd: FDConfig = FDConfig()):
    """Residuals of the first and second fundamental forms at regular points.

    Returns a dict of residual arrays. The algebraic rows come straight from
    the closed forms; the rest compare them with difference quotients of the
    transformed position and normal.
    """
    margin = _margin_fn(params, cfg)
    rec = core.evaluate(params, cfg, u1, u2)
    xt = lambda a, b: core.evaluate(params, cfg, a, b).Xt
    nt = lambda a, b: core.evaluate(params, cfg, a, b).Nt
    X1 = central_diff(xt, u1, u2, 1, fd, margin)
    X2 = central_diff(xt, u1, u2, 2, fd, margin)
    N1 = central_diff(nt, u1, u2, 1, fd)
    N2 = central_diff(nt, u1, u2, 2, fd)
    n1, n2 = _norm(X1), _norm(X2)
    lt1, lt2 = rec.lt1, rec.lt2
    s1 = np.maximum(1.0, np.abs(lt1))
    s2 = np.maximum(1.0, np.abs(lt2))
    return {
        "norm_xt": _dot(rec.Xt, rec.Xt) - 1.0,
        "norm_nt": _dot(rec.Nt, rec.Nt) - 1.0,
        "xt_dot_nt": _dot(rec.Xt, rec.Nt),
        "curvature_product": lt1 * lt2 + 1.0,
        "tangent_normal_1": _dot(X1, rec.Nt) / n1,
        "tangent_normal_2": _dot(X2, rec.Nt) / n2,
        "metric_offdiag": _dot(X1, X2) / (n1 * n2),
        "metric_match_1": (n1**2 - rec.psi1**2) / rec.psi1**2,
        "metric_match_2": (n2**2 - rec.psi2**2) / rec.psi2**2,
        "second_form_offdiag_12": _dot(N1, X2) / (n1 * n2 * s1),
        "second_form_offdiag_21": _dot(N2, X1) / (n1 * n2 * s2),
        "shape_eigen_1": (_dot(N1, X1) / n1**2 - lt1) / s1,
        "shape_eigen_2": (_dot(N2, X2) / n2**2 - lt2) / s2,
    }


def intrinsic_curvature(psi: Callable, u1, u2, fd: FDConfig = FDConfig(), margin: Callable | None = None):
    """Gaussian curvature of ds^2 = psi1^2 du1^2 + psi2^2 du2^2 by differences.

    K = -(1/(psi1 psi2)) [d1(d1 psi2 / psi1) + d2(d2 psi1 / psi2)].
    """
    p1 = lambda a, b: psi(a, b)[0]
    p2 = lambda a, b: psi(a, b)[1]

    def inner1(a, b):
        return central_diff(p2, a, b, 1, fd, margin) / p1(a, b)

    def inner2(a, b):
        return central_diff(p1, a, b, 2, fd, margin) / p2(a, b)

    outer = central_diff(inner1, u1, u2, 1, fd, margin) + central_diff(inner2, u1, u2, 2, fd, margin)
    psi1, psi2 = psi(u1, u2)
    return -outer / (psi1 * psi2)


def check_flatness(params: TorusParams, cfg: GeneratorConfig | None, u1, u2, fd: FDConfig = FDConfig()):
    """(K_fd, 1 + lt1 lt2): difference-quotient Gaussian curvature and the
    exact Gauss-equation value. ``cfg=None`` checks the seed torus itself.
    The differences use ``fd.curvature_step``.
    """
    K = intrinsic_curvature(_psi_fn(params, cfg), u1, u2, fd.for_curvature, _margin_fn(params, cfg))
    if cfg is None:
        exact = np.full(np.shape(K), 1.0 + params.lambda1 * params.lambda2)
    else:
        rec = core.evaluate(params, cfg, u1, u2)
        exact = 1.0 + rec.lt1 * rec.lt2
    return K, exact


def second_difference(fn: Callable, u, step: float = SECOND_DIFF_STEP, richardson: bool = True):
    u = np.asarray(u, dtype=float)

    def plain(h):
        return (fn(u + h) - 2.0 * fn(u) + fn(u - h)) / (h * h)

    d = plain(step)
    if richardson:
        d = (4.0 * plain(step / 2.0) - d) / 3.0
    return d


def check_ribaucour_system(params: TorusParams, cfg: GeneratorConfig, u1, u2, fd: FDConfig = FDConfig()):
    """Residuals of the linear system the scalars must satisfy on the torus.

    FD rows are scaled by sqrt(S), the natural size of (Omega, W, Omega_i).
    ``hypothesis_guard`` is 1 where W (W + lambda_i Omega) vanishes, else 0.
    """
    r1, r2, a = params.r1, params.r2, params.a
    u1 = np.asarray(u1, dtype=float)
    u2 = np.asarray(u2, dtype=float)
    b = core.eval_scalars(params, cfg, u1, u2)
    scale = np.sqrt(b.S)
    get = lambda name: (lambda x, y: getattr(core.eval_scalars(params, cfg, x, y), name))
    om1 = central_diff(get("Omega"), u1, u2, 1, fd)
    om2 = central_diff(get("Omega"), u1, u2, 2, fd)
    w1 = central_diff(get("W"), u1, u2, 1, fd)
    w2 = central_diff(get("W"), u1, u2, 2, fd)
    c12 = central_diff(get("Omega1"), u1, u2, 2, fd)
    c21 = central_diff(get("Omega2"), u1, u2, 1, fd)

    gen = lambda x, y: core.eval_generators(params, cfg, x, y)
    c = cfg.c
    fdd = second_difference(lambda t: gen(t, u2)[0], u1, SECOND_DIFF_STEP / (r2 * math.sqrt(c)))
    gdd = second_difference(lambda t: gen(u1, t)[1], u2, SECOND_DIFF_STEP / (r1 * math.sqrt(c)))
    return {
        "omega_d1": (om1 - a * b.Omega1) / scale,
        "omega_d2": (om2 - a * b.Omega2) / scale,
        "w_d1": (w1 + a * b.Omega1 * params.lambda1) / scale,
        "w_d2": (w2 + a * b.Omega2 * params.lambda2) / scale,
        "omega1_cross": c12 / scale,
        "omega2_cross": c21 / scale,
        "f_ode": (fdd - c * r2 * r2 * b.f) / np.maximum(np.abs(c * r2 * r2 * b.f), c * r2 * r2 * scale),
        "g_ode": (gdd - c * r1 * r1 * b.g) / np.maximum(np.abs(c * r1 * r1 * b.g), c * r1 * r1 * scale),
        "side_condition": (b.Omega1**2 + b.Omega2**2 - c * (b.Omega**2 + b.W**2)) / b.S,
        "hypothesis_guard": (~b.hypothesis_ok).astype(float),
    }


def check_algebraic(params: TorusParams, cfg: GeneratorConfig, u1, u2):
    """Closed-form identities that need no differencing."""
    rec = core.evaluate(params, cfg, u1, u2)
    b = rec.scalars
    fr = rec.frame
    S = b.S
    abstract = core.ribaucour_point(fr.X, fr.N, fr.e1, fr.e2, b.Omega, b.Omega1, b.Omega2, b.W, S)
    th = b.theta[..., None]
    cong = np.cos(th) * (fr.X - rec.Xt) + np.sin(th) * (fr.N - rec.Nt)
    a = params.a
    return {
        "norm_xt": _dot(rec.Xt, rec.Xt) - 1.0,
        "norm_nt": _dot(rec.Nt, rec.Nt) - 1.0,
        "xt_dot_nt": _dot(rec.Xt, rec.Nt),
        "curvature_product": rec.lt1 * rec.lt2 + 1.0,
        "side_condition": (b.Omega1**2 + b.Omega2**2 - cfg.c * (b.Omega**2 + b.W**2)) / S,
        "closed_form_s": (S - (1.0 + cfg.c) * (b.Omega**2 + b.W**2)) / S,
        "s_sum_form": (S - (b.Omega1**2 + b.Omega2**2 + b.W**2 + b.Omega**2)) / S,
        "omega_w_identity": (
            b.Omega**2 + b.W**2 - (params.r2**2 * b.f**2 + params.r1**2 * b.g**2)
        ) * (1.0 + cfg.c) / S,
        "metric_identity_1": (rec.psi1 - a * (S - b.Omega * b.T1) / S) / a,
        "metric_identity_2": (rec.psi2 - a * (S - b.Omega * b.T2) / S) / a,
        "curvature_metric_1": (rec.lt1 - params.r2 * rec.psi2 / (params.r1 * rec.psi1)) / np.maximum(1.0, np.abs(rec.lt1)),
        "curvature_metric_2": (rec.lt2 + params.r1 * rec.psi1 / (params.r2 * rec.psi2)) / np.maximum(1.0, np.abs(rec.lt2)),
        "expansion_vs_abstract": np.max(np.abs(rec.Xt - abstract), axis=-1),
        "sphere_congruence": np.max(np.abs(cong), axis=-1),
    }


# --- reports ------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    count: int
    skipped: int
    max_abs: float
    mean_abs: float
    argmax: ParamPoint | None
    tolerance: float
    status: str

    @property
    def passed(self):
        return self.status != "fail"

    def to_dict(self):
        return {
            "name": self.name,
            "count": self.count,
            "skipped": self.skipped,
            "max_abs": self.max_abs,
            "mean_abs": self.mean_abs,
            "argmax": None if self.argmax is None else [self.argmax.u1, self.argmax.u2],
            "tolerance": self.tolerance,
            "pass": self.passed,
            "status": self.status,
        }


def summarize(name, values, u1, u2, tolerance, skipped=0, status=None):
    """Fold per-point residuals into a CheckResult (max, mean, argmax)."""
    v = np.abs(np.asarray(values, dtype=float)).ravel()
    u1 = np.broadcast_to(np.asarray(u1, dtype=float), np.shape(values)).ravel()
    u2 = np.broadcast_to(np.asarray(u2, dtype=float), np.shape(values)).ravel()
    if v.size == 0:
        return CheckResult(name, 0, skipped, 0.0, 0.0, None, tolerance, status or "pass")
    if not np.all(np.isfinite(v)):
        k = int(np.argmin(np.isfinite(v)))
        return CheckResult(name, int(v.size), skipped, math.inf, math.inf, ParamPoint(float(u1[k]), float(u2[k])), tolerance, "fail")
    k = int(np.argmax(v))
    mx = float(v[k])
    if status is None:
        status = "pass" if mx < tolerance else "fail"
    return CheckResult(name, int(v.size), skipped, mx, float(np.mean(v)), ParamPoint(float(u1[k]), float(u2[k])), tolerance, status)


@dataclass
class CompletenessScan:
    """Empirical metric bounds and the sampled excluded set on a grid."""

    grid: GridSpec
    r1r2: float
    min_abs_psi1: float
    argmin_psi1: ParamPoint
    min_abs_psi2: float
    argmin_psi2: ParamPoint
    line_u2: np.ndarray
    line_deviation: np.ndarray
    diagonal_deviation: float
    singular_samples: np.ndarray
    singular_roots: np.ndarray
    skipped: int = 0

    @property
    def max_line_deviation(self):
        return float(np.max(self.line_deviation))

    def to_dict(self):
        return {
            "grid": self.grid.to_dict(),
            "r1r2": self.r1r2,
            "min_abs_psi1": {"value": self.min_abs_psi1, "at": list(self.argmin_psi1)},
            "min_abs_psi2": {"value": self.min_abs_psi2, "at": list(self.argmin_psi2)},
            "max_line_deviation": self.max_line_deviation,
            "line_deviation": [[float(a), float(b)] for a, b in zip(self.line_u2, self.line_deviation)],
            "diagonal_deviation": self.diagonal_deviation,
            "singular_samples": self.singular_samples.tolist(),
            "singular_roots": self.singular_roots.tolist(),
            "skipped": self.skipped,
        }


def locate_margin_roots(params: TorusParams, cfg: GeneratorConfig, u1: float, u2_values, xtol: float = 1e-14):
    """Zeros of the margin along the line u1 = const, refined by Brent's method.

    ``u2_values`` is the bracketing sample; only sign changes between
    consecutive samples are found (plus samples that hit zero exactly).
    """
    u2_values = np.asarray(u2_values, dtype=float)
    m = core.evaluate(params, cfg, u1, u2_values).margin
    fn = lambda t: float(core.singularity_margin(params, cfg, u1, t))
    roots = [float(t) for t, v in zip(u2_values, m) if v == 0.0]
    ok = np.isfinite(m)
    for k in range(len(u2_values) - 1):
        if ok[k] and ok[k + 1] and m[k] * m[k + 1] < 0:
            roots.append(brentq(fn, u2_values[k], u2_values[k + 1], xtol=xtol, rtol=4 * np.finfo(float).eps))
    return np.array(sorted(roots))


def completeness_scan(params: TorusParams, cfg: GeneratorConfig | None, grid: GridSpec,
                      mask_threshold: float = DEFAULT_MASK_THRESHOLD, refine: bool = True) -> CompletenessScan:
    """Scan |psi_i| over ``grid``; ``cfg=None`` scans the seed torus."""
    U1, U2 = grid.lattice()
    a1, a2 = grid.axes()
    a = params.a
    if cfg is None:
        psi1 = np.full(U1.shape, a)
        psi2 = np.full(U1.shape, a)
        margin = np.ones(U1.shape)
        finite = np.ones(U1.shape, dtype=bool)
    else:
        rec = core.evaluate(params, cfg, U1, U2)
        psi1, psi2, margin = rec.psi1, rec.psi2, rec.margin
        finite = np.isfinite(psi1) & np.isfinite(psi2) & np.isfinite(margin)

    def argmin_abs(p):
        v = np.where(finite, np.abs(p), np.inf)
        k = np.unravel_index(np.argmin(v), v.shape)
        return float(v[k]), ParamPoint(float(U1[k]), float(U2[k]))

    m1, at1 = argmin_abs(psi1)
    m2, at2 = argmin_abs(psi2)

    # extreme columns u1 = u1_min, u1_max along every row u2 = const
    ends = np.stack([np.abs(psi1[:, [0, -1]]) - a, np.abs(psi2[:, [0, -1]]) - a], axis=-1)
    line_dev = np.max(np.abs(ends).reshape(len(a2), -1), axis=1)
    corners = [(0, 0), (0, -1), (-1, 0), (-1, -1)]
    diag = max(max(abs(abs(psi1[k]) - a), abs(abs(psi2[k]) - a)) for k in corners)

    near = finite & (np.abs(margin) < mask_threshold)
    samples = np.stack([U1[near], U2[near]], axis=-1) if np.any(near) else np.empty((0, 2))
    roots = []
    if refine and cfg is not None:
        for u1 in a1:
            for r in locate_margin_roots(params, cfg, float(u1), a2):
                roots.append((float(u1), float(r)))
    roots = np.array(roots) if roots else np.empty((0, 2))
    return CompletenessScan(
        grid, a, m1, at1, m2, at2, a2, line_dev, float(diag), samples, roots,
        skipped=int(np.count_nonzero(~finite)),
    )


@dataclass
class ResidualReport:
    checks: list[CheckResult] = field(default_factory=list)
    scan: CompletenessScan | None = None

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def first_failure(self):
        return next((c for c in self.checks if not c.passed), None)

    def get(self, name):
        return next(c for c in self.checks if c.name == name)

    def to_dict(self):
        out = {"checks": [c.to_dict() for c in self.checks]}
        if self.scan is not None:
            out["scan"] = self.scan.to_dict()
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)


CHECK_GROUPS = ("algebraic", "fd", "ribaucour", "flatness", "congruence", "printed-ntiu", "scan")


def default_rect(cfg: GeneratorConfig):
    """Sampling rectangle scaled with the generators' length scale 1/sqrt(c)."""
    s = 2.0 / math.sqrt(cfg.c)
    return (-2.0 * s, 2.0 * s, -2.5 * s, 2.5 * s)


def run_suite(params: TorusParams, cfg: GeneratorConfig, rect=None, n_samples: int = 1024, seed: int = 0,
              fd: FDConfig = FDConfig(), mask_threshold: float = DEFAULT_MASK_THRESHOLD,
              fd_margin: float = 0.1, n_flat: int = 100, checks=None, scan_grid: GridSpec | None = None) -> ResidualReport:
    """Run every check on a deterministic sample and collect a report.

    Samples are a scrambled Sobol set over ``rect`` plus the anchor (0, 0)
    and any margin roots on the line u1 = 0. Points with |margin| below
    ``mask_threshold`` are skipped by the algebraic rows, below ``fd_margin``
    by the difference-quotient rows; skips are tallied per row.
    """
    cfg = core.validate_config(params, cfg)
    groups = set(CHECK_GROUPS if checks is None else checks)
    unknown = groups - set(CHECK_GROUPS)
    if unknown:
        raise ValueError(f"unknown check group(s): {sorted(unknown)}")
    rect = default_rect(cfg) if rect is None else rect

    s1, s2 = sample_points(rect, n_samples, seed)
    anchor_roots = locate_margin_roots(params, cfg, 0.0, np.linspace(rect[2], rect[3], 257))
    u1 = np.concatenate([[0.0], s1, np.zeros(len(anchor_roots))])
    u2 = np.concatenate([[0.0], s2, anchor_roots])
    rec = core.evaluate(params, cfg, u1, u2)
    absm = np.abs(rec.margin)
    alg = rec.regular & (absm > mask_threshold)
    fdm = rec.regular & (absm > fd_margin)
    report = ResidualReport()
    add = report.checks.append

    if "algebraic" in groups:
        x, y = u1[alg], u2[alg]
        skipped = int(np.count_nonzero(~alg))
        for name, v in check_algebraic(params, cfg, x, y).items():
            add(summarize(name, v, x, y, ALGEBRAIC_TOL, skipped))

    if "fd" in groups:
        x, y = u1[fdm], u2[fdm]
        skipped = int(np.count_nonzero(~fdm))
        for name, v in check_surface_point(params, cfg, x, y, fd).items():
            tol = ALGEBRAIC_TOL if name in ("norm_xt", "norm_nt", "xt_dot_nt", "curvature_product") else FD_TOL
            add(summarize("fd:" + name, v, x, y, tol, skipped))

    if "ribaucour" in groups:
        ok = ~rec.overflow
        x, y = u1[ok], u2[ok]
        skipped = int(np.count_nonzero(~ok))
        for name, v in check_ribaucour_system(params, cfg, x, y, fd).items():
            if name == "hypothesis_guard":
                add(summarize(name, v, x, y, 0.5, skipped, status="info"))
            else:
                tol = ALGEBRAIC_TOL if name == "side_condition" else FD_TOL
                add(summarize(name, v, x, y, tol, skipped))

    if "flatness" in groups:
        idx = np.flatnonzero(fdm)[:n_flat]
        x, y = u1[idx], u2[idx]
        K, exact = check_flatness(params, cfg, x, y, fd)
        skipped = int(np.count_nonzero(~fdm[: idx[-1] + 1])) if len(idx) else 0
        add(summarize("intrinsic_curvature_fd", K, x, y, CURVATURE_FD_TOL, skipped))
        add(summarize("gauss_equation_exact", exact, x, y, ALGEBRAIC_TOL, skipped))

    if "congruence" in groups and cfg.reduction is not None:
        x, y = u1[fdm], u2[fdm]
        canon = core.canonical_config(params, cfg)
        red = cfg.reduction
        sc = math.sqrt(cfg.c)
        h1 = x + red.A2 / (params.r2 * sc)
        h2 = y + red.B2 / (params.r1 * sc)
        both = core.evaluate(params, canon, h1, h2).regular
        x, y, h1, h2 = x[both], y[both], h1[both], h2[both]
        lhs = core.transformed_point(params, cfg, x, y)
        theta, phi = core.shift_rotation_angles(params, cfg)
        rhs = core.rotation_rtp(theta, phi, core.transformed_point(params, canon, h1, h2))
        add(summarize("congruence_shift", np.max(np.abs(lhs - rhs), axis=-1), x, y, CONGRUENCE_TOL,
                      int(len(u1) - len(x))))

    if "printed-ntiu" in groups:
        add(printed_normal_discrepancy(params, cfg))

    if "scan" in groups:
        grid = scan_grid or GridSpec(rect[0], rect[1], rect[2], rect[3], 101, 101)
        report.scan = completeness_scan(params, cfg, grid, mask_threshold)
    return report


def printed_normal_discrepancy(params: TorusParams, cfg: GeneratorConfig, u1=0.0, u2=0.0, threshold: float = 0.1):
    """| |N_printed|^2 - 1 | at a point, expected to exceed ``threshold``.

    The row is "known-discrepancy" when the printed expansion fails to be a
    unit vector as documented, and "fail" if it unexpectedly is one.
    """
    v = core.printed_normal_expansion(params, cfg, u1, u2)
    dev = np.abs(_dot(v, v) - 1.0)
    status = "known-discrepancy" if np.all(dev > threshold) else "fail"
    return summarize("printed-ntiu", dev, u1, u2, threshold, status=status)
