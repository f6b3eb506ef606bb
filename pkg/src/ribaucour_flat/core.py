"""Closed-form Ribaucour transforms of the flat torus in S^3.

The seed is the flat torus

    X(u1, u2) = (r1 cos(r2 u1), r1 sin(r2 u1), r2 cos(r1 u2), r2 sin(r1 u2)),

with r1**2 + r2**2 == 1, parametrized by lines of curvature. A transform is
fixed by a flatness parameter ``c > 0`` and a pair of generators ``f(u1)``,
``g(u2)`` solving ``f'' = c r2**2 f`` and ``g'' = c r1**2 g``. Everything in
this module is an exact closed form; finite differences live in
:mod:`ribaucour_flat.verify`.

All evaluators broadcast over array-valued ``u1``/``u2``. Vector results carry
a trailing axis of length 4.
"""
from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    ConstraintViolated,
    DegenerateGenerator,
    DegeneratePoint,
    GeneratorOverflow,
    OutOfRange,
    SingularPoint,
)

#: |margin| at or below this is treated as lying on the excluded set.
REGULAR_TOL = 1e-9
#: largest admissible |r2 sqrt(c) u1| or |r1 sqrt(c) u2|.
MAX_ARG = 700.0
# above this the generators are rescaled by exp(-M) before use
_RESCALE_ARG = 300.0
_CONSTRAINT_RTOL = 1e-12


class ParamPoint(NamedTuple):
    u1: float
    u2: float


@dataclass(frozen=True)
class TorusParams:
    """Radii of the seed torus; ``r2`` is derived from ``r1``."""

    r1: float

    def __post_init__(self):
        r1 = float(self.r1)
        if not (math.isfinite(r1) and 0.0 < r1 < 1.0):
            raise OutOfRange("r1", self.r1, f"r1 must lie in (0, 1), got {self.r1!r}")
        object.__setattr__(self, "r1", r1)

    @property
    def r2(self) -> float:
        return math.sqrt((1.0 - self.r1) * (1.0 + self.r1))

    @property
    def a(self) -> float:
        """Lame coefficient of the seed (a1 == a2 == r1 r2)."""
        return self.r1 * self.r2

    @property
    def lambda1(self) -> float:
        return -self.r2 / self.r1

    @property
    def lambda2(self) -> float:
        return self.r1 / self.r2


class Family(str, enum.Enum):
    COSH_SINH = "cosh-sinh"
    SINH_COSH = "sinh-cosh"
    EXP = "exp"
    GENERAL = "general"


@dataclass(frozen=True)
class CanonicalReduction:
    """How a general-coefficient pair reduces to one of the three families.

    The general generators equal ``scale * f0(u1 + A2/(r2 sqrt c))`` and
    ``scale * sign * g0(u2 + B2/(r1 sqrt c))`` where ``(f0, g0)`` is the
    canonical pair of ``family``. ``sign == -1`` only arises when the leading
    coefficients of f and g have opposite signs.
    """

    family: Family
    A1: float
    A2: float = 0.0
    B2: float = 0.0
    scale: float = 1.0
    sign: float = 1.0
    a1: float = 1.0
    b1: float = 1.0
    eps1: int = 1
    eps2: int = 1


@dataclass(frozen=True)
class GeneratorConfig:
    """Flatness parameter and generator family.

    ``a1, b1, eps1, eps2`` are read by the ``EXP`` family, ``a1, a2, b1, b2``
    by ``GENERAL``. :func:`validate_config` fills in ``reduction`` for the
    general family.
    """

    c: float
    family: Family = Family.COSH_SINH
    a1: float = 1.0
    a2: float = 0.0
    b1: float = 1.0
    b2: float = 0.0
    eps1: int = 1
    eps2: int = 1
    reduction: CanonicalReduction | None = None


def validate_config(params: TorusParams, cfg: GeneratorConfig) -> GeneratorConfig:
    """Check ``cfg`` against ``params`` and return it (general family reduced).

    Raises OutOfRange, ConstraintViolated or DegenerateGenerator.
    """
    if not isinstance(params, TorusParams):
        params = TorusParams(params)
    try:
        c = float(cfg.c)
    except (TypeError, ValueError):
        raise OutOfRange("c", cfg.c) from None
    if not (math.isfinite(c) and c > 0):
        raise OutOfRange("c", cfg.c, f"c must be a positive real, got {cfg.c!r}")
    family = Family(cfg.family)
    cfg = dataclasses.replace(cfg, c=c, family=family)

    if family is Family.EXP:
        for key in ("eps1", "eps2"):
            if getattr(cfg, key) not in (1, -1):
                raise OutOfRange(key, getattr(cfg, key), f"{key} must be +1 or -1")
        if not (math.isfinite(cfg.a1) and math.isfinite(cfg.b1)):
            raise OutOfRange("a1", cfg.a1, "a1 and b1 must be finite")
        if cfg.a1 == 0 and cfg.b1 == 0:
            raise DegenerateGenerator("exp family needs (a1, b1) != (0, 0); S vanishes identically")
        return dataclasses.replace(cfg, eps1=int(cfg.eps1), eps2=int(cfg.eps2))
    if family is Family.GENERAL:
        return dataclasses.replace(cfg, reduction=_reduce_general(params, cfg))
    return cfg


def _reduce_general(params, cfg):
    a1, a2, b1, b2 = (float(v) for v in (cfg.a1, cfg.a2, cfg.b1, cfg.b2))
    if not all(math.isfinite(v) for v in (a1, a2, b1, b2)):
        raise OutOfRange("a1", (a1, a2, b1, b2), "general coefficients must be finite")
    r1, r2 = params.r1, params.r2
    lhs = (a1 * a1 - a2 * a2) * r2 * r2
    rhs = (b2 * b2 - b1 * b1) * r1 * r1
    scale = max((a1 * a1 + a2 * a2) * r2 * r2, (b1 * b1 + b2 * b2) * r1 * r1)
    if scale == 0:
        raise DegenerateGenerator("all general coefficients are zero")
    if abs(lhs - rhs) > _CONSTRAINT_RTOL * scale:
        raise ConstraintViolated(
            f"(a1^2-a2^2) r2^2 = {lhs!r} but (b2^2-b1^2) r1^2 = {rhs!r}"
        )

    A1 = a1 * a1 - a2 * a2
    if abs(A1) <= _CONSTRAINT_RTOL * (a1 * a1 + a2 * a2):
        # a2 = eps1 a1 and b2 = eps2 b1: the exponential family itself
        if a1 == 0 and b1 == 0:
            raise DegenerateGenerator("general coefficients collapse to f = g = 0")
        eps1 = 1 if a1 == 0 or a2 * a1 >= 0 else -1
        eps2 = 1 if b1 == 0 or b2 * b1 >= 0 else -1
        return CanonicalReduction(Family.EXP, 0.0, a1=a1, b1=b1, eps1=eps1, eps2=eps2)
    if A1 > 0:
        # f = sgn(a1) sqrt(A1) cosh(x + A2), g = sgn(b2) sqrt(A1) (r2/r1) sinh(y + B2)
        return CanonicalReduction(
            Family.COSH_SINH,
            A1,
            A2=math.atanh(a2 / a1),
            B2=math.atanh(b1 / b2),
            scale=math.copysign(math.sqrt(A1), a1),
            sign=math.copysign(1.0, a1) * math.copysign(1.0, b2),
        )
    # f = sgn(a2) sqrt(-A1) sinh(x + A2), g = sgn(b1) sqrt(-A1) (r2/r1) cosh(y + B2)
    return CanonicalReduction(
        Family.SINH_COSH,
        A1,
        A2=math.atanh(a1 / a2),
        B2=math.atanh(b2 / b1),
        scale=math.copysign(math.sqrt(-A1), a2),
        sign=math.copysign(1.0, a2) * math.copysign(1.0, b1),
    )


def canonical_config(params: TorusParams, cfg: GeneratorConfig) -> GeneratorConfig:
    """The shift-free canonical config a general config reduces to.

    Non-general configs are returned unchanged. When the reduction carries
    ``sign == -1`` the result is a general config with the canonical shape
    and g negated, since no named family has that sign.
    """
    cfg = validate_config(params, cfg)
    red = cfg.reduction
    if red is None:
        return cfg
    k = params.r2 / params.r1
    if red.family is Family.EXP:
        return GeneratorConfig(cfg.c, Family.EXP, a1=red.a1, b1=red.b1, eps1=red.eps1, eps2=red.eps2)
    if red.sign > 0:
        return GeneratorConfig(cfg.c, red.family)
    if red.family is Family.COSH_SINH:
        out = GeneratorConfig(cfg.c, Family.GENERAL, a1=1.0, a2=0.0, b1=0.0, b2=-k)
    else:
        out = GeneratorConfig(cfg.c, Family.GENERAL, a1=0.0, a2=1.0, b1=-k, b2=0.0)
    return validate_config(params, out)


# --- seed torus ---------------------------------------------------------


@dataclass(frozen=True)
class TorusFrame:
    X: np.ndarray
    N: np.ndarray
    e1: np.ndarray
    e2: np.ndarray
    a: float
    lambda1: float
    lambda2: float


def _angles(params, u1, u2):
    u1 = np.asarray(u1, dtype=float)
    u2 = np.asarray(u2, dtype=float)
    t1 = params.r2 * u1
    t2 = params.r1 * u2
    return np.cos(t1), np.sin(t1), np.cos(t2), np.sin(t2)


def torus_point(params: TorusParams, u1, u2) -> np.ndarray:
    c1, s1, c2, s2 = _angles(params, u1, u2)
    r1, r2 = params.r1, params.r2
    c1, s1, c2, s2 = np.broadcast_arrays(c1, s1, c2, s2)
    return np.stack([r1 * c1, r1 * s1, r2 * c2, r2 * s2], axis=-1)


def torus_frame(params: TorusParams, u1, u2) -> TorusFrame:
    """Seed position, unit normal and principal frame.

    The normal orientation is the one for which the expanded transform in
    :func:`transformed_point` coincides with :func:`ribaucour_point`.
    """
    c1, s1, c2, s2 = np.broadcast_arrays(*_angles(params, u1, u2))
    r1, r2 = params.r1, params.r2
    zero = np.zeros_like(c1)
    X = np.stack([r1 * c1, r1 * s1, r2 * c2, r2 * s2], axis=-1)
    N = np.stack([-r2 * c1, -r2 * s1, r1 * c2, r1 * s2], axis=-1)
    e1 = np.stack([-s1, c1, zero, zero], axis=-1)
    e2 = np.stack([zero, zero, -s2, c2], axis=-1)
    return TorusFrame(X, N, e1, e2, params.a, params.lambda1, params.lambda2)


def rotation_rtp(theta, phi, p) -> np.ndarray:
    """Rotate the (x1, x2) plane by ``theta`` and the (x3, x4) plane by ``phi``."""
    p = np.asarray(p, dtype=float)
    ct, st = np.cos(theta), np.sin(theta)
    cp, sp = np.cos(phi), np.sin(phi)
    x1, x2, x3, x4 = p[..., 0], p[..., 1], p[..., 2], p[..., 3]
    return np.stack(
        np.broadcast_arrays(x1 * ct - x2 * st, x1 * st + x2 * ct, x3 * cp - x4 * sp, x3 * sp + x4 * cp),
        axis=-1,
    )


# --- generators ---------------------------------------------------------


def _exp_coefficients(params, cfg):
    """(p, q) with generator = p e^{+arg} + q e^{-arg}, for f then g."""
    k = params.r2 / params.r1
    fam = cfg.family
    if fam is Family.COSH_SINH:
        return (0.5, 0.5), (0.5 * k, -0.5 * k)
    if fam is Family.SINH_COSH:
        return (0.5, -0.5), (0.5 * k, 0.5 * k)
    if fam is Family.EXP:
        pf = (cfg.a1, 0.0) if cfg.eps1 > 0 else (0.0, cfg.a1)
        pg = (cfg.b1, 0.0) if cfg.eps2 > 0 else (0.0, cfg.b1)
        return pf, pg
    return (
        (0.5 * (cfg.a1 + cfg.a2), 0.5 * (cfg.a1 - cfg.a2)),
        (0.5 * (cfg.b1 + cfg.b2), 0.5 * (cfg.b1 - cfg.b2)),
    )


def _direct(params, cfg, x, kx, which):
    """Generator and derivative from hyperbolic functions (moderate args)."""
    fam = cfg.family
    if fam is Family.EXP:
        amp, eps = (cfg.a1, cfg.eps1) if which == "f" else (cfg.b1, cfg.eps2)
        v = amp * np.exp(eps * x)
        return v, eps * kx * v
    if fam is Family.GENERAL:
        p, q = (cfg.a1, cfg.a2) if which == "f" else (cfg.b1, cfg.b2)
        ch, sh = np.cosh(x), np.sinh(x)
        return p * ch + q * sh, kx * (p * sh + q * ch)
    amp = 1.0 if which == "f" else params.r2 / params.r1
    cosh_first = (fam is Family.COSH_SINH) == (which == "f")
    ch, sh = np.cosh(x), np.sinh(x)
    if cosh_first:
        return amp * ch, amp * kx * sh
    return amp * sh, amp * kx * ch


def _generators(params, cfg, u1, u2):
    """(f, g, f', g', log_scale, overflow) without raising.

    Where max(|x|, |y|) exceeds ``_RESCALE_ARG`` all four values are divided
    by exp(log_scale) so that quadratic forms stay finite; every geometric
    output is invariant under a common rescaling of (f, g).
    """
    sc = math.sqrt(cfg.c)
    k1 = params.r2 * sc
    k2 = params.r1 * sc
    x = k1 * np.asarray(u1, dtype=float)
    y = k2 * np.asarray(u2, dtype=float)
    x, y = np.broadcast_arrays(x, y)
    M = np.maximum(np.abs(x), np.abs(y))
    overflow = ~(M <= MAX_ARG)
    big = M > _RESCALE_ARG

    with np.errstate(over="ignore", invalid="ignore"):
        xs = np.where(big, 0.0, x)
        ys = np.where(big, 0.0, y)
        f, fp = _direct(params, cfg, xs, k1, "f")
        g, gp = _direct(params, cfg, ys, k2, "g")
        f, fp, g, gp = np.broadcast_arrays(f, fp, g, gp)
        log_scale = np.zeros_like(M)
        if np.any(big):
            f, fp, g, gp = (np.array(a, dtype=float, copy=True) for a in (f, fp, g, gp))
            (pf, qf), (pg, qg) = _exp_coefficients(params, cfg)
            Mb = np.where(overflow, 0.0, M)[big]
            xb, yb = x[big], y[big]
            ep, em = np.exp(xb - Mb), np.exp(-xb - Mb)
            f[big] = pf * ep + qf * em
            fp[big] = k1 * (pf * ep - qf * em)
            ep, em = np.exp(yb - Mb), np.exp(-yb - Mb)
            g[big] = pg * ep + qg * em
            gp[big] = k2 * (pg * ep - qg * em)
            log_scale[big] = Mb
    return f, g, fp, gp, log_scale, overflow


def _raise_overflow(overflow, u1, u2):
    if np.any(overflow):
        idx = np.unravel_index(np.argmax(overflow), np.shape(overflow))
        u1b, u2b = np.broadcast_arrays(np.asarray(u1, float), np.asarray(u2, float))
        raise GeneratorOverflow(
            f"generator argument exceeds {MAX_ARG} at (u1, u2) = ({u1b[idx]!r}, {u2b[idx]!r})"
        )


def eval_generators(params: TorusParams, cfg: GeneratorConfig, u1, u2):
    """Return ``(f, g, f', g')`` at ``(u1, u2)`` from the analytic formulas.

    Raises GeneratorOverflow when a value is not representable.
    """
    sc = math.sqrt(cfg.c)
    x = params.r2 * sc * np.asarray(u1, dtype=float)
    y = params.r1 * sc * np.asarray(u2, dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        f, fp = _direct(params, cfg, x, params.r2 * sc, "f")
        g, gp = _direct(params, cfg, y, params.r1 * sc, "g")
    f, g, fp, gp = np.broadcast_arrays(f, g, fp, gp)
    bad = ~(np.isfinite(f) & np.isfinite(g) & np.isfinite(fp) & np.isfinite(gp))
    _raise_overflow(bad, u1, u2)
    return f, g, fp, gp


# --- Ribaucour scalars --------------------------------------------------


@dataclass(frozen=True)
class ScalarBundle:
    """Ribaucour scalars at a set of points.

    When ``log_scale`` is nonzero the degree-one fields (f, g, fp, gp, Omega,
    Omega1, Omega2, W, T1, T2) are divided by ``exp(log_scale)`` and S by
    ``exp(2 log_scale)``; theta is unaffected.
    """

    f: np.ndarray
    g: np.ndarray
    fp: np.ndarray
    gp: np.ndarray
    Omega: np.ndarray
    Omega1: np.ndarray
    Omega2: np.ndarray
    W: np.ndarray
    S: np.ndarray
    T1: np.ndarray
    T2: np.ndarray
    theta: np.ndarray
    guard1: np.ndarray
    guard2: np.ndarray
    log_scale: np.ndarray

    @property
    def hypothesis_ok(self):
        """W (W + lambda_i Omega) != 0 for both i."""
        return (self.guard1 != 0) & (self.guard2 != 0)


def _bundle(params, cfg, f, g, fp, gp, log_scale):
    r1, r2, c = params.r1, params.r2, cfg.c
    Omega = r1 * r2 * (f + g)
    W = r2 * r2 * f - r1 * r1 * g
    S = (1.0 + c) * (Omega * Omega + W * W)
    T1 = 2.0 * r2 * (1.0 + c) * f / r1
    T2 = 2.0 * r1 * (1.0 + c) * g / r2
    return ScalarBundle(
        f=f,
        g=g,
        fp=fp,
        gp=gp,
        Omega=Omega,
        Omega1=fp,
        Omega2=gp,
        W=W,
        S=S,
        T1=T1,
        T2=T2,
        theta=np.arctan2(Omega, W),
        guard1=W * (W + params.lambda1 * Omega),
        guard2=W * (W + params.lambda2 * Omega),
        log_scale=log_scale,
    )


def eval_scalars(params: TorusParams, cfg: GeneratorConfig, u1, u2) -> ScalarBundle:
    """Unscaled Ribaucour scalars. Raises GeneratorOverflow or DegeneratePoint."""
    f, g, fp, gp = eval_generators(params, cfg, u1, u2)
    with np.errstate(over="ignore", invalid="ignore"):
        b = _bundle(params, cfg, f, g, fp, gp, np.zeros_like(f))
    _raise_overflow(~np.isfinite(b.S), u1, u2)
    if np.any(b.S == 0):
        raise DegeneratePoint("S vanishes (f = g = 0)")
    return b


# --- transformed surface ------------------------------------------------


def ribaucour_point(X, N, e1, e2, Omega, Omega1, Omega2, W, S):
    """Transformed position from the seed frame (abstract form)."""
    Omega, Omega1, Omega2, W, S = (np.asarray(v, dtype=float)[..., None] for v in (Omega, Omega1, Omega2, W, S))
    return (1.0 - 2.0 * Omega**2 / S) * X - (2.0 * Omega / S) * (Omega1 * e1 + Omega2 * e2 - W * N)


def ribaucour_normal(X, N, e1, e2, Omega, Omega1, Omega2, W, S):
    """Transformed unit normal from the seed frame (abstract form)."""
    Omega, Omega1, Omega2, W, S = (np.asarray(v, dtype=float)[..., None] for v in (Omega, Omega1, Omega2, W, S))
    return N + (2.0 * W / S) * (Omega1 * e1 + Omega2 * e2 - W * N + Omega * X)


def _expanded_point(params, u1, u2, b):
    r1, r2 = params.r1, params.r2
    c1, s1, c2, s2 = _angles(params, u1, u2)
    Om, W, S = b.Omega, b.W, b.S
    A = r1 * S - 2 * r1 * Om**2 - 2 * r2 * Om * W
    B = r2 * S - 2 * r2 * Om**2 + 2 * r1 * Om * W
    F = 2 * b.fp * Om
    G = 2 * b.gp * Om
    comps = np.broadcast_arrays(A * c1 + F * s1, A * s1 - F * c1, B * c2 + G * s2, B * s2 - G * c2)
    return np.stack(comps, axis=-1) / np.asarray(S)[..., None]


def printed_normal_expansion(params: TorusParams, cfg: GeneratorConfig, u1, u2) -> np.ndarray:
    """An uncorrected expanded normal formula.

    Kept only to document that it is *not* a unit normal; use
    :func:`transformed_normal`.
    """
    b = eval_scalars(params, cfg, u1, u2)
    r1, r2 = params.r1, params.r2
    c1, s1, c2, s2 = _angles(params, u1, u2)
    Om, W, S = b.Omega, b.W, b.S
    A = -r2 * S - 2 * r2 * W**2 + 2 * r1 * Om * W
    B = r1 * S + 2 * r1 * W**2 - 2 * r2 * Om * W
    F = 2 * b.fp * Om
    G = 2 * b.gp * Om
    comps = np.broadcast_arrays(A * c1 + F * s1, A * s1 - F * c1, B * c2 + G * s2, B * s2 - G * c2)
    return np.stack(comps, axis=-1) / np.asarray(S)[..., None]


@dataclass(frozen=True)
class EvalRecord:
    """Full geometric state on a set of parameter points."""

    u1: np.ndarray
    u2: np.ndarray
    frame: TorusFrame
    scalars: ScalarBundle
    Xt: np.ndarray
    Nt: np.ndarray
    psi1: np.ndarray
    psi2: np.ndarray
    lt1: np.ndarray
    lt2: np.ndarray
    margin: np.ndarray
    regular: np.ndarray
    overflow: np.ndarray

    @property
    def kappa1(self):
        """Principal curvature under the "-lambda" convention."""
        return -self.lt1

    @property
    def kappa2(self):
        return -self.lt2


def _metric_parts(params, f, g):
    r1s, r2s = params.r1**2, params.r2**2
    P1 = r1s * g * g - r2s * f * f - 2 * r2s * f * g
    P2 = r2s * f * f - r1s * g * g - 2 * r1s * f * g
    D = r1s * g * g + r2s * f * f
    return P1, P2, D


def evaluate(params: TorusParams, cfg: GeneratorConfig, u1, u2, regular_tol: float = REGULAR_TOL) -> EvalRecord:
    """Evaluate everything at once without raising.

    Points whose generators overflow, whose values are non-finite, or whose
    |margin| is at most ``regular_tol`` get ``regular == False``.
    """
    u1 = np.asarray(u1, dtype=float)
    u2 = np.asarray(u2, dtype=float)
    u1, u2 = np.broadcast_arrays(u1, u2)
    f, g, fp, gp, log_scale, overflow = _generators(params, cfg, u1, u2)
    frame = torus_frame(params, u1, u2)
    with np.errstate(all="ignore"):
        b = _bundle(params, cfg, f, g, fp, gp, log_scale)
        Xt = _expanded_point(params, u1, u2, b)
        Nt = ribaucour_normal(frame.X, frame.N, frame.e1, frame.e2, b.Omega, b.Omega1, b.Omega2, b.W, b.S)
        P1, P2, D = _metric_parts(params, f, g)
        a = params.a
        psi1 = a * P1 / D
        psi2 = a * P2 / D
        margin = (P1 / D) * (P2 / D)
        lt1 = (b.W * b.T1 + params.lambda1 * b.S) / (b.S - b.Omega * b.T1)
        lt2 = (b.W * b.T2 + params.lambda2 * b.S) / (b.S - b.Omega * b.T2)
    finite = (
        np.all(np.isfinite(Xt), axis=-1)
        & np.all(np.isfinite(Nt), axis=-1)
        & np.isfinite(margin)
        & np.isfinite(lt1)
        & np.isfinite(lt2)
    )
    regular = ~overflow & finite & (np.abs(margin) > regular_tol)
    return EvalRecord(u1, u2, frame, b, Xt, Nt, psi1, psi2, lt1, lt2, margin, regular, overflow)


def _require_regular(rec):
    _raise_overflow(rec.overflow, rec.u1, rec.u2)
    if not np.all(rec.regular):
        idx = np.unravel_index(np.argmin(rec.regular), np.shape(rec.regular))
        raise SingularPoint(
            f"(u1, u2) = ({rec.u1[idx]!r}, {rec.u2[idx]!r}) is on the excluded set "
            f"(margin = {rec.margin[idx]!r})"
        )


def transformed_point(params: TorusParams, cfg: GeneratorConfig, u1, u2) -> np.ndarray:
    """Transformed surface point, from the explicit component expansion."""
    rec = evaluate(params, cfg, u1, u2)
    _require_regular(rec)
    return rec.Xt


def transformed_normal(params: TorusParams, cfg: GeneratorConfig, u1, u2) -> np.ndarray:
    rec = evaluate(params, cfg, u1, u2)
    _require_regular(rec)
    return rec.Nt


def metric_coefficients(params: TorusParams, cfg: GeneratorConfig, u1, u2):
    """Signed (psi1, psi2) with ds^2 = psi1^2 du1^2 + psi2^2 du2^2."""
    f, g, _, _, _, overflow = _generators(params, cfg, u1, u2)
    _raise_overflow(overflow, u1, u2)
    P1, P2, D = _metric_parts(params, f, g)
    return params.a * P1 / D, params.a * P2 / D


def principal_curvatures(params: TorusParams, cfg: GeneratorConfig, u1, u2):
    """(lt1, lt2) with dN~(e~_i) = lt_i e~_i; their product is -1."""
    rec = evaluate(params, cfg, u1, u2)
    _require_regular(rec)
    return rec.lt1, rec.lt2


def principal_curvatures_from_metric(params: TorusParams, cfg: GeneratorConfig, u1, u2):
    """Principal curvatures -lt_i written through the metric coefficients."""
    psi1, psi2 = metric_coefficients(params, cfg, u1, u2)
    r1, r2 = params.r1, params.r2
    with np.errstate(divide="ignore", invalid="ignore"):
        return -r2 * psi2 / (r1 * psi1), r1 * psi1 / (r2 * psi2)


def singularity_margin(params: TorusParams, cfg: GeneratorConfig, u1, u2):
    """psi1 psi2 / (r1 r2)^2: dimensionless, zero exactly on the excluded set."""
    f, g, _, _, _, overflow = _generators(params, cfg, u1, u2)
    _raise_overflow(overflow, u1, u2)
    P1, P2, D = _metric_parts(params, f, g)
    return (P1 / D) * (P2 / D)


def printed_domain_factors(params: TorusParams, cfg: GeneratorConfig, u1, u2):
    """The two domain factors in their printed form, normalized by D.

    The second printed factor carries ``+2 r1^2 f g``; the factor that
    actually vanishes with psi2 carries ``-2 r1^2 f g``.
    """
    f, g, _, _, _, overflow = _generators(params, cfg, u1, u2)
    _raise_overflow(overflow, u1, u2)
    r1s, r2s = params.r1**2, params.r2**2
    D = r1s * g * g + r2s * f * f
    P1 = r1s * g * g - r2s * f * f - 2 * r2s * f * g
    P2 = r2s * f * f - r1s * g * g + 2 * r1s * f * g
    return P1 / D, P2 / D


def sphere_congruence_point(params: TorusParams, cfg: GeneratorConfig, u1, u2, from_transformed: bool = False):
    """Contact point cos(theta) X + sin(theta) N, theta = atan2(Omega, W).

    With ``from_transformed`` the same point is built from the transformed
    pair instead, cos(theta) X~ + sin(theta) N~.
    """
    rec = evaluate(params, cfg, u1, u2)
    _require_regular(rec)
    th = rec.scalars.theta[..., None]
    if from_transformed:
        return np.cos(th) * rec.Xt + np.sin(th) * rec.Nt
    return np.cos(th) * rec.frame.X + np.sin(th) * rec.frame.N


def shift_rotation_angles(params: TorusParams, cfg: GeneratorConfig, printed: bool = False):
    """Rotation angles relating a shifted general surface to its canonical one.

    A parameter shift by ``t`` along u1 corresponds to a rotation by ``r2 t``,
    so the exact angles are ``(-A2/sqrt(c), -B2/sqrt(c))``. ``printed=True``
    returns ``(-A2/(r2 sqrt(c)), -B2/(r1 sqrt(c)))`` instead.
    """
    red = validate_config(params, cfg).reduction
    if red is None:
        return 0.0, 0.0
    sc = math.sqrt(cfg.c)
    if printed:
        return -red.A2 / (params.r2 * sc), -red.B2 / (params.r1 * sc)
    return -red.A2 / sc, -red.B2 / sc


def congruence_shift_check(params: TorusParams, cfg_general: GeneratorConfig, u1, u2, printed: bool = False) -> float:
    """Max |X~_general(u) - R X~_canonical(h(u))| over the given points.

    ``h(u) = (u1 + A2/(r2 sqrt c), u2 + B2/(r1 sqrt c))``. ``printed`` selects
    the uncorrected rotation angles (see
    :func:`shift_rotation_angles`). Raises SingularPoint if either side is
    evaluated on the excluded set.
    """
    cfg = validate_config(params, cfg_general)
    red = cfg.reduction
    if red is None:
        raise ValueError("congruence_shift_check needs a general-family config")
    sc = math.sqrt(cfg.c)
    u1 = np.asarray(u1, dtype=float)
    u2 = np.asarray(u2, dtype=float)
    lhs = transformed_point(params, cfg, u1, u2)
    h1 = u1 + red.A2 / (params.r2 * sc)
    h2 = u2 + red.B2 / (params.r1 * sc)
    base = transformed_point(params, canonical_config(params, cfg), h1, h2)
    theta, phi = shift_rotation_angles(params, cfg, printed=printed)
    rhs = rotation_rtp(theta, phi, base)
    return float(np.max(np.abs(lhs - rhs)))


def describe(params: TorusParams, cfg: GeneratorConfig) -> dict:
    """Plain-dict form of (params, cfg) in the JSON config vocabulary."""
    out = {"r1": params.r1, "r2": params.r2, "c": cfg.c, "family": Family(cfg.family).value}
    fam = Family(cfg.family)
    if fam is Family.EXP:
        out.update(a1=cfg.a1, b1=cfg.b1, eps1=cfg.eps1, eps2=cfg.eps2)
    elif fam is Family.GENERAL:
        out.update(a1=cfg.a1, a2=cfg.a2, b1=cfg.b1, b2=cfg.b2)
    return out
