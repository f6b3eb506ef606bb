import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ribaucour_flat import core
from ribaucour_flat.core import Family, GeneratorConfig, TorusParams
from ribaucour_flat.errors import (
    ConstraintViolated,
    DegenerateGenerator,
    GeneratorOverflow,
    OutOfRange,
    SingularPoint,
)
from ribaucour_flat.grids import sample_points

from conftest import PARAM_SETS, family_configs, general_config

U2_STAR = math.asinh(3.0) / 1.2


# --- parameters and configs -------------------------------------------------


def test_fig1_config_is_valid(fig1):
    p, cfg = fig1
    assert core.validate_config(p, cfg).family is Family.COSH_SINH
    assert p.r2 == pytest.approx(0.8, abs=1e-15)


@pytest.mark.parametrize("r1", [1.2, 0.0, 1.0, -0.3, float("nan")])
def test_r1_out_of_range(r1):
    with pytest.raises(OutOfRange) as exc:
        TorusParams(r1)
    assert exc.value.key == "r1"


@pytest.mark.parametrize("c", [0.0, -1.0, float("inf")])
def test_c_must_be_positive(fig1, c):
    with pytest.raises(OutOfRange) as exc:
        core.validate_config(fig1[0], GeneratorConfig(c, Family.COSH_SINH))
    assert exc.value.key == "c"


@given(st.floats(min_value=1e-6, max_value=1 - 1e-6))
def test_r2_on_unit_circle(r1):
    p = TorusParams(r1)
    assert abs(p.r1**2 + p.r2**2 - 1.0) <= 2 * np.finfo(float).eps


def test_general_constraint():
    p = TorusParams(0.6)
    # a1=2, a2=1: b2^2 - b1^2 must be 3 r2^2 / r1^2 = 16/3
    ok = GeneratorConfig(4.0, Family.GENERAL, a1=2.0, a2=1.0, b1=1.0, b2=math.sqrt(19.0 / 3.0))
    assert core.validate_config(p, ok).reduction.family is Family.COSH_SINH
    bad = GeneratorConfig(4.0, Family.GENERAL, a1=2.0, a2=1.0, b1=1.0, b2=2.0)
    with pytest.raises(ConstraintViolated):
        core.validate_config(p, bad)


def test_degenerate_generators():
    p = TorusParams(0.6)
    with pytest.raises(DegenerateGenerator):
        core.validate_config(p, GeneratorConfig(1.0, Family.EXP, a1=0.0, b1=0.0))
    with pytest.raises(DegenerateGenerator):
        core.validate_config(p, GeneratorConfig(1.0, Family.GENERAL, a1=0.0, a2=0.0, b1=0.0, b2=0.0))
    with pytest.raises(OutOfRange):
        core.validate_config(p, GeneratorConfig(1.0, Family.EXP, eps1=2))


def test_general_reduction_shifts():
    p, cfg = general_config(A2=0.7, B2=-0.3)
    red = core.validate_config(p, cfg).reduction
    assert red.family is Family.COSH_SINH
    assert red.A1 == pytest.approx(1.0)
    assert red.A2 == pytest.approx(0.7, abs=1e-14)
    assert red.B2 == pytest.approx(-0.3, abs=1e-14)
    assert red.sign == 1.0


def test_general_reduces_to_named_family_values():
    p, cfg = general_config(A2=0.0, B2=0.0)
    named = GeneratorConfig(4.0, Family.COSH_SINH)
    u1, u2 = sample_points((-2, 2, -2, 2), 64, seed=3)
    a = np.array(core.eval_generators(p, cfg, u1, u2))
    b = np.array(core.eval_generators(p, named, u1, u2))
    assert np.max(np.abs(a - b)) < 1e-12


def test_general_sinh_cosh_branch():
    p = TorusParams(0.6)
    k = p.r2 / p.r1
    A2, B2 = 0.4, 0.2
    cfg = GeneratorConfig(1.0, Family.GENERAL, a1=math.sinh(A2), a2=math.cosh(A2),
                          b1=k * math.cosh(B2), b2=k * math.sinh(B2))
    red = core.validate_config(p, cfg).reduction
    assert red.family is Family.SINH_COSH
    assert (red.A2, red.B2) == pytest.approx((A2, B2), abs=1e-14)


# --- seed torus -------------------------------------------------------------


def test_torus_point_examples():
    p = TorusParams(0.6)
    assert np.allclose(core.torus_point(p, 0, 0), [0.6, 0, 0.8, 0], atol=1e-15)
    assert np.allclose(core.torus_point(p, math.pi / (2 * 0.8), 0), [0, 0.6, 0.8, 0], atol=1e-15)


def test_torus_frame_at_origin():
    fr = core.torus_frame(TorusParams(0.6), 0, 0)
    assert np.allclose(fr.e1, [0, 1, 0, 0])
    assert np.allclose(fr.e2, [0, 0, 0, 1])
    assert np.allclose(fr.N, [-0.8, 0, 0.6, 0])
    assert fr.lambda1 * fr.lambda2 == pytest.approx(-1.0, abs=1e-15)


def test_torus_frame_orthonormal_and_periodic():
    p = TorusParams(0.35)
    u1, u2 = sample_points((-10, 10, -10, 10), 200, seed=1)
    fr = core.torus_frame(p, u1, u2)
    vecs = [fr.X, fr.N, fr.e1, fr.e2]
    gram = np.einsum("kpi,lpi->klp", np.array(vecs), np.array(vecs))
    assert np.max(np.abs(gram - np.eye(4)[:, :, None])) < 1e-14
    shifted = core.torus_point(p, u1 + 2 * math.pi / p.r2, u2 + 2 * math.pi / p.r1)
    assert np.max(np.abs(shifted - fr.X)) < 1e-12


def test_rotation_identity_and_isometry():
    rng = np.random.default_rng(0)
    q = rng.normal(size=(50, 4))
    assert np.array_equal(core.rotation_rtp(0.0, 0.0, q), q)
    r = core.rotation_rtp(rng.normal(), rng.normal(), q)
    assert np.max(np.abs(np.linalg.norm(r, axis=1) - np.linalg.norm(q, axis=1))) < 1e-15 * 10


def test_rotation_shifts_torus():
    p = TorusParams(0.6)
    rng = np.random.default_rng(1)
    u1, u2, t, s = rng.uniform(-3, 3, size=(4, 40))
    lhs = core.rotation_rtp(p.r2 * t, p.r1 * s, core.torus_point(p, u1, u2))
    assert np.max(np.abs(lhs - core.torus_point(p, u1 + t, u2 + s))) < 1e-14


# --- generators and scalars -------------------------------------------------


def test_generators_fig1(fig1):
    f, g, fp, gp = core.eval_generators(*fig1, 0.0, 0.0)
    assert (f, g, fp) == (1.0, 0.0, 0.0)
    assert gp == pytest.approx(1.6, abs=1e-15)


def test_generators_fig4(fig4):
    f, g, fp, gp = core.eval_generators(*fig4, 0.0, 0.0)
    assert f == pytest.approx(1.0) and g == pytest.approx(1.0)
    assert fp == pytest.approx(0.8 * math.sqrt(0.001), abs=1e-15)
    assert gp == pytest.approx(0.6 * math.sqrt(0.001), abs=1e-15)


def test_fig2_generators():
    p = TorusParams(0.6)
    f, g, _, _ = core.eval_generators(p, GeneratorConfig(4.0, Family.SINH_COSH), 0.3, -0.2)
    assert f == pytest.approx(math.sinh(8 * 0.3 / 5), rel=1e-14)
    assert g == pytest.approx(4 / 3 * math.cosh(6 * -0.2 / 5), rel=1e-14)


def test_scalars_fig1(fig1):
    b = core.eval_scalars(*fig1, 0.0, 0.0)
    assert b.Omega == pytest.approx(0.48, abs=1e-15)
    assert b.W == pytest.approx(0.64, abs=1e-15)
    assert b.S == pytest.approx(3.2, abs=1e-14)
    assert (b.Omega1, b.Omega2) == pytest.approx((0.0, 1.6), abs=1e-15)
    assert (b.T1, b.T2) == pytest.approx((40 / 3, 0.0), abs=1e-13)
    assert b.hypothesis_ok


def test_scalars_fig4(fig4):
    b = core.eval_scalars(*fig4, 0.0, 0.0)
    assert (b.Omega, b.W, b.S) == pytest.approx((0.96, 0.28, 1.001), abs=1e-14)
    assert b.Omega1**2 + b.Omega2**2 == pytest.approx(0.001 * (b.Omega**2 + b.W**2), abs=1e-16)


def test_overflow_reported():
    p = TorusParams(0.6)
    cfg = GeneratorConfig(4.0, Family.COSH_SINH)
    with pytest.raises(GeneratorOverflow):
        core.eval_generators(p, cfg, 1000.0, 0.0)
    rec = core.evaluate(p, cfg, np.array([0.0, 1000.0]), np.array([0.0, 0.0]))
    assert rec.overflow.tolist() == [False, True]
    assert rec.regular.tolist() == [True, False]


def test_rescaled_path_matches_direct(monkeypatch):
    p, cfg = general_config(A2=0.4, B2=0.25)
    u1, u2 = sample_points((-3, 3, -3, 3), 256, seed=5)
    direct = core.evaluate(p, cfg, u1, u2)
    monkeypatch.setattr(core, "_RESCALE_ARG", 0.0)
    scaled = core.evaluate(p, cfg, u1, u2)
    ok = direct.regular & scaled.regular
    assert np.count_nonzero(ok) > 200
    for name in ("Xt", "Nt", "psi1", "psi2", "margin", "lt1", "lt2"):
        a, b = getattr(direct, name)[ok], getattr(scaled, name)[ok]
        assert np.max(np.abs(a - b) / np.maximum(1.0, np.abs(a))) < 1e-10, name


def test_far_points_are_finite():
    p = TorusParams(0.6)
    cfg = GeneratorConfig(4.0, Family.COSH_SINH)
    rec = core.evaluate(p, cfg, np.array([250.0, -400.0]), np.array([1.0, 300.0]))
    assert np.all(rec.regular)
    assert np.allclose(np.sum(rec.Xt**2, axis=-1), 1.0, atol=1e-12)


# --- transformed surface ----------------------------------------------------


def test_anchor_point_and_normal(fig1):
    Xt = core.transformed_point(*fig1, 0.0, 0.0)
    Nt = core.transformed_normal(*fig1, 0.0, 0.0)
    assert np.max(np.abs(Xt - [0.36, 0, 0.8, -0.48])) < 1e-13
    assert np.max(np.abs(Nt - [-0.48, 0, 0.6, 0.64])) < 1e-13


def test_anchor_abstract_form_agrees(fig1):
    p, cfg = fig1
    fr = core.torus_frame(p, 0.0, 0.0)
    b = core.eval_scalars(p, cfg, 0.0, 0.0)
    Xa = core.ribaucour_point(fr.X, fr.N, fr.e1, fr.e2, b.Omega, b.Omega1, b.Omega2, b.W, b.S)
    assert np.max(np.abs(Xa - [0.36, 0, 0.8, -0.48])) < 1e-13


def test_anchor_metric_and_curvatures(fig1):
    psi1, psi2 = core.metric_coefficients(*fig1, 0.0, 0.0)
    assert (psi1, psi2) == pytest.approx((-0.48, 0.48), abs=1e-13)
    lt1, lt2 = core.principal_curvatures(*fig1, 0.0, 0.0)
    assert (lt1, lt2) == pytest.approx((-4 / 3, 3 / 4), abs=1e-13)
    k1, k2 = core.principal_curvatures_from_metric(*fig1, 0.0, 0.0)
    assert (k1, k2) == pytest.approx((4 / 3, -3 / 4), abs=1e-13)


def test_anchor_margin_and_congruence(fig1):
    assert core.singularity_margin(*fig1, 0.0, 0.0) == pytest.approx(-1.0, abs=1e-15)
    for from_t in (False, True):
        C = core.sphere_congruence_point(*fig1, 0.0, 0.0, from_transformed=from_t)
        assert np.max(np.abs(C - [0, 0, 1, 0])) < 1e-13


@pytest.mark.parametrize("r1,c", PARAM_SETS)
def test_identities_on_samples(r1, c):
    p = TorusParams(r1)
    s = 2 / math.sqrt(c)
    u1, u2 = sample_points((-2 * s, 2 * s, -2.5 * s, 2.5 * s), 2048, seed=7)
    for cfg in family_configs(c):
        rec = core.evaluate(p, cfg, u1, u2)
        ok = rec.regular & (np.abs(rec.margin) > 1e-3)
        assert np.count_nonzero(ok) > 1900
        Xt, Nt = rec.Xt[ok], rec.Nt[ok]
        fr, b = rec.frame, rec.scalars
        Xa = core.ribaucour_point(fr.X, fr.N, fr.e1, fr.e2, b.Omega, b.Omega1, b.Omega2, b.W, b.S)[ok]
        assert np.max(np.abs(np.sum(Xt * Xt, -1) - 1)) < 1e-12
        assert np.max(np.abs(np.sum(Nt * Nt, -1) - 1)) < 1e-12
        assert np.max(np.abs(np.sum(Xt * Nt, -1))) < 1e-12
        assert np.max(np.abs(Xt - Xa)) < 1e-13
        assert np.max(np.abs(rec.lt1[ok] * rec.lt2[ok] + 1)) < 1e-12


@settings(max_examples=60, deadline=None)
@given(
    st.floats(0.05, 0.95), st.floats(0.01, 10.0),
    st.floats(-3, 3), st.floats(-3, 3), st.sampled_from(list(Family)[:3]),
)
def test_identities_property(r1, c, x, y, family):
    p = TorusParams(r1)
    cfg = GeneratorConfig(c, family)
    u1, u2 = x / (p.r2 * math.sqrt(c)), y / (p.r1 * math.sqrt(c))
    rec = core.evaluate(p, cfg, u1, u2)
    if not (rec.regular and abs(rec.margin) > 1e-3):
        return
    b = rec.scalars
    assert abs(np.dot(rec.Xt, rec.Xt) - 1) < 1e-12
    assert abs(np.dot(rec.Nt, rec.Nt) - 1) < 1e-12
    assert abs(np.dot(rec.Xt, rec.Nt)) < 1e-12
    assert abs(rec.lt1 * rec.lt2 + 1) < 1e-11
    assert abs(b.Omega1**2 + b.Omega2**2 - c * (b.Omega**2 + b.W**2)) / b.S < 1e-12
    a = p.a
    assert abs(rec.psi1 - a * (b.S - b.Omega * b.T1) / b.S) < 1e-11
    assert abs(rec.psi2 - a * (b.S - b.Omega * b.T2) / b.S) < 1e-11
    assert abs(rec.margin - rec.psi1 * rec.psi2 / a**2) < 1e-12


def test_printed_normal_is_not_unit(fig1):
    v = core.printed_normal_expansion(*fig1, 0.0, 0.0)
    assert abs(np.dot(v, v) - 1) > 0.1
    Nt = core.transformed_normal(*fig1, 0.0, 0.0)
    assert abs(np.dot(Nt, Nt) - 1) < 1e-15


def test_w_zero_point_congruence_is_normal():
    p = TorusParams(0.6)
    cfg = GeneratorConfig(4.0, Family.SINH_COSH)
    # W = r2^2 f - r1^2 g = 0 at u2 = 0 needs sinh(x) = r1/r2
    u1 = math.asinh(p.r1 / p.r2) / (p.r2 * 2.0)
    b = core.eval_scalars(p, cfg, u1, 0.0)
    assert abs(b.W) < 1e-15
    C = core.sphere_congruence_point(p, cfg, u1, 0.0)
    assert np.max(np.abs(C - core.torus_frame(p, u1, 0.0).N)) < 1e-15


# --- excluded set -----------------------------------------------------------


def test_margin_root(fig1):
    assert abs(core.singularity_margin(*fig1, 0.0, U2_STAR)) < 1e-12
    with pytest.raises(SingularPoint):
        core.transformed_point(*fig1, 0.0, U2_STAR)
    rec = core.evaluate(*fig1, 0.0, U2_STAR)
    assert not rec.regular


def test_margin_far_limit(fig1):
    assert core.singularity_margin(*fig1, 20.0, 0.7) == pytest.approx(-1.0, abs=1e-12)
    psi1, psi2 = core.metric_coefficients(*fig1, 20.0, 0.0)
    assert abs(psi1 + 0.48) < 1e-15 and abs(psi2 - 0.48) < 1e-15


def test_printed_domain_factor_differs(fig1):
    p, cfg = fig1
    u1, u2 = 0.3, 0.4
    P1, P2 = core.printed_domain_factors(p, cfg, u1, u2)
    f, g, _, _ = core.eval_generators(p, cfg, u1, u2)
    D = p.r1**2 * g * g + p.r2**2 * f * f
    true_p2 = (p.r2**2 * f * f - p.r1**2 * g * g - 2 * p.r1**2 * f * g) / D
    assert abs(P2 - true_p2) > 0.1
    assert core.singularity_margin(p, cfg, u1, u2) == pytest.approx(P1 * true_p2, rel=1e-14)


# --- congruence reduction ---------------------------------------------------


def test_identity_reduction_residual_zero():
    p, cfg = general_config(A2=0.0, B2=0.0)
    u1, u2 = sample_points((-1, 1, -0.5, 0.5), 64, seed=2)
    ok = np.abs(core.singularity_margin(p, cfg, u1, u2)) > 0.1
    assert core.congruence_shift_check(p, cfg, u1[ok], u2[ok]) < 1e-15


def _regular_pairs(p, cfg, n=1000):
    u1, u2 = sample_points((-2, 2, -2.5, 2.5), 4 * n, seed=11)
    red = core.validate_config(p, cfg).reduction
    sc = math.sqrt(cfg.c)
    canon = core.canonical_config(p, cfg)
    ok = (np.abs(core.singularity_margin(p, cfg, u1, u2)) > 0.1) & (
        np.abs(core.singularity_margin(p, canon, u1 + red.A2 / (p.r2 * sc), u2 + red.B2 / (p.r1 * sc))) > 0.1
    )
    return u1[ok][:n], u2[ok][:n]


def test_congruence_exact_angles():
    p, cfg = general_config(A2=0.7, B2=-0.3)
    u1, u2 = _regular_pairs(p, cfg)
    assert len(u1) == 1000
    assert core.congruence_shift_check(p, cfg, u1, u2) < 1e-10


def test_congruence_printed_angles_differ():
    p, cfg = general_config(A2=0.7, B2=-0.3)
    u1, u2 = _regular_pairs(p, cfg, 100)
    assert core.congruence_shift_check(p, cfg, u1, u2, printed=True) > 1e-2


def test_a1_rescaling_leaves_surface_unchanged():
    p, cfg = general_config(A2=0.7, B2=-0.3)
    _, cfg2 = general_config(A2=0.7, B2=-0.3, scale=2.0)
    assert core.validate_config(p, cfg2).reduction.A1 == pytest.approx(4.0)
    u1, u2 = _regular_pairs(p, cfg, 200)
    a = core.transformed_point(p, cfg, u1, u2)
    b = core.transformed_point(p, cfg2, u1, u2)
    assert np.max(np.abs(a - b)) < 1e-12


def test_opposite_sign_reduction():
    p, cfg = general_config(A2=0.2, B2=0.1)
    flipped = GeneratorConfig(cfg.c, Family.GENERAL, a1=cfg.a1, a2=cfg.a2, b1=-cfg.b1, b2=-cfg.b2)
    assert core.validate_config(p, flipped).reduction.sign == -1.0
    u1, u2 = _regular_pairs(p, flipped, 200)
    assert core.congruence_shift_check(p, flipped, u1, u2) < 1e-10


def test_describe_round_trip(fig4):
    d = core.describe(*fig4)
    assert d == {"r1": 0.6, "r2": fig4[0].r2, "c": 0.001, "family": "exp", "a1": 1.0, "b1": 1.0, "eps1": 1, "eps2": 1}
