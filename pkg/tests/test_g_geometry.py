"""Semi-inner product, Gram determinants, projections, orthogonalized volume."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lp2dual import (
    GridFunction,
    SingularGramError,
    g,
    g_orthogonalize,
    g_projection,
    gram_det,
    gunawan_norm,
    lp_norm,
    make_rule,
    pairing,
    sample_function,
    volume,
)

RULE = make_rule("midpoint", 256)
RAMP = sample_function(RULE, "poly:0,1")
ONE = sample_function(RULE, "const:1.0")
SQUARE = sample_function(RULE, "poly:0,0,1")

PS = (1.0, 1.5, 2.0, 3.0)


def _pair(seed: int):
    rng = np.random.default_rng(seed)
    if seed % 3 == 0:
        return (
            GridFunction(RULE, rng.standard_normal(RULE.n)),
            GridFunction(RULE, rng.standard_normal(RULE.n)),
        )
    return (
        sample_function(RULE, f"fourier:{seed},5"),
        sample_function(RULE, f"fourier:{seed + 1},5"),
    )


# ---------------------------------------------------------------------------
# the semi-inner product itself
# ---------------------------------------------------------------------------


def test_g_self_is_squared_norm():
    for p in PS:
        for f in (RAMP, SQUARE):
            assert g(f, f, p) == pytest.approx(lp_norm(f, p) ** 2, rel=1e-13)


def test_g_anchor_values():
    assert g(ONE, RAMP, 2.0) == pytest.approx(0.5, rel=1e-14)
    assert g(RAMP, RAMP, 3.0) == pytest.approx(0.25 ** (2.0 / 3.0), rel=1e-4)


def test_g_reduces_to_pairing_at_p2():
    for seed in (0, 1, 2):
        x, y = _pair(seed)
        assert g(x, y, 2.0) == pytest.approx(pairing(x, y), rel=1e-12)


def test_g_zero_first_argument_is_zero():
    zero = sample_function(RULE, "const:0.0")
    assert g(zero, RAMP, 1.5) == 0.0


@given(seed=st.integers(min_value=0, max_value=5_000), p=st.sampled_from(PS))
def test_g_linear_in_second_argument(seed, p):
    x, y = _pair(seed)
    z, _ = _pair(seed + 17)
    lhs = g(x, y + z, p)
    parts = g(x, y, p) + g(x, z, p)
    scale = max(abs(g(x, y, p)), abs(g(x, z, p)), 1e-300)
    assert abs(lhs - parts) <= 1e-11 * scale
    assert g(x, -2.0 * y, p) == pytest.approx(-2.0 * g(x, y, p), rel=1e-11, abs=1e-300)


@given(seed=st.integers(min_value=0, max_value=5_000), p=st.sampled_from(PS))
def test_g_homogeneous_in_first_argument(seed, p):
    x, y = _pair(seed)
    assert g(3.0 * x, y, p) == pytest.approx(3.0 * g(x, y, p), rel=1e-10, abs=1e-300)
    assert g(-1.0 * x, y, p) == pytest.approx(-g(x, y, p), rel=1e-12, abs=1e-300)


@given(seed=st.integers(min_value=0, max_value=5_000), p=st.sampled_from(PS))
def test_g_cauchy_schwarz_bound(seed, p):
    x, y = _pair(seed)
    assert abs(g(x, y, p)) <= lp_norm(x, p) * lp_norm(y, p) * (1.0 + 1e-12)


# ---------------------------------------------------------------------------
# Gram determinant
# ---------------------------------------------------------------------------


def test_gram_det_anchor_p2():
    value = gram_det(ONE, RAMP, 2.0)
    assert value == pytest.approx(1.0 / 12.0, rel=1e-4)
    identity = lp_norm(ONE, 2.0) ** 2 * lp_norm(RAMP, 2.0) ** 2 - pairing(ONE, RAMP) ** 2
    assert value == pytest.approx(identity, rel=1e-12)


def test_gram_det_anchor_p3_grid_stable():
    coarse = gram_det(ONE, RAMP, 3.0)
    fine_rule = make_rule("midpoint", 1024)
    fine = gram_det(
        sample_function(fine_rule, "const:1.0"),
        sample_function(fine_rule, "poly:0,1"),
        3.0,
    )
    assert coarse == pytest.approx(fine, rel=1e-3)


def test_gram_det_p2_nonnegative():
    for seed in range(8):
        x, y = _pair(seed)
        floor = -1e-12 * (lp_norm(x, 2.0) * lp_norm(y, 2.0)) ** 2
        assert gram_det(x, y, 2.0) >= floor


def test_gram_det_vanishes_on_dependent_pair():
    x, _ = _pair(5)
    scale = lp_norm(x, 1.5) ** 4
    assert abs(gram_det(x, 2.0 * x, 1.5)) <= 1e-10 * scale


# ---------------------------------------------------------------------------
# projection and orthogonalization
# ---------------------------------------------------------------------------


def test_projection_reproduces_span_members():
    # span basis (1, t - 1/2): its Gram determinant stays away from zero for
    # every exponent here, including 1 — the pair (1, t) would be exactly
    # g-degenerate at exponent 1 despite being linearly independent
    centered = RAMP - 0.5 * ONE
    for p in PS:
        target = ONE - 3.0 * centered
        proj = g_projection(target, ONE, centered, p)
        assert np.allclose(proj.samples, target.samples, rtol=0, atol=1e-9)


def test_projection_rejects_g_degenerate_independent_pair():
    # exponent-1 Gram of (1, t): g(1,1) g(t,t) - g(1,t) g(t,1)
    #   = 1 * 1/4 - 1/2 * 1/2 = 0, despite linear independence
    with pytest.raises(SingularGramError):
        g_projection(SQUARE, ONE, RAMP, 1.0)


def test_projection_anchor_p2_least_squares():
    proj = g_projection(SQUARE, ONE, RAMP, 2.0)
    # independent oracle: weighted least squares onto the same span
    w = np.sqrt(RULE.weights)
    design = np.stack([ONE.samples, RAMP.samples], axis=1) * w[:, None]
    coef, *_ = np.linalg.lstsq(design, SQUARE.samples * w, rcond=None)
    oracle = coef[0] * ONE.samples + coef[1] * RAMP.samples
    assert np.allclose(proj.samples, oracle, rtol=0, atol=1e-10)
    # continuum limit of that projection is t - 1/6
    assert np.max(np.abs(proj.samples - (RULE.nodes - 1.0 / 6.0))) <= 1e-4


def test_projection_residual_is_g_orthogonal_p2():
    proj = g_projection(SQUARE, ONE, RAMP, 2.0)
    resid = SQUARE - proj
    for basis in (ONE, RAMP):
        assert abs(pairing(basis, resid)) <= 1e-12


def test_projection_rejects_dependent_span():
    with pytest.raises(SingularGramError):
        g_projection(SQUARE, RAMP, 2.0 * RAMP, 2.0)


def test_orthogonalize_anchor_pair():
    o1, o2 = g_orthogonalize(ONE, RAMP, 2.0)
    assert np.array_equal(o1.samples, ONE.samples)
    assert np.max(np.abs(o2.samples - (RULE.nodes - 0.5))) <= 1e-15


@given(seed=st.integers(min_value=0, max_value=5_000), p=st.sampled_from(PS))
@settings(max_examples=30)
def test_orthogonalize_kills_g_cross_term(seed, p):
    x1, x2 = _pair(seed)
    o1, o2 = g_orthogonalize(x1, x2, p)
    denom = max(lp_norm(o1, p) * lp_norm(o2, p), 1e-300)
    assert abs(g(o1, o2, p)) <= 1e-10 * denom


# ---------------------------------------------------------------------------
# volume
# ---------------------------------------------------------------------------


def test_volume_anchor_p2_matches_double_quadrature():
    assert volume(ONE, RAMP, 2.0) == pytest.approx(
        gunawan_norm(ONE, RAMP, 2.0), rel=1e-12
    )


def test_volume_p2_equals_root_gram():
    for seed in (1, 2, 4):
        x, y = _pair(seed)
        gamma = gram_det(x, y, 2.0)
        assert volume(x, y, 2.0) == pytest.approx(
            math.sqrt(max(gamma, 0.0)), rel=1e-8
        )


def test_volume_dependent_pair_is_zero():
    x, _ = _pair(3)
    scale = lp_norm(x, 1.5) ** 2
    assert volume(x, -4.0 * x, 1.5) <= 1e-8 * scale
    zero = sample_function(RULE, "const:0.0")
    assert volume(x, zero, 1.5) == 0.0
    assert volume(zero, x, 1.5) == 0.0


@given(seed=st.integers(min_value=0, max_value=5_000), p=st.sampled_from(PS))
@settings(max_examples=30)
def test_volume_scale_and_shear_behavior(seed, p):
    x, y = _pair(seed)
    v = volume(x, y, p)
    # scaling one argument scales the volume
    assert volume(2.0 * x, y, p) == pytest.approx(2.0 * v, rel=1e-9, abs=1e-280)
    # shearing the second argument by the first leaves it unchanged
    assert volume(x, y + 1.5 * x, p) == pytest.approx(v, rel=1e-8, abs=1e-280)
