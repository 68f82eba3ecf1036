"""Smoke tests for the python module: a thin pass over every exported
operation with independently known values. The heavy numerical checks live in
the C++ suites."""

import math

import pytest

import sfcdf


def test_normal_primitives():
    assert sfcdf.std_normal_pdf(0.0) == pytest.approx(1.0 / math.sqrt(2 * math.pi), rel=1e-15)
    assert sfcdf.std_normal_cdf(0.0) == 0.5
    assert sfcdf.std_normal_cdf(float("inf")) == 1.0
    assert sfcdf.log_std_normal_cdf(-20.0) == pytest.approx(-203.91715537109726, rel=1e-13)


def test_owen_t():
    assert sfcdf.owen_t(0.0, 1.0) == pytest.approx(0.125, rel=1e-14)
    assert sfcdf.owen_t(1.0, -1.0) == -sfcdf.owen_t(1.0, 1.0)
    assert sfcdf.owen_t(2.0, float("inf")) == pytest.approx(0.011375065974089604, rel=1e-12)


def test_bvn_cdf():
    assert sfcdf.bvn_cdf(0.0, 0.0, 0.0) == pytest.approx(0.25, rel=1e-14)
    assert sfcdf.bvn_cdf(0.0, 0.0, 0.5) == pytest.approx(1.0 / 3.0, rel=1e-12)
    with pytest.raises(ValueError):
        sfcdf.bvn_cdf(0.0, 0.0, 1.5)


def test_tn_family():
    assert sfcdf.tn_cdf(0.0, 1.0, 1.0, 0.0) == pytest.approx(0.75, rel=1e-12)
    assert sfcdf.tn_cdf(1.0, 1.0, 1.0, -1.0, method="owen") == pytest.approx(
        0.5793276269657285, rel=1e-11
    )
    assert sfcdf.tn_pdf(1.0, 1.0, 1.0, -1.0) == pytest.approx(0.30891991595461951, rel=1e-12)
    assert sfcdf.half_normal_cdf(1.0, 1.0, 0.0) == pytest.approx(0.75, rel=1e-13)
    # production + reflected cost sum to one
    f = sfcdf.tn_cdf(2.0, 0.5, 1.0, 0.7)
    g = sfcdf.tn_cdf(2.0, 0.5, 1.0, -0.7, orientation="cost")
    assert f + g == pytest.approx(1.0, abs=1e-14)
    with pytest.raises(ValueError):
        sfcdf.tn_cdf(0.0, 1.0, 1.0, 0.0, method="owen")
    with pytest.raises(ValueError):
        sfcdf.tn_cdf(0.0, -1.0, 1.0, 0.0)


def test_exp_family():
    want = 0.5 + math.exp(0.5) * sfcdf.std_normal_cdf(-1.0)
    assert sfcdf.exp_cdf(1.0, 1.0, 0.0) == pytest.approx(want, rel=1e-13)
    assert sfcdf.exp_cdf(1.0, 1.0, 0.0, method="direct") == pytest.approx(want, rel=1e-13)
    assert sfcdf.exp_cdf(1.0, 1.0, 0.0, orientation="cost") == pytest.approx(
        1.0 - want, rel=1e-12
    )
    assert sfcdf.exp_pdf(1.0, 1.0, 0.0) == pytest.approx(
        math.exp(0.5) * sfcdf.std_normal_cdf(-1.0), rel=1e-13
    )
    # stress point: lambda * sigma_v = 32 must not overflow
    v = sfcdf.exp_cdf(8.0, 4.0, -3.0)
    assert 0.0 <= v <= 1.0
    assert v == pytest.approx(0.23625391269382888, rel=1e-12)


def test_quadrature_oracle():
    value, err, converged = sfcdf.quad_cdf_tn(0.0, 1.0, 1.0, 0.0)
    assert converged
    assert value == pytest.approx(0.75, abs=1e-10)
    value, err, converged = sfcdf.quad_cdf_exp(1.0, 1.0, 0.0)
    assert converged
    assert value == pytest.approx(sfcdf.exp_cdf(1.0, 1.0, 0.0), abs=1e-10)


def test_samplers_and_quantiles():
    draws = sfcdf.sample_trunc_normal(-2.0, 1.0, 50_000, 7)
    assert min(draws) >= 0.0
    assert draws == sfcdf.sample_trunc_normal(-2.0, 1.0, 50_000, 7)
    exp_draws = sfcdf.sample_exponential(2.0, 50_000, 8)
    assert sum(exp_draws) / len(exp_draws) == pytest.approx(0.5, abs=0.02)
    normals = sfcdf.sample_normal(1.0, 50_000, 9)
    assert sum(normals) / len(normals) == pytest.approx(0.0, abs=0.02)
    assert sfcdf.empirical_quantile([1.0, 2.0, 3.0, 4.0], 0.5) == 2.0
