from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from convexorder import series as ps
from convexorder.errors import DomainError, SelfTestFailure, TruncationWarning
from convexorder.kernels import Bernardi
from convexorder.params import ClassParams, MuNu
from convexorder.series import (
    PowerSeries,
    all_ones_series,
    apply_transform,
    derivative_series,
    duality_test_function,
    eval_series,
    extremal_function,
    hadamard,
    operator_H,
    phi_series,
    psi_series,
)

MN11 = MuNu(1.0, 1.0)
MN12 = MuNu(1.0, 2.0)
MN02 = MuNu(0.0, 2.0)


def test_hadamard_identity():
    rng = np.random.default_rng(0)
    a = PowerSeries(rng.normal(size=32) + 1j * rng.normal(size=32))
    out = hadamard(a, all_ones_series(31))
    assert np.array_equal(out.coeffs, a.coeffs)


def test_hadamard_coefficientwise():
    a = PowerSeries([0.0, 1.0, 4.0])
    b = PowerSeries([0.0, 1.0, 5.0])
    assert np.allclose(hadamard(a, b).coeffs, [0.0, 1.0, 20.0])


def test_hadamard_truncates_to_min():
    a = PowerSeries(np.ones(10))
    b = PowerSeries(np.full(5, 2.0))
    assert hadamard(a, b).truncation == 4


def test_phi_coefficients():
    phi = phi_series(MN11, 8)
    k = np.arange(9.0)
    assert np.allclose(phi.coeffs, k + 1.0)
    assert phi.coeffs[0] == 1.0
    phi0 = phi_series(MN02, 8)
    assert np.allclose(phi0.coeffs, (2.0 * k + 1.0) / (k + 1.0))


def test_psi_coefficients():
    psi = psi_series(MN11, 8)
    k = np.arange(9.0)
    assert np.allclose(psi.coeffs, 1.0 / (k + 1.0))
    assert psi.coeffs[0] == 1.0


@pytest.mark.parametrize("mn", [MN11, MN12, MN02])
def test_phi_psi_all_ones_float(mn):
    n = 4096
    prod = hadamard(phi_series(mn, n), psi_series(mn, n))
    assert np.max(np.abs(prod.coeffs - 1.0)) <= 1e-13


def test_phi_psi_all_ones_rational():
    # exact reciprocal structure, checked in rational arithmetic
    mu, nu = Fraction(1), Fraction(2)
    for k in range(64):
        phi_k = (k * nu + 1) * (k * mu + 1) / Fraction(k + 1)
        psi_k = Fraction(k + 1) / ((k * nu + 1) * (k * mu + 1))
        assert phi_k * psi_k == 1


# ----------------------------------------------------------------- operator

def test_operator_on_identity_function():
    f = PowerSeries([0.0, 1.0, 0.0, 0.0])
    h = operator_H(f, ClassParams(3.0, 1.0, 0.0))
    assert np.allclose(h.coeffs, [1.0, 0.0, 0.0])


def test_operator_quadratic_example():
    # f = z + z^2, alpha = 3, gamma = 1 (mu = nu = 1): H = 1 + 4z
    f = PowerSeries([0.0, 1.0, 1.0])
    h = operator_H(f, ClassParams(3.0, 1.0, 0.0))
    assert np.allclose(h.coeffs, [1.0, 4.0])


def test_operator_requires_normalization():
    with pytest.raises(DomainError):
        operator_H(PowerSeries([0.5, 1.0, 0.0]), ClassParams(3.0, 1.0, 0.0))


@pytest.mark.parametrize("seed", range(10))
def test_operator_routes_agree_random(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(4, 200))
    coeffs = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    coeffs[0] = 0.0
    coeffs[1] = 1.0
    mu = float(rng.uniform(0.0, 3.0))
    nu = mu + float(rng.uniform(0.0, 3.0))
    params = ClassParams(mu + nu + mu * nu, mu * nu, 0.0)
    operator_H(PowerSeries(coeffs), params)  # must not raise SelfTestFailure


def test_operator_self_test_fires_on_inconsistent_factorization(monkeypatch):
    monkeypatch.setattr(ps, "resolve_mu_nu", lambda params: MuNu(1.0, 1.25))
    f = PowerSeries([0.0, 1.0, 1.0, 0.5])
    with pytest.raises(SelfTestFailure):
        operator_H(f, ClassParams(3.0, 1.0, 0.0))


# ----------------------------------------------------------------- extremal

def test_extremal_beta_one_limit():
    f = extremal_function(MN11, 1.0 - 1e-15, 8)
    assert np.allclose(f.coeffs, [0.0, 1.0] + [0.0] * 7, atol=1e-14)


def test_extremal_coefficients():
    beta = -0.5
    f = extremal_function(MN11, beta, 6)
    k = np.arange(1, 6, dtype=float)
    assert np.allclose(f.coeffs[2:], 2.0 * (1.0 - beta) / (k + 1.0) ** 2)


def test_extremal_operator_gives_boundary_function():
    beta = -0.629
    f = extremal_function(MN11, beta, 64)
    h = operator_H(f, ClassParams(3.0, 1.0, 0.0))
    expected = np.full(64, 2.0 * (1.0 - beta), dtype=complex)
    expected[0] = 1.0
    assert np.allclose(h.coeffs, expected, atol=1e-13)


def test_duality_function_at_extremal_pair():
    beta = -0.3
    a = duality_test_function(1.0, -1.0, beta, MN12, 128)
    b = extremal_function(MN12, beta, 128)
    assert np.max(np.abs(a.coeffs - b.coeffs)) <= 1e-14


def test_duality_function_x_equals_y():
    f = duality_test_function(1j, 1j, -0.4, MN11, 16)
    expected = np.zeros(17, dtype=complex)
    expected[1] = 1.0
    assert np.allclose(f.coeffs, expected, atol=1e-15)


def test_duality_function_unit_modulus_required():
    with pytest.raises(DomainError):
        duality_test_function(0.5, -1.0, 0.0, MN11, 8)


# ---------------------------------------------------------------- transform

def test_transform_alexander_divides_by_index():
    rng = np.random.default_rng(3)
    coeffs = rng.normal(size=10)
    coeffs[0] = 0.0
    f = PowerSeries(coeffs)
    out = apply_transform(Bernardi(0.0), f)
    n = np.arange(1, 10, dtype=float)
    assert np.allclose(out.coeffs[1:], coeffs[1:] / n)


def test_transform_fixes_identity():
    f = PowerSeries([0.0, 1.0, 0.0])
    out = apply_transform(Bernardi(2.0), f)
    assert np.allclose(out.coeffs, [0.0, 1.0, 0.0])


def test_transform_extremal_coefficients():
    beta = -0.5
    kernel = Bernardi(1.0)
    big_f = apply_transform(kernel, extremal_function(MN11, beta, 32))
    k = np.arange(1, 32, dtype=float)
    tau = 2.0 / (k + 2.0)
    assert np.allclose(big_f.coeffs[2:], 2.0 * (1.0 - beta) * tau / (k + 1.0) ** 2)


def test_transform_is_linear_and_commutes_with_hadamard():
    rng = np.random.default_rng(4)
    kernel = Bernardi(1.5)
    a = rng.normal(size=12)
    b = rng.normal(size=12)
    a[0] = b[0] = 0.0
    fa, fb = PowerSeries(a), PowerSeries(b)
    lin = apply_transform(kernel, PowerSeries(2.0 * a + 3.0 * b))
    combo = 2.0 * apply_transform(kernel, fa).coeffs + 3.0 * apply_transform(kernel, fb).coeffs
    assert np.allclose(lin.coeffs, combo)
    m = PowerSeries(rng.normal(size=12))
    left = apply_transform(kernel, hadamard(fa, m))
    right = hadamard(apply_transform(kernel, fa), m)
    assert np.allclose(left.coeffs, right.coeffs)


# --------------------------------------------------------------- evaluation

def test_eval_identity():
    f = PowerSeries([0.0, 1.0, 0.0])
    for z in (0.3, -0.5 + 0.2j):
        value, bound = eval_series(f, z)
        assert value == pytest.approx(z)


def test_eval_geometric():
    f = all_ones_series(256)
    value, bound = eval_series(f, 0.5)
    assert value == pytest.approx(2.0, abs=1e-12)
    assert bound <= 1e-12


def test_eval_second_derivative_polynomial():
    f = PowerSeries([0.0, 1.0, 0.0, 1.0])  # z + z^3
    with pytest.warns(TruncationWarning):  # r = 1 defeats the geometric bound
        value, _ = eval_series(f, 1.0, order=2)
    assert value == pytest.approx(6.0)


def test_eval_derivative_matches_numeric():
    rng = np.random.default_rng(5)
    f = PowerSeries(rng.normal(size=64))
    z = 0.4 + 0.3j
    h = 1e-6
    v0p, _ = eval_series(f, z + h)
    v0m, _ = eval_series(f, z - h)
    v1, _ = eval_series(f, z, order=1)
    assert v1 == pytest.approx((v0p - v0m) / (2.0 * h), rel=1e-8)


def test_eval_grid_vectorized():
    f = all_ones_series(512)
    zs = 0.5 * np.exp(2j * np.pi * np.arange(8) / 8.0)
    values, bound = eval_series(f, zs)
    assert np.allclose(values, 1.0 / (1.0 - zs), atol=1e-12)


def test_derivative_series_shifts():
    f = PowerSeries([1.0, 2.0, 3.0])
    assert np.allclose(derivative_series(f).coeffs, [2.0, 6.0])
