from __future__ import annotations

import math

import numpy as np
import pytest

from convexorder.errors import CrossCheckFailure, RegimeError, TruncationWarning
from convexorder.kernels import Bernardi, CustomKernel, Komatu, TwoParam
from convexorder.params import MuNu
from convexorder.qfunc import (
    QSpec,
    lambda_q_integral,
    q_alpha_integral,
    q_integral,
    q_series,
)

SPEC_11 = QSpec(MuNu(1.0, 1.0), 0.0)


def test_q_integral_at_zero_is_one():
    for mn in (MuNu(1.0, 1.0), MuNu(1.0, 2.0), MuNu(1.5, 3.0)):
        for delta in (0.0, 0.25, 0.5):
            assert q_integral(QSpec(mn, delta), 0.0) == pytest.approx(1.0, abs=1e-10)


def test_q_integral_closed_form():
    # mu = nu = 1, delta = 0: q(t) = 1/(1+t)
    for t in np.arange(0.0, 1.0, 0.05):
        assert q_integral(SPEC_11, float(t)) == pytest.approx(1.0 / (1.0 + t), abs=1e-10)


def test_q_integral_at_one():
    assert q_integral(SPEC_11, 1.0) == pytest.approx(0.5, abs=1e-10)


def test_q_integral_rejects_gamma_zero():
    with pytest.raises(RegimeError):
        q_integral(QSpec(MuNu(0.0, 2.0), 0.0), 0.5)


def test_q_alpha_at_zero_is_one():
    for alpha in (0.5, 1.0, 2.0):
        for delta in (0.0, 0.25, 0.5):
            assert q_alpha_integral(alpha, delta, 0.0) == pytest.approx(1.0, abs=1e-11)


def test_q_alpha_matches_mu_zero_series():
    for alpha in (1.0, 2.0):
        for delta in (0.0, 0.25, 0.5):
            spec = QSpec(MuNu(0.0, alpha), delta)
            for t in (0.1, 0.5, 0.9):
                val = q_series(spec, t, n_terms=2048).value
                assert q_alpha_integral(alpha, delta, t) == pytest.approx(val, abs=1e-8)


def test_q_series_trivial():
    assert q_series(SPEC_11, 0.0) == (1.0, 0.0)


def test_q_series_closed_form():
    # coefficients collapse to (-1)^n for mu = nu = 1, delta = 0
    for t in (0.1, 0.5, 0.9, 0.99, 1.0):
        val = q_series(SPEC_11, t, n_terms=1024).value
        assert val == pytest.approx(1.0 / (1.0 + t), abs=1e-10)


def test_q_series_matches_integral():
    spec = QSpec(MuNu(1.0, 2.0), 0.25)
    assert q_series(spec, 0.5).value == pytest.approx(q_integral(spec, 0.5), abs=1e-9)


@pytest.mark.parametrize("mn", [MuNu(1.0, 1.0), MuNu(1.0, 2.0), MuNu(1.5, 3.0)])
@pytest.mark.parametrize("delta", [0.0, 0.25, 0.5])
def test_representation_agreement(mn, delta):
    spec = QSpec(mn, delta)
    for t in np.arange(0.0, 1.0, 0.1):
        a = q_integral(spec, float(t))
        b = q_series(spec, float(t)).value
        assert a == pytest.approx(b, abs=1e-8)


def test_q_strictly_decreasing():
    for mn in (MuNu(1.0, 1.0), MuNu(1.5, 3.0)):
        for delta in (0.0, 0.5):
            spec = QSpec(mn, delta)
            vals = [q_integral(spec, t) for t in np.linspace(0.0, 1.0, 21)]
            assert np.all(np.diff(vals) < 0.0)


def test_q_series_warns_on_poor_truncation():
    with pytest.warns(TruncationWarning):
        q_series(QSpec(MuNu(1.0, 1.0), 0.0), 0.89, n_terms=16)


# -------------------------------------------------------- weighted integral

def test_lambda_q_alexander():
    res = lambda_q_integral(Bernardi(0.0), SPEC_11)
    assert res.value == pytest.approx(math.log(2.0), abs=1e-9)
    assert res.crosscheck_residual <= 1e-8


@pytest.mark.parametrize("delta", [0.0, 0.25, 0.5])
def test_lambda_q_alexander_delta(delta):
    # I = (log 2 - delta pi^2/12)/(1 - delta)
    expected = (math.log(2.0) - delta * math.pi**2 / 12.0) / (1.0 - delta)
    res = lambda_q_integral(Bernardi(0.0), QSpec(MuNu(1.0, 1.0), delta))
    assert res.value == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize(
    "kernel", [Bernardi(1.0), TwoParam(0.0, 1.0), Komatu(1.0, 2.0)], ids=str
)
@pytest.mark.parametrize("mn", [MuNu(1.0, 1.0), MuNu(1.0, 2.0), MuNu(0.0, 2.0)])
def test_lambda_q_routes_agree(kernel, mn):
    res = lambda_q_integral(kernel, QSpec(mn, 0.25))
    assert res.crosscheck_residual <= 1e-8
    assert 0.0 < res.value < 1.0


def test_lambda_q_crosscheck_failure_on_inconsistent_hint():
    # moment hint deliberately inconsistent with the sampled density
    bad = CustomKernel(
        sampler=lambda t: np.ones_like(t),
        moment_hint=lambda n: 1.0 / (n + 1.5),
        name="inconsistent",
    )
    with pytest.raises(CrossCheckFailure):
        lambda_q_integral(bad, SPEC_11)
