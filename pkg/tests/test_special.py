import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from caputo_ostrowski.errors import DomainError
from caputo_ostrowski.special import beta, gamma, lgamma

mpmath.mp.dps = 40


def test_gamma_examples():
    assert gamma(1) == 1.0
    assert gamma(5) == 24.0
    assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5, float("nan"), float("inf")])
def test_gamma_domain(x):
    with pytest.raises(DomainError):
        gamma(x)


def test_gamma_overflow():
    with pytest.raises(OverflowError):
        gamma(200.0)
    assert math.isfinite(gamma(171.5))


def test_gamma_accuracy_against_mpmath():
    rng = np.random.default_rng(0)
    xs = np.concatenate([rng.uniform(1e-8, 1.0, 500), rng.uniform(1.0, 50.0, 2000), [50.0]])
    worst = max(abs(gamma(x) / float(mpmath.gamma(mpmath.mpf(x))) - 1) for x in xs)
    assert worst <= 1e-13


def test_lgamma_against_mpmath():
    rng = np.random.default_rng(1)
    for x in rng.uniform(0.01, 150.0, 300):
        assert lgamma(x) == pytest.approx(float(mpmath.loggamma(mpmath.mpf(x))), abs=1e-13, rel=1e-14)


def test_gamma_recurrence():
    rng = np.random.default_rng(2)
    for x in rng.uniform(0.1, 30.0, 1000):
        assert abs(gamma(x + 1) - x * gamma(x)) / gamma(x + 1) <= 1e-12


@pytest.mark.parametrize("n", range(1, 16))
def test_gamma_factorial(n):
    assert gamma(n + 1) == pytest.approx(math.factorial(n), rel=1e-13)


def test_beta_examples():
    assert beta(1, 1) == pytest.approx(1.0, rel=1e-15)
    assert beta(2, 3) == pytest.approx(1 / 12, rel=1e-14)
    assert beta(0.5, 0.5) == pytest.approx(math.pi, rel=1e-14)


def test_beta_against_mpmath():
    rng = np.random.default_rng(3)
    for x, y in rng.uniform(0.05, 40.0, (300, 2)):
        assert beta(x, y) == pytest.approx(float(mpmath.beta(mpmath.mpf(x), mpmath.mpf(y))), rel=1e-12)


def test_beta_large_arguments_do_not_overflow():
    assert beta(300.0, 400.0) > 0


@pytest.mark.parametrize("args", [(0, 1), (1, -2), (-1, -1)])
def test_beta_domain(args):
    with pytest.raises(DomainError):
        beta(*args)


@given(
    st.floats(min_value=1e-3, max_value=100.0),
    st.floats(min_value=1e-3, max_value=100.0),
)
def test_beta_symmetry(x, y):
    assert beta(x, y) == pytest.approx(beta(y, x), rel=1e-14)
