import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from caputo_ostrowski.errors import DomainError, EvaluationError
from caputo_ostrowski.functions import FractionalSetup, Interval, sample_corpus
from caputo_ostrowski.quadrature import (
    ProductQuadratureRule,
    graded_nodes,
    norm,
    regular_integral,
    singular_integral,
    singular_integral_batch,
)


def qaws(phi, x, ub, mu):
    """Reference value from QUADPACK's algebraic-weight rule."""
    val, _ = integrate.quad(phi, x, ub, weight="alg", wvar=(mu - 1.0, 0.0), epsabs=1e-14, epsrel=1e-13, limit=200)
    return val


class TestSingularIntegral:
    @pytest.mark.parametrize("n", [1, 2, 7, 64])
    def test_constant_half_power(self, n):
        r = singular_integral(lambda t: np.ones_like(t), 0.0, 1.0, 0.5, n)
        assert r.value == pytest.approx(2.0, rel=1e-14)

    @pytest.mark.parametrize("n", [1, 3, 16])
    def test_linear_unit_kernel(self, n):
        assert singular_integral(lambda t: t, 0.0, 1.0, 1.0, n).value == pytest.approx(0.5, rel=1e-14)

    def test_beta_integral(self):
        r = singular_integral(lambda t: 1 - t, 0.0, 1.0, 0.5, 1024)
        # B(1/2, 2) = 4/3
        assert abs(r.value - 4 / 3) <= max(r.err_estimate, 1e-15)

    @given(
        mu=st.floats(min_value=0.05, max_value=6.0),
        c0=st.floats(min_value=-5, max_value=5),
        c1=st.floats(min_value=-5, max_value=5),
        x=st.floats(min_value=-2.0, max_value=1.0),
        length=st.floats(min_value=1e-3, max_value=5.0),
        n=st.integers(min_value=1, max_value=600),
    )
    @settings(max_examples=200, deadline=None)
    def test_linear_exactness(self, mu, c0, c1, x, length, n):
        ub = x + length
        r = singular_integral(lambda t: c0 + c1 * t, x, ub, mu, n)
        # int_0^L s^(mu-1) (c0 + c1 x + c1 s) ds
        exact = (c0 + c1 * x) * length**mu / mu + c1 * length ** (mu + 1) / (mu + 1)
        scale = abs(c0 + c1 * x) * length**mu / mu + abs(c1) * length ** (mu + 1) / (mu + 1)
        assert abs(r.value - exact) <= 1e-12 * max(scale, 1e-300)

    def test_convergence_order(self):
        exact = math.gamma(0.5) * math.gamma(3.5) / math.gamma(4.0)  # B(1/2, 7/2)
        errs = [
            abs(singular_integral(lambda t: (1 - t) ** 2.5, 0.0, 1.0, 0.5, n).value - exact)
            for n in (64, 128, 256, 512)
        ]
        orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
        assert np.all(orders >= 1.8), orders

    @pytest.mark.parametrize(
        "phi, x, ub, mu",
        [
            (np.cos, 0.2, 1.7, 0.3),
            (lambda t: np.exp(-t) * (2.0 - t) ** 1.3, -1.0, 2.0, 0.5),
            (lambda t: 1.0 / (1.0 + t**2), 0.0, 3.0, 1.7),
            (lambda t: (1 - t) ** 0.25, 0.0, 1.0, 0.8),
        ],
    )
    def test_against_qaws(self, phi, x, ub, mu):
        r = singular_integral(phi, x, ub, mu, 512)
        ref = qaws(phi, x, ub, mu)
        assert abs(r.value - ref) <= max(3 * r.err_estimate, 1e-10)
        assert abs(r.value - ref) <= 1e-4 * abs(ref)

    def test_err_estimate_tracks_error(self):
        ref = qaws(np.cos, 0.0, 2.0, 0.4)
        r = singular_integral(np.cos, 0.0, 2.0, 0.4, 128)
        assert abs(r.value - ref) <= 3 * r.err_estimate

    @pytest.mark.parametrize("x, ub, mu", [(0, 1, 0.0), (0, 1, -1.0), (1, 1, 0.5), (1, 0, 0.5)])
    def test_domain(self, x, ub, mu):
        with pytest.raises(DomainError):
            singular_integral(np.cos, x, ub, mu)

    def test_nonfinite_integrand(self):
        with pytest.raises(EvaluationError):
            singular_integral(lambda t: np.where(t > 0.7, np.nan, 1.0), 0, 1, 0.5)

    def test_batch_matches_scalar(self):
        xs = np.array([0.0, 0.3, 0.9, 1.0])
        vals, errs = singular_integral_batch(np.exp, xs, 1.0 - xs, 0.6, 256)
        for x, v, e in zip(xs, vals, errs):
            if x == 1.0:
                assert v == 0.0 and e == 0.0
                continue
            r = singular_integral(np.exp, x, 1.0, 0.6, 256)
            assert v == pytest.approx(r.value, rel=1e-15)
            assert e == pytest.approx(r.err_estimate, rel=1e-9, abs=1e-18)

    def test_left_direction(self):
        # int_0^1 (1 - t)^(-1/2) t dt = B(2, 1/2) = 4/3
        vals, _ = singular_integral_batch(lambda t: t, [1.0], [1.0], 0.5, 64, direction=-1.0)
        assert vals[0] == pytest.approx(4 / 3, rel=1e-13)


class TestRule:
    def test_nodes(self):
        rule = ProductQuadratureRule(0.25, 1.0, 0.5, 64)
        nodes = rule.nodes
        assert nodes[0] == 0.25 and nodes[-1] == 1.0
        assert np.all(np.diff(nodes) > 0)
        assert rule.apply(lambda t: np.ones_like(t)) == pytest.approx(2 * 0.75**0.5, rel=1e-14)

    def test_invalid(self):
        with pytest.raises(DomainError):
            ProductQuadratureRule(0, 1, 0.0)
        with pytest.raises(DomainError):
            ProductQuadratureRule(1, 0, 0.5)

    @pytest.mark.parametrize("left, right", [(1, 1), (4, 2), (2, 2), (1.3, 3)])
    @pytest.mark.parametrize("n", [1, 2, 5, 512])
    def test_graded_nodes_monotone(self, left, right, n):
        t = graded_nodes(-1.0, 2.0, n, left, right)
        assert t[0] == -1.0 and t[-1] == 2.0 and len(t) == n + 1
        assert np.all(np.diff(t) > 0)


class TestRegularIntegral:
    def test_constant(self):
        assert regular_integral(lambda t: 3.5 + 0 * t, 0, 1, 3).value == pytest.approx(3.5, rel=1e-15)

    def test_polynomial_exactness(self):
        assert abs(regular_integral(lambda t: t**2, 0, 1, 4).value - 1 / 3) <= 1e-12

    def test_power(self):
        r = regular_integral(lambda t: (1 - t) ** 1.5, 0, 1, 256)
        assert abs(r.value - 0.4) <= max(r.err_estimate, 1e-15)

    def test_graded(self):
        r = regular_integral(lambda t: (1 - t) ** 0.1, 0, 1, 512, grading=2.0)
        assert abs(r.value - 1 / 1.1) <= r.err_estimate
        assert r.value == pytest.approx(1 / 1.1, rel=1e-8)

    def test_domain(self):
        with pytest.raises(DomainError):
            regular_integral(np.cos, 1, 1)


class TestNorm:
    def test_sup_constant(self, unit):
        assert norm(lambda t: 3 + 0 * t, unit, np.inf).value == 3.0

    def test_l1_triangle(self, unit):
        assert norm(lambda t: 1 - t, unit, 1).value == pytest.approx(0.5, rel=1e-14)

    def test_l2(self, unit):
        r = norm(lambda t: 2 / math.sqrt(math.pi) * (1 - t) ** 0.5, unit, 2)
        assert r.value == pytest.approx(math.sqrt(2 / math.pi), rel=1e-12)

    def test_sup_at_endpoint_profile(self, unit):
        # (1 - t)^(-0.3) is unbounded only at b; the sample max sits next to it
        r = norm(lambda t: (1 - t) ** -0.3, unit, np.inf)
        assert r.value > 1e3

    def test_interior_nonfinite(self, unit):
        with pytest.raises(EvaluationError):
            norm(lambda t: np.where(np.abs(t - 0.5) < 1e-2, np.inf, 1.0), unit, np.inf)

    @pytest.mark.parametrize("ord", [0.5, 0, -1])
    def test_bad_order(self, unit, ord):
        with pytest.raises(DomainError):
            norm(np.cos, unit, ord)

    @pytest.mark.parametrize("alpha", [0.5, 1.5, 2.5])
    def test_holder_and_monotonicity(self, alpha):
        iv = Interval(0.0, 2.0)
        for f in sample_corpus(FractionalSetup(alpha), iv, 100, seed=21):
            l1 = norm(f, iv, 1).value
            l2 = norm(f, iv, 2).value
            linf = norm(f, iv, np.inf).value
            assert l1 <= l2 * iv.length**0.5 * (1 + 1e-6)
            assert linf >= l1 / iv.length - 1e-9
