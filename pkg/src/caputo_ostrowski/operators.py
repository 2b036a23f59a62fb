"""Riemann-Liouville integrals, the right Caputo derivative and the right
Caputo Taylor formula.

For ``m = ceil(alpha)``:

.. math::

    J_{a+}^\\alpha f(x) = \\frac{1}{\\Gamma(\\alpha)} \\int_a^x (x - t)^{\\alpha - 1} f(t) dt,
    \\qquad
    J_{b-}^\\alpha f(x) = \\frac{1}{\\Gamma(\\alpha)} \\int_x^b (t - x)^{\\alpha - 1} f(t) dt,

    D_{b-}^\\alpha f(x) = \\frac{(-1)^m}{\\Gamma(m - \\alpha)}
        \\int_x^b (t - x)^{m - \\alpha - 1} f^{(m)}(t) dt.

Each operator uses an exact closed form when the function is a sum of power
terms ``c (b - t)**beta`` and falls back to product integration otherwise.
``method="quadrature"`` forces the numerical path, which is how the closed
forms are cross-checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from caputo_ostrowski.errors import DomainError
from caputo_ostrowski.functions import FractionalSetup, Interval, ModelFunction
from caputo_ostrowski.quadrature import DEFAULT_PANELS, singular_integral_batch
from caputo_ostrowski.special import gamma

__all__ = [
    "FractionalEvaluation",
    "caputo_oracle_power",
    "caputo_right",
    "caputo_right_values",
    "rl_integral_left",
    "rl_integral_right",
    "taylor_reconstruct",
]

Array = np.ndarray
Method = Literal["auto", "quadrature", "closed_form"]


@dataclass(frozen=True)
class FractionalEvaluation:
    value: float
    err_estimate: float
    method: str

    def __post_init__(self) -> None:
        if self.method not in ("quadrature", "closed_form"):
            raise ValueError(f"unknown method tag {self.method!r}")
        if self.method == "closed_form" and self.err_estimate != 0:
            raise ValueError("closed form evaluations carry no error estimate")


def _check_method(method: str) -> None:
    if method not in ("auto", "quadrature", "closed_form"):
        raise ValueError(f"method must be auto, quadrature or closed_form, got {method!r}")


def _check_point(f: ModelFunction, x: float) -> float:
    x = float(x)
    if not f.iv.contains(x):
        raise DomainError(f"x = {x} lies outside [{f.iv.a}, {f.iv.b}]")
    return x


def _is_integer(v: float) -> bool:
    return v == math.floor(v)


# {{{ Riemann-Liouville integrals


def _rl_left_closed_form(f: ModelFunction, alpha: float, x: float) -> float | None:
    # binomial expansion of (b - t)**beta around x; integer exponents only
    if f.terms is None or not all(t.is_integer_power for t in f.terms):
        return None
    a, b = f.iv.a, f.iv.b
    ga = gamma(alpha)
    total = 0.0
    for term in f.terms:
        n = int(term.beta)
        for j in range(n + 1):
            total += (
                term.c
                * math.comb(n, j)
                * (b - x) ** (n - j)
                * (x - a) ** (alpha + j)
                / (ga * (alpha + j))
            )
    return total


def rl_integral_left(
    f: ModelFunction,
    alpha: float,
    x: float,
    n_panels: int = DEFAULT_PANELS,
    method: Method = "auto",
) -> FractionalEvaluation:
    """Left Riemann-Liouville integral ``J_{a+}^alpha f(x)``; order 0 is the identity."""
    _check_method(method)
    x = _check_point(f, x)
    if not alpha >= 0:
        raise DomainError(f"alpha must be >= 0, got {alpha}")
    if alpha == 0:
        return FractionalEvaluation(float(f(x)), 0.0, "closed_form")
    if x == f.iv.a:
        return FractionalEvaluation(0.0, 0.0, "closed_form")

    if method != "quadrature":
        value = _rl_left_closed_form(f, alpha, x)
        if value is not None:
            return FractionalEvaluation(value, 0.0, "closed_form")
        if method == "closed_form":
            raise DomainError("no closed form for this function")

    values, errs = singular_integral_batch(
        f, [x], [x - f.iv.a], alpha, n_panels, direction=-1.0
    )
    ga = gamma(alpha)
    return FractionalEvaluation(float(values[0]) / ga, float(errs[0]) / ga, "quadrature")


def rl_integral_right(
    f: ModelFunction,
    alpha: float,
    x: float,
    n_panels: int = DEFAULT_PANELS,
    method: Method = "auto",
) -> FractionalEvaluation:
    """Right Riemann-Liouville integral ``J_{b-}^alpha f(x)``; order 0 is the identity."""
    _check_method(method)
    x = _check_point(f, x)
    if not alpha >= 0:
        raise DomainError(f"alpha must be >= 0, got {alpha}")
    if alpha == 0:
        return FractionalEvaluation(float(f(x)), 0.0, "closed_form")
    b = f.iv.b
    if x == b:
        return FractionalEvaluation(0.0, 0.0, "closed_form")

    if method != "quadrature":
        if f.terms is not None:
            value = sum(
                t.c * gamma(t.beta + 1) / gamma(alpha + t.beta + 1) * (b - x) ** (alpha + t.beta)
                for t in f.terms
            )
            return FractionalEvaluation(float(value), 0.0, "closed_form")
        if method == "closed_form":
            raise DomainError("no closed form for this function")

    values, errs = singular_integral_batch(f, [x], [b - x], alpha, n_panels)
    ga = gamma(alpha)
    return FractionalEvaluation(float(values[0]) / ga, float(errs[0]) / ga, "quadrature")


# }}}

# {{{ right Caputo derivative


def caputo_oracle_power(
    c: float, beta: float, alpha: float, iv: Interval, x: float
) -> float:
    """``D_{b-}^alpha`` of ``c (b - t)**beta`` at ``x``.

    Substituting the derivative of the power into the defining integral
    leaves a Beta integral::

        int_x^b (t - x)**(m - alpha - 1) (b - t)**(beta - m) dt
            = B(m - alpha, beta - m + 1) (b - x)**(beta - alpha)

    so the result is ``c Gamma(beta + 1) / Gamma(beta - alpha + 1) (b - x)**(beta - alpha)``.
    Requires ``beta > m - 1`` so that the function lies in ``AC^m``.
    """
    if not alpha > 0:
        raise DomainError(f"alpha must be > 0, got {alpha}")
    m = math.ceil(alpha)
    if not beta > m - 1:
        raise DomainError(f"beta must exceed m - 1 = {m - 1}, got {beta}")
    if not iv.a <= x <= iv.b:
        raise DomainError(f"x = {x} lies outside [{iv.a}, {iv.b}]")
    return c * gamma(beta + 1) / gamma(beta - alpha + 1) * (iv.b - x) ** (beta - alpha)


def _caputo_closed_form(f: ModelFunction, setup: FractionalSetup, x: Array) -> Array:
    alpha, m, b = setup.alpha, setup.m, f.iv.b
    out = np.zeros_like(x)
    for term in f.terms:
        if term.is_integer_power and term.beta <= m - 1:
            # f^(m) vanishes identically
            continue
        if not term.beta > m - 1:
            raise DomainError(
                f"term (b - t)**{term.beta} is not in AC^{m}; need beta > {m - 1}"
            )
        coeff = term.c * gamma(term.beta + 1) / gamma(term.beta - alpha + 1)
        out = out + coeff * np.maximum(b - x, 0.0) ** (term.beta - alpha)
    return out


def caputo_right_values(
    f: ModelFunction,
    setup: FractionalSetup,
    x,
    n_panels: int = DEFAULT_PANELS,
    method: Method = "auto",
) -> tuple[Array, Array, str]:
    """Vectorized ``D_{b-}^alpha f`` at the points ``x`` (any shape).

    Returns ``(values, err_estimates, method)``.  Points beyond ``b`` give 0.
    """
    _check_method(method)
    x = np.asarray(x, dtype=float)
    if np.any(x < f.iv.a):
        raise DomainError(f"points left of a = {f.iv.a} are outside the domain")
    alpha, m, b = setup.alpha, setup.m, f.iv.b
    beyond = x > b

    if setup.is_integer_order:
        if f.terms is None and m > f.deriv_order_max:
            raise DomainError(f"order {m} exceeds deriv_order_max = {f.deriv_order_max}")
        values = (-1.0) ** m * f.deriv(m)(np.minimum(x, b))
        values[beyond] = 0.0
        return values, np.zeros_like(x), "closed_form"

    if method != "quadrature" and f.terms is not None:
        values = _caputo_closed_form(f, setup, x)
        values[beyond] = 0.0
        return values, np.zeros_like(x), "closed_form"
    if method == "closed_form":
        raise DomainError("no closed form for this function")

    if not f.supports_order(m):
        raise DomainError(f"f is not in AC^{m} (deriv_order_max = {f.deriv_order_max})")
    if f.terms is not None and any(not t.is_integer_power and t.beta < m for t in f.terms):
        # f^(m) blows up at b, where the product rule needs a node value
        raise DomainError(f"f^({m}) is unbounded at b; only the closed form applies")
    flat = np.minimum(x.ravel(), b)
    mu = m - alpha
    values, errs = singular_integral_batch(f.deriv(m), flat, b - flat, mu, n_panels)
    scale = (-1.0) ** m / gamma(mu)
    values = (scale * values).reshape(x.shape)
    errs = (abs(scale) * errs).reshape(x.shape)
    values[beyond] = 0.0
    errs[beyond] = 0.0
    return values, errs, "quadrature"


def caputo_right(
    f: ModelFunction,
    setup: FractionalSetup,
    x: float,
    n_panels: int = DEFAULT_PANELS,
    method: Method = "auto",
) -> FractionalEvaluation:
    """Right Caputo derivative ``D_{b-}^alpha f(x)``.

    Integer orders return ``(-1)**m f^(m)(x)`` without any quadrature;
    ``x > b`` returns 0.
    """
    if float(x) < f.iv.a:
        raise DomainError(f"x = {x} lies outside [{f.iv.a}, {f.iv.b}]")
    values, errs, tag = caputo_right_values(f, setup, np.array([x]), n_panels, method)
    return FractionalEvaluation(float(values[0]), float(errs[0]), tag)


# }}}

# {{{ Taylor formula


def taylor_reconstruct(
    f: ModelFunction,
    setup: FractionalSetup,
    x: float,
    n_panels: int = DEFAULT_PANELS,
    method: Method = "auto",
) -> FractionalEvaluation:
    """Right Caputo Taylor formula at ``x``::

        sum_{k<m} f^(k)(b) / k! (x - b)**k
            + 1 / Gamma(alpha) int_x^b (t - x)**(alpha - 1) D_{b-}^alpha f(t) dt

    The derivative values inside the remainder come from :func:`caputo_right_values`
    with the same ``method``.  The returned error estimate adds the outer
    quadrature estimate to the largest inner estimate times the kernel mass.
    """
    x = _check_point(f, x)
    alpha, m, b = setup.alpha, setup.m, f.iv.b

    series = sum(f.boundary(k) / math.factorial(k) * (x - b) ** k for k in range(m))
    if x == b:
        return FractionalEvaluation(float(series), 0.0, "closed_form")

    inner = {"err": 0.0, "tag": "closed_form"}

    def remainder_integrand(t):
        values, errs, tag = caputo_right_values(f, setup, t, n_panels, method)
        inner["err"] = max(inner["err"], float(np.max(errs, initial=0.0)))
        inner["tag"] = tag
        return values

    values, errs = singular_integral_batch(remainder_integrand, [x], [b - x], alpha, n_panels)
    ga = gamma(alpha)
    remainder = float(values[0]) / ga
    err = float(errs[0]) / ga + inner["err"] * (b - x) ** alpha / gamma(alpha + 1)
    return FractionalEvaluation(float(series) + remainder, err, "quadrature")


# }}}
