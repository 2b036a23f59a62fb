"""Quadrature for weakly singular kernels, plain integrals and Lp norms.

Singular integrals

.. math::

    \\int_x^{u} (t - x)^{\\mu - 1} \\varphi(t) \\, dt

use product integration: ``phi`` is replaced by its piecewise linear
interpolant and integrated exactly against the kernel.  Regular integrals use
composite Gauss-Legendre.  Every result carries a two-grid error estimate
``|Q(n) - Q(n / 2)|``; this is an estimate, not a bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from caputo_ostrowski.errors import DomainError, EvaluationError
from caputo_ostrowski.functions import Interval

__all__ = [
    "DEFAULT_PANELS",
    "QuadResult",
    "ProductQuadratureRule",
    "graded_nodes",
    "norm",
    "norm_samples",
    "regular_integral",
    "singular_integral",
    "singular_integral_batch",
]

Array = np.ndarray

DEFAULT_PANELS = 512
GAUSS_POINTS = 8
# series / closed form switch for the panel moments
_SERIES_CUTOFF = 0.1
_SERIES_TERMS = 24


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_estimate: float

    def __post_init__(self) -> None:
        if not (self.err_estimate >= 0 and math.isfinite(self.err_estimate)):
            raise ValueError(f"invalid error estimate {self.err_estimate}")


def kernel_grading(mu: float) -> float:
    """Mesh grading exponent toward the kernel singularity: ``min(4, max(1, 2 / mu))``."""
    return min(4.0, max(1.0, 2.0 / mu))


def graded_nodes(
    lo: float, hi: float, n: int, left: float = 1.0, right: float = 1.0
) -> Array:
    """``n + 1`` nodes on ``[lo, hi]`` graded toward both ends.

    The left half of the mesh behaves like ``(j / n)**left`` near ``lo`` and
    the right half like ``(j / n)**right`` near ``hi``; exponents of 1 give a
    uniform mesh.
    """
    if n < 1:
        raise ValueError(f"need at least one panel, got {n}")
    u = np.linspace(0.0, 1.0, n + 1)
    s = np.where(
        u <= 0.5,
        0.5 * (2.0 * u) ** left,
        1.0 - 0.5 * (2.0 * (1.0 - u)) ** right,
    )
    s[0], s[-1] = 0.0, 1.0
    return lo + (hi - lo) * s


@dataclass(frozen=True)
class ProductQuadratureRule:
    """Product integration rule on ``[x, ub]`` for the kernel ``(t - x)**(mu - 1)``."""

    lower: float
    upper: float
    mu: float
    n_panels: int = DEFAULT_PANELS

    def __post_init__(self) -> None:
        if not self.mu > 0:
            raise DomainError(f"kernel exponent mu must be > 0, got {self.mu}")
        if not self.lower < self.upper:
            raise DomainError(f"need lower < upper, got [{self.lower}, {self.upper}]")

    @property
    def nodes(self) -> Array:
        return graded_nodes(
            self.lower, self.upper, self.n_panels, kernel_grading(self.mu), 2.0
        )

    @property
    def weights(self) -> Array:
        s = self.nodes - self.lower
        s[0] = 0.0
        return _product_weights(s, self.mu)

    def apply(self, phi: Callable[[Array], Array]) -> float:
        return float(np.dot(self.weights, _evaluate(phi, self.nodes)))


@lru_cache(maxsize=64)
def _binomial_series(mu: float) -> Array:
    # coefficients of (1 + v)**(mu - 1) divided by (n + 2)
    c = np.empty(_SERIES_TERMS)
    c[0] = 1.0
    for n in range(1, _SERIES_TERMS):
        c[n] = c[n - 1] * (mu - n) / n
    return c / (np.arange(_SERIES_TERMS) + 2.0)


def _right_moment_ratio(r: Array, mu: float) -> Array:
    """``J(r) = (1 / r) int_0^r v (1 + v)**(mu - 1) dv``, stable for small ``r``."""
    out = np.empty_like(r)
    small = r < _SERIES_CUTOFF
    if np.any(small):
        rs = r[small]
        coeffs = _binomial_series(mu)
        acc = np.zeros_like(rs)
        for cn in coeffs[::-1]:
            acc = acc * rs + cn
        out[small] = acc * rs
    big = ~small
    if np.any(big):
        rb = r[big]
        lg = np.log1p(rb)
        integral = np.expm1((mu + 1) * lg) / (mu + 1) - np.expm1(mu * lg) / mu
        out[big] = integral / rb
    return out


def _product_weights(s: Array, mu: float) -> Array:
    """Weights ``w`` with ``sum(w * phi(s))`` = exact integral of the kernel
    ``s**(mu - 1)`` against the piecewise linear interpolant of ``phi``.

    ``s`` has shape ``(..., n + 1)``, starts at 0 and increases strictly.
    Panel moments are written in terms of ``r = h / s_left`` so that no
    difference of nearly equal powers is ever formed.
    """
    s = np.asarray(s, dtype=float)
    sl, sr = s[..., :-1], s[..., 1:]
    h = sr - sl

    left = np.empty_like(h)
    right = np.empty_like(h)

    first = sl == 0.0
    if np.any(first):
        hp = h[first] ** mu
        right[first] = hp / (mu + 1.0)
        left[first] = hp / (mu * (mu + 1.0))

    rest = ~first
    if np.any(rest):
        slr = sl[rest]
        r = h[rest] / slr
        scale = slr**mu
        ratio = _right_moment_ratio(r, mu)
        m0 = np.expm1(mu * np.log1p(r)) / mu
        right[rest] = scale * ratio
        left[rest] = scale * (m0 - ratio)

    w = np.zeros_like(s)
    w[..., :-1] += left
    w[..., 1:] += right
    return w


def _evaluate(phi: Callable[[Array], Array], t: Array) -> Array:
    with np.errstate(all="ignore"):
        values = np.asarray(phi(t), dtype=float)
    if values.shape != t.shape:
        values = np.broadcast_to(values, t.shape)
    if not np.all(np.isfinite(values)):
        bad = t[~np.isfinite(values)]
        raise EvaluationError(f"integrand is not finite at t = {bad.ravel()[:3]}")
    return values


def _product_rule_batch(
    phi: Callable[[Array], Array],
    anchors: Array,
    lengths: Array,
    direction: float,
    mu: float,
    n: int,
) -> Array:
    unit = graded_nodes(0.0, 1.0, n, kernel_grading(mu), 2.0)
    s = lengths[:, None] * unit[None, :]
    w = _product_weights(s, mu)
    return np.sum(w * _evaluate(phi, anchors[:, None] + direction * s), axis=-1)


def singular_integral_batch(
    phi: Callable[[Array], Array],
    anchors,
    lengths,
    mu: float,
    n_panels: int = DEFAULT_PANELS,
    direction: float = 1.0,
) -> tuple[Array, Array]:
    """Integrals ``int_0^L s**(mu - 1) phi(x + direction * s) ds`` for many ``(x, L)``.

    ``direction = 1`` integrates to the right of each anchor ``x`` and
    ``direction = -1`` to the left.  Zero lengths give zero.  ``phi`` is
    called once per grid on a 2d array.  Returns ``(values, err_estimates)``.
    """
    if not mu > 0:
        raise DomainError(f"kernel exponent mu must be > 0, got {mu}")
    anchors = np.atleast_1d(np.asarray(anchors, dtype=float))
    lengths = np.broadcast_to(np.asarray(lengths, dtype=float), anchors.shape)
    if np.any(lengths < 0):
        raise DomainError("integration lengths must be >= 0")
    values = np.zeros(anchors.shape)
    errs = np.zeros(anchors.shape)
    live = lengths > 0
    if not np.any(live):
        return values, errs

    x, lens = anchors[live], lengths[live]
    fine = _product_rule_batch(phi, x, lens, direction, mu, n_panels)
    values[live] = fine
    if n_panels >= 2:
        coarse = _product_rule_batch(phi, x, lens, direction, mu, n_panels // 2)
        errs[live] = np.abs(fine - coarse)
    return values, errs


def singular_integral(
    phi: Callable[[Array], Array],
    x: float,
    ub: float,
    mu: float,
    n_panels: int = DEFAULT_PANELS,
) -> QuadResult:
    """Product-integration value of ``int_x^ub (t - x)**(mu - 1) phi(t) dt``."""
    if not mu > 0:
        raise DomainError(f"kernel exponent mu must be > 0, got {mu}")
    if not x < ub:
        raise DomainError(f"need x < ub, got x={x}, ub={ub}")
    values, errs = singular_integral_batch(phi, [x], [ub - x], mu, n_panels)
    return QuadResult(float(values[0]), float(errs[0]))


# {{{ regular integrals


@lru_cache(maxsize=8)
def _gauss_legendre(npts: int) -> tuple[Array, Array]:
    return np.polynomial.legendre.leggauss(npts)


def _composite_gauss(phi, nodes: Array) -> tuple[float, float]:
    """Return the composite rule value and ``int |phi|`` on the same nodes."""
    x, w = _gauss_legendre(GAUSS_POINTS)
    mid = 0.5 * (nodes[1:] + nodes[:-1])
    half = 0.5 * (nodes[1:] - nodes[:-1])
    t = mid[:, None] + half[:, None] * x[None, :]
    terms = half[:, None] * w[None, :] * _evaluate(phi, t)
    return float(np.sum(terms)), float(np.sum(np.abs(terms)))


# relative size of the summation rounding floor added to every estimate
_ROUNDING = 64 * np.finfo(float).eps


def regular_integral(
    phi: Callable[[Array], Array],
    lb: float,
    ub: float,
    n_panels: int = DEFAULT_PANELS,
    grading: float = 1.0,
) -> QuadResult:
    """Composite 8-point Gauss-Legendre value of ``int_lb^ub phi``.

    With ``grading > 1`` the panels cluster toward both endpoints.  The error
    estimate compares against half as many panels and never drops below the
    rounding level of the sum, so exact integrals of cancelling integrands
    still carry a meaningful tolerance.
    """
    if not lb < ub:
        raise DomainError(f"need lb < ub, got lb={lb}, ub={ub}")
    fine, mass = _composite_gauss(phi, graded_nodes(lb, ub, n_panels, grading, grading))
    err = 0.0
    if n_panels >= 2:
        coarse, _ = _composite_gauss(phi, graded_nodes(lb, ub, n_panels // 2, grading, grading))
        err = abs(fine - coarse)
    return QuadResult(fine, max(err, _ROUNDING * mass))


# }}}

# {{{ norms

LINF_UNIFORM = 4096
LINF_ENDPOINT = 64


def norm_samples(iv: Interval) -> Array:
    """Sample points for sup norms: a uniform grid plus points clustered
    geometrically within ``1e-3 (b - a)`` of each endpoint."""
    uniform = np.linspace(iv.a, iv.b, LINF_UNIFORM)
    dist = iv.length * np.geomspace(1e-12, 1e-3, LINF_ENDPOINT)
    return np.unique(np.concatenate([uniform, iv.a + dist, iv.b - dist]))


def norm(
    phi: Callable[[Array], Array],
    iv: Interval,
    ord: float = np.inf,
    n_panels: int = DEFAULT_PANELS,
) -> QuadResult:
    """``Lp`` norm of ``phi`` on ``iv`` for ``ord`` in ``{inf, 1}`` or ``ord > 1``.

    The sup norm is a maximum over :func:`norm_samples`; a non-finite value is
    tolerated only at ``t = b``.  Integral norms use Gauss-Legendre on a mesh
    graded quadratically toward both endpoints.
    """
    if ord == np.inf:
        t = norm_samples(iv)
        with np.errstate(all="ignore"):
            values = np.abs(np.asarray(phi(t), dtype=float))
        bad = ~np.isfinite(values)
        if np.any(bad[:-1]):
            raise EvaluationError(f"function is not finite at t = {t[:-1][bad[:-1]][:3]}")
        return QuadResult(float(np.max(values[~bad])), 0.0)

    if ord == 1:
        return regular_integral(lambda t: np.abs(phi(t)), iv.a, iv.b, n_panels, 2.0)

    q = float(ord)
    if not q > 1 or not math.isfinite(q):
        raise DomainError(f"norm order must be inf, 1 or > 1, got {ord}")
    res = regular_integral(lambda t: np.abs(phi(t)) ** q, iv.a, iv.b, n_panels, 2.0)
    value = res.value ** (1.0 / q)
    # first-order propagation through the q-th root
    if res.value > 0:
        err = value * res.err_estimate / (q * res.value)
    else:
        err = res.err_estimate ** (1.0 / q)
    return QuadResult(value, err)


# }}}
