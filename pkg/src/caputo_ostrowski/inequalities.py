"""Left and right hand sides of Ostrowski-type inequalities, with verdicts.

Every evaluation returns an :class:`InequalityReport`.  Quadrature error
estimates of all constituent integrals and norms are propagated to first
order and inflated into the verdict tolerance::

    tol = 3 * (propagated error) + 1e-12 * max(|lhs|, |rhs|) + extra_tol

The notation ``J_{a+}^s |g(b)|`` in the product bounds is read as the left
Riemann-Liouville integral of ``|g|`` evaluated at ``b``, i.e.
``1 / Gamma(s) * int_a^b (b - x)**(s - 1) |g(x)| dx``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from caputo_ostrowski.errors import DomainError, HypothesisError
from caputo_ostrowski.functions import (
    FractionalSetup,
    Interval,
    ModelFunction,
    format_function_spec,
    from_callables,
    sample_corpus,
)
from caputo_ostrowski.operators import caputo_right_values, rl_integral_left
from caputo_ostrowski.quadrature import (
    DEFAULT_PANELS,
    QuadResult,
    norm,
    norm_samples,
    regular_integral,
)
from caputo_ostrowski.special import gamma

__all__ = [
    "Campaign",
    "InequalityReport",
    "SOUND_THEOREMS",
    "TheoremId",
    "Verdict",
    "a2_correction_factor",
    "eval_classical_ostrowski",
    "eval_product_theorem",
    "eval_z_bound",
    "run_campaign",
]

Array = np.ndarray


class TheoremId(str, enum.Enum):
    CLASSICAL = "CLASSICAL"
    Z1 = "Z1"
    Z2 = "Z2"
    Z3 = "Z3"
    A = "A"
    A1 = "A1"
    A2_STATED = "A2_STATED"
    A2_CORRECTED = "A2_CORRECTED"

    @property
    def needs_holder(self) -> bool:
        return self in (TheoremId.Z3, TheoremId.A2_STATED, TheoremId.A2_CORRECTED)

    @property
    def needs_order_one(self) -> bool:
        return self in (TheoremId.Z2, TheoremId.A1)

    @property
    def is_product(self) -> bool:
        return self in _PRODUCT

    @property
    def is_z(self) -> bool:
        return self in (TheoremId.Z1, TheoremId.Z2, TheoremId.Z3)


_PRODUCT = (TheoremId.A, TheoremId.A1, TheoremId.A2_STATED, TheoremId.A2_CORRECTED)

#: Theorems whose violation is a genuine failure; A2_STATED is only reported.
SOUND_THEOREMS = frozenset(TheoremId) - {TheoremId.A2_STATED}


class Verdict(str, enum.Enum):
    HOLDS = "HOLDS"
    VIOLATED = "VIOLATED"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class InequalityReport:
    theorem: TheoremId
    setup: FractionalSetup | None
    iv: Interval
    function_ids: tuple[str, ...]
    lhs: float | None
    rhs: float | None
    ratio: float | None
    tol: float | None
    verdict: Verdict
    x: float | None = None
    error: str | None = None

    def to_dict(self) -> dict[str, Any]:
        setup = None
        if self.setup is not None:
            setup = {
                "alpha": self.setup.alpha,
                "m": self.setup.m,
                "p": self.setup.p,
                "q": self.setup.q,
            }
        return {
            "theorem": self.theorem.value,
            "setup": setup,
            "iv": {"a": self.iv.a, "b": self.iv.b},
            "function_ids": list(self.function_ids),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "tol": self.tol,
            "verdict": self.verdict.value,
            "x": self.x,
            "error": self.error,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> InequalityReport:
        s = d["setup"]
        setup = None if s is None else FractionalSetup(s["alpha"], s["p"], s["q"])
        return cls(
            theorem=TheoremId(d["theorem"]),
            setup=setup,
            iv=Interval(d["iv"]["a"], d["iv"]["b"]),
            function_ids=tuple(d["function_ids"]),
            lhs=d["lhs"],
            rhs=d["rhs"],
            ratio=d["ratio"],
            tol=d["tol"],
            verdict=Verdict(d["verdict"]),
            x=d.get("x"),
            error=d.get("error"),
        )


def function_id(f: ModelFunction) -> str:
    return format_function_spec(f)


def _verdict(lhs: float, rhs: float, err: float, extra_tol: float) -> tuple[float, Verdict, float | None]:
    tol = 3.0 * err + 1e-12 * max(abs(lhs), abs(rhs)) + extra_tol
    ratio = lhs / rhs if rhs > 0 else None
    if lhs > rhs + tol:
        verdict = Verdict.VIOLATED
    elif rhs <= tol:
        verdict = Verdict.INCONCLUSIVE
    else:
        verdict = Verdict.HOLDS
    return tol, verdict, ratio


def _report(theorem, setup, iv, ids, lhs, rhs, err, extra_tol, x=None) -> InequalityReport:
    tol, verdict, ratio = _verdict(lhs, rhs, err, extra_tol)
    return InequalityReport(
        theorem=theorem,
        setup=setup,
        iv=iv,
        function_ids=tuple(ids),
        lhs=float(lhs),
        rhs=float(rhs),
        ratio=None if ratio is None else float(ratio),
        tol=float(tol),
        verdict=verdict,
        x=x,
    )


# {{{ building blocks


def _integral(phi, iv: Interval, n_panels: int) -> QuadResult:
    return regular_integral(phi, iv.a, iv.b, n_panels, grading=2.0)


def _check_vanishing(f: ModelFunction, m: int, label: str = "f") -> None:
    for k in range(1, m):
        val = f.boundary(k)
        scale = max(1.0, abs(f.boundary(0)))
        if not abs(val) <= 1e-12 * scale:
            raise HypothesisError(f"{label}^({k})(b) = {val} but must vanish for k = 1..{m - 1}")


def _check_setup(theorem: TheoremId, setup: FractionalSetup) -> None:
    if theorem.needs_order_one and setup.alpha < 1:
        raise HypothesisError(f"{theorem.value} requires alpha >= 1, got {setup.alpha}")
    if theorem.needs_holder and setup.p is None:
        raise HypothesisError(f"{theorem.value} requires Hoelder exponents p, q")


def _caputo_norm(
    f: ModelFunction, setup: FractionalSetup, ord: float, n_panels: int
) -> QuadResult:
    """Norm of ``D_{b-}^alpha f`` with its pointwise evaluation error folded in."""
    iv = f.iv

    def phi(t):
        return caputo_right_values(f, setup, t, n_panels)[0]

    res = norm(phi, iv, ord, n_panels)
    _, errs, tag = caputo_right_values(f, setup, norm_samples(iv), n_panels)
    pointwise = float(np.max(errs)) if tag == "quadrature" else 0.0
    # ||phi + e||_r differs from ||phi||_r by at most ||e||_r <= |iv|^(1/r) max|e|
    weight = 1.0 if ord == np.inf else iv.length ** (1.0 / ord)
    return QuadResult(res.value, res.err_estimate + weight * pointwise)


def _rl_left_abs_at_b(g: ModelFunction, s: float, n_panels: int) -> QuadResult:
    """``(J_{a+}^s |g|)(b)``."""
    iv = g.iv
    if g.terms is not None and len(g.terms) == 1:
        # |c (b - x)**beta| keeps the power form
        term = g.terms[0]
        value = abs(term.c) * iv.length ** (s + term.beta) / (gamma(s) * (s + term.beta))
        return QuadResult(value, 0.0)
    abs_g = from_callables(iv, [lambda t: np.abs(g(t))])
    ev = rl_integral_left(abs_g, s, iv.b, n_panels)
    return QuadResult(ev.value, ev.err_estimate)


def a2_correction_factor(setup: FractionalSetup) -> float:
    """``Gamma(alpha) (p (alpha - 1) + 1)**(1/p)``, the stated-over-corrected ratio
    of the Lq product bound."""
    if setup.p is None:
        raise HypothesisError("the Lq bounds require Hoelder exponents p, q")
    a, p = setup.alpha, setup.p
    return gamma(a) * (p * (a - 1.0) + 1.0) ** (1.0 / p)


def _norm_order(theorem: TheoremId, setup: FractionalSetup) -> float:
    if theorem in (TheoremId.A, TheoremId.Z1):
        return np.inf
    if theorem in (TheoremId.A1, TheoremId.Z2):
        return 1.0
    return setup.q


# }}}

# {{{ classical Ostrowski


def eval_classical_ostrowski(
    f: ModelFunction,
    x: float,
    iv: Interval | None = None,
    n_panels: int = DEFAULT_PANELS,
    extra_tol: float = 0.0,
) -> InequalityReport:
    """``|f(x) - mean f| <= (b - a) [1/4 + (x - (a+b)/2)**2 / (b - a)**2] ||f'||_inf``."""
    iv = f.iv if iv is None else iv
    if iv != f.iv:
        raise DomainError("interval does not match the function's interval")
    if not iv.contains(x):
        raise DomainError(f"x = {x} lies outside [{iv.a}, {iv.b}]")
    if f.terms is None and f.deriv_order_max < 1:
        raise HypothesisError("the classical bound needs f'")
    L = iv.length
    mean = _integral(f, iv, n_panels)
    lhs = abs(float(f(x)) - mean.value / L)
    dnorm = norm(f.deriv(1), iv, np.inf, n_panels)
    factor = L * (0.25 + (x - 0.5 * (iv.a + iv.b)) ** 2 / L**2)
    rhs = factor * dnorm.value
    err = mean.err_estimate / L + factor * dnorm.err_estimate
    return _report(TheoremId.CLASSICAL, None, iv, [function_id(f)], lhs, rhs, err, extra_tol, x=float(x))


# }}}

# {{{ three-case bound at the right endpoint


def eval_z_bound(
    f: ModelFunction,
    setup: FractionalSetup,
    which: TheoremId | str,
    n_panels: int = DEFAULT_PANELS,
    extra_tol: float = 0.0,
) -> InequalityReport:
    """``|f(b) - mean f|`` against the ``L_inf`` (Z1), ``L_1`` (Z2) or ``L_q`` (Z3)
    bound in terms of ``D_{b-}^alpha f``."""
    which = TheoremId(which)
    if not which.is_z:
        raise ValueError(f"{which.value} is not one of Z1, Z2, Z3")
    _check_setup(which, setup)
    _check_vanishing(f, setup.m)
    iv, alpha = f.iv, setup.alpha
    L = iv.length

    mean = _integral(f, iv, n_panels)
    lhs = abs(f.boundary(0) - mean.value / L)
    lhs_err = mean.err_estimate / L

    dnorm = _caputo_norm(f, setup, _norm_order(which, setup), n_panels)
    if which is TheoremId.Z1:
        const = L**alpha / gamma(alpha + 2)
    elif which is TheoremId.Z2:
        const = L ** (alpha - 1) / gamma(alpha + 1)
    else:
        p = setup.p
        const = L ** (alpha - 1 + 1 / p) / (
            gamma(alpha) * (p * (alpha - 1) + 1) ** (1 / p) * (alpha + 1 / p)
        )
    rhs = dnorm.value * const
    err = lhs_err + dnorm.err_estimate * const
    return _report(which, setup, iv, [function_id(f)], lhs, rhs, err, extra_tol)


# }}}

# {{{ product bounds


@dataclass
class _ProductParts:
    lhs: float
    lhs_err: float
    norm_f: QuadResult
    norm_g: QuadResult
    j_f: QuadResult
    j_g: QuadResult


def _product_parts(
    f: ModelFunction, g: ModelFunction, setup: FractionalSetup, ord: float, order: float, n_panels: int
) -> _ProductParts:
    iv = f.iv
    fb, gb = f.boundary(0), g.boundary(0)
    fg = _integral(lambda t: f(t) * g(t), iv, n_panels)
    i_f = _integral(f, iv, n_panels)
    i_g = _integral(g, iv, n_panels)
    lhs = abs(2.0 * fg.value - (gb * i_f.value + fb * i_g.value))
    lhs_err = 2.0 * fg.err_estimate + abs(gb) * i_f.err_estimate + abs(fb) * i_g.err_estimate
    return _ProductParts(
        lhs=lhs,
        lhs_err=lhs_err,
        norm_f=_caputo_norm(f, setup, ord, n_panels),
        norm_g=_caputo_norm(g, setup, ord, n_panels),
        j_f=_rl_left_abs_at_b(f, order, n_panels),
        j_g=_rl_left_abs_at_b(g, order, n_panels),
    )


def _combine(parts: _ProductParts) -> tuple[float, float]:
    nf, ng, jf, jg = parts.norm_f, parts.norm_g, parts.j_f, parts.j_g
    rhs = nf.value * jg.value + ng.value * jf.value
    err = (
        nf.err_estimate * jg.value
        + nf.value * jg.err_estimate
        + ng.err_estimate * jf.value
        + ng.value * jf.err_estimate
    )
    return rhs, err


def _product_reports(
    f: ModelFunction,
    g: ModelFunction,
    setup: FractionalSetup,
    whiches: Sequence[TheoremId],
    n_panels: int,
    extra_tol: float,
) -> list[InequalityReport]:
    if f.iv != g.iv:
        raise DomainError("f and g live on different intervals")
    for which in whiches:
        _check_setup(which, setup)
    _check_vanishing(f, setup.m, "f")
    _check_vanishing(g, setup.m, "g")
    alpha, iv = setup.alpha, f.iv
    ids = [function_id(f), function_id(g)]

    # theorems sharing a norm order also share every ingredient
    reports: dict[TheoremId, InequalityReport] = {}
    groups: dict[float, list[TheoremId]] = {}
    for which in whiches:
        groups.setdefault(_norm_order(which, setup), []).append(which)
    for ord, members in groups.items():
        if ord == np.inf:
            order = alpha + 1
        elif ord == 1:
            order = alpha
        else:
            order = alpha + 1 / setup.p
        parts = _product_parts(f, g, setup, ord, order, n_panels)
        rhs, rhs_err = _combine(parts)
        for which in members:
            if which in (TheoremId.A2_STATED, TheoremId.A2_CORRECTED):
                scale = gamma(order)
                if which is TheoremId.A2_CORRECTED:
                    scale /= a2_correction_factor(setup)
            else:
                scale = 1.0
            reports[which] = _report(
                which, setup, iv, ids, parts.lhs, scale * rhs,
                parts.lhs_err + scale * rhs_err, extra_tol,
            )
    return [reports[w] for w in whiches]


def eval_product_theorem(
    f: ModelFunction,
    g: ModelFunction,
    setup: FractionalSetup,
    which: TheoremId | str,
    n_panels: int = DEFAULT_PANELS,
    extra_tol: float = 0.0,
) -> InequalityReport:
    """``|2 int f g - int (f g(b) + g f(b))|`` against the bound ``which``.

    ``A2_STATED`` carries the factor ``Gamma(alpha + 1/p)`` exactly as the
    bound is usually printed; ``A2_CORRECTED`` additionally divides by
    :func:`a2_correction_factor`, which is what Hoelder's inequality yields.
    """
    which = TheoremId(which)
    if not which.is_product:
        raise ValueError(f"{which.value} is not a product bound")
    return _product_reports(f, g, setup, [which], n_panels, extra_tol)[0]


# }}}

# {{{ campaigns


@dataclass
class Campaign:
    reports: list[InequalityReport]
    summary: dict[str, Any] = field(default_factory=dict)

    @property
    def sound_violations(self) -> int:
        return sum(
            r.verdict is Verdict.VIOLATED and r.theorem in SOUND_THEOREMS
            for r in self.reports
        )


def _derived_seed(seed: int, stream: int) -> int:
    return int(np.random.SeedSequence([seed, stream]).generate_state(1)[0])


def _failed(theorem, setup, iv, ids, exc: Exception) -> InequalityReport:
    return InequalityReport(
        theorem=theorem, setup=setup, iv=iv, function_ids=tuple(ids),
        lhs=None, rhs=None, ratio=None, tol=None,
        verdict=Verdict.INCONCLUSIVE, error=f"{type(exc).__name__}: {exc}",
    )


def run_campaign(
    alphas: Iterable[float],
    theorems: Iterable[TheoremId | str],
    corpus_size: int,
    seed: int,
    ps: Iterable[float] = (),
    iv: Interval = Interval(0.0, 1.0),
    n_panels: int = DEFAULT_PANELS,
    extra_tol: float = 0.0,
    f_override: ModelFunction | None = None,
    g_override: ModelFunction | None = None,
) -> Campaign:
    """Evaluate every (setup, corpus member, theorem) combination.

    Theorems that need ``alpha >= 1`` or ``alpha > 1 - 1/p`` are skipped for
    setups that violate this and counted as ``skipped``.  Evaluation failures
    become reports with an ``error`` message and never abort the run.
    Reports come out in input order.
    """
    order = list(TheoremId)
    theorems = sorted({TheoremId(t) for t in theorems}, key=order.index)
    alphas, ps = [float(a) for a in alphas], [float(p) for p in ps]
    if any(t.needs_holder for t in theorems) and not ps:
        raise ValueError("Z3/A2 theorems need at least one p value")

    reports: list[InequalityReport] = []
    skipped: dict[str, int] = {}

    def skip(which: TheoremId) -> None:
        skipped[which.value] = skipped.get(which.value, 0) + 1

    x_rng = np.random.default_rng(_derived_seed(seed, 2))

    for alpha in alphas:
        base = FractionalSetup(alpha)
        if f_override is not None:
            fs = [f_override]
        else:
            fs = sample_corpus(base, iv, corpus_size, seed)
        if g_override is not None:
            gs = [g_override] * len(fs)
        else:
            gs = sample_corpus(base, iv, len(fs), _derived_seed(seed, 1))
        xs = x_rng.uniform(iv.a, iv.b, size=len(fs))

        holder_setups = []
        for p in ps:
            if alpha > 1.0 - 1.0 / p:
                holder_setups.append(FractionalSetup(alpha, p))
            else:
                holder_setups.append(None)

        for f, g, x in zip(fs, gs, xs):
            for which in theorems:
                if which.needs_order_one and alpha < 1:
                    skip(which)
                    continue
                setups = holder_setups if which.needs_holder else [base]
                for setup in setups:
                    if setup is None:
                        skip(which)
                        continue
                    reports.append(_evaluate_one(which, f, g, setup, float(x), n_panels, extra_tol))

    campaign = Campaign(reports)
    campaign.summary = summarize(reports, theorems, skipped)
    return campaign


def _evaluate_one(which, f, g, setup, x, n_panels, extra_tol) -> InequalityReport:
    try:
        if which is TheoremId.CLASSICAL:
            return eval_classical_ostrowski(f, x, f.iv, n_panels, extra_tol)
        if which.is_z:
            return eval_z_bound(f, setup, which, n_panels, extra_tol)
        return eval_product_theorem(f, g, setup, which, n_panels, extra_tol)
    except (ArithmeticError, ValueError) as exc:
        ids = [function_id(f)] if not which.is_product else [function_id(f), function_id(g)]
        return _failed(which, None if which is TheoremId.CLASSICAL else setup, f.iv, ids, exc)


def summarize(
    reports: Sequence[InequalityReport],
    theorems: Sequence[TheoremId],
    skipped: dict[str, int] | None = None,
) -> dict[str, Any]:
    """Per-theorem counts and maximum tightness ratio, plus the pairing of
    stated and corrected Lq product bounds."""
    skipped = skipped or {}
    per: dict[str, Any] = {}
    for which in theorems:
        rs = [r for r in reports if r.theorem is which]
        ratios = [r.ratio for r in rs if r.ratio is not None and r.error is None]
        per[which.value] = {
            "count": len(rs),
            "holds": sum(r.verdict is Verdict.HOLDS for r in rs),
            "violated": sum(r.verdict is Verdict.VIOLATED for r in rs),
            "inconclusive": sum(r.verdict is Verdict.INCONCLUSIVE for r in rs),
            "errors": sum(r.error is not None for r in rs),
            "skipped": skipped.get(which.value, 0),
            "max_ratio": max(ratios) if ratios else None,
        }

    summary: dict[str, Any] = {
        "theorems": per,
        "sound_violations": sum(
            r.verdict is Verdict.VIOLATED and r.theorem in SOUND_THEOREMS for r in reports
        ),
    }

    if TheoremId.A2_STATED in theorems and TheoremId.A2_CORRECTED in theorems:
        summary["a2_discrepancy"] = _a2_pairs(reports)
    return summary


def _setup_key(s: FractionalSetup | None):
    return None if s is None else (s.alpha, s.p)


def _a2_pairs(reports: Sequence[InequalityReport]) -> dict[str, Any]:
    corrected = {
        (_setup_key(r.setup), r.function_ids): r
        for r in reports
        if r.theorem is TheoremId.A2_CORRECTED
    }
    pairs = []
    for r in reports:
        if r.theorem is not TheoremId.A2_STATED:
            continue
        c = corrected.get((_setup_key(r.setup), r.function_ids))
        if c is None:
            continue
        ratio = None
        if r.rhs is not None and c.rhs:
            ratio = r.rhs / c.rhs
        pairs.append(
            {
                "alpha": r.setup.alpha,
                "p": r.setup.p,
                "function_ids": list(r.function_ids),
                "lhs": r.lhs,
                "stated_rhs": r.rhs,
                "corrected_rhs": c.rhs,
                "stated_over_corrected": ratio,
                "expected_ratio": a2_correction_factor(r.setup),
                "stated_verdict": r.verdict.value,
                "corrected_verdict": c.verdict.value,
            }
        )
    return {
        "pairs": pairs,
        "stated_violations": sum(p["stated_verdict"] == "VIOLATED" for p in pairs),
    }


# }}}
