"""Test functions with analytic derivative stacks and randomized corpora.

Functions are represented either as a finite sum of power terms anchored at
the right endpoint,

.. math::

    f(t) = \\sum_j c_j (b - t)^{\\beta_j},

with constants encoded as ``beta = 0``, or as an opaque stack of callables
``[f, f', f'', ...]``.  The power-term form carries exact closed forms for
every fractional operator in :mod:`caputo_ostrowski.operators`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from caputo_ostrowski.errors import DomainError

__all__ = [
    "FractionalSetup",
    "Interval",
    "ModelFunction",
    "PowerTerm",
    "derivative_stack_error",
    "format_function_spec",
    "from_callables",
    "from_terms",
    "make_constant",
    "make_power_at_b",
    "parse_function_spec",
    "sample_corpus",
]

Array = np.ndarray


@dataclass(frozen=True)
class Interval:
    """The closed interval ``[a, b]`` with ``a < b``."""

    a: float
    b: float

    def __post_init__(self) -> None:
        a, b = float(self.a), float(self.b)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise DomainError(f"interval endpoints must be finite, got [{a}, {b}]")
        if not a < b:
            raise DomainError(f"interval requires a < b, got [{a}, {b}]")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def length(self) -> float:
        return self.b - self.a

    def contains(self, x: float) -> bool:
        return self.a <= x <= self.b


@dataclass(frozen=True)
class FractionalSetup:
    """Fractional order ``alpha`` with optional Hoelder exponents ``(p, q)``.

    ``m`` is the ceiling of ``alpha``.  When only ``p`` is given, ``q`` is the
    conjugate exponent ``p / (p - 1)``.
    """

    alpha: float
    p: float | None = None
    q: float | None = None

    def __post_init__(self) -> None:
        alpha = float(self.alpha)
        if not math.isfinite(alpha) or alpha <= 0:
            raise DomainError(f"alpha must be finite and > 0, got {alpha}")
        object.__setattr__(self, "alpha", alpha)

        p, q = self.p, self.q
        if p is None and q is None:
            return
        if p is None:
            q = float(q)
            if not q > 1:
                raise DomainError(f"q must be > 1, got {q}")
            p = q / (q - 1.0)
        elif q is None:
            p = float(p)
            if not p > 1:
                raise DomainError(f"p must be > 1, got {p}")
            q = p / (p - 1.0)
        p, q = float(p), float(q)
        if not (p > 1 and q > 1):
            raise DomainError(f"Hoelder exponents must exceed 1, got p={p}, q={q}")
        if abs(1.0 / p + 1.0 / q - 1.0) > 1e-12:
            raise DomainError(f"1/p + 1/q must equal 1, got p={p}, q={q}")
        if not alpha > 1.0 - 1.0 / p:
            raise DomainError(f"alpha must exceed 1 - 1/p = {1.0 - 1.0 / p}, got {alpha}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def m(self) -> int:
        return math.ceil(self.alpha)

    @property
    def is_integer_order(self) -> bool:
        return self.alpha == self.m


@dataclass(frozen=True)
class PowerTerm:
    """The term ``c * (b - t)**beta``; ``beta = 0`` is a constant."""

    c: float
    beta: float

    def __post_init__(self) -> None:
        if not self.beta >= 0:
            raise DomainError(f"power exponent must be >= 0, got {self.beta}")
        object.__setattr__(self, "c", float(self.c))
        object.__setattr__(self, "beta", float(self.beta))

    @property
    def is_integer_power(self) -> bool:
        return self.beta == math.floor(self.beta)


def falling_factorial(beta: float, k: int) -> float:
    """``beta (beta - 1) ... (beta - k + 1) = Gamma(beta + 1) / Gamma(beta - k + 1)``."""
    r = 1.0
    for i in range(k):
        r *= beta - i
    return r


def _power_term_deriv(term: PowerTerm, k: int, b: float, t: Array) -> Array:
    coeff = term.c * (-1.0) ** k * falling_factorial(term.beta, k)
    if coeff == 0.0:
        return np.zeros_like(t)
    d = np.maximum(b - t, 0.0)
    with np.errstate(divide="ignore"):
        return coeff * d ** (term.beta - k)


@dataclass(frozen=True, eq=False)
class ModelFunction:
    """An evaluable function on ``iv`` with derivatives up to ``deriv_order_max``.

    Exactly one of ``terms`` (power-term sum) or ``stack`` (callables for
    ``f, f', ...``) is set.  Term-based functions have analytic derivatives
    of every order; ``deriv_order_max`` then records the order the function
    was built for.
    """

    iv: Interval
    deriv_order_max: int
    terms: tuple[PowerTerm, ...] | None = None
    stack: tuple[Callable[[Array], Array], ...] | None = None
    name: str = ""
    _boundary: tuple[float, ...] = field(default=(), repr=False)

    def __post_init__(self) -> None:
        if (self.terms is None) == (self.stack is None):
            raise ValueError("exactly one of terms or stack must be given")
        if self.stack is not None and len(self.stack) < self.deriv_order_max + 1:
            raise ValueError("derivative stack shorter than deriv_order_max + 1")
        bnd = tuple(
            float(self.deriv(k)(np.array(self.iv.b)))
            for k in range(self.deriv_order_max + 1)
        )
        object.__setattr__(self, "_boundary", bnd)

    # -- evaluation -------------------------------------------------------

    def __call__(self, t):
        return self.deriv(0)(t)

    def deriv(self, k: int) -> Callable[[Array], Array]:
        """Return a vectorized callable for the ``k``-th derivative."""
        if k < 0:
            raise DomainError(f"derivative order must be >= 0, got {k}")
        if self.terms is not None:
            terms, b = self.terms, self.iv.b

            def dk(t):
                t = np.asarray(t, dtype=float)
                out = np.zeros_like(t)
                # opposite infinities at t = b are possible above order m
                with np.errstate(invalid="ignore"):
                    for term in terms:
                        out = out + _power_term_deriv(term, k, b, t)
                return out

            return dk

        if k > self.deriv_order_max:
            raise DomainError(
                f"derivative of order {k} requested, only {self.deriv_order_max} available"
            )
        fn = self.stack[k]

        def dk(t):
            t = np.asarray(t, dtype=float)
            return np.broadcast_to(np.asarray(fn(t), dtype=float), t.shape).copy()

        return dk

    def boundary(self, k: int) -> float:
        """``f^(k)(b)``."""
        if k < len(self._boundary):
            return self._boundary[k]
        return float(self.deriv(k)(np.array(self.iv.b)))

    # -- classification ---------------------------------------------------

    @property
    def oracle_class(self) -> str:
        """One of ``constant``, ``power_at_b``, ``sum_of_terms`` or ``opaque``."""
        if self.terms is None:
            return "opaque"
        nonconst = [t for t in self.terms if t.beta > 0]
        if not nonconst:
            return "constant"
        if len(self.terms) == 1:
            return "power_at_b"
        return "sum_of_terms"

    def supports_order(self, m: int) -> bool:
        """Whether ``f`` lies in ``AC^m``, i.e. ``f^(m)`` is integrable."""
        if self.terms is None:
            return m <= self.deriv_order_max
        return all(t.is_integer_power or t.beta > m - 1 for t in self.terms)

    # -- algebra (term-based functions only) --------------------------------

    def _require_terms(self, other: ModelFunction | None = None) -> None:
        if self.terms is None or (other is not None and other.terms is None):
            raise TypeError("arithmetic is only defined for power-term functions")
        if other is not None and other.iv != self.iv:
            raise DomainError("functions live on different intervals")

    def __add__(self, other: ModelFunction) -> ModelFunction:
        if not isinstance(other, ModelFunction):
            return NotImplemented
        self._require_terms(other)
        return from_terms(
            self.iv,
            self.terms + other.terms,
            deriv_order_max=min(self.deriv_order_max, other.deriv_order_max),
        )

    def __mul__(self, scale: float) -> ModelFunction:
        if not isinstance(scale, (int, float)):
            return NotImplemented
        self._require_terms()
        terms = tuple(PowerTerm(scale * t.c, t.beta) for t in self.terms)
        return from_terms(self.iv, terms, deriv_order_max=self.deriv_order_max)

    __rmul__ = __mul__

    def __neg__(self) -> ModelFunction:
        return self * -1.0

    def __repr__(self) -> str:
        label = self.name or (
            format_function_spec(self) if self.terms is not None else "opaque"
        )
        return f"ModelFunction({label!r} on [{self.iv.a}, {self.iv.b}])"


def _default_order(terms: Sequence[PowerTerm]) -> int:
    return max((math.ceil(t.beta) for t in terms), default=0) + 1


def from_terms(
    iv: Interval,
    terms: Sequence[PowerTerm],
    deriv_order_max: int | None = None,
    name: str = "",
) -> ModelFunction:
    terms = tuple(terms)
    if not terms:
        terms = (PowerTerm(0.0, 0.0),)
    if deriv_order_max is None:
        deriv_order_max = _default_order(terms)
    return ModelFunction(iv=iv, deriv_order_max=deriv_order_max, terms=terms, name=name)


def from_callables(
    iv: Interval, stack: Sequence[Callable[[Array], Array]], name: str = ""
) -> ModelFunction:
    """Wrap ``[f, f', ..., f^(n)]`` as an opaque function with ``deriv_order_max = n``."""
    stack = tuple(stack)
    if not stack:
        raise ValueError("need at least the function itself")
    return ModelFunction(iv=iv, deriv_order_max=len(stack) - 1, stack=stack, name=name)


def make_power_at_b(
    c: float, beta: float, iv: Interval, deriv_order_max: int | None = None
) -> ModelFunction:
    """``f(t) = c (b - t)**beta``."""
    if not beta >= 0:
        raise DomainError(f"beta must be >= 0, got {beta}")
    return from_terms(iv, [PowerTerm(c, beta)], deriv_order_max=deriv_order_max)


def make_constant(c: float, iv: Interval) -> ModelFunction:
    return from_terms(iv, [PowerTerm(c, 0.0)])


# {{{ corpus


def _sample_exponent(rng: np.random.Generator, m: int) -> float:
    # reject a 0.05-neighbourhood of every integer
    while True:
        beta = rng.uniform(m, m + 3)
        if abs(beta - round(beta)) > 0.05:
            return float(beta)


def sample_corpus(
    setup: FractionalSetup, iv: Interval, n: int, seed: int
) -> list[ModelFunction]:
    """Draw ``n`` functions ``c0 + sum_j c_j (b - t)**beta_j`` with ``1 <= J <= 3``.

    Every exponent lies in ``[m, m + 3]``, so ``f^(k)(b) = 0`` for
    ``k = 1, ..., m - 1`` holds by construction.
    """
    if n < 1:
        raise ValueError(f"corpus size must be >= 1, got {n}")
    m = setup.m
    rng = np.random.default_rng(seed)
    corpus = []
    for _ in range(n):
        nterms = int(rng.integers(1, 4))
        terms = [PowerTerm(rng.uniform(-2.0, 2.0), 0.0)]
        for _ in range(nterms):
            c = rng.uniform(-2.0, 2.0)
            terms.append(PowerTerm(c, _sample_exponent(rng, m)))
        corpus.append(from_terms(iv, terms, deriv_order_max=m + 1))
    return corpus


def derivative_stack_error(
    f: ModelFunction, npoints: int = 32, seed: int = 0
) -> float:
    """Largest discrepancy between ``f^(k)`` and a difference quotient of ``f^(k-1)``.

    Uses Richardson-extrapolated central differences at ``npoints`` random
    points at least ``10 h`` from both endpoints, ``h = (b - a) 1e-4``.  The
    step shrinks to ``dist / 100`` near an endpoint, where the power terms
    can have unbounded higher derivatives.
    """
    iv = f.iv
    h = iv.length * 1e-4
    rng = np.random.default_rng(seed)
    t = rng.uniform(iv.a + 10 * h, iv.b - 10 * h, size=npoints)
    step = np.minimum(h, np.minimum(t - iv.a, iv.b - t) / 100.0)

    worst = 0.0
    for k in range(1, f.deriv_order_max + 1):
        lower = f.deriv(k - 1)
        d1 = (lower(t + step) - lower(t - step)) / (2 * step)
        d2 = (lower(t + step / 2) - lower(t - step / 2)) / step
        fd = (4 * d2 - d1) / 3
        exact = f.deriv(k)(t)
        worst = max(worst, float(np.max(np.abs(fd - exact))))
    return worst


# }}}

# {{{ mini-language

_NUMBER = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_CONST_RE = re.compile(rf"const:({_NUMBER})")
_POWB_RE = re.compile(rf"powb:c=({_NUMBER}),beta=({_NUMBER})")

FUNCTION_SPEC_GRAMMAR = """\
function spec grammar (whitespace is ignored):
  spec := term (";" term)*
  term := "const:" NUMBER | "powb:c=" NUMBER ",beta=" NUMBER
'powb' is c*(b - t)**beta; e.g. "const:1; powb:c=-2,beta=1.5"."""


def parse_function_spec(
    text: str, iv: Interval, deriv_order_max: int | None = None
) -> ModelFunction:
    """Parse the ``const:``/``powb:`` mini-language into a term-based function."""
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise ValueError("empty function spec")
    terms = []
    for item in compact.split(";"):
        if mt := _CONST_RE.fullmatch(item):
            terms.append(PowerTerm(float(mt.group(1)), 0.0))
        elif mt := _POWB_RE.fullmatch(item):
            beta = float(mt.group(2))
            if beta < 0:
                raise ValueError(f"negative beta in term {item!r}")
            terms.append(PowerTerm(float(mt.group(1)), beta))
        else:
            raise ValueError(f"cannot parse function term {item!r}")
    return from_terms(iv, terms, deriv_order_max=deriv_order_max)


def format_function_spec(f: ModelFunction) -> str:
    """Inverse of :func:`parse_function_spec` (lossless for finite floats)."""
    if f.terms is None:
        return f.name or "opaque"
    parts = []
    for t in f.terms:
        if t.beta == 0:
            parts.append(f"const:{t.c!r}")
        else:
            parts.append(f"powb:c={t.c!r},beta={t.beta!r}")
    return ";".join(parts)


# }}}
