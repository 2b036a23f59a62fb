from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class HypothesisError(ValueError):
    """A function or setup does not satisfy the hypotheses of an inequality."""


class EvaluationError(ArithmeticError):
    """A function evaluation produced a non-finite value where one is required."""
