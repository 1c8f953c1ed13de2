"""Shared error types."""

from __future__ import annotations


class DomainError(ValueError):
    """A parameter lies outside the hypotheses of the requested inequality.

    ``condition`` names the violated hypothesis, e.g. ``"b + 1/q > 0"``.
    """

    def __init__(self, condition: str, message: str | None = None):
        self.condition = condition
        super().__init__(message or f"hypothesis violated: {condition}")
