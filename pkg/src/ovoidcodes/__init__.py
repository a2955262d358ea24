"""Exact computations for an ovoid in PG(7,q) and its associated codes."""

from .fields import FieldContext, GuardExceeded, context_for_order, make_context

__version__ = "0.1.0"

__all__ = [
    "FieldContext",
    "GuardExceeded",
    "context_for_order",
    "make_context",
    "__version__",
]
