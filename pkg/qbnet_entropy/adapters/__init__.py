"""Run-context storage adapters."""

from qbnet_entropy.adapters.base import ContextAdapter
from qbnet_entropy.adapters.context_logging import ContextLoggingAdapter
from qbnet_entropy.adapters.contextvars import ContextVarsAdapter

__all__ = [
    "ContextAdapter",
    "ContextLoggingAdapter",
    "ContextVarsAdapter",
]
