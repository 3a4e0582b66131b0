"""Logging formatters that carry the run context."""

from qbnet_entropy.formatters.json import JsonContextFormatter
from qbnet_entropy.formatters.simple import SimpleContextFormatter

__all__ = [
    "JsonContextFormatter",
    "SimpleContextFormatter",
]
