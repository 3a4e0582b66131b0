"""Tests for logging formatters."""
