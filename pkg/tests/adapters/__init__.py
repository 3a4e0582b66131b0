"""Tests for context adapters."""
