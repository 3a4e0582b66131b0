"""Tests for qbnet-entropy."""
