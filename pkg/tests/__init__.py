"""Tests for apolar."""
