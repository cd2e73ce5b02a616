"""Tests for the powerstormer package."""
