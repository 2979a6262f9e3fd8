"""Tests for lacunary-harmonic."""
