"""Tests for generators, pmf files and experiment drivers."""
