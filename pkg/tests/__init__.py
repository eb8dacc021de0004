"""Tests for infotheory-epi."""
