"""Tests for the benchmark harness and corpora."""
