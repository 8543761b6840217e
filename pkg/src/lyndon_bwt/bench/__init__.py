# src/lyndon_bwt/bench/__init__.py
"""Benchmark harness, corpora and report schema."""
