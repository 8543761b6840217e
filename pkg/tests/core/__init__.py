"""Tests for text, suffix, BWT, Lyndon and parenthesis modules."""
