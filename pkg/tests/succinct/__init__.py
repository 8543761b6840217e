"""Tests for the succinct bit structures."""
