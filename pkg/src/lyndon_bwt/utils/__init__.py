"""Shared utility functions: configuration, logging, file I/O and the jit shim."""
