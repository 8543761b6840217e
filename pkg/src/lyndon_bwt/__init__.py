"""Lyndon BWT - Lyndon arrays from Burrows-Wheeler inversion, NSV and a definitional oracle."""

__version__ = "0.1.0"
