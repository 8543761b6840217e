# src/lyndon_bwt/core/__init__.py
"""Text, suffix array, BWT, Lyndon array and balanced-parenthesis pipelines."""
