# src/lyndon_bwt/succinct/__init__.py
"""Bit-level structures: rank/select bitvectors, the bit stack, the range min-max tree and select indexes over L."""
