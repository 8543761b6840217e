# src/lyndon_bwt/exceptions.py
"""
exceptions.py

Error types raised by the toolkit.

Data errors derive from LyndonBwtError (a ValueError) and map to exit
code 2 in the CLI; InvariantViolation (a RuntimeError) marks a broken
internal invariant and maps to exit code 3.
"""


class LyndonBwtError(ValueError):
    """Base class for errors caused by the input data or arguments."""


class SentinelConflict(LyndonBwtError):
    """Byte 0 found where the sentinel policy forbids it, or the sentinel is missing."""


class EmptyInput(LyndonBwtError):
    """An input that must hold at least one symbol was empty."""


class WidthOverflow(LyndonBwtError):
    """A value does not fit the requested integer width."""


class MalformedHeader(LyndonBwtError):
    """A binary file does not start with the expected header."""


class PermutationViolation(LyndonBwtError):
    """An array that must be a permutation of 1..n is not."""


NotAPermutation = PermutationViolation


class NonTerminating(LyndonBwtError):
    """LF walking did not visit n distinct rows: the BWT is not a single cycle."""


class OutOfRange(LyndonBwtError):
    """A 1-based query index lies outside 1..n."""


class Unbalanced(LyndonBwtError):
    """A parenthesis sequence is not balanced."""


class DuplicatePush(LyndonBwtError):
    """A value already on the bit stack was pushed again."""


class LengthMismatch(LyndonBwtError):
    """Two arrays that must have equal length do not."""


class VerificationMismatch(LyndonBwtError):
    """A parenthesis sequence disagrees with a supplied Lyndon array."""


class InvariantViolation(RuntimeError):
    """An internal invariant failed; indicates a bug rather than bad input."""
