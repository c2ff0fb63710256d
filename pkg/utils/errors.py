"""
Exception hierarchy for the Z^n-tree toolkit.

Library operations raise these; loaders at the I/O boundary catch them and
return ``(None, message)`` tuples instead. The CLI maps them to exit codes.
"""

from __future__ import annotations

from typing import Any


class ZnTreeError(Exception):
    """Base class for every error raised by this project."""


class ConfigurationError(ZnTreeError):
    """Inputs disagree with the ambient configuration (e.g. dimension mismatch)."""


class MalformedWorkspaceError(ConfigurationError):
    """A workspace file or a value derived from it is invalid."""


class WordSyntaxError(ZnTreeError):
    """The word grammar rejected a string.

    Args:
        message: What went wrong.
        position: 1-based column of the offending character.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (column {position})")
        self.message = message
        self.position = position


class ReductionError(ZnTreeError):
    """A letter sequence contains a cancelling successor pair x x^-1."""


class DomainError(ZnTreeError):
    """A position, cut or argument lies outside the allowed range."""


class NoCommonMaxError(ZnTreeError):
    """The agreement set of two words has no maximum."""


class NotInCDRError(ZnTreeError):
    """A word admits no cyclic decomposition."""


class PresentationInvalidError(ZnTreeError):
    """A product of group elements is undefined.

    Args:
        left: Printed form of the left factor.
        right: Printed form of the right factor.
    """

    def __init__(self, left: str, right: str, detail: str = ""):
        msg = f"product undefined for ({left}) * ({right})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.pair = (left, right)


class BoundaryError(ZnTreeError):
    """Invalid use of boundary points (identical ends, unsupported shapes, cross-class use)."""


class PrecisionError(ZnTreeError):
    """Empirical data is too shallow to answer the query."""

    def __init__(self, message: str, lower_bound: Any = None):
        super().__init__(message)
        self.lower_bound = lower_bound


class InconclusiveError(PrecisionError):
    """A walk did not stabilise; carries the longest partial chain."""

    def __init__(self, message: str, chain: list | None = None, lower_bound: Any = None):
        super().__init__(message, lower_bound)
        self.chain = chain or []


class ExplorationNeededError(ZnTreeError):
    """A metric query touched a Z^(n-1)-class that was never explored."""

    def __init__(self, class_key: Any):
        super().__init__(f"class not explored: {class_key!r}")
        self.class_key = class_key


class DepthShortfallError(ZnTreeError):
    """A cone table is too shallow to evaluate g^-1 U_x."""

    def __init__(self, element: str, apex: str, needed: int, available: int):
        super().__init__(
            f"depth shortfall for g={element}, x={apex}: need {needed}, table has {available}"
        )
        self.element = element
        self.apex = apex


class ExperimentAbortedError(ZnTreeError):
    """An ensemble crossed its inconclusive-path threshold."""
