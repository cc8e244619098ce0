"""Exception hierarchy shared by all mlnet modules.

Errors raised while reading an edge-list stream carry the 1-based line
number of the offending record in ``line``; errors raised by direct API
calls leave it as ``None``.
"""

from __future__ import annotations


class MlnetError(Exception):
    """Base class for every error raised by this package."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class LoopRejectedError(MlnetError):
    """An edge with identical source and target was rejected."""


class DuplicateEdgeError(MlnetError):
    """A (source, target, layer) triple was added more than once."""


class InvalidWeightError(MlnetError):
    """Edge weight is negative, NaN or infinite."""


class UnknownNodeError(MlnetError):
    """A node label is not registered in the network."""


class UnknownLayerError(MlnetError):
    """A layer label is not registered in the network."""


class AlphaOutOfRangeError(MlnetError):
    """The layer-count threshold is outside [1, number of layers]."""


class DegenerateNetworkError(MlnetError):
    """The network has fewer than two nodes, so centrality is undefined."""


class NetworkFrozenError(MlnetError):
    """Mutation was attempted on a frozen network."""


class ParseError(MlnetError):
    """An edge-list or manifest line could not be parsed."""


class ConfigInvalidError(MlnetError):
    """A generator configuration violates its constraints."""
