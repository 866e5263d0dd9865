"""Exception types.

Every domain error derives from :class:`HoffmanError`; the CLI reports the
class name on stderr, so names are part of the public interface.
"""

from __future__ import annotations


class HoffmanError(Exception):
    """Base class for all domain errors raised by hofflat."""

    @property
    def name(self) -> str:
        return type(self).__name__


# graph construction / validation
class FatFatEdge(HoffmanError):
    pass


class FatWithoutSlimNeighbor(HoffmanError):
    pass


class SelfLoop(HoffmanError):
    pass


class DuplicateVertexName(HoffmanError):
    pass


class UnknownVertex(HoffmanError):
    pass


class EmptyAttachment(HoffmanError):
    pass


class ParseError(HoffmanError):
    pass


# spectra
class NoSlimVertex(HoffmanError):
    pass


class NoFatVertex(HoffmanError):
    pass


class UnknownFatVertex(HoffmanError):
    pass


class NonPositiveCliqueSize(HoffmanError):
    pass


class HypothesisViolated(HoffmanError):
    pass


# representations
class EigenvalueTooSmall(HoffmanError):
    pass


class NotARepresentation(HoffmanError):
    pass


class UnsupportedDiagonal(HoffmanError):
    pass


class UnsupportedOffDiagonal(HoffmanError):
    pass


# decomposition / lattice
class NotAPartition(HoffmanError):
    pass


class EmptyRepresentation(HoffmanError):
    pass


class NotFat(HoffmanError):
    pass


class NotIndecomposable(HoffmanError):
    pass


# saturation / families / enumeration
class TooManySlimVertices(HoffmanError):
    pass


class NotME8Graph(HoffmanError):
    pass


class UnsupportedT(HoffmanError):
    pass


class BadParameters(HoffmanError):
    pass


class BoundsTooLarge(HoffmanError):
    pass


# dynkin
class Disconnected(HoffmanError):
    pass


class Empty(HoffmanError):
    pass
