"""Diagnostic exceptions shared across the workbench.

Every exception carries a concrete witness for the violated law, so a
failing verification never has to be re-run to find out what went wrong.
"""

from __future__ import annotations


class QframeError(Exception):
    """Base class; `witness` holds the offending elements/tuples, if any."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAPoset(QframeError):
    pass


class NotALattice(QframeError):
    pass


class ZeroMember(QframeError):
    pass


class SizeLimitExceeded(QframeError):
    pass


class NotAChain(QframeError):
    pass


class InfiniteLength(QframeError):
    pass


class NotJoinPreserving(QframeError):
    pass


class NotSegmentPreserving(QframeError):
    pass


class ZeroNotPreserved(QframeError):
    pass


class NotCongruence(QframeError):
    pass


class NotStrongCongruence(QframeError):
    pass


class UnsupportedCarrier(QframeError):
    pass


class NotSerre(QframeError):
    pass


class NotJoinClosed(QframeError):
    pass


class ClassNotVerified(QframeError):
    pass


class CrossViolation(QframeError):
    def __init__(self, index, witness=None):
        super().__init__(f"crossed-product condition {index} violated", witness)
        self.index = index


class NotAutomorphism(QframeError):
    pass


class NotEquivariant(QframeError):
    pass


class NotLinear(QframeError):
    pass


class DomainMismatch(QframeError):
    pass


class DomainIncomplete(QframeError):
    pass


class QuotientNotInjectiveOnK(QframeError):
    pass


class BoxTooSmall(QframeError):
    pass


class EpsilonTooLarge(QframeError):
    pass


class HypothesisFailed(QframeError):
    def __init__(self, name, message, witness=None):
        super().__init__(f"hypothesis {name}: {message}", witness)
        self.name = name


class TheoremViolation(QframeError):
    """Must never fire; firing indicates an implementation bug."""


class SplittingMissing(QframeError):
    pass


class NotABasis(QframeError):
    pass


class NotAlgebraic(QframeError):
    pass


class UnsupportedRing(QframeError):
    pass


class UnsupportedFormat(QframeError):
    pass


class ConfigError(QframeError):
    pass
