"""
Exception hierarchy shared by every package module.

Audit failures (theorem checks, fixture diffs) are report entries, not
exceptions; these are raised only when a computation cannot proceed.
"""


class Genus2Error(Exception):
    """Base class for all domain errors"""


class ClosureTooLarge(Genus2Error):
    """Generator closure exceeded the configured safety cap"""


class NotInvertible(Genus2Error):
    """A matrix generator is singular over the 3-element field"""


class ParentMismatch(Genus2Error):
    """Two subgroups of different parent groups were combined"""


class CatalogCorrupt(Genus2Error):
    """A catalog record failed its order, fingerprint or census check"""


class UnknownGroup(Genus2Error):
    """No catalog entry matches the requested group name"""


class AmbiguousSigma(Genus2Error):
    """The center does not hold exactly one involution"""


class InconsistentLedger(Genus2Error):
    """A ledger merge violated degree consistency"""


class NoPath(Genus2Error):
    """The two divisor classes are not related by any derived chain"""


class NotVeryAmple(Genus2Error):
    """D_H has degree below 5"""


class NonUniform(Genus2Error):
    """Subgroups of the same order produced different histograms"""


class NoSuchSubgroup(Genus2Error):
    """No subgroup with P1 quotient matches the requested order or index"""
