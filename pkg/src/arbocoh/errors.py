"""Exception hierarchy.

Every failure mode of the library raises a subclass of ArbocohError, so
callers (and the CLI) can distinguish "your input is bad" from genuine bugs.
Boundary operations never guess: if a ray prefix is too shallow to determine
a value, they raise InsufficientDepth instead of extrapolating.
"""


class ArbocohError(Exception):
    """Base class for all library errors."""


# -- tree geometry ---------------------------------------------------------

class InsufficientDepth(ArbocohError):
    """A ray prefix is too shallow to determine the requested quantity."""


class NotDistinct(ArbocohError):
    """Arguments required to be pairwise distinct are not."""


class DegenerateCylinder(ArbocohError):
    """Cylinder U(x, w) requested with w == x."""


class OutOfDomain(ArbocohError):
    """A point is outside the domain of a finite isometry."""


# -- shapes ----------------------------------------------------------------

class NotATree(ArbocohError):
    """Vertex/edge data does not describe a tree."""


class InvalidShape(ArbocohError):
    """Shape violates completeness or the degree bound."""


class TooSmall(ArbocohError):
    """Operation undefined for vertex/edge shapes (diameter too small)."""


class NotCuspidalShape(ArbocohError):
    """Operation requires a shape of diameter >= 2."""


# -- flip ------------------------------------------------------------------

class SubtreeHitsTriple(ArbocohError):
    """The given subtree hits the leading ray triple, so no flip exists."""


# -- permutation groups ----------------------------------------------------

class GroupTooLarge(ArbocohError):
    """Group closure exceeded the configured order bound."""


class NotASubgroup(ArbocohError):
    """Claimed subgroup is not contained in (or not closed within) the group."""


# -- representation theory -------------------------------------------------

class NumericalDegeneracy(ArbocohError):
    """Eigenspace separation failed after the configured number of retries."""


class NonIntegralDimension(ArbocohError):
    """An invariant-subspace dimension came out non-integral (broken table)."""


class DegenerateIrrep(ArbocohError):
    """A cuspidal construction was given a degenerate irreducible."""


class NotACentipede(ArbocohError):
    """Operation defined only for centipede shapes."""


class BadVertexChoice(ArbocohError):
    """(x, y) do not sit in complements of two distinct maximal subtrees."""


class InvalidDescriptor(ArbocohError):
    """Representation descriptor fails its admissibility checks."""


class BadVector(ArbocohError):
    """Witness vector violates its invariance precondition."""


# -- spherical -------------------------------------------------------------

class IllConditioned(ArbocohError):
    """Intertwiner system residual exceeded tolerance."""


# -- cli -------------------------------------------------------------------

class UnknownSuite(ArbocohError):
    """verify was asked for a suite name that does not exist."""
