"""Exception hierarchy for quiverlab.

Every error carries enough context (vertex / arrow / condition name) to be
actionable from the CLI and the HTTP service, which map QuiverlabError
subclasses onto 4xx responses.
"""


class QuiverlabError(Exception):
    """Base class for all domain errors."""


# --- quiver validation -------------------------------------------------------

class LoopArrow(QuiverlabError):
    def __init__(self, arrow):
        self.arrow = arrow
        super().__init__(f"loop arrow at vertex {arrow[0]!r}")


class TwoCycle(QuiverlabError):
    def __init__(self, arrow):
        self.arrow = arrow
        super().__init__(f"antiparallel arrow pair between {arrow[0]!r} and {arrow[1]!r}")


class NonPositiveWeight(QuiverlabError):
    def __init__(self, arrow):
        self.arrow = arrow
        super().__init__(f"arrow {arrow[0]!r}->{arrow[1]!r} has non-positive weight {arrow[2]}")


class DanglingEndpoint(QuiverlabError):
    def __init__(self, arrow):
        self.arrow = arrow
        super().__init__(f"arrow {arrow[0]!r}->{arrow[1]!r} references unknown vertex")


class UnknownVertex(QuiverlabError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"unknown vertex {vertex!r}")


class UnknownArrow(QuiverlabError):
    def __init__(self, arrow_id):
        self.arrow_id = arrow_id
        super().__init__(f"unknown arrow {arrow_id!r}")


class TooLarge(QuiverlabError):
    def __init__(self, size, bound):
        super().__init__(f"{size} vertices exceeds the canonical-form bound of {bound}")


# --- QP calculus --------------------------------------------------------------

class LoopAtVertex(QuiverlabError):
    """Premutation condition (c1) violated."""


class TwoCycleAtVertex(QuiverlabError):
    """Premutation condition (c2) violated."""


class CycleThroughVertexInPotential(QuiverlabError):
    """Premutation condition (c3) violated."""


class NonSplittableQuadraticPart(QuiverlabError):
    """The quadratic part of a potential is not in the supported normal position."""


class NoConvergence(QuiverlabError):
    """Two-cycle elimination did not stabilize below the truncation degree."""


class NotTwoAcyclic(QuiverlabError):
    """A mutated QP still contains a 2-cycle: nondegeneracy witness failed."""


# --- jacobian lab -------------------------------------------------------------

class NotSaturated(QuiverlabError):
    """The basis report hit its degree bound while still growing."""


class NotSchurian(QuiverlabError):
    """A Cartan entry exceeds 1 where a schurian algebra was required."""


# --- polygon trees ------------------------------------------------------------

class InvalidPosition(QuiverlabError):
    pass


class PetalTooSmall(QuiverlabError):
    pass


class GluedArrowReuse(QuiverlabError):
    pass


class NonTreeGluing(QuiverlabError):
    pass


class NotCyclicallyOriented(QuiverlabError):
    pass


class NotPolygonTree(QuiverlabError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class UnsupportedWeight(QuiverlabError):
    pass


# --- mutation classes ---------------------------------------------------------

class InfiniteClass(QuiverlabError):
    pass


class Capped(QuiverlabError):
    pass


# --- singularity module --------------------------------------------------------

class NotSimple(QuiverlabError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class DTooSmall(QuiverlabError):
    pass


class PatternMismatch(QuiverlabError):
    pass


class CertificateFailure(QuiverlabError):
    def __init__(self, step_index, message):
        self.step_index = step_index
        super().__init__(f"step {step_index}: {message}")


class LengthMismatch(QuiverlabError):
    def __init__(self, expected, got):
        self.expected = expected
        self.got = got
        super().__init__(f"terminal cycle length {got} != expected {expected}")


# --- service -------------------------------------------------------------------

class SessionNotFound(QuiverlabError):
    pass


class EmptyHistory(QuiverlabError):
    pass
