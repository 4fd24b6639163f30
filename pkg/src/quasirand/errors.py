"""Exception hierarchy.

Every error raised on bad input derives from :class:`QuasirandError`, which is
itself a :class:`ValueError`. Budget errors carry the size that was required so
callers can fall back to a cheaper method.
"""


class QuasirandError(ValueError):
    """Base class for all validation errors."""


# families
class EmptyCollection(QuasirandError):
    pass


class NotAntichain(QuasirandError):
    def __init__(self, smaller, larger):
        self.pair = (tuple(sorted(smaller)), tuple(sorted(larger)))
        super().__init__(f"{set(smaller) or '{}'} is a proper subset of {set(larger)}")


class IndexOutOfRange(QuasirandError):
    pass


class BadSizes(QuasirandError):
    pass


class BadSize(QuasirandError):
    pass


class BadLevel(QuasirandError):
    pass


class EmptyInput(QuasirandError):
    pass


class ArityMismatch(QuasirandError):
    pass


class SizeMismatch(QuasirandError):
    pass


# hypergraphs and file formats
class EdgeNotPresent(QuasirandError):
    pass


class MalformedHeader(QuasirandError):
    pass


class EdgeArityMismatch(QuasirandError):
    pass


class VertexOutOfRange(QuasirandError):
    pass


class DuplicateEdge(QuasirandError):
    pass


class BadPartition(QuasirandError):
    pass


# M_k construction
class DegenerateFamily(QuasirandError):
    pass


# densities
class AritiesDisagree(QuasirandError):
    pass


class AsymmetricKernelOnUnorderedPattern(QuasirandError):
    pass


class MissingSigma(QuasirandError):
    pass


class BudgetExceeded(QuasirandError):
    def __init__(self, message, required=None):
        self.required = required
        super().__init__(message)


class FactorBudgetExceeded(BudgetExceeded):
    """Raised by the elimination engine; ``required`` is the factor arity needed."""


# quasirandomness statistics
class RepeatedVertices(QuasirandError):
    pass


class EmptyWitnessSet(QuasirandError):
    pass


# generators
class BadParams(QuasirandError):
    pass
