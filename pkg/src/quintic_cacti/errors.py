"""Exception hierarchy shared by all modules."""


class CactusError(ValueError):
    """Base class for invalid combinatorial input."""


class NotATree(CactusError):
    pass


class BadLabels(CactusError):
    pass


class SelfLoop(CactusError):
    pass


class BigSelfGluing(CactusError):
    pass


class BadChamber(CactusError):
    pass


class DegreeOutOfRange(CactusError):
    pass


class UnknownClassId(CactusError):
    pass


class SizeMismatch(ValueError):
    pass


class GraphError(ValueError):
    """Base class for ribbon graph construction and query failures."""


class DualityMismatch(GraphError):
    pass


class AmbiguousRotation(GraphError):
    pass


class NonOrientableParity(GraphError):
    pass


class UnknownFormat(GraphError):
    pass


class EmptyGraph(GraphError):
    pass


class NumericError(ArithmeticError):
    """Base class for failures while realizing a numeric polynomial."""


class NonQuintic(NumericError):
    pass


class GenericityError(NumericError):
    pass


class CollisionAmbiguous(NumericError):
    pass


class PathClearance(NumericError):
    pass


class Divergence(NumericError):
    pass
