"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class NervusError(Exception):
    exit_code = 3


class MalformedInputError(NervusError, ValueError):
    """Input could not be parsed or violates a structural precondition."""

    exit_code = 2


class ValidationError(NervusError, ValueError):
    """A semantic check failed (non-simplicial map, adjointness, ...)."""

    exit_code = 3


class NotSimplicialError(ValidationError):
    def __init__(self, simplex, image):
        self.simplex = simplex
        self.image = image
        super().__init__(f"simplex {list(simplex)} maps to non-simplex {sorted(map(str, image))}")


class AdjointnessError(ValidationError):
    def __init__(self, obj, attr):
        self.obj = obj
        self.attr = attr
        super().__init__(f"adjointness fails at object {obj!r}, attribute {attr!r}")


class NotASplittingError(ValidationError):
    pass


class RefinementError(ValidationError):
    pass


class PosetError(ValidationError):
    pass


class DivergenceError(ValidationError):
    def __init__(self, step):
        self.step = step
        super().__init__(f"non-finite state at step {step}")


class InternalInvariantError(NervusError, AssertionError):
    """A guarantee of the theory failed to hold; indicates a bug."""


class CapExceededError(NervusError):
    exit_code = 4


class EnumerationLimitError(CapExceededError):
    pass
