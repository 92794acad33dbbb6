class MackeyLabError(Exception):
    pass


class ShapeMismatch(MackeyLabError, ValueError):
    pass


class AxiomViolation(MackeyLabError):
    pass


class InvalidDegree(MackeyLabError, ValueError):
    pass


class DegreeMismatch(MackeyLabError, ValueError):
    pass


class CompatibilityFailure(MackeyLabError):
    pass


class FactorizationFailure(MackeyLabError):
    pass
