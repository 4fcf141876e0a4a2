"""Exception hierarchy shared by every module."""


class CobleCheckError(Exception):
    """Base class; the CLI maps these to exit code 1 or 2."""


class UnknownCurve(CobleCheckError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class NotARoot(CobleCheckError, ValueError):
    pass


class NotLatticeVector(CobleCheckError, ValueError):
    pass


class DegenerateInput(CobleCheckError, ValueError):
    pass


class NotConnected(CobleCheckError, ValueError):
    pass


class NotAffine(CobleCheckError, ValueError):
    pass


class TooLarge(CobleCheckError, ValueError):
    pass


class MissingRealization(CobleCheckError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class CannotBlowUp(CobleCheckError, ValueError):
    pass


class BadIncidence(CobleCheckError, ValueError):
    pass


class ModelInconsistent(CobleCheckError, ValueError):
    pass


class DecompositionError(CobleCheckError, ValueError):
    pass


class Unsatisfiable(CobleCheckError, ValueError):
    """Constraint propagation or bookkeeping found no consistent scenario."""

    def __init__(self, message, clashes=()):
        super().__init__(message)
        self.clashes = tuple(clashes)


class SearchBoundExceeded(CobleCheckError, ValueError):
    pass


class Inadmissible(CobleCheckError, ValueError):
    pass


class ParityError(CobleCheckError, ValueError):
    pass


class InconsistentIntegrality(CobleCheckError, ValueError):
    pass


class InfeasibleScenario(CobleCheckError, ValueError):
    pass


class SchemaError(CobleCheckError, ValueError):
    """Fixture document failed validation; ``where`` names the offending field."""

    def __init__(self, message, where=""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where
