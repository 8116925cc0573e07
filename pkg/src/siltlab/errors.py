"""Exception types shared across the package."""


class SiltlabError(Exception):
    """Base class for all errors raised by this package."""


class NotFiniteDimensional(SiltlabError):
    pass


class NotAdmissible(SiltlabError):
    pass


class UnknownVertex(SiltlabError, KeyError):
    pass


class NotAComplex(SiltlabError):
    def __init__(self, degree, message=""):
        self.degree = degree
        super().__init__(message or f"differential squares to nonzero at degree {degree}")


class SummandObstruction(SiltlabError):
    pass


class HypothesisFailed(SiltlabError):
    def __init__(self, bullet: str, message: str = ""):
        self.bullet = bullet
        super().__init__(message or bullet)


class NotInjectiveTerm(SiltlabError):
    def __init__(self, degree, message=""):
        self.degree = degree
        super().__init__(message or f"term in degree {degree} is not injective")


class NotSpherical(SiltlabError):
    pass


class AxiomViolation(SiltlabError):
    def __init__(self, witness, message=""):
        self.witness = witness
        super().__init__(message or f"axiom violated at {witness}")


class FiltrationCapExceeded(SiltlabError):
    pass


class CapExceeded(SiltlabError):
    pass


class NoProvenance(SiltlabError):
    pass


class TransportFailed(SiltlabError):
    pass


class ParseError(SiltlabError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
