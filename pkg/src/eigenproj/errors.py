"""Exception hierarchy. Every error carries the CLI exit code it maps to."""


class EigenprojError(Exception):
    exit_code = 1


class ParseError(EigenprojError):
    exit_code = 3

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)


class NonSquare(EigenprojError):
    exit_code = 4


class Singular(EigenprojError):
    exit_code = 5


class NotAnnihilating(EigenprojError):
    exit_code = 6


class InvariantViolation(EigenprojError):
    exit_code = 7


class IllConditioned(EigenprojError):
    exit_code = 8


class NoConvergence(EigenprojError):
    exit_code = 9


class IrrationalSpectrum(EigenprojError):
    exit_code = 10


class NonTermination(EigenprojError):
    exit_code = 11


class IndexTooHigh(EigenprojError):
    exit_code = 12


class ZeroAlpha(EigenprojError, ValueError):
    exit_code = 2


class NotStochastic(EigenprojError):
    exit_code = 13


class NotLaplacian(EigenprojError):
    exit_code = 14


class MissingDerivative(EigenprojError):
    exit_code = 15


class ZeroPolynomial(EigenprojError):
    exit_code = 16


EXIT_CODES = {
    cls.__name__: cls.exit_code
    for cls in (
        ParseError, NonSquare, Singular, NotAnnihilating, InvariantViolation,
        IllConditioned, NoConvergence, IrrationalSpectrum, NonTermination,
        IndexTooHigh, ZeroAlpha, NotStochastic, NotLaplacian,
        MissingDerivative, ZeroPolynomial,
    )
}
