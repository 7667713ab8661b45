"""Exception hierarchy shared by every pbmod module."""


class PBModError(Exception):
    """Base class for all errors raised by this package."""


class DuplicateVariable(PBModError):
    pass


class UnassignedVariable(PBModError):
    pass


class BadModulus(PBModError):
    pass


class InsufficientModuli(PBModError):
    pass


class ArityError(PBModError):
    pass


class InconsistentAssumptions(PBModError):
    pass


class ResourceLimit(PBModError):
    pass


class TooManyVariables(PBModError):
    pass


class ParseError(PBModError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = "line %d" % line
            if column is not None:
                where += ", column %d" % column
            where += ": "
        super().__init__(where + message)
