"""Exception hierarchy shared by every speclab module."""


class SpeclabError(Exception):
    """Base class for all speclab errors."""


class NoSolutionError(SpeclabError, ValueError):
    """A congruence or inverse that the caller asked for does not exist."""


class CapExceededError(SpeclabError):
    """A permutation would have to be materialized on too many points."""


class AdmissibilityError(SpeclabError, ValueError):
    """A polynomial fails the nonnegative / unit-sum conditions."""


class NotCommutingError(SpeclabError, ValueError):
    """Two maps that are required to commute do not."""


class SpecFileError(SpeclabError, ValueError):
    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
