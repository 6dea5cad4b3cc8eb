"""Exception and warning types shared across the package."""


class BoostletError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(BoostletError, ValueError):
    pass


class SamplingError(BoostletError, ValueError):
    pass


class GridMismatchError(BoostletError, ValueError):
    pass


class AliasingError(BoostletError):
    """A (warped) spectral support leaves the representable frequency band."""


class DegenerateWindowError(BoostletError):
    pass


class DegenerateReportError(BoostletError):
    pass


class DivergenceError(BoostletError, ArithmeticError):
    pass


class NearPoleError(BoostletError, ArithmeticError):
    pass


class FormatError(BoostletError, ValueError):
    """Malformed `.bsf` file, manifest or config file."""


class ResolutionWarning(UserWarning):
    pass


class TruncationWarning(UserWarning):
    pass


class DivergenceWarning(UserWarning):
    pass
