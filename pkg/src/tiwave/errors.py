"""Exception hierarchy.

Everything raised deliberately by the package derives from
:class:`WaveletError`, so callers (the CLI in particular) can map the whole
family onto a usage/domain exit code.
"""


class WaveletError(Exception):
    pass


class DomainError(WaveletError, ValueError):
    """A parameter lies outside the range where a construction is defined."""


class ValueFieldError(WaveletError, ArithmeticError):
    """An exact result left the field it was supposed to live in.

    ``value`` carries the exact quantity that could not be represented.
    """

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class UnboundedSupportError(WaveletError, ValueError):
    pass


class SupportTouchesOriginError(WaveletError, ValueError):
    pass


class NotVerifiedError(WaveletError):
    """Classification was requested for a function that is not a wavelet."""


class UnsupportedPhaseError(WaveletError, ValueError):
    """Complex (non-real) frequency values were supplied."""


class AmplitudeFieldError(WaveletError, ValueError):
    pass
