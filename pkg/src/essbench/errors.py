"""Exception hierarchy shared by every module."""


class EssBenchError(Exception):
    """Base class for all package errors."""


class DegenerateInputError(EssBenchError, ValueError):
    """Input too short or otherwise unusable for the requested estimate."""


class ZeroVarianceError(DegenerateInputError):
    pass


class InvalidIACTError(EssBenchError, ValueError):
    pass


class TooFewBatchesError(DegenerateInputError):
    pass


class NearUnitRootError(EssBenchError, ValueError):
    """Fitted AR polynomial has (numerically) a root at z = 1."""


class NonStationaryError(EssBenchError, ValueError):
    pass


class AllChainsConstantError(ZeroVarianceError):
    pass


class ChainLengthError(DegenerateInputError):
    pass


class SolverError(EssBenchError, RuntimeError):
    """Forward solver failed to converge."""


class InvalidFieldError(EssBenchError, ValueError):
    pass


class ChainFormatError(EssBenchError, ValueError):
    """Malformed chain file. ``offset`` is the byte offset where reading failed."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class MagicMismatchError(ChainFormatError):
    pass


class VersionMismatchError(ChainFormatError):
    pass


class TruncatedPayloadError(ChainFormatError):
    pass


class ConfigError(EssBenchError, ValueError):
    pass
