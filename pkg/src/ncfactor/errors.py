"""Exception types shared across the engine."""


class NcfactorError(Exception):
    """Base class for errors raised by this package."""


class ParseError(NcfactorError, ValueError):
    """Syntax or semantic error in a polynomial expression.

    Carries the byte offset of the offending token.
    """

    def __init__(self, message, offset):
        super().__init__(f"{message} (offset {offset})")
        self.message = message
        self.offset = offset


class PreStandardError(NcfactorError, ValueError):
    """A system violates the required triangular / right-hand-side shape."""


class PreStandardizeError(NcfactorError, ValueError):
    """Gaussian elimination could not reach pre-standard form admissibly."""


class NonTriangularIdealError(NcfactorError, ValueError):
    """Back-solving a Groebner basis was blocked after specialization."""


class AlgorithmError(NcfactorError, RuntimeError):
    """Internal inconsistency; indicates a bug, not bad input."""


class CertificateError(NcfactorError, ValueError):
    """A factorization certificate failed verification."""
