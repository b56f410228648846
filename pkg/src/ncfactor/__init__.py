"""Exact factorization of non-commutative polynomials over Q.

Polynomials in non-commuting variables are represented by admissible
linear systems; minimization, an exact Hankel-rank oracle, and a
Groebner-basis search for block-triangularizing transformations combine
into a factorization engine with verifiable certificates.
"""

from .algebra import DEFAULT_ALPHABET, Alphabet, NcPolynomial, Rational
from .errors import (
    AlgorithmError,
    CertificateError,
    NcfactorError,
    NonTriangularIdealError,
    ParseError,
    PreStandardError,
    PreStandardizeError,
)
from .hankel import hankel_matrix, hankel_rank
from .parsing import format_poly, parse_poly

__all__ = [
    "Alphabet",
    "DEFAULT_ALPHABET",
    "NcPolynomial",
    "Rational",
    "NcfactorError",
    "ParseError",
    "PreStandardError",
    "PreStandardizeError",
    "NonTriangularIdealError",
    "AlgorithmError",
    "CertificateError",
    "parse_poly",
    "format_poly",
    "hankel_rank",
    "hankel_matrix",
]
