"""Exact ground layer: alphabets, words, and non-commutative polynomials.

Coefficients are arbitrary-precision rationals (`fractions.Fraction`), words
are tuples of letter indices, and term maps never store zero coefficients,
so structural equality coincides with mathematical equality.  Everything is
immutable after construction; all operations are pure functions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Rational = Fraction

#: degree of the zero polynomial
NEG_INF = float("-inf")


def as_fraction(value) -> Fraction:
    """Coerce ints, strings like ``"4/3"``, and Fractions; reject floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


class Alphabet:
    """Ordered list of distinct letter names, fixed for a whole computation."""

    __slots__ = ("letters", "_index")

    def __init__(self, letters: Iterable[str]):
        self.letters = tuple(letters)
        if not self.letters:
            raise ValueError("alphabet needs at least one letter")
        if any(not name for name in self.letters):
            raise ValueError("letter names must be non-empty")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError("letter names must be distinct")
        self._index = {name: i for i, name in enumerate(self.letters)}

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return f"Alphabet({', '.join(self.letters)})"

    def __contains__(self, name):
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown letter {name!r}") from None


#: alphabet used by examples and the CLI when none is declared
DEFAULT_ALPHABET = Alphabet(("x", "y", "z"))


def word_key(word):
    """Sort key realizing the canonical deglex order (length, then indices)."""
    return (len(word), word)


def check_same_alphabet(a: Alphabet, b: Alphabet):
    if a != b:
        raise ValueError("alphabet mismatch")


class NcPolynomial:
    """Element of the free associative algebra over Q.

    ``terms`` maps words (tuples of letter indices) to nonzero rationals;
    the zero polynomial is the empty map.
    """

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping):
        self.alphabet = alphabet
        clean = {}
        for word, coeff in terms.items():
            word = tuple(word)
            if any(not (0 <= i < len(alphabet)) for i in word):
                raise ValueError(f"letter index out of range in word {word}")
            c = as_fraction(coeff)
            if c:
                clean[word] = c
        self.terms = clean

    # ---------------------------------------------------------------- build

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "NcPolynomial":
        return cls(alphabet, {})

    @classmethod
    def constant(cls, alphabet: Alphabet, value) -> "NcPolynomial":
        return cls(alphabet, {(): as_fraction(value)})

    @classmethod
    def letter(cls, alphabet: Alphabet, name: str) -> "NcPolynomial":
        return cls(alphabet, {(alphabet.index(name),): Fraction(1)})

    @classmethod
    def monomial(cls, alphabet: Alphabet, word, coeff=1) -> "NcPolynomial":
        return cls(alphabet, {tuple(word): as_fraction(coeff)})

    # ---------------------------------------------------------------- query

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {()}

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    @property
    def degree(self):
        if not self.terms:
            return NEG_INF
        return max(len(w) for w in self.terms)

    def coeff(self, word) -> Fraction:
        return self.terms.get(tuple(word), Fraction(0))

    def support(self):
        """Support words in deglex order."""
        return sorted(self.terms, key=word_key)

    def min_word(self):
        """Deglex-least support word; None for the zero polynomial."""
        if not self.terms:
            return None
        return min(self.terms, key=word_key)

    # ----------------------------------------------------------- arithmetic

    def _coerce(self, other):
        if isinstance(other, NcPolynomial):
            check_same_alphabet(self.alphabet, other.alphabet)
            return other
        if isinstance(other, (int, Fraction)):
            return NcPolynomial.constant(self.alphabet, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for word, c in other.terms.items():
            s = terms.get(word, Fraction(0)) + c
            if s:
                terms[word] = s
            else:
                terms.pop(word, None)
        return NcPolynomial(self.alphabet, terms)

    __radd__ = __add__

    def __neg__(self):
        return NcPolynomial(self.alphabet, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                s = terms.get(word, Fraction(0)) + c1 * c2
                if s:
                    terms[word] = s
                else:
                    del terms[word]
        return NcPolynomial(self.alphabet, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = NcPolynomial.constant(self.alphabet, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def scale(self, mu) -> "NcPolynomial":
        mu = as_fraction(mu)
        if not mu:
            return NcPolynomial.zero(self.alphabet)
        return NcPolynomial(self.alphabet, {w: mu * c for w, c in self.terms.items()})

    # ------------------------------------------------------------- protocol

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NcPolynomial.constant(self.alphabet, other)
        if not isinstance(other, NcPolynomial):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        from .parsing import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"NcPolynomial({self})"

    # ------------------------------------------------------------- helpers

    def affine_parts(self):
        """Split into (constant, letter coefficient list) for pencil entries.

        Raises ValueError when the polynomial has a word of length > 1.
        """
        const = Fraction(0)
        linear = [Fraction(0)] * len(self.alphabet)
        for word, c in self.terms.items():
            if len(word) == 0:
                const = c
            elif len(word) == 1:
                linear[word[0]] = c
            else:
                raise ValueError("entry is not affine in the letters")
        return const, linear
