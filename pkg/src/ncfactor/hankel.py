"""Hankel matrix of a polynomial and its exact rank.

This is the independent minimality oracle: the rank of a polynomial (the
dimension of any minimal linear representation) equals the rank of its
Hankel matrix, whose (w1, w2) entry is the coefficient of the word w1*w2.

Rows and columns are truncated at word length deg(p): a longer index can
only produce a zero row or column, which never changes the rank.  Only the
prefixes (rows) and suffixes (columns) of support words are materialized;
every other row or column is identically zero and is pruned the same way
the worked examples drop them.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .algebra import NcPolynomial, word_key


class HankelMatrix:
    __slots__ = ("alphabet", "row_words", "col_words", "entries")

    def __init__(self, alphabet, row_words, col_words, entries):
        self.alphabet = alphabet
        self.row_words = row_words
        self.col_words = col_words
        self.entries = entries

    @property
    def shape(self):
        return (len(self.row_words), len(self.col_words))

    def rank(self) -> int:
        return linalg.rank(self.entries)

    def render(self) -> str:
        """Word-labelled layout with dots for zero entries."""
        from .parsing import format_word

        def label(word):
            return format_word(word, self.alphabet) if word else "1"

        row_labels = [label(w) for w in self.row_words]
        col_labels = [label(w) for w in self.col_words]
        cells = [[str(e) if e else "." for e in row] for row in self.entries]
        widths = [
            max([len(col_labels[j])] + [len(cells[i][j]) for i in range(len(cells))])
            for j in range(len(col_labels))
        ]
        head_width = max((len(r) for r in row_labels), default=1)
        lines = [
            " " * head_width
            + "   "
            + "  ".join(col_labels[j].rjust(widths[j]) for j in range(len(col_labels)))
        ]
        for i, row_label in enumerate(row_labels):
            lines.append(
                row_label.rjust(head_width)
                + " [ "
                + "  ".join(cells[i][j].rjust(widths[j]) for j in range(len(col_labels)))
                + " ]"
            )
        return "\n".join(lines)


def hankel_matrix(p: NcPolynomial) -> HankelMatrix:
    """Degree-truncated Hankel matrix without zero rows or columns."""
    prefixes = set()
    suffixes = set()
    for word in p.terms:
        for cut in range(len(word) + 1):
            prefixes.add(word[:cut])
            suffixes.add(word[cut:])
    row_words = sorted(prefixes, key=word_key)
    col_words = sorted(suffixes, key=word_key)
    entries = [
        [p.terms.get(r + c, Fraction(0)) for c in col_words] for r in row_words
    ]
    return HankelMatrix(p.alphabet, row_words, col_words, entries)


def hankel_rank(p: NcPolynomial) -> int:
    """Exact rank of p over Q; 0 for the zero polynomial."""
    if p.is_zero():
        return 0
    return hankel_matrix(p).rank()
