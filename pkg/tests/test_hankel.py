import random

from fractions import Fraction as F

from ncfactor.algebra import Alphabet, NcPolynomial
from ncfactor.hankel import hankel_matrix, hankel_rank
from ncfactor.parsing import parse_poly

from randpolys import random_poly

AB = Alphabet(("x", "y"))


def test_worked_matrix_exactly():
    # H(x - xyx) with rows [1, x, xy, xyx] and columns [1, x, yx, xyx]
    h = hankel_matrix(parse_poly("x - x*y*x", AB))
    x, y = 0, 1
    assert h.row_words == [(), (x,), (x, y), (x, y, x)]
    assert h.col_words == [(), (x,), (y, x), (x, y, x)]
    assert h.entries == [
        [0, 1, 0, -1],
        [1, 0, -1, 0],
        [0, -1, 0, 0],
        [-1, 0, 0, 0],
    ]
    assert h.rank() == 4


def test_rank_examples():
    assert hankel_rank(parse_poly("x - x*y*x", AB)) == 4
    assert hankel_rank(NcPolynomial.constant(AB, F(7, 3))) == 1
    assert hankel_rank(parse_poly("x*y*x*y*x - 4*x*y*x + 3*x", AB)) == 6
    assert hankel_rank(parse_poly("x^2 - 2", AB)) == 3
    assert hankel_rank(NcPolynomial.zero(AB)) == 0


def test_rank_two_family():
    assert hankel_rank(parse_poly("x + 2*y - 5", AB)) == 2
    assert hankel_rank(parse_poly("x*y - 2", AB)) == 3


def test_rank_additivity_sample():
    rng = random.Random(2024)
    for _ in range(25):
        p = random_poly(rng, AB, max_deg=3, max_terms=3)
        q = random_poly(rng, AB, max_deg=3, max_terms=3)
        assert hankel_rank(p * q) == hankel_rank(p) + hankel_rank(q) - 1


def test_render_has_word_labels():
    h = hankel_matrix(parse_poly("x - x*y*x", AB))
    out = h.render()
    assert "x*y*x" in out
    assert "." in out
