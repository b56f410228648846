"""Admissible linear systems and their rational operations.

An admissible linear system (ALS) for an element f is a triple (u, A, v)
with u = e1, a linear pencil A = A0 + A1*x1 + ... + Ad*xd of exact rational
matrices, and a rational column v; f is the first component of the solution
of A s = v.  The dimension-0 system encodes the zero element.

A *pre-standard* system additionally has a unit upper triangular pencil
(A0 unit upper triangular, every letter matrix strictly upper triangular)
and right-hand side supported in the last entry only.  Back substitution is
well defined on any system with a triangular pencil, whatever the shape of
the right-hand side; such "almost pre-standard" systems occur naturally as
outputs of the sum construction and are accepted wherever only
triangularity is needed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .algebra import Alphabet, NcPolynomial, as_fraction, check_same_alphabet
from .errors import PreStandardError, PreStandardizeError


class Als:
    """Admissible linear system; u = e1 is implicit."""

    __slots__ = ("alphabet", "n", "mats", "rhs")

    def __init__(self, alphabet: Alphabet, mats, rhs):
        self.alphabet = alphabet
        self.rhs = [as_fraction(x) for x in rhs]
        n = len(self.rhs)
        self.n = n
        if len(mats) != len(alphabet) + 1:
            raise ValueError("need one coefficient matrix per letter plus the constant one")
        clean = []
        for m in mats:
            if len(m) != n or any(len(row) != n for row in m):
                raise ValueError("coefficient matrix size does not match dim")
            clean.append([[as_fraction(x) for x in row] for row in m])
        self.mats = clean

    # ---------------------------------------------------------------- build

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "Als":
        return cls(alphabet, [[] for _ in range(len(alphabet) + 1)], [])

    def copy(self) -> "Als":
        return type(self)(self.alphabet, [linalg.copy_matrix(m) for m in self.mats], self.rhs[:])

    # ---------------------------------------------------------------- query

    @property
    def dim(self) -> int:
        return self.n

    def entry_poly(self, i: int, j: int) -> NcPolynomial:
        """Pencil entry (i, j), 0-based, as a polynomial (affine in letters)."""
        terms = {}
        if self.mats[0][i][j]:
            terms[()] = self.mats[0][i][j]
        for ell in range(1, len(self.mats)):
            c = self.mats[ell][i][j]
            if c:
                terms[(ell - 1,)] = c
        return NcPolynomial(self.alphabet, terms)

    def is_triangular(self) -> bool:
        """Unit upper triangular symbolic pencil."""
        a0 = self.mats[0]
        for i in range(self.n):
            if a0[i][i] != 1:
                return False
            for j in range(i):
                if a0[i][j]:
                    return False
        for m in self.mats[1:]:
            for i in range(self.n):
                for j in range(i + 1):
                    if m[i][j]:
                        return False
        return True

    def is_pre_standard(self) -> bool:
        return self.is_triangular() and all(x == 0 for x in self.rhs[:-1])

    def __eq__(self, other):
        return (
            isinstance(other, Als)
            and self.alphabet == other.alphabet
            and self.n == other.n
            and self.mats == other.mats
            and self.rhs == other.rhs
        )

    def __repr__(self):
        return f"<{type(self).__name__} dim={self.n} alphabet={','.join(self.alphabet)}>"

    # -------------------------------------------------------------- serialize

    def to_dict(self) -> dict:
        return {
            "alphabet": list(self.alphabet.letters),
            "dim": self.n,
            "matrices": [[[str(x) for x in row] for row in m] for m in self.mats],
            "u": [str(1 if i == 0 else 0) for i in range(self.n)],
            "v": [str(x) for x in self.rhs],
        }

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> "Als":
        try:
            alphabet = Alphabet(data["alphabet"])
            dim = data["dim"]
            mats = data["matrices"]
            u = [Fraction(x) for x in data["u"]]
            rhs = data["v"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed ALS data: {exc}") from exc
        if len(rhs) != dim or any(len(m) != dim for m in mats):
            raise ValueError("malformed ALS data: dim does not match matrices")
        if dim and (u[0] != 1 or any(x != 0 for x in u[1:])):
            raise ValueError("malformed ALS data: u must be the first unit vector")
        return cls(alphabet, mats, rhs)

    @classmethod
    def from_json(cls, text: str) -> "Als":
        return cls.from_dict(json.loads(text))

    def render(self) -> str:
        """Bracket layout mirroring the worked examples, dots for zeros."""
        if self.n == 0:
            return "(,,)   # zero element"
        from .parsing import format_poly

        cells = []
        for i in range(self.n):
            row = []
            for j in range(self.n):
                e = self.entry_poly(i, j)
                row.append(format_poly(e) if e else ".")
            cells.append(row)
        widths = [max(len(cells[i][j]) for i in range(self.n)) for j in range(self.n)]
        rhs_cells = [str(x) if x else "." for x in self.rhs]
        rhs_width = max(len(c) for c in rhs_cells)
        mid = (self.n - 1) // 2
        lines = []
        for i in range(self.n):
            body = "  ".join(cells[i][j].rjust(widths[j]) for j in range(self.n))
            sep = " s = " if i == mid else "     "
            lines.append(f"[ {body} ]{sep}[ {rhs_cells[i].rjust(rhs_width)} ]")
        return "\n".join(lines)


class PreStandardAls(Als):
    """ALS with unit upper triangular pencil and v = [0, ..., 0, lam]^T.

    The structural invariants are machine-checked on every construction.
    """

    def __init__(self, alphabet, mats, rhs):
        super().__init__(alphabet, mats, rhs)
        if self.n and not self.is_pre_standard():
            raise PreStandardError("system is not in pre-standard form")

    @property
    def lam(self) -> Fraction:
        return self.rhs[-1]


def zero_system(alphabet: Alphabet) -> PreStandardAls:
    """The dimension-0 system encoding the zero element."""
    return PreStandardAls(alphabet, [[] for _ in range(len(alphabet) + 1)], [])


def _require_triangular(s: Als):
    if s.n and not s.is_triangular():
        raise PreStandardError("system matrix must be unit upper triangular")


# ------------------------------------------------------------------ solving


def solve(s: Als) -> NcPolynomial:
    """First component of the solution vector, by back substitution."""
    return left_family(s)[0] if s.n else NcPolynomial.zero(s.alphabet)


def left_family(s: Als):
    """Left family s = A^{-1} v of a triangular system, as polynomials."""
    _require_triangular(s)
    n = s.n
    out = [None] * n
    for i in range(n - 1, -1, -1):
        acc = NcPolynomial.constant(s.alphabet, s.rhs[i])
        for j in range(i + 1, n):
            e = s.entry_poly(i, j)
            if e:
                acc = acc - e * out[j]
        out[i] = acc
    return out


def right_family(s: Als):
    """Right family t = u A^{-1} of a triangular system, as polynomials."""
    _require_triangular(s)
    n = s.n
    out = [None] * n
    for j in range(n):
        acc = NcPolynomial.constant(s.alphabet, 1 if j == 0 else 0)
        for i in range(j):
            e = s.entry_poly(i, j)
            if e:
                acc = acc - out[i] * e
        out[j] = acc
    return out


def family_matrix(polys):
    """Coordinate matrix of a family of polynomials, columns in deglex order."""
    from .algebra import word_key

    words = sorted({w for p in polys for w in p.terms}, key=word_key)
    index = {w: j for j, w in enumerate(words)}
    rows = []
    for p in polys:
        row = [Fraction(0)] * len(words)
        for w, c in p.terms.items():
            row[index[w]] = c
        rows.append(row)
    return words, rows


def is_minimal(s: Als) -> bool:
    """Minimality via linear independence of the left and the right family."""
    if s.n == 0:
        return True
    _, smat = family_matrix(left_family(s))
    if linalg.rank(smat) != s.n:
        return False
    _, tmat = family_matrix(right_family(s))
    return linalg.rank(tmat) == s.n


# --------------------------------------------------------- rational operations


def scale(s: Als, mu) -> Als:
    """System for mu * f; the dimension-0 zero system when mu = 0."""
    mu = as_fraction(mu)
    if not mu:
        return Als.zero(s.alphabet)
    out = s.copy()
    out.rhs = [mu * x for x in out.rhs]
    return out


def add(f: Als, g: Als) -> Als:
    """Block system for f + g."""
    check_same_alphabet(f.alphabet, g.alphabet)
    if f.n == 0:
        return g.copy()
    if g.n == 0:
        return f.copy()
    n = f.n + g.n
    mats = []
    for ell in range(len(f.mats)):
        m = linalg.zeros(n, n)
        for i in range(f.n):
            for j in range(f.n):
                m[i][j] = f.mats[ell][i][j]
            # coupling block -A_f u_f^T u_g: first column of A_f into column f.n
            m[i][f.n] = -f.mats[ell][i][0]
        for i in range(g.n):
            for j in range(g.n):
                m[f.n + i][f.n + j] = g.mats[ell][i][j]
        mats.append(m)
    rhs = f.rhs + g.rhs
    return Als(f.alphabet, mats, rhs)


def mul(f: Als, g: Als) -> Als:
    """Block system for f * g (coupling block -v_f u_g)."""
    check_same_alphabet(f.alphabet, g.alphabet)
    if f.n == 0 or g.n == 0:
        raise ValueError("product construction needs dimensions >= 1")
    n = f.n + g.n
    mats = []
    for ell in range(len(f.mats)):
        m = linalg.zeros(n, n)
        for i in range(f.n):
            for j in range(f.n):
                m[i][j] = f.mats[ell][i][j]
        if ell == 0:
            for i in range(f.n):
                m[i][f.n] = -f.rhs[i]
        for i in range(g.n):
            for j in range(g.n):
                m[f.n + i][f.n + j] = g.mats[ell][i][j]
        mats.append(m)
    rhs = [Fraction(0)] * f.n + g.rhs
    return Als(f.alphabet, mats, rhs)


def minimal_mul(p: PreStandardAls, q: PreStandardAls) -> PreStandardAls:
    """Minimal system for the product of two minimal pre-standard systems.

    Build the product block system, add lam_p times column n_p to column
    n_p + 1, then remove row and column n_p; the result has dimension
    n_p + n_q - 1 and is minimal again.
    """
    if p.n < 2 or q.n < 2:
        raise ValueError("minimal multiplication needs dimensions >= 2")
    if not (p.is_pre_standard() and q.is_pre_standard()):
        raise PreStandardError("minimal multiplication needs pre-standard inputs")
    if __debug__:
        from .hankel import hankel_rank

        assert hankel_rank(solve(p)) == p.n, "left factor system is not minimal"
        assert hankel_rank(solve(q)) == q.n, "right factor system is not minimal"
    prod = mul(p, q)
    lam_p = p.rhs[-1]
    cut = p.n - 1  # 0-based index of row/column n_p
    for m in prod.mats:
        for i in range(prod.n):
            m[i][cut + 1] += lam_p * m[i][cut]
    mats = []
    keep = [i for i in range(prod.n) if i != cut]
    for m in prod.mats:
        mats.append([[m[i][j] for j in keep] for i in keep])
    rhs = [prod.rhs[i] for i in keep]
    return PreStandardAls(p.alphabet, mats, rhs)


def inverse_constructor(f: Als) -> Als:
    """Block system of the inverse; constructor only, not back-solvable."""
    if f.n == 0:
        raise ValueError("the zero element has no inverse")
    n = f.n + 1
    mats = []
    for ell in range(len(f.mats)):
        m = linalg.zeros(n, n)
        for i in range(f.n):
            if ell == 0:
                m[i][0] = -f.rhs[i]
            for j in range(f.n):
                m[i][j + 1] = f.mats[ell][i][j]
        if ell == 0:
            m[f.n][1] = Fraction(1)  # bottom row carries u_f = e1
        mats.append(m)
    rhs = [Fraction(0)] * f.n + [Fraction(1)]
    return Als(f.alphabet, mats, rhs)


# ------------------------------------------------------------ transformations


@dataclass(frozen=True)
class AdmissibleTransformation:
    """Pair (P, Q) of invertible matrices, first row of Q equal to e1."""

    p_mat: tuple
    q_mat: tuple

    def __init__(self, p_mat, q_mat):
        p = tuple(tuple(as_fraction(x) for x in row) for row in p_mat)
        q = tuple(tuple(as_fraction(x) for x in row) for row in q_mat)
        n = len(p)
        if len(q) != n or any(len(r) != n for r in p) or any(len(r) != n for r in q):
            raise ValueError("P and Q must be square of equal size")
        if n:
            if q[0][0] != 1 or any(q[0][j] != 0 for j in range(1, n)):
                raise ValueError("first row of Q must be e1")
        if linalg.invert([list(r) for r in p]) is None:
            raise ValueError("P is not invertible")
        if linalg.invert([list(r) for r in q]) is None:
            raise ValueError("Q is not invertible")
        object.__setattr__(self, "p_mat", p)
        object.__setattr__(self, "q_mat", q)

    @property
    def dim(self):
        return len(self.p_mat)


def apply_transformation(s: Als, t: AdmissibleTransformation) -> Als:
    """The transformed system (uQ, PAQ, Pv); the represented element is unchanged."""
    if t.dim != s.n:
        raise ValueError("transformation size does not match system dimension")
    p = [list(r) for r in t.p_mat]
    q = [list(r) for r in t.q_mat]
    mats = [linalg.mat_mul(linalg.mat_mul(p, m), q) for m in s.mats]
    rhs = linalg.mat_vec(p, s.rhs)
    return Als(s.alphabet, mats, rhs)


# --------------------------------------------------------------- normalization


def _renormalize_rhs(s: Als) -> PreStandardAls:
    """Move the right-hand side into the last slot by admissible row operations."""
    if s.n == 0:
        return PreStandardAls(s.alphabet, s.mats, s.rhs)
    _require_triangular(s)
    if all(x == 0 for x in s.rhs[:-1]):
        return PreStandardAls(s.alphabet, [linalg.copy_matrix(m) for m in s.mats], s.rhs[:])
    lam = s.rhs[-1]
    if lam == 0:
        raise PreStandardizeError("right-hand side cannot be renormalized admissibly")
    out = s.copy()
    last = s.n - 1
    for i in range(last):
        if out.rhs[i]:
            # add a multiple of the last row (= e_n) to row i
            out.mats[0][i][last] -= out.rhs[i] / lam
            out.rhs[i] = Fraction(0)
    return PreStandardAls(s.alphabet, out.mats, out.rhs)


def _admissible_flag(nmats, n):
    """Columns of an admissible Q that strictly triangularizes all nmats.

    Greedy flag construction: repeatedly extend the span F by vectors every
    nmat maps into F.  The very first vector must have a nonzero first
    coordinate so Q can be corrected to have first row e1.
    """
    basis = []  # columns found so far

    def independent(vec):
        probe = [row[:] for row in zip(*basis, vec)] if basis else [[x] for x in vec]
        return linalg.rank(probe) > len(basis)

    while len(basis) < n:
        if basis:
            cols = [list(col) for col in zip(*basis)]
            left_null = linalg.nullspace([list(r) for r in zip(*cols)])
        else:
            left_null = [
                [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)
            ]
        constraint = []
        for m in nmats:
            for r in left_null:
                constraint.append([sum(r[i] * m[i][j] for i in range(n)) for j in range(n)])
        if not constraint:
            constraint = [[Fraction(0)] * n]
        kernel = linalg.nullspace(constraint)
        candidates = [v for v in kernel if independent(v)]
        if not candidates:
            return None
        if not basis:
            pick = next((v for v in candidates if v[0]), None)
            if pick is None:
                return None
            pick = [x / pick[0] for x in pick]
        else:
            pick = candidates[0]
        basis.append(pick)
    # correct later columns to zero first coordinate (upper triangular fix-up)
    q_cols = [basis[0]]
    for vec in basis[1:]:
        c = vec[0]
        q_cols.append([x - c * y for x, y in zip(vec, basis[0])])
    return [list(row) for row in zip(*q_cols)]


def pre_standardize(s: Als) -> PreStandardAls:
    """Transform an admissible system into pre-standard form.

    Triangular inputs only need the right-hand side moved into the last
    slot.  General inputs are triangularized by an admissible flag
    construction, which succeeds exactly when the letter structure is
    conjugate to a strictly upper triangular family; otherwise a
    PreStandardizeError is raised.
    """
    if s.n == 0:
        return PreStandardAls(s.alphabet, s.mats, s.rhs)
    if s.is_triangular():
        return _renormalize_rhs(s)
    n = s.n
    a0_inv = linalg.invert(s.mats[0])
    if a0_inv is None:
        raise PreStandardizeError("constant coefficient matrix is singular")
    nmats = [linalg.mat_mul(a0_inv, m) for m in s.mats[1:]]
    q = _admissible_flag(nmats, n)
    if q is None:
        raise PreStandardizeError("system cannot be triangularized admissibly")
    q_inv = linalg.invert(q)
    p = linalg.mat_mul(q_inv, a0_inv)
    mats = [linalg.mat_mul(linalg.mat_mul(p, m), q) for m in s.mats]
    rhs = linalg.mat_vec(p, s.rhs)
    out = Als(s.alphabet, mats, rhs)
    if not out.is_triangular():
        raise PreStandardizeError("system cannot be triangularized admissibly")
    return _renormalize_rhs(out)


# ------------------------------------------------------------------ companions


def _affine_entry(q: NcPolynomial):
    const, linear = q.affine_parts()
    return const, linear


def _check_rank_two(q: NcPolynomial):
    from .hankel import hankel_rank

    if hankel_rank(q) != 2:
        raise ValueError(f"companion factor must have rank 2: {q}")


def _set_affine(mats, i, j, poly: NcPolynomial, sign=1):
    const, linear = poly.affine_parts()
    mats[0][i][j] += sign * const
    for ell, c in enumerate(linear):
        if c:
            mats[ell + 1][i][j] += sign * c


def companion_left(factors, coeffs) -> PreStandardAls:
    """Left companion system for q_m...q_1 + a_{m-1} q_{m-1}...q_1 + ... + a_0.

    Every q_i must have rank 2; the result is minimal of dimension m + 1.
    """
    m = len(factors)
    if m == 0 or len(coeffs) != m:
        raise ValueError("need m >= 1 factors and exactly m tail coefficients")
    alphabet = factors[0].alphabet
    for q in factors:
        check_same_alphabet(alphabet, q.alphabet)
        _check_rank_two(q)
    coeffs = [as_fraction(a) for a in coeffs]
    n = m + 1
    mats = [linalg.zeros(n, n) for _ in range(len(alphabet) + 1)]
    for i in range(n):
        mats[0][i][i] = Fraction(1)
    _set_affine(mats, 0, 1, factors[m - 1], sign=-1)
    mats[0][0][1] -= coeffs[m - 1]
    for j in range(2, n):
        mats[0][0][j] -= coeffs[m - j]
    for r in range(2, m + 1):
        _set_affine(mats, r - 1, r, factors[m - r], sign=-1)
    rhs = [Fraction(0)] * m + [Fraction(1)]
    out = PreStandardAls(alphabet, mats, rhs)
    assert is_minimal(out), "companion system must be minimal"
    return out


def companion_right(factors, coeffs) -> PreStandardAls:
    """Right companion system for a_0 + a_1 q_1 + ... + q_1 q_2 ... q_m."""
    m = len(factors)
    if m == 0 or len(coeffs) != m:
        raise ValueError("need m >= 1 factors and exactly m tail coefficients")
    alphabet = factors[0].alphabet
    for q in factors:
        check_same_alphabet(alphabet, q.alphabet)
        _check_rank_two(q)
    coeffs = [as_fraction(a) for a in coeffs]
    n = m + 1
    mats = [linalg.zeros(n, n) for _ in range(len(alphabet) + 1)]
    for i in range(n):
        mats[0][i][i] = Fraction(1)
    for r in range(1, m):
        _set_affine(mats, r - 1, r, factors[r - 1], sign=-1)
        mats[0][r - 1][n - 1] -= coeffs[r - 1]
    _set_affine(mats, m - 1, m, factors[m - 1], sign=-1)
    mats[0][m - 1][n - 1] -= coeffs[m - 1]
    rhs = [Fraction(0)] * m + [Fraction(1)]
    out = PreStandardAls(alphabet, mats, rhs)
    assert is_minimal(out), "companion system must be minimal"
    return out


# ------------------------------------------------------------------ from_poly


def _word_als(alphabet, word, coeff) -> PreStandardAls:
    n = len(word) + 1
    mats = [linalg.zeros(n, n) for _ in range(len(alphabet) + 1)]
    for i in range(n):
        mats[0][i][i] = Fraction(1)
    for pos, letter in enumerate(word):
        mats[letter + 1][pos][pos + 1] = Fraction(-1)
    rhs = [Fraction(0)] * (n - 1) + [as_fraction(coeff)]
    return PreStandardAls(alphabet, mats, rhs)


def stacked_from_poly(p: NcPolynomial) -> PreStandardAls:
    """Term-by-term sum system for p, pre-standard but not minimized."""
    if p.is_zero():
        return zero_system(p.alphabet)
    acc = None
    for word in p.support():
        term = _word_als(p.alphabet, word, p.terms[word])
        acc = term if acc is None else pre_standardize(add(acc, term))
    return acc


def from_poly(p: NcPolynomial) -> PreStandardAls:
    """Minimal pre-standard system for p; dimension equals the rank of p.

    Univariate polynomials go through the left companion system; everything
    else is assembled term by term with the sum construction, minimizing as
    the terms accumulate.
    """
    from .minimizer import minimize

    alphabet = p.alphabet
    if p.is_zero():
        return zero_system(alphabet)
    if p.is_constant():
        mats = [[[Fraction(1)]]] + [[[Fraction(0)]] for _ in alphabet]
        return PreStandardAls(alphabet, mats, [p.constant_term()])
    letters_used = {i for word in p.terms for i in word}
    if len(letters_used) == 1:
        ell = letters_used.pop()
        degree = p.degree
        coeffs = [p.coeff((ell,) * i) for i in range(degree + 1)]
        top = coeffs[degree]
        letter_poly = NcPolynomial(alphabet, {(ell,): 1})
        base = companion_left([letter_poly] * degree, [c / top for c in coeffs[:degree]])
        acc = PreStandardAls(alphabet, base.mats, [x * top for x in base.rhs])
    else:
        acc = None
        for word in p.support():
            term = _word_als(alphabet, word, p.terms[word])
            acc = term if acc is None else minimize(pre_standardize(add(acc, term)))
    result = minimize(acc)
    if __debug__:
        from .hankel import hankel_rank

        assert solve(result) == p, "constructed system does not solve to its input"
        assert result.n == hankel_rank(p), "constructed system is not minimal"
    return result
