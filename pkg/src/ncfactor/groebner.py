"""Commutative polynomial arithmetic over Q, Buchberger's algorithm with
lexicographic order, and rational solution points of the resulting bases.

This is the solver behind the factorization search.  The ideals it sees are
generated by polynomials of degree at most two in the transformation
unknowns, with a fixed variable order, so a plain Buchberger loop with the
coprime-pair criterion and full inter-reduction is enough at desk scale.
Point extraction back-solves the lexicographic basis branch by branch over
the rational roots of univariate generators; free variables follow a
zero-first policy with a small retry ladder.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .algebra import as_fraction
from .errors import NonTriangularIdealError

#: when set, every basis computed by :func:`buchberger` re-checks its own
#: postconditions (inputs and S-polynomials reduce to zero) before returning
SELF_CHECK = False

#: free-variable retry ladder, tried in order until a point is found
DEFAULT_LADDER = (
    Fraction(0),
    Fraction(1),
    Fraction(-1),
    Fraction(1, 2),
    Fraction(-1, 2),
    Fraction(2),
    Fraction(-2),
    Fraction(3),
    Fraction(-3),
)


class PolyRing:
    """Q[v_1, ..., v_m] with pure lex order following the declared order."""

    __slots__ = ("variables", "_index")

    def __init__(self, variables):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be distinct")
        self._index = {v: i for i, v in enumerate(self.variables)}

    @property
    def nvars(self):
        return len(self.variables)

    def index(self, name):
        return self._index[name]

    def zero(self):
        return CommPolynomial(self, {})

    def const(self, value):
        value = as_fraction(value)
        return CommPolynomial(self, {(): value} if value else {})

    def var(self, name):
        expo = [0] * self.nvars
        expo[self.index(name)] = 1
        return CommPolynomial(self, {tuple(expo): Fraction(1)})

    def poly(self, terms):
        return CommPolynomial(self, terms)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.variables == other.variables

    def __hash__(self):
        return hash(self.variables)

    def __repr__(self):
        return f"PolyRing({', '.join(self.variables)})"


def _pad(expo, nvars):
    expo = tuple(expo)
    if len(expo) == nvars:
        return expo
    if len(expo) < nvars:
        return expo + (0,) * (nvars - len(expo))
    raise ValueError("exponent vector longer than variable list")


class CommPolynomial:
    """Polynomial with exact rational coefficients; lex leading term."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms):
        self.ring = ring
        clean = {}
        for expo, coeff in terms.items():
            expo = _pad(expo, ring.nvars) if expo else (0,) * ring.nvars
            c = as_fraction(coeff)
            if c:
                clean[expo] = c
        self.terms = clean

    # ----------------------------------------------------------------- query

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def lm(self):
        """Leading monomial under lex (largest exponent tuple)."""
        return max(self.terms)

    def lc(self):
        return self.terms[self.lm()]

    def variables_used(self):
        used = set()
        for expo in self.terms:
            for i, e in enumerate(expo):
                if e:
                    used.add(i)
        return used

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    # ------------------------------------------------------------ arithmetic

    def _coerce(self, other):
        if isinstance(other, CommPolynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return CommPolynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return CommPolynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = as_fraction(other)
            return CommPolynomial(self.ring, {e: c * v for e, v in self.terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, Fraction(0)) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return CommPolynomial(self.ring, terms)

    __rmul__ = __mul__

    def monic(self):
        if not self.terms:
            return self
        lc = self.lc()
        if lc == 1:
            return self
        return CommPolynomial(self.ring, {e: c / lc for e, c in self.terms.items()})

    def substitute(self, assignment):
        """Partial substitution; ``assignment`` maps variable names to rationals."""
        idx = {self.ring.index(name): as_fraction(v) for name, v in assignment.items()}
        terms = {}
        for expo, coeff in self.terms.items():
            c = coeff
            new = list(expo)
            for i, value in idx.items():
                if expo[i]:
                    c *= value ** expo[i]
                    new[i] = 0
            if c:
                e = tuple(new)
                s = terms.get(e, Fraction(0)) + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return CommPolynomial(self.ring, terms)

    def evaluate(self, assignment) -> Fraction:
        value = self.substitute(assignment)
        if not value.is_constant():
            missing = [self.ring.variables[i] for i in value.variables_used()]
            raise ValueError(f"evaluation left free variables: {missing}")
        return value.terms.get((0,) * self.ring.nvars, Fraction(0))

    # -------------------------------------------------------------- protocol

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, CommPolynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.variables
        pieces = []
        for expo in sorted(self.terms, reverse=True):
            c = self.terms[expo]
            mono = "*".join(
                (names[i] if e == 1 else f"{names[i]}^{e}")
                for i, e in enumerate(expo)
                if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not pieces:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(pieces)

    def __repr__(self):
        return f"CommPolynomial({self})"


# ------------------------------------------------------------------ division


def _divides(e1, e2):
    return all(a <= b for a, b in zip(e1, e2))


def _mono_div(e1, e2):
    return tuple(a - b for a, b in zip(e1, e2))


def _mono_lcm(e1, e2):
    return tuple(max(a, b) for a, b in zip(e1, e2))


def reduce_poly(f: CommPolynomial, basis) -> CommPolynomial:
    """Full remainder of f on division by the family ``basis``."""
    ring = f.ring
    work = dict(f.terms)
    remainder = {}
    lead = [(g.lm(), g.lc(), g) for g in basis if g.terms]
    while work:
        expo = max(work)
        coeff = work.pop(expo)
        for glm, glc, g in lead:
            if _divides(glm, expo):
                shift = _mono_div(expo, glm)
                factor = coeff / glc
                for ge, gc in g.terms.items():
                    e = tuple(a + b for a, b in zip(ge, shift))
                    if e == expo:
                        continue
                    s = work.get(e, Fraction(0)) - factor * gc
                    if s:
                        work[e] = s
                    else:
                        work.pop(e, None)
                break
        else:
            remainder[expo] = coeff
    return CommPolynomial(ring, remainder)


def s_polynomial(f: CommPolynomial, g: CommPolynomial) -> CommPolynomial:
    lcm = _mono_lcm(f.lm(), g.lm())
    mf = CommPolynomial(f.ring, {_mono_div(lcm, f.lm()): 1 / f.lc()})
    mg = CommPolynomial(g.ring, {_mono_div(lcm, g.lm()): 1 / g.lc()})
    return mf * f - mg * g


@dataclass(frozen=True)
class IdealBasis:
    """Generator list; ``reduced`` marks the unique reduced Groebner basis."""

    generators: tuple
    reduced: bool = True

    def is_trivial(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


def buchberger(gens) -> IdealBasis:
    """Reduced lex Groebner basis of the ideal generated by ``gens``.

    Normal pair selection (lowest lcm degree first) with the coprime
    criterion; every returned generator is monic and fully reduced against
    the others, so the output is unique for a given input ideal and
    variable order.
    """
    gens = [g for g in gens if g.terms]
    if not gens:
        return IdealBasis(())
    ring = gens[0].ring
    basis = []
    for g in gens:
        r = reduce_poly(g, basis)
        if r.terms:
            basis.append(r.monic())
    if any(g.is_constant() for g in basis):
        return IdealBasis((ring.const(1),))

    def pair_key(i, j):
        lcm = _mono_lcm(basis[i].lm(), basis[j].lm())
        return (sum(lcm), lcm)

    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    while pairs:
        i, j = min(pairs, key=lambda p: pair_key(*p))
        pairs.discard((i, j))
        fi, fj = basis[i], basis[j]
        lcm = _mono_lcm(fi.lm(), fj.lm())
        if lcm == tuple(a + b for a, b in zip(fi.lm(), fj.lm())):
            continue  # coprime leading terms
        r = reduce_poly(s_polynomial(fi, fj), basis)
        if not r.terms:
            continue
        if r.is_constant():
            return IdealBasis((ring.const(1),))
        basis.append(r.monic())
        new = len(basis) - 1
        pairs.update((k, new) for k in range(new))
    # minimalize: drop generators whose leading monomial is divisible
    basis.sort(key=lambda g: g.lm())
    minimal = []
    for g in basis:
        if not any(_divides(h.lm(), g.lm()) for h in minimal):
            minimal.append(g)
    # inter-reduce to the unique reduced basis
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        r = reduce_poly(g, others)
        if r.terms:
            reduced.append(r.monic())
    reduced.sort(key=lambda g: g.lm(), reverse=True)
    result = IdealBasis(tuple(reduced))
    if SELF_CHECK:
        verify_basis(gens, result)
    return result


def verify_basis(gens, basis: IdealBasis):
    """Assert the Buchberger postconditions for ``basis`` over ``gens``."""
    members = list(basis.generators)
    for g in gens:
        if reduce_poly(g, members).terms:
            raise AssertionError(f"input generator does not reduce to zero: {g}")
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            s = s_polynomial(members[i], members[j])
            if reduce_poly(s, members).terms:
                raise AssertionError(
                    f"S-polynomial does not reduce to zero: ({members[i]}, {members[j]})"
                )


# ------------------------------------------------------------- solution points


def univariate_rational_roots(p: CommPolynomial):
    """All rational roots of a univariate polynomial, ascending, without
    multiplicities."""
    used = p.variables_used()
    if p.is_zero() or len(used) != 1:
        raise ValueError("need a nonzero univariate polynomial")
    (var,) = used
    coeffs = {}
    for expo, c in p.terms.items():
        coeffs[expo[var]] = c
    den = 1
    for c in coeffs.values():
        den = den * c.denominator // gcd(den, c.denominator)
    ints = {e: int(c * den) for e, c in coeffs.items()}
    roots = []
    low = min(ints)
    if low > 0:  # no constant term: 0 is a root, divide it out
        roots.append(Fraction(0))
        ints = {e - low: c for e, c in ints.items()}
    lead = ints[max(ints)]
    tail = ints[0]

    def divisors(value):
        value = abs(value)
        out = [d for d in range(1, int(value**0.5) + 1) if value % d == 0]
        return sorted(set(out + [value // d for d in out]))

    candidates = set()
    for num in divisors(tail):
        for d in divisors(lead):
            candidates.add(Fraction(num, d))
            candidates.add(Fraction(-num, d))
    for cand in candidates:
        total = Fraction(0)
        for e, c in ints.items():
            total += c * cand**e
        if total == 0:
            roots.append(cand)
    return sorted(set(roots))


def _leading_variable(g: CommPolynomial):
    lm = g.lm()
    for i, e in enumerate(lm):
        if e:
            return i
    return None


def rational_points(basis: IdealBasis, ladder=DEFAULT_LADDER, verify=True):
    """Complete rational assignments annihilating the basis (and hence the
    ideal), found by branching over rational roots of univariate generators.

    Free variables (absent from the basis, or never leading) are pinned to
    the current ladder value, zero first; the next ladder value is tried
    only when the previous one yields no point.  An empty list means no
    rational point was found, which for a nontrivial ideal is a different
    outcome than triviality.
    """
    gens = [g for g in basis.generators if g.terms]
    if not gens:
        raise ValueError(
            "zero ideal: every assignment is a solution, handle upstream"
        )
    ring = gens[0].ring
    if basis.is_trivial():
        return []
    original = list(gens)
    for value in ladder:
        points = _search_points(ring, gens, value)
        if points:
            if verify:
                points = [
                    pt
                    for pt in points
                    if all(g.evaluate(pt) == 0 for g in original)
                ]
            if points:
                return points
    return []


def _search_points(ring, gens, free_value):
    points = []
    seen = set()

    def complete(assignment):
        full = dict(assignment)
        for name in ring.variables:
            full.setdefault(name, free_value)
        key = tuple(full[name] for name in ring.variables)
        if key not in seen:
            seen.add(key)
            points.append(full)

    def rec(current, assignment):
        live = [g for g in current if g.terms]
        if any(g.is_constant() for g in live):
            return
        if not live:
            complete(assignment)
            return
        univariate = [g for g in live if len(g.variables_used()) == 1]
        if univariate:
            # back-solve the lex-least variable first
            g = max(univariate, key=lambda h: min(h.variables_used()))
            (var,) = g.variables_used()
            name = ring.variables[var]
            for root in univariate_rational_roots(g):
                sub = [h.substitute({name: root}) for h in live]
                rec(buchberger(sub).generators, {**assignment, name: root})
            return
        leading = {_leading_variable(g) for g in live}
        used = set()
        for g in live:
            used |= g.variables_used()
        free = sorted(v for v in used if v not in leading)
        if not free:
            raise NonTriangularIdealError(
                "no univariate generator and no free variable after specialization"
            )
        name = ring.variables[free[-1]]  # lex-least free variable
        sub = [h.substitute({name: free_value}) for h in live]
        rec(buchberger(sub).generators, {**assignment, name: free_value})

    rec(list(gens), {})
    return points
