"""Reduction of a triangular admissible linear system to a minimal one.

One left step removes an element of a linearly dependent left family, one
right step removes an element of a dependent right family; each is found by
solving a small exact linear system read off a block decomposition of the
system matrix.  The loop alternates the two sides with the index
bookkeeping that guarantees every subfamily is re-checked after a step, and
detects the zero element when the very first left equation becomes solvable
admissibly.

The input only needs a unit upper triangular pencil; the right-hand side
may have entries anywhere ("almost pre-standard" systems, as produced by
the sum construction).  The output is strictly pre-standard, or the
dimension-0 system for the zero element.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .als import Als, PreStandardAls, _renormalize_rhs, _require_triangular, zero_system
from .errors import AlgorithmError


@dataclass
class BlockDecomposition:
    """Blocks of a system split at pivot row/column k (1-based).

    Each pencil block is a list with one matrix per symbol (constant
    first); the middle diagonal block is the scalar 1 by triangularity.
    """

    k: int
    a11: list
    a12: list
    a13: list
    a23: list
    a33: list
    v1: list
    v2: Fraction
    v3: list


def block_decomposition(s: Als, k: int) -> BlockDecomposition:
    if not 1 <= k <= s.n:
        raise ValueError("pivot out of range")
    i = k - 1
    a11, a12, a13, a23, a33 = [], [], [], [], []
    for m in s.mats:
        a11.append([row[:i] for row in m[:i]])
        a12.append([[row[i]] for row in m[:i]])
        a13.append([row[k:] for row in m[:i]])
        a23.append([m[i][k:]])
        a33.append([row[k:] for row in m[k:]])
    return BlockDecomposition(
        k=k,
        a11=a11,
        a12=a12,
        a13=a13,
        a23=a23,
        a33=a33,
        v1=s.rhs[:i],
        v2=s.rhs[i],
        v3=s.rhs[k:],
    )


@dataclass
class MinimizationSolution:
    side: str  # "left" | "right"
    k: int
    t: list
    u: list


def left_min_equations(s: Als, k: int):
    """Stacked linear system for the left step at k, unknowns [T | U].

    Rows: for every symbol the block equation U*[const] + A23 + T A33 = 0,
    then the right-hand side condition v2 + T v3 = 0; (d+1)(n-k) + 1
    equations in 2(n-k) unknowns.
    """
    if not 1 <= k < s.n:
        raise ValueError("left step needs 1 <= k < n")
    b = block_decomposition(s, k)
    w = s.n - k
    rows = []
    rhs = []
    for ell, (a23, a33) in enumerate(zip(b.a23, b.a33)):
        for j in range(w):
            row = [a33[i][j] for i in range(w)]
            row += [Fraction(1) if (ell == 0 and uj == j) else Fraction(0) for uj in range(w)]
            rows.append(row)
            rhs.append(-a23[0][j])
    rows.append(list(b.v3) + [Fraction(0)] * w)
    rhs.append(-b.v2)
    return rows, rhs


def right_min_equations(s: Als, k: int):
    """Stacked linear system for the right step at k, unknowns [T | U]."""
    if not 1 < k <= s.n:
        raise ValueError("right step needs 1 < k <= n")
    b = block_decomposition(s, k)
    w = k - 1
    rows = []
    rhs = []
    for ell, (a11, a12) in enumerate(zip(b.a11, b.a12)):
        for i in range(w):
            row = [Fraction(1) if (ell == 0 and ti == i) else Fraction(0) for ti in range(w)]
            row += [a11[i][j] for j in range(w)]
            rows.append(row)
            rhs.append(-a12[i][0])
    return rows, rhs


def solve_left(s: Als, k: int) -> MinimizationSolution | None:
    """Admissible solution of the left equations at k, or None.

    For k = 1 the transformation is admissible only with U = 0, which is
    exactly the zero-element test.
    """
    rows, rhs = left_min_equations(s, k)
    w = s.n - k
    if k == 1:
        rows = [row[:] for row in rows]
        for j in range(w):
            unit = [Fraction(0)] * (2 * w)
            unit[w + j] = Fraction(1)
            rows.append(unit)
            rhs = rhs + [Fraction(0)]
    sol = linalg.solve_free_zero(rows, rhs)
    if sol is None:
        return None
    return MinimizationSolution("left", k, sol[:w], sol[w:])


def solve_right(s: Als, k: int) -> MinimizationSolution | None:
    """Admissible solution of the right equations at k, or None.

    Solutions touching column 1 (U_1 != 0) are shifted onto the k-th row,
    which enters the same constant-coefficient equation.
    """
    rows, rhs = right_min_equations(s, k)
    w = k - 1
    sol = linalg.solve_free_zero(rows, rhs)
    if sol is None:
        return None
    t, u = sol[:w], sol[w:]
    if u[0]:
        t[0] += u[0]
        u[0] = Fraction(0)
    return MinimizationSolution("right", k, t, u)


def _drop(s: Als, k: int) -> Als:
    keep = [i for i in range(s.n) if i != k - 1]
    mats = [[[m[i][j] for j in keep] for i in keep] for m in s.mats]
    rhs = [s.rhs[i] for i in keep]
    return Als(s.alphabet, mats, rhs)


def apply_left_step(s: Als, sol: MinimizationSolution) -> Als:
    """Apply the left transformation at sol.k and remove row/column k."""
    if sol.side != "left":
        raise ValueError("left step needs a left solution")
    k = sol.k
    out = s.copy()
    i = k - 1
    for m in out.mats:
        # row k += T * rows (k+1..n); column (k+j) += U_j * column k
        for j, c in enumerate(sol.t):
            if c:
                row = m[k + j]
                mi = m[i]
                for col in range(s.n):
                    mi[col] += c * row[col]
        for j, c in enumerate(sol.u):
            if c:
                for r in range(s.n):
                    m[r][k + j] += c * m[r][i]
    for j, c in enumerate(sol.t):
        if c:
            out.rhs[i] += c * out.rhs[k + j]
    return _drop(out, k)


def apply_right_step(s: Als, sol: MinimizationSolution) -> Als:
    """Apply the right transformation at sol.k and remove row/column k."""
    if sol.side != "right":
        raise ValueError("right step needs a right solution")
    k = sol.k
    out = s.copy()
    i = k - 1
    for m in out.mats:
        # rows (1..k-1) += T_i * row k; column k += U_i * column i
        for r, c in enumerate(sol.t):
            if c:
                row_k = m[i]
                mr = m[r]
                for col in range(s.n):
                    mr[col] += c * row_k[col]
        for r, c in enumerate(sol.u):
            if c:
                for rr in range(s.n):
                    m[rr][i] += c * m[rr][r]
    for r, c in enumerate(sol.t):
        if c:
            out.rhs[r] += c * out.rhs[i]
    return _drop(out, k)


def _last_two_solution_entries(s: Als):
    """(s_{n-1}, s_n) of a triangular system, by two back-substitution steps."""
    from .algebra import NcPolynomial

    sn = NcPolynomial.constant(s.alphabet, s.rhs[-1])
    if s.n == 1:
        return None, sn
    prev = NcPolynomial.constant(s.alphabet, s.rhs[-2]) - s.entry_poly(s.n - 2, s.n - 1) * sn
    return prev, sn


def special_left_case(s: Als) -> Als:
    """Remove the last row and column when s_{n-1} = alpha * s_n, alpha != 0.

    This is the one left reduction the block equations cannot express
    admissibly; the transformation swaps and rescales the last two
    rows/columns and clears the leftover subdiagonal entry by a further row
    operation.  Raises ValueError when the pattern does not apply.
    """
    _require_triangular(s)
    n = s.n
    if n < 2:
        raise ValueError("special case needs dimension >= 2")
    s_prev, s_last = _last_two_solution_entries(s)
    if not (s_last.is_constant() and s_prev.is_constant()):
        raise ValueError("special case pattern does not apply")
    lam = s_last.constant_term()
    if lam == 0 or s_prev.is_zero():
        raise ValueError("special case pattern does not apply")
    alpha = s_prev.constant_term() / lam
    out = s.copy()
    # column n-1 of AQ gains (1/alpha) * column n
    for m in out.mats:
        for r in range(n):
            m[r][n - 2] += m[r][n - 1] / alpha
    # row n-1 of P(AQ) is alpha * row n; row n becomes old row n-1
    for m in out.mats:
        m[n - 2], m[n - 1] = [alpha * x for x in m[n - 1]], m[n - 2]
    out.rhs[n - 2], out.rhs[n - 1] = alpha * out.rhs[n - 1], out.rhs[n - 2]
    # clear the (n, n-1) remnant with the fresh row n-1
    factor = out.mats[0][n - 1][n - 2]
    if factor:
        for m in out.mats:
            m[n - 1] = [x - factor * y for x, y in zip(m[n - 1], m[n - 2])]
        out.rhs[n - 1] -= factor * out.rhs[n - 2]
    if out.mats[0][n - 1][n - 1] == 0 or out.rhs[n - 1] != 0:
        raise AlgorithmError("special left case left an inconsistent last row")
    trimmed = _drop(out, n)
    if not trimmed.is_triangular():
        raise AlgorithmError("special left case produced a non-triangular system")
    return trimmed


def _special_applies(s: Als) -> bool:
    if s.n < 2:
        return False
    s_prev, s_last = _last_two_solution_entries(s)
    return (
        s_last.is_constant()
        and s_prev.is_constant()
        and s_last.constant_term() != 0
        and not s_prev.is_zero()
    )


def minimize(s: Als, trace=None) -> PreStandardAls:
    """Minimal pre-standard system for the element represented by s.

    The result has the dimension of a minimal representation (the rank of
    the solved polynomial); the zero element comes back as the
    dimension-0 system.  ``trace``, if given, collects one dict per step.
    """
    _require_triangular(s)
    if s.n == 0:
        return zero_system(s.alphabet)
    if not any(s.rhs):
        return zero_system(s.alphabet)
    if s.rhs[-1] == 0:
        raise ValueError("minimize expects the right-hand side to end in a nonzero entry")
    work = s.copy()
    k = 2
    while k <= work.n:
        n = work.n
        kp = n + 1 - k
        sol = solve_left(work, kp)
        if sol is not None:
            if kp == 1:
                if trace is not None:
                    trace.append({"step": "zero", "k": 1, "dim": 0})
                return zero_system(s.alphabet)
            work = apply_left_step(work, sol)
            if trace is not None:
                trace.append(_event("left", sol, work.n))
            if k > 2 and 2 * k > n + 1:
                k -= 1
            continue
        if k == 2 and _special_applies(work):
            work = special_left_case(work)
            if trace is not None:
                trace.append({"step": "special-left", "k": n, "dim": work.n})
            continue
        sol = solve_right(work, k)
        if sol is not None:
            if k == n:
                # Solvable right equations at k = n mean the element is zero,
                # and zero is always caught earlier by the k' = 1 left test.
                raise AlgorithmError("right step at k = n reached for a nonzero element")
            work = apply_right_step(work, sol)
            if trace is not None:
                trace.append(_event("right", sol, work.n))
            if k > 2 and 2 * k > n + 1:
                k -= 1
            continue
        k += 1
    result = _renormalize_rhs(work)
    if trace is not None:
        trace.append({"step": "done", "dim": result.n})
    return result


def _event(side, sol, dim):
    return {
        "step": side,
        "k": sol.k,
        "T": [str(x) for x in sol.t],
        "U": [str(x) for x in sol.u],
        "dim": dim,
    }
