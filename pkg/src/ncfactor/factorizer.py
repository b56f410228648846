"""Factorization of non-commutative polynomials into atoms.

A factorization p = q1 q2 with factors of rank n1, n2 corresponds to a
pre-standard admissible transformation producing an upper right zero block
of size (n1 - 1) x (n2 - 1) in the system matrix of a minimal pre-standard
system for p.  For each split index k the block entries, expanded in the
transformation unknowns, generate a commutative ideal I_k; a rational
solution point yields the transformation, the transformed system splits
into the two factor systems, and recursion produces the atoms.

A trivial I_k rules the split out even over the algebraic closure; a
nontrivial I_k without a rational point means the input splits over the
closure but not over Q, which is reported as an atom with a caveat.
Dimension-2 inputs are atoms outright: two non-unit factors would have
ranks >= 2 and multiply to rank >= 3.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import als as als_mod
from .algebra import Alphabet, NcPolynomial, as_fraction
from .als import AdmissibleTransformation, Als, PreStandardAls
from .errors import CertificateError, PreStandardError
from .groebner import IdealBasis, PolyRing, buchberger, rational_points

ATOM = "atom"
REDUCIBLE = "reducible"
SPLITS_OVER_CLOSURE = "splits-over-closure"

STATUS_TRIVIAL = "trivial"
STATUS_POINT = "rational-point"
STATUS_CLOSURE = "nontrivial-no-rational-point"


def search_ring(n: int) -> PolyRing:
    """Unknowns of the transformation ansatz, alpha block then beta block."""
    names = [f"a{i}_{j}" for i in range(1, n) for j in range(i + 1, n)]
    names += [f"b{i}_{j}" for i in range(2, n) for j in range(i + 1, n + 1)]
    return PolyRing(names)


def build_ideal(s: PreStandardAls, k: int):
    """Generators of I_k: the symbolic entries of the upper right
    k x (n-1-k) block of PAQ, one per (symbol, i, j) with nonzero content.

    P is unit upper triangular with zero last column above the diagonal,
    Q unit upper triangular with zero first row off the diagonal, so every
    generator has degree at most two (bilinear in alpha, beta).
    """
    n = s.n
    if n < 3:
        raise ValueError("ideal construction needs dimension >= 3")
    if not 1 <= k <= n - 2:
        raise ValueError("split index must lie in 1..n-2")
    if not s.is_pre_standard():
        raise PreStandardError("ideal construction needs a pre-standard system")
    ring = search_ring(n)
    gens = []
    for mat in s.mats:
        rows = []
        for i in range(k):
            row = []
            for j in range(n):
                e = ring.const(mat[i][j])
                for l in range(i + 1, n - 1):
                    if mat[l][j]:
                        e = e + ring.var(f"a{i + 1}_{l + 1}") * mat[l][j]
                row.append(e)
            rows.append(row)
        for i in range(k):
            for j in range(k + 1, n):
                e = rows[i][j]
                for m in range(1, j):
                    if rows[i][m].terms:
                        e = e + rows[i][m] * ring.var(f"b{m + 1}_{j + 1}")
                if e.terms:
                    gens.append(e)
    return gens


def transformation_from_point(n: int, point) -> AdmissibleTransformation:
    """Build the (P, Q) pair of the ansatz from a solution point."""
    p = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    q = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for i in range(1, n):
        for j in range(i + 1, n):
            p[i - 1][j - 1] = as_fraction(point.get(f"a{i}_{j}", 0))
    for i in range(2, n):
        for j in range(i + 1, n + 1):
            q[i - 1][j - 1] = as_fraction(point.get(f"b{i}_{j}", 0))
    return AdmissibleTransformation(p, q)


def split_at(s: PreStandardAls, t: AdmissibleTransformation, k: int):
    """Split PAQ with a verified zero block at k into the two factor systems.

    Returns pre-standard systems of dimensions k+1 and n-k whose solved
    polynomials multiply to the solved polynomial of s.
    """
    n = s.n
    b = als_mod.apply_transformation(s, t)
    for mat in b.mats:
        for i in range(k):
            for j in range(k + 1, n):
                if mat[i][j]:
                    raise CertificateError(
                        "transformation does not produce the claimed zero block"
                    )
    if b.rhs != s.rhs:
        raise CertificateError("transformation moved the right-hand side")
    d1 = len(s.mats)
    f_mats = []
    g_mats = []
    for ell in range(d1):
        mat = b.mats[ell]
        f = [[mat[i][j] for j in range(k + 1)] for i in range(k)]
        f.append([Fraction(0)] * k + [Fraction(1 if ell == 0 else 0)])
        f_mats.append(f)
        g = [[Fraction(1 if ell == 0 else 0)] + [mat[k][j] for j in range(k + 1, n)]]
        for i in range(k + 1, n):
            g.append([Fraction(0)] + [mat[i][j] for j in range(k + 1, n)])
        g_mats.append(g)
    f_sys = PreStandardAls(s.alphabet, f_mats, [Fraction(0)] * k + [Fraction(1)])
    g_sys = PreStandardAls(s.alphabet, g_mats, [Fraction(0)] + s.rhs[k + 1 :])
    if __debug__:
        assert als_mod.solve(f_sys) * als_mod.solve(g_sys) == als_mod.solve(s)
    return f_sys, g_sys


@dataclass
class AtomDecision:
    kind: str  # ATOM | REDUCIBLE | SPLITS_OVER_CLOSURE
    k: int | None = None
    point: dict | None = None
    statuses: dict = field(default_factory=dict)  # probed k -> status string


def _probe(s: PreStandardAls, k: int):
    """(status, point-or-None, basis-or-None) of the ideal at split index k."""
    gens = build_ideal(s, k)
    if not gens:
        # block already identically zero: the zero assignment works
        ring = search_ring(s.n)
        return STATUS_POINT, {name: Fraction(0) for name in ring.variables}, None
    basis = buchberger(gens)
    if basis.is_trivial():
        return STATUS_TRIVIAL, None, basis
    points = rational_points(basis)
    if points:
        return STATUS_POINT, points[0], basis
    return STATUS_CLOSURE, None, basis


def is_atom(s: PreStandardAls, jobs: int = 1, trace=None, node: str = "root") -> AtomDecision:
    """Sweep k = 1..n-2 ascending; the first rational point wins.

    All ideals trivial means atom; a nontrivial ideal without rational
    points anywhere means the system splits over the algebraic closure
    only.  Dimension <= 2 is an atom without any ideal construction.
    """
    if s.n <= 2:
        return AtomDecision(ATOM)
    ks = range(1, s.n - 1)
    statuses = {}
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda k: (k, _probe(s, k)), ks))
    else:
        results = []
        for k in ks:
            result = (k, _probe(s, k))
            results.append(result)
            if result[1][0] == STATUS_POINT:
                break
    decision = None
    for k, (status, point, basis) in results:
        statuses[k] = status
        if trace is not None:
            trace.append(
                {
                    "node": node,
                    "k": k,
                    "status": status,
                    "basis": None if basis is None else [str(g) for g in basis],
                }
            )
        if status == STATUS_POINT and decision is None:
            decision = AtomDecision(REDUCIBLE, k=k, point=point, statuses=statuses)
    if decision is not None:
        return decision
    if any(v == STATUS_CLOSURE for v in statuses.values()):
        return AtomDecision(SPLITS_OVER_CLOSURE, statuses=statuses)
    return AtomDecision(ATOM, statuses=statuses)


# ------------------------------------------------------------- certificates


@dataclass
class AtomEntry:
    poly: NcPolynomial
    als: PreStandardAls
    status: str  # ATOM | SPLITS_OVER_CLOSURE

    @property
    def rank(self) -> int:
        return self.als.n


@dataclass
class FactorizationCertificate:
    input: NcPolynomial
    rank: int
    unit: Fraction
    atoms: list
    ideal_status: dict
    product_check: bool
    split_positions: tuple = ()

    def product(self) -> NcPolynomial:
        acc = NcPolynomial.constant(self.input.alphabet, self.unit)
        for entry in self.atoms:
            acc = acc * entry.poly
        return acc

    def to_dict(self) -> dict:
        return {
            "input": str(self.input),
            "alphabet": list(self.input.alphabet.letters),
            "rank": self.rank,
            "unit": str(self.unit),
            "atoms": [
                {
                    "poly": str(e.poly),
                    "rank": e.rank,
                    "status": e.status,
                    "als": e.als.to_dict(),
                }
                for e in self.atoms
            ],
            "ideal_status": {node: status for node, status in sorted(self.ideal_status.items())},
            "product_check": self.product_check,
            "split_positions": list(self.split_positions),
        }

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def _normalize_units(entries):
    """Scale every atom so its deglex-least word has coefficient 1, pushing
    the accumulated unit into the last factor.  Scalars are central, so the
    ordered product is unchanged."""
    carry = Fraction(1)
    out = []
    for i, entry in enumerate(entries):
        if i < len(entries) - 1:
            c = entry.poly.terms[entry.poly.min_word()]
            if c != 1:
                carry *= c
                entry = AtomEntry(
                    entry.poly.scale(1 / c), als_mod.scale(entry.als, 1 / c), entry.status
                )
        elif carry != 1:
            entry = AtomEntry(
                entry.poly.scale(carry), als_mod.scale(entry.als, carry), entry.status
            )
        out.append(entry)
    return out


def _recurse(s: PreStandardAls, node: str, statuses: dict, jobs: int, trace):
    if s.n <= 2:
        statuses[node] = STATUS_TRIVIAL
        return [AtomEntry(als_mod.solve(s), s, ATOM)]
    decision = is_atom(s, jobs=jobs, trace=trace, node=node)
    if decision.kind == REDUCIBLE:
        statuses[node] = STATUS_POINT
        t = transformation_from_point(s.n, decision.point)
        f_sys, g_sys = split_at(s, t, decision.k)
        left = _recurse(f_sys, node + ".0", statuses, jobs, trace)
        right = _recurse(g_sys, node + ".1", statuses, jobs, trace)
        return left + right
    if decision.kind == SPLITS_OVER_CLOSURE:
        statuses[node] = STATUS_CLOSURE
        return [AtomEntry(als_mod.solve(s), s, SPLITS_OVER_CLOSURE)]
    statuses[node] = STATUS_TRIVIAL
    return [AtomEntry(als_mod.solve(s), s, ATOM)]


def factor(p: NcPolynomial, jobs: int = 1, trace=None) -> FactorizationCertificate:
    """Factor p into atoms with a verified certificate.

    The product of the returned atoms times the unit equals p exactly;
    this is asserted before the certificate is returned, never skipped.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.is_constant():
        return FactorizationCertificate(
            input=p,
            rank=1,
            unit=p.constant_term(),
            atoms=[],
            ideal_status={"root": "unit"},
            product_check=True,
        )
    base = als_mod.from_poly(p)
    statuses = {}
    entries = _normalize_units(_recurse(base, "root", statuses, jobs, trace))
    cert = FactorizationCertificate(
        input=p,
        rank=base.n,
        unit=Fraction(1),
        atoms=entries,
        ideal_status=statuses,
        product_check=False,
    )
    if cert.product() != p:
        raise CertificateError("product of atoms does not reproduce the input")
    cert.product_check = True
    return cert


def enumerate_factorizations(p: NcPolynomial, jobs: int = 1):
    """All factorizations reachable through distinct zero-block structures.

    At each node every split index with a rational point is explored (first
    point per index); results are deduplicated by their normalized atom
    tuple.  The number of distinct split-position sets is bounded by
    2^(rank - 2).
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.is_constant():
        return [factor(p)]
    base = als_mod.from_poly(p)

    def rec(s: PreStandardAls, offset: int):
        if s.n <= 2:
            return [([AtomEntry(als_mod.solve(s), s, ATOM)], frozenset())]
        out = []
        found = False
        closure_seen = False
        for k in range(1, s.n - 1):
            status, point, _ = _probe(s, k)
            if status == STATUS_TRIVIAL:
                continue
            if status == STATUS_CLOSURE:
                closure_seen = True
                continue
            found = True
            t = transformation_from_point(s.n, point)
            f_sys, g_sys = split_at(s, t, k)
            for f_entries, f_pos in rec(f_sys, offset):
                for g_entries, g_pos in rec(g_sys, offset + k):
                    out.append((f_entries + g_entries, f_pos | g_pos | {offset + k}))
        if not found:
            status = SPLITS_OVER_CLOSURE if closure_seen else ATOM
            return [([AtomEntry(als_mod.solve(s), s, status)], frozenset())]
        return out

    certs = []
    seen = set()
    for entries, positions in rec(base, 0):
        normalized = _normalize_units(entries)
        key = tuple(str(e.poly) for e in normalized)
        if key in seen:
            continue
        seen.add(key)
        cert = FactorizationCertificate(
            input=p,
            rank=base.n,
            unit=Fraction(1),
            atoms=normalized,
            ideal_status={},
            product_check=False,
            split_positions=tuple(sorted(positions)),
        )
        if cert.product() != p:
            raise CertificateError("product of atoms does not reproduce the input")
        cert.product_check = True
        certs.append(cert)
    return certs


# ---------------------------------------------------------------- verification


def verify_certificate(data: dict):
    """Re-check a serialized certificate; returns (ok, list of problems)."""
    from .hankel import hankel_rank
    from .parsing import parse_poly

    problems = []
    try:
        alphabet = Alphabet(data["alphabet"])
        input_poly = parse_poly(data["input"], alphabet)
        unit = Fraction(data["unit"])
        atom_data = data["atoms"]
    except (KeyError, ValueError, TypeError) as exc:
        return False, [f"malformed certificate: {exc}"]
    if input_poly.is_zero():
        return False, ["certificate input is the zero polynomial"]
    if not atom_data and not input_poly.is_constant():
        problems.append("empty atom list for a non-constant input")
    product = NcPolynomial.constant(alphabet, unit)
    for idx, entry in enumerate(atom_data):
        label = f"atom {idx + 1}"
        try:
            poly = parse_poly(entry["poly"], alphabet)
            system = Als.from_dict(entry["als"])
            system = PreStandardAls(system.alphabet, system.mats, system.rhs)
            status = entry["status"]
        except (KeyError, ValueError, TypeError, PreStandardError) as exc:
            problems.append(f"{label}: malformed entry: {exc}")
            continue
        if als_mod.solve(system) != poly:
            problems.append(f"{label}: system does not solve to the stated polynomial")
            continue
        if system.n != entry.get("rank"):
            problems.append(f"{label}: stated rank {entry.get('rank')} != dim {system.n}")
        decision = is_atom(system)
        expected = ATOM if decision.kind == ATOM else (
            SPLITS_OVER_CLOSURE if decision.kind == SPLITS_OVER_CLOSURE else REDUCIBLE
        )
        if expected == REDUCIBLE:
            problems.append(f"{label}: not an atom (reducible at k={decision.k})")
        elif expected != status:
            problems.append(f"{label}: status {status!r} should be {expected!r}")
        product = product * poly
    if product != input_poly:
        problems.append(
            f"product mismatch: atoms multiply to {product}, input is {input_poly}"
        )
    stated_rank = data.get("rank")
    true_rank = hankel_rank(input_poly)
    if stated_rank != true_rank:
        problems.append(f"stated rank {stated_rank} != hankel rank {true_rank}")
    return not problems, problems
