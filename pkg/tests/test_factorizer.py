import random

import pytest
from fractions import Fraction as F

import paper_systems as ps
from ncfactor import als as A
from ncfactor import factorizer as FZ
from ncfactor.algebra import NcPolynomial
from ncfactor.errors import CertificateError
from ncfactor.groebner import buchberger, rational_points, reduce_poly, s_polynomial
from ncfactor.hankel import hankel_rank
from ncfactor.parsing import parse_poly

from randpolys import random_poly, random_rank_three_atom, random_rank_two

AB = ps.AB_XY
X = NcPolynomial.letter(AB, "x")
Y = NcPolynomial.letter(AB, "y")
P5 = parse_poly("x*y*x*y*x - 4*x*y*x + 3*x", AB)


def paper_18_equations(ring):
    """The printed six equations each for y, x and 1 in the block search."""
    v = ring.var
    third = F(1, 3)
    four_thirds = F(4, 3)
    eq_y = [
        v("a1_2") * v("b3_5") + v("a1_4"),
        v("a1_4") * v("b5_6") + v("a1_2") * v("b3_6"),
        v("b3_5") + v("a2_4"),
        v("a2_4") * v("b5_6") + v("b3_6"),
        v("a3_4"),
        v("a3_4") * v("b5_6"),
    ]
    eq_x = [
        v("a1_3") * v("b4_5") + v("b2_5"),
        v("a1_3") * v("b4_6") + v("b2_6") + third * v("a1_5") - four_thirds * v("a1_3") + ring.const(1),
        v("a2_3") * v("b4_5"),
        v("a2_3") * v("b4_6") + third * v("a2_5") - four_thirds * v("a2_3"),
        v("b4_5"),
        v("b4_6") + third * v("a3_5") - four_thirds * ring.const(1),
    ]
    eq_1 = [
        v("a1_3") * v("b3_5") + v("a1_2") * v("b2_5") + v("a1_5"),
        v("a1_5") * v("b5_6") + v("a1_4") * v("b4_6") + v("a1_3") * v("b3_6") + v("a1_2") * v("b2_6"),
        v("a2_3") * v("b3_5") + v("b2_5") + v("a2_5"),
        v("a2_5") * v("b5_6") + v("a2_4") * v("b4_6") + v("a2_3") * v("b3_6") + v("b2_6"),
        v("b3_5") + v("a3_5"),
        v("a3_5") * v("b5_6") + v("b3_6"),
    ]
    return eq_y + eq_x + eq_1


def paper_reduced_basis_strings():
    return [
        "a1_2 - a1_4*b4_6",
        "a1_3 - a1_5*b4_6",
        "a2_3 - a2_5*b4_6",
        "a2_4 + 3*b4_6 - 4",
        "a3_4",
        "a3_5 + 3*b4_6 - 4",
        "b2_5",
        "b2_6 + 1",
        "b3_5 - 3*b4_6 + 4",
        "b3_6 - 3*b4_6*b5_6 + 4*b5_6",
        "b4_5",
        "b4_6^2 - 4/3*b4_6 + 1/3",
    ]


def test_build_ideal_section52_reproduces_printed_equations():
    s = ps.s52()
    gens = FZ.build_ideal(s, 3)
    assert len(gens) == 18
    for g in gens:
        assert g.degree() <= 2
    ring = gens[0].ring
    mine = buchberger(gens)
    printed = buchberger(paper_18_equations(ring))
    assert [str(g) for g in mine] == [str(g) for g in printed]


def test_groebner_basis_matches_printed_basis():
    basis = buchberger(FZ.build_ideal(ps.s52(), 3))
    assert sorted(str(g) for g in basis) == sorted(paper_reduced_basis_strings())


def test_rational_points_section52_branches():
    basis = buchberger(FZ.build_ideal(ps.s52(), 3))
    points = rational_points(basis)
    values = sorted(pt["b4_6"] for pt in points)
    assert values == [F(1, 3), F(1)]
    gens = FZ.build_ideal(ps.s52(), 3)
    for pt in points:
        for g in gens:
            assert g.evaluate(pt) == 0


def test_buchberger_self_checks_on_section52():
    gens = FZ.build_ideal(ps.s52(), 3)
    basis = list(buchberger(gens).generators)
    for g in gens:
        assert reduce_poly(g, basis).is_zero()
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            assert reduce_poly(s_polynomial(basis[i], basis[j]), basis).is_zero()


def test_build_ideal_zero_block_already_present():
    s = ps.minmul1()
    gens = FZ.build_ideal(s, 1)
    basis = buchberger(gens)
    assert not basis.is_trivial()
    points = rational_points(basis)
    zero_point = {name: F(0) for name in gens[0].ring.variables}
    assert zero_point in points or all(
        g.evaluate(zero_point) == 0 for g in gens
    )


def test_build_ideal_xy_minus_2_is_trivial():
    s = A.from_poly(X * Y - 2)
    assert s.n == 3
    gens = FZ.build_ideal(s, 1)
    assert buchberger(gens).is_trivial()


def test_build_ideal_argument_checks():
    s = ps.s52()
    with pytest.raises(ValueError):
        FZ.build_ideal(s, 0)
    with pytest.raises(ValueError):
        FZ.build_ideal(s, 5)


def test_split_at_section52():
    s = ps.s52()
    p_mat, q_mat = ps.s52_transformation()
    t = A.AdmissibleTransformation(p_mat, q_mat)
    f_sys, g_sys = FZ.split_at(s, t, 3)
    assert f_sys == ps.ex3()
    assert g_sys == ps.ex4()
    assert A.solve(f_sys) == X * Y * X - X
    assert A.solve(g_sys) == Y * X - 3
    assert A.solve(f_sys) * A.solve(g_sys) == P5


def test_split_at_identity_on_minmul1():
    s = ps.minmul1()
    n = s.n
    ident = [[F(1 if i == j else 0) for j in range(n)] for i in range(n)]
    f_sys, g_sys = FZ.split_at(s, A.AdmissibleTransformation(ident, ident), 1)
    assert A.solve(f_sys) == X
    assert A.solve(g_sys) == 1 - Y * X
    # split then minimal multiplication reproduces element and dimension
    back = A.minimal_mul(f_sys, g_sys)
    assert back.n == s.n
    assert A.solve(back) == A.solve(s)


def test_split_at_rejects_wrong_block():
    s = ps.s52()
    n = s.n
    ident = [[F(1 if i == j else 0) for j in range(n)] for i in range(n)]
    with pytest.raises(CertificateError):
        FZ.split_at(s, A.AdmissibleTransformation(ident, ident), 3)


def test_is_atom_x2_minus_2():
    decision = FZ.is_atom(A.from_poly(X * X - 2))
    assert decision.kind == FZ.SPLITS_OVER_CLOSURE


def test_is_atom_xy_minus_2():
    decision = FZ.is_atom(A.from_poly(X * Y - 2))
    assert decision.kind == FZ.ATOM
    assert decision.statuses == {1: FZ.STATUS_TRIVIAL}


def test_is_atom_reducible_at_k1():
    decision = FZ.is_atom(A.from_poly(X - X * Y * X))
    assert decision.kind == FZ.REDUCIBLE
    assert decision.k == 1


def test_is_atom_dim2_shortcut():
    decision = FZ.is_atom(A.from_poly(X + 2 * Y - 5))
    assert decision.kind == FZ.ATOM


def test_factor_section5():
    cert = FZ.factor(P5)
    assert len(cert.atoms) == 3
    assert cert.product_check
    assert cert.product() == P5
    assert sorted(e.rank for e in cert.atoms) == [2, 3, 3]
    assert sum(e.rank - 1 for e in cert.atoms) + 1 == cert.rank == 6
    assert all(e.status == FZ.ATOM for e in cert.atoms)


def test_factor_cubic_eigenvalues():
    abx = ps.AB_X
    p = parse_poly("x^3 - 10*x^2 + 31*x - 30", abx)
    cert = FZ.factor(p)
    assert len(cert.atoms) == 3
    roots = []
    for entry in cert.atoms:
        assert entry.poly.degree == 1
        c0 = entry.poly.coeff(())
        c1 = entry.poly.coeff((0,))
        roots.append(-c0 / c1)
    assert sorted(roots) == [F(2), F(3), F(5)]
    assert cert.product() == p


def test_factor_atoms_and_units():
    cert = FZ.factor(X * Y - 2)
    assert len(cert.atoms) == 1
    assert cert.atoms[0].poly == X * Y - 2
    assert cert.ideal_status == {"root": FZ.STATUS_TRIVIAL}

    cert = FZ.factor(X * X - 2)
    assert len(cert.atoms) == 1
    assert cert.atoms[0].status == FZ.SPLITS_OVER_CLOSURE
    assert cert.ideal_status == {"root": FZ.STATUS_CLOSURE}


def test_factor_3x_minus_4xyx():
    p = 3 * X - 4 * X * Y * X
    cert = FZ.factor(p)
    assert len(cert.atoms) == 2
    assert cert.product() == p
    assert sorted(e.rank for e in cert.atoms) == [2, 3]


def test_factor_constant_is_unit_only():
    cert = FZ.factor(NcPolynomial.constant(AB, F(-7, 2)))
    assert cert.atoms == []
    assert cert.unit == F(-7, 2)
    assert cert.product_check


def test_factor_zero_rejected():
    with pytest.raises(ValueError):
        FZ.factor(NcPolynomial.zero(AB))


def test_factor_normalization_convention():
    cert = FZ.factor(P5)
    for entry in cert.atoms[:-1]:
        least = entry.poly.min_word()
        assert entry.poly.terms[least] == 1
    # unit absorbed into the final factor, certificate unit stays 1
    assert cert.unit == 1


def test_factor_jobs_parallel_same_result():
    seq = FZ.factor(P5)
    par = FZ.factor(P5, jobs=3)
    assert [str(e.poly) for e in seq.atoms] == [str(e.poly) for e in par.atoms]


def _factor_descending(s):
    """Atom count from a descending k-sweep (invariance cross-check)."""
    if s.n <= 2:
        return 1
    for k in range(s.n - 2, 0, -1):
        status, point, _ = FZ._probe(s, k)
        if status == FZ.STATUS_POINT:
            t = FZ.transformation_from_point(s.n, point)
            f_sys, g_sys = FZ.split_at(s, t, k)
            return _factor_descending(f_sys) + _factor_descending(g_sys)
    return 1


def test_atom_count_sweep_invariance():
    rng = random.Random(777)
    for _ in range(6):
        factors = [random_rank_two(rng, AB) for _ in range(rng.randint(2, 3))]
        p = factors[0]
        for q in factors[1:]:
            p = p * q
        cert = FZ.factor(p)
        assert len(cert.atoms) == _factor_descending(A.from_poly(p))


def test_certificate_roundtrip_and_verify():
    cert = FZ.factor(P5)
    data = cert.to_dict()
    ok, problems = FZ.verify_certificate(data)
    assert ok, problems

    tampered = cert.to_dict()
    tampered["atoms"][0]["poly"] = "x + 1"
    ok, problems = FZ.verify_certificate(tampered)
    assert not ok
    assert any("product mismatch" in p or "solve" in p for p in problems)

    empty = cert.to_dict()
    empty["atoms"] = []
    ok, problems = FZ.verify_certificate(empty)
    assert not ok
    assert any("empty atom list" in p for p in problems)


def test_certificate_random_products():
    rng = random.Random(2718)
    for _ in range(8):
        m = rng.randint(2, 3)
        factors = []
        for _ in range(m):
            if rng.random() < 0.6:
                factors.append(random_rank_two(rng, AB))
            else:
                factors.append(random_rank_three_atom(rng, AB))
        p = factors[0]
        for q in factors[1:]:
            p = p * q
        cert = FZ.factor(p)
        assert cert.product_check
        assert cert.product() == p
        assert len(cert.atoms) == m
        assert len(cert.atoms) <= cert.rank - 1
        assert sum(e.rank - 1 for e in cert.atoms) + 1 == cert.rank


def test_enumerate_commuting_linear_factors():
    abx = ps.AB_X
    p = parse_poly("(x-1)(x-2)(x-3)", abx)
    certs = FZ.enumerate_factorizations(p)
    rank = hankel_rank(p)
    assert rank == 4
    structures = {c.split_positions for c in certs}
    assert len(structures) <= 2 ** (rank - 2)
    for cert in certs:
        assert cert.product() == p
        assert len(cert.atoms) == 3


def test_enumerate_section5():
    certs = FZ.enumerate_factorizations(P5)
    assert certs
    structures = {c.split_positions for c in certs}
    assert len(structures) <= 2 ** (6 - 2)
    for cert in certs:
        assert cert.product() == P5
        assert len(cert.atoms) == 3
