from fractions import Fraction

import pytest

from jackcluster.exactnum import FieldElement, PoleError
from jackcluster import jackcore as jc
from jackcluster import mpoly as mp
from jackcluster.mpoly import MPoly, monomial_symmetric, substitute, vandermonde
from jackcluster.partlib import GENERIC_ALPHA, alpha_mode

A = ("alpha",)
alpha = FieldElement.gen(A, "alpha")
one = FieldElement.one(A)


def test_nonsym_base_cases():
    assert jc.jack_nonsymmetric((0, 0, 0)).poly == MPoly.const(3, A, 1)
    assert jc.jack_nonsymmetric((0, 1)).poly == MPoly.var(2, A, 2)
    want = MPoly.var(2, A, 1) + MPoly.var(2, A, 2).scale(one / (one + alpha))
    assert jc.jack_nonsymmetric((1, 0)).poly == want


@pytest.mark.parametrize("eta", [(2, 0), (0, 2), (1, 1), (2, 1), (1, 2),
                                 (2, 0, 1), (0, 2, 1), (1, 1, 2), (2, 1, 0)])
def test_walk_matches_triangular_solve(eta, ):
    assert jc.jack_nonsymmetric(eta).poly == jc.jack_nonsym_solve(eta).poly


def test_support_is_triangular():
    from jackcluster.partlib import bruhat_less
    eta = (2, 0, 1)
    E = jc.jack_nonsymmetric(eta).poly
    for nu in E.terms:
        assert nu == eta or bruhat_less(nu, eta)


def test_symmetric_small():
    P = jc.jack_symmetric((2, 0)).poly
    want = monomial_symmetric(2, A, (2, 0)) \
        + monomial_symmetric(2, A, (1, 1)).scale(one.scale_int(2) / (one + alpha))
    assert P == want
    assert jc.jack_symmetric((1, 1)).poly == monomial_symmetric(2, A, (1, 1))
    assert jc.jack_symmetric((1, 0)).poly == monomial_symmetric(2, A, (1, 0))


@pytest.mark.parametrize("kappa,N", [((2, 0), 2), ((1, 1), 2), ((3, 1, 0), 3),
                                     ((2, 2, 0), 3), ((2, 1, 1), 3)])
def test_construction_routes_agree(kappa, N):
    a = jc.jack_symmetric(kappa, N, method="cherednik").poly
    b = jc.jack_symmetric(kappa, N, method="sutherland").poly
    assert a == b


@pytest.mark.parametrize("kappa,N", [((2, 0), 2), ((2, 1, 0), 3), ((3, 2, 1), 3),
                                     ((2, 2, 1, 0), 4)])
def test_schur_oracle(kappa, N):
    assert jc.jack_symmetric(kappa, N, alpha_mode(1)).poly \
        == jc.schur_bialternant(kappa, N)


def test_stability():
    P3 = jc.jack_symmetric((2, 1, 0), 3).poly
    P4 = jc.jack_symmetric((2, 1, 0, 0), 4).poly
    assert substitute(P4, {4: (0, None)}) == P3.pad_vars(4)


def test_homogeneity_shift():
    Pa = jc.jack_symmetric((3, 2, 1), 3).poly
    Pb = jc.jack_symmetric((2, 1, 0), 3).poly
    assert Pa == MPoly.monomial(3, A, (1, 1, 1)) * Pb


def test_specialized_equals_specialization_of_generic():
    for kappa, N, value in [((3, 1, 0), 3, Fraction(1, 3)),
                            ((2, 2, 0), 3, Fraction(-5, 2))]:
        direct = jc.jack_symmetric(kappa, N, alpha_mode(value)).poly
        generic = jc.jack_symmetric(kappa, N).poly
        assert direct == jc.specialize_poly(generic, value)


def test_staircase_specialization():
    P = jc.jack_symmetric((4, 2, 0), 3, alpha_mode(-2)).poly
    assert P == vandermonde(3, ()) ** 2


def test_pole_discipline():
    jc.clear_memo()
    with pytest.raises(PoleError):
        jc.jack_symmetric((2, 0), 2, alpha_mode(-1))
    with pytest.raises(PoleError):
        jc.jack_symmetric((2, 0), 2, alpha_mode(-1), method="sutherland")


def test_antisymmetric():
    S0 = jc.jack_antisymmetric((0, 0), 2).poly
    assert S0 == vandermonde(2, A)
    S1 = jc.jack_antisymmetric((1, 0), 2).poly
    assert S1 == vandermonde(2, A) * monomial_symmetric(2, A, (1, 0))
    S11 = jc.jack_antisymmetric((1, 1), 2).poly
    assert S11 == vandermonde(2, A) * MPoly.monomial(2, A, (1, 1))
    with pytest.raises(PoleError):
        jc.jack_antisymmetric((1, 0), 2, alpha_mode(-1))


def test_basis_expand():
    f = (MPoly.var(2, A, 1) + MPoly.var(2, A, 2)) ** 2
    table = jc.jack_basis_expand(f)
    assert table[(2, 0)] == one
    assert table[(1, 1)] == one.scale_int(2) - one.scale_int(2) / (one + alpha)
    # round trip
    P = jc.jack_symmetric((2, 0)).poly
    assert jc.jack_basis_expand(P) == {(2, 0): one}


def test_binomial_coefficients():
    assert jc.binomial_coefficient((2,), (1,), 1) == FieldElement.from_int(A, 2)
    assert jc.binomial_coefficient((2,), (2,), 1) == one
    assert jc.binomial_coefficient((2,), (), 1) == one
    with pytest.raises(ValueError):
        jc.binomial_coefficient((1, 1), (2,), 2)


def test_highest_lowest_weight():
    assert jc.highest_weight_apply(vandermonde(2, ())).is_zero()
    P = jc.jack_symmetric((4, 2, 0), 3, alpha_mode(-2)).poly
    assert jc.highest_weight_apply(P).is_zero()
    assert jc.nphi_for((4, 2, 0), 3) == 4
    assert jc.lowest_weight_apply(P, 4).is_zero()
    assert not jc.lowest_weight_apply(P, 5).is_zero()
    with pytest.raises(ValueError):
        jc.nphi_for((1, 0, 0), 3)


def test_eigen_check_guards_constructions():
    E = jc.jack_nonsymmetric((2, 1)).poly
    tampered = E + MPoly.var(2, A, 2).scale(alpha)
    with pytest.raises(jc.ConstructionError):
        jc.check_nonsym_eigen(tampered, (2, 1), GENERIC_ALPHA)
