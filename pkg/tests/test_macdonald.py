import random
from fractions import Fraction

import pytest

from jackcluster.exactnum import FieldElement, PoleError
from jackcluster import macdonald as md
from jackcluster import jackcore as jc
from jackcluster.mpoly import MPoly, monomial_symmetric, t_vandermonde
from jackcluster.partlib import (GENERIC_QT, QtMode, alpha_mode, qt_from_alpha,
                                 qt_from_t_power)

QT = ("q", "t")
q = FieldElement.gen(QT, "q")
t = FieldElement.gen(QT, "t")
one = FieldElement.one(QT)


def zv(n, i, indets=QT):
    return MPoly.var(n, indets, i)


def _random_poly(n, seed):
    rng = random.Random(seed)
    terms = {}
    for _ in range(5):
        e = tuple(rng.randint(0, 2) for _ in range(n))
        terms[e] = FieldElement.from_int(QT, rng.randint(-3, 3))
    return MPoly(n, QT, terms)


def test_hecke_basics():
    assert md.hecke_apply(MPoly.const(2, QT, 1), 1, GENERIC_QT) \
        == MPoly.const(2, QT, 1).scale(t)
    # on z1 the whole divided-difference term cancels the t z1 piece
    assert md.hecke_apply(zv(2, 1), 1, GENERIC_QT) == zv(2, 2)
    assert md.hecke_apply(zv(2, 2), 1, GENERIC_QT) \
        == zv(2, 1).scale(t) + zv(2, 2).scale(t - one)
    f = zv(2, 1) + zv(2, 2)
    assert md.hecke_apply(f, 1, GENERIC_QT) == f.scale(t)


@pytest.mark.parametrize("seed", range(4))
def test_hecke_relations(seed):
    f = _random_poly(3, seed)

    def T(i, g):
        return md.hecke_apply(g, i, GENERIC_QT)

    assert T(1, T(2, T(1, f))) == T(2, T(1, T(2, f)))          # braid
    assert T(1, T(1, f)) == T(1, f).scale(t - one) + f.scale(t)  # quadratic
    assert md.hecke_inverse_apply(T(1, f), 1, GENERIC_QT) == f


def test_nonsym_base_cases():
    assert md.macdonald_nonsymmetric((0, 0)) == MPoly.const(2, QT, 1)
    assert md.macdonald_nonsymmetric((0, 1)) == zv(2, 2)
    c = q * (one - t) / (one - q * t)
    assert md.macdonald_nonsymmetric((1, 0)) == zv(2, 1) + zv(2, 2).scale(c)


@pytest.mark.parametrize("eta", [(2, 0), (0, 2), (1, 1), (2, 1), (1, 2),
                                 (1, 0, 1), (0, 2, 1), (2, 1, 0)])
def test_walk_matches_solve(eta):
    assert md.macdonald_nonsymmetric(eta) == md.macdonald_nonsym_solve(eta)


def test_u_operators():
    assert md.t_symmetrize(MPoly.const(2, QT, 1), "U+", GENERIC_QT) \
        == MPoly.const(2, QT, 1).scale(one + t)
    assert md.t_symmetrize(MPoly.const(2, QT, 1), "U-", GENERIC_QT).is_zero()
    f = zv(2, 1) + zv(2, 2)
    assert md.t_symmetrize(f, "U+", GENERIC_QT) == f.scale(one + t)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_u_plus_chain_matches_explicit(n):
    f = _random_poly(n, 50 + n)
    assert md._u_plus_chain(f, GENERIC_QT) == md._u_explicit(f, "U+", GENERIC_QT)


def test_t_symmetrize_decomposition_independence():
    # apply the Hecke word along two different reduced words of the longest
    # element of S_3 and compare
    f = _random_poly(3, 99)

    def T(i, g):
        return md.hecke_apply(g, i, GENERIC_QT)

    assert T(1, T(2, T(1, f))) == T(2, T(1, T(2, f)))


def test_symmetric_small():
    P = md.macdonald_symmetric((2, 0), 2)
    c = (one + q) * (one - t) / (one - q * t)
    assert P == monomial_symmetric(2, QT, (2, 0)) \
        + monomial_symmetric(2, QT, (1, 1)).scale(c)
    assert md.macdonald_symmetric((1, 1), 2) == monomial_symmetric(2, QT, (1, 1))
    assert md.macdonald_symmetric((1, 0), 2) == monomial_symmetric(2, QT, (1, 0))


@pytest.mark.parametrize("kappa,N", [((2, 0), 2), ((2, 1, 0), 3), ((2, 2, 0), 3)])
def test_hecke_route_matches_operator_route(kappa, N):
    a = md.macdonald_symmetric(kappa, N, method="operator", cross_check=False)
    b = md.macdonald_symmetric(kappa, N, method="hecke")
    assert a == b


def test_m1_eigenproblem_direct():
    for kappa, N in [((2, 0), 2), ((2, 1, 0), 3)]:
        from jackcluster.partlib import eigen_macdonald_sym
        P = md.macdonald_symmetric(kappa, N)
        assert md.m1_apply(P, GENERIC_QT) \
            == P.scale(eigen_macdonald_sym(kappa, N, GENERIC_QT))


def test_antisymmetric():
    S = md.macdonald_antisymmetric((0, 0), 2)
    assert S == t_vandermonde(2, QT, t).scale(t.inverse())
    S1 = md.macdonald_antisymmetric((1, 0), 2)
    assert S1 == t_vandermonde(2, QT, t).scale(t.inverse()) \
        * monomial_symmetric(2, QT, (1, 0))


def test_antisym_jack_limit():
    # q -> 1 along t = q^(1/alpha) turns the q,t antisymmetric family into
    # Delta(z) P_kappa(z; alpha/(1+alpha))
    S = md.macdonald_antisymmetric((1, 0), 2)
    got = md.jack_limit(S, GENERIC_QT)
    want = jc.jack_antisymmetric((1, 0), 2).poly
    assert got == want


def test_jack_limit_coefficient():
    c = (one + q) * (one - t) / (one - q * t)
    alpha = FieldElement.gen(("alpha",), "alpha")
    onea = FieldElement.one(("alpha",))
    assert md._q1_limit_coeff_symbolic(c) == onea.scale_int(2) / (onea + alpha)
    assert md._q1_limit_coeff_symbolic(one) == onea
    assert md._q1_limit_coeff_symbolic((one - q) / (one - q)) == onea


@pytest.mark.parametrize("kappa,N", [((2, 0), 2), ((1, 1, 0), 3), ((2, 1, 0), 3)])
def test_jack_limit_of_symmetric_family(kappa, N):
    assert md.jack_limit(md.macdonald_symmetric(kappa, N), GENERIC_QT) \
        == jc.jack_symmetric(kappa, N).poly


@pytest.mark.parametrize("eta", [(1, 0), (0, 2), (1, 1, 0)])
def test_jack_limit_of_nonsymmetric_family(eta):
    assert md.jack_limit(md.macdonald_nonsymmetric(eta), GENERIC_QT) \
        == jc.jack_nonsymmetric(eta).poly


def test_p_encoded_limit():
    enc = qt_from_t_power(Fraction(-1, 2))
    P = md.macdonald_symmetric((2, 0), 2, enc)
    lim = md.jack_limit(P, enc)
    assert lim == jc.specialize_poly(jc.jack_symmetric((2, 0), 2).poly,
                                     Fraction(-2))


def test_schur_at_q_equals_t():
    from jackcluster.partlib import partitions_of
    for N in range(1, 5):
        for d in range(0, 7):
            for kappa in partitions_of(d, N):
                P = md.macdonald_symmetric(kappa, N, cross_check=False)
                terms = {}
                for e, c in P.terms.items():
                    c2 = c.specialize({"q": FieldElement.gen(("t",), "t")})
                    terms[e] = c2.specialize({"t": Fraction(1)})
                assert MPoly(N, (), terms) == jc.schur_bialternant(kappa, N), \
                    (kappa, N)


def test_specialized_matches_generic_specialization():
    enc = qt_from_t_power(Fraction(-1, 2))
    direct = md.macdonald_symmetric((2, 0), 2, enc)
    generic = md.macdonald_symmetric((2, 0), 2)
    assert direct == md.specialize_qt_poly(generic, enc)


def test_wheel_vanishing():
    enc = qt_from_t_power(Fraction(-1, 2))
    P20 = md.macdonald_symmetric((2, 0), 2, enc)
    subs = md.wheel_substitutions(2, 2, enc)
    assert md.wheel_check(P20, subs) == []
    # negative control: a plain symmetric monomial is not wheel-closed
    bad = monomial_symmetric(2, ("p",), (2, 0))
    assert md.wheel_check(bad, subs)
    # the product realization vanishes on exactly the same family
    D = md.dl_wheel_product(2, enc, 2)
    assert md.wheel_check(D, subs) == []
    # one step outside the range is not a root
    extra = [(2, 1, enc.q_power(Fraction(-1, 2) + 2))]
    assert len(md.wheel_check(D, extra)) == 1


def test_nonsym_wheel_orientation():
    enc = qt_from_t_power(Fraction(-1, 2))
    E = md.macdonald_nonsymmetric((1, 0), 2, enc)
    subs = md.wheel_substitutions(2, 2, enc, nonsym=True)
    assert subs  # s = 0 with j > i only
    assert md.wheel_check(E, subs) == []
