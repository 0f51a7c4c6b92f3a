from fractions import Fraction

import pytest

from jackcluster.exactnum import FieldElement
from jackcluster import hermlag as hl
from jackcluster.jackcore import jack_nonsymmetric, jack_symmetric
from jackcluster.mpoly import MPoly, monomial_symmetric, vandermonde
from jackcluster.partlib import GENERIC_ALPHA, alpha_mode

CFG_A = hl.DunklConfig("A")
CFG_B = hl.DunklConfig("B")
IA = CFG_A.indets()
IB = CFG_B.indets()


def test_dunkl_a():
    assert hl.dunkl_apply(MPoly.var(1, IA, 1), CFG_A, 1) == MPoly.const(1, IA, 1)
    # (1 - s12) kills z1 z2, so only the derivative survives
    assert hl.dunkl_apply(MPoly.monomial(2, IA, (1, 1)), CFG_A, 1) \
        == MPoly.var(2, IA, 2)


def test_dunkl_b():
    assert hl.dunkl_apply(MPoly.monomial(1, IB, (2,)), CFG_B, 1) \
        == MPoly.var(1, IB, 1).scale(2)


def test_laplacians():
    assert hl.laplacian_apply(MPoly.monomial(1, IA, (2,)), CFG_A) \
        == MPoly.const(1, IA, 2)
    assert hl.laplacian_apply(MPoly.var(2, IA, 1) + MPoly.var(2, IA, 2),
                              CFG_A).is_zero()
    a = FieldElement.gen(IB, "a")
    four = FieldElement.from_int(IB, 4)
    assert hl.laplacian_apply(MPoly.monomial(1, IB, (2,)), CFG_B) \
        == MPoly.const(1, IB, 1).scale(a.scale_int(4) + four)
    with pytest.raises(ValueError):
        hl.laplacian_apply(MPoly.var(1, IB, 1), CFG_B)


def test_exp_truncation_order():
    # degree-d input: the Laplacian chain dies after floor(d/2)+1 steps
    f = jack_symmetric((4, 2, 0), 3).poly
    g = f
    steps = 0
    while not g.is_zero():
        g = hl.laplacian_apply(g, CFG_A)
        steps += 1
    assert steps == 6 // 2 + 1


def test_hermite_low_degree_fixed():
    assert hl.hermite((1, 0)) == jack_nonsymmetric((1, 0)).poly


def test_hermite_univariate():
    got = hl.hermite((2,), symmetric=True)
    assert got == MPoly.monomial(1, IA, (2,)) \
        - MPoly.const(1, IA, Fraction(1, 2))


def test_hermite_degree0_term():
    # constant term of the two-variable image equals -(1/4) Lap(z1 z2)
    base = jack_symmetric((1, 1), 2).poly
    img = hl.hermite((1, 1), symmetric=True)
    lap = hl.laplacian_apply(base, CFG_A)
    assert img == base + lap.scale(Fraction(-1, 4))


def test_laguerre_examples():
    lg = hl.laguerre((1,))
    L = lg.indets
    a = FieldElement.gen(L, "a")
    assert lg == MPoly.var(1, L, 1) \
        - MPoly.const(1, L, 1).scale(a + FieldElement.one(L))
    assert hl.laguerre((0, 0)) == MPoly.const(2, L, 1)


@pytest.mark.parametrize("kappa,N", [((1,), 1), ((2,), 1), ((1, 0), 2),
                                     ((1, 1), 2), ((2, 0), 2), ((2, 1), 2)])
def test_laguerre_binomial_matches_operator_route(kappa, N):
    route_a = hl.laguerre_binomial(kappa, N)
    route_b = hl.laguerre(tuple(sorted(kappa, reverse=True)), N, symmetric=True)
    assert route_a == route_b


def test_pochhammer():
    # [u]_(2) at N=1 = u(u+1)
    u = FieldElement.gen(("a",), "a")
    one = FieldElement.one(("a",))
    got = hl.generalized_pochhammer((2,), 1, u, one)
    assert got == u * (u + one)


def test_hw_coincidence_staircase():
    rep = hl.verify_hw_coincidence((4, 2, 0), 3, alpha_mode(-2))
    assert rep.verdict == "holds"


def test_hw_coincidence_not_applicable():
    rep = hl.verify_hw_coincidence((2, 0), 2, GENERIC_ALPHA)
    assert rep.verdict == "not-applicable"


def test_specialization_consistency():
    # generic computation specialized afterwards equals direct computation
    generic = hl.hermite((2, 0), 2, symmetric=True, alpha=GENERIC_ALPHA)
    direct = hl.hermite((2, 0), 2, symmetric=True, alpha=alpha_mode(3))
    from jackcluster.jackcore import specialize_poly
    assert specialize_poly(generic, 3) == direct
