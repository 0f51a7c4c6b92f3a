import random
from fractions import Fraction

import pytest

from jackcluster.exactnum import FieldElement, NonDivisibleError
from jackcluster import mpoly as mp
from jackcluster.mpoly import (FRESH, MPoly, OperatorTag, apply_operator,
                               divided_difference, exact_divide,
                               monomial_symmetric, pfaffian_product, shift_all,
                               substitute, swap_vars, symmetrize,
                               symmetrize_explicit, t_vandermonde, try_divide,
                               vandermonde, d1_product)


def z(n, i, indets=()):
    return MPoly.var(n, indets, i)


def test_product_difference_of_squares():
    f = z(2, 1) + z(2, 2)
    g = z(2, 1) - z(2, 2)
    assert f * g == MPoly.monomial(2, (), (2, 0)) - MPoly.monomial(2, (), (0, 2))


def test_add_zero():
    f = z(2, 1) + z(2, 2)
    assert f + MPoly.zero(2, ()) == f


def test_m1_squared():
    m1 = monomial_symmetric(2, (), (1, 0))
    m2 = monomial_symmetric(2, (), (2, 0))
    m11 = monomial_symmetric(2, (), (1, 1))
    assert m1 * m1 == m2 + m11.scale(2)


def test_exact_divide():
    f = MPoly.monomial(2, (), (2, 0)) - MPoly.monomial(2, (), (0, 2))
    assert exact_divide(f, z(2, 1) - z(2, 2)) == z(2, 1) + z(2, 2)


def test_nondivisible_has_witness():
    f = MPoly.monomial(2, (), (2, 0)) - MPoly.monomial(2, (), (0, 2))
    q, rem = try_divide(f, z(2, 1) + z(2, 2).scale(2))
    assert not rem.is_zero()
    with pytest.raises(NonDivisibleError):
        exact_divide(f, z(2, 1) + z(2, 2).scale(2))


def test_vandermonde_square_divide():
    d = vandermonde(3, ())
    assert exact_divide(d * d, d) == d


def test_substitute_coalesce_fresh():
    f = vandermonde(3, ())
    out = substitute(f, {2: (1, FRESH), 3: (1, FRESH)})
    assert out.nvars == 4
    # (z1-z)(z1-z)(z-z) = 0
    assert out.is_zero()


def test_substitute_merge_kills_vandermonde():
    f = vandermonde(2, ())
    assert substitute(f, {2: (1, 1)}).is_zero()


def test_substitute_homogeneity():
    random.seed(11)
    terms = {}
    for _ in range(6):
        e = [0, random.randint(0, 2), random.randint(0, 2)]
        e[0] = 5 - e[1] - e[2]
        terms[tuple(e)] = FieldElement.from_int((), random.randint(1, 5))
    f = MPoly(3, (), terms)
    d = f.homogeneous_degree()
    assert d is not None
    g = substitute(f, {1: (Fraction(3, 2), 2), 3: (2, FRESH)})
    assert g.homogeneous_degree() == d


def test_operator_tags():
    f = MPoly.monomial(2, (), (2, 0))
    assert divided_difference(f, 1, 2) == z(2, 1) + z(2, 2)
    g = MPoly.monomial(2, (), (1, 1))
    qv = FieldElement.from_fraction((), 3)
    assert apply_operator(g, OperatorTag("qshift", (1,)), qval=qv) == g.scale(3)
    h = MPoly.monomial(2, (), (2, 1))
    assert apply_operator(h, OperatorTag("reflection", (1,))) == h
    assert apply_operator(g, OperatorTag("reflection", (1,))) == -g
    assert apply_operator(f, OperatorTag("swap", (1, 2))) == MPoly.monomial(2, (), (0, 2))
    assert apply_operator(f, OperatorTag("derivative", (1,))) == z(2, 1).scale(2)
    assert apply_operator(f, OperatorTag("euler", (1,))) == f.scale(2)


def test_symmetrize_examples():
    assert symmetrize(MPoly.monomial(2, (), (2, 0)), "Sym") \
        == monomial_symmetric(2, (), (2, 0))
    assert symmetrize(z(2, 1), "Asym") == z(2, 1) - z(2, 2)
    assert symmetrize(MPoly.monomial(2, (), (2, 2)), "Asym").is_zero()


def _random_poly(n, seed, indets=()):
    rng = random.Random(seed)
    terms = {}
    for _ in range(6):
        e = tuple(rng.randint(0, 3) for _ in range(n))
        terms[e] = FieldElement.from_int(indets, rng.randint(-4, 4))
    return MPoly(n, indets, terms)


@pytest.mark.parametrize("seed", range(8))
def test_symmetrize_matches_explicit(seed):
    f = _random_poly(seed % 3 + 2, seed)
    assert symmetrize(f, "Sym") == symmetrize_explicit(f, "Sym")
    assert symmetrize(f, "Asym") == symmetrize_explicit(f, "Asym")


@pytest.mark.parametrize("seed", range(4))
def test_sym_sym_and_asym_of_symmetric(seed):
    import math
    f = _random_poly(3, 100 + seed)
    s = symmetrize(f, "Sym")
    assert symmetrize(s, "Sym") == s.scale(math.factorial(3))
    assert symmetrize(s, "Asym").is_zero()


def test_special_products():
    assert vandermonde(2, ()) == z(2, 1) - z(2, 2)
    QT = ("q", "t")
    t = FieldElement.gen(QT, "t")
    assert t_vandermonde(2, QT, t) == z(2, 1, QT).scale(t) - z(2, 2, QT)
    q = FieldElement.gen(QT, "q")
    d1 = d1_product(2, QT, q)
    want = (z(2, 2, QT).scale(q) - z(2, 1, QT)) * (z(2, 1, QT).scale(q) - z(2, 2, QT))
    assert d1 == want


def test_pfaffian_product():
    assert pfaffian_product(2, ()) == MPoly.const(2, (), 1)
    with pytest.raises(ValueError):
        pfaffian_product(3, ())
    # hand oracle over the three perfect matchings
    d = vandermonde(4, ())

    def lin(i, j):
        return z(4, i) - z(4, j)

    byhand = (exact_divide(d, lin(1, 2) * lin(3, 4))
              - exact_divide(d, lin(1, 3) * lin(2, 4))
              + exact_divide(d, lin(1, 4) * lin(2, 3)))
    assert pfaffian_product(4, ()) == byhand


def test_divided_difference_always_exact():
    # numerator is antisymmetric under the swap, so no remainder can appear
    for seed in range(5):
        f = _random_poly(3, 200 + seed)
        g = f - swap_vars(f, 1, 2)
        dd = divided_difference(f, 1, 2)
        assert dd * (z(3, 1) - z(3, 2)) == g


def test_shift_all():
    f = MPoly.monomial(1, (), (2,))
    g = shift_all(f, 1)
    # (z+1)^2
    assert g == f + z(1, 1).scale(2) + MPoly.const(1, (), 1)


def test_serialization_roundtrip():
    from jackcluster.serialize import mpoly_record, parse_mpoly_record
    A = ("alpha",)
    al = FieldElement.gen(A, "alpha")
    f = MPoly(2, A, {(2, 0): FieldElement.one(A) / (al + FieldElement.one(A)),
                     (0, 0): -al})
    assert parse_mpoly_record(mpoly_record(f)) == f
