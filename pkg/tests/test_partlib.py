from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from jackcluster.exactnum import FieldElement
from jackcluster import partlib as pl


def test_dominance_examples():
    assert pl.dominance_less((1, 1, 0), (2, 0, 0))
    assert not pl.dominance_less((2, 0, 0), (1, 1, 0))
    assert pl.dominance_less((2, 1, 1), (2, 2, 0))
    with pytest.raises(ValueError):
        pl.dominance_less((1,), (2,))


def test_bruhat_examples():
    assert pl.bruhat_less((0, 1), (1, 0))
    assert not pl.bruhat_less((1, 0), (0, 1))
    assert pl.bruhat_less((1, 1, 0), (2, 0, 0))
    assert not pl.bruhat_less((2, 0, 0), (2, 0, 0))


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=2, max_size=5), st.permutations(range(5)))
def test_dominance_strict_partial_order(parts, perm):
    a = tuple(sorted(parts, reverse=True))
    # derive a second partition of the same modulus by moving a unit down
    b = list(a)
    for i in range(len(b) - 1):
        if b[i] > b[i + 1]:
            b[i] -= 1
            b[i + 1] += 1
            break
    b = tuple(sorted(b, reverse=True))
    # antisymmetry and irreflexivity
    assert not pl.dominance_less(a, a)
    if pl.dominance_less(b, a):
        assert not pl.dominance_less(a, b)


def test_dominance_transitive_small():
    parts = [p + (0,) * (3 - len(p)) for p in pl.partitions_of(4, 3)]
    for a in parts:
        for b in parts:
            for c in parts:
                if pl.dominance_less(a, b) and pl.dominance_less(b, c):
                    assert pl.dominance_less(a, c)


def test_frequency_roundtrip():
    for parts in [(5, 3, 0, 0, 0), (2, 2, 0, 0), (0, 0), (4, 2, 0)]:
        kappa = pl.Partition(parts)
        assert kappa.frequencies().to_partition() == kappa


def test_build_kappa_basic():
    kappa, N, alpha = pl.build_kappa(1, 2, 1, 1, 1)
    assert (kappa.parts, N, alpha) == ((4, 2, 0), 3, Fraction(-2))
    kappa, N, alpha = pl.build_kappa(1, 2, 2, 1, 1)
    assert (kappa.parts, N, alpha) == ((5, 3, 0, 0, 0), 5, Fraction(-2))
    assert kappa.frequencies().freqs == (3, 0, 0, 1, 0, 1)
    kappa, N, alpha = pl.build_kappa(2, 2, 1, 2, 0)
    assert (kappa.parts, N, alpha) == ((2, 2, 0, 0), 4, Fraction(-3))
    kappa, N, alpha = pl.build_kappa(1, 2, 1, 1, 2)
    assert (kappa.parts, N, alpha) == ((6, 4, 2, 0), 4, Fraction(-2))


def test_build_kappa_zero_count_invariant():
    for (k, r, s, m, b) in [(1, 2, 1, 1, 0), (1, 2, 2, 1, 1), (2, 2, 1, 2, 1),
                            (2, 3, 1, 1, 1), (3, 2, 1, 2, 0), (1, 4, 1, 1, 1)]:
        kappa, N, alpha = pl.build_kappa(k, r, s, m, b)
        assert N - kappa.length() == (k + 1) * s - 1
        assert N == (k + 1) * s - 1 + b * k + m
        assert alpha == Fraction(-(k + 1), r - 1)


def test_build_kappa_rejects():
    with pytest.raises(ValueError):
        pl.build_kappa(1, 3, 1, 1, 1)   # gcd(2, 2) != 1
    with pytest.raises(ValueError):
        pl.build_kappa(1, 2, 1, 2, 1)   # m > k


def test_eigen_jack_sym():
    am = pl.GENERIC_ALPHA
    alpha = FieldElement.gen(("alpha",), "alpha")
    one = FieldElement.one(("alpha",))
    assert pl.eigen_jack_sym((0, 0), 2, am).is_zero()
    assert pl.eigen_jack_sym((2, 0), 2, am) == alpha.scale_int(2) + one.scale_int(4)
    assert pl.eigen_jack_sym((1, 1), 2, am) == one.scale_int(2)


def test_eigen_jack_nonsym():
    am = pl.GENERIC_ALPHA
    alpha = FieldElement.gen(("alpha",), "alpha")
    one = FieldElement.one(("alpha",))
    assert pl.eigen_jack_nonsym((1, 0), 1, am) == alpha
    assert pl.eigen_jack_nonsym((1, 0), 2, am) == -one
    for i in (1, 2, 3):
        assert pl.eigen_jack_nonsym((0, 0, 0), i, am) == -one.scale_int(i - 1)


def test_eigen_macdonald():
    qt = pl.GENERIC_QT
    q = FieldElement.gen(("q", "t"), "q")
    t = FieldElement.gen(("q", "t"), "t")
    one = FieldElement.one(("q", "t"))
    assert pl.eigen_macdonald_sym((0, 0), 2, qt) == t + one
    assert pl.eigen_macdonald_sym((1, 0), 2, qt) == q * t + one
    assert pl.eigen_macdonald_nonsym((1, 0), 1, qt) == q


def test_qt_modes():
    enc = pl.qt_from_alpha(Fraction(-3))
    assert (enc.d, enc.e) == (3, -1)
    assert enc.q_power(Fraction(-1, 3)) == FieldElement.gen(("p",), "p", -1)
    with pytest.raises(ValueError):
        pl.QtMode(d=2, e=-4)  # not reduced
    with pytest.raises(ValueError):
        enc.q_power(Fraction(1, 2))  # not a p-power at d=3


def test_comp_order_extends_bruhat():
    etas = [(2, 0, 1), (1, 1, 1), (0, 2, 1), (3, 0, 0), (1, 2, 0)]
    for eta in etas:
        for nu in pl.compositions_below(eta):
            if nu != eta:
                assert pl.comp_order_key(nu) < pl.comp_order_key(eta)
