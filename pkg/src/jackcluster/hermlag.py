"""Dunkl operators of type A and B; generalized Hermite and Laguerre families.

The Hermite polynomials are the image of the Jack family under the truncating
exponential exp(-Lap_A/4), Lap_A = sum d_i^2.  The Laguerre family lives in
squared variables: a polynomial in x is lifted to the even polynomial in y
with x_i = y_i^2, exp(-Lap_B/4) is applied there, and the result is read back
in x.  The conversion points are the only places the two views meet; the type
B operators themselves always act in y.

The Laguerre parameter ``a`` stays symbolic by default, so coefficient fields
here are Q(a), Q(alpha, a) or their specializations.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import FieldElement, fe_prod
from .jackcore import (highest_weight_apply, jack_nonsymmetric, jack_symmetric,
                       jack_basis_expand)
from .mpoly import (MPoly, divided_difference, partial, reflection_difference,
                    shift_all, signed_divided_difference)
from .partlib import AlphaMode, GENERIC_ALPHA, sort_desc
from .report import IdentityCase, IdentityReport


@dataclass(frozen=True)
class AMode:
    """Symbolic Laguerre parameter a, or a rational value."""

    value: Fraction | None = None

    @property
    def generic(self):
        return self.value is None

    def label(self):
        return "generic" if self.generic else str(self.value)


GENERIC_A = AMode()


def a_mode(value):
    if value is None or value == "generic":
        return GENERIC_A
    return AMode(Fraction(value))


@dataclass(frozen=True)
class DunklConfig:
    kind: str  # "A" or "B"
    alpha: AlphaMode = GENERIC_ALPHA
    a: AMode = GENERIC_A

    def __post_init__(self):
        if self.kind not in ("A", "B"):
            raise ValueError("Dunkl type must be 'A' or 'B'")

    def indets(self):
        names = []
        if self.alpha.generic:
            names.append("alpha")
        if self.kind == "B" and self.a.generic:
            names.append("a")
        return tuple(names)

    def alpha_fe(self):
        ind = self.indets()
        if self.alpha.generic:
            return FieldElement.gen(ind, "alpha")
        return FieldElement.from_fraction(ind, self.alpha.value)

    def a_fe(self):
        if self.kind != "B":
            raise ValueError("parameter a belongs to type B")
        ind = self.indets()
        if self.a.generic:
            return FieldElement.gen(ind, "a")
        return FieldElement.from_fraction(ind, self.a.value)


def dunkl_apply(f, cfg, i):
    """d_i (type A) or d_i^(B) (type B, acting in the y view)."""
    inv = cfg.alpha_fe().inverse()
    out = partial(f, i)
    if cfg.kind == "A":
        for k in range(1, f.nvars + 1):
            if k != i:
                out = out + divided_difference(f, i, k).scale(inv)
        return out
    for p in range(1, f.nvars + 1):
        if p != i:
            pair = divided_difference(f, i, p) + signed_divided_difference(f, i, p)
            out = out + pair.scale(inv)
    half = FieldElement.from_fraction(cfg.indets(), Fraction(1, 2))
    return out + reflection_difference(f, i).scale(cfg.a_fe() + half)


def is_even_in_each(f):
    return all(all(x % 2 == 0 for x in e) for e in f.terms)


def laplacian_apply(f, cfg):
    """Lap = sum_i d_i^2; the type B form requires input even in each y_j."""
    if cfg.kind == "B" and not is_even_in_each(f):
        raise ValueError("the type B Laplacian acts on even functions only")
    out = MPoly.zero(f.nvars, f.indets)
    for i in range(1, f.nvars + 1):
        out = out + dunkl_apply(dunkl_apply(f, cfg, i), cfg, i)
    return out


def _exp_minus_quarter(f, cfg):
    """exp(-Lap/4) f as the terminating series sum (-1/4)^m/m! Lap^m f."""
    out = f
    g = f
    m = 0
    while not g.is_zero():
        m += 1
        g = laplacian_apply(g, cfg)
        if g.is_zero():
            break
        out = out + g.scale(Fraction((-1) ** m, 4 ** m * math.factorial(m)))
    return out


def x_to_y(f):
    """Interpret x_i = y_i^2: double every exponent."""
    return MPoly(f.nvars, f.indets,
                 {tuple(2 * x for x in e): c for e, c in f.terms.items()})


def y_to_x(f):
    """Read an even-in-each-variable polynomial back in x."""
    if not is_even_in_each(f):
        raise ValueError("polynomial is not even in each variable")
    return MPoly(f.nvars, f.indets,
                 {tuple(x // 2 for x in e): c for e, c in f.terms.items()})


def _jack_base(label, N, symmetric, alpha):
    if symmetric:
        return jack_symmetric(sort_desc(label), N, alpha).poly
    return jack_nonsymmetric(tuple(label), N, alpha).poly


def hermite(label, N=None, symmetric=False, alpha=GENERIC_ALPHA):
    """Generalized Hermite polynomial exp(-Lap_A/4) applied to E_eta or P_kappa."""
    label = tuple(label)
    if N is None:
        N = len(label)
    base = _jack_base(label, N, symmetric, alpha)
    return _exp_minus_quarter(base, DunklConfig("A", alpha))


def laguerre(label, N=None, symmetric=False, alpha=GENERIC_ALPHA, a=GENERIC_A):
    """Generalized Laguerre polynomial, returned in the x variables."""
    label = tuple(label)
    if N is None:
        N = len(label)
    cfg = DunklConfig("B", alpha, a)
    base = _jack_base(label, N, symmetric, alpha).with_indets(cfg.indets())
    even = x_to_y(base)
    return y_to_x(_exp_minus_quarter(even, cfg))


def generalized_pochhammer(kappa, N, u, alpha_fe):
    """[u]_kappa = prod_j prod_{i=0}^{kappa_j - 1} (u - (j-1)/alpha + i)."""
    kappa = sort_desc(kappa)
    ind = u.indets
    one = FieldElement.one(ind)
    inv = alpha_fe.inverse()
    factors = []
    for j, part in enumerate(kappa, start=1):
        offset = u - inv.scale_int(j - 1)
        for i in range(part):
            factors.append(offset + one.scale_int(i))
    return fe_prod(factors, ind)


def laguerre_binomial(kappa, N=None, alpha=GENERIC_ALPHA, a=GENERIC_A):
    """Symmetric Laguerre polynomial through the binomial expansion:

        P^L_kappa = sum_{mu <= kappa} (-1)^(|kappa|-|mu|)
                    ([a+h]_kappa/[a+h]_mu) * c_{kappa mu} * P_mu(x)

    with h = 1 + (N-1)/alpha and c_{kappa mu} the coefficient of P_mu in
    P_kappa(1+x) (the rescaled binomial coefficient, finite even where
    P_kappa(1^N) vanishes).  Independent of the exponential-operator route
    and required to agree with it.
    """
    kappa = sort_desc(kappa)
    if N is None:
        N = len(kappa)
    cfg = DunklConfig("B", alpha, a)
    ind = cfg.indets()
    one = FieldElement.one(ind)
    alpha_fe = cfg.alpha_fe()
    h = one + alpha_fe.inverse().scale_int(N - 1)
    u = cfg.a_fe() + h
    p_big = jack_symmetric(kappa, N, alpha).poly
    table = jack_basis_expand(shift_all(p_big, 1), alpha)
    pk = generalized_pochhammer(kappa, N, u, alpha_fe)
    w = sum(kappa)
    out = MPoly.zero(N, ind)
    for mu, coeff in table.items():
        if coeff.is_zero():
            continue
        if any(mu[i] > (kappa[i] if i < len(kappa) else 0) for i in range(len(mu))):
            raise AssertionError(f"binomial support outside containment: {mu}")
        pm = generalized_pochhammer(mu, N, u, alpha_fe)
        factor = pk / pm
        sign = (-1) ** (w - sum(mu))
        term = jack_symmetric(mu, N, alpha).poly.with_indets(ind)
        out = out + term.scale(coeff.with_indets(ind) * factor.scale_int(sign))
    return out


def verify_hw_coincidence(kappa, N, alpha, a=GENERIC_A):
    """Check P^L_kappa = P_kappa and P^H_kappa = P_kappa when P_kappa is
    annihilated by the translation generator; not-applicable otherwise."""
    t0 = time.perf_counter()
    kappa = sort_desc(kappa)
    case = IdentityCase("B3B5", {"kappa": kappa, "N": N, "alpha": str(alpha.label())})
    anchor = "P^L_kappa = P_kappa and P^H_kappa = P_kappa for highest-weight P_kappa"
    p = jack_symmetric(kappa, N, alpha).poly
    if not highest_weight_apply(p).is_zero():
        return IdentityReport(case, "not-applicable", anchor,
                              detail="P_kappa is not translation invariant",
                              timing_ms=(time.perf_counter() - t0) * 1e3)
    from .serialize import mpoly_text
    ph = hermite(kappa, N, symmetric=True, alpha=alpha)
    res_h = ph - p
    pl = laguerre(kappa, N, symmetric=True, alpha=alpha, a=a)
    res_l = pl - p.with_indets(pl.indets)
    if res_h.is_zero() and res_l.is_zero():
        return IdentityReport(case, "holds", anchor,
                              timing_ms=(time.perf_counter() - t0) * 1e3)
    bad = res_h if not res_h.is_zero() else res_l
    return IdentityReport(case, "fails", anchor, witness_poly=mpoly_text(bad),
                          detail="Hermite residual" if not res_h.is_zero()
                          else "Laguerre residual",
                          timing_ms=(time.perf_counter() - t0) * 1e3)
