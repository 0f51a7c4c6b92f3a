"""Registry of named factorization/clustering identities and their checker.

Every identity is verified by building both sides independently from the
family constructors and comparing exactly: equality checks return the
difference polynomial as a failure witness, divisibility checks return the
nonzero remainder, and proportionality checks extract the leading-coefficient
ratio, report it, and assert the exact remaining identity.  Conjectural
statements never produce "holds": their verdicts are conjecture-consistent or
conjecture-violated.

Checks accept an optional ``perturb`` parameter (an exponent bump) used by
the negative controls: a perturbed case must fail with a nonzero witness,
guarding the harness against vacuous passes.
"""

from __future__ import annotations

import math
import time
from fractions import Fraction

from .exactnum import FieldElement, PoleError
from . import hermlag
from .jackcore import (highest_weight_apply, jack_nonsymmetric, jack_symmetric,
                       lowest_weight_apply, nphi_for)
from .macdonald import (dl_wheel_product, macdonald_nonsymmetric,
                        macdonald_symmetric, t_symmetrize)
from .mpoly import (FRESH, MPoly, pfaffian_product, substitute, symmetrize,
                    try_divide, vandermonde)
from .partlib import (QtMode, alpha_mode, build_kappa, delta,
                      qt_from_alpha, qt_from_t_power, sort_desc)
from .report import IdentityCase, IdentityReport
from .serialize import fieldelement_text, mpoly_text

LIMITS = {
    "jack_N": 8,          # Jack-family cases (Q or Q(alpha) coefficients)
    "qt_generic_N": 5,    # generic (q, t) coefficients
    "qt_encoded_N": 8,    # base-p encoded specializations
}

# big specialized Macdonald constructions go through the t-symmetrization
# route instead of the M1 solve beyond this variable count
_HECKE_ROUTE_MIN_N = 5

ANCHORS = {
    "PROP1": "P_{r*delta+kappa}(z;-2/(r-1)) = Delta(z)^r P_kappa(z;2/(r+1)), r even",
    "PROP2": "E_{kappa+l*delta}(z;-2/l) = Delta(z)^l E_kappa(z;2/l), l odd",
    "PROP3_H": "Hermite image of the staircase factorization (nonsym l odd / sym r even)",
    "PROP3_L": "Laguerre image of the staircase factorization (nonsym l odd / sym r even)",
    "EQ14_1": "E_{l*delta}(z;-2/l) = E^H = E^L = Delta(z)^l, l odd",
    "EQ14_2": "P_{r*delta}(z;-2/(r-1)) = P^H = P^L = Delta(z)^r, r even",
    "EQ12_1": "Sym E_{r*delta+kappa}(z;-2/(r-1)) = Delta^(r-1) Asym E_{kappa+delta}(z;2/(r-1))",
    "PROP4": "P_{kappa+r*delta}(z;q,q^(-(r-1)/2)) = (-q^(-1/2))^(r^2 N(N-1)/8) "
             "D_{r/2}(z;q^(1/2)) P_kappa(z;q,q^((r+1)/2))",
    "CLUSTER25_1": "staircase coalescing: P_kappa(k,r,s,m) at z_(N-n0+1..N)=z factors as "
                   "prod (z_j - z)^((r-1)s+1) times P_kappa(k,r,1,m)",
    "RECT26": "P_{r^g}(z;-(N+1-g)/(r-1)) at z_(g+1..N)=1 equals prod_l (z_l-1)^r",
    "NONSYM26_1": "nonsymmetric coalescing: E_kappa(k,r,s,m) divisible by "
                  "prod (z_j - z)^((r-1)s), residual recorded",
    "NONSYM22_1": "E_{kappa+l*delta}(z;q,q^(-l/2)) divisible by the staircase wheel product, "
                  "residual recorded",
    "RR_J3A": "Sym prod_groups prod_(i<j) (z_i - z_j)^2 is proportional to "
              "P_{(2delta)^k}(z;-(k+1))",
    "PFAFF": "Pf[1/(z_k - z_l)] prod_(i<j)(z_i - z_j) is proportional to "
             "P_{(2delta)^2}(z;-3) and to the symmetrized two-group product",
    "HW_LP": "sum_j d/dz_j annihilates every staircase Jack instance",
    "LW_LM": "sum_j z_j^2 d/dz_j - N_phi sum_j z_j annihilates the s=1, m=k staircases",
    "B3B5": "P^L_kappa = P_kappa and P^H_kappa = P_kappa for highest-weight P_kappa",
    "CONJ23_8": "q,t staircase clustering: P_kappa(k,r,s,m)(z;q,q^(1/alpha)) on a geometric "
                "front factors as prod (z_i - z q^(k/alpha+j)) times P_kappa(k,r,1,m)",
    "RECT_QT": "rectangular q,t clustering: P_{r^g}(z;q,q^(1/alpha)) on a geometric front "
               "equals prod_l prod_j (z_l - q^(1/alpha+j) z)",
    "QT_RR": "U+ prod_groups prod_(i<j) (z_i - t z_j)(t z_i - z_j) at t=q^(-1/(k+1)) is "
             "proportional to P_kappa(k,2,1)(z;q,q^(-1/(k+1)))",
}

CONJECTURES = {"CONJ23_8", "RECT_QT", "QT_RR"}


class NotApplicable(Exception):
    pass


def _check_limit(N, kind):
    if N > LIMITS[kind]:
        raise ValueError(
            f"N={N} exceeds the desk-scale bound LIMITS[{kind!r}]={LIMITS[kind]}; "
            "raise it explicitly to run larger cases")


def _kappa_param(params, key="kappa"):
    v = params.get(key, ())
    if isinstance(v, int):
        return (v,)
    if isinstance(v, str):
        return tuple(int(x) for x in v.split(",") if x.strip())
    return tuple(int(x) for x in v)


def _equal_or_witness(lhs, rhs):
    diff = lhs - rhs
    return None if diff.is_zero() else diff


def _proportional(lhs, rhs):
    """(ratio, residual): ratio matches leading terms, residual lhs - ratio*rhs."""
    if rhs.is_zero() or lhs.is_zero():
        return None, lhs
    e, c = lhs.leading()
    d = rhs.coefficient(e)
    if d.is_zero():
        return None, lhs
    ratio = c / d
    return ratio, lhs - rhs.scale(ratio)


def _coalesce_tail(poly, keep):
    """Set z_{keep+1} = ... = z_N to one fresh variable z (index N+1)."""
    one = FieldElement.one(poly.indets)
    plan = {j: (one, FRESH) for j in range(keep + 1, poly.nvars + 1)}
    return substitute(poly, plan)


def _embed_with_fresh(poly, total_vars):
    """View an n-variable polynomial inside the coalesced (total_vars) ring."""
    return poly.pad_vars(total_vars)


def _staircase_power_product(nvars, indets, keep, fresh_index, exponent, shifts):
    """prod_{j=1..keep} prod_{c in shifts} (z_j - c*z_fresh)^exponent."""
    out = MPoly.const(nvars, indets, 1)
    zf = MPoly.var(nvars, indets, fresh_index)
    for j in range(1, keep + 1):
        zj = MPoly.var(nvars, indets, j)
        for c in shifts:
            out = out * (zj - zf.scale(c)) ** exponent
    return out


# ---------------------------------------------------------------------------
# individual checkers: return (verdict, witness_poly, witness_const, detail)
# ---------------------------------------------------------------------------

def _chk_prop1(params):
    r, N = int(params["r"]), int(params["N"])
    kappa = _kappa_param(params)
    bump = int(params.get("perturb", 0))
    if r <= 0 or r % 2:
        raise NotApplicable("r must be even and positive")
    if len(kappa) > N:
        raise NotApplicable("kappa longer than N")
    _check_limit(N, "jack_N")
    lhs_label = tuple(k + r * d for k, d in
                      zip(kappa + (0,) * (N - len(kappa)), delta(N)))
    lhs = jack_symmetric(lhs_label, N, alpha_mode(Fraction(-2, r - 1))).poly
    rhs = (vandermonde(N, ()) ** (r + bump)
           * jack_symmetric(kappa, N, alpha_mode(Fraction(2, r + 1))).poly)
    w = _equal_or_witness(lhs, rhs)
    if w is None:
        return "holds", None, None, ""
    return "fails", mpoly_text(w), None, "difference of the two sides"


def _chk_prop2(params):
    l, N = int(params["l"]), int(params["N"])
    kappa = _kappa_param(params)
    bump = int(params.get("perturb", 0))
    if l <= 0 or l % 2 == 0:
        raise NotApplicable("l must be odd and positive")
    if len(kappa) > N:
        raise NotApplicable("kappa longer than N")
    _check_limit(N, "jack_N")
    kappa = kappa + (0,) * (N - len(kappa))
    lhs_label = tuple(k + l * d for k, d in zip(kappa, delta(N)))
    lhs = jack_nonsymmetric(lhs_label, N, alpha_mode(Fraction(-2, l))).poly
    rhs = (vandermonde(N, ()) ** (l + bump)
           * jack_nonsymmetric(kappa, N, alpha_mode(Fraction(2, l))).poly)
    w = _equal_or_witness(lhs, rhs)
    if w is None:
        return "holds", None, None, ""
    return "fails", mpoly_text(w), None, "difference of the two sides"


def _chk_prop3(params, family):
    N = int(params["N"])
    kappa = _kappa_param(params)
    symmetric = bool(params.get("symmetric", False))
    bump = int(params.get("perturb", 0))
    _check_limit(N, "jack_N")
    if len(kappa) > N:
        raise NotApplicable("kappa longer than N")
    kappa = kappa + (0,) * (N - len(kappa))
    if symmetric:
        r = int(params["r"])
        if r <= 0 or r % 2:
            raise NotApplicable("symmetric variant needs even positive r")
        label = tuple(k + r * d for k, d in zip(kappa, delta(N)))
        neg, pos, power = Fraction(-2, r - 1), Fraction(2, r + 1), r
    else:
        l = int(params["l"])
        if l <= 0 or l % 2 == 0:
            raise NotApplicable("nonsymmetric variant needs odd positive l")
        label = tuple(k + l * d for k, d in zip(kappa, delta(N)))
        neg, pos, power = Fraction(-2, l), Fraction(2, l), l

    def build(lab, av):
        if family == "H":
            return hermlag.hermite(lab, N, symmetric=symmetric,
                                   alpha=alpha_mode(av))
        return hermlag.laguerre(lab, N, symmetric=symmetric,
                                alpha=alpha_mode(av))

    lhs = build(label, neg)
    rhs_core = build(kappa, pos)
    dlt = vandermonde(N, rhs_core.indets)
    rhs = dlt ** (power + bump) * rhs_core
    w = _equal_or_witness(lhs, rhs.with_indets(lhs.indets)
                          if rhs.indets != lhs.indets else rhs)
    if w is None:
        return "holds", None, None, ""
    return "fails", mpoly_text(w), None, "difference of the two sides"


def _chk_eq14_1(params):
    l, N = int(params["l"]), int(params["N"])
    bump = int(params.get("perturb", 0))
    if l <= 0 or l % 2 == 0:
        raise NotApplicable("l must be odd and positive")
    _check_limit(N, "jack_N")
    label = tuple(l * d for d in delta(N))
    am = alpha_mode(Fraction(-2, l))
    dlt = vandermonde(N, ()) ** (l + bump)
    jack = jack_nonsymmetric(label, N, am).poly
    herm = hermlag.hermite(label, N, symmetric=False, alpha=am)
    lag = hermlag.laguerre(label, N, symmetric=False, alpha=am)
    for name, poly in (("E", jack), ("E^H", herm), ("E^L", lag)):
        target = dlt.with_indets(poly.indets) if poly.indets else dlt
        w = _equal_or_witness(poly, target)
        if w is not None:
            return "fails", mpoly_text(w), None, f"{name} differs from Delta^l"
    return "holds", None, None, ""


def _chk_eq14_2(params):
    r, N = int(params["r"]), int(params["N"])
    bump = int(params.get("perturb", 0))
    if r <= 0 or r % 2:
        raise NotApplicable("r must be even and positive")
    _check_limit(N, "jack_N")
    label = tuple(r * d for d in delta(N))
    am = alpha_mode(Fraction(-2, r - 1))
    dlt = vandermonde(N, ()) ** (r + bump)
    jack = jack_symmetric(label, N, am).poly
    herm = hermlag.hermite(label, N, symmetric=True, alpha=am)
    lag = hermlag.laguerre(label, N, symmetric=True, alpha=am)
    for name, poly in (("P", jack), ("P^H", herm), ("P^L", lag)):
        target = dlt.with_indets(poly.indets) if poly.indets else dlt
        w = _equal_or_witness(poly, target)
        if w is not None:
            return "fails", mpoly_text(w), None, f"{name} differs from Delta^r"
    return "holds", None, None, ""


def _chk_eq12_1(params):
    r, N = int(params["r"]), int(params["N"])
    kappa = _kappa_param(params)
    bump = int(params.get("perturb", 0))
    if r <= 0 or r % 2:
        raise NotApplicable("r must be even and positive")
    _check_limit(N, "jack_N")
    kappa = kappa + (0,) * (N - len(kappa))
    lhs_label = tuple(k + r * d for k, d in zip(kappa, delta(N)))
    lhs = symmetrize(
        jack_nonsymmetric(lhs_label, N, alpha_mode(Fraction(-2, r - 1))).poly,
        "Sym")
    rho = tuple(k + d for k, d in zip(kappa, delta(N)))
    rhs = (vandermonde(N, ()) ** (r - 1 + bump)
           * symmetrize(jack_nonsymmetric(rho, N,
                                          alpha_mode(Fraction(2, r - 1))).poly,
                        "Asym"))
    ratio, residual = _proportional(lhs, rhs)
    if ratio is not None and residual.is_zero():
        return "holds", None, fieldelement_text(ratio), ""
    return ("fails", mpoly_text(residual if ratio is not None else lhs),
            None, "sides are not proportional")


def _chk_prop4(params):
    r, N = int(params["r"]), int(params["N"])
    kappa = _kappa_param(params)
    bump = int(params.get("perturb", 0))
    if r <= 0 or r % 2:
        raise NotApplicable("r must be even and positive")
    if (r * r * N * (N - 1)) % 8:
        raise NotApplicable("prefactor exponent is not an integer")
    _check_limit(N, "qt_encoded_N")
    kappa = kappa + (0,) * (N - len(kappa))
    qt_neg = qt_from_t_power(Fraction(-(r - 1), 2))   # q = p^2, t = p^(1-r)
    lhs_label = tuple(k + r * d for k, d in zip(kappa, delta(N)))
    lhs = macdonald_symmetric(lhs_label, N, qt_neg, cross_check=False)
    half = qt_neg.q_power(Fraction(1, 2))
    pref = (-half.inverse()) ** (r * r * N * (N - 1) // 8)
    dpart = dl_wheel_product(N, qt_neg, r + 2 * bump)
    qt_pos = QtMode(d=2, e=r + 1)                     # t = q^((r+1)/2) on the same p
    ppart = macdonald_symmetric(kappa, N, qt_pos, cross_check=False)
    rhs = dpart.scale(pref) * ppart
    w = _equal_or_witness(lhs, rhs)
    if w is None:
        return "holds", None, fieldelement_text(pref), ""
    return "fails", mpoly_text(w), None, "difference of the two sides"


def _jack_staircase(params):
    k, r, s, m = (int(params[x]) for x in ("k", "r", "s", "m"))
    b = int(params["b"])
    kappa, N, alpha = build_kappa(k, r, s, m, b)
    _check_limit(N, "jack_N")
    return k, r, s, m, b, kappa, N, alpha


def _chk_cluster25_1(params):
    k, r, s, m, b, kappa, N, alpha = _jack_staircase(params)
    bump = int(params.get("perturb", 0))
    n0 = (k + 1) * s - 1
    keep = N - n0
    am = alpha_mode(alpha)
    big = jack_symmetric(kappa.parts, N, am).poly
    lhs = _coalesce_tail(big, keep)
    one = FieldElement.one(())
    prod = _staircase_power_product(N + 1, (), keep, N + 1,
                                    (r - 1) * s + 1 + bump, [one])
    if b == 0:
        small = MPoly.const(keep, (), 1)
    else:
        kap2, n2, alpha2 = build_kappa(k, r, 1, m, b - 1)
        assert n2 == keep and alpha2 == alpha
        small = jack_symmetric(kap2.parts, keep, am).poly
    rhs = prod * _embed_with_fresh(small, N + 1)
    w = _equal_or_witness(lhs, rhs)
    if w is None:
        return "holds", None, None, f"kappa={kappa.parts}, N={N}, alpha={alpha}"
    return "fails", mpoly_text(w), None, "difference of the two sides"


def _chk_rect26(params):
    r, g, N = int(params["r"]), int(params["g"]), int(params["N"])
    bump = int(params.get("perturb", 0))
    if r < 1 or g < 1 or N < 2 * g:
        raise NotApplicable("needs r >= 1, g >= 1 and N >= 2g")
    if math.gcd(N + 1 - g, r - 1) != 1:
        raise NotApplicable("N+1-g and r-1 must be coprime")
    _check_limit(N, "jack_N")
    am = alpha_mode(Fraction(-(N + 1 - g), r - 1))
    big = jack_symmetric((r,) * g, N, am).poly
    one = FieldElement.one(())
    lhs = substitute(big, {j: (one, None) for j in range(g + 1, N + 1)})
    rhs = MPoly.const(N, (), 1)
    for l in range(1, g + 1):
        rhs = rhs * (MPoly.var(N, (), l) - MPoly.const(N, (), 1)) ** (r + bump)
    w = _equal_or_witness(lhs, rhs)
    if w is None:
        return "holds", None, None, f"alpha={am.label()}"
    return "fails", mpoly_text(w), None, "difference of the two sides"


def _chk_nonsym26_1(params):
    k, r, s, m, b, kappa, N, alpha = _jack_staircase(params)
    bump = int(params.get("perturb", 0))
    n0 = (k + 1) * s - 1
    keep = N - n0
    am = alpha_mode(alpha)
    big = jack_nonsymmetric(kappa.parts, N, am).poly
    lhs = _coalesce_tail(big, keep)
    one = FieldElement.one(())
    prod = _staircase_power_product(N + 1, (), keep, N + 1,
                                    (r - 1) * s + bump, [one])
    quot, rem = try_divide(lhs, prod)
    if rem.is_zero():
        return ("holds", None, None,
                f"residual factor of degree {quot.total_degree()}: "
                f"{mpoly_text(quot)}")
    return "fails", mpoly_text(rem), None, "claimed divisor does not divide"


def _chk_nonsym22_1(params):
    l, N = int(params["l"]), int(params["N"])
    kappa = _kappa_param(params)
    bump = int(params.get("perturb", 0))
    if l <= 0 or l % 2 == 0:
        raise NotApplicable("l must be odd and positive")
    _check_limit(N, "qt_encoded_N")
    kappa = kappa + (0,) * (N - len(kappa))
    qt = QtMode(d=2, e=-l)  # q = p^2, t = q^(-l/2) = p^(-l)
    label = tuple(x + l * d for x, d in zip(kappa, delta(N)))
    lhs = macdonald_nonsymmetric(label, N, qt)
    p = qt.q_power(Fraction(1, 2))
    divisor = dl_wheel_product(N, qt, l - 1) if l > 1 \
        else MPoly.const(N, ("p",), 1)
    half_power = qt.q_power(Fraction(l, 2) + bump)
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            divisor = divisor * (MPoly.var(N, ("p",), j).scale(half_power)
                                 - MPoly.var(N, ("p",), i))
    quot, rem = try_divide(lhs, divisor)
    if rem.is_zero():
        deg = quot.total_degree()
        if deg != sum(kappa):
            return ("fails", mpoly_text(quot), None,
                    f"residual degree {deg} != |kappa| = {sum(kappa)}")
        return ("holds", None, None,
                f"residual factor of degree {deg}: {mpoly_text(quot)}")
    return "fails", mpoly_text(rem), None, "claimed divisor does not divide"


def _group_square_product(k, N, indets, squared_style="jack", t=None):
    """prod_{groups s=1..k} prod_{i<j in group} of (z_i - z_j)^2, or of
    (z_i - t z_j)(t z_i - z_j) in the q,t variant."""
    nv = k * N
    out = MPoly.const(nv, indets, 1)
    for s in range(k):
        base = s * N
        for i in range(1, N + 1):
            for j in range(i + 1, N + 1):
                zi = MPoly.var(nv, indets, base + i)
                zj = MPoly.var(nv, indets, base + j)
                if squared_style == "jack":
                    out = out * (zi - zj) ** 2
                else:
                    out = out * (zi - zj.scale(t)) * (zi.scale(t) - zj)
    return out


def _rr_partition(k, N):
    """(2 delta_N)^k: each part of 2*delta repeated k times."""
    parts = []
    for d in delta(N):
        parts.extend([2 * d] * k)
    return tuple(parts)


def _chk_rr_j3a(params):
    k, N = int(params["k"]), int(params["N"])
    bump = int(params.get("perturb", 0))
    nv = k * N
    _check_limit(nv, "jack_N")
    psi = symmetrize(_group_square_product(k, N, ()), "Sym")
    label = _rr_partition(k, N)
    p = jack_symmetric(label, nv, alpha_mode(-(k + 1) + bump)).poly
    ratio, residual = _proportional(psi, p)
    if ratio is not None and residual.is_zero() and not ratio.is_zero():
        return "holds", None, fieldelement_text(ratio), ""
    return ("fails", mpoly_text(residual if ratio is not None else psi),
            None, "symmetrized product is not proportional to the Jack side")


def _chk_pfaff(params):
    n = int(params["n"])
    bump = int(params.get("perturb", 0))
    if n % 2:
        raise NotApplicable("needs an even variable count")
    _check_limit(n, "jack_N")
    N = n // 2
    pf = pfaffian_product(n, ())
    label = _rr_partition(2, N)
    p = jack_symmetric(label, n, alpha_mode(-3 + bump)).poly
    ratio1, res1 = _proportional(pf, p)
    psi = symmetrize(_group_square_product(2, N, ()), "Sym")
    ratio2, res2 = _proportional(pf, psi)
    if (ratio1 is not None and res1.is_zero()
            and ratio2 is not None and res2.is_zero()):
        return ("holds", None, fieldelement_text(ratio1),
                f"constant against the two-group product: {fieldelement_text(ratio2)}")
    bad = res1 if (ratio1 is None or not res1.is_zero()) else res2
    return "fails", mpoly_text(bad), None, "pairing form fails proportionality"


def _chk_hw_lp(params):
    _, _, _, _, _, kappa, N, alpha = _jack_staircase(params)
    bump = int(params.get("perturb", 0))
    p = jack_symmetric(kappa.parts, N, alpha_mode(alpha + bump)).poly
    img = highest_weight_apply(p)
    if img.is_zero():
        return "holds", None, None, f"kappa={kappa.parts}, alpha={alpha}"
    return "fails", mpoly_text(img), None, "raising operator does not annihilate"


def _chk_lw_lm(params):
    k, r, s, m, b, kappa, N, alpha = _jack_staircase(params)
    bump = int(params.get("perturb", 0))
    if s != 1 or m != k:
        raise NotApplicable("lowest-weight condition needs s = 1 and m = k")
    p = jack_symmetric(kappa.parts, N, alpha_mode(alpha)).poly
    nphi = nphi_for(kappa.parts, N) + bump
    img = lowest_weight_apply(p, nphi)
    if img.is_zero():
        return "holds", None, None, f"N_phi={nphi}"
    return "fails", mpoly_text(img), None, "lowering operator does not annihilate"


def _chk_b3b5(params):
    kappa = _kappa_param(params)
    N = int(params["N"])
    _check_limit(N, "jack_N")
    alpha = alpha_mode(Fraction(params["alpha"]))
    if int(params.get("perturb", 0)):
        alpha = alpha_mode(Fraction(params["alpha"]) + 1)
    rep = hermlag.verify_hw_coincidence(kappa, N, alpha)
    return rep.verdict, rep.witness_poly, rep.witness_constant, rep.detail


def _mac_sym_scaled(kappa, N, qt):
    """Symmetric q,t polynomial for the specialized scans.

    Route order for large instances: the proved product form for the pure
    even staircases, then the t-symmetrized walk when an intertwiner route
    survives the specialization, then the eigenoperator solve (whose pivots
    collide far more rarely).  All routes are pinned to each other on small
    cases by the test suite.
    """
    from . import macdonald as _md
    kappa = sort_desc(kappa) + (0,) * (N - len(sort_desc(kappa)))
    if not qt.generic and N >= _HECKE_ROUTE_MIN_N:
        stair = _try_product_staircase(kappa, N, qt)
        if stair is not None:
            return stair
        try:
            return _md._mac_sym_hecke(kappa, N, qt, strict=True)[0]
        except PoleError:
            pass
        return macdonald_symmetric(kappa, N, qt, method="operator",
                                   cross_check=False)
    return macdonald_symmetric(kappa, N, qt,
                               cross_check=N < _HECKE_ROUTE_MIN_N)


def _try_product_staircase(kappa, N, qt):
    """P_{2delta}(z; q, q^(-1/2)) = (-q^(-1/2))^(N(N-1)/2) prod_{i!=j}
    (q^(1/2) z_j - z_i): the kappa = 0 even staircase of the PROP4 family."""
    if kappa != tuple(2 * d for d in delta(N)):
        return None
    if qt.generic or (qt.d, qt.e, qt.sign) != (2, -1, 1):
        return None
    half = qt.q_power(Fraction(1, 2))
    pref = (-half.inverse()) ** (N * (N - 1) // 2)
    return dl_wheel_product(N, qt, 2).scale(pref)


def _chk_conj23_8(params):
    k, r, s, m = (int(params[x]) for x in ("k", "r", "s", "m"))
    b = int(params["b"])
    bump = int(params.get("perturb", 0))
    kappa, N, alpha = build_kappa(k, r, s, m, b)
    _check_limit(N, "qt_encoded_N")
    qt = qt_from_alpha(alpha)  # q = p^(k+1), t = p^(-(r-1))
    n0 = (k + 1) * s - 1
    keep = N - n0
    inv_alpha = 1 / alpha
    big = _mac_sym_scaled(kappa.parts, N, qt)
    # front variables z_i = q^((i-1)/alpha) z for i = 1..n0
    one = FieldElement.one(("p",))
    plan = {i: (qt.q_power((i - 1) * inv_alpha), FRESH) for i in range(1, n0 + 1)}
    lhs = substitute(big, plan)
    # remaining variables keep their labels; move them down to 1..keep plus z
    mapping = []
    for i in range(1, N + 1):
        mapping.append(max(i - n0, 1))  # unused front slots collapse harmlessly
    mapping.append(keep + 1)
    lhs = lhs.map_vars(mapping, keep + 1)
    shifts = [qt.q_power(k * inv_alpha + j)
              for j in range(-(r - 1) * (s - 1), r - 1 + 1)]
    prod = _staircase_power_product(keep + 1, ("p",), keep, keep + 1,
                                    1 + bump, shifts)
    if b == 0:
        small = MPoly.const(keep, ("p",), 1)
    else:
        kap2, n2, alpha2 = build_kappa(k, r, 1, m, b - 1)
        assert n2 == keep and alpha2 == alpha
        small = _mac_sym_scaled(kap2.parts, keep, qt)
    rhs = prod * _embed_with_fresh(small, keep + 1)
    w = _equal_or_witness(lhs, rhs)
    if w is None:
        return ("conjecture-consistent", None, None,
                f"kappa={kappa.parts}, N={N}, qt={qt.label()}")
    return "conjecture-violated", mpoly_text(w), None, "difference of the two sides"


def _chk_rect_qt(params):
    r, g, N = int(params["r"]), int(params["g"]), int(params["N"])
    bump = int(params.get("perturb", 0))
    if r < 1 or g < 1 or N < 2 * g:
        raise NotApplicable("needs r >= 1, g >= 1 and N >= 2g")
    if math.gcd(N + 1 - g, r - 1) != 1:
        raise NotApplicable("N+1-g and r-1 must be coprime")
    _check_limit(N, "qt_encoded_N")
    alpha = Fraction(-(N + 1 - g), r - 1)
    qt = qt_from_alpha(alpha)
    inv_alpha = 1 / alpha
    big = _mac_sym_scaled((r,) * g, N, qt)
    front = N - g
    plan = {i: (qt.q_power((i - 1) * inv_alpha), FRESH) for i in range(1, front + 1)}
    lhs = substitute(big, plan)
    mapping = [max(i - front, 1) for i in range(1, N + 1)] + [g + 1]
    lhs = lhs.map_vars(mapping, g + 1)
    # factor shifts t^(N-g) q^j, j = 0..r-1: the family the wheel zeros sit
    # on (for N-g = 1 this is the q^(1/alpha+j) family)
    shifts = [qt.q_power(front * inv_alpha + j) for j in range(0, r)]
    rhs = _staircase_power_product(g + 1, ("p",), g, g + 1, 1 + bump, shifts)
    w = _equal_or_witness(lhs, rhs)
    if w is None:
        return "conjecture-consistent", None, None, f"qt={qt.label()}"
    return "conjecture-violated", mpoly_text(w), None, "difference of the two sides"


def _chk_qt_rr(params):
    k, N = int(params["k"]), int(params["N"])
    bump = int(params.get("perturb", 0))
    nv = k * N
    _check_limit(nv, "qt_encoded_N")
    qt = QtMode(d=k + 1, e=-1)  # t = q^(-1/(k+1))
    t = qt.fe_t()
    base = _group_square_product(k, N, ("p",), squared_style="qt", t=t)
    psi = t_symmetrize(base, "U+", qt)
    if N - 2 + bump < 0:
        raise NotApplicable("needs at least two columns per group")
    kap, n2, alpha2 = build_kappa(k, 2, 1, k, N - 2 + bump)
    if n2 != nv:
        raise NotApplicable(f"staircase width {n2} != kN = {nv}")
    p = _mac_sym_scaled(kap.parts, nv, qt)
    ratio, residual = _proportional(psi, p)
    if ratio is not None and residual.is_zero() and not ratio.is_zero():
        return ("conjecture-consistent", None, fieldelement_text(ratio),
                f"kappa={kap.parts}, qt={qt.label()}")
    return ("conjecture-violated",
            mpoly_text(residual if ratio is not None else psi), None,
            "t-symmetrized product is not proportional to the q,t staircase")


_CHECKERS = {
    "PROP1": _chk_prop1,
    "PROP2": _chk_prop2,
    "PROP3_H": lambda p: _chk_prop3(p, "H"),
    "PROP3_L": lambda p: _chk_prop3(p, "L"),
    "EQ14_1": _chk_eq14_1,
    "EQ14_2": _chk_eq14_2,
    "EQ12_1": _chk_eq12_1,
    "PROP4": _chk_prop4,
    "CLUSTER25_1": _chk_cluster25_1,
    "RECT26": _chk_rect26,
    "NONSYM26_1": _chk_nonsym26_1,
    "NONSYM22_1": _chk_nonsym22_1,
    "RR_J3A": _chk_rr_j3a,
    "PFAFF": _chk_pfaff,
    "HW_LP": _chk_hw_lp,
    "LW_LM": _chk_lw_lm,
    "B3B5": _chk_b3b5,
    "CONJ23_8": _chk_conj23_8,
    "RECT_QT": _chk_rect_qt,
    "QT_RR": _chk_qt_rr,
}

IDENTITY_IDS = tuple(_CHECKERS)


def verify(case):
    """Run one identity case and return its report."""
    if not isinstance(case, IdentityCase):
        raise TypeError("verify expects an IdentityCase")
    if case.identity not in _CHECKERS:
        raise ValueError(f"unknown identity {case.identity!r}")
    anchor = ANCHORS[case.identity]
    t0 = time.perf_counter()
    try:
        verdict, wpoly, wconst, detail = _CHECKERS[case.identity](case.params)
    except NotApplicable as exc:
        return IdentityReport(case, "not-applicable", anchor, detail=str(exc),
                              timing_ms=(time.perf_counter() - t0) * 1e3)
    except PoleError as exc:
        fail = "conjecture-violated" if case.identity in CONJECTURES else "fails"
        return IdentityReport(case, fail, anchor,
                              detail=f"pole during construction: {exc}",
                              timing_ms=(time.perf_counter() - t0) * 1e3)
    return IdentityReport(case, verdict, anchor, witness_poly=wpoly,
                          witness_constant=wconst, detail=detail,
                          timing_ms=(time.perf_counter() - t0) * 1e3)


# ---------------------------------------------------------------------------
# case enumeration and scanning
# ---------------------------------------------------------------------------

def _partitions_up_to(weight, max_len):
    from .partlib import partitions_of
    out = [()]
    for w in range(1, weight + 1):
        out.extend(partitions_of(w, max_len))
    return out


def enumerate_cases(identity, ranges):
    """Deterministic admissible-case enumeration for scans."""
    out = []
    if identity in ("PROP1", "EQ12_1"):
        for r in ranges.get("r", [2]):
            for N in ranges.get("N", [3]):
                for kappa in _partitions_up_to(ranges.get("max_weight", 0), N):
                    out.append(IdentityCase(identity,
                                            {"r": r, "N": N, "kappa": kappa}))
    elif identity == "PROP2":
        for l in ranges.get("l", [1]):
            for N in ranges.get("N", [3]):
                for kappa in _partitions_up_to(ranges.get("max_weight", 0), N):
                    out.append(IdentityCase(identity,
                                            {"l": l, "N": N, "kappa": kappa}))
    elif identity in ("PROP3_H", "PROP3_L"):
        for N in ranges.get("N", [3]):
            for kappa in _partitions_up_to(ranges.get("max_weight", 0), N):
                for l in ranges.get("l", []):
                    out.append(IdentityCase(identity, {
                        "l": l, "N": N, "kappa": kappa, "symmetric": False}))
                for r in ranges.get("r", []):
                    out.append(IdentityCase(identity, {
                        "r": r, "N": N, "kappa": kappa, "symmetric": True}))
    elif identity == "EQ14_1":
        for l in ranges.get("l", [1]):
            for N in ranges.get("N", [3]):
                out.append(IdentityCase(identity, {"l": l, "N": N}))
    elif identity == "EQ14_2":
        for r in ranges.get("r", [2]):
            for N in ranges.get("N", [3]):
                out.append(IdentityCase(identity, {"r": r, "N": N}))
    elif identity == "PROP4":
        for r in ranges.get("r", [2]):
            for N in ranges.get("N", [2]):
                for kappa in ranges.get("kappas",
                                        _partitions_up_to(
                                            ranges.get("max_weight", 0), N)):
                    out.append(IdentityCase(identity,
                                            {"r": r, "N": N,
                                             "kappa": tuple(kappa)}))
    elif identity in ("CLUSTER25_1", "NONSYM26_1", "HW_LP", "LW_LM"):
        for inst in ranges.get("instances", []):
            k, r, s, m, b = inst
            out.append(IdentityCase(identity,
                                    {"k": k, "r": r, "s": s, "m": m, "b": b}))
        out.extend(_staircase_family_cases(identity, ranges))
    elif identity in ("RECT26", "RECT_QT"):
        for r, g, N in ranges.get("cases", []):
            out.append(IdentityCase(identity, {"r": r, "g": g, "N": N}))
        if "r_max" in ranges:
            for r in range(2, ranges["r_max"] + 1):
                for N in range(2, ranges.get("N_max", 0) + 1):
                    for g in range(1, N // 2 + 1):
                        if r >= 2 and math.gcd(N + 1 - g, r - 1) == 1:
                            out.append(IdentityCase(identity,
                                                    {"r": r, "g": g, "N": N}))
    elif identity == "RR_J3A":
        for k in ranges.get("k", [1]):
            for N in ranges.get("N", [2]):
                out.append(IdentityCase(identity, {"k": k, "N": N}))
    elif identity == "PFAFF":
        for n in ranges.get("n", [4]):
            out.append(IdentityCase(identity, {"n": n}))
    elif identity == "B3B5":
        for entry in ranges.get("cases", []):
            out.append(IdentityCase(identity, dict(entry)))
    elif identity == "CONJ23_8":
        out.extend(_staircase_family_cases(identity, ranges))
    elif identity == "QT_RR":
        for k in range(1, ranges.get("k_max", 0) + 1):
            for N in range(2, ranges.get("vars_max", 0) + 1):
                if k * N <= ranges.get("vars_max", 0):
                    out.append(IdentityCase(identity, {"k": k, "N": N}))
    else:
        raise ValueError(f"no enumerator for {identity!r}")
    return out


def _staircase_family_cases(identity, ranges):
    out = []
    n_max = ranges.get("N_max", 0)
    for k in range(1, ranges.get("k_max", 0) + 1):
        for r in range(2, ranges.get("r_max", 1) + 1):
            if math.gcd(k + 1, r - 1) != 1:
                continue
            for s in range(1, ranges.get("s_max", 1) + 1):
                for m in range(1, k + 1):
                    n0 = (k + 1) * s - 1
                    b = 0
                    while n0 + b * k + m <= n_max:
                        out.append(IdentityCase(identity,
                                                {"k": k, "r": r, "s": s,
                                                 "m": m, "b": b}))
                        b += 1
    return out


def scan(idlist, ranges, budget_seconds=None, cache=None,
         halt_on_violation=True, progress=None):
    """Enumerate admissible cases, verify each, return reports in order.

    Per-case errors are recorded as reports; a conjecture violation aborts the
    remainder when halt_on_violation is set.  A report cache (see
    ``cache.ReportCache``) makes interrupted scans resumable.
    """
    reports = []
    t0 = time.perf_counter()
    for identity in idlist:
        for case in enumerate_cases(identity, ranges.get(identity, ranges)):
            if budget_seconds is not None \
                    and time.perf_counter() - t0 > budget_seconds:
                return reports
            rep = None
            if cache is not None:
                rep = cache.get_report(case)
            if rep is None:
                try:
                    rep = verify(case)
                except Exception as exc:  # recorded, scan continues
                    rep = IdentityReport(case, "fails", ANCHORS[identity],
                                         detail=f"error: {exc!r}")
                if cache is not None and rep.verdict != "fails":
                    cache.put_report(case, rep)
            reports.append(rep)
            if progress is not None:
                progress(rep)
            if halt_on_violation and rep.verdict == "conjecture-violated":
                return reports
    return reports
