"""Nonsymmetric, symmetric and antisymmetric Jack polynomials.

The nonsymmetric family E_eta is the joint eigenbasis of the commuting
operators

    xi_i = alpha z_i d_i + 1 - N + sum_{p>i} s_ip,
    d_i  = d/dz_i + (1/alpha) sum_{k != i} (1 - s_ik)/(z_i - z_k),

monic on z^eta with support strictly below eta in the composition order.
Construction walks the composition graph: a raising step appends a box
(E_{(eta_2,..,eta_N,eta_1+1)} = z_N * rotate(E_eta)) and an exchange step
crosses an adjacent ascent (E_{s_i eta} = s_i E_eta + E_eta / (ebar_{i+1} -
ebar_i)).  Every polynomial returned by the public constructors is re-checked
against the defining eigenproblem, so a wrong step cannot escape; a vanishing
exchange denominator at specialized alpha raises PoleError naming the pair.

An independent triangular solve over the same support set is kept alongside
as the reference construction, and the symmetric polynomials are additionally
obtainable from a triangular solve against the degree-preserving symmetric
operator (``sutherland`` method); the test suite pins all routes to each
other and to the Schur bialternant at alpha = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import FieldElement, PoleError
from .mpoly import (MPoly, divided_difference, euler, exact_divide,
                    monomial_symmetric, mul_var, partial,
                    rotate_exponents_left, swap_vars, shift_all,
                    symmetric_m_coefficients, symmetrize, vandermonde)
from .partlib import (AlphaMode, GENERIC_ALPHA, alpha_mode, comp_order_key,
                      compositions_below, delta, eigen_jack_nonsym,
                      eigen_sym_operator, eigenvector_jack,
                      partitions_dominated, sort_desc)


class ConstructionError(AssertionError):
    """An internal invariant of a polynomial construction failed."""


@dataclass(frozen=True)
class JackResult:
    family: str  # "E", "P", or "S"
    label: tuple
    poly: MPoly
    mode: AlphaMode


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------

def dunkl_a_apply(f, i, mode):
    """Type A Dunkl operator d_i."""
    inv = mode.fe().inverse()
    out = partial(f, i)
    for k in range(1, f.nvars + 1):
        if k != i:
            out = out + divided_difference(f, i, k).scale(inv)
    return out


def cherednik_apply(f, i, mode):
    """xi_i = alpha z_i d_i + (1 - N) + sum_{p > i} s_ip."""
    N = f.nvars
    alpha = mode.fe()
    # alpha * z_i * d_i, assembled without the 1/alpha round trip
    core = partial(f, i).scale(alpha)
    for k in range(1, N + 1):
        if k != i:
            core = core + divided_difference(f, i, k)
    out = mul_var(core, i) + f.scale(1 - N)
    for p in range(i + 1, N + 1):
        out = out + swap_vars(f, i, p)
    return out


def sutherland_apply(f, mode):
    """Degree-preserving symmetric eigenoperator (acts on symmetric input):

        sum_j (z_j d/dz_j)^2 + ((N-1)/alpha) sum_j z_j d/dz_j
        + (2/alpha) sum_{j<k} (z_j z_k/(z_j - z_k)) (d/dz_j - d/dz_k).
    """
    N = f.nvars
    inv = mode.fe().inverse()
    out = MPoly.zero(f.nvars, f.indets)
    for j in range(1, N + 1):
        ej = euler(f, j)
        out = out + euler(ej, j) + ej.scale(inv.scale_int(N - 1))
    two_inv = inv.scale_int(2)
    for j in range(1, N + 1):
        for k in range(j + 1, N + 1):
            g = partial(f, j) - partial(f, k)
            # symmetric f makes g antisymmetric in (j,k): the quotient by
            # (z_j - z_k) telescopes exactly
            h = _divide_by_root(g, j, k)
            out = out + mul_var(mul_var(h, j), k).scale(two_inv)
    return out


def _divide_by_root(g, j, k):
    """(z_j - z_k)^-1 applied to a polynomial antisymmetric under s_jk."""
    # (g - s_jk g)/(z_j - z_k) telescopes to 2 g/(z_j - z_k) here
    return divided_difference(g, j, k).scale(Fraction(1, 2))


# ---------------------------------------------------------------------------
# nonsymmetric family
# ---------------------------------------------------------------------------

_MEMO = {}


def clear_memo():
    _MEMO.clear()


def _zero_eta(N):
    return (0,) * N


def _descent_sources(eta):
    """Adjacent-descent predecessors (1-based swap index, source)."""
    out = []
    for i in range(len(eta) - 1):
        if eta[i] > eta[i + 1]:
            src = list(eta)
            src[i], src[i + 1] = src[i + 1], src[i]
            out.append((i + 1, tuple(src)))
    return out


def family_walk(eta, memo, denom_of, compose_swap, compose_raise, repair):
    """Build the triangular family member at eta through the composition graph.

    A raising step handles weakly increasing labels; otherwise every adjacent
    descent with a nonvanishing exchange denominator is a candidate route, in
    position order (at generic parameters the first always works, keeping the
    walk deterministic).  Routes are found on the label graph first, so no
    polynomial work is spent on branches that dead-end at a specialization;
    a label with no pole-free route at all is rebuilt by ``repair`` (and a
    PoleError from the repair marks it as genuinely singular).
    """
    eta = tuple(eta)
    route = {}      # label -> chosen step, for labels reachable pole-free
    blocked = set()

    def candidates_of(cur):
        # adjacent descents first (the deterministic generic path), then the
        # raising step, which holds for every label and never divides
        out = [("swap", i, src, denom_of(src, i))
               for i, src in _descent_sources(cur)]
        if cur[-1] >= 1:
            out.append(("raise", None, (cur[-1] - 1,) + cur[:-1], None))
        return out

    def find_route(start):
        # iterative DFS with per-label resume indices: one branch is explored
        # at a time, so the generic walk stays a single path and backtracking
        # happens only where a specialization actually blocks a step
        cand_cache = {}
        stack = [[start, 0]]
        while stack:
            frame = stack[-1]
            cur, idx = frame
            if cur in memo or cur in route or cur in blocked:
                stack.pop()
                continue
            cands = cand_cache.get(cur)
            if cands is None:
                cands = [c for c in candidates_of(cur)
                         if c[3] is None or not c[3].is_zero()]
                cand_cache[cur] = cands
            resolved = descended = False
            while idx < len(cands):
                src = cands[idx][2]
                if src in memo or src in route:
                    route[cur] = cands[idx]
                    resolved = True
                    break
                if src in blocked:
                    idx += 1
                    continue
                frame[1] = idx
                stack.append([src, 0])
                descended = True
                break
            if resolved:
                stack.pop()
            elif not descended:
                blocked.add(cur)
                stack.pop()

    find_route(eta)

    def build(cur):
        order = []
        stack = [cur]
        while stack:
            node = stack.pop()
            if node in memo:
                continue
            order.append(node)
            if node in route:
                stack.append(route[node][2])
        for node in reversed(order):
            if node in memo:
                continue
            if node in route:
                kind, i, src, den = route[node]
                base = memo[src]
                poly = (compose_raise(src, base) if kind == "raise"
                        else compose_swap(src, i, den, base))
            else:
                poly = repair(node)
            memo[node] = poly
        return memo[cur]

    return build(eta)


def jack_nonsym_raw(eta, N, mode):
    """E_eta without the final eigenproblem re-check (memoized)."""
    eta = tuple(eta)
    if len(eta) != N:
        raise ValueError("composition length must equal N")
    key = ("E", N, mode)
    memo = _MEMO.get(key)
    if memo is None:
        memo = {_zero_eta(N): MPoly.const(N, mode.indets(), 1)}
        _MEMO[key] = memo
    if eta in memo:
        return memo[eta]

    def denom_of(src, i):
        return (eigen_jack_nonsym(src, i + 1, mode)
                - eigen_jack_nonsym(src, i, mode))

    def compose_raise(src, base):
        return mul_var(rotate_exponents_left(base), N)

    def compose_swap(src, i, den, base):
        return swap_vars(base, i, i + 1) + base.scale(den.inverse())

    def repair(cur):
        if mode.generic:
            raise PoleError(f"no route into {cur} at generic alpha")
        return specialize_poly(jack_nonsym_raw(cur, N, GENERIC_ALPHA),
                               mode.value)

    return family_walk(eta, memo, denom_of, compose_swap, compose_raise, repair)


def check_nonsym_eigen(poly, eta, mode):
    """Assert xi_i poly = ebar_i poly for every i (the defining property)."""
    for i in range(1, len(eta) + 1):
        want = poly.scale(eigen_jack_nonsym(eta, i, mode))
        if cherednik_apply(poly, i, mode) != want:
            raise ConstructionError(
                f"eigenproblem check failed for E_{eta} at i={i}, "
                f"alpha={mode.label()}")


def jack_nonsymmetric(eta, N=None, mode=GENERIC_ALPHA):
    """E_eta(z; alpha), monic on z^eta, eigen-checked after construction.

    At specialized alpha the direct walk runs first; if its every routing
    collides, the generic polynomial is computed and specialized (a PoleError
    then means E_eta is genuinely singular there).
    """
    eta = tuple(eta)
    if N is None:
        N = len(eta)
    key = ("E+checked", N, mode, eta)
    hit = _MEMO.get(key)
    if hit is None:
        if mode.generic:
            poly = jack_nonsym_raw(eta, N, mode)
        else:
            try:
                poly = jack_nonsym_raw(eta, N, mode)
            except PoleError:
                generic = jack_nonsym_raw(eta, N, GENERIC_ALPHA)
                poly = specialize_poly(generic, mode.value)
        check_nonsym_eigen(poly, eta, mode)
        _MEMO[key] = poly
        hit = poly
    return JackResult("E", eta, hit, mode)


def jack_nonsym_solve(eta, N=None, mode=GENERIC_ALPHA):
    """Reference construction: triangular solve over the support set."""
    eta = tuple(eta)
    if N is None:
        N = len(eta)
    indets = mode.indets()
    support = sorted(compositions_below(eta), key=comp_order_key, reverse=True)
    assert support[0] == eta
    target_vec = eigenvector_jack(eta, mode)
    rows = {}
    coeffs = {eta: FieldElement.one(indets)}

    def xi_row(nu):
        row = rows.get(nu)
        if row is None:
            mono = MPoly.monomial(N, indets, nu)
            row = [cherednik_apply(mono, i, mode) for i in range(1, N + 1)]
            rows[nu] = row
        return row

    for nu in support[1:]:
        vec = eigenvector_jack(nu, mode)
        for i in range(N):
            den = target_vec[i] - vec[i]
            if not den.is_zero():
                num = FieldElement.zero(indets)
                for mu, c in coeffs.items():
                    num = num + xi_row(mu)[i].coefficient(nu) * c
                val = num / den
                if not val.is_zero():
                    coeffs[nu] = val
                break
        else:
            raise PoleError(
                f"all eigenvalues of {nu} collide with {eta} "
                f"at alpha={mode.label()}")
    terms = {nu: c for nu, c in coeffs.items()}
    poly = MPoly(N, indets, terms)
    check_nonsym_eigen(poly, eta, mode)
    return JackResult("E", eta, poly, mode)


# ---------------------------------------------------------------------------
# symmetric and antisymmetric families
# ---------------------------------------------------------------------------

def _normalize_leading(poly, kappa, N, what):
    lead = poly.coefficient(tuple(kappa) + (0,) * (N - len(kappa)))
    if lead.is_zero():
        raise PoleError(f"{what} has vanishing leading coefficient")
    return poly.scale(lead.inverse())


def _jack_sym_cherednik(kappa, N, mode):
    eta = tuple(reversed(kappa))
    E = jack_nonsymmetric(eta, N, mode).poly
    S = symmetrize(E, "Sym")
    return _normalize_leading(S, kappa, N, f"symmetrized E_{eta}")


def _jack_sym_sutherland(kappa, N, mode):
    target = eigen_sym_operator(kappa, N, mode)
    basis = sorted(partitions_dominated(kappa, N), reverse=True)
    assert basis[0] == tuple(kappa)
    indets = mode.indets()
    coeffs = {tuple(kappa): FieldElement.one(indets)}
    rows = {}
    for mu in basis[1:]:
        den = target - eigen_sym_operator(mu, N, mode)
        if den.is_zero():
            raise PoleError(
                f"symmetric pivot collides for ({mu}, {tuple(kappa)}) "
                f"at alpha={mode.label()}")
        num = FieldElement.zero(indets)
        for nu, c in coeffs.items():
            row = rows.get(nu)
            if row is None:
                row = symmetric_m_coefficients(
                    sutherland_apply(monomial_symmetric(N, indets, nu), mode))
                rows[nu] = row
            hit = row.get(mu)
            if hit is not None:
                num = num + hit * c
        val = num / den
        if not val.is_zero():
            coeffs[mu] = val
    out = MPoly.zero(N, indets)
    for mu, c in coeffs.items():
        out = out + monomial_symmetric(N, indets, mu).scale(c)
    return out


def jack_symmetric(kappa, N=None, mode=GENERIC_ALPHA, method="cherednik"):
    """P_kappa(z; alpha), monic on m_kappa.

    ``cherednik`` symmetrizes the nonsymmetric polynomial labelled by the
    reversed partition (the defining route); ``sutherland`` solves the
    triangular system of the symmetric eigenoperator and exists as an
    independent cross-check.  At specialized alpha the direct computation is
    attempted first and the generic computation specializes in as a fallback
    when an intermediate denominator happens to vanish.
    """
    kappa = sort_desc(kappa)
    if N is None:
        N = len(kappa)
    kappa = kappa + (0,) * (N - len(kappa))
    if len(kappa) > N:
        raise ValueError("partition longer than N")
    key = ("P", N, mode, kappa, method)
    hit = _MEMO.get(key)
    if hit is None:
        build = (_jack_sym_cherednik if method == "cherednik"
                 else _jack_sym_sutherland)
        if mode.generic:
            hit = build(kappa, N, mode)
        else:
            try:
                hit = build(kappa, N, mode)
            except PoleError:
                generic = jack_symmetric(kappa, N, GENERIC_ALPHA, method).poly
                hit = specialize_poly(generic, mode.value)
        _MEMO[key] = hit
    return JackResult("P", kappa, hit, mode)


def specialize_poly(poly, value):
    """Substitute a rational alpha into every coefficient (PoleError on a
    genuinely singular coefficient)."""
    out = {}
    for e, c in poly.terms.items():
        out[e] = c.specialize({"alpha": Fraction(value)})
    return MPoly(poly.nvars, (), out)


def jack_antisymmetric(kappa, N=None, mode=GENERIC_ALPHA, cross_check=True):
    """S_{kappa+delta}(z; alpha) = Delta(z) P_kappa(z; alpha/(1+alpha)).

    Cross-checked (by proportionality, constant not assumed) against the
    antisymmetrized nonsymmetric polynomial labelled by a rearrangement of
    kappa + delta.
    """
    kappa = sort_desc(kappa)
    if N is None:
        N = len(kappa)
    kappa = kappa + (0,) * (N - len(kappa))
    indets = mode.indets()
    if mode.generic:
        alpha = mode.fe()
        shifted = alpha / (FieldElement.one(indets) + alpha)
        generic_p = jack_symmetric(kappa, N, GENERIC_ALPHA).poly
        terms = {e: c.specialize({"alpha": shifted})
                 for e, c in generic_p.terms.items()}
        p_shift = MPoly(N, indets, terms)
    else:
        if mode.value == -1:
            raise PoleError("alpha = -1 makes alpha/(1+alpha) undefined")
        p_shift = jack_symmetric(kappa, N,
                                 alpha_mode(mode.value / (1 + mode.value))).poly
    spoly = vandermonde(N, indets) * p_shift
    if cross_check:
        label = tuple(kappa[i] + x for i, x in enumerate(delta(N)))
        rho = tuple(reversed(label))
        asym = symmetrize(jack_nonsymmetric(rho, N, mode).poly, "Asym")
        lead = label
        ratio = asym.coefficient(lead) / spoly.coefficient(lead)
        if ratio.is_zero() or asym != spoly.scale(ratio):
            raise ConstructionError(
                f"antisymmetrized E_{rho} is not proportional to S_{label}")
    return JackResult("S", tuple(kappa), spoly, mode)


# ---------------------------------------------------------------------------
# expansions and binomial coefficients
# ---------------------------------------------------------------------------

def jack_basis_expand(f, mode=GENERIC_ALPHA):
    """Coefficients of a symmetric polynomial in the {P_mu} basis.

    Triangular elimination against leading monomials; partitions of every
    degree present in f may appear.
    """
    coeffs = {}
    g = f
    guard = 0
    while not g.is_zero():
        guard += 1
        if guard > 10000:
            raise ConstructionError("basis expansion failed to terminate")
        e, c = g.leading()
        mu = sort_desc(e)
        if tuple(e) != mu:
            raise ValueError("input polynomial is not symmetric")
        p = jack_symmetric(mu, f.nvars, mode).poly
        if p.indets != f.indets:
            p = p.with_indets(f.indets)
            c_use = c
        else:
            c_use = c
        coeffs[mu] = c_use
        g = g - p.scale(c_use)
    return coeffs


def evaluate_at_ones(poly):
    one = FieldElement.one(poly.indets)
    out = FieldElement.zero(poly.indets)
    for _, c in poly.terms.items():
        out = out + c
    return out * one


def rescaled_binomial(kappa, mu, N, mode=GENERIC_ALPHA):
    """P_kappa(1^N) * binom(kappa, mu) / P_mu(1^N): the coefficient of P_mu
    in the expansion of P_kappa(1+x).  Well defined even when P_kappa(1^N)
    vanishes at specialized alpha."""
    kappa = sort_desc(kappa)
    p = jack_symmetric(kappa, N, mode).poly
    shifted = shift_all(p, 1)
    table = jack_basis_expand(shifted, mode)
    mu = sort_desc(mu) + (0,) * (N - len(sort_desc(mu)))
    return table.get(mu, FieldElement.zero(p.indets))


def binomial_coefficient(kappa, mu, N, mode=GENERIC_ALPHA):
    """Generalized binomial coefficient (kappa over mu).

    Defined through P_kappa(1+x)/P_kappa(1^N) expanded over P_mu(x)/P_mu(1^N);
    when P_kappa(1^N) = 0 at specialized alpha the raw ratio is undefined and
    the rescaled product above is the meaningful quantity."""
    kappa = sort_desc(kappa)
    mu_s = sort_desc(mu)
    if not all(mu_s[i] <= (kappa[i] if i < len(kappa) else 0)
               for i in range(len(mu_s))):
        raise ValueError("mu must be contained in kappa")
    r = rescaled_binomial(kappa, mu_s, N, mode)
    pk1 = evaluate_at_ones(jack_symmetric(kappa, N, mode).poly)
    pm1 = evaluate_at_ones(jack_symmetric(mu_s, N, mode).poly)
    if pk1.is_zero():
        raise PoleError(
            "P_kappa(1^N) vanishes; use rescaled_binomial at this alpha")
    return r * pm1 / pk1


# ---------------------------------------------------------------------------
# highest / lowest weight operators
# ---------------------------------------------------------------------------

def highest_weight_apply(f):
    """L+ f = sum_j df/dz_j; translation invariance is L+ f = 0."""
    out = MPoly.zero(f.nvars, f.indets)
    for j in range(1, f.nvars + 1):
        out = out + partial(f, j)
    return out


def lowest_weight_apply(f, nphi):
    """L- f = sum_j z_j^2 df/dz_j - N_phi sum_j z_j f.

    This is the degree-raising member of the sl2 triple whose raising member
    is L+; the pair annihilates the product states checked by the harness.
    """
    out = MPoly.zero(f.nvars, f.indets)
    for j in range(1, f.nvars + 1):
        out = out + mul_var(partial(f, j), j, 2)
        out = out - mul_var(f, j).scale(nphi)
    return out


def nphi_for(kappa, N):
    """Monopole charge 2|kappa|/N fixed by the Euler relation."""
    w = sum(kappa)
    if (2 * w) % N:
        raise ValueError(f"2|kappa| = {2 * w} is not divisible by N = {N}")
    return (2 * w) // N


def schur_bialternant(kappa, N):
    """det(z_i^(kappa_j + N - j)) / det(z_i^(N - j)), the alpha = 1 oracle."""
    kappa = sort_desc(kappa) + (0,) * (N - len(sort_desc(kappa)))
    lam = tuple(kappa[i] + x for i, x in enumerate(delta(N)))
    numer = symmetrize(MPoly.monomial(N, (), lam), "Asym")
    return exact_divide(numer, vandermonde(N, ()))
