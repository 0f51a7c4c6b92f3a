"""Partitions, compositions, orderings, staircase constructors, eigenvalues.

Partitions are weakly decreasing integer tuples padded to a declared variable
count N; compositions are arbitrary nonnegative tuples of length N.  The
dominance order compares prefix sums at equal modulus; the composition order
extends it inside a rearrangement class by inversion-reducing swaps.

Eigenvalue conventions.  ``eigen_jack_sym`` returns the closed form

    sum_j k_j(k_j - 1) + (alpha(N-1) + 1)|k| - 2 alpha sum_j (j-1) k_j

while the degree-preserving operator actually implemented in jackcore has the
same spectrum with alpha replaced by 1/alpha; ``eigen_sym_operator`` returns
that variant, and the choice is pinned by the Schur specialization and by
agreement with the Cherednik construction, not taken on faith from either
closed form.  Similarly the nonsymmetric q,t eigenvalue uses the exponent
-(#{j<i: eta_j >= eta_i} + #{j>i: eta_j > eta_i}); the sum (rather than a
difference) of the two counts is what the defining eigenproblem satisfies.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import FieldElement, PoleError
from .mpoly import _distinct_permutations


# ---------------------------------------------------------------------------
# parameter modes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlphaMode:
    """Generic symbolic alpha, or a rational specialization."""

    value: Fraction | None = None

    @property
    def generic(self):
        return self.value is None

    def indets(self):
        return ("alpha",) if self.generic else ()

    def fe(self, indets=None):
        indets = self.indets() if indets is None else indets
        if self.generic:
            return FieldElement.gen(indets, "alpha")
        return FieldElement.from_fraction(indets, self.value)

    def label(self):
        return "generic" if self.generic else str(self.value)


GENERIC_ALPHA = AlphaMode()


def alpha_mode(value):
    if value is None or value == "generic":
        return GENERIC_ALPHA
    return AlphaMode(Fraction(value))


@dataclass(frozen=True)
class QtMode:
    """Generic (q, t), or the base-p encoding q = p^d, t = sign * p^e.

    Fractional powers such as t = q^(-1/2) are carried by choosing the
    minimal d > 0 clearing all exponent denominators.  The sign choice
    t = -p^e is supported for completeness but unused by the shipped checks.
    """

    d: int | None = None
    e: int | None = None
    sign: int = 1

    @property
    def generic(self):
        return self.d is None

    def __post_init__(self):
        if not self.generic:
            if self.d <= 0:
                raise ValueError("q exponent must be positive")
            g = math.gcd(self.d, abs(self.e))
            if g > 1:
                raise ValueError("p-encoding exponents must be gcd-reduced")
            if self.sign not in (1, -1):
                raise ValueError("sign must be +1 or -1")

    def indets(self):
        return ("q", "t") if self.generic else ("p",)

    def fe_q(self):
        if self.generic:
            return FieldElement.gen(("q", "t"), "q")
        return FieldElement.gen(("p",), "p", self.d)

    def fe_t(self):
        if self.generic:
            return FieldElement.gen(("q", "t"), "t")
        t = FieldElement.gen(("p",), "p", self.e)
        return t if self.sign == 1 else -t

    def q_power(self, exponent):
        """q^exponent for a rational exponent, resolved through p."""
        exponent = Fraction(exponent)
        if self.generic:
            if exponent.denominator != 1:
                raise ValueError("fractional q power needs the p-encoding")
            return self.fe_q() ** exponent.numerator
        raw = exponent * self.d
        if raw.denominator != 1:
            raise ValueError(f"q^{exponent} is not a p-power at d={self.d}")
        return FieldElement.gen(("p",), "p", raw.numerator)

    def label(self):
        if self.generic:
            return "generic"
        s = "-" if self.sign < 0 else ""
        return f"p^{self.d},{s}p^{self.e}"


GENERIC_QT = QtMode()


def qt_from_alpha(alpha):
    """Encoding with t = q^(1/alpha): q = p^b, t = p^a for 1/alpha = a/b."""
    inv = 1 / Fraction(alpha)
    return QtMode(d=inv.denominator, e=inv.numerator)


def qt_from_t_power(x):
    """Encoding with t = q^x for rational x: q = p^b, t = p^a."""
    x = Fraction(x)
    return QtMode(d=x.denominator, e=x.numerator)


_QT_TEXT = re.compile(r"p\^(-?\d+)\s*,\s*(-?)p\^(-?\d+)")


def qt_mode_parse(text):
    """Parse 'generic' or the p-encoding text 'p^d,p^e' / 'p^d,-p^e'."""
    text = (text or "generic").strip()
    if text == "generic":
        return GENERIC_QT
    m = _QT_TEXT.fullmatch(text)
    if not m:
        raise ValueError(f"cannot parse qt mode {text!r}; "
                         "expected 'generic' or 'p^d,p^e'")
    return QtMode(d=int(m.group(1)), e=int(m.group(3)),
                  sign=-1 if m.group(2) else 1)


# ---------------------------------------------------------------------------
# partitions and compositions
# ---------------------------------------------------------------------------

class Partition:
    """Weakly decreasing parts padded to a declared N."""

    __slots__ = ("parts", "N")

    def __init__(self, parts, N=None):
        parts = tuple(int(x) for x in parts)
        if any(x < 0 for x in parts):
            raise ValueError("negative part")
        if list(parts) != sorted(parts, reverse=True):
            raise ValueError(f"{parts} is not weakly decreasing")
        if N is None:
            N = len(parts)
        if len(parts) > N:
            if any(parts[N:]):
                raise ValueError("nonzero parts beyond N")
            parts = parts[:N]
        self.parts = parts + (0,) * (N - len(parts))
        self.N = N

    def modulus(self):
        return sum(self.parts)

    def length(self):
        return sum(1 for x in self.parts if x)

    def frequencies(self):
        return FrequencyNotation.from_partition(self)

    def __iter__(self):
        return iter(self.parts)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Partition{self.parts}"


class Composition:
    __slots__ = ("parts",)

    def __init__(self, parts):
        self.parts = tuple(int(x) for x in parts)
        if any(x < 0 for x in self.parts):
            raise ValueError("negative part")

    @property
    def N(self):
        return len(self.parts)

    def modulus(self):
        return sum(self.parts)

    def sorted(self):
        return Partition(tuple(sorted(self.parts, reverse=True)))

    def __iter__(self):
        return iter(self.parts)

    def __eq__(self, other):
        return isinstance(other, Composition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Composition{self.parts}"


class FrequencyNotation:
    """f_j = multiplicity of the part value j; sum of frequencies is N."""

    __slots__ = ("freqs",)

    def __init__(self, freqs):
        self.freqs = tuple(int(x) for x in freqs)
        if any(x < 0 for x in self.freqs):
            raise ValueError("negative frequency")

    def to_partition(self):
        parts = []
        for value in range(len(self.freqs) - 1, 0, -1):
            parts.extend([value] * self.freqs[value])
        N = sum(self.freqs)
        return Partition(tuple(parts), N)

    @classmethod
    def from_partition(cls, kappa):
        parts = kappa.parts if isinstance(kappa, Partition) else tuple(kappa)
        top = max(parts) if parts else 0
        freqs = [0] * (top + 1)
        for x in parts:
            freqs[x] += 1
        return cls(freqs)

    def __eq__(self, other):
        return isinstance(other, FrequencyNotation) and self.freqs == other.freqs

    def __repr__(self):
        return f"FrequencyNotation{self.freqs}"


def _parts(x):
    if isinstance(x, (Partition, Composition)):
        return x.parts
    return tuple(x)


def delta(N):
    """The staircase (N-1, N-2, ..., 1, 0)."""
    return tuple(range(N - 1, -1, -1))


def add_parts(a, b):
    return tuple(x + y for x, y in zip(a, b))


def scale_parts(a, c):
    return tuple(c * x for x in a)


def sort_desc(comp):
    return tuple(sorted(_parts(comp), reverse=True))


def reduce_partition(parts):
    """Drop zero parts and subtract the smallest nonzero part from the rest."""
    nz = [x for x in _parts(parts) if x]
    if not nz:
        return ()
    low = nz[-1]
    return tuple(x - low for x in nz)


# ---------------------------------------------------------------------------
# orders
# ---------------------------------------------------------------------------

def dominance_less(mu, kappa):
    """Strict dominance: all prefix sums of mu <= those of kappa, mu != kappa."""
    mu, kappa = _parts(mu), _parts(kappa)
    if sum(mu) != sum(kappa):
        raise ValueError("dominance compares equal-modulus partitions only")
    n = max(len(mu), len(kappa))
    mu = mu + (0,) * (n - len(mu))
    kappa = kappa + (0,) * (n - len(kappa))
    if mu == kappa:
        return False
    sm = sk = 0
    for a, b in zip(mu, kappa):
        sm += a
        sk += b
        if sm > sk:
            return False
    return True


def descents_to(eta):
    """Compositions one inversion-reducing swap below eta."""
    eta = _parts(eta)
    n = len(eta)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            if eta[i] > eta[j]:
                nu = list(eta)
                nu[i], nu[j] = nu[j], nu[i]
                out.append(tuple(nu))
    return out


def same_orbit_below(eta):
    """All compositions strictly below eta inside its rearrangement class."""
    eta = _parts(eta)
    seen = set()
    frontier = [eta]
    while frontier:
        nxt = []
        for cur in frontier:
            for nu in descents_to(cur):
                if nu not in seen:
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt
    return seen


def bruhat_less(nu, eta):
    """nu strictly precedes eta: sorted parts strictly dominated, or same
    rearrangement class and nu reachable by inversion-reducing swaps."""
    nu, eta = _parts(nu), _parts(eta)
    if sum(nu) != sum(eta):
        raise ValueError("composition order compares equal moduli only")
    if len(nu) != len(eta):
        raise ValueError("composition lengths differ")
    snu, seta = sort_desc(nu), sort_desc(eta)
    if snu != seta:
        return dominance_less(snu, seta)
    if nu == eta:
        return False
    return nu in same_orbit_below(eta)


def comp_order_key(comp):
    """Total-order key extending the composition order (used by the solves)."""
    c = _parts(comp)
    return (sort_desc(c), c)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def partitions_of(weight, max_len, max_part=None):
    """Weakly decreasing tuples of the given weight with at most max_len parts."""
    if max_part is None:
        max_part = weight

    def rec(remaining, slots, cap):
        if remaining == 0:
            yield ()
            return
        if slots == 0:
            return
        for first in range(min(cap, remaining), 0, -1):
            for rest in rec(remaining - first, slots - 1, first):
                yield (first,) + rest

    yield from rec(weight, max_len, max_part)


def partitions_dominated(kappa, N=None):
    """Partitions of |kappa| weakly below kappa in dominance, padded to N."""
    kappa = _parts(kappa)
    if N is None:
        N = len(kappa)
    w = sum(kappa)
    out = []
    for mu in partitions_of(w, N, max_part=kappa[0] if kappa else 0):
        mu_p = mu + (0,) * (N - len(mu))
        if mu_p == kappa or dominance_less(mu_p, kappa):
            out.append(mu_p)
    return out


def compositions_below(eta):
    """The support set of the triangular expansion: every composition
    strictly preceding eta, plus eta itself."""
    eta = _parts(eta)
    N = len(eta)
    seta = sort_desc(eta)
    out = {eta} | same_orbit_below(eta)
    for mu in partitions_of(sum(eta), N):
        mu_p = mu + (0,) * (N - len(mu))
        if mu_p != seta and dominance_less(mu_p, seta):
            out.update(_distinct_permutations(mu_p))
    return out


# ---------------------------------------------------------------------------
# staircase constructor
# ---------------------------------------------------------------------------

def build_kappa(k, r, s, m, blocks):
    """Staircase family from its frequency template.

    Frequencies [n0, 0^((r-1)s), k, 0^(r-1), k, ..., 0^(r-1), m] with
    n0 = (k+1)s - 1 zero parts, ``blocks`` interior k-blocks below the top
    m-block.  Returns (Partition, N, alpha) with alpha = -(k+1)/(r-1).
    Consecutive nonzero blocks sit r apart, so k_i - k_{i+k} >= r holds on
    the nonzero parts (checked).
    """
    if k < 1 or r < 2 or s < 1 or m < 1 or blocks < 0:
        raise ValueError("parameters out of range")
    if math.gcd(k + 1, r - 1) != 1:
        raise ValueError(f"k+1={k + 1} and r-1={r - 1} must be coprime")
    if m > k:
        raise ValueError("the top block size m must satisfy m <= k")
    n0 = (k + 1) * s - 1
    freqs = [n0] + [0] * ((r - 1) * s)
    for _ in range(blocks):
        freqs += [k] + [0] * (r - 1)
    freqs += [m]
    kappa = FrequencyNotation(freqs).to_partition()
    N = kappa.N
    if N != n0 + blocks * k + m:
        raise AssertionError("frequency template miscounted the parts")
    parts = kappa.parts
    for i in range(kappa.length()):
        upper = parts[i]
        lower = parts[i + k] if i + k < N else 0
        if upper - lower < r:
            raise AssertionError(
                f"exclusion condition violated at i={i + 1}: {upper}-{lower} < {r}")
    return kappa, N, Fraction(-(k + 1), r - 1)


# ---------------------------------------------------------------------------
# eigenvalues
# ---------------------------------------------------------------------------

def eigen_jack_sym(kappa, N, mode):
    """Closed-form symmetric eigenvalue (printed convention; see module doc)."""
    kappa = _parts(kappa)
    kappa = kappa + (0,) * (N - len(kappa))
    alpha = mode.fe()
    w = sum(kappa)
    s1 = sum(x * (x - 1) for x in kappa)
    s2 = sum(j * x for j, x in enumerate(kappa))
    one = FieldElement.one(mode.indets())
    return (one.scale_int(s1)
            + (alpha.scale_int(N - 1) + one).scale_int(w)
            - alpha.scale_int(2 * s2))


def eigen_sym_operator(kappa, N, mode):
    """Eigenvalue of the implemented degree-preserving symmetric operator;
    the closed form above with alpha replaced by 1/alpha."""
    kappa = _parts(kappa)
    kappa = kappa + (0,) * (N - len(kappa))
    if not mode.generic and mode.value == 0:
        raise PoleError("operator eigenvalue undefined at alpha = 0")
    inv = mode.fe().inverse()
    w = sum(kappa)
    s1 = sum(x * (x - 1) for x in kappa)
    s2 = sum(j * x for j, x in enumerate(kappa))
    one = FieldElement.one(mode.indets())
    return (one.scale_int(s1)
            + (inv.scale_int(N - 1) + one).scale_int(w)
            - inv.scale_int(2 * s2))


def _nonsym_counts(eta, i):
    """(#{j<i: eta_j >= eta_i}, #{j>i: eta_j > eta_i}) for 1-based i."""
    eta = _parts(eta)
    x = eta[i - 1]
    left = sum(1 for j in range(i - 1) if eta[j] >= x)
    right = sum(1 for j in range(i, len(eta)) if eta[j] > x)
    return left, right


def eigen_jack_nonsym(eta, i, mode):
    eta = _parts(eta)
    left, right = _nonsym_counts(eta, i)
    one = FieldElement.one(mode.indets())
    return mode.fe().scale_int(eta[i - 1]) - one.scale_int(left + right)


def eigen_macdonald_sym(kappa, N, qt):
    kappa = _parts(kappa)
    kappa = kappa + (0,) * (N - len(kappa))
    q, t = qt.fe_q(), qt.fe_t()
    out = FieldElement.zero(qt.indets())
    for i, x in enumerate(kappa, start=1):
        out = out + q ** x * t ** (N - i)
    return out


def eigen_macdonald_nonsym(eta, i, qt):
    left, right = _nonsym_counts(eta, i)
    eta = _parts(eta)
    return qt.fe_q() ** eta[i - 1] * qt.fe_t() ** (-(left + right))


def eigenvector_jack(eta, mode):
    """All N nonsymmetric eigenvalues of eta as a tuple."""
    eta = _parts(eta)
    return tuple(eigen_jack_nonsym(eta, i, mode) for i in range(1, len(eta) + 1))


def eigenvector_macdonald(eta, qt):
    eta = _parts(eta)
    return tuple(eigen_macdonald_nonsym(eta, i, qt) for i in range(1, len(eta) + 1))
