"""Exact coefficient arithmetic.

Coefficients live in Q or in a rational function field Q(alpha), Q(a, alpha),
Q(q, t) or Q(p).  A ``ParamPoly`` is a sparse integer polynomial in a fixed
ordered subset of the parameter names; a ``FieldElement`` is a quotient of two
such polynomials kept in canonical form (content and polynomial gcd removed,
denominator leading coefficient positive under graded lex).  Structural
equality of canonical forms is therefore mathematical equality.

The pure-rational case is the empty parameter tuple.  Fractional parameter
powers never appear here: callers encode them through the base parameter ``p``
(e.g. q = p^2, t = p^-1) so that all arithmetic stays in ordinary polynomial
fraction fields.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

# Fixed global ordering of parameter names; every indeterminate tuple is a
# subsequence of this.
PARAM_ORDER = ("alpha", "a", "q", "t", "p")

BigRational = Fraction


class PoleError(ArithmeticError):
    """A denominator vanished under specialization, or a pivot collided."""


class FieldMismatchError(ValueError):
    """Operands live over different indeterminate lists."""


class NonDivisibleError(ArithmeticError):
    """Exact division failed; carries the nonzero remainder witness."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


def grlex_key(exp):
    """Sort key for graded lexicographic order (total degree, then lex)."""
    return (sum(exp), exp)


def check_param_order(indets):
    pos = [PARAM_ORDER.index(n) for n in indets]
    if pos != sorted(pos) or len(set(pos)) != len(pos):
        raise ValueError(f"indeterminates {indets} not in canonical order {PARAM_ORDER}")


# ---------------------------------------------------------------------------
# raw dict-level integer polynomial helpers (terms: exponent tuple -> int)
# ---------------------------------------------------------------------------

def _padd(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _pneg(a):
    return {e: -c for e, c in a.items()}


def _psub(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) - c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _pmul(a, b):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def _pscale(a, c):
    if c == 0:
        return {}
    return {e: c * v for e, v in a.items()}


def _pcontent(a):
    g = 0
    for c in a.values():
        g = math.gcd(g, c)
        if g == 1:
            return 1
    return g


def _pleading(a):
    """(exponent, coefficient) of the graded-lex leading term."""
    e = max(a, key=grlex_key)
    return e, a[e]


def _pdivexact(a, b):
    """Exact division of integer polynomials; raises NonDivisibleError."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    eb, cb = _pleading(b)
    rem = dict(a)
    quot = {}
    while rem:
        ea, ca = _pleading(rem)
        eq = tuple(x - y for x, y in zip(ea, eb))
        if any(x < 0 for x in eq) or ca % cb:
            raise NonDivisibleError("inexact parameter-polynomial division", rem)
        cq = ca // cb
        quot[eq] = cq
        for e, c in b.items():
            ee = tuple(x + y for x, y in zip(eq, e))
            s = rem.get(ee, 0) - cq * c
            if s:
                rem[ee] = s
            else:
                del rem[ee]
    return quot


# -- univariate gcd via primitive pseudo-remainder sequence ------------------

def _to_dense(a):
    d = max(e[0] for e in a)
    out = [0] * (d + 1)
    for e, c in a.items():
        out[e[0]] = c
    return out


def _trim(v):
    while v and v[-1] == 0:
        v.pop()
    return v


def _primitive(v):
    g = 0
    for c in v:
        g = math.gcd(g, c)
        if g == 1:
            return v
    if g == 0:
        return v
    return [c // g for c in v]


def _prem(a, b):
    """Pseudo remainder of dense univariate integer polynomials."""
    r = a[:]
    lb = b[-1]
    db = len(b) - 1
    while _trim(r) and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [lb * c for c in r]
        for i, bc in enumerate(b):
            r[shift + i] -= lr * bc
        _trim(r)
    return r


def _gcd_univar(a, b):
    u, v = _primitive(_to_dense(a)), _primitive(_to_dense(b))
    if len(u) < len(v):
        u, v = v, u
    while v:
        u, v = v, _primitive(_prem(u, v))
    if u[-1] < 0:
        u = [-c for c in u]
    return {(i,): c for i, c in enumerate(u) if c}


# -- multivariate gcd delegated to sympy's sparse rings ----------------------

_SYMPY_RINGS = {}


def _sympy_ring(indets):
    R = _SYMPY_RINGS.get(indets)
    if R is None:
        from sympy.polys.domains import ZZ
        from sympy.polys.orderings import grlex
        from sympy.polys.rings import ring

        R = ring(",".join(indets), ZZ, grlex)[0]
        _SYMPY_RINGS[indets] = R
    return R


def _pgcd(a, b, indets):
    if not a:
        return _pos_leading(b)
    if not b:
        return _pos_leading(a)
    if len(a) == 1 or len(b) == 1:
        return _pgcd_monomial(a, b)
    if not indets:
        return {(): math.gcd(a[()], b[()])}
    if len(indets) == 1:
        ca, cb = _pcontent(a), _pcontent(b)
        cg = math.gcd(ca, cb)
        g = _gcd_univar(a, b)
        return _pscale(g, cg) if cg != 1 else g
    R = _sympy_ring(indets)
    fa = R.from_dict({e: c for e, c in a.items()})
    fb = R.from_dict({e: c for e, c in b.items()})
    g = fa.gcd(fb)
    return {tuple(m): int(c) for m, c in g.items()}


def _pgcd_monomial(a, b):
    """gcd when at least one side is a single term."""
    mono, other = (a, b) if len(a) == 1 else (b, a)
    (em, cm), = mono.items()
    ee = list(em)
    g = abs(cm)
    for e, c in other.items():
        ee = [min(x, y) for x, y in zip(ee, e)]
        g = math.gcd(g, c)
    return {tuple(ee): g}


def _pos_leading(a):
    if a and _pleading(a)[1] < 0:
        return _pneg(a)
    return dict(a)


class ParamPoly:
    """Sparse integer polynomial in an ordered tuple of parameter names."""

    __slots__ = ("indets", "terms")

    def __init__(self, indets, terms):
        self.indets = tuple(indets)
        self.terms = {e: c for e, c in terms.items() if c}

    @classmethod
    def const(cls, indets, c):
        return cls(indets, {(0,) * len(indets): int(c)} if c else {})

    @classmethod
    def gen(cls, indets, name):
        i = indets.index(name)
        e = tuple(1 if j == i else 0 for j in range(len(indets)))
        return cls(indets, {e: 1})

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def __add__(self, other):
        return ParamPoly(self.indets, _padd(self.terms, other.terms))

    def __sub__(self, other):
        return ParamPoly(self.indets, _psub(self.terms, other.terms))

    def __mul__(self, other):
        return ParamPoly(self.indets, _pmul(self.terms, other.terms))

    def __neg__(self):
        return ParamPoly(self.indets, _pneg(self.terms))

    def __eq__(self, other):
        return (isinstance(other, ParamPoly) and self.indets == other.indets
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.indets, frozenset(self.terms.items())))

    def __repr__(self):
        from .serialize import parampoly_text
        return f"ParamPoly({parampoly_text(self.terms)!r})"


_ONE = {}


def _one_terms(nind):
    key = nind
    t = _ONE.get(key)
    if t is None:
        t = {(0,) * nind: 1}
        _ONE[key] = t
    return t


class FieldElement:
    """Canonical element of Q(indets); the empty tuple gives plain Q."""

    __slots__ = ("indets", "_num", "_den", "_hash")

    def __init__(self, indets, num, den, _normalized=False):
        self.indets = tuple(indets)
        if _normalized:
            self._num, self._den = num, den
        else:
            self._num, self._den = _normalize(num, den, self.indets)
        self._hash = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_int(cls, indets, n):
        nind = len(indets)
        num = {(0,) * nind: int(n)} if n else {}
        return cls(indets, num, dict(_one_terms(nind)), _normalized=True)

    @classmethod
    def from_fraction(cls, indets, fr):
        fr = Fraction(fr)
        nind = len(indets)
        z = (0,) * nind
        num = {z: fr.numerator} if fr.numerator else {}
        return cls(indets, num, {z: fr.denominator}, _normalized=True)

    @classmethod
    def gen(cls, indets, name, power=1):
        i = indets.index(name)
        nind = len(indets)
        if power >= 0:
            e = tuple(power if j == i else 0 for j in range(nind))
            return cls(indets, {e: 1}, dict(_one_terms(nind)), _normalized=True)
        e = tuple(-power if j == i else 0 for j in range(nind))
        return cls(indets, dict(_one_terms(nind)), {e: 1}, _normalized=True)

    @classmethod
    def zero(cls, indets):
        return cls.from_int(indets, 0)

    @classmethod
    def one(cls, indets):
        return cls.from_int(indets, 1)

    # -- views ----------------------------------------------------------------

    @property
    def numerator(self):
        return ParamPoly(self.indets, self._num)

    @property
    def denominator(self):
        return ParamPoly(self.indets, self._den)

    def is_zero(self):
        return not self._num

    def is_one(self):
        return self._num == self._den

    def __bool__(self):
        return bool(self._num)

    def as_fraction(self):
        """Exact Fraction value; requires a constant element."""
        num = c = None
        zn = (0,) * len(self.indets)
        if set(self._num) <= {zn} and set(self._den) <= {zn}:
            return Fraction(self._num.get(zn, 0), self._den[zn])
        raise ValueError(f"{self!r} is not a rational constant")

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other):
        if self.indets != other.indets:
            raise FieldMismatchError(
                f"indeterminate mismatch: {self.indets} vs {other.indets}")

    def __add__(self, other):
        self._check(other)
        if not self._num:
            return other
        if not other._num:
            return self
        if self._den == other._den:
            return FieldElement(self.indets, _padd(self._num, other._num),
                                dict(self._den))
        num = _padd(_pmul(self._num, other._den), _pmul(other._num, self._den))
        return FieldElement(self.indets, num, _pmul(self._den, other._den))

    def __sub__(self, other):
        self._check(other)
        if not other._num:
            return self
        if self._den == other._den:
            return FieldElement(self.indets, _psub(self._num, other._num),
                                dict(self._den))
        num = _psub(_pmul(self._num, other._den), _pmul(other._num, self._den))
        return FieldElement(self.indets, num, _pmul(self._den, other._den))

    def __neg__(self):
        return FieldElement(self.indets, _pneg(self._num), dict(self._den),
                            _normalized=True)

    def __mul__(self, other):
        self._check(other)
        if not self._num or not other._num:
            return FieldElement.zero(self.indets)
        return FieldElement(self.indets, _pmul(self._num, other._num),
                            _pmul(self._den, other._den))

    def __truediv__(self, other):
        self._check(other)
        if not other._num:
            raise ZeroDivisionError("field division by zero")
        if not self._num:
            return self
        return FieldElement(self.indets, _pmul(self._num, other._den),
                            _pmul(self._den, other._num))

    def inverse(self):
        if not self._num:
            raise ZeroDivisionError("inverting zero")
        return FieldElement(self.indets, dict(self._den), dict(self._num))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = FieldElement.one(self.indets)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def scale_int(self, k):
        return FieldElement(self.indets, _pscale(self._num, k), dict(self._den))

    def scale_fraction(self, fr):
        fr = Fraction(fr)
        return FieldElement(self.indets, _pscale(self._num, fr.numerator),
                            _pscale(self._den, fr.denominator))

    def __eq__(self, other):
        return (isinstance(other, FieldElement) and self.indets == other.indets
                and self._num == other._num and self._den == other._den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.indets, frozenset(self._num.items()),
                               frozenset(self._den.items())))
        return self._hash

    def __repr__(self):
        from .serialize import fieldelement_text
        return f"FieldElement({fieldelement_text(self)!r})"

    # -- embeddings and specialization ----------------------------------------

    def with_indets(self, target):
        """Embed into the field over a superset of indeterminates."""
        if target == self.indets:
            return self
        if not set(self.indets) <= set(target):
            raise FieldMismatchError(f"cannot embed {self.indets} into {target}")
        check_param_order(target)
        posmap = [target.index(n) for n in self.indets]
        nt = len(target)

        def emb(terms):
            out = {}
            for e, c in terms.items():
                ee = [0] * nt
                for j, x in enumerate(e):
                    ee[posmap[j]] = x
                out[tuple(ee)] = c
            return out

        return FieldElement(target, emb(self._num), emb(self._den),
                            _normalized=True)

    def specialize(self, bindings):
        return specialize(self, bindings)


def _normalize(num, den, indets):
    """Canonical form: primitive parts, gcd removed, den leading coeff > 0."""
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return {}, dict(_one_terms(len(indets)))
    if len(den) == 1:
        # monomial denominator (the Laurent case): no polynomial gcd needed
        (ed, cd), = den.items()
        shift = list(ed)
        for e in num:
            shift = [min(x, y) for x, y in zip(shift, e)]
            if not any(shift):
                break
        g = math.gcd(cd, _pcontent(num))
        sign = -1 if cd < 0 else 1
        gs = g * sign
        if any(shift):
            num = {tuple(x - s for x, s in zip(e, shift)): c // gs
                   for e, c in num.items()}
            ed = tuple(x - s for x, s in zip(ed, shift))
        elif gs != 1:
            num = {e: c // gs for e, c in num.items()}
        return num, {ed: cd // gs}
    cn, cd = _pcontent(num), _pcontent(den)
    c = math.gcd(cn, cd)
    if c > 1:
        num = {e: v // c for e, v in num.items()}
        den = {e: v // c for e, v in den.items()}
    g = _pgcd(num, den, indets)
    if len(g) > 1 or _pleading(g) != ((0,) * len(indets), 1):
        num = _pdivexact(num, g)
        den = _pdivexact(den, g)
    if _pleading(den)[1] < 0:
        num, den = _pneg(num), _pneg(den)
    return num, den


def field_arith(x, y, op):
    """Arithmetic dispatch on the operation names {add, sub, mul, div}."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def _coerce_binding(value, target):
    if isinstance(value, FieldElement):
        return value.with_indets(target)
    if isinstance(value, (int, Fraction)):
        return FieldElement.from_fraction(target, Fraction(value))
    raise TypeError(f"cannot bind parameter to {value!r}")


def specialize(x, bindings):
    """Substitute parameter values, renormalize, detect poles.

    ``bindings`` maps parameter names (a subset of ``x.indets``) to rationals
    or FieldElements.  The result lives over the remaining indeterminates
    joined with any indeterminates appearing in the bound values.
    """
    unknown = set(bindings) - set(x.indets)
    if unknown:
        raise FieldMismatchError(f"bindings for absent parameters {sorted(unknown)}")
    remaining = tuple(n for n in x.indets if n not in bindings)
    extra = set()
    for v in bindings.values():
        if isinstance(v, FieldElement):
            extra |= set(v.indets)
    target = tuple(n for n in PARAM_ORDER if n in set(remaining) | extra)
    values = {n: _coerce_binding(v, target) for n, v in bindings.items()}

    def eval_terms(terms):
        out = FieldElement.zero(target)
        pos = {n: i for i, n in enumerate(x.indets)}
        for e, c in terms.items():
            term = FieldElement.from_int(target, c)
            for n, i in pos.items():
                if e[i] == 0:
                    continue
                if n in values:
                    term = term * values[n] ** e[i]
                else:
                    term = term * FieldElement.gen(target, n, e[i])
            out = out + term
        return out

    den = eval_terms(x._den)
    if den.is_zero():
        raise PoleError(
            f"denominator vanishes under {_fmt_bindings(bindings)}")
    return eval_terms(x._num) / den


def _fmt_bindings(bindings):
    parts = []
    for n, v in sorted(bindings.items()):
        parts.append(f"{n}={v}")
    return ", ".join(parts)


def fe_sum(items, indets=None):
    items = list(items)
    if not items:
        if indets is None:
            raise ValueError("empty sum needs explicit indets")
        return FieldElement.zero(indets)
    return reduce(lambda a, b: a + b, items)


def fe_prod(items, indets=None):
    items = list(items)
    if not items:
        if indets is None:
            raise ValueError("empty product needs explicit indets")
        return FieldElement.one(indets)
    return reduce(lambda a, b: a * b, items)
