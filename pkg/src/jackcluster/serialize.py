"""Canonical text serialization for coefficients and polynomials.

The format is fixed and unique: terms are sorted graded-lexicographically
descending, integer coefficients are decimal, every exponent is explicit.

    ParamPoly     1*alpha^2 + -3*alpha^1 + 2        (or "0")
    FieldElement  [1*alpha^1 + 1]/[2]
    MPoly term    ([1]/[2])*z1^2*z3^1               (constant monomial: "*1")
    MPoly         term + term + ...                 (or "0")

A cache/wire record carries a header line with the ring data followed by the
body, so a record round-trips to a structurally identical polynomial.
"""

from __future__ import annotations

import re

from .exactnum import FieldElement, grlex_key


def parampoly_text(terms, names=()):
    if not terms:
        return "0"
    parts = []
    for e in sorted(terms, key=grlex_key, reverse=True):
        c = terms[e]
        factors = [str(c)]
        for n, x in zip(names, e):
            if x:
                factors.append(f"{n}^{x}")
        parts.append("*".join(factors))
    return " + ".join(parts)


def fieldelement_text(fe):
    num = parampoly_text(fe._num, fe.indets)
    den = parampoly_text(fe._den, fe.indets)
    return f"[{num}]/[{den}]"


def mpoly_text(mp):
    if not mp.terms:
        return "0"
    parts = []
    for e in sorted(mp.terms, key=grlex_key, reverse=True):
        c = mp.terms[e]
        mono = "*".join(f"z{i + 1}^{x}" for i, x in enumerate(e) if x) or "1"
        parts.append(f"({fieldelement_text(c)})*{mono}")
    return " + ".join(parts)


def mpoly_record(mp):
    """Header + body; the canonical cache/wire format."""
    indets = ",".join(mp.indets)
    return f"mpoly nvars={mp.nvars} indets={indets}\n{mpoly_text(mp)}\n"


_TERM_RE = re.compile(r"\(\[(.*?)\]/\[(.*?)\]\)\*([0-9a-z^*]+)")
_HEADER_RE = re.compile(r"^mpoly nvars=(\d+) indets=([a-z,]*)$")


class SerializationError(ValueError):
    pass


def parse_parampoly(text, names):
    text = text.strip()
    terms = {}
    if text == "0":
        return terms
    nn = len(names)
    for raw in text.split(" + "):
        factors = raw.split("*")
        try:
            c = int(factors[0])
        except ValueError as exc:
            raise SerializationError(f"bad coefficient in {raw!r}") from exc
        e = [0] * nn
        for fct in factors[1:]:
            name, _, power = fct.partition("^")
            if name not in names or not power:
                raise SerializationError(f"bad factor {fct!r}")
            e[names.index(name)] = int(power)
        key = tuple(e)
        if key in terms or c == 0:
            raise SerializationError(f"non-canonical term {raw!r}")
        terms[key] = c
    return terms


def parse_fieldelement(text, names):
    text = text.strip()
    m = re.fullmatch(r"\[(.*)\]/\[(.*)\]", text)
    if not m:
        raise SerializationError(f"bad field element {text!r}")
    num = parse_parampoly(m.group(1), names)
    den = parse_parampoly(m.group(2), names)
    return FieldElement(tuple(names), num, den)


def parse_mpoly_body(text, nvars, indets):
    from .mpoly import MPoly

    text = text.strip()
    if text == "0":
        return MPoly.zero(nvars, indets)
    terms = {}
    for m in _TERM_RE.finditer(text):
        coeff = FieldElement(indets, parse_parampoly(m.group(1), indets),
                             parse_parampoly(m.group(2), indets))
        e = [0] * nvars
        mono = m.group(3)
        if mono != "1":
            for fct in mono.split("*"):
                vm = re.fullmatch(r"z(\d+)\^(\d+)", fct)
                if not vm:
                    raise SerializationError(f"bad monomial factor {fct!r}")
                i = int(vm.group(1))
                if not 1 <= i <= nvars:
                    raise SerializationError(f"variable z{i} out of range")
                e[i - 1] = int(vm.group(2))
        key = tuple(e)
        if key in terms or coeff.is_zero():
            raise SerializationError("non-canonical polynomial body")
        terms[key] = coeff
    out = MPoly(nvars, indets, terms)
    if mpoly_text(out) != text:
        raise SerializationError("polynomial body is not in canonical form")
    return out


def parse_mpoly_record(record):
    lines = record.strip().split("\n")
    if len(lines) != 2:
        raise SerializationError("record must have header and body")
    m = _HEADER_RE.match(lines[0])
    if not m:
        raise SerializationError(f"bad header {lines[0]!r}")
    nvars = int(m.group(1))
    indets = tuple(n for n in m.group(2).split(",") if n)
    return parse_mpoly_body(lines[1], nvars, indets)
