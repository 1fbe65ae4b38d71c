"""Element predicates used by density reports and random-walk estimates.

A predicate is written as a conjunction of terms joined by ``&``::

    tau=0               t-exponent sum equals 0 (membership in A)
    tau=1 mod 3         t-exponent sum congruent to 1 mod 3
    v2=0                second coordinate of phi vanishes
    integral            phi-value lies in Z^m
    nil<=2              element of Z_2(H), H = <a_1..a_m, t^N>
    nil                 element of some Z_i(H)
    Z, Z+, Z-           the sets Z = Z+ u Z- of elliptic elements
    true

``!term`` negates one term and ``!(...)`` negates a whole conjunction. The Z-set terms need a word
length, so they only make sense on enumerated balls.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import NotElliptic, UnknownPredicate
from .group import Element, GroupSpec

_SUBSCRIPTS = str.maketrans("₀₁₂₃₄₅₆₇₈₉τ", "0123456789t")


@dataclass(frozen=True)
class ZSetConfig:
    beta: Fraction

    def __post_init__(self):
        beta = Fraction(self.beta)
        if beta <= 1:
            raise ValueError(f"beta must exceed 1, got {beta}")
        object.__setattr__(self, "beta", beta)


@dataclass
class Predicate:
    name: str
    terms: list[Callable[[GroupSpec, Element, int | None], bool]] = field(repr=False)
    needs_length: bool = False
    needs_vector: bool = True
    negated: bool = False

    def __call__(self, spec: GroupSpec, g: Element, length: int | None = None) -> bool:
        hit = all(term(spec, g, length) for term in self.terms)
        return hit != self.negated


def zset_classify(spec: GroupSpec, cfg: ZSetConfig, g: Element, length: int) -> tuple[bool, bool]:
    """Return (g in Z+, g in Z-) for an elliptic element of word length ``length``.

    Z+ : beta^len <= ||phi(g)||_inf.
    Z- : |d| >= 2 and d^e phi(g) is not integral, where e is the largest
         integer with |d|^e <= beta^len (that is, floor(len log beta / log|d|)).
    Both comparisons are exact.
    """
    if g.k != 0:
        raise NotElliptic(f"{g!r} is not in the elliptic subgroup")
    bound = cfg.beta ** length
    in_plus = max(abs(x) for x in g.num) >= bound * g.den
    ad = abs(spec.d)
    if ad < 2:
        return in_plus, False
    e = 0
    while ad ** (e + 1) <= bound:
        e += 1
    scale = spec.d ** e
    in_minus = any((scale * x) % g.den for x in g.num)
    return in_plus, in_minus


def _parse_term(term: str, zcfg: ZSetConfig | None):
    t = term.strip().translate(_SUBSCRIPTS).replace(" ", "")
    if t.startswith("!"):
        fn, nl, nv = _parse_term(t[1:], zcfg)
        return (lambda s, g, n: not fn(s, g, n)), nl, nv
    if t in ("true", "G"):
        return (lambda s, g, n: True), False, False
    if t == "A":
        t = "tau=0"
    m = re.fullmatch(r"(?:tau|t)=([+-]?\d+)(?:mod(\d+))?", t) or None
    if m is None:
        m2 = re.fullmatch(r"(?:tau|t)%(\d+)=([+-]?\d+)", t)
        if m2:
            q, c = int(m2.group(1)), int(m2.group(2))
            return _tau_mod(c, q), False, False
    else:
        c = int(m.group(1))
        if m.group(2):
            return _tau_mod(c, int(m.group(2))), False, False
        return (lambda s, g, n: g.k == c), False, False
    m = re.fullmatch(r"v(\d+)=0", t)
    if m:
        i = int(m.group(1)) - 1

        def coord_zero(s, g, n):
            if not 0 <= i < s.m:
                raise UnknownPredicate(f"coordinate v{i + 1} out of range for m={s.m}")
            return g.num[i] == 0

        return coord_zero, False, True
    if t in ("integral", "vint"):
        return (lambda s, g, n: g.den == 1), False, True
    m = re.fullmatch(r"nil(?:<=(\d+))?", t)
    if m:
        if m.group(1) is None:
            return (lambda s, g, n: s.central_series_index(g) is not None), False, True
        level = int(m.group(1))
        return (lambda s, g, n: s.is_central_series_member(g, level)), False, True
    if t in ("Z", "Z+", "Z-"):
        if zcfg is None:
            raise UnknownPredicate(f"predicate {term!r} needs a beta value")
        which = t

        def zterm(s, g, n):
            if g.k != 0:
                return False
            if n is None:
                raise UnknownPredicate("Z-set predicates need word lengths")
            plus, minus = zset_classify(s, zcfg, g, n)
            return {"Z": plus or minus, "Z+": plus, "Z-": minus}[which]

        return zterm, True, True
    raise UnknownPredicate(f"unknown predicate term {term!r}")


def _tau_mod(c: int, q: int):
    if q <= 0:
        raise UnknownPredicate("modulus must be positive")
    return lambda s, g, n: (g.k - c) % q == 0


def parse_predicate(text: str, zcfg: ZSetConfig | None = None) -> Predicate:
    body = text.strip()
    negated = body.startswith("!(") and body.endswith(")")
    if negated:
        body = body[2:-1]
    parts = [p for p in re.split(r"&|\band\b", body) if p.strip()]
    if not parts:
        raise UnknownPredicate(f"empty predicate {text!r}")
    terms, needs_len, needs_vec = [], False, False
    for p in parts:
        fn, nl, nv = _parse_term(p, zcfg)
        terms.append(fn)
        needs_len |= nl
        needs_vec |= nv
    return Predicate(text.strip(), terms, needs_len, needs_vec, negated)


def as_predicate(pred, zcfg: ZSetConfig | None = None) -> Predicate:
    if isinstance(pred, Predicate):
        return pred
    return parse_predicate(pred, zcfg)
