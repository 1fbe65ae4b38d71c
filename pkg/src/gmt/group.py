"""Elements of the ascending HNN-extension G(m, T) of Z^m.

G(m, T) = < a_1..a_m, t | [a_i, a_j] = 1, t a^u t^-1 = a^(Tu) >.

Every element g is stored as the pair (v, k) where k = tau(g) is the
t-exponent sum and v = phi(g t^-k) is a vector in Z[1/d]^m. The product law is

    (v1, k1) (v2, k2) = (v1 + T^k1 v2, k1 + k2)

and because phi is injective on the elliptic subgroup A = ker(tau), the
reduced pair is a complete invariant: equality and hashing never need a word
problem solver.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import BadGeneratorIndex, ConfigError, InvalidElement
from .linalg import (
    GrowthClass,
    IntMatrix,
    _add,
    _identity,
    _matpow,
    _matvec,
    _scale,
    as_matrix,
    classify,
    det_and_adjugate,
    reduce_vector,
    root_of_unity_exponent,
    to_common_denominator,
)


class Element:
    """Immutable group element (v, k) with v = num / den, den > 0 reduced."""

    __slots__ = ("k", "den", "num", "_hash")

    def __init__(self, k: int, den: int, num: tuple[int, ...]):
        self.k = k
        self.den = den
        self.num = num
        self._hash = hash((k, den, num))

    @property
    def v(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.num)

    @property
    def tau(self) -> int:
        return self.k

    @property
    def is_elliptic(self) -> bool:
        return self.k == 0

    @property
    def is_integral(self) -> bool:
        return self.den == 1

    def sort_key(self):
        return (self.k, self.v)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.k == other.k and self.den == other.den and self.num == other.num

    def __hash__(self):
        return self._hash

    def __repr__(self):
        v = ", ".join(str(x) for x in self.v)
        return f"Element(v=({v}), k={self.k})"

    def to_json(self) -> dict:
        return {"k": self.k, "v": [[str(x), str(self.den)] for x in self.num]}


@dataclass(frozen=True)
class Token:
    gen: int  # 1..m for a_i, 0 for t
    exp: int

    def __str__(self):
        name = "t" if self.gen == 0 else f"a{self.gen}"
        return name if self.exp == 1 else f"{name}^{self.exp}"


_TOKEN_RE = re.compile(r"^(t|a(\d+))(?:\^([+-]?\d+))?$")


def parse_word(text: str) -> list[Token]:
    """Parse ``"t a1^3 t^-1 a2"``. Zero exponents are dropped."""
    tokens = []
    for part in text.split():
        match = _TOKEN_RE.match(part)
        if match is None:
            raise ConfigError(f"bad word token {part!r}")
        gen = 0 if match.group(1) == "t" else int(match.group(2))
        exp = int(match.group(3)) if match.group(3) is not None else 1
        if exp:
            tokens.append(Token(gen, exp))
    return tokens


def format_word(tokens: Iterable[Token]) -> str:
    return " ".join(str(tok) for tok in tokens)


class GroupSpec:
    """A group instance G(m, T): the matrix plus everything derived from it."""

    def __init__(self, T):
        self.T = as_matrix(T)
        self.m = self.T.m
        self.d, self.adj = det_and_adjugate(self.T)
        self.N = root_of_unity_exponent(self.m)
        self.growth_class: GrowthClass = classify(self.T)
        self._pos = [_identity(self.m)]
        self._neg = [_identity(self.m)]
        self._neg_den = [1]

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        return cls(IntMatrix.parse(text))

    def __repr__(self):
        return f"GroupSpec({str(self.T)!r})"

    def __eq__(self, other):
        return isinstance(other, GroupSpec) and self.T == other.T

    def __hash__(self):
        return hash(self.T)

    @property
    def matrix_text(self) -> str:
        return str(self.T)

    # --- exact powers of T -------------------------------------------------

    def _power(self, k: int):
        """Return (rows, den) with T^k = rows / den."""
        if k >= 0:
            while len(self._pos) <= k:
                self._pos.append(tuple(map(tuple, _mm(self.T.rows, self._pos[-1]))))
            return self._pos[k], 1
        j = -k
        while len(self._neg) <= j:
            self._neg.append(tuple(map(tuple, _mm(self.adj.rows, self._neg[-1]))))
            self._neg_den.append(self._neg_den[-1] * self.d)
        return self._neg[j], self._neg_den[j]

    def power_matrix(self, k: int) -> IntMatrix:
        rows, den = self._power(k)
        if den != 1 and any(x % den for row in rows for x in row):
            raise ValueError(f"T^{k} is not integral")
        return IntMatrix(tuple(tuple(x // den for x in row) for row in rows))

    def apply_power(self, k: int, den: int, num: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
        """T^k (num / den), reduced."""
        if k == 0:
            return den, num
        rows, pden = self._power(k)
        return reduce_vector(den * pden, _matvec(rows, num))

    @cached_property
    def shift_minus_identity(self) -> tuple:
        """Rows of T^N - I."""
        return _add(_matpow(self.T.rows, self.N), _scale(_identity(self.m), -1))

    # --- constructors --------------------------------------------------------

    @cached_property
    def identity(self) -> Element:
        return Element(0, 1, (0,) * self.m)

    def a(self, i: int, exp: int = 1) -> Element:
        if not 1 <= i <= self.m:
            raise BadGeneratorIndex(f"generator a{i} out of range 1..{self.m}")
        num = [0] * self.m
        num[i - 1] = exp
        return Element(0, 1, tuple(num))

    def t(self, exp: int = 1) -> Element:
        return Element(exp, 1, (0,) * self.m)

    def a_vec(self, u: Sequence[int]) -> Element:
        """The element a^u for an integer vector u."""
        if len(u) != self.m:
            raise ValueError("vector has wrong dimension")
        return Element(0, 1, tuple(int(x) for x in u))

    def standard_generators(self) -> list[tuple[str, Element]]:
        gens = [(f"a{i}", self.a(i)) for i in range(1, self.m + 1)]
        gens.append(("t", self.t()))
        return gens

    def element(self, v: Sequence, k: int, e_max: int | None = None) -> Element:
        """Build an Element from raw (v, k), checking that T^e v is integral.

        The default bound e_max = m * (largest prime exponent of the common
        denominator) suffices: on the p-adic part of T with eigenvalues of
        positive valuation, every m applications of T gain a factor p.
        """
        if len(v) != self.m:
            raise ValueError("vector has wrong dimension")
        den, num = to_common_denominator(v)
        el = Element(int(k), den, num)
        if den != 1:
            if e_max is None:
                e_max = self.m * _max_prime_exponent(den)
            if self._integralizing_exponent(el, e_max) is None:
                raise InvalidElement(f"no T^e with e <= {e_max} makes {list(el.v)} integral")
        return el

    def element_from_word(self, word) -> Element:
        if isinstance(word, str):
            word = parse_word(word)
        g = self.identity
        for tok in word:
            if tok.gen == 0:
                h = self.t(tok.exp)
            elif 1 <= tok.gen <= self.m:
                h = self.a(tok.gen, tok.exp)
            else:
                raise BadGeneratorIndex(f"generator a{tok.gen} out of range 1..{self.m}")
            g = self.multiply(g, h)
        return g

    # --- group law -----------------------------------------------------------

    def multiply(self, g: Element, h: Element) -> Element:
        den2, num2 = self.apply_power(g.k, h.den, h.num)
        den1, num1 = g.den, g.num
        if den1 == den2:
            den, num = reduce_vector(den1, (x + y for x, y in zip(num1, num2)))
        else:
            L = den1 * den2 // math.gcd(den1, den2)
            f1, f2 = L // den1, L // den2
            den, num = reduce_vector(L, (x * f1 + y * f2 for x, y in zip(num1, num2)))
        return Element(g.k + h.k, den, num)

    def inverse(self, g: Element) -> Element:
        den, num = self.apply_power(-g.k, g.den, g.num)
        return Element(-g.k, den, tuple(-x for x in num))

    def commutator(self, g: Element, h: Element) -> Element:
        """[g, h] = g^-1 h^-1 g h."""
        return self.multiply(self.multiply(self.inverse(g), self.inverse(h)), self.multiply(g, h))

    def simple_commutator(self, xs: Sequence[Element]) -> Element:
        """Left-nested [x0, ..., xr] = [[x0, ..., x(r-1)], xr]."""
        if len(xs) < 2:
            raise ValueError("a simple commutator needs at least two entries")
        c = xs[0]
        for x in xs[1:]:
            c = self.commutator(c, x)
        return c

    def power(self, g: Element, n: int) -> Element:
        if n < 0:
            g, n = self.inverse(g), -n
        result = self.identity
        while n:
            if n & 1:
                result = self.multiply(result, g)
            g = self.multiply(g, g)
            n >>= 1
        return result

    # --- normal forms ----------------------------------------------------------

    def _integralizing_exponent(self, g: Element, bound: int) -> int | None:
        den, num = g.den, g.num
        e = 0
        while den != 1:
            if e >= bound:
                return None
            den, num = reduce_vector(den, _matvec(self.T.rows, num))
            e += 1
        return e

    def normal_form(self, g: Element, bound: int | None = None) -> "NormalForm":
        """g = t^-r a^u t^s with r >= max(0, -k) minimal and T^r v integral."""
        if bound is None:
            bound = self.m * _max_prime_exponent(g.den)
        e = self._integralizing_exponent(g, bound)
        if e is None:
            raise InvalidElement(f"{g!r} has no integral form within T^{bound}")
        r = max(e, -g.k, 0)
        den, u = self.apply_power(r, g.den, g.num)
        assert den == 1
        return NormalForm(r, u, g.k + r)

    def central_series_index(self, g: Element) -> int | None:
        """Least i with g in Z_i(H), H = <a_1..a_m, t^N>; None if g is outside all.

        Membership is (T^N - I)^i v = 0 on the elliptic subgroup.
        """
        if g.k != 0:
            return None
        return kernel_depth(self.shift_minus_identity, g.num, self.m)

    def is_central_series_member(self, g: Element, i: int) -> bool:
        idx = self.central_series_index(g)
        return idx is not None and idx <= i

    # --- serialization -----------------------------------------------------

    def element_to_json(self, g: Element) -> dict:
        return g.to_json()

    def element_from_json(self, data) -> Element:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            v = [Fraction(int(n), int(d)) for n, d in data["v"]]
            k = int(data["k"])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InvalidElement(f"malformed element record: {exc}") from None
        return self.element(v, k)


@dataclass(frozen=True)
class NormalForm:
    r: int
    u: tuple[int, ...]
    s: int

    def word(self) -> list[Token]:
        tokens = []
        if self.r:
            tokens.append(Token(0, -self.r))
        tokens += [Token(i + 1, x) for i, x in enumerate(self.u) if x]
        if self.s:
            tokens.append(Token(0, self.s))
        return tokens

    def __str__(self):
        return format_word(self.word()) or "1"


def kernel_depth(M: tuple, vec: Sequence[int], limit: int) -> int | None:
    """Least i <= limit with M^i vec = 0, or None."""
    w = tuple(vec)
    for i in range(limit + 1):
        if not any(w):
            return i
        w = _matvec(M, w)
    return None


def _mm(A, B):
    cols = tuple(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def _max_prime_exponent(n: int) -> int:
    n = abs(n)
    best = 0
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        best = max(best, e)
        p += 1
    if n > 1:
        best = max(best, 1)
    return best
