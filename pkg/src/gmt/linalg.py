"""Exact integer matrix arithmetic and growth classification.

Matrices are stored as tuples of tuples of Python ints, so every entry has
arbitrary precision and every value is hashable. Nothing in this module
touches floating point.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence

from .errors import ConfigError, SingularMatrix

Rows = tuple[tuple[int, ...], ...]


class GrowthClass(str, enum.Enum):
    NILPOTENT = "Nilpotent"
    VIRTUALLY_NILPOTENT = "VirtuallyNilpotent"
    EXPONENTIAL = "ExponentialGrowth"


@dataclass(frozen=True)
class IntMatrix:
    """Square matrix with integer entries."""

    rows: Rows

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise ConfigError(f"matrix must be square and nonempty, got {self.rows!r}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def parse(cls, text: str) -> "IntMatrix":
        """Parse ``"2,1;1,1"`` style text (rows split by ';', entries by ',')."""
        try:
            rows = [[int(x) for x in row.split(",")] for row in text.strip().split(";")]
        except ValueError as exc:
            raise ConfigError(f"cannot parse matrix {text!r}: {exc}") from None
        return cls(rows)

    @classmethod
    def identity(cls, m: int) -> "IntMatrix":
        return cls(_identity(m))

    @property
    def m(self) -> int:
        return len(self.rows)

    def __str__(self) -> str:
        return ";".join(",".join(str(x) for x in row) for row in self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(_matmul(self.rows, other.rows))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(_add(self.rows, other.rows))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(_add(self.rows, _scale(other.rows, -1)))

    def __pow__(self, k: int) -> "IntMatrix":
        if k < 0:
            raise ValueError("negative powers are not integral; use mat_pow_apply")
        return IntMatrix(_matpow(self.rows, k))

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        return _matvec(self.rows, vec)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def scaled(self, c: int) -> "IntMatrix":
        return IntMatrix(_scale(self.rows, c))


def as_matrix(T) -> IntMatrix:
    if isinstance(T, IntMatrix):
        return T
    if isinstance(T, str):
        return IntMatrix.parse(T)
    return IntMatrix(T)


# --- raw tuple helpers (hot paths use these directly) ---------------------

def _identity(m: int) -> Rows:
    return tuple(tuple(int(i == j) for j in range(m)) for i in range(m))


def _matmul(A: Rows, B: Rows) -> Rows:
    cols = tuple(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def _matvec(A: Rows, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def _add(A: Rows, B: Rows) -> Rows:
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def _scale(A: Rows, c: int) -> Rows:
    return tuple(tuple(c * a for a in row) for row in A)


def _matpow(A: Rows, k: int) -> Rows:
    result = _identity(len(A))
    base = A
    while k:
        if k & 1:
            result = _matmul(result, base)
        base = _matmul(base, base)
        k >>= 1
    return result


# --- operations ------------------------------------------------------------

def char_poly(M) -> list[int]:
    """Coefficients of det(xI - M), highest degree first (leading 1).

    Faddeev-LeVerrier recurrence; every division is exact over Z.
    """
    A = as_matrix(M).rows
    m = len(A)
    coeffs = [1]
    Mk = _identity(m)
    c = 1
    for k in range(1, m + 1):
        if k > 1:
            Mk = _add(Mk, _scale(_identity(m), c))
        AM = _matmul(A, Mk)
        trace = sum(AM[i][i] for i in range(m))
        q, r = divmod(-trace, k)
        assert r == 0
        c = q
        coeffs.append(c)
        Mk = AM
    return coeffs


def det_and_adjugate(M) -> tuple[int, IntMatrix]:
    """Return ``(det M, adj M)`` with ``M @ adj == det * I``.

    The adjugate comes from Cayley-Hamilton:
    adj M = (-1)^(m+1) (M^(m-1) + c1 M^(m-2) + ... + c_(m-1) I).

    Raises SingularMatrix when det M = 0.
    """
    A = as_matrix(M).rows
    m = len(A)
    cs = char_poly(A)
    d = (-1) ** m * cs[m]
    if d == 0:
        raise SingularMatrix(f"matrix {as_matrix(M)} has determinant 0")
    # Horner evaluation of M^(m-1) + c1 M^(m-2) + ... + c_(m-1) I
    acc = _identity(m)
    for c in cs[1:m]:
        acc = _add(_matmul(A, acc), _scale(_identity(m), c))
    sign = -1 if m % 2 == 0 else 1
    return d, IntMatrix(_scale(acc, sign))


def determinant(M) -> int:
    return (-1) ** as_matrix(M).m * char_poly(M)[-1]


def totient(n: int) -> int:
    result = n
    p = 2
    x = n
    while p * p <= x:
        if x % p == 0:
            while x % p == 0:
                x //= p
            result -= result // p
        p += 1
    if x > 1:
        result -= result // x
    return result


@lru_cache(maxsize=None)
def root_of_unity_exponent(m: int) -> int:
    """lcm of all n with totient(n) <= m.

    A primitive n-th root of unity has degree totient(n) over Q, so it can be
    an eigenvalue of an m x m integer matrix only when totient(n) <= m. Since
    totient(n) >= sqrt(n/2), the search stops at 2 m^2.
    """
    if m < 1:
        raise ValueError("dimension must be positive")
    orders = [n for n in range(1, 2 * m * m + 3) if totient(n) <= m]
    return reduce(math.lcm, orders, 1)


def _nilpotent_power_zero(A: Rows, m: int) -> bool:
    return all(x == 0 for row in _matpow(A, m) for x in row)


def classify(T) -> GrowthClass:
    """Nilpotent / virtually nilpotent / exponential growth, via exact tests.

    (T - I)^m = 0 means every eigenvalue is 1; (T^N - I)^m = 0 means every
    eigenvalue is a root of unity. By Kronecker's theorem the remaining case
    has an eigenvalue off the unit circle.
    """
    T = as_matrix(T)
    det_and_adjugate(T)  # raises on singular input
    m = T.m
    I = _identity(m)
    if _nilpotent_power_zero(_add(T.rows, _scale(I, -1)), m):
        return GrowthClass.NILPOTENT
    N = root_of_unity_exponent(m)
    TN = _matpow(T.rows, N)
    if _nilpotent_power_zero(_add(TN, _scale(I, -1)), m):
        return GrowthClass.VIRTUALLY_NILPOTENT
    return GrowthClass.EXPONENTIAL


def reduce_vector(den: int, num: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Normalize ``num / den`` so that den > 0 and gcd(den, *num) == 1."""
    num = tuple(num)
    if den < 0:
        den = -den
        num = tuple(-x for x in num)
    g = math.gcd(den, *num)
    if g > 1:
        den //= g
        num = tuple(x // g for x in num)
    return den, num


def to_common_denominator(v: Sequence) -> tuple[int, tuple[int, ...]]:
    fr = [Fraction(x) for x in v]
    den = reduce(math.lcm, (f.denominator for f in fr), 1)
    return reduce_vector(den, (f.numerator * (den // f.denominator) for f in fr))


def mat_pow_apply(T, k: int, v: Sequence) -> tuple[Fraction, ...]:
    """T^k v exactly, for any integer k (negative powers through adj/det)."""
    T = as_matrix(T)
    if len(v) != T.m:
        raise ValueError(f"vector of length {len(v)} for {T.m}x{T.m} matrix")
    den, num = to_common_denominator(v)
    if k >= 0:
        num = _matvec(_matpow(T.rows, k), num)
    else:
        d, adj = det_and_adjugate(T)
        num = _matvec(_matpow(adj.rows, -k), num)
        den *= d ** (-k)
    den, num = reduce_vector(den, num)
    return tuple(Fraction(x, den) for x in num)
