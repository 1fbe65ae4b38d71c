"""Certificates that the elliptic subgroup A grows exponentially.

For R >= 1 and a basis index j, put

    g_eps = a_j^eps0 t^R a_j^eps1 t^R ... t^R a_j^epsk,   eps in {0,1}^(k+1).

Then g_eps t^(-kR) lies in A with phi-value sum_i eps_i T^(iR) e_j. When these
2^(k+1) vectors are pairwise distinct, A meets the ball of radius
(2R+1)(k+1) in at least 2^(k+1) elements. The search below looks for such a
pair (R, j) and verifies distinctness exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded, DistinctnessFailed, NotExponential, SearchExhausted
from .group import Element, GroupSpec
from .linalg import GrowthClass

DEFAULT_BUDGET = 1 << 22


@dataclass(frozen=True)
class WitnessCertificate:
    R: int
    j: int
    k: int
    count: int
    radius_bound: int
    matrix: str

    def to_json(self) -> dict:
        return {"R": self.R, "j": self.j, "k": self.k, "count": self.count,
                "radiusBound": self.radius_bound, "matrix": self.matrix}


def _basis(spec: GroupSpec, j: int) -> tuple[int, ...]:
    if not 1 <= j <= spec.m:
        raise ValueError(f"basis index {j} out of range 1..{spec.m}")
    return tuple(int(i == j - 1) for i in range(spec.m))


def subset_sums(spec: GroupSpec, R: int, j: int, k: int) -> list[tuple[int, ...]]:
    """All sums sum_i eps_i T^(iR) e_j for eps in {0,1}^(k+1).

    Entry number b has eps_i = bit i of b.
    """
    step = spec.power_matrix(R)
    term = _basis(spec, j)
    sums = [(0,) * spec.m]
    for _ in range(k + 1):
        sums += [tuple(x + y for x, y in zip(s, term)) for s in sums]
        term = step.apply(term)
    return sums


def _all_distinct(spec: GroupSpec, R: int, j: int, k: int) -> bool:
    sums = subset_sums(spec, R, j, k)
    return len(set(sums)) == len(sums)


def growth_ratios(spec: GroupSpec, R: int, j: int, k: int) -> list[float]:
    """||T^((i+1)R) e_j||_inf / ||T^(iR) e_j||_inf for i < k (diagnostic only)."""
    step = spec.power_matrix(R)
    v = _basis(spec, j)
    norms = []
    for _ in range(k + 1):
        norms.append(max(abs(x) for x in v))
        v = step.apply(v)
    return [b / a if a else float("inf") for a, b in zip(norms, norms[1:])]


def find_witness(spec: GroupSpec, max_R: int = 16, k_probe: int = 12) -> tuple[int, int]:
    """Least (R, j) in lexicographic order whose 2^(k_probe+1) subset sums are distinct."""
    if spec.growth_class is not GrowthClass.EXPONENTIAL:
        raise NotExponential(f"T = {spec.T} gives a {spec.growth_class.value} group")
    for R in range(1, max_R + 1):
        for j in range(1, spec.m + 1):
            if _all_distinct(spec, R, j, k_probe):
                return R, j
    raise SearchExhausted(f"no witness with R <= {max_R} at depth {k_probe}")


def verify_certificate(spec: GroupSpec, R: int, j: int, k: int, budget: int = DEFAULT_BUDGET) -> WitnessCertificate:
    """Materialize every phi(g_eps t^-kR) and check that they are pairwise distinct."""
    if R < 1 or k < 0:
        raise ValueError("need R >= 1 and k >= 0")
    if 2 ** (k + 1) > budget:
        raise BudgetExceeded(f"2^{k + 1} candidate elements exceed the budget {budget}")
    sums = subset_sums(spec, R, j, k)
    distinct = set(sums)
    if len(distinct) != len(sums):
        raise DistinctnessFailed(
            f"(R={R}, j={j}) gives only {len(distinct)} distinct values out of {len(sums)} at depth {k}"
        )
    return WitnessCertificate(R, j, k, len(distinct), (2 * R + 1) * (k + 1), spec.matrix_text)


def g_epsilon(spec: GroupSpec, R: int, j: int, eps) -> Element:
    """The group element a_j^eps0 t^R a_j^eps1 ... t^R a_j^epsk."""
    g = spec.identity
    for i, e in enumerate(eps):
        if i:
            g = spec.multiply(g, spec.t(R))
        if e:
            g = spec.multiply(g, spec.a(j))
    return g
