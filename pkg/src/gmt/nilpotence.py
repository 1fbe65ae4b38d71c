"""Density of N_r(G) = {(x_0..x_r) : [x_0, ..., x_r] = 1} in powers of a ball."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from statistics import NormalDist

import numpy as np

from .cayley import Ball
from .errors import BudgetExceeded
from .group import Element, GroupSpec, kernel_depth
from .linalg import GrowthClass, _add, _identity, _matvec, _scale

DEFAULT_BUDGET = 5_000_000
SAMPLE_CHUNK = 1024


def wilson_interval(hits: int, n: int, confidence: float = 0.95) -> tuple[float, float]:
    if n <= 0:
        raise ValueError("need at least one sample")
    if hits == n:
        lo, _ = _wilson(hits, n, confidence)
        return lo, 1.0
    if hits == 0:
        _, hi = _wilson(hits, n, confidence)
        return 0.0, hi
    return _wilson(hits, n, confidence)


def _wilson(hits, n, confidence):
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    p = hits / n
    denom = 1 + z * z / n
    center = (p + z * z / (2 * n)) / denom
    half = z * np.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom
    return float(center - half), float(center + half)


@dataclass
class NrDensityReport:
    r: int
    mode: str
    radii: list[int]
    counts: list[int] | None = None
    totals: list[int] | None = None
    estimates: list[float] | None = None
    cis: list[tuple[float, float]] | None = None
    samples: int | None = None
    seed: int | None = None
    gammas: list = field(init=False)

    def __post_init__(self):
        if self.mode == "exhaustive":
            self.gammas = [Fraction(c, t) for c, t in zip(self.counts, self.totals)]
        else:
            self.gammas = list(self.estimates)

    @property
    def dc_estimate(self) -> list[float]:
        """Running maximum of the gammas: a finite-prefix stand-in for limsup."""
        return np.maximum.accumulate([float(g) for g in self.gammas]).tolist()

    def to_json(self) -> dict:
        rows = []
        for i, n in enumerate(self.radii):
            if self.mode == "exhaustive":
                row = {"n": n, "count": self.counts[i], "total": self.totals[i],
                       "gamma": str(self.gammas[i]), "gammaFloat": float(self.gammas[i])}
            else:
                row = {"n": n, "estimate": self.estimates[i], "ci": list(self.cis[i])}
            rows.append(row)
        out = {"r": self.r, "mode": self.mode, "perRadius": rows,
               "dcEstimate": {"kind": "finite-prefix running max", "values": self.dc_estimate}}
        if self.mode == "sampled":
            out["samples"] = self.samples
            out["seed"] = self.seed
        return out


def _count_block(spec: GroupSpec, firsts, pool, r, levels):
    """Tuples (x0, ..., xr) with x0 in ``firsts`` and the rest in ``pool``,
    tallied by max word length of the entries."""
    tally = [0] * (max(levels.values()) + 1)
    comm = spec.commutator
    identity = spec.identity

    def rec(c, depth, lvl):
        if depth == r:
            for x in pool:
                if comm(c, x) == identity:
                    tally[max(lvl, levels[x])] += 1
            return
        for x in pool:
            rec(comm(c, x), depth + 1, max(lvl, levels[x]))

    for x0 in firsts:
        rec(x0, 1, levels[x0])
    return tally


def nr_density_exhaustive(
    spec: GroupSpec, ball: Ball, r: int, budget: int = DEFAULT_BUDGET, threads: int = 1
) -> NrDensityReport:
    """Exact |N_r n B(i)^(r+1)| / |B(i)|^(r+1) for every i up to the ball radius."""
    if r < 1:
        raise ValueError("commutator depth r must be at least 1")
    elements = ball.elements()
    total = len(elements) ** (r + 1)
    if total > budget:
        raise BudgetExceeded(f"|B|^{r + 1} = {total} exceeds the tuple budget {budget}")
    levels = {g: ball.records[g].length for g in elements}
    blocks = [elements[i : i + 16] for i in range(0, len(elements), 16)]
    work = lambda b: _count_block(spec, b, elements, r, levels)  # noqa: E731
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            tallies = list(pool.map(work, blocks))
    else:
        tallies = [work(b) for b in blocks]
    per_level = np.zeros(ball.radius + 1, dtype=object)
    for t in tallies:
        for i, c in enumerate(t):
            per_level[i] += c
    counts = np.cumsum(per_level).tolist()
    sizes = ball.per_radius_counts[: ball.radius + 1]
    return NrDensityReport(r, "exhaustive", list(range(ball.radius + 1)),
                           counts=[int(c) for c in counts], totals=[b ** (r + 1) for b in sizes])


def nr_density_sampled(
    spec: GroupSpec,
    ball: Ball,
    r: int,
    samples: int,
    seed: int,
    radii=None,
    threads: int = 1,
) -> NrDensityReport:
    """Monte Carlo estimate of the N_r density, tuples uniform on B(i)^(r+1).

    Samples are drawn in fixed-size chunks, each chunk from its own Philox
    stream spawned from ``seed``, so the result depends only on the seed.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if r < 1:
        raise ValueError("commutator depth r must be at least 1")
    radii = list(range(ball.radius + 1)) if radii is None else list(radii)
    n_chunks = -(-samples // SAMPLE_CHUNK)
    root = np.random.SeedSequence(seed)
    radius_seqs = root.spawn(len(radii))
    identity = spec.identity
    estimates, cis = [], []
    for n, rseq in zip(radii, radius_seqs):
        elements = ball.elements(n)
        chunk_seqs = rseq.spawn(n_chunks)

        def run(ci):
            size = min(SAMPLE_CHUNK, samples - ci * SAMPLE_CHUNK)
            rng = np.random.Generator(np.random.Philox(chunk_seqs[ci]))
            picks = rng.integers(0, len(elements), size=(size, r + 1))
            return sum(
                spec.simple_commutator([elements[j] for j in row]) == identity for row in picks.tolist()
            )

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                hits = sum(pool.map(run, range(n_chunks)))
        else:
            hits = sum(run(ci) for ci in range(n_chunks))
        estimates.append(hits / samples)
        cis.append(wilson_interval(hits, samples))
    return NrDensityReport(r, "sampled", radii, estimates=estimates, cis=cis, samples=samples, seed=seed)


def cent_crit_oracle(spec: GroupSpec, g: Element, h: Element, i: int) -> bool:
    """Decide [g, h] in Z_i(H) by the linear criterion on normal forms.

    With g = t^-r a^u t^s and h = t^-r0 a^u0 t^s0:
    [g, h] in Z_i(H)  iff  (T^N - I)^i ((T^r0 - T^s0) u + (T^s - T^r) u0) = 0.
    """
    nf, nf0 = spec.normal_form(g), spec.normal_form(h)
    pw = lambda e, u: spec.apply_power(e, 1, u)[1]  # noqa: E731 -- e >= 0 keeps it integral
    w = tuple(
        a - b + c - d
        for a, b, c, d in zip(pw(nf0.r, nf.u), pw(nf0.s, nf.u), pw(nf.s, nf0.u), pw(nf.r, nf0.u))
    )
    M = spec.shift_minus_identity
    for _ in range(i):
        w = _matvec(M, w)
    return not any(w)


def nilpotency_class_bound(spec: GroupSpec) -> int | None:
    """Nilpotency class of G(m, T) when T is unipotent, else None.

    The j-th term of the lower central series sits inside (T - I)^(j-1) Z^m,
    so the class is the least j >= 1 with (T - I)^j = 0.
    """
    if spec.growth_class is not GrowthClass.NILPOTENT:
        return None
    M = _add(spec.T.rows, _scale(_identity(spec.m), -1))
    depth = max(kernel_depth(M, e, spec.m) for e in _identity(spec.m))
    return max(depth, 1)
