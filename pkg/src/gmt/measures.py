"""Lazy symmetric random walks on (G, Y), for comparison with ball counting.

One step stays put with probability ``lazy_mass`` and otherwise moves by a
generator drawn uniformly from the symmetrized set Y u Y^-1. Steps are drawn
exactly: with lazy_mass = p/q and |Y u Y^-1| = G, a uniform integer in
[0, qG) is lazy below pG, and the remaining (q - p)G values split evenly
among the generators.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cayley import GenSet
from .errors import UnknownPredicate
from .group import GroupSpec
from .nilpotence import wilson_interval
from .predicates import as_predicate

WALK_CHUNK = 4096


@dataclass(frozen=True)
class WalkConfig:
    steps: int
    samples: int
    seed: int
    lazy_mass: Fraction = Fraction(1, 5)

    def __post_init__(self):
        lazy = Fraction(self.lazy_mass)
        if not 0 < lazy < 1:
            raise ValueError("lazy mass must lie strictly between 0 and 1")
        if self.steps < 0 or self.samples < 1:
            raise ValueError("need steps >= 0 and samples >= 1")
        object.__setattr__(self, "lazy_mass", lazy)


@dataclass
class WalkReport:
    config: WalkConfig
    names: list[str]
    hits: list[int]
    tau_mean: float
    tau_variance: float

    @property
    def estimates(self) -> list[float]:
        return [h / self.config.samples for h in self.hits]

    @property
    def cis(self) -> list[tuple[float, float]]:
        return [wilson_interval(h, self.config.samples) for h in self.hits]

    def to_json(self) -> dict:
        return {
            "n": self.config.steps,
            "samples": self.config.samples,
            "seed": self.config.seed,
            "lazyMass": str(self.config.lazy_mass),
            "perPredicate": [
                {"name": name, "hits": h, "estimate": est, "ci": list(ci)}
                for name, h, est, ci in zip(self.names, self.hits, self.estimates, self.cis)
            ],
            "tauStats": {"mean": self.tau_mean, "variance": self.tau_variance},
        }


def _draw_steps(rng, cfg: WalkConfig, n_gens: int, size: int) -> np.ndarray:
    """Generator indices per (sample, step); -1 marks a lazy step."""
    p, q = cfg.lazy_mass.numerator, cfg.lazy_mass.denominator
    raw = rng.integers(0, q * n_gens, size=(size, cfg.steps))
    lazy = raw < p * n_gens
    idx = (raw - p * n_gens) // (q - p)
    idx[lazy] = -1
    return idx


def walk_estimate(spec: GroupSpec, gens: GenSet | None, cfg: WalkConfig, preds, threads: int = 1) -> WalkReport:
    """Monte Carlo estimate of mu^{*n}(P) for each predicate P.

    Chunks of WALK_CHUNK samples use independent Philox streams spawned from
    the seed, so the report depends only on the seed and the chunk size.
    When every predicate depends on tau alone the walk is tracked through
    its tau-increments only.
    """
    gens = gens or GenSet.standard(spec)
    preds = [as_predicate(p) for p in preds]
    if any(p.needs_length for p in preds):
        raise UnknownPredicate("word-length predicates are not defined on walk endpoints")
    full = any(p.needs_vector for p in preds)
    taus = np.array([g.k for g in gens.elements] + [0], dtype=np.int64)  # index -1 -> lazy
    n_chunks = -(-cfg.samples // WALK_CHUNK)
    seqs = np.random.SeedSequence(cfg.seed).spawn(n_chunks)

    def run(ci):
        size = min(WALK_CHUNK, cfg.samples - ci * WALK_CHUNK)
        rng = np.random.Generator(np.random.Philox(seqs[ci]))
        steps = _draw_steps(rng, cfg, len(gens), size)
        tau = taus[steps].sum(axis=1)
        hits = [0] * len(preds)
        for s in range(size):
            if full:
                g = spec.identity
                for gi in steps[s].tolist():
                    if gi >= 0:
                        g = spec.multiply(g, gens.elements[gi])
            else:
                g = spec.t(int(tau[s]))  # tau-only predicates ignore v
            for pi, pred in enumerate(preds):
                hits[pi] += pred(spec, g)
        return hits, int(tau.sum()), int((tau.astype(object) ** 2).sum())

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, range(n_chunks)))
    else:
        results = [run(ci) for ci in range(n_chunks)]
    hits = [sum(r[0][i] for r in results) for i in range(len(preds))]
    s1 = sum(r[1] for r in results)
    s2 = sum(r[2] for r in results)
    n = cfg.samples
    mean = s1 / n
    var = (s2 - Fraction(s1 * s1, n)) / (n - 1) if n > 1 else Fraction(0)
    return WalkReport(cfg, [p.name for p in preds], hits, float(mean), float(var))
