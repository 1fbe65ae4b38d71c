"""Breadth-first enumeration of Cayley balls and the statistics built on them.

The ball B_Y(n) is grown one sphere at a time. Each sphere is expanded by
right-multiplying every frontier element by every generator; the frontier is
cut into contiguous blocks that can be expanded by worker threads, and the
blocks are merged back in frontier order, so the first discovery of every
element (and therefore its stored geodesic) does not depend on the number of
workers.
"""

from __future__ import annotations

import math
import os
import re
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .errors import (
    ConfigError,
    LimitExceeded,
    NotGenerating,
    NotGeneratingWarning,
    NotInBall,
)
from .group import Element, GroupSpec, format_word, parse_word
from .predicates import Predicate, ZSetConfig, as_predicate, zset_classify

# rough per-element footprint of a stored ball entry, used for the memory cap
_BYTES_PER_ELEMENT = 360


class GenSet:
    """Finite generating set Y, symmetrized to Y u Y^-1 without the identity."""

    def __init__(self, spec: GroupSpec, gens: Sequence[tuple[str, Element]], symmetrize: bool = True):
        self.spec = spec
        self.source = [label for label, _ in gens]
        seen = set()
        labels, elements = [], []
        for label, g in gens:
            candidates = [(label, g)]
            if symmetrize:
                candidates.append((_inverse_label(label), spec.inverse(g)))
            for lab, el in candidates:
                if el == spec.identity or el in seen:
                    continue
                seen.add(el)
                labels.append(lab)
                elements.append(el)
        if not elements:
            raise ConfigError("generating set is empty (or only the identity)")
        self.labels = labels
        self.elements = elements
        self.symmetrized = symmetrize

    @classmethod
    def standard(cls, spec: GroupSpec) -> "GenSet":
        return cls(spec, spec.standard_generators())

    @classmethod
    def from_words(cls, spec: GroupSpec, words: Sequence[str]) -> "GenSet":
        return cls(spec, [(w.strip(), spec.element_from_word(w)) for w in words])

    @classmethod
    def parse(cls, spec: GroupSpec, text: str | None) -> "GenSet":
        """Comma-separated words; ``None`` or empty gives the standard set."""
        if not text:
            return cls.standard(spec)
        return cls.from_words(spec, [w for w in text.split(",") if w.strip()])

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(zip(self.labels, self.elements))

    def describe(self) -> list[str]:
        return list(self.source)

    def max_tau_step(self) -> int:
        return max(abs(g.k) for g in self.elements)


def _inverse_label(label: str) -> str:
    tokens = parse_word(label) if re.fullmatch(r"[\sat0-9^+-]*", label) else None
    if tokens is not None:
        return format_word(type(tok)(tok.gen, -tok.exp) for tok in reversed(tokens)) or "1"
    return f"({label})^-1"


class Record(NamedTuple):
    length: int
    parent: int  # index into GenSet.labels, -1 for the identity
    h_plus: int
    h_minus: int


@dataclass(eq=False)
class Ball:
    """B_Y(n) with word lengths, discovery geodesics and their heights."""

    spec: GroupSpec
    gens: GenSet
    radius: int
    records: dict[Element, Record]
    spheres: list[list[Element]]

    def __eq__(self, other):
        if not isinstance(other, Ball):
            return NotImplemented
        return (
            self.spec == other.spec
            and self.gens.describe() == other.gens.describe()
            and self.radius == other.radius
            and self.records == other.records
        )

    @property
    def per_radius_counts(self) -> list[int]:
        out, total = [], 0
        for sphere in self.spheres:
            total += len(sphere)
            out.append(total)
        return out

    def __len__(self):
        return len(self.records)

    def __contains__(self, g):
        return g in self.records

    def length(self, g: Element) -> int:
        try:
            return self.records[g].length
        except KeyError:
            raise NotInBall(f"{g!r} is not in B({self.radius})") from None

    def elements(self, radius: int | None = None) -> list[Element]:
        """Elements of B(radius) in discovery order."""
        radius = self.radius if radius is None else radius
        return [g for sphere in self.spheres[: radius + 1] for g in sphere]

    def geodesic(self, g: Element) -> list[str]:
        """Labels of the stored geodesic word for g."""
        if g not in self.records:
            raise NotInBall(f"{g!r} is not in B({self.radius})")
        labels = []
        while True:
            rec = self.records[g]
            if rec.parent < 0:
                break
            labels.append(self.gens.labels[rec.parent])
            g = self.spec.multiply(g, self.spec.inverse(self.gens.elements[rec.parent]))
        return labels[::-1]

    def canonical_items(self):
        """(element, record) pairs sorted by (length, k, v)."""
        return sorted(self.records.items(), key=lambda kv: (kv[1].length, kv[0].k, kv[0].v))

    def restrict(self, radius: int) -> "Ball":
        if radius > self.radius:
            raise ValueError("cannot grow a ball by restriction")
        spheres = self.spheres[: radius + 1]
        records = {g: self.records[g] for s in spheres for g in s}
        return Ball(self.spec, self.gens, radius, records, spheres)


def _memory_limit() -> int | None:
    raw = os.environ.get("GMT_MAX_MEMORY")
    if not raw:
        return None
    m = re.fullmatch(r"\s*(\d+)\s*([kKmMgG]?)[bB]?\s*", raw)
    if m is None:
        raise ConfigError(f"cannot parse GMT_MAX_MEMORY={raw!r}")
    scale = {"": 1, "k": 2**10, "m": 2**20, "g": 2**30}[m.group(2).lower()]
    return int(m.group(1)) * scale


def _expand_block(spec: GroupSpec, gens: GenSet, block, records):
    """Candidate new elements from one frontier block, in sequential order."""
    out = []
    seen_local = set()
    mult = spec.multiply
    for g in block:
        for gi, y in enumerate(gens.elements):
            h = mult(g, y)
            if h in records or h in seen_local:
                continue
            seen_local.add(h)
            out.append((h, g, gi))
    return out


def iter_ball(spec: GroupSpec, gens: GenSet, threads: int = 1, block_size: int = 2048) -> Iterator[Ball]:
    """Yield B(0), B(1), ... sharing one growing record table."""
    e = spec.identity
    records: dict[Element, Record] = {e: Record(0, -1, 0, 0)}
    spheres = [[e]]
    ball = Ball(spec, gens, 0, records, spheres)
    yield ball
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        while spheres[-1]:
            frontier = spheres[-1]
            blocks = [frontier[i : i + block_size] for i in range(0, len(frontier), block_size)]
            if pool is not None and len(blocks) > 1:
                results = list(pool.map(lambda b: _expand_block(spec, gens, b, records), blocks))
            else:
                results = [_expand_block(spec, gens, b, records) for b in blocks]
            n = len(spheres)
            sphere = []
            for chunk in results:
                for h, g, gi in chunk:
                    if h in records:
                        continue
                    parent = records[g]
                    records[h] = Record(n, gi, max(parent.h_plus, h.k), min(parent.h_minus, h.k))
                    sphere.append(h)
            spheres.append(sphere)
            ball.radius = n
            yield ball
    finally:
        if pool is not None:
            pool.shutdown()


def enumerate_ball(
    spec: GroupSpec,
    gens: GenSet | None,
    n: int,
    max_elements: int | None = None,
    max_memory: int | None = None,
    threads: int = 1,
) -> Ball:
    """Exact B_Y(n).

    Raises LimitExceeded (carrying the last complete radius and that partial
    ball) when the element or memory cap would be crossed. Warns with
    NotGeneratingWarning when a standard generator is missing from B_Y(n).
    """
    if n < 0:
        raise ConfigError("radius must be nonnegative")
    gens = gens or GenSet.standard(spec)
    if max_memory is None:
        max_memory = _memory_limit()
    cap = max_elements
    if max_memory is not None:
        by_mem = max_memory // (_BYTES_PER_ELEMENT + 48 * spec.m)
        cap = by_mem if cap is None else min(cap, by_mem)
    ball = None
    for ball in iter_ball(spec, gens, threads=threads):
        if cap is not None and len(ball) > cap:
            partial = ball.restrict(ball.radius - 1)
            raise LimitExceeded(
                f"B({ball.radius}) exceeds the cap of {cap} elements",
                radius_reached=partial.radius,
                partial=partial,
            )
        if ball.radius >= n:
            break
    if n >= 1:
        missing = [lab for lab, g in spec.standard_generators() if g not in ball.records]
        if missing:
            warnings.warn(
                f"standard generators {missing} not reached within radius {n}",
                NotGeneratingWarning,
                stacklevel=2,
            )
    return ball


@dataclass
class DensityReport:
    predicate: str
    counts: list[int]
    ball_sizes: list[int]
    gammas: list[Fraction] = field(init=False)
    nth_roots: list[float] = field(init=False)

    def __post_init__(self):
        self.gammas = [Fraction(c, b) for c, b in zip(self.counts, self.ball_sizes)]
        self.nth_roots = [float(g) ** (1.0 / i) for i, g in enumerate(self.gammas) if i > 0]

    def to_json(self) -> dict:
        return {
            "predicate": self.predicate,
            "perRadius": [
                {
                    "n": i,
                    "count": c,
                    "ballSize": b,
                    "gamma": str(g),
                    "gammaFloat": float(g),
                    "nthRoot": None if i == 0 else self.nth_roots[i - 1],
                }
                for i, (c, b, g) in enumerate(zip(self.counts, self.ball_sizes, self.gammas))
            ],
        }


def density_report(ball: Ball, pred, zcfg: ZSetConfig | None = None) -> DensityReport:
    """Exact |P n B(i)| and gamma_i = |P n B(i)| / |B(i)| for i = 0..radius."""
    pred: Predicate = as_predicate(pred, zcfg)
    spec = ball.spec
    counts, total = [], 0
    for i, sphere in enumerate(ball.spheres[: ball.radius + 1]):
        total += sum(1 for g in sphere if pred(spec, g, i))
        counts.append(total)
    return DensityReport(pred.name, counts, ball.per_radius_counts[: ball.radius + 1])


def geodesic_heights(ball: Ball, g: Element) -> tuple[int, int, int]:
    """(h+, h-, h) of the stored geodesic of g; h = max(h+, -h-)."""
    try:
        rec = ball.records[g]
    except KeyError:
        raise NotInBall(f"{g!r} is not in B({ball.radius})") from None
    return rec.h_plus, rec.h_minus, max(rec.h_plus, -rec.h_minus)


@dataclass
class GrowthEstimate:
    mu_hat: list[float]
    ratios: list[float]
    alpha_hat: list[float]
    alpha_ratios: list[float]
    ball_sizes: list[int]
    elliptic_sizes: list[int]

    def to_json(self) -> dict:
        return {
            "ballSizes": self.ball_sizes,
            "ellipticSizes": self.elliptic_sizes,
            "muHat": self.mu_hat,
            "ratios": self.ratios,
            "alphaHat": self.alpha_hat,
            "alphaRatios": self.alpha_ratios,
        }


def growth_estimate(ball: Ball) -> GrowthEstimate:
    sizes = ball.per_radius_counts[: ball.radius + 1]
    a_sizes = density_report(ball, "tau=0").counts
    if ball.radius < 1:
        return GrowthEstimate([], [], [], [], sizes, a_sizes)
    idx = np.arange(1, len(sizes))
    b = np.asarray(sizes, dtype=float)
    a = np.asarray(a_sizes, dtype=float)
    return GrowthEstimate(
        mu_hat=(b[1:] ** (1.0 / idx)).tolist(),
        ratios=(b[1:] / b[:-1]).tolist(),
        alpha_hat=(a[1:] ** (1.0 / idx)).tolist(),
        alpha_ratios=(a[1:] / a[:-1]).tolist(),
        ball_sizes=sizes,
        elliptic_sizes=a_sizes,
    )


def default_beta(estimate: GrowthEstimate, m: int) -> Fraction:
    """beta just below alpha_hat^(1/2m): two-decimal floor minus 1/100.

    Falls back to the midpoint of (1, alpha_hat^(1/2m)) when that would not
    exceed 1.
    """
    if not estimate.alpha_ratios:
        raise ConfigError("need a ball of radius >= 1 to estimate alpha")
    root = estimate.alpha_ratios[-1] ** (1.0 / (2 * m))
    beta = Fraction(math.floor(root * 100), 100) - Fraction(1, 100)
    if beta <= 1:
        beta = (1 + Fraction(root).limit_denominator(10**6)) / 2
    if beta <= 1:
        raise ConfigError(f"measured alpha^(1/2m) = {root} leaves no room for beta > 1")
    return beta


@dataclass
class ZSetReport:
    beta: Fraction
    elliptic_counts: list[int]
    plus_counts: list[int]
    minus_counts: list[int]
    z_counts: list[int]

    @property
    def fractions(self) -> list[float]:
        return [z / a if a else 0.0 for z, a in zip(self.z_counts, self.elliptic_counts)]

    def to_json(self) -> dict:
        return {
            "beta": str(self.beta),
            "perRadius": [
                {"n": i, "elliptic": a, "zPlus": p, "zMinus": mi, "z": z, "fraction": f}
                for i, (a, p, mi, z, f) in enumerate(
                    zip(self.elliptic_counts, self.plus_counts, self.minus_counts, self.z_counts, self.fractions)
                )
            ],
        }


def zset_report(ball: Ball, cfg: ZSetConfig) -> ZSetReport:
    """Per-radius counts of A, Z+, Z- and Z = Z+ u Z- inside the ball."""
    spec = ball.spec
    a = p = mi = z = 0
    out = ([], [], [], [])
    for i, sphere in enumerate(ball.spheres[: ball.radius + 1]):
        for g in sphere:
            if g.k:
                continue
            plus, minus = zset_classify(spec, cfg, g, i)
            a += 1
            p += plus
            mi += minus
            z += plus or minus
        for lst, val in zip(out, (a, p, mi, z)):
            lst.append(val)
    return ZSetReport(cfg.beta, *out)


@dataclass
class HeightReport:
    """Per-radius height statistics of stored geodesics of elliptic elements.

    delta_hat[i] is min h(w_g) / |g|_Y over elliptic g of length i lying in
    the selected set (Z by default).
    """

    max_height: list[int]
    mean_height: list[float]
    delta_hat: list[float | None]

    def to_json(self) -> dict:
        return {
            "perRadius": [
                {"n": i, "maxHeight": mh, "meanHeight": me, "deltaHat": dh}
                for i, (mh, me, dh) in enumerate(zip(self.max_height, self.mean_height, self.delta_hat))
            ]
        }


def height_report(ball: Ball, pred=None, zcfg: ZSetConfig | None = None) -> HeightReport:
    spec = ball.spec
    pred = as_predicate(pred, zcfg) if pred is not None else None
    max_h, mean_h, delta = [], [], []
    for i, sphere in enumerate(ball.spheres[: ball.radius + 1]):
        hs = []
        ratios = []
        for g in sphere:
            rec = ball.records[g]
            h = max(rec.h_plus, -rec.h_minus)
            hs.append(h)
            if i and g.k == 0 and (pred is None or pred(spec, g, i)):
                ratios.append(h / i)
        max_h.append(max(hs) if hs else 0)
        mean_h.append(float(np.mean(hs)) if hs else 0.0)
        delta.append(min(ratios) if ratios else None)
    return HeightReport(max_h, mean_h, delta)


def word_lengths(spec: GroupSpec, gens: GenSet, targets: Sequence[Element], bound: int) -> list[int | None]:
    """|g|_Y for each target, by BFS stopped once all are found or at ``bound``."""
    found: dict[Element, int] = {}
    wanted = set(targets)
    for ball in iter_ball(spec, gens):
        for g in ball.spheres[ball.radius]:
            if g in wanted:
                found[g] = ball.radius
        if len(found) == len(wanted) or ball.radius >= bound:
            break
    return [found.get(g) for g in targets]


def lipschitz_constants(spec: GroupSpec, gens: GenSet, bound: int) -> int:
    """A constant c with |g|_X <= c|g|_Y and |g|_Y <= c|g|_X for all g.

    c = max( max_y |y|_X, max_x |x|_Y ) over the two generating sets.
    """
    X = GenSet.standard(spec)
    std = [g for _, g in spec.standard_generators()]
    y_in_x = word_lengths(spec, X, gens.elements, bound)
    x_in_y = word_lengths(spec, gens, std, bound)
    if any(n is None for n in x_in_y):
        missing = [lab for (lab, _), n in zip(spec.standard_generators(), x_in_y) if n is None]
        raise NotGenerating(f"standard generators {missing} not reachable within radius {bound}")
    if any(n is None for n in y_in_x):
        raise NotGenerating(f"some generator has X-length above {bound}")
    return max(y_in_x + x_in_y)
