from fractions import Fraction

import numpy as np
import pytest

from gmt import GroupSpec
from gmt.cayley import GenSet
from gmt.errors import UnknownPredicate
from gmt.measures import WalkConfig, _draw_steps, walk_estimate


def test_zero_steps_is_exact(bs12):
    rep = walk_estimate(bs12, None, WalkConfig(0, 200, seed=1), ["tau=0", "integral", "!tau=0"])
    assert rep.estimates == [1.0, 1.0, 0.0]
    assert rep.tau_mean == 0.0 and rep.tau_variance == 0.0


def test_tau_variance(bs12):
    rep = walk_estimate(bs12, None, WalkConfig(100, 100_000, seed=3, lazy_mass=Fraction(1, 5)), ["tau=0"])
    assert rep.tau_variance == pytest.approx(40, rel=0.05)
    assert abs(rep.tau_mean) < 0.2


def test_tau_zero_trend(bs12):
    ests = [
        walk_estimate(bs12, None, WalkConfig(n, 100_000, seed=17), ["tau=0"]).estimates[0]
        for n in (50, 100, 200)
    ]
    assert ests[0] > ests[1] > ests[2]


def test_step_distribution_is_exact():
    """Each raw value in [0, qG) maps to one outcome; every outcome gets q - p of them."""

    class EveryValue:
        def integers(self, lo, hi, size):
            assert (lo, hi) == (0, 20) and size == (1, 20)
            return np.arange(20).reshape(size)

    steps = _draw_steps(EveryValue(), WalkConfig(20, 1, 0, Fraction(1, 5)), 4, 1)
    assert [int((steps == i).sum()) for i in (-1, 0, 1, 2, 3)] == [4, 4, 4, 4, 4]


def test_complementary_predicates_sum_exactly(cat_map):
    cfg = WalkConfig(12, 3000, seed=8)
    rep = walk_estimate(cat_map, None, cfg, ["tau=0 & integral", "!(tau=0 & integral)"])
    assert rep.hits[0] + rep.hits[1] == cfg.samples


def test_full_walk_matches_tau_only_walk(bs12):
    cfg = WalkConfig(20, 2000, seed=21)
    fast = walk_estimate(bs12, None, cfg, ["tau=0"])
    slow = walk_estimate(bs12, None, cfg, ["tau=0", "integral"])
    assert fast.hits[0] == slow.hits[0]
    assert fast.tau_variance == slow.tau_variance


def test_deterministic_across_threads(bs12):
    cfg = WalkConfig(30, 9000, seed=5)
    a = walk_estimate(bs12, None, cfg, ["tau=0", "integral"], threads=1)
    b = walk_estimate(bs12, None, cfg, ["tau=0", "integral"], threads=8)
    assert a.to_json() == b.to_json()


def test_custom_generating_set(bs12):
    Y = GenSet.from_words(bs12, ["a1 t"])
    rep = walk_estimate(bs12, Y, WalkConfig(10, 500, seed=0), ["tau=0"])
    assert 0 < rep.estimates[0] < 1


def test_rejects_length_predicates(bs12):
    from gmt.predicates import ZSetConfig, parse_predicate

    pred = parse_predicate("Z", ZSetConfig(Fraction(11, 10)))
    with pytest.raises(UnknownPredicate):
        walk_estimate(bs12, None, WalkConfig(5, 10, 0), [pred])


@pytest.mark.parametrize("lazy", [0, 1, Fraction(3, 2)])
def test_walk_config_validation(lazy):
    with pytest.raises(ValueError):
        WalkConfig(5, 10, 0, lazy)
