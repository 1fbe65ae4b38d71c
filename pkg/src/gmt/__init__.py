"""Exact computation in ascending HNN-extensions G(m, T) of Z^m."""

from .cayley import (
    Ball,
    GenSet,
    density_report,
    enumerate_ball,
    geodesic_heights,
    growth_estimate,
    lipschitz_constants,
    zset_report,
)
from .group import Element, GroupSpec, NormalForm, parse_word
from .linalg import (
    GrowthClass,
    IntMatrix,
    char_poly,
    classify,
    det_and_adjugate,
    mat_pow_apply,
    root_of_unity_exponent,
)
from .measures import WalkConfig, walk_estimate
from .nilpotence import cent_crit_oracle, nr_density_exhaustive, nr_density_sampled
from .predicates import ZSetConfig, parse_predicate, zset_classify
from .witness import find_witness, verify_certificate

__version__ = "0.1.0"
