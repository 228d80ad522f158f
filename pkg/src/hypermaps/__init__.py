"""Hypermaps as permutation pairs, their Whitney polynomials, and friends.

A hypermap on n points is a pair of permutations (sigma, alpha) of
{1, ..., n}: sigma-cycles are vertices, alpha-cycles are hyperedges, and
the cycles of alpha^-1 sigma are faces.  The package computes genus,
duals, Whitney rank generating polynomials over the noncrossing
refinement order, medial maps with their circuit partition polynomials,
characteristic and flow polynomials, flow spaces over prime fields, and
coloring counts, plus a randomized identity selftest tying these to
each other and to classical graph invariants.
"""

from .hypermap import Hypermap, dual, merge_components, orbit_count
from .medial import (
    EulerianDigraph,
    EulerianMap,
    circuit_partition_polynomial,
    coherent_matchings,
    eulerian_coloring_sum,
    from_eulerian_digraph,
    medial_digraph,
    medial_map,
    source_hypermap,
)
from .nclattice import (
    catalan,
    interval,
    is_refinement,
    mobius,
    noncrossing_partitions,
    refinement_count,
    refinements,
)
from .charflow import (
    characteristic_polynomial,
    compatible_coloring_count,
    flow_polynomial,
    flow_space,
    nowhere_zero_flow_count,
    proper_coloring_count,
    unique_nz_refinement,
    x_interval,
)
from .perm import Permutation
from .poly import BiPoly, UniPoly
from .selftest import run_selftest
from .whitney import (
    InstanceTooLarge,
    Specializations,
    specializations,
    wet_dry_polynomial,
    whitney,
    whitney_bruteforce,
    whitney_phi,
    whitney_psi,
)

__version__ = "0.1.0"

__all__ = [
    "BiPoly",
    "EulerianDigraph",
    "EulerianMap",
    "Hypermap",
    "InstanceTooLarge",
    "Permutation",
    "Specializations",
    "UniPoly",
    "catalan",
    "characteristic_polynomial",
    "circuit_partition_polynomial",
    "coherent_matchings",
    "compatible_coloring_count",
    "dual",
    "eulerian_coloring_sum",
    "flow_polynomial",
    "flow_space",
    "from_eulerian_digraph",
    "interval",
    "is_refinement",
    "medial_digraph",
    "medial_map",
    "merge_components",
    "mobius",
    "noncrossing_partitions",
    "nowhere_zero_flow_count",
    "orbit_count",
    "proper_coloring_count",
    "refinement_count",
    "refinements",
    "run_selftest",
    "source_hypermap",
    "specializations",
    "unique_nz_refinement",
    "wet_dry_polynomial",
    "whitney",
    "whitney_bruteforce",
    "whitney_phi",
    "whitney_psi",
    "x_interval",
]
