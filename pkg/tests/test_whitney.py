import random

import pytest

from hypermaps.hypermap import Hypermap, dual, merge_components
from hypermaps.nclattice import refinement_count
from hypermaps.perm import Permutation
from hypermaps.poly import BiPoly
from hypermaps.selftest import random_collection
from hypermaps.whitney import (
    InstanceTooLarge,
    branch,
    phi_expansion,
    phi_k,
    phi_k_composed,
    pivot_cycle,
    psi_k,
    specializations,
    wet_dry_polynomial,
    whitney,
    whitney_bruteforce,
    whitney_phi,
    whitney_psi,
)


def make(n, sigma_cycles, alpha_cycles):
    return Hypermap(
        Permutation.from_cycles(n, sigma_cycles),
        Permutation.from_cycles(n, alpha_cycles),
    )


RUNNING = make(5, [[1, 4], [2, 5]], [[1, 2, 3], [4, 5]])
GOLDEN = BiPoly.parse("u^2 + u*v + 4*u + v + 3")


def test_golden_value_three_routes():
    for method in ("brute", "phi", "psi"):
        assert whitney(RUNNING, method).polynomial == GOLDEN


def test_golden_branches():
    branches = phi_expansion(RUNNING)
    assert [(eu, ev) for _, eu, ev, _ in branches] == [(0, 0)] * 3
    assert [str(p) for _, _, _, p in branches] == [
        "u^2 + 2*u + 1",
        "u*v + u + v + 1",
        "u + 1",
    ]


def test_base_case_all_fixed_points():
    h = make(3, [[1, 2, 3]], [])
    assert pivot_cycle(h.alpha) is None
    assert whitney_phi(h).polynomial == BiPoly.const(1)
    assert phi_expansion(h) == []


def test_empty_hypermap():
    h = make(0, [], [])
    assert whitney(h, "phi").polynomial == BiPoly.const(1)
    assert whitney(h, "brute").polynomial == BiPoly.const(1)


def test_pivot_cycle_picks_first_long_cycle():
    alpha = Permutation.from_cycles(6, [[2, 5], [3, 4]])
    assert pivot_cycle(alpha) == (2, 5)
    assert pivot_cycle(Permutation.identity(4)) is None


def test_phi_k_matches_transposition_route():
    rng = random.Random(77)
    for _ in range(40):
        h = random_collection(rng, n_max=7)
        cycle = pivot_cycle(h.alpha)
        if cycle is None:
            continue
        for k in range(1, len(cycle) + 1):
            assert phi_k(h, cycle, k) == phi_k_composed(h, cycle, k)


def test_phi_k_rejects_bad_k():
    cycle = pivot_cycle(RUNNING.alpha)
    with pytest.raises(ValueError):
        phi_k(RUNNING, cycle, 0)
    with pytest.raises(ValueError):
        phi_k(RUNNING, cycle, len(cycle) + 1)


def test_branch_weights_land_in_the_four_monomials():
    rng = random.Random(11)
    for _ in range(30):
        h = random_collection(rng, n_max=7)
        cycle = pivot_cycle(h.alpha)
        if cycle is None:
            continue
        for k in range(1, len(cycle) + 1):
            _, eu, ev = branch(h, cycle, k, keep_connected=False)
            assert (eu, ev) in {(0, 0), (1, 0), (0, 1), (1, 1)}


def test_uv_weight_example():
    h = make(3, [[1, 3]], [[1, 2, 3]])
    branches = phi_expansion(h)
    assert [(eu, ev) for _, eu, ev, _ in branches] == [(0, 0), (0, 0), (1, 1)]
    assert whitney_phi(h).polynomial == BiPoly.parse("u*v + u + v + 2")


def test_psi_preserves_connectivity():
    rng = random.Random(5)
    checked = 0
    for _ in range(60):
        h = random_collection(rng, n_max=7)
        if not h.is_connected:
            continue
        cycle = pivot_cycle(h.alpha)
        if cycle is None:
            continue
        for k in range(1, len(cycle) + 1):
            assert psi_k(h, cycle, k).is_connected
            checked += 1
    assert checked > 20


def test_three_routes_agree_randomized():
    rng = random.Random(3)
    for _ in range(25):
        h = random_collection(rng, n_max=7)
        b = whitney_bruteforce(h).polynomial
        assert whitney_phi(h).polynomial == b
        assert whitney_psi(h).polynomial == b


def test_multiplicative_over_disjoint_union():
    a = make(3, [[1, 2]], [[1, 2, 3]])
    b = make(4, [[1, 3]], [[1, 2], [3, 4]])
    u = a.disjoint_union(b)
    assert (
        whitney_phi(u).polynomial
        == whitney_phi(a).polynomial * whitney_phi(b).polynomial
    )


def test_merge_leaves_polynomial_unchanged():
    a = make(3, [[1, 2]], [[1, 2, 3]])
    b = make(4, [[1, 3]], [[1, 2], [3, 4]])
    u = a.disjoint_union(b)
    merged = merge_components(u, 1, 4)
    assert whitney_phi(merged).polynomial == whitney_phi(u).polynomial


def test_planar_dual_swaps_variables():
    assert RUNNING.genus == 0
    d = dual(RUNNING)
    assert whitney_phi(d).polynomial == GOLDEN.swap_variables()


def test_specializations_of_golden():
    s = specializations(RUNNING)
    assert s.spanning_hyperforests == 3
    assert s.spanning_collections == GOLDEN.evaluate(0, 1) == 4
    assert s.hyperbola == GOLDEN.hyperbola_section()


def test_wet_dry_equals_kappa_shifted_polynomial():
    poly = wet_dry_polynomial(RUNNING)
    assert poly == GOLDEN * BiPoly.monomial(1, RUNNING.kappa, 0)


def test_wet_dry_rejects_positive_genus():
    torus = make(4, [[1, 2, 3, 4]], [[1, 3], [2, 4]])
    assert torus.genus == 1
    with pytest.raises(ValueError):
        wet_dry_polynomial(torus)


def test_brute_force_size_guard():
    h = make(5, [[1, 4], [2, 5]], [[1, 2, 3], [4, 5]])
    assert refinement_count(h.alpha) == 10
    with pytest.raises(InstanceTooLarge):
        whitney_bruteforce(h, max_refinements=9)
    assert whitney_bruteforce(h, max_refinements=10).polynomial == GOLDEN


def test_brute_force_parallel_matches():
    h = make(7, [[1, 4], [2, 5], [6, 7]], [[1, 2, 3], [4, 5, 6, 7]])
    serial = whitney_bruteforce(h).polynomial
    parallel = whitney_bruteforce(h, processes=2).polynomial
    assert serial == parallel == whitney_phi(h).polynomial


def test_unknown_method_rejected():
    with pytest.raises(ValueError):
        whitney(RUNNING, "magic")


def test_stats_populated():
    r = whitney_phi(RUNNING)
    assert r.method == "phi"
    assert r.stats.nodes > 0
    assert r.stats.terms == len(GOLDEN.terms)
