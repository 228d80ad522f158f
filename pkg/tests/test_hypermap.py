import itertools

import pytest

from hypermaps.hypermap import Hypermap, dual, merge_components, orbit_count
from hypermaps.perm import Permutation


def make(n, sigma_cycles, alpha_cycles):
    return Hypermap(
        Permutation.from_cycles(n, sigma_cycles),
        Permutation.from_cycles(n, alpha_cycles),
    )


def test_running_example_counts():
    h = make(5, [[1, 4], [2, 5]], [[1, 2, 3], [4, 5]])
    assert h.kappa == 1
    assert h.is_connected
    assert h.genus == 0
    assert h.faces().cycles() == ((1, 5), (2, 4, 3))
    assert not h.is_map


def test_orbit_count():
    p = Permutation.from_cycles(6, [[1, 2], [3, 4]])
    q = Permutation.from_cycles(6, [[2, 3]])
    assert orbit_count(p, q) == 3  # {1,2,3,4}, {5}, {6}


def test_size_mismatch_rejected():
    with pytest.raises(ValueError):
        Hypermap(Permutation.identity(3), Permutation.identity(4))


def test_empty_hypermap():
    h = make(0, [], [])
    assert h.n == 0
    assert h.kappa == 0
    assert h.genus == 0


def test_single_point():
    h = make(1, [], [])
    assert h.kappa == 1
    assert h.genus == 0
    assert h.is_map


def test_torus_map():
    # one vertex, one edge pair... smallest genus one map: sigma a 4-cycle,
    # alpha two transpositions interleaved
    h = make(4, [[1, 2, 3, 4]], [[1, 3], [2, 4]])
    assert h.kappa == 1
    assert h.genus == 1
    assert h.is_map


def test_genus_additive_over_components():
    a = make(4, [[1, 2, 3, 4]], [[1, 3], [2, 4]])
    b = make(5, [[1, 4], [2, 5]], [[1, 2, 3], [4, 5]])
    u = a.disjoint_union(b)
    assert u.kappa == 2
    assert u.genus == a.genus + b.genus
    assert u.components() == ((1, 2, 3, 4), (5, 6, 7, 8, 9))


def test_components_partition_points():
    h = make(6, [[1, 2]], [[3, 4], [5, 6]])
    comps = h.components()
    assert sorted(p for comp in comps for p in comp) == list(range(1, 7))
    assert h.kappa == len(comps) == 3


def test_canonical_key_invariant_under_relabeling():
    h = make(5, [[1, 4], [2, 5]], [[1, 2, 3], [4, 5]])
    r = Permutation.from_cycles(5, [[1, 3, 5, 2, 4]])
    assert h.relabel(r).canonical_key() == h.canonical_key()


def test_canonical_key_separates_lookalike_pair():
    sigma = [[1, 5], [2, 6]]
    a = make(6, sigma, [[1, 2, 3, 4], [5, 6]])
    b = make(6, sigma, [[1, 4, 2, 3], [5, 6]])
    assert a.canonical_key() != b.canonical_key()


def test_canonical_key_exact_on_small_instances():
    """Exhaustive n <= 3: keys match exactly when some relabeling works."""
    perms = {
        n: [Permutation(im) for im in itertools.permutations(range(1, n + 1))]
        for n in range(4)
    }
    for n in range(4):
        maps = [Hypermap(s, a) for s in perms[n] for a in perms[n]]
        for h in maps:
            for g in maps:
                isomorphic = any(
                    g.sigma.relabel(r) == h.sigma and g.alpha.relabel(r) == h.alpha
                    for r in perms[n]
                )
                assert isomorphic == (h.canonical_key() == g.canonical_key())


def test_dual_of_running_example():
    h = make(5, [[1, 4], [2, 5]], [[1, 2, 3], [4, 5]])
    d = dual(h)
    assert d.sigma.cycles() == ((1, 5), (2, 4, 3))
    assert d.alpha == h.alpha.inverse()
    # faces of the dual are the original vertices
    assert d.faces().cycle_count == h.sigma.cycle_count
    assert d.genus == h.genus


def test_dual_involution_up_to_isomorphism():
    h = make(5, [[1, 4], [2, 5]], [[1, 2, 3], [4, 5]])
    dd = dual(dual(h))
    assert dd.canonical_key() == h.canonical_key()


def test_merge_components():
    a = make(2, [[1, 2]], [])
    b = make(3, [[1, 2, 3]], [])
    u = a.disjoint_union(b)
    merged = merge_components(u, 1, 3)
    assert merged.kappa == 1
    assert merged.genus == u.genus


def test_merge_same_component_rejected():
    h = make(5, [[1, 4], [2, 5]], [[1, 2, 3], [4, 5]])
    with pytest.raises(ValueError):
        merge_components(h, 1, 2)


def test_hypermap_equality_and_hash():
    h1 = make(3, [[1, 2]], [[2, 3]])
    h2 = make(3, [[1, 2]], [[2, 3]])
    assert h1 == h2
    assert hash(h1) == hash(h2)
    assert h1 != make(3, [[1, 2]], [[1, 3]])
