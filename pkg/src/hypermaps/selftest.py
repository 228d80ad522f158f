"""Seeded self-checks behind the ``hypermap selftest`` subcommand.

Every identity promised by the library is exercised here on a reproducible
random corpus: genus arithmetic, refinement/Moebius structure, polynomial
round-trips, the three Whitney routes, duality and specializations, medial
state sums, coloring and flow identities.  All randomness flows through one
``random.Random(seed)`` instance, so output is byte for byte reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, List, Tuple

from . import charflow, medial, oracles
from .hypermap import Hypermap, dual, merge_components, orbit_count
from .nclattice import (
    catalan,
    interval,
    is_refinement,
    mobius,
    noncrossing_partitions,
    refinements,
)
from .perm import Permutation
from .poly import BiPoly, UniPoly
from .whitney import (
    specializations,
    wet_dry_polynomial,
    whitney_bruteforce,
    whitney_phi,
    whitney_psi,
)


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str


def random_permutation(rng: random.Random, n: int) -> Permutation:
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return Permutation(images)


def random_bounded_cycles(rng: random.Random, n: int, max_len: int) -> Permutation:
    """A permutation whose cycle lengths never exceed max_len."""
    points = list(range(1, n + 1))
    rng.shuffle(points)
    cycles = []
    while points:
        take = rng.randint(1, min(max_len, len(points)))
        cycles.append(tuple(points[:take]))
        points = points[take:]
    return Permutation.from_cycles(n, cycles)


def random_collection(
    rng: random.Random, n_max: int = 8, max_cycle: int = 5
) -> Hypermap:
    n = rng.randint(1, n_max)
    return Hypermap(
        random_permutation(rng, n), random_bounded_cycles(rng, n, max_cycle)
    )


def random_map(rng: random.Random, n_max: int = 8) -> Hypermap:
    n = rng.randint(1, n_max)
    return Hypermap(random_permutation(rng, n), random_bounded_cycles(rng, n, 2))


def random_planar_connected(rng: random.Random, n_max: int = 8) -> Hypermap:
    """Connected genus zero pair: a full cycle and one of its refinements.

    sigma is a random refinement of the random n-cycle alpha, which forces
    genus zero, and alpha alone is already transitive.
    """
    n = rng.randint(1, n_max)
    points = list(range(1, n + 1))
    rng.shuffle(points)
    alpha = Permutation.from_cycles(n, [tuple(points)])
    parent = alpha.cycles()[0]
    pattern = rng.choice(noncrossing_partitions(n))
    sigma = Permutation.from_cycles(
        n, [tuple(parent[p] for p in block) for block in pattern]
    )
    h = Hypermap(sigma, alpha)
    assert h.genus == 0 and h.is_connected
    return h


def random_eulerian_digraph(
    rng: random.Random, max_vertices: int = 6, max_edges: int = 12
) -> medial.EulerianDigraph:
    """Superposition of random closed walks; isolated vertices never occur."""
    nv = rng.randint(1, max_vertices)
    target = rng.randint(1, max_edges)
    edges: List[Tuple[int, int]] = []
    while len(edges) < target:
        length = rng.randint(1, min(4, target - len(edges)))
        walk = [rng.randint(1, nv) for _ in range(length)]
        for a, b in zip(walk, walk[1:] + walk[:1]):
            edges.append((a, b))
    return medial.EulerianDigraph(tuple(edges))


Check = Tuple[str, Callable[[random.Random, int], str]]


def _check_genus_arithmetic(rng: random.Random, n_max: int) -> str:
    trials = 80
    for _ in range(trials):
        h = random_collection(rng, n_max)
        # construction already asserts parity and nonnegativity
        assert h.genus >= 0
        ident = Permutation.identity(h.n)
        assert orbit_count(h.sigma, ident) == h.sigma.cycle_count
        assert orbit_count(ident, h.alpha) == h.alpha.cycle_count
    return f"{trials} random collections"


def _check_map_euler_genus(rng: random.Random, n_max: int) -> str:
    trials = 60
    for _ in range(trials):
        h = random_map(rng, n_max)
        assert h.genus == oracles.map_euler_genus(h)
    return f"{trials} random maps"


def _check_canonical_form(rng: random.Random, n_max: int) -> str:
    trials = 40
    for _ in range(trials):
        h = random_collection(rng, n_max)
        r = random_permutation(rng, h.n)
        assert h.canonical_key() == h.relabel(r).canonical_key()
    return f"{trials} relabelings"


def _check_refinement_counts(rng: random.Random, n_max: int) -> str:
    for m in range(1, 9):
        assert len(noncrossing_partitions(m)) == catalan(m)
        alpha = Permutation.from_cycles(m, [tuple(range(1, m + 1))])
        assert sum(1 for _ in refinements(alpha)) == catalan(m)
    return "cycle lengths 1..8 against Catalan numbers"


def _check_refinement_membership(rng: random.Random, n_max: int) -> str:
    from itertools import permutations as all_perms

    checked = 0
    for alpha in (
        Permutation.from_cycles(4, [(1, 2, 3, 4)]),
        Permutation.from_cycles(5, [(1, 2, 3, 4, 5)]),
        Permutation.from_cycles(5, [(1, 2, 3), (4, 5)]),
    ):
        listed = {p.image for p in refinements(alpha)}
        for images in all_perms(range(1, alpha.n + 1)):
            beta = Permutation(images)
            assert (beta.image in listed) == is_refinement(beta, alpha)
            checked += 1
    return f"{checked} candidate permutations, exhaustive"


def _check_mobius(rng: random.Random, n_max: int) -> str:
    for m in range(1, 8):
        alpha = Permutation.from_cycles(m, [tuple(range(1, m + 1))])
        ident = Permutation.identity(m)
        value = mobius(ident, alpha)
        sign = 1 if (m - 1) % 2 == 0 else -1
        assert value == sign * catalan(m - 1)
        if m >= 2:
            total = sum(mobius(ident, g) for g in interval(ident, alpha))
            assert total == 0
    trials = 20
    for _ in range(trials):
        h = random_collection(rng, min(n_max, 7), max_cycle=4)
        betas = list(refinements(h.alpha))
        beta = betas[rng.randrange(len(betas))]
        prod = 1
        for c in h.alpha.cycles():
            sub_alpha = Permutation.from_cycles(h.n, [c])
            sub_beta_cycles = [bc for bc in beta.cycles() if bc[0] in set(c)]
            sub_beta = Permutation.from_cycles(h.n, sub_beta_cycles)
            prod *= mobius(sub_beta, sub_alpha)
        assert prod == mobius(beta, h.alpha)
    return f"closed form m<=7, zero sums, multiplicativity x{trials}"


def _check_poly_roundtrip(rng: random.Random, n_max: int) -> str:
    trials = 40
    for _ in range(trials):
        terms = {}
        for _ in range(rng.randint(0, 6)):
            terms[(rng.randint(0, 4), rng.randint(-2, 4))] = rng.randint(-9, 9)
        p = BiPoly(terms)
        assert BiPoly.parse(str(p)) == p
        q = UniPoly({rng.randint(-3, 5): rng.randint(-9, 9) for _ in range(4)})
        assert UniPoly.parse(q.to_string("t"), "t") == q
    return f"{trials} random polynomials, print/parse/print"


def _check_poly_ring(rng: random.Random, n_max: int) -> str:
    trials = 30

    def rand_poly() -> BiPoly:
        return BiPoly(
            {
                (rng.randint(0, 3), rng.randint(0, 3)): rng.randint(-5, 5)
                for _ in range(rng.randint(0, 5))
            }
        )

    for _ in range(trials):
        a, b, c = rand_poly(), rand_poly(), rand_poly()
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a * b).evaluate(2, -3) == a.evaluate(2, -3) * b.evaluate(2, -3)
    return f"{trials} random triples"


def _check_whitney_routes(rng: random.Random, n_max: int) -> str:
    trials = 60
    for _ in range(trials):
        h = random_collection(rng, n_max)
        brute = whitney_bruteforce(h).polynomial
        assert whitney_phi(h).polynomial == brute
        assert whitney_psi(h).polynomial == brute
    return f"{trials} collections, brute == phi == psi"


def _check_whitney_product(rng: random.Random, n_max: int) -> str:
    trials = 25
    for _ in range(trials):
        a = random_collection(rng, max(2, n_max // 2))
        b = random_collection(rng, max(2, n_max // 2))
        un = a.disjoint_union(b)
        lhs = whitney_phi(un).polynomial
        rhs = whitney_phi(a).polynomial * whitney_phi(b).polynomial
        assert lhs == rhs
        if un.kappa > 1:
            comps = un.components()
            merged = merge_components(un, comps[0][0], comps[1][0])
            assert whitney_phi(merged).polynomial == lhs
    return f"{trials} disjoint unions and merges"


def _check_planar_duality(rng: random.Random, n_max: int) -> str:
    trials = 40
    for _ in range(trials):
        h = random_planar_connected(rng, n_max)
        d = dual(h)
        assert d.genus == 0
        assert whitney_phi(d).polynomial == whitney_phi(h).polynomial.swap_variables()
    return f"{trials} genus zero duals"


def _check_map_subset_expansion(rng: random.Random, n_max: int) -> str:
    trials = 40
    for _ in range(trials):
        h = random_map(rng, n_max)
        nv, edges = oracles.underlying_graph(h)
        assert whitney_bruteforce(h).polynomial == oracles.graph_whitney_rank(
            nv, edges
        )
    return f"{trials} maps against graph subset expansion"


def _check_narayana(rng: random.Random, n_max: int) -> str:
    for n in range(2, 8):
        h = Hypermap(
            Permutation.identity(n),
            Permutation.from_cycles(n, [tuple(range(1, n + 1))]),
        )
        poly = whitney_phi(h).polynomial
        assert all(ev == 0 for (_, ev) in poly.terms)
        for k in range(1, n + 1):
            assert poly.coefficient(k - 1, 0) == oracles.narayana(n, k)
        d = dual(h)
        dpoly = whitney_phi(d).polynomial
        assert dpoly == poly.swap_variables()
    return "identity sigma with full cycle, n = 2..7"


def _check_specializations(rng: random.Random, n_max: int) -> str:
    trials = 40
    for _ in range(trials):
        h = random_collection(rng, n_max)
        poly = whitney_bruteforce(h).polynomial
        counts = specializations(h, poly)
        forests = 0
        spanning = 0
        hyper = {}
        for beta in refinements(h.alpha):
            sub = Hypermap(h.sigma, beta)
            if sub.kappa == h.kappa:
                spanning += 1
                if sub.genus == 0 and sub.faces().cycle_count == sub.kappa:
                    forests += 1
            e = h.n + h.kappa - beta.cycle_count - h.sigma.cycle_count
            hyper[e] = hyper.get(e, 0) + 1
        assert counts.spanning_hyperforests == forests
        assert counts.spanning_collections == spanning
        assert counts.hyperbola == UniPoly(hyper)
    return f"{trials} collections: R(0,0), R(0,1), R(v^-1, v)"


def _check_wet_dry(rng: random.Random, n_max: int) -> str:
    trials = 30
    for _ in range(trials):
        h = random_planar_connected(rng, n_max)
        wet_dry_polynomial(h)  # asserts the identity internally
    return f"{trials} genus zero instances"


def _check_medial_shape(rng: random.Random, n_max: int) -> str:
    trials = 40
    for _ in range(trials):
        h = random_collection(rng, n_max)
        m = medial.medial_map(h)
        assert m.genus == h.genus
        assert m.sigma_prime.cycle_count == h.alpha.cycle_count
        assert m.alpha_prime.cycle_count == h.n
        assert medial.source_hypermap(m) == h
    return f"{trials} collections, shape and genus preserved"


def _check_matching_bijection(rng: random.Random, n_max: int) -> str:
    trials = 25
    for _ in range(trials):
        h = random_collection(rng, min(n_max, 7), max_cycle=4)
        m = medial.medial_map(h)
        betas = sorted(b.image for b in refinements(h.alpha))
        matched = sorted(
            medial.matching_refinement(m, mu).image
            for mu in medial.coherent_matchings(m)
        )
        assert betas == matched
    return f"{trials} collections, matchings == refinements"


def _check_circuit_polynomial(rng: random.Random, n_max: int) -> str:
    trials = 25
    for _ in range(trials):
        h = random_planar_connected(rng, min(n_max, 7))
        m = medial.medial_map(h)
        j = medial.circuit_partition_polynomial(m)
        r = whitney_bruteforce(h).polynomial
        expected = UniPoly.zero()
        for (eu, ev), c in r.terms.items():
            # x^kappa R(x, x) collects exponents kappa + eu + ev
            e = h.kappa + eu + ev
            expected = expected + UniPoly.monomial(c, e)
        assert j == expected
    return f"{trials} genus zero instances, j(x) == x^kappa R(x, x)"


def _check_map_states(rng: random.Random, n_max: int) -> str:
    trials = 25
    for _ in range(trials):
        h = random_map(rng, n_max)
        m = medial.medial_map(h)
        assert medial.matching_count(m) == 2 ** sum(
            1 for c in h.alpha.cycles() if len(c) == 2
        )
    return f"{trials} maps, 2^edges coherent states"


def _check_coloring_sum(rng: random.Random, n_max: int) -> str:
    trials = 10
    for _ in range(trials):
        h = random_planar_connected(rng, min(n_max, 6))
        for colors in (1, 2, 3):
            medial.eulerian_coloring_sum(h, colors)  # asserts internally
    return f"{trials} genus zero instances, m = 1, 2, 3"


def _check_chromatic_identities(rng: random.Random, n_max: int) -> str:
    trials = 25
    for _ in range(trials):
        h = random_collection(rng, min(n_max, 7), max_cycle=4)
        total = UniPoly.zero()
        for beta in refinements(h.alpha):
            total = total + charflow.x_interval(h, beta, h.alpha)
        assert total == UniPoly.monomial(1, h.sigma.cycle_count)
        chi = charflow.characteristic_polynomial(h)
        shifted = UniPoly(
            {e + h.kappa: c for e, c in chi.terms.items()}
        )
        assert shifted == charflow.x_interval(
            h, Permutation.identity(h.n), h.alpha
        )
    return f"{trials} collections, interval sums collapse"


def _check_flow_identities(rng: random.Random, n_max: int) -> str:
    trials = 25
    for _ in range(trials):
        h = random_collection(rng, min(n_max, 7), max_cycle=4)
        total = UniPoly.zero()
        for beta in refinements(h.alpha):
            total = total + charflow.flow_polynomial(Hypermap(h.sigma, beta))
        e = h.n + h.kappa - h.alpha.cycle_count - h.sigma.cycle_count
        assert total == UniPoly.monomial(1, e)
    return f"{trials} collections, flow sum collapses"


def _check_flow_planar(rng: random.Random, n_max: int) -> str:
    trials = 20
    for _ in range(trials):
        h = random_planar_connected(rng, min(n_max, 7))
        total = UniPoly.zero()
        x = UniPoly.variable()
        for beta in refinements(h.alpha):
            total = total + x * charflow.flow_polynomial(Hypermap(h.sigma, beta))
        assert total == UniPoly.monomial(1, h.faces().cycle_count)
    return f"{trials} genus zero instances"


def _check_map_charflow_oracles(rng: random.Random, n_max: int) -> str:
    trials = 30
    for _ in range(trials):
        h = random_map(rng, n_max)
        nv, edges = oracles.underlying_graph(h)
        assert charflow.characteristic_polynomial(h) == oracles.graph_characteristic(
            nv, edges
        )
        assert charflow.flow_polynomial(h) == oracles.graph_flow_polynomial(nv, edges)
        r = whitney_bruteforce(h).polynomial
        sign = -1 if (h.sigma.cycle_count - h.kappa) % 2 else 1
        via_r = r.substitute_v(-1).flip_variable().scalar_multiply(sign)
        assert via_r == charflow.characteristic_polynomial(h)
    return f"{trials} maps against graph oracles and the R(-t, -1) route"


def _check_small_edge_theorems(rng: random.Random, n_max: int) -> str:
    trials = 20
    for _ in range(trials):
        h = random_collection(rng, min(n_max, 6), max_cycle=3)
        chi = charflow.characteristic_polynomial(h)
        flow = charflow.flow_polynomial(h)
        for colors in (2, 3):
            lhs = colors ** h.kappa * chi.evaluate(colors)
            assert lhs == charflow.proper_coloring_count(h, colors)
            assert flow.evaluate(colors) == charflow.nowhere_zero_flow_count(
                h, colors
            )
    return f"{trials} collections with hyperedges <= 3, m = q = 2, 3"


def _check_flow_space(rng: random.Random, n_max: int) -> str:
    trials = 30
    for _ in range(trials):
        h = random_collection(rng, n_max)
        for q in (2, 3, 5):
            space = charflow.flow_space(h, q)
            expected = (
                h.n + h.kappa - h.sigma.cycle_count - h.alpha.cycle_count
            )
            assert space.dimension == expected
            vecs = list(space.vectors())
            assert len(set(vecs)) == q ** space.dimension
            for vec in vecs[:8]:
                assert charflow.is_flow(h, vec, q)
    return f"{trials} collections, q = 2, 3, 5"


def _check_digraph_roundtrip(rng: random.Random, n_max: int) -> str:
    trials = 50
    for _ in range(trials):
        d = random_eulerian_digraph(rng)
        h = medial.from_eulerian_digraph(d)
        back = medial.medial_digraph(h)
        assert medial.digraph_isomorphic(d, back)
        assert h.n == len(d.edges)
    return f"{trials} Eulerian digraphs, medial round-trip"


def _check_valence_legality(rng: random.Random, n_max: int) -> str:
    trials = 10
    done = 0
    while done < trials:
        h = random_planar_connected(rng, 5)
        m = medial.medial_map(h)
        for coloring in medial.eulerian_edge_colorings(m, 2):
            per_vertex = all(
                medial.valence(vc, coloring) > 0 for vc in m.vertices()
            )
            exists = any(
                all(coloring[p] == coloring[mu[p]] for p in mu)
                for mu in medial.coherent_matchings(m)
            )
            assert per_vertex == exists
        done += 1
    return f"{trials} instances, per-vertex valence vs global state"


CHECKS: List[Check] = [
    ("genus-arithmetic", _check_genus_arithmetic),
    ("map-euler-genus", _check_map_euler_genus),
    ("canonical-form-invariance", _check_canonical_form),
    ("refinement-catalan-counts", _check_refinement_counts),
    ("refinement-membership", _check_refinement_membership),
    ("mobius-recursion", _check_mobius),
    ("poly-print-parse", _check_poly_roundtrip),
    ("poly-ring-axioms", _check_poly_ring),
    ("whitney-three-routes", _check_whitney_routes),
    ("whitney-multiplicative", _check_whitney_product),
    ("planar-duality", _check_planar_duality),
    ("map-subset-expansion", _check_map_subset_expansion),
    ("narayana-coefficients", _check_narayana),
    ("specializations", _check_specializations),
    ("wet-dry", _check_wet_dry),
    ("medial-shape", _check_medial_shape),
    ("matching-bijection", _check_matching_bijection),
    ("circuit-partition-polynomial", _check_circuit_polynomial),
    ("map-state-count", _check_map_states),
    ("eulerian-coloring-sum", _check_coloring_sum),
    ("chromatic-identities", _check_chromatic_identities),
    ("flow-identity", _check_flow_identities),
    ("flow-planar-identity", _check_flow_planar),
    ("map-charflow-oracles", _check_map_charflow_oracles),
    ("small-edge-theorems", _check_small_edge_theorems),
    ("flow-space-dimension", _check_flow_space),
    ("digraph-roundtrip", _check_digraph_roundtrip),
    ("valence-legality", _check_valence_legality),
]


def run_selftest(n_max: int = 7, seed: int = 0) -> List[CheckResult]:
    results = []
    for name, fn in CHECKS:
        rng = random.Random(f"{seed}:{name}")
        try:
            detail = fn(rng, n_max)
            results.append(CheckResult(name, True, detail))
        except AssertionError as exc:
            results.append(CheckResult(name, False, str(exc) or "assertion failed"))
    return results
