"""Acceptance suite: twelve end-to-end criteria, one pass/fail line each.

Run with plain ``pytest``; the per-criterion lines are repeated in the
terminal summary.  The randomized criteria share a single seeded corpus of
520 collections with n <= 8 and hyperedge cycles of length <= 5, so reruns
are deterministic.
"""

import json
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from acceptance_report import criterion
from hypermaps.charflow import (
    characteristic_polynomial,
    flow_polynomial,
    flow_space,
    is_flow,
    nowhere_zero_flow_count,
    proper_coloring_count,
    unique_nz_refinement,
    x_interval,
)
from hypermaps.hypermap import Hypermap, dual, merge_components
from hypermaps.medial import (
    circuit_partition_polynomial,
    circuits_of_state,
    coherent_matchings,
    digraph_isomorphic,
    eulerian_coloring_sum,
    eulerian_edge_colorings,
    from_eulerian_digraph,
    matching_count,
    matching_refinement,
    medial_digraph,
    medial_map,
    minus,
    plus,
)
from hypermaps.nclattice import (
    catalan,
    interval,
    is_refinement,
    mobius,
    refinement_count,
    refinements,
)
from hypermaps.oracles import (
    graph_characteristic,
    graph_flow_polynomial,
    narayana,
    underlying_graph,
)
from hypermaps.perm import Permutation
from hypermaps.poly import BiPoly, UniPoly
from hypermaps.selftest import random_collection, random_eulerian_digraph
from hypermaps.whitney import (
    branch,
    phi_expansion,
    pivot_cycle,
    refinement_terms,
    specializations,
    whitney_bruteforce,
    whitney_phi,
    whitney_psi,
)

CORPUS_SIZE = 520
REFINEMENT_CAP = 10 ** 5


def make(n, sigma_cycles, alpha_cycles):
    return Hypermap(
        Permutation.from_cycles(n, sigma_cycles),
        Permutation.from_cycles(n, alpha_cycles),
    )


RUNNING = make(5, [[1, 4], [2, 5]], [[1, 2, 3], [4, 5]])
GOLDEN = BiPoly.parse("u^2 + u*v + 4*u + v + 3")
LOOKALIKE_SIGMA = [[1, 5], [2, 6]]
SEVEN = make(8, [[1, 5], [2, 6], [3, 7], [4, 8]], [[1, 2, 3, 4], [5, 6], [7, 8]])


@pytest.fixture(scope="module")
def corpus():
    rng = random.Random(20260817)
    members = []
    while len(members) < CORPUS_SIZE:
        h = random_collection(rng, 8, max_cycle=5)
        if refinement_count(h.alpha) > REFINEMENT_CAP:
            continue
        members.append(h)
    return members


def walk_branches(h, keep_connected):
    """Every distinct recursion node's branches, deduplicated by key."""
    seen = set()
    stack = [h]
    while stack:
        g = stack.pop()
        cycle = pivot_cycle(g.alpha)
        if cycle is None:
            continue
        key = g.canonical_key()
        if key in seen:
            continue
        seen.add(key)
        for k in range(1, len(cycle) + 1):
            child, eu, ev = branch(g, cycle, k, keep_connected)
            yield g, child, eu, ev
            stack.append(child)


def run_cli(args, stdin=""):
    return subprocess.run(
        [sys.executable, "-m", "hypermaps", *args],
        input=stdin,
        capture_output=True,
        text=True,
        timeout=300,
    )


@criterion(1, "golden polynomial by all three routes with its branches")
def test_criterion_1_golden():
    started = time.perf_counter()
    assert whitney_bruteforce(RUNNING).polynomial == GOLDEN
    assert whitney_phi(RUNNING).polynomial == GOLDEN
    assert whitney_psi(RUNNING).polynomial == GOLDEN
    branches = phi_expansion(RUNNING)
    assert [(eu, ev) for _, eu, ev, _ in branches] == [(0, 0)] * 3
    assert [p for _, _, _, p in branches] == [
        BiPoly.parse("u^2 + 2*u + 1"),
        BiPoly.parse("u*v + u + v + 1"),
        BiPoly.parse("u + 1"),
    ]
    assert time.perf_counter() - started < 1.0


@criterion(2, "constant terms 4 and 5 separate the look-alike pair")
def test_criterion_2_constant_terms():
    # Two embeddings of the same hypergraph: one big hyperedge on all four
    # vertices plus the edge (5 6), differing only in the cyclic order of
    # the big hyperedge.  The constant term counts refinements beta with
    # kappa(sigma, beta) = 1 and z(beta) = 3; the full hyperedge itself has
    # z = 2, so it carries weight (0, 1) and is the v term, not a constant.
    # The second cyclic order admits one extra constant-weight refinement,
    # (1 3)(2 4)(5 6): the blocks {1,3} and {2,4} are noncrossing in the
    # order (1 4 2 3) but cross in (1 2 3 4).
    started = time.perf_counter()
    a = make(6, LOOKALIKE_SIGMA, [[1, 2, 3, 4], [5, 6]])
    b = make(6, LOOKALIKE_SIGMA, [[1, 4, 2, 3], [5, 6]])
    ra = whitney_phi(a).polynomial
    rb = whitney_phi(b).polynomial
    constants_a = {
        beta.cycle_string()
        for beta, eu, ev in refinement_terms(a)
        if (eu, ev) == (0, 0)
    }
    constants_b = {
        beta.cycle_string()
        for beta, eu, ev in refinement_terms(b)
        if (eu, ev) == (0, 0)
    }
    assert constants_a == {
        "(1 2 3 4)(5)(6)",
        "(1)(2 3 4)(5 6)",
        "(1 3 4)(2)(5 6)",
        "(1 4)(2 3)(5 6)",
    }
    assert constants_b == {
        "(1 4 2 3)(5)(6)",
        "(1)(2 3 4)(5 6)",
        "(1 4 3)(2)(5 6)",
        "(1 4)(2 3)(5 6)",
        "(1 3)(2 4)(5 6)",
    }
    assert ra.constant_term == 4
    assert rb.constant_term == 5
    assert rb.constant_term == ra.constant_term + 1
    assert ra != rb
    assert time.perf_counter() - started < 1.0


@criterion(3, "identity-over-n-cycle gives the Narayana polynomials")
def test_criterion_3_narayana():
    for n in range(2, 8):
        h = make(n, [], [list(range(1, n + 1))])
        r = whitney_phi(h).polynomial
        assert all(ev == 0 for (_, ev) in r.terms)
        for k in range(1, n + 1):
            assert r.coefficient(k - 1, 0) == narayana(n, k)
        d = dual(h)
        rd = whitney_phi(d).polynomial
        assert rd == r.swap_variables()
        assert all(eu == 0 for (eu, _) in rd.terms)
    three = make(3, [], [[1, 2, 3]])
    assert whitney_phi(three).polynomial == BiPoly.parse("u^2 + 3*u + 1")


@criterion(4, "brute, phi and psi agree on the 520-member corpus")
def test_criterion_4_oracle_triangle(corpus):
    started = time.perf_counter()
    assert len(corpus) >= 500
    allowed = {(0, 0), (0, 1), (1, 0), (1, 1)}
    for h in corpus:
        assert h.n <= 8
        assert all(len(c) <= 5 for c in h.alpha.cycles())
        assert refinement_count(h.alpha) <= REFINEMENT_CAP
        b = whitney_bruteforce(h).polynomial
        assert whitney_phi(h).polynomial == b
        assert whitney_psi(h).polynomial == b
        for _, _, eu, ev in walk_branches(h, keep_connected=False):
            assert (eu, ev) in allowed
        if h.is_connected:
            for _, child, _, _ in walk_branches(h, keep_connected=True):
                assert child.is_connected
    assert time.perf_counter() - started < 300.0


@criterion(5, "products, merges, planar duality and specializations")
def test_criterion_5_structural(corpus):
    nonempty = [h for h in corpus if h.n >= 1]
    pairs = list(zip(nonempty[0::2], nonempty[1::2]))[:80]
    for a, b in pairs:
        union = a.disjoint_union(b)
        product = whitney_phi(a).polynomial * whitney_phi(b).polynomial
        assert whitney_bruteforce(union).polynomial == product
        merged = merge_components(union, 1, a.n + 1)
        assert whitney_bruteforce(merged).polynomial == product
    for h in corpus:
        r = whitney_phi(h).polynomial
        if h.genus == 0:
            assert whitney_phi(dual(h)).polynomial == r.swap_variables()
        s = specializations(h, r)
        forests = collections = 0
        for beta in refinements(h.alpha):
            sub = Hypermap(h.sigma, beta)
            if sub.kappa != h.kappa:
                continue
            collections += 1
            if sub.genus == 0 and sub.faces().cycle_count == sub.kappa:
                forests += 1
        assert s.spanning_hyperforests == forests == r.evaluate(0, 0)
        assert s.spanning_collections == collections == r.evaluate(0, 1)
        assert s.hyperbola == r.hyperbola_section()


@criterion(6, "medial shape, matching bijection, circuit counts, j(x)")
def test_criterion_6_medial(corpus):
    for h in corpus:
        m = medial_map(h)
        assert m.genus == h.genus
        assert m.sigma_prime.cycle_count == h.alpha.cycle_count
        assert len(m.edges()) == h.n
        if h.n:
            assert m.alpha_prime.cycle_count == h.n
        refs = set(refinements(h.alpha))
        seen = set()
        for mu in coherent_matchings(m):
            beta = matching_refinement(m, mu)
            seen.add(beta)
            circuits = circuits_of_state(m, mu)
            assert len(circuits) == (beta.inverse() * h.sigma).cycle_count
        assert seen == refs
        assert matching_count(m) == len(refs)
        if h.genus == 0 and h.n <= 14:
            j = circuit_partition_polynomial(m)
            r = whitney_phi(h).polynomial
            shifted = {}
            for (eu, ev), c in r.terms.items():
                e = eu + ev + h.kappa
                shifted[e] = shifted.get(e, 0) + c
            assert j == UniPoly(shifted)
    # the worked six-point matching: beta = (1 2 3), two circuits
    lookalike = make(6, LOOKALIKE_SIGMA, [[1, 2, 3, 4], [5, 6]])
    m = medial_map(lookalike)
    matching = {}
    for i, j in [(1, 2), (2, 3), (3, 1), (4, 4), (5, 5), (6, 6)]:
        matching[plus(i)] = minus(j)
        matching[minus(j)] = plus(i)
    beta = matching_refinement(m, matching)
    assert beta == Permutation.from_cycles(6, [[1, 2, 3]])
    assert len(circuits_of_state(m, matching)) == 2


@criterion(7, "Eulerian coloring sums equal m^kappa R(m, m) at genus zero")
def test_criterion_7_coloring_sums(corpus):
    checked = maps_checked = 0
    for h in corpus:
        if h.genus != 0 or h.n > 8:
            continue
        r = whitney_phi(h).polynomial
        for m_colors in (1, 2, 3):
            total = eulerian_coloring_sum(h, m_colors)
            assert total == m_colors ** h.kappa * r.evaluate(m_colors, m_colors)
        checked += 1
        if h.is_map:
            # For a map every medial vertex has 4 points (two matchings when
            # monochromatic) or, at a bud, 2 points with a single matching.
            # Bud vertices therefore always have valence 1 and stay out of
            # the exponent even though they are trivially monochromatic.
            med = medial_map(h)
            collapse = 0
            for lam in eulerian_edge_colorings(med, 2):
                mono = sum(
                    1
                    for cyc in med.vertices()
                    if len(cyc) == 4 and len({lam[p] for p in cyc}) == 1
                )
                collapse += 2 ** mono
            assert collapse == eulerian_coloring_sum(h, 2)
            maps_checked += 1
    assert checked >= 100
    assert maps_checked >= 5


@criterion(8, "chromatic and flow identities, oracles, counterexamples")
def test_criterion_8_charflow(corpus):
    for h in corpus:
        total = UniPoly.zero()
        for beta in refinements(h.alpha):
            total = total + x_interval(h, beta, h.alpha)
        assert total == UniPoly.monomial(1, h.sigma.cycle_count)
        chi = characteristic_polynomial(h)
        shifted = UniPoly({e + h.kappa: c for e, c in chi.terms.items()})
        assert shifted == x_interval(h, Permutation.identity(h.n), h.alpha)
        flow_total = UniPoly.zero()
        for beta in refinements(h.alpha):
            flow_total = flow_total + flow_polynomial(Hypermap(h.sigma, beta))
        e = h.n + h.kappa - h.alpha.cycle_count - h.sigma.cycle_count
        assert flow_total == UniPoly.monomial(1, e)
        if h.is_map:
            nv, edges = underlying_graph(h)
            assert chi == graph_characteristic(nv, edges)
            assert flow_polynomial(h) == graph_flow_polynomial(nv, edges)
        if all(len(c) <= 3 for c in h.alpha.cycles()):
            flow = flow_polynomial(h)
            for q in (2, 3, 5):
                assert q ** h.kappa * chi.evaluate(q) == proper_coloring_count(h, q)
                assert flow.evaluate(q) == nowhere_zero_flow_count(h, q)
    # counterexample one: a 4-point hyperedge breaks the coloring reading
    four = make(4, [], [[1, 2, 3, 4]])
    chi4 = characteristic_polynomial(four)
    assert chi4 == UniPoly.parse("t^3 - 6*t^2 + 10*t - 5", var="t")
    assert proper_coloring_count(four, 2) == 0
    assert 2 ** four.kappa * chi4.evaluate(2) == -2
    # counterexample two: over GF(2) the all-ones flow is nowhere zero on
    # alpha and on two distinct refinements, so uniqueness fails at length 4
    f = (1,) * 8
    assert is_flow(SEVEN, f, 2)
    beta1 = Permutation.from_cycles(8, [[1, 2], [3, 4], [5, 6], [7, 8]])
    beta2 = Permutation.from_cycles(8, [[1, 4], [2, 3], [5, 6], [7, 8]])
    for beta in (beta1, beta2):
        assert is_refinement(beta, SEVEN.alpha)
        assert is_flow(Hypermap(SEVEN.sigma, beta), f, 2)
    with pytest.raises(ValueError):
        unique_nz_refinement(SEVEN, f, 2)


@criterion(9, "flow space dimensions and counts over GF(2), GF(3), GF(5)")
def test_criterion_9_flow_space(corpus):
    for h in corpus:
        expected = h.n + h.kappa - h.sigma.cycle_count - h.alpha.cycle_count
        for q in (2, 3, 5):
            space = flow_space(h, q)
            assert space.dimension == expected
            assert space.count() == q ** expected
            if space.count() <= 2048:
                vectors = list(space.vectors())
                assert len(set(vectors)) == space.count()
                for vec in vectors:
                    assert is_flow(h, vec, q)
    for q in (2, 3, 5):
        assert flow_space(SEVEN, q).dimension == 2


@criterion(10, "recursive Moebius function matches the signed Catalans")
def test_criterion_10_mobius():
    for m in range(1, 8):
        alpha = Permutation.from_cycles(m, [list(range(1, m + 1))])
        bottom = Permutation.identity(m)
        want = (-1) ** (m - 1) * catalan(m - 1)
        assert mobius(bottom, alpha) == want
        if m >= 2:
            total = sum(mobius(bottom, g) for g in interval(bottom, alpha))
            assert total == 0
            total_up = sum(mobius(g, alpha) for g in interval(bottom, alpha))
            assert total_up == 0
    # multiplicative across hyperedge cycles
    alpha = Permutation.from_cycles(7, [[1, 2, 3, 4], [5, 6, 7]])
    assert mobius(Permutation.identity(7), alpha) == (-5) * 2
    readme = Path(__file__).resolve().parent.parent / "README.md"
    assert "Catalan(m-1)" in readme.read_text()


@criterion(11, "digraph to hypermap round trip on 50 Eulerian digraphs")
def test_criterion_11_digraph_round_trip():
    rng = random.Random(61)
    for _ in range(50):
        d = random_eulerian_digraph(rng)
        h = from_eulerian_digraph(d)
        assert h.n == len(d.edges)
        assert digraph_isomorphic(medial_digraph(h), d)


@criterion(12, "CLI selftest passes, reruns byte-identical, errors clean")
def test_criterion_12_cli():
    first = run_cli(["selftest", "--seed=0"])
    second = run_cli(["selftest", "--seed=0"])
    assert first.returncode == 0
    assert "28/28 checks passed" in first.stdout
    assert first.stdout == second.stdout
    doc = "sigma: (1 4)(2 5)(3)\nalpha: (1 2 3)(4 5)\n"
    a = run_cli(["whitney", "--method=all", "--json"], doc)
    b = run_cli(["whitney", "--method=all", "--json"], doc)
    assert a.returncode == 0
    assert a.stdout == b.stdout
    payload = json.loads(a.stdout)
    assert set(payload) == {"input_echo", "result", "method", "stats"}
    for bad in (
        "sigma: (1 4\nalpha: (1 2)\n",
        "sigma: (1 1)\nalpha: (1)\n",
        "alpha: (1 2)\n",
        "{not json",
    ):
        r = run_cli(["genus"], bad)
        assert r.returncode == 2
        assert r.stderr.startswith("error:")
        assert "Traceback" not in r.stderr
