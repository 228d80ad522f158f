"""Medial maps, coherent matchings and circuit partitions.

The medial map of a collection (sigma, alpha) on 1..n lives on 2n signed
points: point i gets a negative copy i- and a positive copy i+.  The fixed
encoding is

    i-  ->  2*i - 1        i+  ->  2*i

so base(p) = (p + 1) // 2 and the sign is the parity.  Vertices of the
medial map come from hyperedge cycles: the alpha-cycle (i1, ..., ik) becomes
the sigma'-cycle (i1-, i1+, i2-, i2+, ..., ik-, ik+).  Edges are the 2-cycles
(i+, sigma(i)-).  This preserves genus, and z(sigma') = z(alpha),
z(alpha') = n.

A coherent matching pairs, inside every vertex independently, positive with
negative points so that matched chords do not cross in the vertex's cyclic
order.  Reading beta(i) = j off the matched pairs (i+, j-) gives a bijection
with refinements beta <= alpha.  The circuits of a matching traverse i+ to
sigma(i)- (an edge) and j- to its matched partner; the number of circuits is
z(beta^-1 sigma), asserted during tracing.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as iter_permutations
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .hypermap import Hypermap
from .nclattice import refinements
from .perm import Permutation
from .poly import UniPoly
from .whitney import InstanceTooLarge, whitney_phi


def minus(i: int) -> int:
    return 2 * i - 1


def plus(i: int) -> int:
    return 2 * i


def base(p: int) -> int:
    return (p + 1) // 2


def is_plus(p: int) -> bool:
    return p % 2 == 0


def signed_name(p: int) -> str:
    return f"{base(p)}{'+' if is_plus(p) else '-'}"


class EulerianMap:
    """A hypermap on signed points whose vertices alternate -, + pairs.

    Validates that sigma' maps each i- to the same base's i+ (so every
    vertex cycle reads (i1-, i1+, i2-, i2+, ...)) and that alpha' is a
    fixed-point-free involution pairing positive with negative points.
    """

    __slots__ = ("pair", "n_base")

    def __init__(self, pair: Hypermap):
        if pair.n % 2 != 0:
            raise ValueError("signed point set must have even size")
        self.pair = pair
        self.n_base = pair.n // 2
        sig, alf = pair.sigma, pair.alpha
        for i in range(1, self.n_base + 1):
            if sig(minus(i)) != plus(i):
                raise ValueError(f"vertex cycle broken at {signed_name(minus(i))}")
        for p in range(1, pair.n + 1):
            q = alf(p)
            if q == p or alf(q) != p or is_plus(q) == is_plus(p):
                raise ValueError("edges must pair opposite signs as 2-cycles")

    @property
    def sigma_prime(self) -> Permutation:
        return self.pair.sigma

    @property
    def alpha_prime(self) -> Permutation:
        return self.pair.alpha

    @property
    def genus(self) -> int:
        return self.pair.genus

    def vertices(self) -> Tuple[Tuple[int, ...], ...]:
        return self.pair.sigma.cycles()

    def edges(self) -> Tuple[Tuple[int, int], ...]:
        """Edge 2-cycles as (plus point, minus point), sorted by plus base."""
        out = []
        for p in range(2, self.pair.n + 1, 2):
            out.append((p, self.pair.alpha(p)))
        return tuple(out)

    def __repr__(self) -> str:
        return f"EulerianMap(sigma'={_signed_cycles(self.sigma_prime)}, alpha'={_signed_cycles(self.alpha_prime)})"


def _signed_cycles(p: Permutation) -> str:
    return "".join(
        "(" + " ".join(signed_name(x) for x in c) + ")" for c in p.cycles()
    )


def medial_map(h: Hypermap) -> EulerianMap:
    n = h.n
    sig_cycles: List[Tuple[int, ...]] = []
    for c in h.alpha.cycles():
        doubled: List[int] = []
        for i in c:
            doubled.extend((minus(i), plus(i)))
        sig_cycles.append(tuple(doubled))
    alf_cycles = [(plus(i), minus(h.sigma(i))) for i in range(1, n + 1)]
    pair = Hypermap(
        Permutation.from_cycles(2 * n, sig_cycles),
        Permutation.from_cycles(2 * n, alf_cycles),
    )
    medial = EulerianMap(pair)
    assert medial.genus == h.genus, "medial construction must preserve genus"
    return medial


def source_hypermap(m: EulerianMap) -> Hypermap:
    """Invert medial_map: any valid EulerianMap arises from exactly one pair."""
    n = m.n_base
    alpha_cycles = []
    for vc in m.vertices():
        alpha_cycles.append(tuple(base(p) for p in vc if not is_plus(p)))
    sigma_img = [0] * (n + 1)
    for p_plus, p_minus in m.edges():
        sigma_img[base(p_plus)] = base(p_minus)
    return Hypermap(
        Permutation(sigma_img[1:]), Permutation.from_cycles(n, alpha_cycles)
    )


def vertex_matchings(cycle: Sequence[int]) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
    """All noncrossing sign-alternating perfect matchings of one vertex.

    The cycle is the sigma'-cycle of the vertex.  Matchings are tuples of
    (plus point, minus point) pairs; chords may not cross in the cyclic
    order and must join opposite signs.  Enumerated directly on positions
    (match the first position, recurse inside and outside), independent of
    the refinement machinery it is later compared against.
    """

    def rec(points: Tuple[int, ...]) -> List[Tuple[Tuple[int, int], ...]]:
        if not points:
            return [()]
        head = points[0]
        out: List[Tuple[Tuple[int, int], ...]] = []
        for j in range(1, len(points), 2):
            partner = points[j]
            if is_plus(partner) == is_plus(head):
                continue
            pair = (head, partner) if is_plus(head) else (partner, head)
            inside = rec(points[1:j])
            outside = rec(points[j + 1 :])
            for a in inside:
                for b in outside:
                    out.append((pair,) + a + b)
        return out

    return tuple(rec(tuple(cycle)))


def coherent_matchings(m: EulerianMap) -> Iterator[Dict[int, int]]:
    """All coherent matchings, as symmetric point-to-partner dicts."""
    per_vertex = [vertex_matchings(vc) for vc in m.vertices()]
    for combo in product(*per_vertex):
        state: Dict[int, int] = {}
        for group in combo:
            for p_plus, p_minus in group:
                state[p_plus] = p_minus
                state[p_minus] = p_plus
        yield state


def matching_count(m: EulerianMap) -> int:
    total = 1
    for vc in m.vertices():
        total *= len(vertex_matchings(vc))
    return total


def matching_refinement(m: EulerianMap, matching: Dict[int, int]) -> Permutation:
    """The refinement beta with beta(i) = j for each matched pair (i+, j-)."""
    img = [0] * (m.n_base + 1)
    for p in range(2, m.pair.n + 1, 2):
        img[base(p)] = base(matching[p])
    return Permutation(img[1:])


def circuits_of_state(
    m: EulerianMap, matching: Dict[int, int]
) -> Tuple[Tuple[int, ...], ...]:
    """Closed circuits: i+ is followed by sigma(i)-, j- by its partner."""
    source = source_hypermap(m)
    seen = set()
    circuits: List[Tuple[int, ...]] = []
    for start in range(1, m.pair.n + 1):
        if start in seen:
            continue
        walk = []
        p = start
        while p not in seen:
            seen.add(p)
            walk.append(p)
            if is_plus(p):
                p = minus(source.sigma(base(p)))
            else:
                p = matching[p]
        circuits.append(tuple(walk))
    beta = matching_refinement(m, matching)
    expected = (beta.inverse() * source.sigma).cycle_count
    assert len(circuits) == expected, "circuit count must equal z(beta^-1 sigma)"
    return tuple(circuits)


def circuit_partition_polynomial(
    m: EulerianMap, max_states: Optional[int] = 10 ** 6
) -> UniPoly:
    """Sum of x^(number of circuits) over all coherent matchings.

    Computed twice, by direct matching enumeration and as the refinement sum
    of x^(z(beta^-1 sigma)) over the source hypermap, and the two results
    must agree.
    """
    if max_states is not None and matching_count(m) > max_states:
        raise InstanceTooLarge(
            f"{matching_count(m)} matchings exceed the cap of {max_states}"
        )
    terms: Dict[int, int] = {}
    for matching in coherent_matchings(m):
        k = len(circuits_of_state(m, matching))
        terms[k] = terms.get(k, 0) + 1
    by_states = UniPoly(terms)

    source = source_hypermap(m)
    terms2: Dict[int, int] = {}
    sig = source.sigma
    for beta in refinements(source.alpha):
        k = (beta.inverse() * sig).cycle_count
        terms2[k] = terms2.get(k, 0) + 1
    by_refinements = UniPoly(terms2)
    assert by_states == by_refinements, "state sum disagrees with refinement sum"
    return by_states


@dataclass(frozen=True)
class EulerianDigraph:
    """A directed multigraph given by its edge list (loops allowed)."""

    edges: Tuple[Tuple[int, int], ...]

    @property
    def vertices(self) -> Tuple[int, ...]:
        seen = set()
        for t, h in self.edges:
            seen.add(t)
            seen.add(h)
        return tuple(sorted(seen))

    def degree_balance(self) -> Dict[int, int]:
        bal: Dict[int, int] = {}
        for t, h in self.edges:
            bal[t] = bal.get(t, 0) + 1
            bal[h] = bal.get(h, 0) - 1
        return bal

    @property
    def is_eulerian(self) -> bool:
        return all(b == 0 for b in self.degree_balance().values())


def medial_digraph(h: Hypermap) -> EulerianDigraph:
    """The directed medial graph: one edge per point, between hyperedges.

    Vertices are the alpha-cycles, numbered 1.. in canonical cycle order;
    point i contributes the edge from i's hyperedge to sigma(i)'s.
    """
    owner = [0] * (h.n + 1)
    for idx, c in enumerate(h.alpha.cycles(), start=1):
        for p in c:
            owner[p] = idx
    edges = tuple((owner[i], owner[h.sigma(i)]) for i in range(1, h.n + 1))
    return EulerianDigraph(edges)


def from_eulerian_digraph(d: EulerianDigraph) -> Hypermap:
    """A collection whose directed medial graph is isomorphic to d.

    Deterministic greedy construction: at each vertex the incoming and
    outgoing edge ends are listed in edge order and interleaved
    in/out/in/out; each consecutive (in, out) pair becomes one base point,
    the in end its minus copy and the out end its plus copy.  Isolated
    vertices carry no edge ends and are dropped.  Any output satisfying the
    round-trip is acceptable.
    """
    if not d.is_eulerian:
        unbalanced = sorted(v for v, b in d.degree_balance().items() if b != 0)
        raise ValueError(f"digraph is not Eulerian at vertices {unbalanced}")
    ins: Dict[int, List[int]] = {}
    outs: Dict[int, List[int]] = {}
    for idx, (t, head) in enumerate(d.edges):
        outs.setdefault(t, []).append(idx)
        ins.setdefault(head, []).append(idx)
    alpha_cycles: List[Tuple[int, ...]] = []
    tail_label: Dict[int, int] = {}
    head_label: Dict[int, int] = {}
    next_base = 1
    for v in d.vertices:
        bases = []
        for e_in, e_out in zip(ins.get(v, ()), outs.get(v, ())):
            head_label[e_in] = next_base
            tail_label[e_out] = next_base
            bases.append(next_base)
            next_base += 1
        if bases:
            alpha_cycles.append(tuple(bases))
    n = next_base - 1
    sigma_img = [0] * (n + 1)
    for idx in range(len(d.edges)):
        sigma_img[tail_label[idx]] = head_label[idx]
    return Hypermap(
        Permutation(sigma_img[1:]), Permutation.from_cycles(n, alpha_cycles)
    )


def digraph_isomorphic(a: EulerianDigraph, b: EulerianDigraph) -> bool:
    """Brute force directed multigraph isomorphism (small inputs only)."""
    va, vb = a.vertices, b.vertices
    if len(va) != len(vb) or len(a.edges) != len(b.edges):
        return False

    def profile(d: EulerianDigraph):
        prof: Dict[int, List[int]] = {v: [0, 0, 0] for v in d.vertices}
        for t, h in d.edges:
            if t == h:
                prof[t][2] += 1
            else:
                prof[t][0] += 1
                prof[h][1] += 1
        return prof

    pa, pb = profile(a), profile(b)
    if sorted(map(tuple, pa.values())) != sorted(map(tuple, pb.values())):
        return False
    edges_b = sorted(b.edges)
    for perm in iter_permutations(vb):
        mapping = dict(zip(va, perm))
        if any(tuple(pa[v]) != tuple(pb[mapping[v]]) for v in va):
            continue
        mapped = sorted((mapping[t], mapping[h]) for t, h in a.edges)
        if mapped == edges_b:
            return True
    return False


def valence(cycle: Sequence[int], coloring: Dict[int, int]) -> int:
    """Number of noncrossing matchings of one vertex joining equal colors."""
    count = 0
    for matching in vertex_matchings(cycle):
        if all(coloring[p] == coloring[q] for p, q in matching):
            count += 1
    return count


def eulerian_edge_colorings(m: EulerianMap, colors: int) -> Iterator[Dict[int, int]]:
    """Colorings of the medial edges whose color classes are all Eulerian.

    A coloring is emitted as a signed-point coloring (both ends of an edge
    share its color).  The Eulerian condition is checked per vertex: every
    color must cover as many minus as plus points there.
    """
    edge_list = m.edges()
    vertex_of: Dict[int, int] = {}
    for idx, vc in enumerate(m.vertices()):
        for p in vc:
            vertex_of[p] = idx
    for assignment in product(range(colors), repeat=len(edge_list)):
        point_color: Dict[int, int] = {}
        balance: Dict[Tuple[int, int], int] = {}
        for (p_plus, p_minus), c in zip(edge_list, assignment):
            point_color[p_plus] = c
            point_color[p_minus] = c
            balance[(vertex_of[p_plus], c)] = balance.get((vertex_of[p_plus], c), 0) + 1
            balance[(vertex_of[p_minus], c)] = (
                balance.get((vertex_of[p_minus], c), 0) - 1
            )
        if all(b == 0 for b in balance.values()):
            yield point_color


def eulerian_coloring_sum(h: Hypermap, colors: int) -> int:
    """Sum over Eulerian edge colorings of the product of vertex valences.

    Genus zero only.  Equals colors^kappa times the Whitney polynomial
    evaluated at u = v = colors, which is asserted.
    """
    if h.genus != 0:
        raise ValueError("the coloring sum is only defined at genus zero")
    m = medial_map(h)
    total = 0
    for coloring in eulerian_edge_colorings(m, colors):
        prod = 1
        for vc in m.vertices():
            prod *= valence(vc, coloring)
            if prod == 0:
                break
        total += prod
    expected = colors ** h.kappa * whitney_phi(h).polynomial.evaluate(colors, colors)
    assert total == expected, "coloring sum disagrees with m^kappa R(m, m)"
    return total


def monochromatic_vertex_count(m: EulerianMap, coloring: Dict[int, int]) -> int:
    count = 0
    for vc in m.vertices():
        if len({coloring[p] for p in vc}) <= 1:
            count += 1
    return count
