"""Characteristic and flow polynomials, colorings and flows over GF(q).

All sums run over the refinement order with the Moebius function from
``nclattice``; nothing here re-derives Moebius values.

The characteristic polynomial of (sigma, alpha) is

    chi(t) = sum over beta <= alpha of mu(id, beta)
             * t^(kappa(sigma, beta) - kappa(sigma, alpha)),

and the interval variant is X([a1, a2]; t) = sum over beta in [a1, a2] of
mu(a1, beta) * t^kappa(sigma, beta).  The flow polynomial is

    C(t) = sum over beta <= alpha of mu(beta, alpha)
           * t^(n + kappa(sigma, beta) - z(beta) - z(sigma)).

A flow with values in GF(q) assigns f(i) to every point so that the values
on each sigma-cycle and each alpha-cycle sum to zero; the solution space has
dimension n + kappa - z(sigma) - z(alpha).  A flow is nowhere zero when
f(i) = 0 only happens on alpha fixed points (buds).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterator, List, Optional, Tuple

from .hypermap import Hypermap, orbit_count
from .nclattice import interval, is_refinement, mobius, refinements
from .perm import Permutation
from .poly import UniPoly
from .whitney import InstanceTooLarge


def characteristic_polynomial(h: Hypermap) -> UniPoly:
    identity = Permutation.identity(h.n)
    if h.n:
        mobius(identity, h.alpha)  # one pass warms every mu(id, beta) below
    terms: Dict[int, int] = {}
    for beta in refinements(h.alpha):
        e = orbit_count(h.sigma, beta) - h.kappa
        terms[e] = terms.get(e, 0) + mobius(identity, beta)
    return UniPoly(terms)


def x_interval(h: Hypermap, alpha1: Permutation, alpha2: Permutation) -> UniPoly:
    """X([alpha1, alpha2]; t) with exponents kappa(sigma, beta)."""
    if not is_refinement(alpha2, h.alpha):
        raise ValueError("alpha2 must refine the collection's alpha")
    if not is_refinement(alpha1, alpha2):
        raise ValueError("alpha1 must refine alpha2")
    mobius(alpha1, alpha2)
    terms: Dict[int, int] = {}
    for beta in interval(alpha1, alpha2):
        e = orbit_count(h.sigma, beta)
        terms[e] = terms.get(e, 0) + mobius(alpha1, beta)
    return UniPoly(terms)


def flow_polynomial(h: Hypermap) -> UniPoly:
    terms: Dict[int, int] = {}
    zs = h.sigma.cycle_count
    for beta in refinements(h.alpha):
        e = h.n + orbit_count(h.sigma, beta) - beta.cycle_count - zs
        terms[e] = terms.get(e, 0) + mobius(beta, h.alpha)
    return UniPoly(terms)


def proper_coloring_count(h: Hypermap, colors: int) -> int:
    """Brute force count of proper vertex colorings.

    Vertices are sigma-cycles.  A coloring is proper when, on every
    alpha-cycle, the vertices met at its points are pairwise differently
    colored; in particular a hyperedge visiting some vertex twice admits no
    proper coloring at all.
    """
    vertex_of = _vertex_index(h.sigma)
    edge_vertexlists = [
        [vertex_of[p] for p in c] for c in h.alpha.cycles() if len(c) > 1
    ]
    for vl in edge_vertexlists:
        if len(set(vl)) != len(vl):
            return 0
    count = 0
    nv = h.sigma.cycle_count
    for coloring in product(range(colors), repeat=nv):
        if all(
            len({coloring[v] for v in vl}) == len(vl) for vl in edge_vertexlists
        ):
            count += 1
    return count


def compatible_coloring_count(
    h: Hypermap, alpha1: Permutation, colors: int
) -> int:
    """Colorings constant on alpha1-hyperedges and proper across the rest.

    Counts vertex colorings such that vertices meeting a common alpha1-cycle
    share a color, while vertices meeting a common alpha-cycle without
    sharing an alpha1-cycle differ.  Pairs of points are compared, so a
    vertex met twice by an alpha-cycle outside alpha1 kills the count.
    """
    if not is_refinement(alpha1, h.alpha):
        raise ValueError("alpha1 must refine alpha")
    vertex_of = _vertex_index(h.sigma)
    same: List[Tuple[int, int]] = []
    differ: List[Tuple[int, int]] = []
    cycle1_of = [0] * (h.n + 1)
    for idx, c in enumerate(alpha1.cycles(), start=1):
        for p in c:
            cycle1_of[p] = idx
    for c in alpha1.cycles():
        for i in range(len(c)):
            for j in range(i + 1, len(c)):
                same.append((vertex_of[c[i]], vertex_of[c[j]]))
    for c in h.alpha.cycles():
        for i in range(len(c)):
            for j in range(i + 1, len(c)):
                if cycle1_of[c[i]] != cycle1_of[c[j]]:
                    differ.append((vertex_of[c[i]], vertex_of[c[j]]))
    count = 0
    nv = h.sigma.cycle_count
    for coloring in product(range(colors), repeat=nv):
        if all(coloring[a] == coloring[b] for a, b in same) and all(
            coloring[a] != coloring[b] for a, b in differ
        ):
            count += 1
    return count


def _vertex_index(sigma: Permutation) -> List[int]:
    vertex_of = [0] * (sigma.n + 1)
    for idx, c in enumerate(sigma.cycles()):
        for p in c:
            vertex_of[p] = idx
    return vertex_of


@dataclass(frozen=True)
class FlowSpace:
    """Nullspace of the cycle-sum equations over a prime field."""

    q: int
    n: int
    dimension: int
    basis: Tuple[Tuple[int, ...], ...]  # vectors indexed by point - 1

    def count(self) -> int:
        return self.q ** self.dimension

    def vectors(self) -> Iterator[Tuple[int, ...]]:
        q, n = self.q, self.n
        for coeffs in product(range(q), repeat=self.dimension):
            vec = [0] * n
            for c, b in zip(coeffs, self.basis):
                if c:
                    for i in range(n):
                        vec[i] = (vec[i] + c * b[i]) % q
            yield tuple(vec)


def _check_prime(q: int) -> None:
    if q < 2 or any(q % d == 0 for d in range(2, int(q ** 0.5) + 1)):
        raise ValueError(f"q must be prime, got {q}")


def flow_space(h: Hypermap, q: int) -> FlowSpace:
    """Gaussian elimination over GF(q) on one equation per cycle.

    The resulting dimension always equals n + kappa - z(sigma) - z(alpha),
    which is asserted against the elimination's rank.
    """
    _check_prime(q)
    n = h.n
    rows: List[List[int]] = []
    for perm in (h.sigma, h.alpha):
        for c in perm.cycles():
            row = [0] * n
            for p in c:
                row[p - 1] = (row[p - 1] + 1) % q
            rows.append(row)
    pivots: List[int] = []
    rank = 0
    for col in range(n):
        pivot_row = None
        for r in range(rank, len(rows)):
            if rows[r][col] % q != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        inv = pow(rows[rank][col], -1, q)
        rows[rank] = [(x * inv) % q for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % q:
                factor = rows[r][col]
                rows[r] = [
                    (a - factor * b) % q for a, b in zip(rows[r], rows[rank])
                ]
        pivots.append(col)
        rank += 1
    free_cols = [c for c in range(n) if c not in pivots]
    basis: List[Tuple[int, ...]] = []
    for fc in free_cols:
        vec = [0] * n
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = (-rows[r][fc]) % q
        basis.append(tuple(vec))
    dim = n - rank
    expected = n + h.kappa - h.sigma.cycle_count - h.alpha.cycle_count
    assert dim == expected, f"flow space dimension {dim} != {expected}"
    return FlowSpace(q=q, n=n, dimension=dim, basis=tuple(basis))


def is_flow(h: Hypermap, f: Tuple[int, ...], q: int) -> bool:
    if len(f) != h.n:
        raise ValueError("flow vector length mismatch")
    for perm in (h.sigma, h.alpha):
        for c in perm.cycles():
            if sum(f[p - 1] for p in c) % q != 0:
                return False
    return True


def nowhere_zero_flow_count(
    h: Hypermap, q: int, max_vectors: Optional[int] = 10 ** 6
) -> int:
    """Count flows whose zeros all sit on alpha fixed points (buds)."""
    space = flow_space(h, q)
    if max_vectors is not None and space.count() > max_vectors:
        raise InstanceTooLarge(
            f"{space.count()} flow vectors exceed the cap of {max_vectors}"
        )
    buds = {c[0] for c in h.alpha.cycles() if len(c) == 1}
    required = [i for i in range(1, h.n + 1) if i not in buds]
    count = 0
    for vec in space.vectors():
        if all(vec[i - 1] != 0 for i in required):
            count += 1
    return count


def unique_nz_refinement(h: Hypermap, f: Tuple[int, ...], q: int) -> Permutation:
    """Shrink alpha so a given flow becomes nowhere zero on the result.

    Only defined when every alpha-cycle has length at most 3.  Each zero
    point i that is not already a bud is split out of its hyperedge by
    multiplying alpha on the right with the transposition (alpha^-1(i), i);
    the result does not depend on the order the zeros are processed, and f
    stays a flow on (sigma, beta).
    """
    _check_prime(q)
    if any(len(c) > 3 for c in h.alpha.cycles()):
        raise ValueError("hyperedges longer than 3 are not supported here")
    if not is_flow(h, f, q):
        raise ValueError("f is not a flow")
    beta = h.alpha
    for i in range(1, h.n + 1):
        if f[i - 1] % q != 0:
            continue
        if beta(i) == i:
            continue
        pre = beta.inverse()(i)
        beta = beta * Permutation.transposition(h.n, pre, i)
        assert beta(i) == i
    shrunk = Hypermap(h.sigma, beta)
    assert is_refinement(beta, h.alpha)
    assert is_flow(shrunk, f, q)
    return beta
