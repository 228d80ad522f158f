"""The refinement order on hyperedge permutations.

beta refines alpha when every alpha-cycle, viewed together with the
restriction of beta to its points, forms a genus zero pair.  Concretely the
beta-cycles inside an alpha-cycle of length m are the blocks of a noncrossing
partition of the cyclic order, each block traversed in the order its points
first appear along the parent cycle.  Refinements of a single m-cycle are
therefore in bijection with noncrossing partitions of an m-element cycle and
are counted by the Catalan number Cat(m) = binom(2m, m) / (m + 1).

Genus zero of the restricted pair is checked without relabeling: for a parent
cycle C of length m with restriction b, it is equivalent to

    (#cycles of b on C) + (#cycles of b^-1 * C on C) == m + 1.

The Moebius function is computed from its recursive definition (mu(x, x) = 1
and intervals sum to zero) and memoized on the isomorphism class of the
interval, never from a closed form.  For the record, the recursion yields
mu of the full lattice NC(m) equal to (-1)^(m-1) times the (m-1)st Catalan
number (Catalan numbers indexed from Cat(0) = 1).
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, List, Tuple

from .hypermap import Hypermap
from .perm import Permutation, cycle_count_on

Partition = Tuple[Tuple[int, ...], ...]


def catalan(m: int) -> int:
    return math.comb(2 * m, m) // (m + 1)


@lru_cache(maxsize=None)
def noncrossing_partitions(m: int) -> Tuple[Partition, ...]:
    """All noncrossing partitions of positions 0..m-1, sorted.

    Noncrossing on the circle equals noncrossing in the linear order obtained
    by cutting the circle at position 0, so a linear enumeration suffices:
    the block of the first position is chosen, and the remaining positions
    split into independent gaps between consecutive block elements.
    """

    def linear(seg: Tuple[int, ...]) -> List[Partition]:
        if not seg:
            return [()]
        first, rest = seg[0], seg[1:]
        out: List[Partition] = []
        for mask in range(1 << len(rest)):
            block = [first] + [rest[i] for i in range(len(rest)) if mask >> i & 1]
            gaps: List[Tuple[int, ...]] = []
            gi = 0
            gap: List[int] = []
            for x in rest:
                if gi < len(block) - 1 and x == block[gi + 1]:
                    gaps.append(tuple(gap))
                    gap = []
                    gi += 1
                else:
                    gap.append(x)
            gaps.append(tuple(gap))
            for combo in product(*(linear(g) for g in gaps)):
                parts: List[Tuple[int, ...]] = [tuple(block)]
                for sub in combo:
                    parts.extend(sub)
                out.append(tuple(parts))
        return out

    result = [tuple(sorted(p)) for p in linear(tuple(range(m)))]
    result.sort()
    assert len(result) == catalan(m)
    return tuple(result)


def cycle_refinements(cycle: Tuple[int, ...]) -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
    """Refinements of one cycle, each given as a tuple of cycles.

    A block {p1 < p2 < ...} of positions becomes the cycle visiting the
    corresponding points in the order they appear along the parent cycle,
    starting from the block's point that shows up first after the parent
    cycle's starting point.  That orientation is the unique genus zero one.
    """
    out = []
    for part in noncrossing_partitions(len(cycle)):
        out.append(tuple(tuple(cycle[p] for p in block) for block in part))
    return tuple(out)


def refinement_count(alpha: Permutation) -> int:
    total = 1
    for c in alpha.cycles():
        total *= catalan(len(c))
    return total


def refinements(alpha: Permutation) -> Iterator[Permutation]:
    """All beta with beta <= alpha, deterministically ordered."""
    n = alpha.n
    per_cycle = [cycle_refinements(c) for c in alpha.cycles()]
    for choice in product(*per_cycle):
        cycles: List[Tuple[int, ...]] = []
        for group in choice:
            cycles.extend(group)
        yield Permutation.from_cycles(n, cycles)


def is_refinement(beta: Permutation, alpha: Permutation) -> bool:
    if beta.n != alpha.n:
        raise ValueError("size mismatch")
    owner = [0] * (alpha.n + 1)
    for idx, c in enumerate(alpha.cycles(), start=1):
        for p in c:
            owner[p] = idx
    for c in beta.cycles():
        if any(owner[p] != owner[c[0]] for p in c):
            return False
    binv = beta.inverse()
    for c in alpha.cycles():
        m = len(c)
        zb = cycle_count_on(c, beta)
        zc = cycle_count_on(c, lambda x: binv(alpha(x)))
        if zb + zc != m + 1:
            return False
    return True


def interval(beta: Permutation, alpha: Permutation) -> List[Permutation]:
    """All gamma with beta <= gamma <= alpha."""
    if not is_refinement(beta, alpha):
        raise ValueError("beta does not refine alpha")
    return [g for g in refinements(alpha) if is_refinement(beta, g)]


_MOBIUS_MEMO: Dict[tuple, int] = {}


def _pair_key(beta: Permutation, alpha: Permutation):
    return Hypermap(beta, alpha).canonical_key()


def mobius(beta: Permutation, alpha: Permutation) -> int:
    """Moebius function of the interval [beta, alpha] in refinement order.

    One bottom-up pass computes mu(beta, gamma) for every gamma in the
    interval; each value is memoized under the canonical key of the pair
    (beta, gamma), which is invariant under relabeling and hence shared by
    isomorphic intervals.  Reads and writes of the shared table are plain
    dict operations, so concurrent use from threads is safe.
    """
    key = _pair_key(beta, alpha)
    got = _MOBIUS_MEMO.get(key)
    if got is not None:
        return got
    elems = interval(beta, alpha)
    elems.sort(key=lambda g: -g.cycle_count)
    values: List[int] = []
    for idx, gamma in enumerate(elems):
        if gamma == beta:
            v = 1
        else:
            v = -sum(
                values[j]
                for j in range(idx)
                if is_refinement(elems[j], gamma)
            )
        values.append(v)
        _MOBIUS_MEMO.setdefault(_pair_key(beta, gamma), v)
    return values[-1]
