"""Hypermaps as pairs of permutations.

A pair (sigma, alpha) on 1..n encodes a collection of hypermaps: cycles of
sigma are vertices, cycles of alpha are hyperedges, and cycles of
alpha^-1 * sigma are faces.  The pair is a single (connected) hypermap when
the group generated by sigma and alpha is transitive, i.e. kappa == 1.

The genus of a collection satisfies

    2 * genus = n + 2 * kappa - z(sigma) - z(alpha) - z(alpha^-1 sigma)

where z counts cycles and kappa counts orbits of the generated group.  The
right side is always an even nonnegative integer; the constructor checks it.
"""

from __future__ import annotations

from typing import List, Tuple

from .perm import Permutation


def orbit_count(p: Permutation, q: Permutation) -> int:
    """Number of orbits of the group generated by p and q (union-find)."""
    n = p.n
    if q.n != n:
        raise ValueError("size mismatch")
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(1, n + 1):
        for j in (p(i), q(i)):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    return sum(1 for i in range(1, n + 1) if find(i) == i)


class Hypermap:
    """A collection of hypermaps; connected exactly when ``kappa == 1``.

    kappa and genus are computed eagerly, the canonical key lazily.
    Instances are immutable and safe to share across threads.
    """

    __slots__ = ("sigma", "alpha", "n", "kappa", "genus", "_key")

    def __init__(self, sigma: Permutation, alpha: Permutation):
        if sigma.n != alpha.n:
            raise ValueError("sigma and alpha act on different point sets")
        self.sigma = sigma
        self.alpha = alpha
        self.n = sigma.n
        self.kappa = orbit_count(sigma, alpha)
        euler = (
            self.n
            + 2 * self.kappa
            - sigma.cycle_count
            - alpha.cycle_count
            - (alpha.inverse() * sigma).cycle_count
        )
        assert euler >= 0 and euler % 2 == 0, f"genus parity violated: {euler}"
        self.genus = euler // 2
        self._key = None

    @property
    def is_connected(self) -> bool:
        return self.kappa <= 1

    def faces(self) -> Permutation:
        return self.alpha.inverse() * self.sigma

    @property
    def is_map(self) -> bool:
        """True when every alpha-cycle has length at most 2."""
        return all(len(c) <= 2 for c in self.alpha.cycles())

    def components(self) -> Tuple[Tuple[int, ...], ...]:
        """Orbits of the generated group, each sorted, ordered by minimum."""
        n = self.n
        sig, alf = self.sigma, self.alpha
        seen = [False] * (n + 1)
        comps: List[Tuple[int, ...]] = []
        for start in range(1, n + 1):
            if seen[start]:
                continue
            stack = [start]
            seen[start] = True
            comp = []
            while stack:
                p = stack.pop()
                comp.append(p)
                for q in (sig(p), alf(p)):
                    if not seen[q]:
                        seen[q] = True
                        stack.append(q)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def canonical_key(self):
        """Exact isomorphism invariant of the pair.

        Two collections get equal keys if and only if some relabeling of
        1..n carries one (sigma, alpha) pair to the other.  Per component the
        key is the lexicographic minimum, over all choices of root, of the
        pair of image words after relabeling points in first-visit order
        (following sigma then alpha from each visited point).  Component keys
        are sorted, which handles collections.
        """
        if self._key is None:
            sig, alf = self.sigma._image, self.alpha._image
            keys = []
            for comp in self.components():
                best = None
                for root in comp:
                    label = {root: 1}
                    order = [root]
                    i = 0
                    while i < len(order):
                        p = order[i]
                        i += 1
                        for q in (sig[p], alf[p]):
                            if q not in label:
                                label[q] = len(order) + 1
                                order.append(q)
                    cand = tuple(label[sig[p]] for p in order) + tuple(
                        label[alf[p]] for p in order
                    )
                    if best is None or cand < best:
                        best = cand
                keys.append((len(comp), best))
            keys.sort()
            self._key = tuple(keys)
        return self._key

    def relabel(self, r: Permutation) -> "Hypermap":
        return Hypermap(self.sigma.relabel(r), self.alpha.relabel(r))

    def disjoint_union(self, other: "Hypermap") -> "Hypermap":
        """Place other's points after self's (shifted by self.n)."""
        shift = self.n
        sig = list(self.sigma.image) + [x + shift for x in other.sigma.image]
        alf = list(self.alpha.image) + [x + shift for x in other.alpha.image]
        return Hypermap(Permutation(sig), Permutation(alf))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Hypermap)
            and self.sigma == other.sigma
            and self.alpha == other.alpha
        )

    def __hash__(self) -> int:
        return hash((self.sigma, self.alpha))

    def __repr__(self) -> str:
        return (
            f"Hypermap(sigma={self.sigma.cycle_string()}, "
            f"alpha={self.alpha.cycle_string()})"
        )


def merge_components(h: Hypermap, i: int, j: int) -> Hypermap:
    """Replace sigma by (i, j) * sigma, for i and j in different components.

    This keeps the Whitney polynomial unchanged while lowering kappa by one.
    """
    for comp in h.components():
        if i in comp and j in comp:
            raise ValueError(f"points {i} and {j} lie in the same component")
    merged = Hypermap(h.sigma.swap_values(i, j), h.alpha)
    assert merged.kappa == h.kappa - 1
    return merged


def dual(h: Hypermap) -> Hypermap:
    """The dual pair (alpha^-1 sigma, alpha^-1)."""
    ainv = h.alpha.inverse()
    return Hypermap(ainv * h.sigma, ainv)
