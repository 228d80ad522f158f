"""Permutations on the point set {1, ..., n}.

Everything downstream works with pairs of these, so the conventions are pinned
here once:

* points are the integers 1..n, contiguous; index 0 of the internal image
  table is a dummy so that ``p(i)`` is ``image[i]``;
* composition is ``(p * q)(i) = p(q(i))``, the right factor acts first;
* cycles are printed with each cycle starting at its smallest point and
  cycles sorted by smallest point, fixed points included.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence, Tuple


class Permutation:
    """An immutable permutation of {1..n}."""

    __slots__ = ("_image", "_cycles")

    def __init__(self, images: Iterable[int]):
        img = (0,) + tuple(images)
        n = len(img) - 1
        seen = [False] * (n + 1)
        for i in range(1, n + 1):
            j = img[i]
            if not isinstance(j, int) or not 1 <= j <= n or seen[j]:
                raise ValueError(f"not a permutation of 1..{n}: image {img[1:]}")
            seen[j] = True
        self._image = img
        self._cycles: Tuple[Tuple[int, ...], ...] | None = None

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build from a list of cycles; points not mentioned are fixed."""
        img = list(range(n + 1))
        touched = [False] * (n + 1)
        for cyc in cycles:
            for a in cyc:
                if not 1 <= a <= n:
                    raise ValueError(f"point {a} out of range 1..{n}")
                if touched[a]:
                    raise ValueError(f"point {a} appears twice")
                touched[a] = True
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                img[a] = b
        return cls(img[1:])

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        if i == j:
            return cls.identity(n)
        return cls.from_cycles(n, [(i, j)])

    @property
    def n(self) -> int:
        return len(self._image) - 1

    @property
    def image(self) -> Tuple[int, ...]:
        """Images of 1..n, as a tuple of length n."""
        return self._image[1:]

    def __call__(self, i: int) -> int:
        return self._image[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (p * q)(i) = p(q(i)): other acts first.
        p, q = self._image, other._image
        if len(p) != len(q):
            raise ValueError("size mismatch")
        return Permutation([p[q[i]] for i in range(1, len(p))])

    def inverse(self) -> "Permutation":
        img = self._image
        inv = [0] * len(img)
        for i in range(1, len(img)):
            inv[img[i]] = i
        return Permutation(inv[1:])

    def cycles(self) -> Tuple[Tuple[int, ...], ...]:
        """Canonical cycles: each starts at its minimum, sorted by minimum."""
        if self._cycles is None:
            img = self._image
            n = len(img) - 1
            seen = [False] * (n + 1)
            out = []
            for i in range(1, n + 1):
                if not seen[i]:
                    cyc = []
                    j = i
                    while not seen[j]:
                        seen[j] = True
                        cyc.append(j)
                        j = img[j]
                    out.append(tuple(cyc))
            self._cycles = tuple(out)
        return self._cycles

    @property
    def cycle_count(self) -> int:
        return len(self.cycles())

    def cycle_containing(self, i: int) -> Tuple[int, ...]:
        img = self._image
        cyc = [i]
        j = img[i]
        while j != i:
            cyc.append(j)
            j = img[j]
        k = cyc.index(min(cyc))
        return tuple(cyc[k:] + cyc[:k])

    def same_cycle(self, i: int, j: int) -> bool:
        if i == j:
            return True
        img = self._image
        k = img[i]
        while k != i:
            if k == j:
                return True
            k = img[k]
        return False

    def is_identity(self) -> bool:
        return all(self._image[i] == i for i in range(1, len(self._image)))

    def relabel(self, r: "Permutation") -> "Permutation":
        """Conjugate by r: the result maps r(i) to r(self(i))."""
        img = self._image
        rimg = r._image
        out = [0] * len(img)
        for i in range(1, len(img)):
            out[rimg[i]] = rimg[img[i]]
        return Permutation(out[1:])

    def swap_values(self, i: int, j: int) -> "Permutation":
        """(i, j) * self, computed without building the transposition."""
        img = list(self._image)
        for k in range(1, len(img)):
            if img[k] == i:
                img[k] = j
            elif img[k] == j:
                img[k] = i
        return Permutation(img[1:])

    def cycle_string(self) -> str:
        if self.n == 0:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._image == other._image

    def __hash__(self) -> int:
        return hash(self._image)

    def __repr__(self) -> str:
        return f"Permutation.from_cycles({self.n}, {list(self.cycles())})"


def cycle_count_on(points: Iterable[int], func) -> int:
    """Number of cycles of the map ``func`` restricted to ``points``.

    The point set must be closed under func; used for per-cycle genus checks
    without relabeling anything.
    """
    pts = set(points)
    count = 0
    while pts:
        start = pts.pop()
        j = func(start)
        while j != start:
            pts.remove(j)
            j = func(j)
        count += 1
    return count


def iter_points(n: int) -> Iterator[int]:
    return iter(range(1, n + 1))
