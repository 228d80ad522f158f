"""Whitney polynomials of hypermap collections.

For a pair (sigma, alpha) on n points the Whitney polynomial is the sum over
all refinements beta <= alpha of

    u^(kappa(sigma, beta) - kappa(sigma, alpha))
    * v^(kappa(sigma, beta) + n - z(beta) - z(sigma)),

an exact bivariate polynomial with nonnegative integer coefficients.  Three
evaluation routes are provided and must agree:

* ``whitney_bruteforce`` sums over the refinement stream directly;
* ``whitney_phi`` applies the deletion/contraction style recursion that picks
  a hyperedge cycle (c1, ..., cm) of length m >= 2 and expands into m branch
  collections phi_k, one per point of the cycle, each weighted by 1, u, v or
  u*v;
* ``whitney_psi`` uses the variant recursion whose branches additionally
  glue any component split off by the expansion back on (via a transposition
  joining c1's and c2's components), so connected input stays connected all
  the way down.

Branch construction for the cycle (c1, ..., cm), rotated so c1 is the
smallest point, and 1 <= k <= m:

* the sigma part is (c1, ck) * sigma when c1 and ck lie in different
  sigma-cycles (always the case for k = 1, reading (c1, c1) as identity),
  and sigma unchanged when they share a cycle;
* the alpha part replaces the cycle by (c1)(c2 ... cm) when k is 1 or 2 and
  by (c1)(c2 ... c(k-1))(ck ... cm) otherwise.

The branch weight is u^(kappa(phi_k) - kappa) * v^[k != 1 and c1, ck share a
sigma-cycle]; every weight is one of 1, u, v, u*v, which is asserted.  The
recursion bottoms out at collections whose hyperedges are all fixed points,
where the polynomial is 1.  Results are memoized under the exact canonical
key of the collection, with an optional bound on the cache size.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from multiprocessing import get_context
from typing import Iterator, List, Optional, Tuple

from .hypermap import Hypermap, orbit_count
from .nclattice import refinement_count, refinements
from .perm import Permutation
from .poly import BiPoly, UniPoly

METHODS = ("brute", "phi", "psi")


@dataclass
class WhitneyStats:
    nodes: int = 0
    memo_hits: int = 0
    terms: int = 0


@dataclass
class WhitneyResult:
    polynomial: BiPoly
    method: str
    stats: WhitneyStats = field(default_factory=WhitneyStats)


class InstanceTooLarge(ValueError):
    """Raised when a size guard would be exceeded."""


def pivot_cycle(alpha: Permutation) -> Optional[Tuple[int, ...]]:
    """The alpha-cycle of length >= 2 containing the smallest such point.

    Cycles from ``Permutation.cycles`` start at their minimum and are sorted
    by it, so the first long cycle is the right one.  None when alpha only
    has fixed points (the recursion base case).
    """
    for c in alpha.cycles():
        if len(c) >= 2:
            return c
    return None


def _replace_cycle(alpha: Permutation, cycle: Tuple[int, ...], k: int) -> Permutation:
    img = list(alpha._image)
    c1 = cycle[0]
    img[c1] = c1
    if k <= 2:
        pieces = [cycle[1:]]
    else:
        pieces = [cycle[1 : k - 1], cycle[k - 1 :]]
    for piece in pieces:
        for a, b in zip(piece, piece[1:] + piece[:1]):
            img[a] = b
    return Permutation(img[1:])


def phi_k(h: Hypermap, cycle: Tuple[int, ...], k: int) -> Hypermap:
    """The k-th branch collection for the given pivot cycle."""
    m = len(cycle)
    if m < 2 or not 1 <= k <= m:
        raise ValueError(f"k={k} out of range for cycle of length {m}")
    c1, ck = cycle[0], cycle[k - 1]
    if h.sigma.same_cycle(c1, ck):
        sig = h.sigma
    else:
        sig = h.sigma.swap_values(c1, ck)
    return Hypermap(sig, _replace_cycle(h.alpha, cycle, k))


def phi_k_composed(h: Hypermap, cycle: Tuple[int, ...], k: int) -> Hypermap:
    """phi_k written purely with transposition products.

    The sigma part is (c1, ck) sigma when that does not raise the cycle
    count, and sigma otherwise; the alpha part is (c1, ck) alpha (c1, c(k-1))
    with index k - 1 read mod m (k = 1 uses cm) and (c1, c1) read as the
    identity.  Kept as an independently coded route for unit tests against
    the direct construction.
    """
    m = len(cycle)
    n = h.n
    c1, ck = cycle[0], cycle[k - 1]
    ckm1 = cycle[(k - 2) % m]
    t_front = Permutation.transposition(n, c1, ck)
    t_back = Permutation.transposition(n, c1, ckm1)
    sig_candidate = t_front * h.sigma
    sig = sig_candidate if sig_candidate.cycle_count <= h.sigma.cycle_count else h.sigma
    return Hypermap(sig, t_front * h.alpha * t_back)


def branch(
    h: Hypermap, cycle: Tuple[int, ...], k: int, keep_connected: bool
) -> Tuple[Hypermap, int, int]:
    """One recursion branch: (child, u-exponent, v-exponent) of its weight.

    With keep_connected the child has any split component glued back, so its
    orbit count always matches the parent's.  The weight is unchanged by the
    gluing and always lands in {1, u, v, u*v}.
    """
    child = phi_k(h, cycle, k)
    eu = child.kappa - h.kappa
    assert eu in (0, 1), f"branch weight out of range: u^{eu}"
    ev = 1 if k != 1 and h.sigma.same_cycle(cycle[0], cycle[k - 1]) else 0
    if keep_connected and eu == 1:
        glued = Hypermap(child.sigma.swap_values(cycle[0], cycle[1]), child.alpha)
        assert glued.kappa == h.kappa, "gluing failed to restore the orbit count"
        child = glued
    return child, eu, ev


def psi_k(h: Hypermap, cycle: Tuple[int, ...], k: int) -> Hypermap:
    return branch(h, cycle, k, keep_connected=True)[0]


def _whitney_recursive(
    h: Hypermap, keep_connected: bool, max_cache: Optional[int]
) -> WhitneyResult:
    memo: dict = {}
    stats = WhitneyStats()

    def rec(g: Hypermap) -> BiPoly:
        stats.nodes += 1
        pivot = pivot_cycle(g.alpha)
        if pivot is None:
            return BiPoly.const(1)
        key = g.canonical_key()
        cached = memo.get(key)
        if cached is not None:
            stats.memo_hits += 1
            return cached
        total = BiPoly.zero()
        for k in range(1, len(pivot) + 1):
            child, eu, ev = branch(g, pivot, k, keep_connected)
            if keep_connected:
                assert child.kappa == g.kappa
            total = total + rec(child) * BiPoly.monomial(1, eu, ev)
        if max_cache is None or len(memo) < max_cache:
            memo[key] = total
        return total

    poly = rec(h)
    stats.terms = len(poly.terms)
    return WhitneyResult(poly, "psi" if keep_connected else "phi", stats)


def whitney_phi(h: Hypermap, max_cache: Optional[int] = None) -> WhitneyResult:
    return _whitney_recursive(h, keep_connected=False, max_cache=max_cache)


def whitney_psi(h: Hypermap, max_cache: Optional[int] = None) -> WhitneyResult:
    """Same polynomial as whitney_phi, via the connectivity-preserving rule.

    On connected input every node of the recursion tree stays connected,
    which is asserted.
    """
    return _whitney_recursive(h, keep_connected=True, max_cache=max_cache)


def _beta_term(h: Hypermap, beta: Permutation) -> Tuple[int, int]:
    kb = orbit_count(h.sigma, beta)
    eu = kb - h.kappa
    ev = kb + h.n - beta.cycle_count - h.sigma.cycle_count
    return eu, ev


def _brute_chunk(args) -> dict:
    sigma_img, alpha_img, betas = args
    sig = Permutation(sigma_img)
    h = Hypermap(sig, Permutation(alpha_img))
    out: dict = {}
    for img in betas:
        key = _beta_term(h, Permutation(img))
        out[key] = out.get(key, 0) + 1
    return out


def whitney_bruteforce(
    h: Hypermap,
    max_refinements: Optional[int] = None,
    processes: Optional[int] = None,
) -> WhitneyResult:
    """Direct sum over the refinement stream.

    ``max_refinements`` guards against huge lattices; ``processes`` splits
    the stream over a process pool (the terms are independent, summation is
    the only reduction).
    """
    total_count = refinement_count(h.alpha)
    if max_refinements is not None and total_count > max_refinements:
        raise InstanceTooLarge(
            f"{total_count} refinements exceed the cap of {max_refinements}"
        )
    stats = WhitneyStats()
    terms: dict = {}
    if processes and processes > 1 and total_count > 256:
        chunks = []
        buf: List[Tuple[int, ...]] = []
        for beta in refinements(h.alpha):
            buf.append(beta.image)
            if len(buf) >= 1024:
                chunks.append((h.sigma.image, h.alpha.image, buf))
                buf = []
        if buf:
            chunks.append((h.sigma.image, h.alpha.image, buf))
        with get_context("fork").Pool(processes) as pool:
            for part in pool.imap_unordered(_brute_chunk, chunks):
                for key, mult in part.items():
                    terms[key] = terms.get(key, 0) + mult
        stats.nodes = total_count
    else:
        for beta in refinements(h.alpha):
            key = _beta_term(h, beta)
            terms[key] = terms.get(key, 0) + 1
            stats.nodes += 1
    poly = BiPoly(terms)
    stats.terms = len(poly.terms)
    return WhitneyResult(poly, "brute", stats)


def whitney(
    h: Hypermap,
    method: str = "phi",
    max_refinements: Optional[int] = None,
    processes: Optional[int] = None,
) -> WhitneyResult:
    if method == "brute":
        return whitney_bruteforce(h, max_refinements, processes)
    if method == "phi":
        return whitney_phi(h)
    if method == "psi":
        return whitney_psi(h)
    raise ValueError(f"unknown method {method!r}")


def phi_expansion(h: Hypermap) -> List[Tuple[Hypermap, int, int, BiPoly]]:
    """Top level branches: (child, eu, ev, child polynomial) per k.

    Empty when alpha has no cycle of length >= 2.
    """
    pivot = pivot_cycle(h.alpha)
    if pivot is None:
        return []
    out = []
    for k in range(1, len(pivot) + 1):
        child, eu, ev = branch(h, pivot, k, keep_connected=False)
        out.append((child, eu, ev, whitney_phi(child).polynomial))
    return out


@dataclass
class Specializations:
    spanning_hyperforests: int
    spanning_collections: int
    hyperbola: UniPoly


def specializations(h: Hypermap, poly: Optional[BiPoly] = None) -> Specializations:
    """R(0,0), R(0,1) and the Laurent section R(v^-1, v).

    R(0,0) counts spanning hyperforests (refinements with the same orbit
    count as alpha and one face per component) and R(0,1) counts spanning
    connected-preserving collections.
    """
    if poly is None:
        poly = whitney_phi(h).polynomial
    return Specializations(
        spanning_hyperforests=int(poly.evaluate(0, 0)),
        spanning_collections=int(poly.evaluate(0, 1)),
        hyperbola=poly.hyperbola_section(),
    )


def wet_dry_polynomial(h: Hypermap) -> BiPoly:
    """Genus zero only: the sum over refinements of u^wet(beta) v^dry(beta).

    At genus zero the v-exponent of a refinement's Whitney term splits as
    kappa(sigma, beta) + n - z(beta) - z(sigma)
        = 2 g(sigma, beta) + z(beta^-1 sigma) - kappa(sigma, beta)
    with g(sigma, beta) = 0, so taking wet(beta) = kappa(sigma, beta) parts
    of the surface and dry(beta) = z(beta^-1 sigma) - kappa(sigma, beta)
    gives sum u^wet v^dry = u^kappa(sigma, alpha) * R(u, v), which is
    asserted before returning.
    """
    if h.genus != 0:
        raise ValueError("wet/dry weights are only defined at genus zero")
    terms: dict = {}
    sig = h.sigma
    for beta in refinements(h.alpha):
        kb = orbit_count(sig, beta)
        wet = kb
        dry = (beta.inverse() * sig).cycle_count - kb
        assert dry >= 0
        terms[(wet, dry)] = terms.get((wet, dry), 0) + 1
    poly = BiPoly(terms)
    expected = BiPoly.monomial(1, h.kappa, 0) * whitney_bruteforce(h).polynomial
    assert poly == expected, "wet/dry sum disagrees with u^kappa * R"
    return poly


def refinement_terms(h: Hypermap) -> Iterator[Tuple[Permutation, int, int]]:
    """The refinement stream with each beta's (u, v) exponent pair."""
    for beta in refinements(h.alpha):
        eu, ev = _beta_term(h, beta)
        yield beta, eu, ev
