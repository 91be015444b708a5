"""Midpoint sets, noncrossing products, crossover sets Cr(mu), and duality."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .perms import (
    Composition,
    DegreeLimitError,
    Permutation,
    canonical_permutation,
    compose,
    cycle_string,
    distance,
    enumerate_group,
    from_cycles,
    identity,
    inverse,
)

#: Largest interval length for noncrossing-partition enumeration.
NONCROSSING_LIMIT = 12


class NotACrossoverError(ValueError):
    """Raised when a permutation is not a midpoint of e and p_mu."""


def is_midpoint(m: Permutation, a: Permutation, b: Permutation) -> bool:
    """True iff d(a,m) + d(m,b) = d(a,b) and the two halves differ by at most 1."""
    dam = distance(a, m)
    dmb = distance(m, b)
    return dam + dmb == distance(a, b) and abs(dam - dmb) <= 1


def _check_noncrossing(blocks: list[list[int]]) -> bool:
    # blocks cross iff some pair alternates a < b < c < d with a,c and b,d split
    for b1, b2 in itertools.combinations(blocks, 2):
        merged = sorted((x, 0) for x in b1) + sorted((x, 1) for x in b2)
        merged.sort()
        labels = [lab for _, lab in merged]
        # crossing iff the label sequence contains x,y,x,y as a subsequence
        alternations = 1
        for prev, cur in zip(labels, labels[1:]):
            if cur != prev:
                alternations += 1
        if alternations >= 4:
            return False
    return True


def noncrossing_partitions(k: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Noncrossing partitions of {1,...,k}, via restricted-growth strings
    filtered by a crossing test; lexicographic in the growth string.

    Blocks come out sorted by minimum, each block sorted increasingly.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k > NONCROSSING_LIMIT:
        raise DegreeLimitError(f"noncrossing enumeration limited to {NONCROSSING_LIMIT}")

    def rec(i: int, rgs: list[int], maxlab: int) -> Iterator[list[int]]:
        if i == k:
            yield rgs
            return
        for lab in range(maxlab + 2):
            yield from rec(i + 1, rgs + [lab], max(maxlab, lab))

    for rgs in rec(1, [0], 0):
        nblocks = max(rgs) + 1
        blocks: list[list[int]] = [[] for _ in range(nblocks)]
        for point, lab in enumerate(rgs, start=1):
            blocks[lab].append(point)
        if _check_noncrossing(blocks):
            yield tuple(tuple(b) for b in blocks)


def narayana(n: int, k: int) -> int:
    """Number of noncrossing partitions of an n-set with exactly k blocks.

    Closed-form counter, independent of the enumeration above.
    """
    if not (1 <= k <= n):
        return 0
    return math.comb(n, k) * math.comb(n, k - 1) // n


@dataclass(frozen=True)
class NoncrossingProduct:
    """A noncrossing partition of an integer interval with its forward-cycle product."""

    blocks: tuple[tuple[int, ...], ...]
    permutation: Permutation

    @property
    def rank(self) -> int:
        """d(e, permutation) within the interval: interval length minus block count."""
        return sum(len(b) for b in self.blocks) - len(self.blocks)


def noncrossing_products(lo: int, hi: int, n: int | None = None) -> Iterator[NoncrossingProduct]:
    """One entry per noncrossing partition of [lo, hi] (Catalan many), each
    with the product of forward cycles on its blocks, in degree n (default hi)."""
    if lo > hi:
        raise ValueError("empty interval")
    if n is None:
        n = hi
    if hi > n:
        raise ValueError("interval exceeds degree")
    k = hi - lo + 1
    for blocks in noncrossing_partitions(k):
        shifted = tuple(tuple(x + lo - 1 for x in b) for b in blocks)
        yield NoncrossingProduct(shifted, from_cycles(n, shifted))


class CrossoverSet:
    """The midpoint set Cr(mu) of e and p_mu, in a fixed deterministic order.

    A crossover's identity across runs is its position in this order.
    """

    def __init__(self, mu: Composition, elements: Iterable[Permutation]):
        self.mu = mu
        self.elements: tuple[Permutation, ...] = tuple(elements)
        self._index = {c: i for i, c in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise ValueError("duplicate crossovers")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements)

    def __contains__(self, c: Permutation) -> bool:
        return c in self._index

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CrossoverSet)
            and self.mu == other.mu
            and set(self.elements) == set(other.elements)
        )

    def index(self, c: Permutation) -> int:
        return self._index[c]

    def dual_index(self) -> list[int]:
        """Position of each element's dual; a permutation of 0..len-1 (closure)."""
        return [self._index[dual(c, self.mu)] for c in self.elements]

    def to_json_dict(self) -> dict:
        return {
            "mu": list(self.mu.parts),
            "elements": [c.to_json_dict() for c in self.elements],
            "dual_index": self.dual_index(),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "CrossoverSet":
        mu = Composition(tuple(data["mu"]))
        return cls(mu, (Permutation.from_json_dict(d) for d in data["elements"]))


def crossovers_bfs(mu: Composition) -> CrossoverSet:
    """Oracle: the exact midpoint set of e and p_mu by scanning all of S(n)."""
    n = mu.n
    e = identity(n)
    p = canonical_permutation(mu)
    return CrossoverSet(mu, (c for c in enumerate_group(n) if is_midpoint(c, e, p)))


@lru_cache(maxsize=None)
def crossovers(mu: Composition) -> CrossoverSet:
    """Generate Cr(mu) from per-cycle noncrossing products.

    A point on a geodesic from e toward a forward cycle is a product of
    forward cycles on a noncrossing partition of the cycle's support; the
    generator combines one such product per interval cycle of p_mu and keeps
    the combinations whose total rank is an admissible midpoint rank.  When
    the total distance D is even, parity forces rank exactly D/2; when odd,
    rank is (D-1)/2 or (D+1)/2.  Validated against crossovers_bfs in tests.
    """
    n = mu.n
    total = mu.rank
    admissible = {total // 2, (total + 1) // 2}

    intervals = []
    start = 1
    for part in mu.parts:
        intervals.append((start, start + part - 1))
        start += part

    per_interval: list[list[tuple[int, tuple[tuple[int, ...], ...]]]] = []
    for lo, hi in intervals:
        per_interval.append(
            [(ncp.rank, ncp.blocks) for ncp in noncrossing_products(lo, hi, n)]
        )

    elements = []
    for combo in itertools.product(*per_interval):
        rank = sum(r for r, _ in combo)
        if rank in admissible:
            blocks = [b for _, bs in combo for b in bs]
            elements.append(from_cycles(n, blocks))
    return CrossoverSet(mu, elements)


def dual(c: Permutation, mu: Composition) -> Permutation:
    """The upper half c^-1 p_mu of the geodesic whose lower half is c."""
    p = canonical_permutation(mu)
    if not is_midpoint(c, identity(mu.n), p):
        raise NotACrossoverError(f"{cycle_string(c)} is not a {mu}-crossover")
    return compose(inverse(c), p)


def dual_set(C: Iterable[Permutation], mu: Composition) -> set[Permutation]:
    return {dual(c, mu) for c in C}


def midpoint_set(
    A: Iterable[Permutation], B: Iterable[Permutation], method: str = "encode"
) -> set[Permutation]:
    """The midpoint set M of A and B.

    method="scan" filters all of S(n) by the midpoint condition (oracle);
    method="encode" takes the union over pairs of the crossover images,
    which is the same set by the standard-midpoint parameterization.
    """
    from .coding import encode_point  # cycle: coding builds on this module

    A = sorted(set(A))
    B = sorted(set(B))
    if not A or not B:
        raise ValueError("midpoint_set requires nonempty inputs")
    n = A[0].n
    if any(p.n != n for p in itertools.chain(A, B)):
        raise ValueError("mixed degrees in midpoint_set input")
    if method == "scan":
        return {
            m
            for m in enumerate_group(n)
            if any(is_midpoint(m, a, b) for a in A for b in B)
        }
    if method == "encode":
        from .perms import ordered_cycle_type

        out: set[Permutation] = set()
        for a in A:
            for b in B:
                mu = ordered_cycle_type(compose(inverse(a), b))
                for c in crossovers(mu):
                    out.add(encode_point(c, a, b))
        return out
    raise ValueError(f"unknown method {method!r}")
