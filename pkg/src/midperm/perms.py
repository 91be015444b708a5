"""Permutations of {1,...,n}, ordered cycle structures, and the transposition metric.

A permutation is stored as the tuple of its images (p(1),...,p(n)), always
1-based.  The product convention throughout is ``compose(a, b) = a after b``,
i.e. b acts first; all identities in the library are stated and tested under
this convention.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

#: Largest degree for which the BFS distance oracle will run.
BFS_DEGREE_LIMIT = 8

#: Largest degree for which full-group enumeration is allowed (guards n!).
ENUMERATION_LIMIT = 9


class DegreeMismatchError(ValueError):
    """Raised when combining permutations of different degrees."""


class DegreeLimitError(ValueError):
    """Raised when an exhaustive operation is asked to exceed its degree guard."""


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {1,...,n}, given by its image sequence.

    Ordering is lexicographic on the image tuple; this is the deterministic
    order used whenever sets of permutations are serialized or iterated.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n == 0:
            raise ValueError("degree must be positive")
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a bijection of 1..{n}: {self.images}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __repr__(self):
        return f"Permutation({self.images})"

    def __str__(self):
        return cycle_string(self)

    def to_json_dict(self) -> dict:
        return {"n": self.n, "images": list(self.images)}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Permutation":
        images = tuple(data["images"])
        if len(images) != data["n"]:
            raise ValueError("degree field does not match image sequence")
        return cls(images)


@dataclass(frozen=True, order=True)
class Composition:
    """An ordered cycle type: a sequence of positive parts summing to n."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("composition must have at least one part")
        if any(p < 1 for p in self.parts):
            raise ValueError(f"parts must be positive: {self.parts}")

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def rank(self) -> int:
        """Distance from the identity to the canonical permutation, n - l(mu)."""
        return self.n - len(self.parts)

    def __str__(self):
        return ",".join(str(p) for p in self.parts)


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def transposition(n: int, i: int, j: int) -> Permutation:
    if not (1 <= i <= n and 1 <= j <= n and i != j):
        raise ValueError(f"invalid transposition ({i} {j}) in degree {n}")
    images = list(range(1, n + 1))
    images[i - 1], images[j - 1] = j, i
    return Permutation(tuple(images))


def _check_degrees(a: Permutation, b: Permutation):
    if a.n != b.n:
        raise DegreeMismatchError(f"degree mismatch: {a.n} vs {b.n}")


def compose(a: Permutation, b: Permutation) -> Permutation:
    """The product a*b acting as x -> a(b(x)); b acts first."""
    _check_degrees(a, b)
    bi = b.images
    ai = a.images
    return Permutation(tuple(ai[x - 1] for x in bi))


def inverse(p: Permutation) -> Permutation:
    images = [0] * p.n
    for i, j in enumerate(p.images, start=1):
        images[j - 1] = i
    return Permutation(tuple(images))


def conjugate(u: Permutation, p: Permutation) -> Permutation:
    """u p u^-1: sends each mapping i -> j of p to u(i) -> u(j)."""
    _check_degrees(u, p)
    images = [0] * p.n
    ui = u.images
    pi = p.images
    for i in range(1, p.n + 1):
        images[ui[i - 1] - 1] = ui[pi[i - 1] - 1]
    return Permutation(tuple(images))


def ordered_cycle_factorization(p: Permutation) -> tuple[tuple[int, ...], ...]:
    """Disjoint cycles of p, each led by its minimum, sorted by minima.

    Fixed points are materialized as singleton cycles, so the number of
    cycles is always l(mu) for mu the ordered cycle type.
    """
    seen = [False] * p.n
    cycles = []
    for start in range(1, p.n + 1):
        if seen[start - 1]:
            continue
        cycle = [start]
        seen[start - 1] = True
        x = p(start)
        while x != start:
            cycle.append(x)
            seen[x - 1] = True
            x = p(x)
        cycles.append(tuple(cycle))
    return tuple(cycles)


def from_cycles(n: int, cycles: Sequence[Sequence[int]]) -> Permutation:
    """Rebuild a permutation of degree n from disjoint cycles.

    Points absent from every cycle are fixed.
    """
    images = list(range(1, n + 1))
    seen = set()
    for cycle in cycles:
        for x in cycle:
            if not (1 <= x <= n):
                raise ValueError(f"point {x} outside 1..{n}")
            if x in seen:
                raise ValueError(f"point {x} repeated across cycles")
            seen.add(x)
        for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
            images[a - 1] = b
    return Permutation(tuple(images))


def ordered_cycle_type(p: Permutation) -> Composition:
    return Composition(tuple(len(c) for c in ordered_cycle_factorization(p)))


def cycle_minima(p: Permutation) -> tuple[int, ...]:
    return tuple(c[0] for c in ordered_cycle_factorization(p))


def canonical_permutation(mu: Composition) -> Permutation:
    """The permutation cycling the consecutive intervals of lengths mu_1, mu_2, ..."""
    images = []
    start = 1
    for part in mu.parts:
        images.extend(range(start + 1, start + part))
        images.append(start)
        start += part
    return Permutation(tuple(images))


def transport(p: Permutation) -> Permutation:
    """The unique u conjugating the canonical permutation of p's type into p
    while mapping cycle minima onto cycle minima.

    The canonical factorization reads 1..n in order, so u is exactly the
    reading order of p's ordered cycle factorization.
    """
    reading = [x for cycle in ordered_cycle_factorization(p) for x in cycle]
    return Permutation(tuple(reading))


def cycle_count(p: Permutation) -> int:
    seen = [False] * p.n
    count = 0
    for start in range(p.n):
        if seen[start]:
            continue
        count += 1
        x = start
        while not seen[x]:
            seen[x] = True
            x = p.images[x] - 1
    return count


def distance(a: Permutation, b: Permutation) -> int:
    """Transposition word metric: n minus the cycle count of a^-1 b."""
    _check_degrees(a, b)
    # inline a^-1 b cycle count: follow x -> a^-1(b(x)) without allocating
    ai = a.images
    bi = b.images
    n = a.n
    inv_a = [0] * n
    for i, j in enumerate(ai):
        inv_a[j - 1] = i  # 0-based
    seen = [False] * n
    count = 0
    for start in range(n):
        if seen[start]:
            continue
        count += 1
        x = start
        while not seen[x]:
            seen[x] = True
            x = inv_a[bi[x] - 1]
    return n - count


@lru_cache(maxsize=4)
def _bfs_distance_map(n: int) -> dict[tuple[int, ...], int]:
    """BFS layers of the right Cayley graph from the identity."""
    start = tuple(range(1, n + 1))
    pairs = list(itertools.combinations(range(n), 2))
    dist = {start: 0}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        d = dist[cur]
        for i, j in pairs:
            nxt = list(cur)
            nxt[i], nxt[j] = nxt[j], nxt[i]
            nxt = tuple(nxt)
            if nxt not in dist:
                dist[nxt] = d + 1
                queue.append(nxt)
    return dist


def distance_bfs_oracle(a: Permutation, b: Permutation) -> int:
    """BFS distance in the right Cayley graph generated by all transpositions.

    Left translation by a^-1 is a graph automorphism, so this is the BFS
    layer of a^-1 b from the identity.  Independent of the cycle-count
    formula; guarded by BFS_DEGREE_LIMIT.
    """
    _check_degrees(a, b)
    n = a.n
    if n > BFS_DEGREE_LIMIT:
        raise DegreeLimitError(f"BFS oracle limited to degree {BFS_DEGREE_LIMIT}")
    return _bfs_distance_map(n)[compose(inverse(a), b).images]


def enumerate_group(n: int, limit: int = ENUMERATION_LIMIT) -> Iterator[Permutation]:
    """All n! permutations, lexicographic on image sequences."""
    if n < 1:
        raise ValueError("degree must be positive")
    if n > limit:
        raise DegreeLimitError(f"group enumeration limited to degree {limit}")
    for images in itertools.permutations(range(1, n + 1)):
        yield Permutation(images)


def enumerate_compositions(n: int) -> Iterator[Composition]:
    """All 2^(n-1) compositions of n, lexicographic on part sequences."""
    if n < 1:
        raise ValueError("n must be positive")

    def rec(remaining: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield prefix
            return
        for first in range(1, remaining + 1):
            yield from rec(remaining - first, prefix + (first,))

    for parts in rec(n, ()):
        yield Composition(parts)


def cycle_string(p: Permutation) -> str:
    """Ordered-cycle-factorization string like "(1 3)(2 4)"; identity is "e"."""
    cycles = [c for c in ordered_cycle_factorization(p) if len(c) > 1]
    if not cycles:
        return "e"
    return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycles)
