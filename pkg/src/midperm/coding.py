"""Pair encoding and decoding with crossovers, and the two injections.

The midpoint of a and b encoded by a crossover c is obtained by conjugating c
with the transport of a^-1 b and translating by a; pairs are encoded with
(c, dual of c), decoded with the involution delta, and the flat/curved
injections are built classwise from a key system.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .geodesic import NotACrossoverError, crossovers, dual
from .perms import (
    Composition,
    Permutation,
    compose,
    conjugate,
    cycle_string,
    inverse,
    ordered_cycle_type,
    transport,
)


class MidpointPair(NamedTuple):
    x: Permutation
    y: Permutation


def _require_crossover(c: Permutation, mu: Composition):
    if c not in crossovers(mu):
        raise NotACrossoverError(f"{cycle_string(c)} is not a {mu}-crossover")


def encode_point(c: Permutation, a: Permutation, b: Permutation) -> Permutation:
    """The midpoint of a and b encoded by the crossover c: a u c u^-1 with
    u the transport of a^-1 b."""
    q = compose(inverse(a), b)
    mu = ordered_cycle_type(q)
    _require_crossover(c, mu)
    return compose(a, conjugate(transport(q), c))


def encode_pair(c: Permutation, a: Permutation, b: Permutation) -> MidpointPair:
    """(x, y) encoded by c and its dual; both are midpoints of a and b."""
    q = compose(inverse(a), b)
    mu = ordered_cycle_type(q)
    _require_crossover(c, mu)
    u = transport(q)
    return MidpointPair(
        compose(a, conjugate(u, c)),
        compose(a, conjugate(u, dual(c, mu))),
    )


def decode_key(c: Permutation, mu: Composition) -> Permutation:
    """The decryption key for c: c^-1 conjugated by the inverse transport of
    c^-1 c_dual.  Re-encoding with it inverts pair encoding; it is an involution."""
    _require_crossover(c, mu)
    u = transport(compose(inverse(c), dual(c, mu)))
    return conjugate(inverse(u), inverse(c))


def derived_key(c: Permutation, mu: Composition) -> Permutation:
    """The second-system key whose decryption key is the dual of c's:
    decode(dual(decode(c)))."""
    return decode_key(dual(decode_key(c, mu), mu), mu)


@dataclass(frozen=True)
class KeySystem:
    """One encryption key per ordered cycle type, with the policy that chose it."""

    classes: tuple[tuple[Composition, Permutation], ...]
    policy: str
    seed: int | None = None

    def __post_init__(self):
        mus = [mu for mu, _ in self.classes]
        if len(set(mus)) != len(mus):
            raise ValueError("duplicate cycle types in key system")
        for mu, c in self.classes:
            if c not in crossovers(mu):
                raise NotACrossoverError(f"key {cycle_string(c)} is not a {mu}-crossover")

    def key(self, mu: Composition) -> Permutation:
        for m, c in self.classes:
            if m == mu:
                return c
        raise KeyError(f"no key for type {mu}")

    def to_json_dict(self) -> dict:
        return {
            "policy": self.policy,
            "seed": self.seed,
            "classes": [
                {"mu": list(mu.parts), "key": c.to_json_dict()} for mu, c in self.classes
            ],
        }


def select_keys(
    mu_list: Iterable[Composition], policy: str = "first", seed: int | None = None
) -> KeySystem:
    """Pick one crossover per type: "first" in the deterministic order, or
    "seeded" uniformly with a recorded seed."""
    mu_list = list(mu_list)
    if policy == "first":
        classes = tuple((mu, crossovers(mu).elements[0]) for mu in mu_list)
        return KeySystem(classes, "first")
    if policy == "seeded":
        if seed is None:
            raise ValueError("seeded policy requires a seed")
        rng = random.Random(seed)
        classes = tuple(
            (mu, crossovers(mu).elements[rng.randrange(len(crossovers(mu)))])
            for mu in mu_list
        )
        return KeySystem(classes, "seeded", seed)
    raise ValueError(f"unknown policy {policy!r}")


def _classes(A, B):
    """Sorted input sets plus the sorted list of occurring ordered cycle types."""
    A = sorted(set(A))
    B = sorted(set(B))
    if not A or not B:
        raise ValueError("injection requires nonempty inputs")
    mus = sorted({ordered_cycle_type(compose(inverse(a), b)) for a in A for b in B})
    return A, B, mus


def flat_injection(
    A: Iterable[Permutation],
    B: Iterable[Permutation],
    keys: KeySystem | None = None,
) -> dict[tuple[Permutation, Permutation], MidpointPair]:
    """Injective map A x B -> M x M: each pair is encoded with the key of its
    ordered cycle type class."""
    A, B, mus = _classes(A, B)
    if keys is None:
        keys = select_keys(mus)
    out = {}
    transports: dict[tuple[Permutation, Permutation], Permutation] = {}
    for a in A:
        for b in B:
            q = compose(inverse(a), b)
            mu = ordered_cycle_type(q)
            c = keys.key(mu)
            u = transports.setdefault((a, b), transport(q))
            out[(a, b)] = MidpointPair(
                compose(a, conjugate(u, c)),
                compose(a, conjugate(u, dual(c, mu))),
            )
    return out


def curved_injection(
    A: Iterable[Permutation],
    B: Iterable[Permutation],
    keys: KeySystem | None = None,
) -> dict[tuple[Permutation, Permutation, int], MidpointPair]:
    """Injective map A x B x {0,1} -> M x M for disjoint A and B: copy 0 uses
    the key system, copy 1 the derived keys."""
    A, B, mus = _classes(A, B)
    if set(A) & set(B):
        raise ValueError("curved injection requires disjoint inputs; use flat_injection")
    if keys is None:
        keys = select_keys(mus)
    derived = {mu: derived_key(keys.key(mu), mu) for mu in mus}
    out = {}
    for a in A:
        for b in B:
            q = compose(inverse(a), b)
            mu = ordered_cycle_type(q)
            u = transport(q)
            for j, c in ((0, keys.key(mu)), (1, derived[mu])):
                out[(a, b, j)] = MidpointPair(
                    compose(a, conjugate(u, c)),
                    compose(a, conjugate(u, dual(c, mu))),
                )
    return out


def fibre_set(
    x: Permutation,
    y: Permutation,
    A: Iterable[Permutation],
    B: Iterable[Permutation],
) -> set[Permutation]:
    """Keys d in Cr(mu(x^-1 y)) whose encoding of (x, y) lands in A x B.

    The fibre of the adaptive coding map over (x, y); its distance to its own
    dual set is at least d(A, B)."""
    A = set(A)
    B = set(B)
    if not A or not B:
        raise ValueError("fibre_set requires nonempty inputs")
    mu = ordered_cycle_type(compose(inverse(x), y))
    return {
        d
        for d in crossovers(mu)
        if (pair := encode_pair(d, x, y)).x in A and pair.y in B
    }


def injection_to_json(mapping: dict) -> list[dict]:
    """Audit record for an injection map, deterministic order."""
    records = []
    for key in sorted(mapping, key=lambda k: tuple(p.images if isinstance(p, Permutation) else p for p in k)):
        pair = mapping[key]
        records.append(
            {
                "input": [
                    p.to_json_dict() if isinstance(p, Permutation) else p for p in key
                ],
                "output": [pair.x.to_json_dict(), pair.y.to_json_dict()],
            }
        )
    return records
