"""Experiment harness: set distances, Brunn-Minkowski checks, exhaustive
verification suites, the hypercube embedding, and the concentration explorer."""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from .coding import (
    curved_injection,
    decode_key,
    derived_key,
    encode_pair,
    flat_injection,
)
from .geodesic import (
    crossovers,
    dual,
    dual_set,
    is_midpoint,
    midpoint_set,
)
from .perms import (
    Composition,
    DegreeLimitError,
    Permutation,
    canonical_permutation,
    compose,
    conjugate,
    cycle_count,
    cycle_minima,
    distance,
    enumerate_compositions,
    enumerate_group,
    identity,
    inverse,
    ordered_cycle_type,
    transport,
)

RESIDUAL_TOL = 1e-12

#: Largest crossover set for the exact independent-set search.
EXACT_MIS_LIMIT = 40

SUITES = ("metric", "duality", "lemma1", "prop2", "prop3", "derived_keys", "injections")

#: Largest degree each exhaustive suite will accept.
SUITE_LIMITS = {
    "metric": 5,
    "duality": 7,
    "lemma1": 7,
    "prop2": 5,
    "prop3": 7,
    "derived_keys": 6,
    "injections": 6,
    "all": 5,
}


@dataclass
class ExperimentReport:
    """A reproducible record of one experiment: identical (kind, inputs)
    always yield identical metrics.  runtime_ms is the only nondeterministic
    field and is excluded from structured serialization."""

    kind: str
    inputs: dict
    metrics: dict
    passed: bool
    runtime_ms: int = 0

    def to_json_dict(self) -> dict:
        return {
            "schema": "midperm.report/1",
            "kind": self.kind,
            "inputs": self.inputs,
            "metrics": self.metrics,
            "passed": self.passed,
        }


def set_distance(A: Iterable[Permutation], B: Iterable[Permutation]) -> int:
    """Minimum pairwise distance; 0 iff the sets intersect."""
    A = list(A)
    B = list(B)
    if not A or not B:
        raise ValueError("set_distance requires nonempty sets")
    return min(distance(a, b) for a in A for b in B)


def default_curvature(n: int) -> float:
    """The proved curvature constant 4 log 2 / (n-1)^2."""
    if n < 2:
        raise ValueError("curvature constant needs degree >= 2")
    return 4.0 * math.log(2.0) / (n - 1) ** 2


def bm_flat_check(A: Iterable[Permutation], B: Iterable[Permutation]) -> ExperimentReport:
    """Check |M|^2 >= |A||B| (exact integers); residual reported in log domain."""
    t0 = time.perf_counter()
    A = set(A)
    B = set(B)
    M = midpoint_set(A, B)
    residual = math.log(len(M)) - 0.5 * math.log(len(A)) - 0.5 * math.log(len(B))
    report = ExperimentReport(
        kind="bm_flat",
        inputs={"size_a": len(A), "size_b": len(B), "n": next(iter(A)).n},
        metrics={"size_m": len(M), "residual": residual},
        passed=len(M) ** 2 >= len(A) * len(B),
    )
    report.runtime_ms = int((time.perf_counter() - t0) * 1000)
    return report


def bm_curved_check(
    A: Iterable[Permutation], B: Iterable[Permutation], K: float | None = None
) -> ExperimentReport:
    """Check log|M| >= (log|A| + log|B|)/2 + (K/8) d(A,B)^2 to RESIDUAL_TOL."""
    t0 = time.perf_counter()
    A = set(A)
    B = set(B)
    if not A or not B:
        raise ValueError("bm_curved_check requires nonempty sets")
    n = next(iter(A)).n
    if K is None:
        K = default_curvature(n)
    if K <= 0:
        raise ValueError("curvature constant must be positive")
    M = midpoint_set(A, B)
    d = set_distance(A, B)
    residual = (
        math.log(len(M))
        - 0.5 * math.log(len(A))
        - 0.5 * math.log(len(B))
        - (K / 8.0) * d * d
    )
    report = ExperimentReport(
        kind="bm_curved",
        inputs={"size_a": len(A), "size_b": len(B), "n": n, "k": K},
        metrics={"size_m": len(M), "set_distance": d, "residual": residual},
        passed=residual >= -RESIDUAL_TOL,
    )
    report.runtime_ms = int((time.perf_counter() - t0) * 1000)
    return report


def hypercube_embed(bits: Sequence[int], n: int | None = None) -> Permutation:
    """Isometric embedding of a bitstring: set bit i becomes the transposition
    (2i-1 -> 2i)."""
    N = len(bits)
    if n is None:
        n = 2 * N
    if n < 2 * N:
        raise ValueError(f"degree {n} too small for {N} bits (need >= {2 * N})")
    images = list(range(1, n + 1))
    for i, bit in enumerate(bits, start=1):
        if bit not in (0, 1):
            raise ValueError("bits must be 0 or 1")
        if bit:
            images[2 * i - 2], images[2 * i - 1] = 2 * i, 2 * i - 1
    return Permutation(tuple(images))


def sample_subsets(
    n: int, size_a: int, size_b: int, disjoint: bool, seed: int
) -> tuple[set[Permutation], set[Permutation]]:
    """Seeded uniform sampling without replacement of two subsets of S(n)."""
    population = list(enumerate_group(n))
    total = len(population)
    if size_a < 1 or size_b < 1 or size_a > total:
        raise ValueError("infeasible sizes")
    if disjoint and size_a + size_b > total:
        raise ValueError("infeasible sizes for disjoint sampling")
    if size_b > total:
        raise ValueError("infeasible sizes")
    rng = random.Random(seed)
    A = set(rng.sample(population, size_a))
    pool = [p for p in population if p not in A] if disjoint else population
    B = set(rng.sample(pool, size_b))
    return A, B


# ---------------------------------------------------------------------------
# exhaustive verification suites
# ---------------------------------------------------------------------------


class GroupTable:
    """Dense multiplication/inverse/distance tables over all of S(n), for
    exhaustive sweeps.  Indexing is lexicographic on image tuples."""

    def __init__(self, n: int):
        if n > 6:
            raise DegreeLimitError("group tables limited to degree 6")
        self.n = n
        self.elements = list(enumerate_group(n))
        index = {p: i for i, p in enumerate(self.elements)}
        self.index = index
        size = len(self.elements)
        self.inv = [index[inverse(p)] for p in self.elements]
        self.dist0 = [n - cycle_count(p) for p in self.elements]
        self.mul = [
            [index[compose(a, b)] for b in self.elements] for a in self.elements
        ]

    def distance(self, i: int, j: int) -> int:
        return self.dist0[self.mul[self.inv[i]][j]]


def _suite_metric(n: int) -> tuple[int, int]:
    table = GroupTable(n)
    size = len(table.elements)
    mul, inv, dist0 = table.mul, table.inv, table.dist0
    cases = failures = 0
    # pairwise identities: d(a,b) = d(ab^-1, e) = d(e, a^-1 b)
    for a in range(size):
        inv_a_row = mul[inv[a]]
        for b in range(size):
            d = dist0[inv_a_row[b]]
            cases += 1
            if dist0[mul[a][inv[b]]] != d or dist0[inv_a_row[b]] != d:
                failures += 1
    # triple identities: conjugation and left/right translation invariance
    for p in range(size):
        row_p = mul[p]
        inv_p = inv[p]
        for a in range(size):
            pa_pinv = mul[row_p[a]][inv_p]
            pa = row_p[a]
            ap = mul[a][p]
            for b in range(size):
                d = dist0[mul[inv[a]][b]]
                cases += 1
                if (
                    dist0[mul[inv[pa_pinv]][mul[row_p[b]][inv_p]]] != d
                    or dist0[mul[inv[ap]][mul[b][p]]] != d
                    or dist0[mul[inv[pa]][row_p[b]]] != d
                ):
                    failures += 1
    # diameter
    cases += 1
    if max(dist0) != (n - 1 if n > 1 else 0):
        failures += 1
    return cases, failures


def _suite_duality(n: int) -> tuple[int, int]:
    cases = failures = 0
    for mu in enumerate_compositions(n):
        cr = crossovers(mu)
        p_inv = inverse(canonical_permutation(mu))
        for c in cr:
            cases += 1
            cd = dual(c, mu)
            if cd not in cr:
                failures += 1
            if dual(cd, mu) != conjugate(p_inv, c):
                failures += 1
    return cases, failures


def _suite_lemma1(n: int) -> tuple[int, int]:
    cases = failures = 0
    for mu in enumerate_compositions(n):
        p = canonical_permutation(mu)
        minima = cycle_minima(p)
        for c in crossovers(mu):
            cases += 1
            q = compose(inverse(c), dual(c, mu))
            if ordered_cycle_type(q) != mu or cycle_minima(q) != minima:
                failures += 1
    return cases, failures


def _prop2_prop3_case(c, a, b, mu) -> bool:
    q = compose(inverse(a), b)
    x, y = encode_pair(c, a, b)
    xy = compose(inverse(x), y)
    if ordered_cycle_type(xy) != mu or cycle_minima(xy) != cycle_minima(q):
        return False
    if not (is_midpoint(a, x, y) and is_midpoint(b, x, y)):
        return False
    u_cc = transport(compose(inverse(c), dual(c, mu)))
    if transport(xy) != compose(transport(q), u_cc):
        return False
    return encode_pair(decode_key(c, mu), x, y) == (a, b)


def _suite_prop2(n: int, random_pairs: int = 1000, seed: int = 20240) -> tuple[int, int]:
    cases = failures = 0
    e = identity(n)
    by_type: dict[Composition, list[Permutation]] = {}
    for b in enumerate_group(n):
        by_type.setdefault(ordered_cycle_type(b), []).append(b)
    # translation-equivariance reduction: exhaustive over a = e
    for mu, bs in sorted(by_type.items()):
        for c in crossovers(mu):
            for b in bs:
                cases += 1
                if not _prop2_prop3_case(c, e, b, mu):
                    failures += 1
    # spot-check with random nonidentity left translations
    rng = random.Random(seed)
    group = list(enumerate_group(n))
    for _ in range(random_pairs):
        g = rng.choice(group)
        b0 = rng.choice(group)
        mu = ordered_cycle_type(b0)
        cr = crossovers(mu)
        c = cr.elements[rng.randrange(len(cr))]
        cases += 1
        if not _prop2_prop3_case(c, compose(g, e), compose(g, b0), mu):
            failures += 1
    return cases, failures


def _suite_prop3(n: int) -> tuple[int, int]:
    cases = failures = 0
    for mu in enumerate_compositions(n):
        for c in crossovers(mu):
            cases += 1
            if decode_key(decode_key(c, mu), mu) != c:
                failures += 1
    return cases, failures


def _suite_derived_keys(n: int) -> tuple[int, int]:
    cases = failures = 0
    for mu in enumerate_compositions(n):
        for c in crossovers(mu):
            cases += 1
            if decode_key(derived_key(c, mu), mu) != dual(decode_key(c, mu), mu):
                failures += 1
    return cases, failures


def _suite_injections(n: int, trials: int = 50, seed: int = 7) -> tuple[int, int]:
    cases = failures = 0
    limit = math.factorial(n)
    hi = max(1, min(10, limit // 2))
    for t in range(trials):
        rng = random.Random(seed + t)
        sa = rng.randint(1, hi)
        sb = rng.randint(1, hi)
        A, B = sample_subsets(n, sa, sb, disjoint=False, seed=seed + 1000 + t)
        cases += 1
        if len(set(flat_injection(A, B).values())) != len(A) * len(B):
            failures += 1
        if limit >= 2:  # disjoint pairs need at least two elements
            A, B = sample_subsets(n, sa, sb, disjoint=True, seed=seed + 2000 + t)
            cases += 1
            if len(set(curved_injection(A, B).values())) != 2 * len(A) * len(B):
                failures += 1
    return cases, failures


_SUITE_FUNCS = {
    "metric": _suite_metric,
    "duality": _suite_duality,
    "lemma1": _suite_lemma1,
    "prop2": _suite_prop2,
    "prop3": _suite_prop3,
    "derived_keys": _suite_derived_keys,
    "injections": _suite_injections,
}


def verify_suite(n: int, suite: str = "all") -> ExperimentReport:
    """Run one of the exhaustive verification suites (or all of them) at
    degree n; the report counts cases checked and failures."""
    if suite != "all" and suite not in _SUITE_FUNCS:
        raise ValueError(f"unknown suite {suite!r}")
    if n < 1 or n > SUITE_LIMITS[suite]:
        raise DegreeLimitError(
            f"suite {suite!r} limited to degree {SUITE_LIMITS[suite]}"
        )
    t0 = time.perf_counter()
    names = list(_SUITE_FUNCS) if suite == "all" else [suite]
    per_suite = {}
    cases = failures = 0
    for name in names:
        c, f = _SUITE_FUNCS[name](n)
        per_suite[name] = {"cases": c, "failures": f}
        cases += c
        failures += f
    report = ExperimentReport(
        kind="verify_suite",
        inputs={"n": n, "suite": suite},
        metrics={"cases": cases, "failures": failures, "per_suite": per_suite},
        passed=failures == 0,
    )
    report.runtime_ms = int((time.perf_counter() - t0) * 1000)
    return report


# ---------------------------------------------------------------------------
# concentration explorer
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConflictGraph:
    """Reformulation of the separation condition d(C, C_dual) >= r on subsets
    of Cr(mu): admissible C avoid the excluded vertices and contain no edge."""

    mu: Composition
    r: int
    size: int
    excluded: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]


def conflict_graph(mu: Composition, r: int) -> ConflictGraph:
    if r < 1:
        raise ValueError("threshold r must be >= 1")
    cr = crossovers(mu)
    duals = [dual(c, mu) for c in cr]
    excluded = tuple(
        i for i, c in enumerate(cr.elements) if distance(c, duals[i]) < r
    )
    edges = []
    for i, j in itertools.combinations(range(len(cr)), 2):
        if (
            distance(cr.elements[i], duals[j]) < r
            or distance(cr.elements[j], duals[i]) < r
        ):
            edges.append((i, j))
    return ConflictGraph(mu, r, len(cr), excluded, tuple(edges))


def _max_independent_size(allowed: int, adj: list[int]) -> int:
    best = 0

    def bb(cand: int, size: int):
        nonlocal best
        if size + cand.bit_count() <= best:
            return
        if cand == 0:
            best = max(best, size)
            return
        v = (cand & -cand).bit_length() - 1
        bit = 1 << v
        bb((cand & ~bit) & ~adj[v], size + 1)
        bb(cand & ~bit, size)

    bb(allowed, 0)
    return best


def max_separated_set(
    mu: Composition, r: int, mode: str = "exact"
) -> tuple[int, set[Permutation]]:
    """Largest (exact) or heuristically large (greedy) subset C of Cr(mu) with
    d(C, C_dual) >= r.  The witness is always re-verified directly, and the
    exact witness is the lexicographically least maximum independent set."""
    cr = crossovers(mu)
    if r <= 0:
        return len(cr), set(cr.elements)
    graph = conflict_graph(mu, r)
    nvert = graph.size
    adj = [0] * nvert
    for i, j in graph.edges:
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    allowed = ((1 << nvert) - 1) & ~sum(1 << i for i in graph.excluded)

    if mode == "exact":
        if nvert > EXACT_MIS_LIMIT:
            raise DegreeLimitError(
                f"exact independent-set search limited to {EXACT_MIS_LIMIT} crossovers"
            )
        best = _max_independent_size(allowed, adj)
        chosen: list[int] = []
        cand = allowed
        remaining = best
        for v in range(nvert):
            bit = 1 << v
            if not cand & bit:
                continue
            after = (cand & ~bit) & ~adj[v]
            if 1 + _max_independent_size(after, adj) >= remaining:
                chosen.append(v)
                remaining -= 1
                cand = after
                if remaining == 0:
                    break
    elif mode == "greedy":
        chosen = []
        cand = allowed
        for v in range(nvert):
            bit = 1 << v
            if cand & bit:
                chosen.append(v)
                cand &= ~bit & ~adj[v]
    else:
        raise ValueError(f"unknown mode {mode!r}")

    witness = {cr.elements[v] for v in chosen}
    if witness:
        # independent revalidation of the conflict-graph reformulation
        assert set_distance(witness, dual_set(witness, mu)) >= r
    return len(chosen), witness


def epsilon_estimate(n: int, mode: str = "exact") -> ExperimentReport:
    """Sweep every mu with positive rank and every r up to the rank, recording
    the separated-set sizes and the concentration-rate bounds they imply.

    Rows with s = |Cr(mu)| and r >= 1 would violate any positive rate and are
    flagged as counterexample candidates rather than folded into the minimum;
    vacuous rows (s = 0) are reported but excluded too.
    """
    t0 = time.perf_counter()
    rows = []
    eps_candidates = []
    flagged_count = 0
    for mu in enumerate_compositions(n):
        rank = mu.rank
        if rank < 1:
            continue
        cr_size = len(crossovers(mu))
        for r in range(1, rank + 1):
            s, _ = max_separated_set(mu, r, mode=mode)
            flagged = s == cr_size
            bound = None
            if 0 < s < cr_size:
                bound = -rank * math.log(s / cr_size) / (r * r)
                eps_candidates.append(bound)
            if flagged:
                flagged_count += 1
            rows.append(
                {
                    "mu": list(mu.parts),
                    "r": r,
                    "cr_size": cr_size,
                    "s": s,
                    "bound_epsilon": bound,
                    "flagged": flagged,
                }
            )
    report = ExperimentReport(
        kind="concentration",
        inputs={"n": n, "mode": mode},
        metrics={
            "rows": rows,
            "eps_hat": min(eps_candidates) if eps_candidates else None,
            "flagged_count": flagged_count,
        },
        passed=flagged_count == 0,
    )
    report.runtime_ms = int((time.perf_counter() - t0) * 1000)
    return report
