import itertools
import random

import pytest

from midperm.geodesic import (
    CrossoverSet,
    NotACrossoverError,
    crossovers,
    crossovers_bfs,
    dual,
    dual_set,
    is_midpoint,
    midpoint_set,
    narayana,
    noncrossing_partitions,
    noncrossing_products,
)
from midperm.perms import (
    Composition,
    canonical_permutation,
    compose,
    conjugate,
    cycle_minima,
    distance,
    enumerate_compositions,
    enumerate_group,
    from_cycles,
    identity,
    inverse,
    ordered_cycle_type,
)


def test_is_midpoint_examples():
    a = from_cycles(3, [(1, 2)])
    assert is_midpoint(a, a, a)
    assert is_midpoint(a, identity(3), from_cycles(3, [(1, 2, 3)]))
    assert not is_midpoint(identity(4), identity(4), from_cycles(4, [(1, 2, 3, 4)]))


def test_midpoint_set_examples():
    e = identity(3)
    assert midpoint_set({e}, {e}) == {e}
    three = midpoint_set({e}, {from_cycles(3, [(1, 2, 3)])})
    assert three == {from_cycles(3, [(1, 2)]), from_cycles(3, [(2, 3)]), from_cycles(3, [(1, 3)])}
    t = from_cycles(2, [(1, 2)])
    assert midpoint_set({identity(2)}, {t}) == {identity(2), t}
    with pytest.raises(ValueError):
        midpoint_set(set(), {e})


@pytest.mark.parametrize("n", [3, 4, 5])
def test_midpoint_set_scan_matches_encode(n):
    rng = random.Random(n * 31)
    group = list(enumerate_group(n))
    for _ in range(8):
        A = set(rng.sample(group, rng.randint(1, 5)))
        B = set(rng.sample(group, rng.randint(1, 5)))
        assert midpoint_set(A, B, method="scan") == midpoint_set(A, B, method="encode")


def test_noncrossing_partition_counts():
    # Catalan numbers by direct enumeration
    for k, catalan in [(1, 1), (2, 2), (3, 5), (4, 14), (5, 42)]:
        assert len(list(noncrossing_partitions(k))) == catalan


def test_noncrossing_partitions_are_noncrossing():
    for blocks in noncrossing_partitions(5):
        flat = sorted(x for b in blocks for x in b)
        assert flat == list(range(1, 6))
        for b1, b2 in itertools.combinations(blocks, 2):
            for a, c in itertools.combinations(b1, 2):
                for b, d in itertools.combinations(b2, 2):
                    assert not (a < b < c < d or b < a < d < c)


def test_noncrossing_products():
    entries = list(noncrossing_products(1, 1))
    assert len(entries) == 1
    assert entries[0].permutation == identity(1)
    assert len(list(noncrossing_products(1, 3))) == 5
    assert len(list(noncrossing_products(1, 4))) == 14
    # rank is the word length of the forward-cycle product
    for ncp in noncrossing_products(2, 5, n=6):
        assert distance(identity(6), ncp.permutation) == ncp.rank
        assert ncp.rank == 4 - len(ncp.blocks)
    with pytest.raises(ValueError):
        list(noncrossing_products(3, 2))


def test_narayana_values():
    assert narayana(4, 2) == 6
    assert narayana(4, 3) == 6
    assert narayana(5, 3) == 20
    assert sum(narayana(6, k) for k in range(1, 7)) == 132  # Catalan(6)


def test_crossover_examples():
    assert set(crossovers(Composition((2,)))) == {identity(2), from_cycles(2, [(1, 2)])}
    assert set(crossovers(Composition((3,)))) == {
        from_cycles(3, [(1, 2)]), from_cycles(3, [(2, 3)]), from_cycles(3, [(1, 3)])
    }
    assert len(crossovers(Composition((4,)))) == 12
    assert set(crossovers(Composition((2, 2)))) == {
        from_cycles(4, [(1, 2)]), from_cycles(4, [(3, 4)])
    }
    assert set(crossovers_bfs(Composition((1, 1)))) == {identity(2)}
    assert len(crossovers_bfs(Composition((4,)))) == 12


@pytest.mark.parametrize("n", range(1, 7))
def test_crossovers_match_bfs_oracle(n):
    for mu in enumerate_compositions(n):
        assert crossovers(mu) == crossovers_bfs(mu)


@pytest.mark.parametrize("n", range(2, 8))
def test_prop1_closure_and_double_dual(n):
    for mu in enumerate_compositions(n):
        cr = crossovers(mu)
        p_inv = inverse(canonical_permutation(mu))
        for c in cr:
            cd = dual(c, mu)
            assert cd in cr
            # the dual of the dual is c conjugated by p_mu^-1
            assert dual(cd, mu) == conjugate(p_inv, c)


@pytest.mark.parametrize("n", range(2, 8))
def test_lemma_same_type_and_minima(n):
    for mu in enumerate_compositions(n):
        p_mu = canonical_permutation(mu)
        for c in crossovers(mu):
            q = compose(inverse(c), dual(c, mu))
            assert ordered_cycle_type(q) == mu
            assert cycle_minima(q) == cycle_minima(p_mu)


@pytest.mark.parametrize("n", range(2, 7))
def test_rank_split(n):
    e = identity(n)
    for mu in enumerate_compositions(n):
        D = mu.rank
        for c in crossovers(mu):
            assert distance(e, c) in {D // 2, (D + 1) // 2}


def test_dual_examples():
    # the endpoints swap; e is itself a crossover only for rank <= 1
    mu2 = Composition((2,))
    assert dual(identity(2), mu2) == canonical_permutation(mu2)
    mu3 = Composition((3,))
    assert dual(from_cycles(3, [(1, 2)]), mu3) == from_cycles(3, [(2, 3)])
    assert dual(from_cycles(3, [(2, 3)]), mu3) == from_cycles(3, [(1, 3)])
    with pytest.raises(NotACrossoverError):
        dual(from_cycles(3, [(1, 2, 3)]), mu3)


def test_dual_set():
    mu = Composition((2, 2))
    assert dual_set(set(), mu) == set()
    cr = set(crossovers(mu))
    assert dual_set(cr, mu) == cr
    assert dual_set({from_cycles(4, [(1, 2)])}, mu) == {from_cycles(4, [(3, 4)])}


def test_dual_is_bijective_on_crossovers():
    for mu in enumerate_compositions(5):
        cr = crossovers(mu)
        assert len(dual_set(cr, mu)) == len(cr)


def test_crossover_set_serialization():
    mu = Composition((4,))
    cr = crossovers(mu)
    data = cr.to_json_dict()
    assert data["mu"] == [4]
    assert sorted(data["dual_index"]) == list(range(12))
    rebuilt = CrossoverSet.from_json_dict(data)
    assert rebuilt == cr
    assert rebuilt.elements == cr.elements  # order is part of the contract


def test_crossover_index_lookup():
    cr = crossovers(Composition((3,)))
    for i, c in enumerate(cr.elements):
        assert cr.index(c) == i
    assert identity(3) not in cr
