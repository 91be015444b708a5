import itertools
import random

import pytest

from midperm.coding import (
    KeySystem,
    MidpointPair,
    curved_injection,
    decode_key,
    derived_key,
    encode_pair,
    encode_point,
    fibre_set,
    flat_injection,
    injection_to_json,
    select_keys,
)
from midperm.geodesic import NotACrossoverError, crossovers, dual, dual_set, is_midpoint
from midperm.lab import sample_subsets, set_distance
from midperm.perms import (
    Composition,
    canonical_permutation,
    compose,
    enumerate_compositions,
    enumerate_group,
    from_cycles,
    identity,
    inverse,
    ordered_cycle_type,
)


def all_of_type(n, mu):
    return [b for b in enumerate_group(n) if ordered_cycle_type(b) == mu]


def test_encode_point_endpoints():
    # e and p_mu are themselves crossovers when d(a, b) <= 1
    a = from_cycles(4, [(1, 2, 4)])
    b = compose(a, from_cycles(4, [(2, 3)]))
    mu = ordered_cycle_type(compose(inverse(a), b))
    assert encode_point(identity(4), a, b) == a
    assert encode_point(canonical_permutation(mu), a, b) == b


def test_encode_point_trivial_transport():
    e = identity(3)
    p = from_cycles(3, [(1, 2, 3)])
    assert encode_point(from_cycles(3, [(1, 2)]), e, p) == from_cycles(3, [(1, 2)])


def test_encode_point_rejects_wrong_type():
    with pytest.raises(NotACrossoverError):
        encode_point(from_cycles(3, [(1, 2, 3)]), identity(3), from_cycles(3, [(1, 2, 3)]))


def test_encode_pair_examples():
    e = identity(3)
    p = from_cycles(3, [(1, 2, 3)])
    assert encode_pair(identity(3), e, e) == MidpointPair(e, e)
    assert encode_pair(from_cycles(3, [(1, 2)]), e, p) == MidpointPair(
        from_cycles(3, [(1, 2)]), from_cycles(3, [(2, 3)])
    )
    a = from_cycles(3, [(1, 2)])
    b = from_cycles(3, [(1, 3)])
    x, y = encode_pair(from_cycles(3, [(1, 2)]), a, b)
    assert ordered_cycle_type(compose(inverse(x), y)) == Composition((3,))


def test_decode_key_examples():
    mu = Composition((3,))
    assert decode_key(identity(2), Composition((1, 1))) == identity(2)
    assert decode_key(from_cycles(3, [(1, 2)]), mu) == from_cycles(3, [(1, 2)])
    # round-trip for every key and every message pair of type (3)
    for c in crossovers(mu):
        d = decode_key(c, mu)
        for a in enumerate_group(3):
            for b in enumerate_group(3):
                if ordered_cycle_type(compose(inverse(a), b)) != mu:
                    continue
                assert encode_pair(d, *encode_pair(c, a, b)) == (a, b)


@pytest.mark.parametrize("n", range(1, 5))
def test_prop3_roundtrip_exhaustive(n):
    e = identity(n)
    for b in enumerate_group(n):
        mu = ordered_cycle_type(b)
        for c in crossovers(mu):
            d = decode_key(c, mu)
            assert encode_pair(d, *encode_pair(c, e, b)) == (e, b)


@pytest.mark.parametrize("n", range(2, 7))
def test_decode_is_involution(n):
    for mu in enumerate_compositions(n):
        for c in crossovers(mu):
            assert decode_key(decode_key(c, mu), mu) == c


@pytest.mark.parametrize("n", range(2, 6))
def test_derived_key_identity(n):
    # the derived key's decryption key is the dual of the original's
    for mu in enumerate_compositions(n):
        for c in crossovers(mu):
            assert decode_key(derived_key(c, mu), mu) == dual(decode_key(c, mu), mu)


def test_derived_key_small_example():
    mu = Composition((2,))
    c = identity(2)
    assert decode_key(c, mu) == identity(2)
    expect = decode_key(dual(decode_key(c, mu), mu), mu)
    assert derived_key(c, mu) == expect


@pytest.mark.parametrize("n", [4, 5])
def test_prop2_duality_of_midpoints(n):
    e = identity(n)
    rng = random.Random(99)
    group = list(enumerate_group(n))
    for b in group:
        mu = ordered_cycle_type(b)
        for c in crossovers(mu):
            x, y = encode_pair(c, e, b)
            assert is_midpoint(e, x, y)
            assert is_midpoint(b, x, y)
    for _ in range(200):
        g, b = rng.choice(group), rng.choice(group)
        mu = ordered_cycle_type(b)
        cr = crossovers(mu)
        c = cr.elements[rng.randrange(len(cr))]
        a2, b2 = g, compose(g, b)
        x, y = encode_pair(c, a2, b2)
        assert is_midpoint(a2, x, y) and is_midpoint(b2, x, y)


def test_translation_equivariance():
    rng = random.Random(5)
    group = list(enumerate_group(5))
    for _ in range(300):
        a, b, g = rng.choice(group), rng.choice(group), rng.choice(group)
        mu = ordered_cycle_type(compose(inverse(a), b))
        cr = crossovers(mu)
        c = cr.elements[rng.randrange(len(cr))]
        x, y = encode_pair(c, a, b)
        gx, gy = encode_pair(c, compose(g, a), compose(g, b))
        assert (gx, gy) == (compose(g, x), compose(g, y))


def test_select_keys_first_policy():
    ks = select_keys([Composition((3,))])
    assert ks.policy == "first"
    # position 0 of the documented enumeration order of Cr((3))
    assert ks.key(Composition((3,))) == crossovers(Composition((3,))).elements[0]
    assert ks.key(Composition((3,))) == from_cycles(3, [(1, 2)])


def test_select_keys_seeded_reproducible():
    mus = [Composition((4,)), Composition((2, 2)), Composition((1, 3))]
    ks1 = select_keys(mus, policy="seeded", seed=11)
    ks2 = select_keys(mus, policy="seeded", seed=11)
    assert ks1.classes == ks2.classes
    ks3 = select_keys(mus, policy="seeded", seed=12)
    assert any(k1 != k3 for k1, k3 in zip(ks1.classes, ks3.classes)) or len(mus) < 2
    with pytest.raises(ValueError):
        select_keys(mus, policy="seeded")
    with pytest.raises(ValueError):
        select_keys(mus, policy="whatever")


def test_key_system_validation_and_json():
    mu = Composition((3,))
    with pytest.raises(NotACrossoverError):
        KeySystem(((mu, from_cycles(3, [(1, 2, 3)])),), "first")
    with pytest.raises(ValueError):
        KeySystem(((mu, from_cycles(3, [(1, 2)])), (mu, from_cycles(3, [(1, 3)]))), "first")
    ks = select_keys([mu], policy="seeded", seed=3)
    data = ks.to_json_dict()
    assert data["policy"] == "seeded" and data["seed"] == 3
    assert data["classes"][0]["mu"] == [3]


def test_flat_injection_examples():
    e = identity(3)
    assert flat_injection({e}, {e}) == {(e, e): MidpointPair(e, e)}
    p = from_cycles(3, [(1, 2, 3)])
    mapping = flat_injection({e}, {p})
    (pair,) = mapping.values()
    cr = crossovers(Composition((3,)))
    assert pair.x in cr and pair.y in cr
    with pytest.raises(ValueError):
        flat_injection(set(), {e})


@pytest.mark.parametrize("n", [4, 5])
def test_flat_injection_injective_random(n):
    for t in range(40):
        rng = random.Random(t)
        A, B = sample_subsets(n, rng.randint(1, 8), rng.randint(1, 8), False, 500 + t)
        mapping = flat_injection(A, B)
        assert len(set(mapping.values())) == len(A) * len(B)
        for (a, b), pair in mapping.items():
            assert is_midpoint(pair.x, a, b) and is_midpoint(pair.y, a, b)


def test_curved_injection_requires_disjoint():
    e = identity(3)
    with pytest.raises(ValueError):
        curved_injection({e}, {e})


def test_curved_injection_small():
    e = identity(3)
    p = from_cycles(3, [(1, 2, 3)])
    mapping = curved_injection({e}, {p})
    assert len(mapping) == 2
    assert len(set(mapping.values())) == 2


@pytest.mark.parametrize("n", [4, 5])
def test_curved_injection_injective_random(n):
    for t in range(40):
        rng = random.Random(1000 + t)
        A, B = sample_subsets(n, rng.randint(1, 8), rng.randint(1, 8), True, 900 + t)
        mapping = curved_injection(A, B)
        assert len(set(mapping.values())) == 2 * len(A) * len(B)


def test_no_cross_copy_collision_exhaustive_s3():
    # the disjointness argument: copy-0 and copy-1 images never coincide
    group = list(enumerate_group(3))
    for a, b in itertools.permutations(group, 2):
        mapping = curved_injection({a}, {b})
        assert mapping[(a, b, 0)] != mapping[(a, b, 1)]
    rng = random.Random(0)
    for t in range(30):
        A, B = sample_subsets(3, 2, 2, True, t)
        mapping = curved_injection(A, B)
        copy0 = {v for k, v in mapping.items() if k[2] == 0}
        copy1 = {v for k, v in mapping.items() if k[2] == 1}
        assert not copy0 & copy1


def test_fibre_set_examples():
    # only the trivial key re-encodes (e, p_mu) to itself
    mu = Composition((1, 2))
    e = identity(3)
    p = canonical_permutation(mu)
    assert fibre_set(e, p, {e}, {p}) == {e}
    # a target pair no key can reach from this A x B
    mu3 = Composition((3,))
    p3 = canonical_permutation(mu3)
    assert fibre_set(p3, compose(p3, p3), {e}, {p3}) == set()


def test_fibre_set_degenerate():
    e = identity(4)
    assert fibre_set(e, e, {e}, {e}) == {e}
    other = from_cycles(4, [(1, 2)])
    assert fibre_set(e, e, {other}, {other}) == set()


@pytest.mark.parametrize("n", [4, 5])
def test_fibre_separation_bound(n):
    for t in range(25):
        rng = random.Random(300 + t)
        A, B = sample_subsets(n, rng.randint(1, 6), rng.randint(1, 6), True, 300 + t)
        dab = set_distance(A, B)
        for pair in flat_injection(A, B).values():
            D = fibre_set(pair.x, pair.y, A, B)
            assert D
            mu = ordered_cycle_type(compose(inverse(pair.x), pair.y))
            assert set_distance(D, dual_set(D, mu)) >= dab


def test_injection_audit_serialization():
    e = identity(3)
    p = from_cycles(3, [(1, 2, 3)])
    records = injection_to_json(flat_injection({e}, {p}))
    assert len(records) == 1
    assert records[0]["input"][0] == e.to_json_dict()
    assert len(records[0]["output"]) == 2
    curved = injection_to_json(curved_injection({e}, {p}))
    assert [r["input"][2] for r in curved] == [0, 1]
