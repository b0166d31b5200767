"""Smoke tests for the python bindings."""

import random

import pytest

import majscope


RUNNING = [1, 3, 2, 3, 3, 1, 1]


def test_running_example():
    enc = majscope.build(RUNNING, (1, 2))
    assert len(enc) == 7
    assert enc.tau == (1, 2)
    assert enc.pair_count >= 2

    hits = enc.query(5, 7, (1, 2))
    assert len(hits) == 1
    assert hits[0]["count"] == 2
    assert hits[0]["positions"] == [6, 7]

    assert enc.query(1, 7, (1, 2)) == []


def test_matches_oracle_on_random_arrays():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randrange(1, 120)
        a = [rng.randrange(1, 6) for _ in range(n)]
        enc = majscope.build(a, (1, 3), accel=True)
        for _ in range(40):
            i = rng.randrange(1, n + 1)
            j = rng.randrange(i, n + 1)
            truth = majscope.oracle_query(a, i, j, (1, 2))
            for query in (enc.query, enc.query_fast):
                hits = query(i, j, (1, 2))
                got = sorted((a[h["positions"][0] - 1], h["count"]) for h in hits)
                want = sorted((m["value"], m["count"]) for m in truth)
                assert got == want


def test_serialize_round_trip():
    enc = majscope.build(RUNNING, (1, 2), accel=True)
    data = enc.serialize()
    back = majscope.load(data)
    assert back.has_accel
    assert back.query(5, 7, (1, 2)) == enc.query(5, 7, (1, 2))
    assert back.query_fast(2, 5, (1, 2)) == enc.query_fast(2, 5, (1, 2))


def test_query_validation():
    enc = majscope.build(RUNNING, (1, 2))
    with pytest.raises(IndexError):
        enc.query(0, 3, (1, 2))
    with pytest.raises(ValueError):
        enc.query(1, 3, (1, 3))  # below the build threshold


def test_permutation_recovery():
    perm = [1, 5, 3, 9, 2, 4, 6, 8, 7]
    code = majscope.encode_perms([perm])
    assert code["k"] == 3
    assert code["tau"] == (1, 8)
    enc = majscope.build(code["array"], code["tau"])

    def counter(lo, hi):
        return len(enc.query(lo, hi, code["tau"]))

    assert majscope.decode_perms(code["k"], code["m"], counter) == [perm]
