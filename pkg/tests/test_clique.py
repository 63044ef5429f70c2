import random

import pytest

from nlcert.clique import brute_force_clique, max_clique


def edges_of(pairs):
    E = set()
    for u, v in pairs:
        E.add((u, v))
        E.add((v, u))
    return lambda u, v: (u, v) in E


def is_clique(vertices, adjacent):
    return all(adjacent(u, v) for u in vertices for v in vertices if u < v)


testdata_small = [
    (0, [], []),
    (1, [], [0]),
    (3, [], [0]),
    (4, [(0, 1), (1, 2), (2, 3), (1, 3)], [1, 2, 3]),
    (5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (2, 4)], [0, 1, 2]),
]

@pytest.mark.parametrize(('n', 'pairs', 'expected'), testdata_small)
def test_small_graphs(n, pairs, expected):
    assert max_clique(n, edges_of(pairs)) == expected


def test_complete_graph():
    assert max_clique(12, lambda u, v: True) == list(range(12))


@pytest.mark.parametrize('seed', range(100))
def test_against_brute_force(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 15)
    p = rng.choice([0.2, 0.5, 0.8])
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < p]
    adjacent = edges_of(pairs)

    best = max_clique(n, adjacent)
    ref = brute_force_clique(n, adjacent)
    assert is_clique(best, adjacent)
    assert len(best) == len(ref)
    # Both report the lexicographically first maximum clique
    assert best == ref
