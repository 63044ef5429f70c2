'''
Exact maximum clique by branch and bound (graphs here have at most a few
dozen vertices)
'''


def max_clique(n, adjacent):
    '''
    Maximum clique of the graph on vertices 0..n-1; `adjacent(u, v)` is the
    edge predicate. Vertices are explored in increasing order and only a
    strictly larger clique replaces the incumbent, so the result is the
    lexicographically first maximum clique.
    '''

    adj = [set() for _ in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            if adjacent(u, v):
                adj[u].add(v)
                adj[v].add(u)

    best = []

    def expand(current, candidates):
        nonlocal best

        if not candidates:
            if len(current) > len(best):
                best = list(current)
            return

        # Prune: cannot beat the incumbent
        if len(current) + len(candidates) <= len(best):
            return

        for k, v in enumerate(candidates):
            if len(current) + len(candidates) - k <= len(best):
                return
            current.append(v)
            expand(current, [u for u in candidates[k + 1:] if u in adj[v]])
            current.pop()

    expand([], list(range(n)))
    return best


def brute_force_clique(n, adjacent):
    '''
    Exhaustive reference (exponential, for small oracles)
    '''

    import itertools

    for size in range(n, 0, -1):
        for combo in itertools.combinations(range(n), size):
            if all(adjacent(u, v) for u, v in itertools.combinations(combo, 2)):
                return list(combo)
    return []
