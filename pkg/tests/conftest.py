"""Shared independent oracles: these deliberately avoid the package's own
algorithms (Floyd-Warshall vs BFS, subset/matrix-based cuts vs node-splitting
flow, permutation enumeration vs DFS) so each check has two routes.
"""

from itertools import combinations, permutations

import numpy as np
import pytest

from cohesion_lab.graphs import Graph


def random_graph(rng, n, m) -> Graph:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    idx = rng.choice(len(pairs), size=m, replace=False)
    return Graph.from_edges(n, [pairs[i] for i in idx])


def random_connected_graph(rng, n, m) -> Graph:
    from cohesion_lab.graphs import is_connected

    for _ in range(500):
        g = random_graph(rng, n, m)
        if is_connected(g):
            return g
    raise RuntimeError("could not sample a connected graph")


def floyd_warshall(g: Graph) -> np.ndarray:
    inf = float("inf")
    d = np.full((g.n, g.n), inf)
    np.fill_diagonal(d, 0.0)
    for u, v, _w in g.edges:
        d[u, v] = d[v, u] = 1.0
    for k in range(g.n):
        d = np.minimum(d, d[:, k, None] + d[None, k, :])
    return d


def _connected_after_removal(g: Graph, removed) -> bool:
    removed = set(removed)
    alive = [u for u in range(g.n) if u not in removed]
    if len(alive) <= 1:
        return True
    adj = {u: [v for v in g.neighbors(u) if v not in removed] for u in alive}
    seen = {alive[0]}
    stack = [alive[0]]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(alive)


def brute_vertex_connectivity(g: Graph) -> int:
    """Smallest node set whose removal disconnects (exhaustive; small n only)."""
    if g.is_complete():
        return g.n - 1
    for k in range(g.n - 1):
        for removed in combinations(range(g.n), k):
            if not _connected_after_removal(g, removed):
                return k
    return g.n - 1


def matrix_maxflow_vertex_connectivity(g: Graph) -> int:
    """Independent local-connectivity oracle: dense-matrix Ford-Fulkerson with
    DFS augmenting paths on the node-split digraph, minimized over all
    non-adjacent pairs."""
    if g.is_complete():
        return g.n - 1
    n2 = 2 * g.n
    base = np.zeros((n2, n2))
    for v in range(g.n):
        base[2 * v, 2 * v + 1] = 1.0
    for u, v, _w in g.edges:
        base[2 * u + 1, 2 * v] = g.n
        base[2 * v + 1, 2 * u] = g.n

    def local(s, t):
        cap = base.copy()
        cap[2 * s, 2 * s + 1] = g.n
        cap[2 * t, 2 * t + 1] = g.n
        source, sink = 2 * s + 1, 2 * t
        flow = 0
        while True:
            parent = {source: None}
            stack = [source]
            while stack and sink not in parent:
                u = stack.pop()
                for v in range(n2):
                    if v not in parent and cap[u, v] > 0:
                        parent[v] = u
                        stack.append(v)
            if sink not in parent:
                return flow
            v = sink
            while parent[v] is not None:
                cap[parent[v], v] -= 1
                cap[v, parent[v]] += 1
                v = parent[v]
            flow += 1

    adj = {u: set(g.neighbors(u)) for u in range(g.n)}
    best = g.n - 1
    for s in range(g.n):
        for t in range(s + 1, g.n):
            if t not in adj[s]:
                best = min(best, local(s, t))
    return best


def brute_chordless_cycles(g: Graph) -> set:
    """All chordless cycles as canonical node tuples (permutation search)."""
    adj = {u: set(g.neighbors(u)) for u in range(g.n)}
    out = set()
    for size in range(3, g.n + 1):
        for nodes in combinations(range(g.n), size):
            for perm in permutations(nodes[1:]):
                seq = (nodes[0],) + perm
                if not all(seq[(i + 1) % size] in adj[seq[i]] for i in range(size)):
                    continue
                chord = False
                for i in range(size):
                    for j in range(i + 2, size):
                        if i == 0 and j == size - 1:
                            continue
                        if seq[j] in adj[seq[i]]:
                            chord = True
                if not chord:
                    k = seq.index(min(seq))
                    fwd = tuple(seq[(k + t) % size] for t in range(size))
                    bwd = tuple(seq[(k - t) % size] for t in range(size))
                    out.add(min(fwd, bwd))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
