"""Seeded parametric network families and the chord-relocation procedure."""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import DomainError, ResourceBudgetError
from .graphs import (
    Graph,
    bfs_distances,
    is_connected,
    longest_chordless_cycle,
    smallest_cycle,
)
from .spectra import LaplacianKind, algebraic_connectivity, spectrum

# ---------------------------------------------------------------------------
# deterministic standard graphs
# ---------------------------------------------------------------------------

def clique(n: int) -> Graph:
    if n < 1:
        raise DomainError("clique needs n >= 1")
    return Graph.from_edges(n, combinations(range(n), 2))


def cycle(n: int) -> Graph:
    if n < 3:
        raise DomainError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 2:
        raise DomainError("path needs n >= 2")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(n: int) -> Graph:
    """One hub (node 0) with n-1 leaves."""
    if n < 2:
        raise DomainError("star needs n >= 2")
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def ring_lattice(n: int, k: int) -> Graph:
    """Circular lattice: every node tied to its k/2 nearest on each side."""
    if k % 2 != 0 or k < 2:
        raise DomainError("ring_lattice needs even k >= 2")
    if k >= n:
        raise DomainError("ring_lattice needs k < n")
    edges = set()
    for i in range(n):
        for j in range(1, k // 2 + 1):
            edges.add((min(i, (i + j) % n), max(i, (i + j) % n)))
    return Graph.from_edges(n, sorted(edges))


def square_lattice(side: int) -> Graph:
    """side x side grid with 2*side*(side-1) edges."""
    if side < 1:
        raise DomainError("square_lattice needs side >= 1")
    def node(r, c):
        return r * side + c
    edges = []
    for r in range(side):
        for c in range(side):
            if c + 1 < side:
                edges.append((node(r, c), node(r, c + 1)))
            if r + 1 < side:
                edges.append((node(r, c), node(r + 1, c)))
    return Graph.from_edges(side * side, edges)


def standard_graph(spec_str: str) -> Graph:
    """Parse 'clique:24', 'ring_lattice:24:4', 'square_lattice:5', ..."""
    parts = spec_str.split(":")
    name, args = parts[0], [int(x) for x in parts[1:]]
    table = {
        "clique": clique,
        "cycle": cycle,
        "path": path,
        "star": star,
        "ring_lattice": ring_lattice,
        "square_lattice": square_lattice,
        "clique_chain": clique_chain,
        "two_cliques_bridged": lambda n_each, k: two_cliques_bridged(n_each, k, seed=0),
        "chord_midway": chord_midway,
    }
    if name not in table:
        raise DomainError(f"unknown generator {name!r}")
    try:
        return table[name](*args)
    except TypeError as exc:
        raise DomainError(f"bad arguments for {name}: {exc}") from None


# ---------------------------------------------------------------------------
# the clustered coloring-experiment family
# ---------------------------------------------------------------------------

def clique_chain(
    clusters: int = 6,
    clique_size: int = 6,
    closure: str = "chain",
    ports: str = "shared",
) -> Graph:
    """Dense clusters joined by single ties, one per consecutive cluster pair.

    The default (chain of six 6-cliques, one shared port node per cluster)
    reproduces the deterministic p = 0 reference row exactly: mean distance
    25/7, row-normalized lambda2 0.0083, vertex connectivity 1.
    """
    if clusters < 2 or clique_size < 2:
        raise DomainError("clique_chain needs clusters >= 2 and clique_size >= 2")
    if ports == "distinct" and clique_size < 2:
        raise DomainError("distinct ports need clique_size >= 2")
    edges = []
    for c in range(clusters):
        base = c * clique_size
        edges.extend((base + i, base + j) for i, j in combinations(range(clique_size), 2))
    links = clusters if closure == "ring" else clusters - 1
    if closure not in ("chain", "ring"):
        raise DomainError(f"unknown closure {closure!r}")
    for c in range(links):
        nxt = (c + 1) % clusters
        if ports == "shared":
            edges.append((c * clique_size, nxt * clique_size))
        elif ports == "distinct":
            edges.append((c * clique_size + 1, nxt * clique_size))
        else:
            raise DomainError(f"unknown ports mode {ports!r}")
    return Graph.from_edges(clusters * clique_size, edges)


def clique_chain_groups(clusters: int = 6, clique_size: int = 6):
    return tuple(tuple(range(c * clique_size, (c + 1) * clique_size)) for c in range(clusters))


# ---------------------------------------------------------------------------
# rewiring
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RewireConfig:
    """Tie-relaying parameters.

    p is the per-endpoint relaying probability: each end of an eligible tie
    is independently moved to a uniformly random new node (the other end
    stays anchored), never duplicating an existing tie. With node groups
    given, only within-group ties are eligible and relocated ends land in a
    different group. mode='pair' instead reselects whole ties with
    probability p and re-attaches them to uniformly random non-adjacent
    pairs.
    """

    p: float
    constraint: str = "keep_connected"  # or "keep_clusters_linked"
    max_retries: int = 200
    mode: str = "endpoint"  # or "pair"

    def __post_init__(self):
        if not (0.0 <= self.p <= 1.0):
            raise DomainError(f"rewiring probability must be in [0,1], got {self.p}")
        if self.constraint not in ("keep_connected", "keep_clusters_linked"):
            raise DomainError(f"unknown constraint {self.constraint!r}")
        if self.mode not in ("endpoint", "pair"):
            raise DomainError(f"unknown rewire mode {self.mode!r}")


def _group_of(groups):
    if groups is None:
        return None
    gmap = {}
    for gi, members in enumerate(groups):
        for v in members:
            gmap[int(v)] = gi
    return gmap


def rewire(g: Graph, cfg: RewireConfig, seed: int, groups=None) -> Graph:
    """Randomly relay ties; the result keeps the edge count bit-exactly.

    Constraint violations (disconnection) reject the whole attempt and
    resample, up to cfg.max_retries.
    """
    if not is_connected(g):
        raise DomainError("rewire expects a connected input graph")
    rng = np.random.default_rng(seed)
    gmap = _group_of(groups)
    all_edges = [(u, v) for u, v, _ in g.edges]
    if gmap is None:
        eligible = list(all_edges)
    else:
        eligible = [(u, v) for u, v in all_edges if gmap[u] == gmap[v]]
    kept = [e for e in all_edges if e not in set(eligible)]

    for _attempt in range(cfg.max_retries):
        edges = set(all_edges)
        if cfg.mode == "endpoint":
            for e in eligible:
                if e not in edges:
                    continue
                cur = e
                for side in (0, 1):
                    if rng.random() >= cfg.p:
                        continue
                    anchor = cur[1 - side]
                    edges.discard((min(cur), max(cur)))
                    while True:
                        w = int(rng.integers(g.n))
                        if w == anchor:
                            continue
                        if gmap is not None and gmap[w] == gmap[anchor]:
                            continue
                        cand = (min(anchor, w), max(anchor, w))
                        if cand in edges:
                            continue
                        break
                    edges.add(cand)
                    cur = (anchor, w) if side == 1 else (w, anchor)
        else:
            for e in eligible:
                if rng.random() >= cfg.p:
                    continue
                edges.discard(e)
                while True:
                    a = int(rng.integers(g.n))
                    b = int(rng.integers(g.n))
                    if a == b:
                        continue
                    if gmap is not None and gmap[a] == gmap[b]:
                        continue
                    cand = (min(a, b), max(a, b))
                    if cand in edges:
                        continue
                    break
                edges.add(cand)
        out = Graph.from_edges(g.n, sorted(edges))
        assert out.m == g.m, "rewiring must preserve the edge count"
        if is_connected(out):
            return out
    raise ResourceBudgetError(f"rewire exhausted {cfg.max_retries} attempts (p={cfg.p})")


# ---------------------------------------------------------------------------
# random families with fixed edge count
# ---------------------------------------------------------------------------

_CONNECT_ATTEMPTS = 1000


def _pairs_index(n: int):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def random_poisson(n: int, dens: float, seed: int) -> Graph:
    """Uniform connected graph with exactly m = round(density * n(n-1)/2) edges."""
    pairs = _pairs_index(n)
    m = round(dens * len(pairs))
    if m < n - 1:
        raise DomainError(f"density {dens} cannot produce a connected graph on {n} nodes")
    rng = np.random.default_rng(seed)
    for _ in range(_CONNECT_ATTEMPTS):
        idx = rng.choice(len(pairs), size=m, replace=False)
        g = Graph.from_edges(n, [pairs[i] for i in idx])
        if is_connected(g):
            return g
    raise ResourceBudgetError(f"no connected sample in {_CONNECT_ATTEMPTS} draws")


def random_skewed(
    n: int,
    dens: float,
    seed: int,
    exponent: float = 2.5,
    min_expected_degree: float = 1.0,
) -> Graph:
    """Connected expected-degree graph with power-law weights and fixed edge count.

    Node weights follow a Pareto law with the given exponent; m distinct
    pairs are drawn with probability proportional to w_i * w_j.
    """
    pairs = _pairs_index(n)
    m = round(dens * len(pairs))
    if m < n - 1:
        raise DomainError(f"density {dens} cannot produce a connected graph on {n} nodes")
    rng = np.random.default_rng(seed)
    for _ in range(_CONNECT_ATTEMPTS):
        u = rng.random(n)
        w = min_expected_degree * (1.0 - u) ** (-1.0 / (exponent - 1.0))
        pw = np.array([w[i] * w[j] for i, j in pairs])
        pw /= pw.sum()
        idx = rng.choice(len(pairs), size=m, replace=False, p=pw)
        g = Graph.from_edges(n, [pairs[i] for i in idx])
        if is_connected(g):
            return g
    raise ResourceBudgetError(f"no connected sample in {_CONNECT_ATTEMPTS} draws")


# ---------------------------------------------------------------------------
# two bridged cliques (redundancy experiment)
# ---------------------------------------------------------------------------

def two_cliques_bridged(n_each: int, k: int, seed: int = 0) -> Graph:
    """Two cliques joined by k node-independent bridges at constant edge count.

    Bridge i ties node i of the left clique to node i of the right one; for
    every bridge added, one within-clique tie among non-bridge nodes is
    removed (alternating cliques, chosen by the seed), so density stays
    fixed and the bridges alone govern the vertex connectivity.
    """
    if n_each < 2:
        raise DomainError("two_cliques_bridged needs n_each >= 2")
    if not (0 <= k <= n_each):
        raise DomainError(f"bridge count must be in [0, {n_each}], got {k}")
    per_side = [(k + 1) // 2, k // 2]
    free = n_each - k  # nodes untouched by bridges
    if any(cnt > free * (free - 1) // 2 for cnt in per_side):
        raise DomainError(f"k = {k} leaves too few non-bridge ties to remove at n_each = {n_each}")
    edges = set()
    for base in (0, n_each):
        edges.update((base + i, base + j) for i, j in combinations(range(n_each), 2))
    rng = np.random.default_rng(seed)
    for b in range(k):
        edges.add((b, n_each + b))
        base = 0 if b % 2 == 0 else n_each
        pool = sorted(
            (base + i, base + j)
            for i, j in combinations(range(k, n_each), 2)
            if (base + i, base + j) in edges
        )
        drop = pool[int(rng.integers(len(pool)))]
        edges.discard(drop)
    return Graph.from_edges(2 * n_each, sorted(edges))


# ---------------------------------------------------------------------------
# chords
# ---------------------------------------------------------------------------

def chord_midway(cycle_len: int) -> Graph:
    """A cycle cross-connected midway (span floor(l/2) when l is odd)."""
    if cycle_len < 6:
        raise DomainError("chord_midway needs cycle length >= 6")
    g = cycle(cycle_len)
    return g.with_edges_added([(0, cycle_len // 2)])


def _total_distance(adj, n):
    """Sum of all-pairs hop distances (ordered); -1 if disconnected."""
    from collections import deque

    total = 0
    for s in range(n):
        dist = [-1] * n
        dist[s] = 0
        q = deque([s])
        seen = 1
        while q:
            u = q.popleft()
            for v in adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    seen += 1
                    total += dist[v]
                    q.append(v)
        if seen != n:
            return -1
    return total


def _adj_sets(g: Graph):
    return {u: set(g.neighbors(u)) for u in range(g.n)}


@dataclass(frozen=True)
class RelocationPlan:
    """One tie relayed from the smallest cycle onto the longest chordless cycle."""

    removed: tuple
    cycle_nodes: tuple
    midway_added: tuple
    awkward_added: tuple
    total_distance_before: int
    total_distance_midway: int
    total_distance_awkward: int
    fiedler_loss: float          # lambda2 drop realized by the removal
    midway_gain_first_order: float
    awkward_gain_first_order: float
    gap_after_removal: float


def _distance_with_edge(g: Graph, extra):
    adj = {u: list(g.neighbors(u)) for u in range(g.n)}
    a, b = extra
    adj[a].append(b)
    adj[b].append(a)
    return _total_distance(adj, g.n)


def relocation_plan(g: Graph, min_cycle_len: int = 6) -> RelocationPlan:
    """Choose the tie to remove and both candidate re-insertions.

    Removal: the girth-cycle tie with the smallest squared difference of the
    input graph's Fiedler components (the most redundant tie for the slow
    mode; ties broken lexicographically). Midway insertion: the chord
    halving the longest chordless cycle that minimizes total distance (ties:
    larger lambda2, then smallest pair). Awkward insertion: the non-adjacent
    pair maximizing total distance (ties: smaller lambda2, then smallest
    pair). The removed position itself is never re-used.
    """
    girth = smallest_cycle(g)
    if girth is None:
        raise DomainError("relocate_chord needs a cycle to borrow a tie from")
    spec = spectrum(g, LaplacianKind.BINARY, weighted=False)
    v = spec.eigenvectors[:, 1]
    cyc = girth.nodes
    cyc_edges = sorted(
        {tuple(sorted((cyc[i], cyc[(i + 1) % len(cyc)]))) for i in range(len(cyc))}
    )
    removed = min(cyc_edges, key=lambda e: ((v[e[0]] - v[e[1]]) ** 2, e))
    h = g.with_edges_removed([removed])
    if not is_connected(h):
        raise DomainError("tie removal disconnected the graph")
    spec_h = spectrum(h, LaplacianKind.BINARY, weighted=False)
    vh = spec_h.eigenvectors[:, 1]
    loss = spec.lambda2 - spec_h.lambda2
    gap_h = float(spec_h.eigenvalues[2] - spec_h.eigenvalues[1])
    target = longest_chordless_cycle(h, min_len=min_cycle_len)
    if target is None:
        raise DomainError(f"no chordless cycle of length >= {min_cycle_len} after removal")
    nodes = target.nodes
    l = len(nodes)
    half = l // 2
    adj_h = _adj_sets(h)

    midway = []
    for i in range(l):
        a, b = nodes[i], nodes[(i + half) % l]
        pair = (min(a, b), max(a, b))
        if a == b or b in adj_h[a] or pair == removed:
            continue
        midway.append(pair)
    if not midway:
        raise DomainError("no midway chord position is available")
    mid_scored = sorted(
        {(pair, _distance_with_edge(h, pair)) for pair in midway}, key=lambda t: (t[1], t[0])
    )
    best_total = mid_scored[0][1]
    tied = [pair for pair, tot in mid_scored if tot == best_total]
    if len(tied) > 1:
        lam = {
            pair: algebraic_connectivity(h.with_edges_added([pair]), LaplacianKind.BINARY, weighted=False)
            for pair in tied
        }
        top = max(lam.values())
        tied = [pair for pair in tied if lam[pair] == top]
    midway_pick = min(tied)

    worst_pick, worst_total = None, -1
    ties_w = []
    for a in range(g.n):
        for b in range(a + 1, g.n):
            if b in adj_h[a] or (a, b) == removed:
                continue
            tot = _distance_with_edge(h, (a, b))
            if tot > worst_total:
                worst_total = tot
                ties_w = [(a, b)]
            elif tot == worst_total:
                ties_w.append((a, b))
    if worst_total < 0 or not ties_w:
        raise DomainError("no awkward placement is available")
    if len(ties_w) > 1:
        lam = {
            pair: algebraic_connectivity(h.with_edges_added([pair]), LaplacianKind.BINARY, weighted=False)
            for pair in ties_w
        }
        bottom = min(lam.values())
        ties_w = [pair for pair in ties_w if lam[pair] == bottom]
    worst_pick = min(ties_w)

    gain_mid = float((vh[midway_pick[0]] - vh[midway_pick[1]]) ** 2)
    gain_awk = float((vh[worst_pick[0]] - vh[worst_pick[1]]) ** 2)
    total_before = _total_distance({u: sorted(g.neighbors(u)) for u in range(g.n)}, g.n)
    return RelocationPlan(
        removed=removed,
        cycle_nodes=nodes,
        midway_added=midway_pick,
        awkward_added=worst_pick,
        total_distance_before=total_before,
        total_distance_midway=_distance_with_edge(h, midway_pick),
        total_distance_awkward=worst_total,
        fiedler_loss=float(loss),
        midway_gain_first_order=gain_mid,
        awkward_gain_first_order=gain_awk,
        gap_after_removal=gap_h,
    )


def relocate_chord(g: Graph, placement: str = "midway", min_cycle_len: int = 6):
    """Relay one smallest-cycle tie onto the longest chordless cycle.

    placement 'midway' inserts where total distance is minimized (the
    careful placement); 'awkward' inserts at the distance-maximizing
    position instead. Returns (new_graph, plan); edge count is unchanged.
    """
    plan = relocation_plan(g, min_cycle_len=min_cycle_len)
    h = g.with_edges_removed([plan.removed])
    if placement == "midway":
        out = h.with_edges_added([plan.midway_added])
    elif placement == "awkward":
        out = h.with_edges_added([plan.awkward_added])
    else:
        raise DomainError(f"unknown placement {placement!r}")
    assert out.m == g.m, "relocation must preserve the edge count"
    return out, plan


# ---------------------------------------------------------------------------
# the seeded qualification suite for the relocation dichotomy
# ---------------------------------------------------------------------------

#: structural qualification constants (frozen suite definition)
SUITE_N_RANGE = (12, 18)
SUITE_EXTRA_EDGES = (3, 5)
SUITE_MIN_GAP = 0.02
SUITE_MAX_LAMBDA2 = 0.4
SUITE_MIN_CYCLE = 8
SUITE_GAIN_FACTOR = 6.0
SUITE_LOSS_FACTOR = 0.5
SUITE_MIN_LOSS = 1e-9


def _qualifies(g: Graph) -> bool:
    """Structural preconditions under which the relocation dichotomy is tested.

    All checks are on the input side of each step (spectra of the original
    and tie-removed graph, first-order Fiedler spans, distance premises);
    the lambda2 of the relocated outputs is never consulted.
    """
    if not is_connected(g):
        return False
    girth = smallest_cycle(g)
    if girth is None or girth.length != 3:
        return False
    spec = spectrum(g, LaplacianKind.BINARY, weighted=False)
    lam = spec.eigenvalues
    if lam[2] - lam[1] < SUITE_MIN_GAP or lam[1] > SUITE_MAX_LAMBDA2:
        return False
    try:
        plan = relocation_plan(g, min_cycle_len=SUITE_MIN_CYCLE)
    except DomainError:
        return False
    if len(plan.cycle_nodes) < SUITE_MIN_CYCLE:
        return False
    if plan.fiedler_loss < SUITE_MIN_LOSS or plan.gap_after_removal < SUITE_MIN_GAP:
        return False
    if plan.total_distance_midway >= plan.total_distance_before:
        return False
    if plan.total_distance_awkward <= plan.total_distance_before:
        return False
    if plan.midway_gain_first_order < SUITE_GAIN_FACTOR * plan.fiedler_loss:
        return False
    if plan.awkward_gain_first_order > SUITE_LOSS_FACTOR * plan.fiedler_loss:
        return False
    return True


def relocation_suite(count: int = 50, seed: int = 20240901) -> list:
    """Seeded sparse graphs meeting the relocation preconditions."""
    rng = np.random.default_rng(seed)
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 1000 * count:
            raise ResourceBudgetError("relocation_suite rejection sampling exhausted")
        n = int(rng.integers(SUITE_N_RANGE[0], SUITE_N_RANGE[1] + 1))
        m = n + int(rng.integers(SUITE_EXTRA_EDGES[0], SUITE_EXTRA_EDGES[1] + 1))
        pairs = _pairs_index(n)
        idx = rng.choice(len(pairs), size=m, replace=False)
        g = Graph.from_edges(n, [pairs[i] for i in idx])
        if _qualifies(g):
            out.append(g)
    return out
