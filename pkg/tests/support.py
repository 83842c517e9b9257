"""Shared helpers for the test suite: deterministic generators and the
exhaustive graph catalogs the equivalence suites sweep over."""

from __future__ import annotations

import itertools
import random

from nodebalance import (
    Bipartition,
    Graph,
    Hypergraph,
    equate_backtracking,
    is_uniform,
)
from nodebalance.equate import admissible_parities

# filled by the acceptance tests, printed by the conftest summary hook
ACCEPTANCE: list[tuple] = []


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, list(itertools.combinations(range(n), 2)))


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


C6_PUZZLE_W = (1, 2, 3, 4, 5, 6)


def rand_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph(n, edges)


def rand_connected(rng: random.Random, n: int, p: float = 0.0) -> Graph:
    edges = {tuple(sorted((v, rng.randrange(v)))) for v in range(1, n)}
    for e in itertools.combinations(range(n), 2):
        if rng.random() < p:
            edges.add(e)
    return Graph(n, sorted(edges))


def rand_hypergraph(rng: random.Random, n: int, m: int, kmax: int = 4) -> Hypergraph:
    edges = []
    for _ in range(m):
        k = rng.randint(2, min(kmax, n))
        edges.append(tuple(sorted(rng.sample(range(n), k))))
    return Hypergraph(n, edges)


def atlas_connected(max_n: int = 7) -> list[Graph]:
    """Every connected graph with 1..max_n vertices, one per isomorphism
    class (relabeled to 0..n-1)."""
    import networkx as nx

    out = []
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if 1 <= n <= max_n and nx.is_connected(g):
            relab = {v: i for i, v in enumerate(sorted(g.nodes()))}
            out.append(Graph(n, [(relab[u], relab[v]) for u, v in g.edges()]))
    return out


def canonical_rowsets(a: int, b: int, chunk: int = 40000) -> list[tuple[int, ...]]:
    """All a-row, b-column biadjacency matrices up to independent row and
    column permutations.  A matrix is a sorted tuple of row bitmasks; it is
    kept iff it is the minimum over every column permutation."""
    import numpy as np

    perms = list(itertools.permutations(range(b)))
    npat = 1 << b
    remap = np.zeros((len(perms), npat), dtype=np.int32)
    for s, perm in enumerate(perms):
        for p in range(npat):
            q = 0
            for j in range(b):
                if p >> j & 1:
                    q |= 1 << perm[j]
            remap[s, p] = q
    radix = np.int64(npat) ** np.arange(a, dtype=np.int64)
    out = []
    batch = list(itertools.combinations_with_replacement(range(npat), a))
    for i in range(0, len(batch), chunk):
        block = np.array(batch[i : i + chunk], dtype=np.int32)
        mapped = remap[:, block]
        mapped.sort(axis=2)
        keys = (mapped.astype(np.int64) @ radix).min(axis=0)
        own = block.astype(np.int64) @ radix
        for j in np.nonzero(keys == own)[0]:
            out.append(batch[i + j])
    return out


def rows_to_graph(rows: tuple[int, ...], b: int) -> tuple[Graph, Bipartition]:
    a = len(rows)
    edges = [(u, a + j) for u, p in enumerate(rows) for j in range(b) if p >> j & 1]
    part = Bipartition(tuple(range(a)), tuple(range(a, a + b)))
    return Graph(a + b, edges), part


def bipartite_catalog(max_side: int = 5) -> list[tuple[Graph, Bipartition]]:
    """All bipartite graphs with side sizes 1..max_side up to isomorphism
    (side roles are symmetric, so only shapes with a <= b are generated)."""
    out = []
    for a in range(1, max_side + 1):
        for b in range(a, max_side + 1):
            for rows in canonical_rowsets(a, b):
                out.append(rows_to_graph(rows, b))
    return out


def rand_bipartite(rng: random.Random, a: int, b: int, p: float) -> tuple[Graph, Bipartition]:
    edges = [(u, a + v) for u in range(a) for v in range(b) if rng.random() < p]
    return Graph(a + b, edges), Bipartition(tuple(range(a)), tuple(range(a, a + b)))


def balanced_assignment(rng: random.Random, G: Graph, part: Bipartition, wmax: int = 4):
    """Random weights in [0, wmax] nudged until both sides have equal sums."""
    w = [rng.randint(0, wmax) for _ in range(G.n)]
    L, R = part.left, part.right
    while True:
        d = sum(w[v] for v in L) - sum(w[v] for v in R)
        if d == 0:
            return tuple(w)
        light, heavy = (R, L) if d > 0 else (L, R)
        cand = [v for v in light if w[v] < wmax]
        if cand:
            w[rng.choice(cand)] += 1
        else:
            w[rng.choice([v for v in heavy if w[v] > 0])] -= 1


def backtrack_min_beta(G: Graph, w) -> int | None:
    """Smallest target the exhaustive searcher accepts, scanning the full
    admissible range.  The instance must fit the searcher's budgets across
    that whole range, else this propagates the budget error."""
    uni = is_uniform(w)
    if uni is not None:
        return uni
    bits = {0 if p == "even" else 1 for p in admissible_parities(G, w)}
    maxw = max(w)
    for beta in range(maxw, G.n * maxw + 1):
        if beta % 2 in bits and equate_backtracking(G, w, beta) is not None:
            return beta
    return None


def nx_graph(G: Graph):
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from(G.edges)
    return g
