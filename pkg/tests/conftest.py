"""Shared test helpers: random instances and brute-force reference oracles."""

from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest

from pairclust import Clustering, SideInfoGraph
from pairclust.rng import make_rng


def random_connected_graph(n: int, extra_edges: int, seed) -> SideInfoGraph:
    """Random tree (permutation chain attachment) plus extra random edges."""
    rng = make_rng(seed)
    perm = rng.permutation(n)
    edges = set()
    for i in range(1, n):
        parent = perm[int(rng.integers(0, i))]
        child = perm[i]
        edges.add((min(parent, child), max(parent, child)))
    tries = 0
    while len(edges) < n - 1 + extra_edges and tries < 50 * (extra_edges + 1):
        u, v = int(rng.integers(0, n)), int(rng.integers(0, n))
        tries += 1
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return SideInfoGraph(n, sorted(edges))


def random_clustering(n: int, max_k: int, seed) -> Clustering:
    """Uniform random labels, compacted to dense cluster ids."""
    rng = make_rng(seed)
    raw = rng.integers(0, max_k, size=n)
    _, labels = np.unique(raw, return_inverse=True)
    return Clustering(labels)


def brute_force_er(c: Clustering, d: Clustering) -> int:
    """Reference misclassification error: enumerate every bijection between
    the (padded) cluster lists and count items outside their matched
    cluster.  Feasible for k ≤ about 7."""
    k = max(c.k, d.k)
    overlap = np.zeros((k, k), dtype=np.int64)
    for dl, cl in zip(d.labels, c.labels):
        overlap[dl, cl] += 1
    best = None
    for perm in permutations(range(k)):
        matched = sum(overlap[i, perm[i]] for i in range(k))
        if best is None or matched > best:
            best = matched
    return int(c.n - best)


def jaccard_frac(a, b) -> Fraction:
    """Independent Jaccard distance straight from the set definition."""
    sa, sb = set(a), set(b)
    union = sa | sb
    return Fraction(len(sa - sb) + len(sb - sa), len(union))


@pytest.fixture
def rng():
    return make_rng(20260816)
