"""Agglomerative clustering over labeled pairs.

Starting from singletons, scan the training entries in order and merge the
two items' clusters whenever the label says "similar".  Dissimilar and
redundant entries are no-ops, so the output is exactly the connected
components of the positively-labeled pairs — order-independent, and
computed in O((n+m)·log* n) by union-find.
"""

from collections import deque

import numpy as np

from .core import Clustering, TrainingSet

__all__ = ["UnionFind", "saca", "positive_component_oracle"]


class UnionFind:
    """Disjoint sets over 0..n-1 with union by rank and path compression."""

    __slots__ = ("parent", "rank", "count")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = bytearray(n)
        self.count = n

    def find(self, v: int) -> int:
        parent = self.parent
        while parent[v] != v:  # path halving
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(self, v: int, w: int) -> bool:
        rv, rw = self.find(v), self.find(w)
        if rv == rw:
            return False
        rank = self.rank
        if rank[rv] < rank[rw]:
            rv, rw = rw, rv
        self.parent[rw] = rv
        if rank[rv] == rank[rw]:
            rank[rv] += 1
        self.count -= 1
        return True

    def union_many(self, vs, ws):
        """Bulk unions; the tight loop matters when m runs to millions."""
        parent = self.parent
        rank = self.rank
        merged = 0
        for v, w in zip(vs, ws):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            while parent[w] != w:
                parent[w] = parent[parent[w]]
                w = parent[w]
            if v == w:
                continue
            if rank[v] < rank[w]:
                v, w = w, v
            parent[w] = v
            if rank[v] == rank[w]:
                rank[v] += 1
            merged += 1
        self.count -= merged

    def to_clustering(self) -> Clustering:
        """Resolve every item to its root by repeated pointer jumping, then
        compact root ids to dense cluster labels."""
        p = np.array(self.parent, dtype=np.int64)
        while True:
            pp = p[p]
            if np.array_equal(pp, p):
                break
            p = pp
        _, labels = np.unique(p, return_inverse=True)
        return Clustering(labels)


def saca(n: int, s: TrainingSet) -> Clustering:
    """Merge-by-positive-pairs clustering; see the module docstring."""
    if s.n != n:
        raise ValueError(f"training set is over {s.n} items, expected {n}")
    uf = UnionFind(n)
    pos = s.ys == 1
    uf.union_many(s.vs[pos].tolist(), s.ws[pos].tolist())
    return uf.to_clustering()


def positive_component_oracle(n: int, s: TrainingSet) -> Clustering:
    """Reference result: breadth-first connected components of the graph
    whose edges are the positive entries.  Must agree with saca."""
    if s.n != n:
        raise ValueError(f"training set is over {s.n} items, expected {n}")
    adj: list[list[int]] = [[] for _ in range(n)]
    pos = s.ys == 1
    for v, w in zip(s.vs[pos].tolist(), s.ws[pos].tolist()):
        if v != w:
            adj[v].append(w)
            adj[w].append(v)
    labels = np.full(n, -1, dtype=np.int64)
    next_label = 0
    for start in range(n):
        if labels[start] != -1:
            continue
        labels[start] = next_label
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if labels[w] == -1:
                    labels[w] = next_label
                    queue.append(w)
        next_label += 1
    return Clustering(labels)
