"""Core domain types for pairwise clustering.

Items are dense integer ids ``0..n-1`` everywhere; external identifiers are
mapped at the file I/O boundary.  A clustering is a partition of the items
into labeled clusters.  A similarity graph is a symmetric, irreflexive binary
relation over item pairs; it coincides with a clustering exactly when every
connected component is a clique (the relation is transitive).

All types are immutable after construction and safe to share across threads.
"""

from collections import deque

import numpy as np

__all__ = [
    "Clustering",
    "SimilarityGraph",
    "SideInfoGraph",
    "TrainingSet",
    "clustering_to_similarity",
    "similarity_is_clustering",
]


def _encode_pairs(n: int, pairs) -> np.ndarray:
    """Validate unordered distinct pairs and encode them as sorted unique
    int64 codes ``lo * n + hi``."""
    if isinstance(pairs, np.ndarray) and pairs.ndim == 2 and pairs.shape[1] == 2:
        arr = pairs.astype(np.int64, copy=False)
    else:
        arr = np.array([(int(u), int(v)) for u, v in pairs], dtype=np.int64)
        arr = arr.reshape(-1, 2)
    if arr.size == 0:
        return np.empty(0, dtype=np.int64)
    if arr.min() < 0 or arr.max() >= n:
        raise ValueError(f"pair endpoints must lie in 0..{n - 1}")
    lo = np.minimum(arr[:, 0], arr[:, 1])
    hi = np.maximum(arr[:, 0], arr[:, 1])
    if (lo == hi).any():
        raise ValueError("self-pairs are not allowed")
    return np.unique(lo * np.int64(n) + hi)


def _decode_codes(n: int, codes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return codes // n, codes % n


def _adjacency_from_codes(n: int, codes: np.ndarray) -> list[np.ndarray]:
    """Per-item sorted neighbor arrays for an undirected edge code set."""
    us, vs = _decode_codes(n, codes)
    src = np.concatenate([us, vs])
    dst = np.concatenate([vs, us])
    order = np.lexsort((dst, src))
    src = src[order]
    dst = dst[order]
    counts = np.bincount(src, minlength=n)
    return np.split(dst, np.cumsum(counts[:-1]))


class Clustering:
    """A partition of items ``0..n-1`` into ``k`` clusters with dense ids.

    ``labels[v]`` is the cluster id of item ``v``.  Ids must be exactly
    ``0..k-1`` with no empty cluster.  Label values are preserved as given
    (algorithms may encode a meaningful order, e.g. extraction order);
    equality and hashing compare the *canonical* relabeling, in which ids
    follow the first appearance of each cluster's minimum item.
    """

    __slots__ = ("labels", "n", "k", "_clusters", "_canon")

    def __init__(self, labels):
        arr = np.array(labels, dtype=np.int64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("labels must be a nonempty 1-d sequence")
        if arr.min() < 0:
            raise ValueError("cluster ids must be nonnegative")
        k = int(arr.max()) + 1
        if np.bincount(arr, minlength=k).min() == 0:
            raise ValueError("cluster ids must be dense 0..k-1 with no empty cluster")
        arr.flags.writeable = False
        self.labels = arr
        self.n = int(arr.size)
        self.k = k
        self._clusters = None
        self._canon = None

    @classmethod
    def from_clusters(cls, clusters) -> "Clustering":
        """Build from an ordered sequence of disjoint item sets covering
        ``0..n-1``; the list position becomes the cluster id."""
        parts = [np.fromiter(c, dtype=np.int64) for c in clusters]
        if any(p.size == 0 for p in parts):
            raise ValueError("empty clusters are not allowed")
        n = sum(p.size for p in parts)
        labels = np.full(n, -1, dtype=np.int64)
        for cid, members in enumerate(parts):
            if members.min() < 0 or members.max() >= n:
                raise ValueError(f"item ids must lie in 0..{n - 1}")
            if (labels[members] != -1).any():
                raise ValueError("clusters must be disjoint")
            labels[members] = cid
        return cls(labels)

    @property
    def clusters(self) -> list[np.ndarray]:
        """Clusters as sorted item arrays, indexed by cluster id."""
        if self._clusters is None:
            order = np.argsort(self.labels, kind="stable")
            counts = np.bincount(self.labels, minlength=self.k)
            self._clusters = np.split(order, np.cumsum(counts[:-1]))
        return self._clusters

    @property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.k)

    def label_of(self, v: int) -> int:
        return int(self.labels[v])

    def canonical_labels(self) -> np.ndarray:
        """Labels relabeled so ids follow first appearance over items 0..n-1
        (equivalently, ascending order of each cluster's minimum item)."""
        if self._canon is None:
            ids, first = np.unique(self.labels, return_index=True)
            new_of = np.empty(self.k, dtype=np.int64)
            new_of[ids[np.argsort(first)]] = np.arange(self.k)
            canon = new_of[self.labels]
            canon.flags.writeable = False
            self._canon = canon
        return self._canon

    def canonical(self) -> "Clustering":
        return Clustering(self.canonical_labels())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Clustering):
            return NotImplemented
        return self.n == other.n and np.array_equal(
            self.canonical_labels(), other.canonical_labels()
        )

    def __hash__(self) -> int:
        return hash((self.n, self.canonical_labels().tobytes()))

    def __repr__(self) -> str:
        return f"Clustering(n={self.n}, k={self.k})"


class SimilarityGraph:
    """A symmetric binary similarity relation over items ``0..n-1``.

    Stored as unordered distinct pairs (no self-pairs, no duplicates).
    """

    __slots__ = ("n", "pair_codes", "_adj")

    def __init__(self, n: int, pairs=()):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = int(n)
        self.pair_codes = _encode_pairs(self.n, pairs)
        self._adj = None

    @classmethod
    def _from_codes(cls, n: int, codes: np.ndarray) -> "SimilarityGraph":
        """Trusted constructor: ``codes`` already sorted, unique, valid."""
        g = cls.__new__(cls)
        g.n = int(n)
        codes = np.asarray(codes, dtype=np.int64)
        codes.flags.writeable = False
        g.pair_codes = codes
        g._adj = None
        return g

    @property
    def pair_count(self) -> int:
        return int(self.pair_codes.size)

    def pairs(self):
        """Yield pairs as ``(lo, hi)`` tuples in code order."""
        us, vs = _decode_codes(self.n, self.pair_codes)
        for u, v in zip(us.tolist(), vs.tolist()):
            yield (u, v)

    def pair_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return _decode_codes(self.n, self.pair_codes)

    def has_pair(self, u: int, v: int) -> bool:
        if u == v:
            return False
        lo, hi = (u, v) if u < v else (v, u)
        code = lo * self.n + hi
        i = np.searchsorted(self.pair_codes, code)
        return i < self.pair_codes.size and self.pair_codes[i] == code

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted array of items declared similar to ``v``."""
        if self._adj is None:
            self._adj = _adjacency_from_codes(self.n, self.pair_codes)
        return self._adj[v]

    @property
    def degrees(self) -> np.ndarray:
        us, vs = self.pair_arrays()
        return np.bincount(us, minlength=self.n) + np.bincount(vs, minlength=self.n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimilarityGraph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.pair_codes, other.pair_codes)

    def __hash__(self) -> int:
        return hash((self.n, self.pair_codes.tobytes()))

    def __repr__(self) -> str:
        return f"SimilarityGraph(n={self.n}, pairs={self.pair_count})"


class SideInfoGraph:
    """Connected, undirected, unweighted graph carrying the inductive bias
    that adjacent items tend to be similar.  Connectivity is checked at
    construction."""

    __slots__ = ("n", "edge_codes", "_adj")

    def __init__(self, n: int, edges):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = int(n)
        self.edge_codes = _encode_pairs(self.n, edges)
        self._adj = _adjacency_from_codes(self.n, self.edge_codes)
        if not self._connected():
            raise ValueError("side-information graph must be connected")

    def _connected(self) -> bool:
        seen = np.zeros(self.n, dtype=bool)
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            v = queue.popleft()
            for w in self._adj[v]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    queue.append(int(w))
        return count == self.n

    @property
    def edge_count(self) -> int:
        return int(self.edge_codes.size)

    @property
    def is_tree(self) -> bool:
        return self.edge_count == self.n - 1

    def edges(self):
        us, vs = self.edge_arrays()
        for u, v in zip(us.tolist(), vs.tolist()):
            yield (u, v)

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return _decode_codes(self.n, self.edge_codes)

    def neighbors(self, v: int) -> np.ndarray:
        return self._adj[v]

    @property
    def degrees(self) -> np.ndarray:
        us, vs = self.edge_arrays()
        return np.bincount(us, minlength=self.n) + np.bincount(vs, minlength=self.n)

    def __repr__(self) -> str:
        return f"SideInfoGraph(n={self.n}, edges={self.edge_count})"


class TrainingSet:
    """An ordered multiset of binary-labeled item pairs ``(v, w, y)``.

    Pairs are ordered draws from the full item square: duplicates and
    self-pairs are permitted, and entry order is preserved (consumers may
    scan sequentially).
    """

    __slots__ = ("n", "vs", "ws", "ys")

    def __init__(self, n: int, entries=()):
        triples = [(int(v), int(w), int(y)) for v, w, y in entries]
        if triples:
            vs, ws, ys = (np.array(col, dtype=np.int64) for col in zip(*triples))
        else:
            vs = ws = ys = np.empty(0, dtype=np.int64)
        self._init_arrays(n, vs, ws, ys)

    @classmethod
    def from_arrays(cls, n: int, vs, ws, ys) -> "TrainingSet":
        s = cls.__new__(cls)
        s._init_arrays(
            n,
            np.asarray(vs, dtype=np.int64),
            np.asarray(ws, dtype=np.int64),
            np.asarray(ys, dtype=np.int64),
        )
        return s

    def _init_arrays(self, n: int, vs, ws, ys):
        if n < 1:
            raise ValueError("n must be >= 1")
        if not (vs.size == ws.size == ys.size):
            raise ValueError("vs, ws, ys must have equal length")
        if vs.size:
            if min(vs.min(), ws.min()) < 0 or max(vs.max(), ws.max()) >= n:
                raise ValueError(f"item ids must lie in 0..{n - 1}")
            if not np.isin(ys, (0, 1)).all():
                raise ValueError("labels must be 0 or 1")
        for a in (vs, ws, ys):
            a.flags.writeable = False
        self.n = int(n)
        self.vs = vs
        self.ws = ws
        self.ys = ys

    @property
    def m(self) -> int:
        return int(self.vs.size)

    def __len__(self) -> int:
        return self.m

    def entries(self):
        for t in zip(self.vs.tolist(), self.ws.tolist(), self.ys.tolist()):
            yield t

    def __repr__(self) -> str:
        return f"TrainingSet(n={self.n}, m={self.m})"


def clustering_to_similarity(c: Clustering) -> SimilarityGraph:
    """The similarity graph whose pairs are exactly the intra-cluster pairs
    of ``c``: a disjoint union of cliques."""
    parts = []
    n = np.int64(c.n)
    for members in c.clusters:
        d = members.size
        if d >= 2:
            iu, iv = np.triu_indices(d, k=1)
            parts.append(members[iu] * n + members[iv])
    if parts:
        codes = np.sort(np.concatenate(parts))
    else:
        codes = np.empty(0, dtype=np.int64)
    return SimilarityGraph._from_codes(c.n, codes)


def similarity_is_clustering(g: SimilarityGraph) -> Clustering | None:
    """Return the clustering whose cliques are ``g``'s connected components,
    or ``None`` when some component is not a clique (the relation is not
    transitive)."""
    n = g.n
    deg = g.degrees
    labels = np.full(n, -1, dtype=np.int64)
    next_label = 0
    for start in range(n):
        if labels[start] != -1:
            continue
        comp = [start]
        labels[start] = next_label
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if labels[w] == -1:
                    labels[w] = next_label
                    comp.append(int(w))
                    queue.append(int(w))
        # a component is a clique iff every member sees all other members
        size = len(comp)
        if any(deg[v] != size - 1 for v in comp):
            return None
        next_label += 1
    return Clustering(labels)
