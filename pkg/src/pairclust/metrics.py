"""Distances between clusterings and similarity graphs.

Three distances: Jaccard (between item sets), Hamming (between similarity
graphs, counted over ordered pairs), and misclassification error (between
clusterings, minimized over cluster bijections).  Plus a diagnostic that
counts items whose observed neighborhood is Jaccard-far from their own
cluster.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .core import Clustering, SimilarityGraph

__all__ = [
    "AnomalyReport",
    "jaccard_distance",
    "hamming_distance",
    "misclassification_error",
    "count_anomalies",
]

# pad-to-square dense assignment below this k²; component-decomposed above
_DENSE_K_LIMIT = 1 << 22


def jaccard_distance(a, b) -> Fraction:
    """Jaccard distance (|a\\b| + |b\\a|) / |a∪b| as an exact rational.

    0 iff the sets are equal, 1 iff they are disjoint.  Undefined (and an
    error) when both sets are empty.
    """
    sa, sb = frozenset(a), frozenset(b)
    union = len(sa | sb)
    if union == 0:
        raise ValueError("jaccard distance of two empty sets is undefined")
    return Fraction(union - len(sa & sb), union)


def _intersect_size_sorted(a: np.ndarray, b: np.ndarray) -> int:
    """|a ∩ b| for sorted unique int arrays."""
    return int(np.intersect1d(a, b, assume_unique=True).size)


def hamming_distance(p: SimilarityGraph, q: SimilarityGraph) -> int:
    """Number of ordered item pairs (v, w), v != w, on which p and q
    disagree — i.e. twice the unordered symmetric difference.

    This ordered-pair count is exactly the Mirkin distance between the two
    relations; dividing by n(n-1) and subtracting from 1 gives the Rand
    index.  The diagonal never contributes.
    """
    if p.n != q.n:
        raise ValueError(f"item counts differ: {p.n} != {q.n}")
    inter = _intersect_size_sorted(p.pair_codes, q.pair_codes)
    return 2 * (p.pair_count + q.pair_count - 2 * inter)


def misclassification_error(c: Clustering, d: Clustering) -> int:
    """Minimum number of misplaced items over all bijections between the
    two cluster lists (the smaller list padded with empty clusters).

    Equals n minus the maximum-weight assignment on the cluster
    overlap-count matrix, solved exactly in O(k^3).  Since empty-overlap
    matches contribute nothing and weights are nonnegative, the assignment
    decomposes over connected components of the bipartite overlap graph,
    which keeps heavily fragmented clusterings (k close to n) tractable.
    """
    if c.n != d.n:
        raise ValueError(f"item counts differ: {c.n} != {d.n}")
    if max(c.k, d.k) ** 2 <= _DENSE_K_LIMIT:
        overlap = np.zeros((max(c.k, d.k),) * 2, dtype=np.int64)
        counts = np.bincount(d.labels * c.k + c.labels, minlength=d.k * c.k)
        overlap[: d.k, : c.k] = counts.reshape(d.k, c.k)
        rows, cols = linear_sum_assignment(overlap, maximize=True)
        return int(c.n - overlap[rows, cols].sum())

    codes, weights = np.unique(d.labels * np.int64(c.k) + c.labels, return_counts=True)
    rows = codes // c.k
    cols = codes % c.k
    nodes = d.k + c.k
    bip = coo_matrix(
        (np.ones(rows.size, dtype=np.int8), (rows, cols + d.k)),
        shape=(nodes, nodes),
    )
    _, comp = connected_components(bip, directed=False)
    matched = 0
    order = np.argsort(comp[rows], kind="stable")
    bounds = np.flatnonzero(np.diff(comp[rows][order])) + 1
    for grp in np.split(order, bounds):
        r, rl = np.unique(rows[grp], return_inverse=True)
        s, sl = np.unique(cols[grp], return_inverse=True)
        local = np.zeros((r.size, s.size), dtype=np.int64)
        local[rl, sl] = weights[grp]
        i, j = linear_sum_assignment(local, maximize=True)
        matched += int(local[i, j].sum())
    return int(c.n - matched)


@dataclass(frozen=True)
class AnomalyReport:
    """Items whose neighborhood is Jaccard-far from their own cluster."""

    b: Fraction
    anomalies: tuple
    n: int

    @property
    def count(self) -> int:
        return len(self.anomalies)


def count_anomalies(p: SimilarityGraph, d: Clustering, b) -> AnomalyReport:
    """Report every item v whose neighborhood {v} ∪ neighbors_p(v) has
    Jaccard distance ≥ 1−b from v's own cluster in d.

    ``b`` should be passed as a Fraction (or a string like "5/6") when the
    test must be exact at the threshold; floats are converted to their exact
    binary value.
    """
    if p.n != d.n:
        raise ValueError(f"item counts differ: {p.n} != {d.n}")
    b = Fraction(b)
    if not 0 <= b <= 1:
        raise ValueError("b must lie in [0, 1]")
    threshold = 1 - b
    clusters = d.clusters
    labels = d.labels
    out = []
    for v in range(p.n):
        nbrs = p.neighbors(v)
        gamma = np.union1d(nbrs, [v])
        own = clusters[labels[v]]
        inter = _intersect_size_sorted(gamma, own)
        union = gamma.size + own.size - inter
        if Fraction(union - inter, union) >= threshold:
            out.append(v)
    return AnomalyReport(b=b, anomalies=tuple(out), n=p.n)
