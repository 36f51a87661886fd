"""Robust greedy clustering.

Stage 1 robustifies a noisy similarity graph: two items become Q-adjacent
when the Jaccard distance between their closed neighborhoods is at most
1−a.  Stage 2 repeatedly extracts the largest remaining Q-neighborhood as
a cluster.  With the default a = 2/3 the output's misclassification error
is controlled by the input's Hamming distance from the nearest clustering
(see experiment.rgca_error_bound).

The algorithm is consistent: fed a clustering's own similarity graph it
returns that clustering exactly.
"""

import heapq
from fractions import Fraction

import numpy as np

from .core import Clustering, SimilarityGraph

__all__ = ["RobustGraph", "build_robust_graph", "greedy_extract", "rgca", "DEFAULT_A"]

DEFAULT_A = Fraction(2, 3)


class RobustGraph:
    """Output of stage 1: items adjacent iff their closed neighborhoods
    are Jaccard-close (distance ≤ 1−a)."""

    __slots__ = ("graph", "a")

    def __init__(self, graph: SimilarityGraph, a: Fraction):
        self.graph = graph
        self.a = a

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def pair_count(self) -> int:
        return self.graph.pair_count

    def __repr__(self) -> str:
        return f"RobustGraph(n={self.n}, pairs={self.pair_count}, a={self.a})"


def build_robust_graph(p: SimilarityGraph, a=DEFAULT_A) -> RobustGraph:
    """All-pairs neighborhood comparison.

    The closed neighborhoods are held as rows of a 0/1 matrix, so each
    chunk of pairwise intersection counts is one matrix product; counts
    stay below 2^24, making float32 products exact.  The threshold test
    q·|Γv∩Γw| ≥ p·|Γv∪Γw| (for a = p/q) is integer arithmetic, so results
    match the exact rational definition bit-for-bit.
    """
    a = Fraction(a)
    if not 0 <= a <= 1:
        raise ValueError("a must lie in [0, 1]")
    n = p.n
    basis = np.zeros((n, n), dtype=np.float32)
    us, vs = p.pair_arrays()
    basis[us, vs] = 1.0
    basis[vs, us] = 1.0
    np.fill_diagonal(basis, 1.0)
    sizes = basis.sum(axis=1).astype(np.int64)  # |Γ_v| = 1 + deg(v)

    num, den = a.numerator, a.denominator
    # int64 is safe while den·|union| < 2^63; fall back to object ints for
    # exotic rationals (e.g. exact binary expansions of float parameters)
    exact_fits = den <= (2**62) // max(2 * n, 1)
    cols = np.arange(n)
    code_parts = []
    chunk = max(1, (1 << 22) // n)
    for lo in range(0, n, chunk):
        hi = min(lo + chunk, n)
        inter = np.rint(basis[lo:hi] @ basis.T).astype(np.int64)
        union = sizes[lo:hi, None] + sizes[None, :] - inter
        if exact_fits:
            mask = den * inter >= num * union
        else:
            mask = den * inter.astype(object) >= num * union.astype(object)
            mask = mask.astype(bool)
        mask &= (lo + np.arange(hi - lo))[:, None] < cols[None, :]
        rows_rel, cols_abs = np.nonzero(mask)
        code_parts.append((rows_rel + lo) * np.int64(n) + cols_abs)
    codes = np.concatenate(code_parts) if code_parts else np.empty(0, dtype=np.int64)
    return RobustGraph(SimilarityGraph._from_codes(n, np.sort(codes)), a)


def greedy_extract(q: RobustGraph) -> Clustering:
    """Repeatedly pull out the largest remaining neighborhood.

    Among unassigned items, pick the one whose closed Q-neighborhood
    (restricted to unassigned items) is largest — ties go to the lowest
    item id — and emit that whole neighborhood as the next cluster.

    A max-heap keyed by current neighborhood size drives the argmax; stale
    entries are skipped lazily by comparing against live counts, and counts
    are decremented (with a re-push) whenever an extraction consumes a
    neighbor.  Total pushes are bounded by n plus twice the pair count.
    """
    g = q.graph
    n = g.n
    adj = [g.neighbors(v).tolist() for v in range(n)]
    live = [1 + len(adj[v]) for v in range(n)]
    assigned = bytearray(n)
    heap = [(-live[v], v) for v in range(n)]
    heapq.heapify(heap)
    labels = np.full(n, -1, dtype=np.int64)
    next_label = 0
    while heap:
        neg, v = heapq.heappop(heap)
        if assigned[v] or -neg != live[v]:
            continue
        members = [v] + [w for w in adj[v] if not assigned[w]]
        for u in members:
            assigned[u] = 1
        labels[members] = next_label
        next_label += 1
        for u in members:
            for w in adj[u]:
                if not assigned[w]:
                    live[w] -= 1
                    heapq.heappush(heap, (-live[w], w))
    return Clustering(labels)


def rgca(p: SimilarityGraph, a=DEFAULT_A) -> Clustering:
    """Robustify then greedily extract; see the module docstring."""
    return greedy_extract(build_robust_graph(p, a))
