"""Side-information graph quantities.

Effective resistance between item pairs (edges as unit resistors), the
cut-size Φ of a candidate similarity relation against the graph, its
resistance-weighted variant Φ^R, and uniform random spanning trees via
loop-erased random walks.
"""

from collections import deque
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cho_factor, cho_solve
from scipy.sparse import csr_matrix, diags
from scipy.sparse.linalg import cg

from .core import Clustering, SideInfoGraph, SimilarityGraph
from .rng import make_rng

__all__ = [
    "ResistanceTable",
    "effective_resistance",
    "resistance_sum_check",
    "cut_size",
    "resistance_weighted_cut_size",
    "sample_spanning_tree",
    "ResistanceSolver",
]

# Dense Cholesky below this size; Jacobi-preconditioned CG above.
_DENSE_LIMIT = 2000
_SOLVER_TOL = 1e-10


@dataclass(frozen=True)
class ResistanceTable:
    """Effective resistances for the queried pairs, keyed (lo, hi)."""

    values: dict
    solver_tolerance: float = _SOLVER_TOL
    _n: int = field(default=0, repr=False)

    def __getitem__(self, pair) -> float:
        u, v = pair
        return self.values[(u, v) if u <= v else (v, u)]

    def sum(self) -> float:
        return float(sum(self.values.values()))

    def __len__(self) -> int:
        return len(self.values)


class ResistanceSolver:
    """Shared-state resistance computation over one graph.

    One grounded-Laplacian solve per distinct source vertex, cached, so
    many-pair queries (e.g. Φ^R over every cut edge) reuse columns.  Trees
    skip the linear algebra entirely: resistance along a tree is the path
    length, computed exactly by breadth-first search.
    """

    def __init__(self, g: SideInfoGraph):
        self.g = g
        self.n = g.n
        self._cols: dict[int, np.ndarray] = {}
        self._factor = None
        self._sparse = None
        self._precond = None
        self._tree = g.is_tree

    # -- tree path lengths ------------------------------------------------
    def _bfs_dist(self, src: int) -> np.ndarray:
        dist = np.full(self.n, -1, dtype=np.int64)
        dist[src] = 0
        queue = deque([src])
        while queue:
            v = queue.popleft()
            dv = dist[v] + 1
            for w in self.g.neighbors(v):
                if dist[w] < 0:
                    dist[w] = dv
                    queue.append(int(w))
        return dist

    # -- grounded Laplacian columns ---------------------------------------
    def _grounded_laplacian(self):
        us, vs = self.g.edge_arrays()
        deg = self.g.degrees
        if self.n <= _DENSE_LIMIT:
            lap = np.zeros((self.n, self.n))
            lap[us, vs] = -1.0
            lap[vs, us] = -1.0
            lap[np.arange(self.n), np.arange(self.n)] = deg
            return lap[1:, 1:]
        rows = np.concatenate([us, vs, np.arange(self.n)])
        cols = np.concatenate([vs, us, np.arange(self.n)])
        vals = np.concatenate([-np.ones(2 * us.size), deg.astype(float)])
        keep = (rows > 0) & (cols > 0)
        return csr_matrix(
            (vals[keep], (rows[keep] - 1, cols[keep] - 1)),
            shape=(self.n - 1, self.n - 1),
        )

    def _solve_columns(self, sources):
        """Ensure the grounded potential column of every listed source is
        cached.  Column s is L_g^{-1} e_s padded with the grounded entry;
        vertex 0 is the ground and has the zero column."""
        todo = sorted({int(s) for s in sources if int(s) not in self._cols})
        if not todo:
            return
        for s in todo:
            if s == 0:
                self._cols[0] = np.zeros(self.n)
        todo = [s for s in todo if s != 0]
        if not todo:
            return
        if self.n <= _DENSE_LIMIT:
            if self._factor is None:
                self._factor = cho_factor(
                    self._grounded_laplacian(), lower=True, check_finite=False
                )
            rhs = np.zeros((self.n - 1, len(todo)))
            rhs[np.array(todo) - 1, np.arange(len(todo))] = 1.0
            sol = cho_solve(self._factor, rhs, check_finite=False)
            for i, s in enumerate(todo):
                col = np.zeros(self.n)
                col[1:] = sol[:, i]
                self._cols[s] = col
        else:
            if self._sparse is None:
                self._sparse = self._grounded_laplacian()
                self._precond = diags(1.0 / self._sparse.diagonal())
            for s in todo:
                rhs = np.zeros(self.n - 1)
                rhs[s - 1] = 1.0
                col_g, info = cg(
                    self._sparse, rhs, rtol=1e-12, atol=0.0, M=self._precond
                )
                if info != 0:
                    raise RuntimeError(f"resistance solve failed to converge (info={info})")
                col = np.zeros(self.n)
                col[1:] = col_g
                self._cols[s] = col

    def resistances(self, pairs) -> ResistanceTable:
        pairs = [(int(u), int(v)) for u, v in pairs]
        bad = [p for p in pairs if not (0 <= p[0] < self.n and 0 <= p[1] < self.n)]
        if bad:
            raise ValueError(f"pair {bad[0]} out of range 0..{self.n - 1}")
        values = {}
        if self._tree:
            dists = {}
            for u, v in pairs:
                key = (u, v) if u <= v else (v, u)
                if key in values:
                    continue
                if u not in dists:
                    dists[u] = self._bfs_dist(u)
                values[key] = float(dists[u][v])
            return ResistanceTable(values=values, solver_tolerance=0.0, _n=self.n)
        self._solve_columns([u for u, _ in pairs] + [v for _, v in pairs])
        for u, v in pairs:
            key = (u, v) if u <= v else (v, u)
            if key not in values:
                cu, cv = self._cols[u], self._cols[v]
                # (e_u - e_v)^T L^+ (e_u - e_v) via grounded columns
                values[key] = float(max(cu[u] + cv[v] - 2.0 * cu[v], 0.0))
        return ResistanceTable(values=values, solver_tolerance=_SOLVER_TOL, _n=self.n)


def effective_resistance(g: SideInfoGraph, pairs) -> ResistanceTable:
    """Effective resistance r(v,w) for each queried pair, treating every
    edge of ``g`` as a unit resistor."""
    return ResistanceSolver(g).resistances(pairs)


def resistance_sum_check(g: SideInfoGraph) -> float:
    """Σ over edges of r(v,w); equals n−1 for any connected graph (each
    spanning tree contributes each edge proportionally to its inclusion
    probability)."""
    table = effective_resistance(g, list(g.edges()))
    return table.sum()


def _cut_edge_mask(g: SideInfoGraph, y) -> np.ndarray:
    if y.n != g.n:
        raise ValueError(f"item counts differ: {g.n} != {y.n}")
    us, vs = g.edge_arrays()
    if isinstance(y, Clustering):
        return y.labels[us] != y.labels[vs]
    if isinstance(y, SimilarityGraph):
        return ~np.isin(g.edge_codes, y.pair_codes, assume_unique=True)
    raise TypeError("y must be a Clustering or SimilarityGraph")


def cut_size(g: SideInfoGraph, y) -> int:
    """Number of edges of ``g`` joining items that ``y`` calls dissimilar."""
    return int(_cut_edge_mask(g, y).sum())


def resistance_weighted_cut_size(g: SideInfoGraph, y, solver: ResistanceSolver | None = None) -> float:
    """Σ of r(v,w) over cut edges.  Always ≤ n−1; equals cut_size on trees."""
    mask = _cut_edge_mask(g, y)
    us, vs = g.edge_arrays()
    table = (solver or ResistanceSolver(g)).resistances(
        list(zip(us[mask].tolist(), vs[mask].tolist()))
    )
    return table.sum()


def sample_spanning_tree(g: SideInfoGraph, seed) -> frozenset:
    """A uniformly random spanning tree of ``g`` as a frozenset of (lo, hi)
    edges, via loop-erased random walks rooted at vertex 0.

    Each unrooted walk records only its latest exit from every vertex;
    retracing those successor pointers after the walk hits the tree yields
    the loop-erased path, so cycles pop implicitly.
    """
    rng = make_rng(seed)
    n = g.n
    adj = [g.neighbors(v).tolist() for v in range(n)]
    in_tree = bytearray(n)
    in_tree[0] = 1
    succ = [0] * n
    buf: list = []
    pos = 0
    for start in range(n):
        if in_tree[start]:
            continue
        u = start
        while not in_tree[u]:
            nb = adj[u]
            if pos == len(buf):
                buf = rng.random(8192).tolist()
                pos = 0
            j = int(buf[pos] * len(nb))
            pos += 1
            if j == len(nb):  # guard: random() can round up at the edge
                j -= 1
            succ[u] = nb[j]
            u = succ[u]
        u = start
        while not in_tree[u]:
            in_tree[u] = 1
            u = succ[u]
    return frozenset(
        (v, succ[v]) if v < succ[v] else (succ[v], v) for v in range(1, n)
    )
