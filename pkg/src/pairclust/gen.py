"""Instance generators.

Planted clusterings and uniformly sampled training pairs for benign
experiments; two adversarial constructions that realize worst-case inputs
(a budgeted similarity corruption that forces large misclassification
error, and a side-information instance whose resistance-weighted cut-size
stays under a budget while the labeling hides information from the training
pairs); and an Erdős–Rényi sampler used to exercise the isolated-vertex
count bound.

Every generator is a pure function of its parameters and seed.
"""

from dataclasses import dataclass

import numpy as np

from .core import Clustering, SideInfoGraph, SimilarityGraph, TrainingSet, clustering_to_similarity
from .graph import ResistanceSolver, resistance_weighted_cut_size
from .rng import make_rng

__all__ = [
    "planted_clustering",
    "sample_training_set",
    "perturb_similarity",
    "adversarial_t2",
    "AdversarialInstanceT4",
    "adversarial_t4",
    "erdos_renyi",
    "isolated_count",
]


def planted_clustering(n: int, sizes=None, k: int | None = None, seed=0) -> Clustering:
    """Random clustering with the given cluster sizes (or k as-balanced-as-
    possible sizes); items assigned by a seeded permutation."""
    if (sizes is None) == (k is None):
        raise ValueError("give exactly one of sizes= or k=")
    if k is not None:
        if not 1 <= k <= n:
            raise ValueError(f"k must lie in 1..{n}")
        base, extra = divmod(n, k)
        sizes = [base + 1] * extra + [base] * (k - extra)
    else:
        sizes = [int(d) for d in sizes]
        if any(d <= 0 for d in sizes):
            raise ValueError("cluster sizes must be positive")
        if sum(sizes) != n:
            raise ValueError(f"sizes sum to {sum(sizes)}, expected n={n}")
    rng = make_rng(seed)
    perm = rng.permutation(n)
    labels = np.empty(n, dtype=np.int64)
    labels[perm] = np.repeat(np.arange(len(sizes), dtype=np.int64), sizes)
    return Clustering(labels)


def sample_training_set(d: Clustering, m: int, seed=0) -> TrainingSet:
    """m ordered draws uniform on the item square (self-pairs possible,
    with replacement), labeled 1 iff the two items share a cluster in d."""
    if m < 0:
        raise ValueError("m must be >= 0")
    rng = make_rng(seed)
    vs = rng.integers(0, d.n, size=m, dtype=np.int64)
    ws = rng.integers(0, d.n, size=m, dtype=np.int64)
    ys = (d.labels[vs] == d.labels[ws]).astype(np.int64)
    return TrainingSet.from_arrays(d.n, vs, ws, ys)


def _pair_index_to_uv(n: int, idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Invert the lexicographic enumeration of unordered pairs (u < v):
    index S(u) + (v - u - 1) with S(u) = u(2n - u - 1)/2."""
    idx = np.asarray(idx, dtype=np.int64)

    def start(u):
        return u * (2 * n - u - 1) // 2

    b = 2 * n - 1
    u = ((b - np.sqrt(b * b - 8.0 * idx)) / 2).astype(np.int64)
    u = np.clip(u, 0, n - 2)
    for _ in range(2):  # float sqrt can be off by one either way
        u += start(u + 1) <= idx
        u = np.minimum(u, n - 2)
        u -= start(u) > idx
        u = np.maximum(u, 0)
    v = idx - start(u) + u + 1
    return u, v


def perturb_similarity(d: Clustering, flips: int, seed=0) -> SimilarityGraph:
    """Toggle ``flips`` distinct uniformly chosen unordered pairs of the
    clustering's own similarity graph; the result's Hamming distance from d
    is exactly 2·flips."""
    n = d.n
    total = n * (n - 1) // 2
    if not 0 <= flips <= total:
        raise ValueError(f"flips must lie in 0..{total}")
    rng = make_rng(seed)
    chosen = np.sort(rng.choice(total, size=flips, replace=False).astype(np.int64))
    us, vs = _pair_index_to_uv(n, chosen)
    flip_codes = us * np.int64(n) + vs
    base = clustering_to_similarity(d).pair_codes
    out = np.setxor1d(base, flip_codes, assume_unique=True)
    return SimilarityGraph._from_codes(n, out)


def _halve(members: np.ndarray) -> list[np.ndarray]:
    d = members.size
    if d < 2:
        return [members]
    return [members[: (d + 1) // 2], members[(d + 1) // 2 :]]


def adversarial_t2(d: Clustering, sigma: int) -> SimilarityGraph:
    """Worst-case similarity graph within a Hamming budget.

    Spends at most sigma (ordered-pair count) of corruption on d's own
    similarity graph by splitting clusters, smallest first: either every
    cluster is halved (budget permitting), or all clusters below a cutoff
    are halved and the cutoff cluster sheds a block of c items, where c is
    the largest size the remaining budget allows.  The output is itself a
    valid clustering graph — so a consistent clusterer reproduces the
    corrupted partition, and its error against d is forced up while
    HA(output, d) ≤ sigma.

    All threshold arithmetic is integer-exact (comparisons use 2·sigma and
    4·d_j to avoid half-integer intermediates).
    """
    sigma = int(sigma)
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    sizes = d.sizes
    order = np.argsort(sizes, kind="stable")
    clusters = d.clusters
    sq = [int(sizes[cid]) ** 2 for cid in order]
    parts: list[np.ndarray] = []
    if 2 * sigma >= sum(sq):
        for cid in order:
            parts.extend(_halve(clusters[cid]))
    else:
        cutoff = 0
        before = 0
        while before + sq[cutoff] <= 2 * sigma:
            before += sq[cutoff]
            cutoff += 1
        d_cut = int(sizes[order[cutoff]])
        c = (2 * sigma - before) // (4 * d_cut)
        for j, cid in enumerate(order):
            members = clusters[cid]
            if j < cutoff:
                parts.extend(_halve(members))
            elif j == cutoff and 0 < c:
                parts.append(members[:c])
                parts.append(members[c:])
            else:
                parts.append(members)
    return clustering_to_similarity(Clustering.from_clusters(parts))


@dataclass(frozen=True)
class AdversarialInstanceT4:
    """A labeling + training set over a side-information graph that keeps
    the resistance-weighted cut-size under budget while the training pairs
    carry no information about the planted class boundaries."""

    y: Clustering
    s: TrainingSet
    h_sets: tuple
    v_b: np.ndarray
    z: int
    z_nominal: int
    block_size: int
    b: int
    k: int
    m: int
    phi_r: float


def adversarial_t4(g: SideInfoGraph, b: int, k: int, m: int, seed=0) -> AdversarialInstanceT4:
    """Budgeted hard instance over a side-information graph.

    Picks the ⌊b/2⌋ vertices with the smallest resistance degree
    r(v) = Σ_{(v,w)∈E} r(v,w) (ties by id) — their total resistance
    degree is under b, so any cut touching only them is affordable.
    Splits (a prefix of) that set into z blocks of size ⌊n²/2m⌋, samples
    the m training pairs, and keeps of each block the vertices with no
    sampled pair to their own block (isolated in the induced pair graph;
    self-pairs disqualify too).  Each surviving set is split uniformly at
    random into two classes; everything else shares one background class.
    The training pairs are labeled by that final clustering, so no sampled
    pair joins two vertices of one planted set — the labels carry no
    information about the random splits — yet Φ^R(y) ≤ b.
    """
    n = g.n
    if not 4 <= b <= n - 1:
        raise ValueError(f"b must lie in 4..{n - 1}")
    if k <= 2:
        raise ValueError("k must exceed 2")
    if m < 1 or 4 * m >= n * n:
        raise ValueError("m must lie in 1..n^2/4 (exclusive)")

    solver = ResistanceSolver(g)
    table = solver.resistances(list(g.edges()))
    r_deg = np.zeros(n)
    for (u, v), r in table.values.items():
        r_deg[u] += r
        r_deg[v] += r
    v_b = np.argsort(r_deg, kind="stable")[: b // 2].astype(np.int64)

    block_size = (n * n) // (2 * m)
    if block_size < 1 or v_b.size < 1:
        raise ValueError(f"cannot form any block: |V_b|={v_b.size}, block size {block_size}")
    z_nominal = min(max((b * m) // (n * n), 1), (k - 1) // 2)
    if v_b.size < block_size:
        z = 1
        blocks = [v_b]
    else:
        z = min(z_nominal, v_b.size // block_size)
        blocks = [v_b[j * block_size : (j + 1) * block_size] for j in range(z)]

    rng = make_rng(seed)
    vs = rng.integers(0, n, size=m, dtype=np.int64)
    ws = rng.integers(0, n, size=m, dtype=np.int64)
    h_sets = []
    for blk in blocks:
        in_blk = np.zeros(n, dtype=bool)
        in_blk[blk] = True
        intra = in_blk[vs] & in_blk[ws]
        hit = np.zeros(n, dtype=bool)
        hit[vs[intra]] = True
        hit[ws[intra]] = True
        h_sets.append(blk[~hit[blk]])
    h_sets = tuple(h_sets)

    raw = np.full(n, 2 * z, dtype=np.int64)  # background class
    for j, h in enumerate(h_sets):
        perm = rng.permutation(h)
        half = (h.size + 1) // 2
        raw[perm[:half]] = 2 * j
        raw[perm[half:]] = 2 * j + 1
    # compact away classes emptied by small/empty h_sets
    ids, first = np.unique(raw, return_index=True)
    remap = np.zeros(int(raw.max()) + 1, dtype=np.int64)
    remap[ids[np.argsort(first)]] = np.arange(ids.size)
    y = Clustering(remap[raw])

    ys = (raw[vs] == raw[ws]).astype(np.int64)
    s = TrainingSet.from_arrays(n, vs, ws, ys)
    phi_r = resistance_weighted_cut_size(g, y, solver=solver)

    # construction guarantees; violations are bugs, not data errors
    if y.k > k:
        raise RuntimeError(f"class count {y.k} exceeds k={k}")
    if phi_r > b:
        raise RuntimeError(f"resistance-weighted cut-size {phi_r} exceeds budget {b}")
    for h in h_sets:
        if h.size and (np.isin(vs, h) & np.isin(ws, h)).any():
            raise RuntimeError("a training pair joins two members of a planted set")
    return AdversarialInstanceT4(
        y=y, s=s, h_sets=h_sets, v_b=v_b, z=z, z_nominal=z_nominal,
        block_size=block_size, b=int(b), k=int(k), m=int(m), phi_r=float(phi_r),
    )


def erdos_renyi(n: int, p: float, seed=0) -> SimilarityGraph:
    """Each unordered pair present independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = make_rng(seed)
    total = n * (n - 1) // 2
    idx = np.nonzero(rng.random(total) < p)[0]
    us, vs = _pair_index_to_uv(n, idx)
    return SimilarityGraph._from_codes(n, us * np.int64(n) + vs)


def isolated_count(g: SimilarityGraph) -> int:
    """Number of items with no similar partner."""
    return int((g.degrees == 0).sum())
