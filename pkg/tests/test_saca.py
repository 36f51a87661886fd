"""Union-find clusterer against the breadth-first component oracle."""

import numpy as np
import pytest

from pairclust import (
    Clustering,
    TrainingSet,
    clustering_to_similarity,
    misclassification_error,
    planted_clustering,
    positive_component_oracle,
    saca,
    sample_training_set,
)
from pairclust.saca import UnionFind
from pairclust.rng import make_rng


class TestUnionFind:
    def test_basic(self):
        uf = UnionFind(5)
        assert uf.count == 5
        assert uf.union(0, 1)
        assert not uf.union(1, 0)  # redundant
        assert uf.union(3, 4)
        assert uf.count == 3
        assert uf.find(0) == uf.find(1)
        assert uf.find(2) != uf.find(0)

    def test_find_idempotent(self):
        uf = UnionFind(6)
        for a, b in [(0, 1), (1, 2), (4, 5)]:
            uf.union(a, b)
        for v in range(6):
            assert uf.find(v) == uf.find(uf.find(v))

    def test_to_clustering(self):
        uf = UnionFind(4)
        uf.union(0, 3)
        assert uf.to_clustering() == Clustering([0, 1, 2, 0])


class TestSaca:
    def test_empty_training_set(self):
        assert saca(4, TrainingSet(4)) == Clustering(np.arange(4))

    def test_hand_replay(self):
        s = TrainingSet(4, [(0, 1, 1), (2, 3, 1), (0, 2, 0)])
        assert saca(4, s) == Clustering.from_clusters([[0, 1], [2, 3]])

    def test_spanning_positives_recover_exactly(self):
        d = planted_clustering(40, sizes=[15, 10, 15], seed=2)
        entries = []
        for members in d.clusters:
            chain = members.tolist()
            entries += [(u, v, 1) for u, v in zip(chain, chain[1:])]
        entries += [(0, 20, 0), (5, 5, 1)]
        assert saca(40, TrainingSet(40, entries)) == d

    def test_matches_bfs_oracle_random(self):
        for seed in range(300):
            rng = make_rng(seed)
            n = int(rng.integers(1, 100))
            m = int(rng.integers(0, 300))
            vs = rng.integers(0, n, size=m)
            ws = rng.integers(0, n, size=m)
            ys = rng.integers(0, 2, size=m)
            s = TrainingSet.from_arrays(n, vs, ws, ys)
            assert saca(n, s) == positive_component_oracle(n, s)

    def test_order_independent(self):
        rng = make_rng(5)
        d = planted_clustering(30, k=4, seed=1)
        s = sample_training_set(d, 60, seed=9)
        base = saca(30, s)
        for _ in range(5):
            perm = rng.permutation(s.m)
            shuffled = TrainingSet.from_arrays(30, s.vs[perm], s.ws[perm], s.ys[perm])
            assert saca(30, shuffled) == base

    def test_duplicates_and_self_pairs_are_noops(self):
        s1 = TrainingSet(5, [(0, 1, 1), (0, 1, 1), (2, 2, 1), (3, 4, 1)])
        s2 = TrainingSet(5, [(0, 1, 1), (3, 4, 1)])
        assert saca(5, s1) == saca(5, s2)

    def test_no_false_merges_under_consistent_labels(self):
        for seed in range(20):
            d = planted_clustering(50, k=6, seed=seed)
            s = sample_training_set(d, 120, seed=seed + 100)
            c = saca(50, s)
            # every output cluster sits inside one true cluster
            for members in c.clusters:
                assert len(set(d.labels[members].tolist())) == 1
            # so the optimal bijection keeps the largest fragment of each
            # true cluster and the error is the fragment surplus
            frags = {}
            for members in c.clusters:
                true = int(d.labels[members[0]])
                frags.setdefault(true, []).append(len(members))
            assert misclassification_error(c, d) == sum(
                sum(sizes) - max(sizes) for sizes in frags.values()
            )

    def test_mean_error_nonincreasing_in_m(self):
        means = []
        for m in [256, 1024, 4096]:
            ers = []
            for t in range(15):
                d = planted_clustering(64, k=4, seed=t)
                s = sample_training_set(d, m, seed=1000 * m + t)
                ers.append(misclassification_error(saca(64, s), d))
            means.append(sum(ers) / len(ers))
        assert means[0] >= means[1] >= means[2]
        assert means[2] == 0  # m = n^2 draws nearly every pair

    def test_n_mismatch_rejected(self):
        with pytest.raises(ValueError):
            saca(5, TrainingSet(4))
        with pytest.raises(ValueError):
            positive_component_oracle(5, TrainingSet(4))
