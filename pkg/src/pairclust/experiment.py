"""Seeded experiment harness.

Runs batches of seeded trials, measures misclassification error against
the planted truth, evaluates the error-bound expressions the algorithms
are designed to satisfy, and emits one self-contained record per trial
(replayable from config + seed).  Records serialize to CSV rows in a
fixed column order, or to JSON lines.

Trial parallelism is capped by the PAIRCLUST_THREADS environment variable
(default 1); records are sorted deterministically before emission either
way.
"""

import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction

from .core import clustering_to_similarity
from .gen import perturb_similarity, planted_clustering, sample_training_set
from .metrics import hamming_distance, misclassification_error
from .rgca import DEFAULT_A, rgca
from .rng import trial_rng
from .saca import saca

__all__ = [
    "ExperimentRecord",
    "rgca_error_bound",
    "adversarial_error_floor",
    "saca_error_shape",
    "pipeline_error_shape",
    "run_saca_scaling",
    "run_rgca_robustness",
    "records_to_csv",
    "records_to_jsonl",
    "summarize_by_param",
    "CSV_COLUMNS",
]


# ---------------------------------------------------------------------------
# bound expressions (exact where the guarantee is exact, unit-constant
# shape values where only the growth rate is specified)

def rgca_error_bound(sizes, ha: int) -> Fraction:
    """Exact error budget for the greedy clusterer on a corrupted input:
    min over j of (12/d_j · ha + Σ_{i<j} d_i), cluster sizes ascending."""
    sizes = sorted(int(d) for d in sizes)
    if not sizes or sizes[0] <= 0:
        raise ValueError("sizes must be a nonempty list of positive counts")
    best = None
    prefix = 0
    for d_j in sizes:
        term = Fraction(12 * ha, d_j) + prefix
        if best is None or term < best:
            best = term
        prefix += d_j
    return best


def adversarial_error_floor(sizes, sigma: int) -> Fraction:
    """Error any consistent clusterer must pay on the budgeted adversarial
    similarity graph: min over j of (σ/(2 d_j) − 1 + ¼ Σ_{i<j} d_i), sizes
    ascending.  The full guarantee is a dichotomy — the error is at least
    this value or at least n/2."""
    sizes = sorted(int(d) for d in sizes)
    if not sizes or sizes[0] <= 0:
        raise ValueError("sizes must be a nonempty list of positive counts")
    best = None
    prefix = 0
    for d_j in sizes:
        term = Fraction(sigma, 2 * d_j) - 1 + Fraction(prefix, 4)
        if best is None or term < best:
            best = term
        prefix += d_j
    return best


def saca_error_shape(n: int, m: int, k: int) -> float:
    """Unit-constant shape of the expected-error guarantee for the
    merge-by-positive-pairs clusterer: (n²/m)·k·log(n²/m)."""
    if m <= 0:
        return math.inf
    ratio = n * n / m
    return ratio * k * math.log(max(ratio, 1.0))


def pipeline_error_shape(n: int, m: int, k_or_sizes, phi_r: float) -> float:
    """Unit-constant shape of the prediction-pipeline error bound:
    min over j of ((1/d_j)(n²/m)·Φ^R·log³n + Σ_{i<j} d_i)."""
    if isinstance(k_or_sizes, int):
        sizes = [n / k_or_sizes] * k_or_sizes
    else:
        sizes = sorted(float(d) for d in k_or_sizes)
    log3 = math.log(n) ** 3 if n > 1 else 0.0
    best = math.inf
    prefix = 0.0
    for d_j in sizes:
        best = min(best, (n * n / m) * phi_r * log3 / d_j + prefix)
        prefix += d_j
    return best


# ---------------------------------------------------------------------------
# per-trial records

CSV_COLUMNS = [
    "algorithm", "n", "k", "sizes", "m", "flips", "a", "seed", "trial",
    "er", "ha", "phi", "phi_r", "error_bound", "scaling_shape",
    "violation", "runtime_ms",
]


@dataclass(frozen=True)
class ExperimentRecord:
    """One trial: config echo, observations, bound values, runtime."""

    algorithm: str
    n: int
    k: int
    sizes: tuple
    seed: int
    trial: int
    runtime_ms: float
    m: int | None = None
    flips: int | None = None
    a: str | None = None
    er: int | None = None
    ha: int | None = None
    phi: float | None = None
    phi_r: float | None = None
    error_bound: float | None = None
    scaling_shape: float | None = None
    violation: bool | None = None

    def to_row(self) -> list[str]:
        def cell(v):
            if v is None:
                return ""
            if isinstance(v, tuple):
                return ";".join(str(x) for x in v)
            if isinstance(v, bool):
                return str(int(v))
            if isinstance(v, float):
                return repr(v)
            return str(v)

        d = asdict(self)
        return [cell(d[c]) for c in CSV_COLUMNS]


def records_to_csv(records) -> str:
    lines = [",".join(CSV_COLUMNS)]
    lines.extend(",".join(r.to_row()) for r in records)
    return "\n".join(lines) + "\n"


def records_to_jsonl(records, pretty: bool = False) -> str:
    out = []
    for r in records:
        d = {k: (list(v) if isinstance(v, tuple) else v) for k, v in asdict(r).items()}
        out.append(json.dumps(d, indent=2 if pretty else None, sort_keys=True))
    return "\n".join(out) + "\n"


def summarize_by_param(records, param: str):
    """Deterministic per-parameter-value mean/stddev of observed error:
    list of (value, trials, mean_er, stddev_er), ascending by value."""
    groups: dict = {}
    for r in sorted(records, key=lambda r: (getattr(r, param), r.trial)):
        groups.setdefault(getattr(r, param), []).append(r.er)
    out = []
    for value, ers in sorted(groups.items()):
        mean = sum(ers) / len(ers)
        var = sum((e - mean) ** 2 for e in ers) / len(ers)
        out.append((value, len(ers), mean, math.sqrt(var)))
    return out


# ---------------------------------------------------------------------------
# trial runners

def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get("PAIRCLUST_THREADS", "1")))
    except ValueError:
        return 1


def _run_tasks(fn, tasks):
    threads = _thread_count()
    if threads == 1:
        return [fn(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, tasks))


def run_saca_scaling(n: int, k: int, m_list, trials: int, seed: int = 0):
    """For each m and trial: plant a balanced clustering, sample m labeled
    pairs, cluster by positive merges, measure error."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    m_list = [int(m) for m in m_list]

    def one(task):
        m, t = task
        rng = trial_rng(seed, m, t)
        d = planted_clustering(n, k=k, seed=rng)
        s = sample_training_set(d, m, seed=rng)
        t0 = time.perf_counter()
        c = saca(n, s)
        dt = (time.perf_counter() - t0) * 1000.0
        return ExperimentRecord(
            algorithm="saca", n=n, k=k, sizes=tuple(int(x) for x in sorted(d.sizes)),
            seed=seed, trial=t, m=m, er=misclassification_error(c, d),
            scaling_shape=saca_error_shape(n, m, k), runtime_ms=dt,
        )

    tasks = [(m, t) for m in m_list for t in range(trials)]
    records = _run_tasks(one, tasks)
    return sorted(records, key=lambda r: (r.m, r.trial))


def run_rgca_robustness(n: int, sizes, flips_list, trials: int, seed: int = 0, a=DEFAULT_A):
    """For each flip count and trial: plant a clustering with the given
    sizes, toggle that many similarity pairs, cluster greedily, and check
    the observed error against the exact bound.  A violated bound flags
    the record rather than aborting the batch."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    sizes = tuple(int(d) for d in sizes)
    a = Fraction(a)
    flips_list = [int(f) for f in flips_list]

    def one(task):
        flips, t = task
        rng = trial_rng(seed, flips, t)
        d = planted_clustering(n, sizes=sizes, seed=rng)
        p = perturb_similarity(d, flips, seed=rng)
        t0 = time.perf_counter()
        c = rgca(p, a)
        dt = (time.perf_counter() - t0) * 1000.0
        ha = hamming_distance(p, clustering_to_similarity(d))
        er = misclassification_error(c, d)
        bound = rgca_error_bound(sizes, ha)
        return ExperimentRecord(
            algorithm="rgca", n=n, k=len(sizes), sizes=tuple(sorted(sizes)),
            seed=seed, trial=t, flips=flips, a=str(a), er=er, ha=ha,
            error_bound=float(bound), violation=bool(er > bound), runtime_ms=dt,
        )

    tasks = [(f, t) for f in flips_list for t in range(trials)]
    records = _run_tasks(one, tasks)
    return sorted(records, key=lambda r: (r.flips, r.trial))
