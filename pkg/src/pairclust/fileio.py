"""Readers and writers for the three on-disk formats.

- Clustering: one line per item, ``<item_id>\\t<cluster_id>``, UTF-8, LF.
- Graph (similarity or side-information): header ``n=<count>``, then one
  ``u,v`` edge per line.
- Training set: header ``n=<count>,m=<count>``, then CSV rows ``u,v,y``
  with y in {0,1}, order-preserving.

Readers accept a path or an open text stream; writers likewise.  Malformed
input raises ``FileFormatError`` with a line number.
"""

import io
from contextlib import contextmanager

import numpy as np

from .core import Clustering, SideInfoGraph, SimilarityGraph, TrainingSet

__all__ = [
    "FileFormatError",
    "read_clustering",
    "write_clustering",
    "read_similarity_graph",
    "read_side_info_graph",
    "write_graph",
    "read_training_set",
    "write_training_set",
]


class FileFormatError(ValueError):
    """Raised when an input file does not match its declared format."""


@contextmanager
def _opened(f, mode):
    if hasattr(f, "read") or hasattr(f, "write"):
        yield f
    else:
        fh = open(f, mode, encoding="utf-8", newline="")
        try:
            yield fh
        finally:
            fh.close()


def _parse_int_fields(text, n_cols, what):
    """Parse a homogeneous integer table (fast path via numpy's C reader)."""
    if not text.strip():
        return np.empty((0, n_cols), dtype=np.int64)
    try:
        arr = np.loadtxt(
            io.StringIO(text), dtype=np.int64, delimiter=",", ndmin=2
        )
    except ValueError as e:
        raise FileFormatError(f"malformed {what} rows: {e}") from None
    if arr.shape[1] != n_cols:
        raise FileFormatError(
            f"{what} rows must have {n_cols} comma-separated fields, "
            f"got {arr.shape[1]}"
        )
    return arr


def _read_header(line, keys, where):
    parts = line.strip().split(",")
    if len(parts) != len(keys):
        raise FileFormatError(f"{where}: expected header {','.join(k + '=<count>' for k in keys)}")
    out = []
    for part, key in zip(parts, keys):
        name, _, value = part.partition("=")
        if name.strip() != key or not value.strip().lstrip("-").isdigit():
            raise FileFormatError(f"{where}: expected `{key}=<count>` in header, got {part!r}")
        out.append(int(value))
    return out


def read_clustering(f) -> Clustering:
    with _opened(f, "r") as fh:
        items, cids = [], []
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise FileFormatError(
                    f"line {lineno}: expected `item<TAB>cluster`, got {line!r}"
                )
            try:
                items.append(int(fields[0]))
                cids.append(int(fields[1]))
            except ValueError:
                raise FileFormatError(f"line {lineno}: non-integer field in {line!r}") from None
    if not items:
        raise FileFormatError("clustering file has no rows")
    n = len(items)
    item_arr = np.array(items, dtype=np.int64)
    cid_arr = np.array(cids, dtype=np.int64)
    if sorted(items) != list(range(n)):
        raise FileFormatError(f"item ids must be exactly 0..{n - 1}, each once")
    labels = np.empty(n, dtype=np.int64)
    labels[item_arr] = cid_arr
    if labels.min() < 0:
        raise FileFormatError("cluster ids must be nonnegative")
    # accept sparse external ids by compacting in order of first appearance
    if np.bincount(labels).min() == 0:
        ids, first = np.unique(labels, return_index=True)
        remap = {int(c): i for i, c in enumerate(ids[np.argsort(first)])}
        labels = np.array([remap[int(c)] for c in labels], dtype=np.int64)
    return Clustering(labels)


def write_clustering(c: Clustering, f):
    with _opened(f, "w") as fh:
        fh.write("\n".join(f"{v}\t{c.labels[v]}" for v in range(c.n)))
        fh.write("\n")


def _read_edge_file(f, what):
    with _opened(f, "r") as fh:
        header = fh.readline()
        if not header.strip():
            raise FileFormatError(f"{what} file: missing `n=<count>` header")
        (n,) = _read_header(header, ["n"], f"{what} file")
        arr = _parse_int_fields(fh.read(), 2, "edge")
    return n, arr


def read_similarity_graph(f) -> SimilarityGraph:
    n, arr = _read_edge_file(f, "similarity graph")
    try:
        return SimilarityGraph(n, arr)
    except ValueError as e:
        raise FileFormatError(str(e)) from None


def read_side_info_graph(f) -> SideInfoGraph:
    n, arr = _read_edge_file(f, "side-information graph")
    try:
        return SideInfoGraph(n, arr)
    except ValueError as e:
        raise FileFormatError(str(e)) from None


def write_graph(g, f):
    """Write a SimilarityGraph or SideInfoGraph in the shared edge format."""
    us, vs = g.pair_arrays() if isinstance(g, SimilarityGraph) else g.edge_arrays()
    with _opened(f, "w") as fh:
        fh.write(f"n={g.n}\n")
        for u, v in zip(us.tolist(), vs.tolist()):
            fh.write(f"{u},{v}\n")


def read_training_set(f) -> TrainingSet:
    with _opened(f, "r") as fh:
        header = fh.readline()
        if not header.strip():
            raise FileFormatError("training file: missing `n=<count>,m=<count>` header")
        n, m = _read_header(header, ["n", "m"], "training file")
        arr = _parse_int_fields(fh.read(), 3, "training")
    if arr.shape[0] != m:
        raise FileFormatError(
            f"training file: header declares m={m} but found {arr.shape[0]} rows"
        )
    try:
        return TrainingSet.from_arrays(n, arr[:, 0], arr[:, 1], arr[:, 2])
    except ValueError as e:
        raise FileFormatError(str(e)) from None


def write_training_set(s: TrainingSet, f):
    with _opened(f, "w") as fh:
        fh.write(f"n={s.n},m={s.m}\n")
        if s.m:
            np.savetxt(fh, np.column_stack([s.vs, s.ws, s.ys]), fmt="%d", delimiter=",")
