"""Command-line interface.

One binary, subcommand routing:

    pairclust rgca        --input graph [--a 2/3] [--output out.tsv]
    pairclust saca        --pairs train.csv [--n N] [--output out.tsv]
    pairclust metrics     A B [--er] [--ha] [--anomalies] [--b 5/6]
    pairclust resistance  --graph g.txt --clustering c.tsv
    pairclust gen         planted|pairs|perturb|adv-t2|adv-t4|er ...
    pairclust experiment  --mode saca-scaling|rgca-robustness ...

Exit codes: 0 success, 1 usage error, 2 data error.  Diagnostics go to
stderr; data goes to stdout unless --output is given.  Seeds default to 0
so bare invocations are reproducible.
"""

import argparse
import json
import sys
from fractions import Fraction

from .core import Clustering, SimilarityGraph, clustering_to_similarity, similarity_is_clustering
from .experiment import records_to_csv, records_to_jsonl, run_rgca_robustness, run_saca_scaling
from .fileio import (
    FileFormatError,
    read_clustering,
    read_side_info_graph,
    read_similarity_graph,
    read_training_set,
    write_clustering,
    write_graph,
    write_training_set,
)
from .gen import adversarial_t2, adversarial_t4, erdos_renyi, perturb_similarity, planted_clustering, sample_training_set
from .graph import ResistanceSolver, cut_size, resistance_sum_check, resistance_weighted_cut_size
from .metrics import count_anomalies, hamming_distance, misclassification_error
from .rgca import DEFAULT_A, rgca
from .saca import saca

__all__ = ["main"]


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _print_json(obj, pretty: bool, output):
    text = json.dumps(obj, indent=2 if pretty else None, sort_keys=True) + "\n"
    _write_text(text, output)


def _write_text(text: str, output):
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _out_stream(output):
    return output if output else sys.stdout


def _sniff_read(path):
    """Clustering files are bare `item<TAB>cluster` rows; graph files carry
    an `n=` header.  Return whichever object the file holds."""
    with open(path, encoding="utf-8") as fh:
        first = fh.readline()
    if first.startswith("n="):
        return read_similarity_graph(path)
    return read_clustering(path)


def _as_clustering(obj, name) -> Clustering:
    if isinstance(obj, Clustering):
        return obj
    c = similarity_is_clustering(obj)
    if c is None:
        raise FileFormatError(f"{name}: similarity graph is not a disjoint union of cliques")
    return c


def _as_graph(obj) -> SimilarityGraph:
    return obj if isinstance(obj, SimilarityGraph) else clustering_to_similarity(obj)


# ---------------------------------------------------------------------------
# subcommand handlers

def _cmd_rgca(args):
    g = read_similarity_graph(args.input)
    write_clustering(rgca(g, args.a), _out_stream(args.output))


def _cmd_saca(args):
    s = read_training_set(args.pairs)
    n = args.n if args.n is not None else s.n
    write_clustering(saca(n, s), _out_stream(args.output))


def _cmd_metrics(args):
    a_obj = _sniff_read(args.file_a)
    b_obj = _sniff_read(args.file_b)
    want_all = not (args.er or args.ha or args.anomalies)
    result = {}
    if args.er or want_all:
        result["er"] = misclassification_error(
            _as_clustering(a_obj, args.file_a), _as_clustering(b_obj, args.file_b)
        )
    if args.ha or want_all:
        result["ha"] = hamming_distance(_as_graph(a_obj), _as_graph(b_obj))
    if args.anomalies:
        report = count_anomalies(_as_graph(a_obj), _as_clustering(b_obj, args.file_b), args.b)
        result["anomalies"] = report.count
        result["anomaly_items"] = list(report.anomalies)
        result["b"] = str(report.b)
    _print_json(result, args.json, args.output)


def _cmd_resistance(args):
    g = read_side_info_graph(args.graph)
    y = read_clustering(args.clustering)
    solver = ResistanceSolver(g)
    result = {
        "n": g.n,
        "edges": g.edge_count,
        "phi": cut_size(g, y),
        "phi_r": resistance_weighted_cut_size(g, y, solver=solver),
        "resistance_sum_residual": resistance_sum_check(g) - (g.n - 1),
    }
    _print_json(result, args.json, args.output)


def _cmd_gen_planted(args):
    c = planted_clustering(args.n, sizes=args.sizes, k=args.k, seed=args.seed)
    write_clustering(c, _out_stream(args.output))


def _cmd_gen_pairs(args):
    d = read_clustering(args.clustering)
    write_training_set(sample_training_set(d, args.m, seed=args.seed), _out_stream(args.output))


def _cmd_gen_perturb(args):
    d = read_clustering(args.clustering)
    write_graph(perturb_similarity(d, args.flips, seed=args.seed), _out_stream(args.output))


def _cmd_gen_adv_t2(args):
    d = read_clustering(args.clustering)
    write_graph(adversarial_t2(d, args.sigma), _out_stream(args.output))


def _cmd_gen_adv_t4(args):
    g = read_side_info_graph(args.graph)
    inst = adversarial_t4(g, args.b, args.k, args.m, seed=args.seed)
    if args.out_clustering:
        write_clustering(inst.y, args.out_clustering)
    if args.out_pairs:
        write_training_set(inst.s, args.out_pairs)
    meta = {
        "n": g.n, "b": inst.b, "k": inst.k, "m": inst.m, "seed": args.seed,
        "z": inst.z, "z_nominal": inst.z_nominal, "block_size": inst.block_size,
        "phi_r": inst.phi_r, "v_b_size": int(inst.v_b.size),
        "h_sizes": [int(h.size) for h in inst.h_sets],
        "classes": inst.y.k,
    }
    _print_json(meta, args.json, args.output)


def _cmd_gen_er(args):
    write_graph(erdos_renyi(args.n, args.p, seed=args.seed), _out_stream(args.output))


def _cmd_experiment(args):
    cfg = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            cfg = json.load(fh)
    for key in ("mode", "n", "k", "m_list", "trials", "seed", "sizes", "flips_list", "a"):
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    mode = cfg.pop("mode", None)
    cfg.setdefault("seed", 0)
    cfg.setdefault("trials", 1)
    try:
        if mode == "saca-scaling":
            records = run_saca_scaling(
                n=cfg["n"], k=cfg["k"], m_list=cfg["m_list"],
                trials=cfg["trials"], seed=cfg["seed"],
            )
        elif mode == "rgca-robustness":
            records = run_rgca_robustness(
                n=cfg["n"], sizes=cfg["sizes"], flips_list=cfg["flips_list"],
                trials=cfg["trials"], seed=cfg["seed"],
                a=Fraction(cfg.get("a") or DEFAULT_A),
            )
        else:
            raise ValueError(f"unknown experiment mode: {mode!r}")
    except KeyError as e:
        raise ValueError(f"experiment config missing required key {e}") from None
    if args.format == "jsonl":
        _write_text(records_to_jsonl(records, pretty=args.json), args.output)
    else:
        _write_text(records_to_csv(records), args.output)


# ---------------------------------------------------------------------------
# parser

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pairclust",
        description="Pairwise clustering from noisy similarity data: "
        "clusterers, distances, graph quantities, generators, experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")

    p = sub.add_parser("rgca", help="cluster a similarity graph greedily with Jaccard robustification")
    p.add_argument("--input", required=True, help="similarity graph file")
    p.add_argument("--a", type=Fraction, default=DEFAULT_A, help="distance parameter in [0,1] (default 2/3)")
    p.add_argument("--output", help="clustering file (default stdout)")
    p.set_defaults(func=_cmd_rgca)

    p = sub.add_parser("saca", help="cluster by merging positively labeled training pairs")
    p.add_argument("--pairs", required=True, help="training set file")
    p.add_argument("--n", type=int, help="item count (default: file header)")
    p.add_argument("--output", help="clustering file (default stdout)")
    p.set_defaults(func=_cmd_saca)

    p = sub.add_parser("metrics", help="distances between two clustering/graph files")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--er", action="store_true", help="misclassification error (needs clusterings)")
    p.add_argument("--ha", action="store_true", help="Hamming distance over ordered pairs")
    p.add_argument("--anomalies", action="store_true", help="count Jaccard-far items (A=graph, B=clustering)")
    p.add_argument("--b", type=Fraction, default=Fraction(5, 6), help="anomaly threshold (default 5/6)")
    p.add_argument("--json", action="store_true", help="pretty-print JSON")
    p.add_argument("--output", help="write JSON here instead of stdout")
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("resistance", help="cut-size, resistance-weighted cut-size, and the n-1 identity residual")
    p.add_argument("--graph", required=True, help="side-information graph file (connected)")
    p.add_argument("--clustering", required=True, help="clustering file")
    p.add_argument("--json", action="store_true", help="pretty-print JSON")
    p.add_argument("--output", help="write JSON here instead of stdout")
    p.set_defaults(func=_cmd_resistance)

    p = sub.add_parser("gen", help="instance generators")
    gsub = p.add_subparsers(dest="mode", required=True, metavar="MODE")

    q = gsub.add_parser("planted", help="random clustering with given sizes or k")
    q.add_argument("--n", type=int, required=True)
    grp = q.add_mutually_exclusive_group(required=True)
    grp.add_argument("--sizes", type=_int_list, help="comma-separated cluster sizes")
    grp.add_argument("--k", type=int, help="cluster count, balanced sizes")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--output")
    q.set_defaults(func=_cmd_gen_planted)

    q = gsub.add_parser("pairs", help="uniform labeled training pairs from a clustering")
    q.add_argument("--clustering", required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--output")
    q.set_defaults(func=_cmd_gen_pairs)

    q = gsub.add_parser("perturb", help="toggle random pairs of a clustering's similarity graph")
    q.add_argument("--clustering", required=True)
    q.add_argument("--flips", type=int, required=True)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--output")
    q.set_defaults(func=_cmd_gen_perturb)

    q = gsub.add_parser("adv-t2", help="budgeted worst-case similarity corruption")
    q.add_argument("--clustering", required=True)
    q.add_argument("--sigma", type=int, required=True, help="Hamming budget (ordered-pair count)")
    q.add_argument("--output")
    q.set_defaults(func=_cmd_gen_adv_t2)

    q = gsub.add_parser("adv-t4", help="cut-budgeted hard instance over a side-information graph")
    q.add_argument("--graph", required=True)
    q.add_argument("--b", type=int, required=True, help="resistance-weighted cut budget")
    q.add_argument("--k", type=int, required=True, help="class budget (must exceed 2)")
    q.add_argument("--m", type=int, required=True, help="training pairs to sample (< n^2/4)")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--out-clustering", help="write the labeling here")
    q.add_argument("--out-pairs", help="write the training set here")
    q.add_argument("--json", action="store_true", help="pretty-print the meta JSON")
    q.add_argument("--output", help="write meta JSON here instead of stdout")
    q.set_defaults(func=_cmd_gen_adv_t4)

    q = gsub.add_parser("er", help="Erdős–Rényi similarity graph")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--p", type=float, required=True)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--output")
    q.set_defaults(func=_cmd_gen_er)

    p = sub.add_parser("experiment", help="seeded trial batches with bound checks")
    p.add_argument("--mode", choices=["saca-scaling", "rgca-robustness"])
    p.add_argument("--config", help="JSON config file; flags override its keys")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--m-list", dest="m_list", type=_int_list, help="comma-separated m values")
    p.add_argument("--sizes", type=_int_list, help="comma-separated cluster sizes")
    p.add_argument("--flips-list", dest="flips_list", type=_int_list, help="comma-separated flip counts")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--a", help="distance parameter for the greedy clusterer")
    p.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    p.add_argument("--json", action="store_true", help="pretty-print (jsonl format)")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse exits 2 on usage errors; remap to 1
        code = e.code if e.code is not None else 0
        return 0 if code == 0 else 1
    try:
        rc = args.func(args)
        return 0 if rc is None else int(rc)
    except BrokenPipeError:
        return 0
    except (FileFormatError, ValueError, RuntimeError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
