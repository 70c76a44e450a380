"""Command line front end: evaluate, explain, predict, gen-synth.

All diagnostics go to stderr; machine-readable output (--json) and the human
lines are rendered from the same result dict, so the numbers always agree.
"""

from __future__ import annotations

import argparse
import json
import sys

from ._parallel import resolve_workers
from .explainer import content_coverage, network_limits, render_limit_report
from .gff import GffError, load_fact_file
from .inference import (
    EmptyTestSetError,
    EmptyTrainingSetError,
    NotATestNodeError,
    Params,
    UnknownNodeError,
    evaluate_accuracy,
    infer_with_trace,
    most_freq_class,
    select_diverse_peers,
)
from .similarity import MEASURES
from .synth import SynthConfig, write_synth

NEIGHBOR_KIND_CHOICES = ("plain", "diverse", "none")


def _add_common_flags(p: argparse.ArgumentParser):
    p.add_argument("--facts", required=True, help="path to the GFF fact file")
    p.add_argument("--strict", action="store_true", help="reject clauses other than at/5")
    p.add_argument("--workers", type=int, default=None, help="parallel workers (default: TGL_WORKERS or all CPUs)")
    p.add_argument("--json", action="store_true", help="emit one JSON object instead of text")


def _add_param_flags(p: argparse.ArgumentParser):
    p.add_argument("--similarity", choices=MEASURES, default="jaccard_node")
    p.add_argument("--max-neighbor-nodes", type=int, default=100, metavar="K")
    p.add_argument("--max-peer-nodes", type=int, default=4, metavar="K")
    p.add_argument("--neighbor-kind", choices=NEIGHBOR_KIND_CHOICES, default="plain")
    p.add_argument("--max-termlet-size", type=int, default=7, metavar="K")
    p.add_argument("--forest-depth", type=int, default=1, metavar="D")


def _params_from(args) -> Params:
    return Params(
        similarity=args.similarity,
        max_neighbor_nodes=args.max_neighbor_nodes,
        max_peer_nodes=args.max_peer_nodes,
        neighbor_kind=args.neighbor_kind,
        max_termlet_size=args.max_termlet_size,
        forest_split_depth=args.forest_depth,
    )


def _load(args):
    dataset = load_fact_file(args.facts, strict=args.strict)
    if dataset.skipped_clauses:
        print(f"warning: skipped {dataset.skipped_clauses} non-at/5 clauses", file=sys.stderr)
    return dataset


def _emit(args, result: dict, lines: list[str]) -> int:
    if args.json:
        print(json.dumps(result))
    else:
        for line in lines:
            print(line)
    return 0


def cmd_evaluate(args) -> int:
    params = _params_from(args)
    dataset = _load(args)
    res = evaluate_accuracy(dataset, params, workers=resolve_workers(args.workers))
    result = {
        "accuracy": res.accuracy,
        "correct": res.correct,
        "total": res.total,
        "elapsed": res.elapsed,
        "params": params.as_dict(),
    }
    echo = " ".join(f"{k}={v}" for k, v in params.as_dict().items())
    lines = [
        f"accuracy {res.accuracy:.4f}",
        f"correct {res.correct}/{res.total}",
        f"elapsed {res.elapsed:.2f}s",
        f"params {echo}",
    ]
    return _emit(args, result, lines)


def cmd_explain_network(args) -> int:
    dataset = _load(args)
    report = network_limits(dataset)
    result = {"kind": report.kind, "guessable": report.guessable, "total": report.total, "ratio": report.ratio}
    return _emit(args, result, [render_limit_report(report)])


def cmd_explain_content(args) -> int:
    params = _params_from(args)
    dataset = _load(args)
    report = content_coverage(
        dataset,
        args.similarity,
        args.threshold,
        params,
        sample=args.sample,
        peer_side=args.peer_side,
        workers=resolve_workers(args.workers),
    )
    result = {
        "kind": report.kind,
        "measure": report.measure,
        "threshold": report.threshold,
        "guessable": report.guessable,
        "total": report.total,
        "ratio": report.ratio,
    }
    return _emit(args, result, [render_limit_report(report)])


def cmd_predict(args) -> int:
    params = _params_from(args)
    dataset = _load(args)
    if args.node not in dataset:
        raise UnknownNodeError(f"unknown node id {args.node}")
    node = dataset[args.node]
    pool = select_diverse_peers(dataset, params)
    freq = most_freq_class(dataset) if dataset.label_histogram else None
    stage, evidence, label = infer_with_trace(dataset, node, pool, params, freq_class=freq)
    result = {
        "node": node.id,
        "stage": stage,
        "evidence": [[wl.label, wl.weight] for wl in evidence],
        "label": label,
        "params": params.as_dict(),
    }
    lines = [f"node {node.id}", f"stage {stage}", "evidence"]
    lines += [f"  label {wl.label} weight {wl.weight:g}" for wl in evidence]
    lines.append(f"label {label}")
    if args.reveal:
        result["true_label"] = node.label
        lines.append(f"true_label {node.label}")
    return _emit(args, result, lines)


def cmd_gen_synth(args) -> int:
    try:
        fractions = [float(x) for x in args.splits.split(",")]
        if len(fractions) != 3:
            raise ValueError
    except ValueError:
        raise ValueError("--splits needs three comma-separated fractions, e.g. 0.6,0.2,0.2")
    cfg = SynthConfig(
        nodes=args.nodes,
        labels=args.labels,
        out_degree=args.out_degree,
        homophily=args.homophily,
        vocab_per_label=args.vocab_per_label,
        noise=args.noise,
        tr_frac=fractions[0],
        va_frac=fractions[1],
        te_frac=fractions[2],
        seed=args.seed,
    )
    count = write_synth(cfg, args.out)
    result = {"out": args.out, "clauses": count}
    return _emit(args, result, [f"wrote {count} clauses to {args.out}"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tgl",
        description="Symbolic node label inference on citation graphs of ground terms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evaluate", help="score label inference accuracy on the test split")
    _add_common_flags(p)
    _add_param_flags(p)
    p.set_defaults(func=cmd_evaluate)

    explain = sub.add_parser("explain", help="dataset-intrinsic accuracy ceilings")
    esub = explain.add_subparsers(dest="report", required=True)

    p = esub.add_parser("network", help="upper bound from the link structure alone")
    _add_common_flags(p)
    p.set_defaults(func=cmd_explain_network)

    p = esub.add_parser("content", help="test nodes with a similar-enough training peer")
    _add_common_flags(p)
    _add_param_flags(p)
    p.add_argument("--threshold", type=float, required=True, help="minimum similarity score")
    p.add_argument("--sample", type=int, default=None, metavar="K", help="only the first K test ids")
    p.add_argument("--peer-side", choices=("tr", "trva"), default="trva")
    p.set_defaults(func=cmd_explain_content)

    p = sub.add_parser("predict", help="inspect the decision for one test node")
    _add_common_flags(p)
    _add_param_flags(p)
    p.add_argument("--node", type=int, required=True, help="test node id")
    p.add_argument("--reveal", action="store_true", help="also print the held label")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("gen-synth", help="write a deterministic synthetic GFF file")
    p.add_argument("--out", required=True, help="output path")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--labels", type=int, required=True)
    p.add_argument("--out-degree", type=int, default=3)
    p.add_argument("--homophily", type=float, default=0.5)
    p.add_argument("--vocab-per-label", type=int, default=6)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--splits", default="0.6,0.2,0.2", help="tr,va,te fractions summing to 1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gen_synth)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as e:
        print(f"error: cannot open {e.filename}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (GffError, EmptyTestSetError, EmptyTrainingSetError, UnknownNodeError, NotATestNodeError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
