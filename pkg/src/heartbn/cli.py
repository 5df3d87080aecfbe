"""Command-line interface.

Subcommands: preprocess, learn, evaluate, predict, dsep, export-dot.
Exit codes: 0 on success, 1 on usage errors, 2 on data or model errors;
every failure prints a one-line diagnostic to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import dataset as ds
from .core import d_separated
from .errors import HeartBnError
from .evaluation import run_experiment
from .heart import heart_network
from .inference import classify
from .learn import fit_bayesian, fit_mle, hill_climb, hybrid_learn, learn_skeleton, orient
from .model_io import export_dot, load_model, save_model
from .naive_bayes import nb_fit

USAGE_ERROR = 1
DATA_ERROR = 2


class _Parser(argparse.ArgumentParser):
    """argparse variant that exits 1 on usage problems."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _build_parser() -> _Parser:
    parser = _Parser(prog="heartbn", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="raw table -> cleaned, discretized CSV")
    p.add_argument("--input", required=True, help="raw comma-separated file ('?' = missing)")
    p.add_argument("--output", required=True, help="destination CSV with header row")
    p.add_argument("--cutpoints", help="JSON file {attribute: [thresholds]}")

    p = sub.add_parser("learn", help="fit a model and write a model file")
    p.add_argument("--data", required=True, help="discretized CSV from 'preprocess'")
    p.add_argument("--method", required=True, choices=("paper", "hc", "pc", "hybrid", "nb"))
    p.add_argument("--estimator", default="mle", choices=("mle", "bayes"))
    p.add_argument("--score", default="bic", choices=("bic", "bdeu"))
    p.add_argument("--ess", type=float, default=10.0)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--pseudo", type=float, default=1.0)
    p.add_argument("--out", required=True, help="destination model file")

    p = sub.add_parser("evaluate", help="repeated-split evaluation report")
    p.add_argument("--data", required=True)
    p.add_argument("--method", required=True, choices=("paper", "hc", "pc", "hybrid", "nb"))
    p.add_argument("--ratio", type=float, default=0.8)
    p.add_argument("--seeds", required=True, help="comma-separated seed list")
    p.add_argument("--estimator", default="mle", choices=("mle", "bayes"))
    p.add_argument("--score", default="bic", choices=("bic", "bdeu"))
    p.add_argument("--ess", type=float, default=10.0)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--pseudo", type=float, default=1.0)
    p.add_argument("--report", required=True, help="destination JSON report")

    p = sub.add_parser("predict", help="classify from evidence")
    p.add_argument("--model", required=True)
    p.add_argument("--evidence", required=True, help='e.g. "thal=2,cp=3"')
    p.add_argument("--target", default="target", help="class variable name")

    p = sub.add_parser("dsep", help="test d-separation in a model's graph")
    p.add_argument("--model", required=True)
    p.add_argument("--x", required=True, help="comma-separated node set")
    p.add_argument("--y", required=True, help="comma-separated node set")
    p.add_argument("--given", default="", help="comma-separated conditioning set")

    p = sub.add_parser("export-dot", help="write the model's graph as DOT")
    p.add_argument("--model", required=True)
    p.add_argument("--out", required=True)
    return parser


def _parse_evidence(spec: str, net) -> dict[str, int]:
    evidence: dict[str, int] = {}
    if not spec.strip():
        return evidence
    for item in spec.split(","):
        if "=" not in item:
            raise ValueError(f"evidence item {item!r} is not name=state")
        name, _, state = item.partition("=")
        name, state = name.strip(), state.strip()
        var = net.variable(name)
        if state in var.states:
            evidence[name] = var.state_index(state)
        else:
            evidence[name] = int(state)  # fall back to a bare state index
    return evidence


def _names(spec: str) -> set[str]:
    return {part.strip() for part in spec.split(",") if part.strip()}


def _cmd_preprocess(args) -> int:
    cutpoints = ds.load_cutpoints(args.cutpoints) if args.cutpoints else None
    table = ds.discretize(ds.clean(ds.load_raw(args.input)), cutpoints)
    ds.write_table_csv(table, args.output)
    return 0


def _learn_dag(args, table):
    if args.method == "paper":
        return heart_network()
    if args.method == "hc":
        return hill_climb(table, kind=args.score, ess=args.ess)
    if args.method == "pc":
        return orient(learn_skeleton(table, args.alpha))
    return hybrid_learn(table, args.alpha, kind=args.score, ess=args.ess)


def _cmd_learn(args) -> int:
    table = ds.read_table_csv(args.data)
    if args.method == "nb":
        net = nb_fit(table, "target", args.pseudo).to_net()
    else:
        dag = _learn_dag(args, table)
        if args.estimator == "mle":
            net = fit_mle(dag, table)
        else:
            net = fit_bayesian(dag, table, args.ess)
    save_model(net, args.out)
    return 0


def _cmd_evaluate(args) -> int:
    table = ds.read_table_csv(args.data)
    seeds = [int(s) for s in args.seeds.split(",") if s.strip()]
    if args.method == "nb":
        kind, learner = "nb", "hc"
    elif args.method == "paper":
        kind, learner = "bn-paper", "hc"
    else:
        kind, learner = "bn-learned", args.method
    report = run_experiment(
        table,
        kind,
        args.ratio,
        seeds,
        estimator=args.estimator,
        ess=args.ess,
        learner=learner,
        alpha=args.alpha,
        score_kind=args.score,
        pseudo=args.pseudo,
    )
    with open(args.report, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    return 0


def _cmd_predict(args) -> int:
    net = load_model(args.model)
    evidence = _parse_evidence(args.evidence, net)
    label_index, posterior = classify(net, args.target, evidence)
    label = net.variable(args.target).states[label_index]
    probs = " ".join(f"{p:.7g}" for p in posterior.probabilities)
    print(f"{label} {probs}")
    return 0


def _cmd_dsep(args) -> int:
    net = load_model(args.model)
    result = d_separated(net.dag, _names(args.x), _names(args.y), _names(args.given))
    print("true" if result else "false")
    return 0


def _cmd_export_dot(args) -> int:
    net = load_model(args.model)
    export_dot(net.dag, args.out)
    return 0


_COMMANDS = {
    "preprocess": _cmd_preprocess,
    "learn": _cmd_learn,
    "evaluate": _cmd_evaluate,
    "predict": _cmd_predict,
    "dsep": _cmd_dsep,
    "export-dot": _cmd_export_dot,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (HeartBnError, OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"heartbn {args.command}: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
