"""Command-line interface.

Exit codes: 0 success or decoupled, 1 not decoupled, 2 infeasible,
3 inconclusive, 64 usage error, 65 data error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .bcn import BCNet, compose_inputs, simulate
from .decoupling import (NotSquareError, PreconditionError, _decompose, canonical_form, check_def1,
                         check_def2, fiber_vector, io_mapping)
from .feedback import Status, closed_loop, synthesize_def1, synthesize_def2, synthesize_def3
from .files import (DataError, dumps, feedback_to_dict, is_expression_form, load_feedback,
                    matrix_to_json, network_to_dict, parse_network, read_document)
from .oracle import brute_check

EXIT_OK = 0
EXIT_NOT_DECOUPLED = 1
EXIT_INFEASIBLE = 2
EXIT_INCONCLUSIVE = 3
EXIT_USAGE = 64
EXIT_DATA = 65

CSV_NOTE = "# y and u/v columns are delta indices: 1 = delta^1 (true), 2 = delta^2 (false)"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _xi_json(xi) -> dict:
    return {"channel": xi.channel, "matrix": matrix_to_json(xi.matrix),
            "reachable_rows": [j for j in (1, 2) if xi.reachable[j - 1]]}


def _verdict_json(verdict) -> dict:
    return {
        "decoupled": verdict.decoupled,
        "failures": [{"channel": f.channel, "row": f.row, "reason": f.reason} for f in verdict.failures],
        "xi": [_xi_json(x) for x in verdict.xi],
    }


def _counterexample_json(cx):
    if cx is None:
        return None
    out = {"type": type(cx).__name__}
    out.update({k: (list(v) if isinstance(v, tuple) else v) for k, v in vars(cx).items()})
    if hasattr(cx, "divergence_time"):
        out["divergence_time"] = cx.divergence_time
    return out


def _oracle_json(report) -> dict:
    return {"holds": report.holds, "definition": report.definition,
            "counterexample": _counterexample_json(report.counterexample)}


def _load_net(path: str) -> BCNet:
    return parse_network(read_document(path))


def cmd_build(args) -> tuple[dict, int]:
    doc = read_document(args.file)
    if not is_expression_form(doc):
        raise DataError("network is already algebraic")
    net = parse_network(doc)
    if args.out:
        Path(args.out).write_text(dumps(network_to_dict(net)))
    return {"network": network_to_dict(net)}, EXIT_OK


def cmd_check(args) -> tuple[dict, int]:
    net = _load_net(args.file)
    if net.m != net.p:
        raise DataError(f"decoupling needs m = p, got m={net.m}, p={net.p}")
    report: dict = {}
    if args.definition == 3:
        oracle = brute_check(net, 3)
        report["verdict"] = {"decoupled": oracle.holds}
        report["oracle"] = _oracle_json(oracle)
        decoupled = oracle.holds
    else:
        verdict = check_def2(net) if args.definition == 2 else check_def1(net)
        report["verdict"] = _verdict_json(verdict)
        decoupled = verdict.decoupled
        if decoupled:
            report["io_mappings"] = [matrix_to_json(io_mapping(net, i).M) for i in range(1, net.m + 1)]
        if args.oracle:
            oracle = brute_check(net, args.definition)
            report["oracle"] = _oracle_json(oracle)
            report["oracle_agrees"] = oracle.holds == decoupled
    return report, EXIT_OK if decoupled else EXIT_NOT_DECOUPLED


def cmd_synthesize(args) -> tuple[dict, int]:
    net = _load_net(args.file)
    if args.definition == 2:
        outcome = synthesize_def2(net)
    elif args.definition == 1:
        outcome = synthesize_def1(net, fallback_constant=args.fallback_constant)
    else:
        outcome = synthesize_def3(net, fallback_constant=args.fallback_constant)
    report = {
        "status": outcome.status.value,
        "definition": outcome.definition,
        "reason": outcome.reason,
        "witness": outcome.witness,
        "certificate": None if outcome.certificate is None else matrix_to_json(outcome.certificate),
    }
    if outcome.witness and "counterexample" in outcome.witness:
        report["witness"] = dict(outcome.witness, counterexample=_counterexample_json(
            outcome.witness["counterexample"]))
    if outcome.synthesized:
        loop = closed_loop(net, outcome.K)
        report["K"] = matrix_to_json(outcome.K)
        report["closed_loop"] = {"L": matrix_to_json(loop.L)}
        report["verification"] = _oracle_json(brute_check(loop, outcome.definition))
        if args.out:
            Path(args.out).write_text(dumps(feedback_to_dict(net, outcome.K)))
    code = {Status.SYNTHESIZED: EXIT_OK, Status.INFEASIBLE: EXIT_INFEASIBLE,
            Status.INCONCLUSIVE: EXIT_INCONCLUSIVE}[outcome.status]
    return report, code


def cmd_forms(args) -> tuple[dict, int]:
    net = _load_net(args.file)
    report: dict = {}
    if args.feedback:
        K = load_feedback(args.feedback, net)
        net = closed_loop(net, K)
        report["closed_loop"] = {"L": matrix_to_json(net.L)}
    if net.m != net.p:
        raise DataError(f"decoupled forms need m = p, got m={net.m}, p={net.p}")
    if check_def2(net):
        definition = 2
    elif check_def1(net):
        definition = 1
    else:
        raise PreconditionError("network is not one-step transition IO-decoupled; "
                                "synthesize a feedback and pass --feedback")
    report["definition"] = definition
    report["canonical"] = [matrix_to_json(M) for M in canonical_form(net, definition)]
    fibers = fiber_vector(net)
    report["fibers"] = [int(f) for f in fibers]
    dec = _decompose(net, net.p)
    if dec is None:
        report["decomposed"] = None
        report["note"] = "no decomposed form: output fibers are not uniform"
    else:
        report["decomposed"] = {"P": matrix_to_json(dec.P), "P_tail": matrix_to_json(dec.P_tail),
                                "F_tail": matrix_to_json(dec.F_tail), "blocks": [list(b) for b in dec.blocks]}
    return report, EXIT_OK


def _channel_sequence(spec: str, steps: int) -> list[int]:
    kind, _, arg = spec.partition(":")
    if kind == "fix":
        if arg not in ("1", "2"):
            raise UsageError(f"fix:{arg}: value must be 1 or 2")
        return [int(arg)] * steps
    if kind == "seq":
        try:
            vals = [int(v) for v in arg.split(",") if v.strip()]
        except ValueError:
            raise UsageError(f"bad sequence {arg!r}") from None
        if any(v not in (1, 2) for v in vals):
            raise UsageError("sequence values must be 1 or 2")
        if len(vals) < steps:
            raise UsageError(f"sequence has {len(vals)} values, need {steps}")
        return vals[:steps]
    if kind == "random":
        try:
            seed = int(arg)
        except ValueError:
            raise UsageError(f"random:{arg}: seed must be an integer") from None
        return np.random.default_rng(seed).integers(1, 3, size=steps).tolist()
    raise UsageError(f"unknown input spec {spec!r} (use fix:V, seq:V,V,... or random:SEED)")


def cmd_simulate(args) -> tuple[dict, int]:
    net = _load_net(args.file)
    label = "u_index"
    if args.feedback:
        net = closed_loop(net, load_feedback(args.feedback, net))
        label = "v_index"
    if args.steps < 0:
        raise UsageError("--steps must be non-negative")
    if not 1 <= args.x0 <= net.num_states:
        raise DataError(f"--x0 must lie in [1, {net.num_states}]")
    specs = args.inputs or []
    if len(specs) != net.m:
        raise UsageError(f"need {net.m} --inputs specs (one per channel), got {len(specs)}")
    channels = [_channel_sequence(s, args.steps) for s in specs]
    inputs = compose_inputs(channels) if args.steps else []
    traj = simulate(net, args.x0, inputs)

    buf = io.StringIO()
    buf.write(CSV_NOTE + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "x_index", label] + [f"y_{i}" for i in range(1, net.p + 1)])
    for t, (x, ys) in enumerate(zip(traj.states, traj.outputs)):
        u = traj.inputs[t].index if t < len(traj.inputs) else ""
        w.writerow([t, x.index, u] + [y.index for y in ys])
    text = buf.getvalue()
    if args.csv in (None, "-"):
        sys.stdout.write(text)
        return None, EXIT_OK
    Path(args.csv).write_text(text)
    return {"csv": args.csv, "rows": len(traj), "final_state": traj.states[-1].index}, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bcn-decouple", description="IO-decoupling analysis for Boolean control networks")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--timing", action="store_true", help="add wall-clock time to the report")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", help="compile an expression network to algebraic form")
    p.add_argument("file")
    p.add_argument("--out", help="also write the algebraic network file here")
    p.set_defaults(func=cmd_build)

    defn = dict(dest="definition", type=int, choices=(1, 2, 3), default=2)
    p = sub.add_parser("check", help="decide IO-decoupling")
    p.add_argument("file")
    p.add_argument("--def", **defn)
    p.add_argument("--oracle", action="store_true", help="cross-check with the brute-force oracle")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("synthesize", help="design a decoupling state feedback")
    p.add_argument("file")
    p.add_argument("--def", **defn)
    p.add_argument("--fallback-constant", action="store_true",
                   help="try constant feedbacks when the sufficient condition is inconclusive")
    p.add_argument("--out", help="write the feedback matrix file here")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("forms", help="canonical and IO-decomposed forms")
    p.add_argument("file")
    p.add_argument("--feedback", help="feedback matrix file; analyse the closed loop")
    p.set_defaults(func=cmd_forms)

    p = sub.add_parser("simulate", help="simulate and write a CSV trajectory")
    p.add_argument("file")
    p.add_argument("--x0", type=int, required=True, help="initial state index (1-based)")
    p.add_argument("--inputs", nargs="+", metavar="SPEC",
                   help="one per channel: fix:V, seq:V,V,... or random:SEED")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--feedback", help="feedback matrix file; drive the closed loop with v")
    p.add_argument("--csv", help="output CSV path (default: stdout)")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        report, code = args.func(args)
    except UsageError as exc:
        print(f"bcn-decouple: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotSquareError as exc:
        print(f"bcn-decouple: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except PreconditionError as exc:
        print(f"bcn-decouple: error: {exc}", file=sys.stderr)
        return EXIT_NOT_DECOUPLED
    except (DataError, ValueError) as exc:
        print(f"bcn-decouple: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    if report is not None:
        doc = {"command": args.command, "args": {k: v for k, v in vars(args).items()
                                                 if k not in ("func", "command", "timing")}}
        doc.update(report)
        if args.timing:
            doc["timing_s"] = round(time.perf_counter() - start, 6)
        sys.stdout.write(dumps(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
