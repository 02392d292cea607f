"""Command line interface.

    mnd run <scenario.json> [...] [--alpha N] [--trace-out P] [--dot-out P]
                                  [--max-beats N] [--jobs N]
    mnd verify <scenario.json> <trace.jsonl>
    mnd graph <scenario.json> [--alpha N]

Exit codes: 0 agreement (or verification passed), 1 disagreement (or invalid
trace), 2 usage, file or engine error.  Output is byte-deterministic for a
fixed scenario.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .dot import to_dot
from .engine import DecisionProvider, EngineError, Mode, Negotiation, Outcome, Phase
from .logic import FormulaError
from .scenario import Scenario, SchemaError, SemanticError, load
from .verify import TraceVerificationError, verify_trace


def _run_scenario(scenario: Scenario, alpha_override, max_beats_override) -> Outcome:
    alpha = scenario.alpha
    if alpha_override is not None:
        if scenario.mode is not Mode.AUCTION:
            raise EngineError("--alpha only applies to auction scenarios")
        alpha = alpha_override
    max_beats = max_beats_override if max_beats_override is not None else scenario.max_beats
    negotiation = Negotiation(
        scenario.agents,
        scenario.mode,
        scenario.ws,
        alpha=alpha,
        max_beats=max_beats,
        provider=DecisionProvider(scenario.scripts),
    )
    return negotiation.run()


def trace_jsonl(outcome: Outcome) -> str:
    lines = [json.dumps(ev.to_json(), sort_keys=True) for ev in outcome.trace]
    lines.append(json.dumps(outcome.terminal_json(), sort_keys=True))
    return "\n".join(lines) + "\n"


def _cmd_run(args) -> int:
    if len(args.scenarios) > 1 and (args.trace_out or args.dot_out):
        print("error: --trace-out/--dot-out need a single scenario", file=sys.stderr)
        return 2

    def one(path: str) -> tuple[str, str, int]:
        scenario = load(path)
        outcome = _run_scenario(scenario, args.alpha, args.max_beats)
        if args.trace_out:
            Path(args.trace_out).write_text(trace_jsonl(outcome), encoding="utf-8")
        if args.dot_out:
            Path(args.dot_out).write_text(to_dot(scenario, outcome), encoding="utf-8")
        desc = outcome.phase.value
        if outcome.outcome is not None:
            desc += f" outcome={outcome.outcome}"
        code = 0 if outcome.phase is Phase.AGREEMENT else 1
        return (path, desc, code)

    results = []
    try:
        if args.jobs and args.jobs > 1 and len(args.scenarios) > 1:
            with ThreadPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(one, args.scenarios))
        else:
            results = [one(p) for p in args.scenarios]
    except (SchemaError, SemanticError, EngineError, FormulaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path, desc, _ in results:
        print(f"{path}: {desc}")
    return max(code for _, _, code in results)


def _cmd_verify(args) -> int:
    try:
        scenario = load(args.scenario)
        lines = Path(args.trace).read_text(encoding="utf-8").splitlines()
        records = [json.loads(line) for line in lines if line.strip()]
    except (SchemaError, SemanticError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    terminal = None
    if records and "phase" in records[-1]:
        terminal = records[-1]
        records = records[:-1]
    try:
        verify_trace(scenario, records, terminal)
    except TraceVerificationError as exc:
        print(f"invalid trace: {exc}")
        return 1
    except (EngineError, FormulaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print("trace ok")
    return 0


def _cmd_graph(args) -> int:
    try:
        scenario = load(args.scenario)
        outcome = _run_scenario(scenario, args.alpha, None)
        sys.stdout.write(to_dot(scenario, outcome))
    except (SchemaError, SemanticError, EngineError, FormulaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="mnd", description="Meaning-negotiation runner")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run scenarios and report the outcome")
    p_run.add_argument("scenarios", nargs="+")
    p_run.add_argument("--alpha", type=int, default=None)
    p_run.add_argument("--trace-out", default=None)
    p_run.add_argument("--dot-out", default=None)
    p_run.add_argument("--max-beats", type=int, default=None)
    p_run.add_argument("--jobs", type=int, default=None)
    p_run.set_defaults(func=_cmd_run)

    p_verify = sub.add_parser("verify", help="validate a trace against a scenario")
    p_verify.add_argument("scenario")
    p_verify.add_argument("trace")
    p_verify.set_defaults(func=_cmd_verify)

    p_graph = sub.add_parser("graph", help="print the configuration-path DOT graph")
    p_graph.add_argument("scenario")
    p_graph.add_argument("--alpha", type=int, default=None)
    p_graph.set_defaults(func=_cmd_graph)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
