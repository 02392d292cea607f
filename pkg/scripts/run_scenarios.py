#!/usr/bin/env python3
"""Run every bundled scenario, writing traces and configuration graphs.

Usage: python scripts/run_scenarios.py [OUTDIR]   (default: out/)
"""

import sys
from pathlib import Path

from mnd.cli import trace_jsonl
from mnd.dot import to_dot
from mnd.engine import DecisionProvider, Negotiation
from mnd.scenario import load

REPO = Path(__file__).resolve().parent.parent


def main() -> int:
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else REPO / "out"
    outdir.mkdir(parents=True, exist_ok=True)
    for path in sorted((REPO / "scenarios").glob("*.json")):
        scenario = load(path)
        negotiation = Negotiation(
            scenario.agents, scenario.mode, scenario.ws,
            alpha=scenario.alpha, max_beats=scenario.max_beats,
            provider=DecisionProvider(scenario.scripts),
        )
        outcome = negotiation.run()
        stem = path.stem
        (outdir / f"{stem}.trace.jsonl").write_text(trace_jsonl(outcome), encoding="utf-8")
        (outdir / f"{stem}.dot").write_text(to_dot(scenario, outcome), encoding="utf-8")
        desc = outcome.phase.value
        if outcome.outcome is not None:
            desc += f"  outcome: {outcome.outcome}"
        print(f"{stem:24s} {desc}")
    print(f"\ntraces and graphs written to {outdir}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
