"""DOT rendering of the EGG/YOLK configuration path of a finished run.

Every proposal-carrying trace event yields one node: the joint configuration
of the two agents right after that message, seen from the first bidder's
side.  Node labels are taxonomy numbers when the configuration is an
enumerated one, otherwise the raw RCC5 quadruple.  Auction runs produce one
chain per auctioneer/participant pair.
"""

from __future__ import annotations

from .agents import stub_formula
from .engine import Mode, Outcome, TraceEvent
from .logic import models
from .relations import egg_yolk_config
from .scenario import Scenario


def _label(cfg) -> str:
    return cfg.paper_number if cfg.paper_number is not None else cfg.compact()


def _pair_path(scenario: Scenario, events: list[TraceEvent], left_id: str,
               right_id: str) -> list[tuple[TraceEvent, str]]:
    """Config snapshot after each message exchanged between the two agents."""
    ws = scenario.ws
    by_id = {a.id: a for a in scenario.agents}
    stub = {aid: models(stub_formula(by_id[aid]), ws) for aid in (left_id, right_id)}
    caf = {aid: models(by_id[aid].angles[0], ws) for aid in (left_id, right_id)}
    path = []
    for ev in events:
        if ev.kind == "system" or ev.formula is None:
            continue
        if ev.speaker not in (left_id, right_id):
            continue
        if ev.target is not None and ev.target not in (left_id, right_id):
            continue
        caf[ev.speaker] = models(ev.formula, ws)
        cfg = egg_yolk_config(
            stub[left_id], caf[left_id], stub[right_id], caf[right_id]
        )
        path.append((ev, _label(cfg)))
    return path


def config_paths(scenario: Scenario, outcome: Outcome) -> dict[tuple[str, str], list[tuple[TraceEvent, str]]]:
    ids = [a.id for a in scenario.agents]
    if scenario.mode is Mode.BILATERAL:
        pairs = [(ids[0], ids[1])]
    else:
        pairs = [(ids[0], other) for other in ids[1:]]
    return {pair: _pair_path(scenario, outcome.trace, *pair) for pair in pairs}


def to_dot(scenario: Scenario, outcome: Outcome) -> str:
    lines = ["digraph mnd {", "  rankdir=LR;"]
    counter = 0
    for (left, right), path in sorted(config_paths(scenario, outcome).items()):
        if len(scenario.agents) > 2:
            lines.append(f'  subgraph "cluster_{left}_{right}" {{')
            lines.append(f'    label="{left} / {right}";')
            indent = "    "
        else:
            indent = "  "
        prev = None
        for ev, label in path:
            node = f"n{counter}"
            counter += 1
            lines.append(f'{indent}{node} [label="{label}"];')
            if prev is not None:
                lines.append(f'{indent}{prev} -> {node} [label="{ev.speaker}:{ev.rule}"];')
            prev = node
        if len(scenario.agents) > 2:
            lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
