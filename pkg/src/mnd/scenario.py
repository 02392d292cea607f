"""Scenario files: JSON descriptions of a negotiation to run or verify.

Schema (all formulas are grammar strings over the declared signature):

    {
      "signature": ["has2wheels", ...],
      "worlds": {"bicycle": ["has2wheels", ...], ...},   # omit for all 2^n
      "agents": [
        {"id": "alice",
         "stubborn": ["...", ...],
         "angles": ["...", ...],
         "attitude": "collaborative" | "competitive",
         "translations": {"bob": {"aile": "wing"}},      # optional
         "script": [1, "agree", ...]},                   # optional
        ...
      ],
      "mode": "bilateral" | "auction",
      "alpha": 3,                                        # auction only
      "max_beats": 40                                    # optional
    }

Script entries pin an agent's successive counterproposals: an integer indexes
into her angle list (the stub counts as the extra final index), the string
"agree" accepts the proposal on the table.  The engine still validates every
scripted move against the proposal-rule guards.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .agents import AgentSpec, AgentSpecError, Attitude
from .engine import Mode
from .logic import (
    Formula,
    FormulaError,
    Signature,
    WorldSet,
    parse_formula,
)


class SchemaError(Exception):
    def __init__(self, path, detail: str):
        super().__init__(f"{path}: {detail}")
        self.path = path
        self.detail = detail


class SemanticError(Exception):
    def __init__(self, path, detail: str):
        super().__init__(f"{path}: {detail}")
        self.path = path
        self.detail = detail


@dataclass
class Scenario:
    path: Optional[Path]
    sig: Signature
    ws: WorldSet
    agents: list[AgentSpec]
    scripts: dict[str, list]
    mode: Mode
    alpha: Optional[int]
    max_beats: Optional[int]


def _require(cond: bool, path, detail: str) -> None:
    if not cond:
        raise SchemaError(path, detail)


def load(path) -> Scenario:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise SchemaError(path, f"cannot read file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(path, f"invalid JSON: {exc}") from exc
    return from_dict(raw, path)


def from_dict(raw: dict, path=None) -> Scenario:
    _require(isinstance(raw, dict), path, "top level must be an object")
    for key in ("signature", "agents", "mode"):
        _require(key in raw, path, f"missing required key {key!r}")

    sig_names = raw["signature"]
    _require(
        isinstance(sig_names, list) and sig_names
        and all(isinstance(n, str) for n in sig_names),
        path, "'signature' must be a nonempty list of atom names",
    )
    try:
        sig = Signature.of(sig_names)
    except FormulaError as exc:
        raise SchemaError(path, str(exc)) from exc

    worlds = raw.get("worlds")
    try:
        if worlds is None:
            ws = WorldSet.full(sig)
        else:
            _require(isinstance(worlds, dict) and worlds, path,
                     "'worlds' must be a nonempty object of name -> true-atom list")
            ws = WorldSet.named(sig, {str(k): list(v) for k, v in worlds.items()})
    except FormulaError as exc:
        raise SchemaError(path, f"bad worlds: {exc}") from exc

    mode_raw = raw["mode"]
    _require(mode_raw in ("bilateral", "auction"), path,
             f"'mode' must be 'bilateral' or 'auction', got {mode_raw!r}")
    mode = Mode(mode_raw)
    alpha = raw.get("alpha")
    if mode is Mode.AUCTION:
        _require(isinstance(alpha, int), path, "auction mode requires integer 'alpha'")
    else:
        _require(alpha is None, path, "'alpha' only applies to auction mode")

    max_beats = raw.get("max_beats")
    if max_beats is not None:
        _require(isinstance(max_beats, int) and max_beats > 0, path,
                 "'max_beats' must be a positive integer")

    agents_raw = raw["agents"]
    _require(isinstance(agents_raw, list) and len(agents_raw) >= 2, path,
             "'agents' must be a list of at least two agents")

    def parse_one(agent_id: str, text, what: str) -> Formula:
        _require(isinstance(text, str), path, f"agent {agent_id}: {what} must be a string")
        try:
            return parse_formula(text, sig)
        except FormulaError as exc:
            raise SchemaError(path, f"agent {agent_id}: bad {what} {text!r}: {exc}") from exc

    agents: list[AgentSpec] = []
    scripts: dict[str, list] = {}
    for entry in agents_raw:
        _require(isinstance(entry, dict), path, "each agent must be an object")
        for key in ("id", "stubborn", "angles"):
            _require(key in entry, path, f"agent entry missing {key!r}")
        agent_id = entry["id"]
        _require(isinstance(agent_id, str) and agent_id, path, "agent id must be a nonempty string")
        stubborn = tuple(parse_one(agent_id, t, "stubborn formula") for t in entry["stubborn"])
        angles = tuple(parse_one(agent_id, t, "angle") for t in entry["angles"])
        attitude_raw = entry.get("attitude", "collaborative")
        _require(attitude_raw in ("collaborative", "competitive"), path,
                 f"agent {agent_id}: bad attitude {attitude_raw!r}")
        translations = entry.get("translations", {})
        _require(isinstance(translations, dict), path,
                 f"agent {agent_id}: 'translations' must be an object")
        try:
            spec = AgentSpec(
                id=agent_id,
                sig=sig,
                stubborn=stubborn,
                angles=angles,
                attitude=Attitude(attitude_raw),
                translations={str(p): dict(m) for p, m in translations.items()},
            )
        except AgentSpecError as exc:
            raise SchemaError(path, str(exc)) from exc
        agents.append(spec)

        script = entry.get("script")
        if script is not None:
            _require(isinstance(script, list), path,
                     f"agent {agent_id}: 'script' must be a list")
            n_all = len(angles) + 1  # stub is the implicit final index
            for item in script:
                if isinstance(item, int):
                    _require(0 <= item < n_all, path,
                             f"agent {agent_id}: script index {item} out of range 0..{n_all - 1}")
                else:
                    _require(item == "agree", path,
                             f"agent {agent_id}: bad script entry {item!r}")
            scripts[agent_id] = list(script)

    ids = [a.id for a in agents]
    _require(len(set(ids)) == len(ids), path, "duplicate agent ids")

    scenario = Scenario(
        path=path, sig=sig, ws=ws, agents=agents, scripts=scripts,
        mode=mode, alpha=alpha, max_beats=max_beats,
    )
    # semantic validation: satisfiable stubs, angles entail the stub
    for a in agents:
        try:
            a.validate(ws)
        except AgentSpecError as exc:
            raise SemanticError(path, str(exc)) from exc
    return scenario
