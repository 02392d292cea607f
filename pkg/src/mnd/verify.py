"""Trace verification by replay.

A trace is valid when re-simulating the negotiation with the trace's own
choices (which angle to counter with, when to accept) reproduces the trace
event for event.  The engine recomputes every derived part: asserted labels,
rule tags, violation flags, system transitions, terminal line.  Anything a
scenario run emits therefore verifies by construction, while a mutated tag,
label, speaker or flag shows up as a located mismatch at the first bad event.
Formulas are compared semantically (equal model sets), so a handwritten trace
may spell a formula differently without being rejected.
"""

from __future__ import annotations

from typing import Optional

from .agents import Attitude
from .engine import (
    DecisionProvider,
    EngineError,
    IllegalMoveError,
    Mode,
    Negotiation,
    Outcome,
    infer_move,
)
from .logic import Formula, FormulaError, equivalent, parse_formula
from .relations import RelationLabel


class TraceVerificationError(Exception):
    def __init__(self, index: int, reason: str):
        super().__init__(f"event {index}: {reason}")
        self.index = index
        self.reason = reason


class _FollowProvider(DecisionProvider):
    """Feeds the engine the choices recorded in the candidate trace."""

    def __init__(self, events: list[dict], scenario):
        super().__init__(scripts=None)
        self.events = events
        self.scenario = scenario
        self.negotiation: Optional[Negotiation] = None

    def _next_event(self) -> tuple[int, dict]:
        idx = len(self.negotiation.trace)
        if idx >= len(self.events):
            raise TraceVerificationError(idx, "trace ends before the negotiation does")
        return idx, self.events[idx]

    def has_pending(self) -> bool:
        idx = len(self.negotiation.trace)
        return any(ev.get("kind") == "evaluation" for ev in self.events[idx:])

    def _parse(self, idx: int, text: str) -> Formula:
        try:
            return parse_formula(text, self.scenario.sig)
        except FormulaError as exc:
            raise TraceVerificationError(idx, f"bad formula: {exc}") from exc

    def decide(self, rt, received, received_label, acceptable, ws):
        idx, ev = self._next_event()
        if ev.get("kind") != "evaluation":
            raise TraceVerificationError(
                idx, f"expected an evaluation by {rt.spec.id}, found {ev.get('kind')!r}"
            )
        rule = ev.get("rule", "")
        if rule == "Ag" or rule.endswith("-Ag"):
            return "agree"
        if "formula" not in ev:
            raise TraceVerificationError(idx, "evaluation event carries no formula")
        g = self._parse(idx, ev["formula"])
        try:
            return (infer_move(rt.caf.current, g, ws), g)
        except IllegalMoveError as exc:
            raise TraceVerificationError(idx, str(exc)) from exc

    def decide_auctioneer(self, rt, responses, translated, acceptable, ws):
        from .agents import translate
        from .logic import models

        idx, ev = self._next_event()
        if ev.get("kind") != "evaluation":
            raise TraceVerificationError(
                idx, f"expected an auctioneer evaluation, found {ev.get('kind')!r}"
            )
        if "formula" not in ev:
            raise TraceVerificationError(idx, "evaluation event carries no formula")
        g = self._parse(idx, ev["formula"])
        g_models = models(g, ws)
        angle_move = None
        for angle in rt.spec.all_angles():
            if models(angle, ws) == g_models:
                angle_move = angle
                break
        if angle_move is None:
            for i, (pid, _, counter) in enumerate(responses):
                translated = translate(rt.spec, pid, counter)
                if models(translated, ws) == g_models:
                    return ("adopt", i)
            raise TraceVerificationError(
                idx, "auctioneer proposal is neither a declared angle nor a received proposal"
            )
        try:
            return (infer_move(rt.caf.current, angle_move, ws), angle_move)
        except IllegalMoveError as exc:
            raise TraceVerificationError(idx, str(exc)) from exc


_COMPARED_FIELDS = ("beat", "speaker", "kind", "rule", "label", "target", "violation")


def verify_trace(scenario, events: list[dict], terminal: Optional[dict]) -> None:
    """Raises TraceVerificationError on the first invalid event."""
    provider = _FollowProvider(events, scenario)
    negotiation = Negotiation(
        scenario.agents,
        scenario.mode,
        scenario.ws,
        alpha=scenario.alpha,
        max_beats=scenario.max_beats,
        provider=provider,
    )
    provider.negotiation = negotiation
    try:
        outcome = negotiation.run()
    except TraceVerificationError:
        raise
    except EngineError as exc:
        raise TraceVerificationError(len(negotiation.trace), str(exc)) from exc

    for idx, want in enumerate(events):
        if idx >= len(outcome.trace):
            raise TraceVerificationError(idx, "trace has more events than the replay")
        got = outcome.trace[idx].to_json()
        for fieldname in _COMPARED_FIELDS:
            if got.get(fieldname) != want.get(fieldname):
                raise TraceVerificationError(
                    idx,
                    f"beat {got['beat']}: field {fieldname!r} mismatch: "
                    f"replay has {got.get(fieldname)!r}, trace has {want.get(fieldname)!r}",
                )
        got_formula, want_formula = got.get("formula"), want.get("formula")
        if (got_formula is None) != (want_formula is None):
            raise TraceVerificationError(idx, "formula presence mismatch")
        if want_formula is not None:
            f = provider._parse(idx, want_formula)
            g = provider._parse(idx, got_formula)
            if not equivalent(f, g, scenario.ws):
                raise TraceVerificationError(
                    idx, f"formula mismatch: replay has {got_formula!r}, trace has {want_formula!r}"
                )
    if len(outcome.trace) > len(events):
        raise TraceVerificationError(
            len(events),
            f"trace ends early: replay continues with rule {outcome.trace[len(events)].rule!r}",
        )
    if terminal is not None:
        got_terminal = outcome.terminal_json()
        want_outcome = terminal.get("outcome")
        got_outcome = got_terminal.get("outcome")
        if terminal.get("phase") != got_terminal["phase"]:
            raise TraceVerificationError(
                len(events), f"terminal phase mismatch: replay has {got_terminal['phase']!r}"
            )
        if sorted(terminal.get("agreeing", [])) != got_terminal["agreeing"]:
            raise TraceVerificationError(len(events), "terminal agreeing set mismatch")
        if (want_outcome is None) != (got_outcome is None):
            raise TraceVerificationError(len(events), "terminal outcome presence mismatch")
        if want_outcome is not None:
            f = provider._parse(len(events), want_outcome)
            g = provider._parse(len(events), got_outcome)
            if not equivalent(f, g, scenario.ws):
                raise TraceVerificationError(len(events), "terminal outcome mismatch")
