"""Deduction-system execution: bilateral bargaining and 1-n auction runs.

The engine walks the turn-based protocol, emitting one trace event per
message plus one system event per completed exchange (bilateral) or round
(auction).  Evaluation rules are named after the pair (label received about
my last proposal, label I now assert), matching the deduction-rule tables;
the second proposing agent uses the single-label rules AD/ED/I/Ag/Co since
she has not received an evaluation yet.

Acceptance discipline: an agent adopts an opponent proposal only when it is
*acceptable*: it entails her stubborn theory and at least one of her angles
entails it (her viewpoint brackets the proposal from below, her stub from
above).  The one exception is the forced RD-Ag reply: an agent told that the
relation is relative disagreement must accept the stricter counterproposal,
which by construction entails her own previous proposal and hence her stub.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

from .agents import (
    AgentSpec,
    Attitude,
    CafState,
    Move,
    choose_next,
    legal_successors,
    stub_formula,
    translate,
)
from .logic import Formula, WorldSet, entails, equivalent, models, pretty
from .relations import RelationLabel, Role, classify_models


class Mode(str, Enum):
    BILATERAL = "bilateral"
    AUCTION = "auction"


class Phase(str, Enum):
    INIT = "init"
    NEGOTIATE = "negotiate"
    AGREEMENT = "agreement"
    DISAGREEMENT = "disagreement"


class EngineError(Exception):
    pass


class BadArityError(EngineError):
    pass


class BadAlphaError(EngineError):
    pass


class BeatLimitError(EngineError):
    pass


class NoLegalRuleError(EngineError):
    pass


class IllegalMoveError(EngineError):
    pass


LABEL_SYM = {
    RelationLabel.ABS_DIS: "AD",
    RelationLabel.ESS_DIS: "ED",
    RelationLabel.COMP: "Co",
    RelationLabel.REL_DIS: "RD",
    RelationLabel.AGREE: "Ag",
}
SYM_LABEL = {v: k for k, v in LABEL_SYM.items()}

# Legal (received, asserted) rule pairs for following proposing agents.  The
# base rows come from the bilateral table; Co-AD appears there only as the
# paradigmatic violation scenario, so it is admitted with the violation flag
# for every role.  The auction extension adds the remaining pairs for the
# auctioneer; Ag-Ag is also usable by participants, for whom it is benign.
_BASE_PAIRS = (
    {("AD", y) for y in ("AD", "ED", "Co", "RD", "Ag")}
    | {("ED", y) for y in ("AD", "ED", "Co", "RD", "Ag")}
    | {("Co", y) for y in ("ED", "Co", "RD", "Ag")}
    | {("RD", "Ag")}
    | {("Co", "AD")}
)
_AUCTIONEER_EXTRA = {
    ("RD", "ED"),
    ("RD", "Co"),
    ("RD", "RD"),
    ("Ag", "AD"),
    ("Ag", "ED"),
    ("Ag", "Co"),
    ("Ag", "RD"),
    ("Ag", "Ag"),
}
PARTICIPANT_PAIRS = _BASE_PAIRS | {("Ag", "Ag")}
AUCTIONEER_PAIRS = _BASE_PAIRS | _AUCTIONEER_EXTRA

_ALWAYS_VIOLATIONS = {("ED", "AD"), ("ED", "Co"), ("Co", "AD")}


def pair_rule(received: str, asserted: str) -> str:
    return f"{received}-{asserted}"


def legal_pair(received: str, asserted: str, auctioneer: bool) -> bool:
    table = AUCTIONEER_PAIRS if auctioneer else PARTICIPANT_PAIRS
    return (received, asserted) in table


def violation_flag(received: str, asserted: str, auctioneer: bool) -> bool:
    pair = (received, asserted)
    if pair in _ALWAYS_VIOLATIONS:
        return True
    if pair == ("Ag", "Ag"):
        return auctioneer
    return auctioneer and pair in _AUCTIONEER_EXTRA


@dataclass
class TraceEvent:
    beat: int
    speaker: str
    kind: str  # "proposal" | "evaluation" | "system"
    rule: str
    move: Optional[str] = None
    formula: Optional[Formula] = None
    label: Optional[RelationLabel] = None
    target: Optional[str] = None
    violation: bool = False

    def to_json(self) -> dict:
        out: dict = {
            "beat": self.beat,
            "speaker": self.speaker,
            "kind": self.kind,
            "rule": self.rule,
            "violation": self.violation,
        }
        if self.move is not None:
            out["move"] = self.move
        if self.formula is not None:
            out["formula"] = pretty(self.formula)
        if self.label is not None:
            out["label"] = self.label.value
        if self.target is not None:
            out["target"] = self.target
        return out


@dataclass
class Outcome:
    phase: Phase
    outcome: Optional[Formula]
    agreeing: tuple[str, ...]
    beats: int
    trace: list[TraceEvent]

    def terminal_json(self) -> dict:
        out: dict = {"phase": self.phase.value, "agreeing": sorted(self.agreeing)}
        if self.outcome is not None:
            out["outcome"] = pretty(self.outcome)
        return out


def derived_beat_bound(agents: Sequence[AgentSpec]) -> int:
    return 2 + sum(len(a.angles) + 1 for a in agents) * len(agents)


@dataclass
class _Runtime:
    spec: AgentSpec
    caf: CafState


class DecisionProvider:
    """Chooses counterproposals and adoptions.  The default follows the
    scenario script entry by entry, then falls back to the attitude policy."""

    def __init__(self, scripts: Optional[dict[str, list]] = None):
        self._scripts = {k: list(v) for k, v in (scripts or {}).items()}

    def _pop(self, agent_id: str):
        entries = self._scripts.get(agent_id)
        if entries:
            return entries.pop(0)
        return None

    def has_pending(self) -> bool:
        """True while scripted choices remain; suppresses the fixed-point
        exit, since a pending entry can still change the course of the run."""
        return any(self._scripts.values())

    def decide(self, rt: _Runtime, received: Optional[Formula],
               received_label: Optional[RelationLabel], acceptable: bool,
               ws: WorldSet):
        """Returns "agree" or a (Move, Formula) counterproposal."""
        entry = self._pop(rt.spec.id)
        if entry is not None:
            return self._resolve(rt, entry, acceptable, ws)
        if acceptable and rt.spec.attitude is Attitude.COLLABORATIVE:
            return "agree"
        return choose_next(rt.caf, rt.spec, received, received_label, ws)

    def decide_auctioneer(self, rt: _Runtime,
                          responses: list[tuple[str, RelationLabel, Formula]],
                          translated: list[Formula],
                          acceptable: list[tuple[int, Formula]], ws: WorldSet):
        """Returns ("adopt", index-into-responses) or a (Move, Formula).
        `translated` aligns with `responses`; `acceptable` pairs response
        indices with the translated proposal."""
        entry = self._pop(rt.spec.id)
        if entry == "agree":
            if not acceptable:
                raise IllegalMoveError(
                    f"{rt.spec.id}: scripted agree but no received proposal is acceptable"
                )
            return ("adopt", acceptable[0][0])
        if entry is not None:
            move, g = self._resolve(rt, entry, acceptable=False, ws=ws)
            return (move, g)
        if rt.spec.attitude is Attitude.COLLABORATIVE:
            if acceptable:
                # Adopt the first acceptable proposal that is a genuinely new
                # position; re-adopting something already held cannot enlarge
                # the agreeing coalition (acceptance is a static test).
                held = {models(f, ws) for f in rt.caf.held_formulas()}
                novel = [i for i, t in acceptable if models(t, ws) not in held]
                if novel:
                    return ("adopt", novel[0])
            # A participant who countered with exactly my position without
            # yet saying agree (the second-proposer rules give her no way to
            # accept a proposal her initial angle does not entail): standing
            # still for one beat turns the latent agreement into an asserted
            # one.  Participants already agreeing never trigger this, so the
            # stay cannot repeat.
            cur = models(rt.caf.current, ws)
            for (pid, label, _), t in zip(responses, translated):
                if label is not RelationLabel.AGREE and models(t, ws) == cur:
                    return (Move.S, rt.caf.current)
        return _auctioneer_choose(rt, [f for _, _, f in responses], ws)

    def _resolve(self, rt: _Runtime, entry, acceptable: bool, ws: WorldSet):
        if entry == "agree":
            if not acceptable:
                raise IllegalMoveError(
                    f"{rt.spec.id}: scripted agree but the proposal is not acceptable"
                )
            return "agree"
        if not isinstance(entry, int):
            raise IllegalMoveError(f"{rt.spec.id}: bad script entry {entry!r}")
        all_angles = rt.spec.all_angles()
        if not 0 <= entry < len(all_angles):
            raise IllegalMoveError(f"{rt.spec.id}: script angle index {entry} out of range")
        g = all_angles[entry]
        move = infer_move(rt.caf.current, g, ws)
        return (move, g)


def infer_move(current: Formula, g: Formula, ws: WorldSet) -> Move:
    if equivalent(current, g, ws):
        return Move.S
    if entails(current, g, ws):
        return Move.W
    if not entails(g, current, ws):
        return Move.C
    raise IllegalMoveError("candidate is strictly stricter than the current angle")


def _auctioneer_choose(rt: _Runtime, received: list[Formula], ws: WorldSet):
    """Single new angle scored against the whole multiset of received
    proposals by summed relation rank (agree 4, relDis 3, comp 2, essDis 1,
    absDis 0), progress classes first as in the bilateral policy."""
    successors = legal_successors(rt.caf, rt.spec, ws)
    if len(successors) == 1:
        return successors[0]
    rank = {
        RelationLabel.AGREE: 4,
        RelationLabel.REL_DIS: 3,
        RelationLabel.COMP: 2,
        RelationLabel.ESS_DIS: 1,
        RelationLabel.ABS_DIS: 0,
    }
    stub_m = models(stub_formula(rt.spec), ws)
    held = {models(f, ws) for f in rt.caf.held_formulas()}
    received_m = [models(f, ws) for f in received]

    def progress_class(move: Move, g: Formula) -> int:
        g_m = models(g, ws)
        if move is Move.S:
            return 2
        if g_m == stub_m:
            return 1
        return 0 if g_m not in held else 3

    candidates = [(m, g) for m, g in successors if progress_class(m, g) != 3] or successors
    all_angles = rt.spec.all_angles()

    def angle_index(g: Formula) -> int:
        g_m = models(g, ws)
        for i, angle in enumerate(all_angles):
            if models(angle, ws) == g_m:
                return i
        return len(all_angles)

    def key(item):
        move, g = item
        g_m = models(g, ws)
        score = sum(
            rank.get(classify_models(stub_m, g_m, p_m, Role.FOLLOWING), 0)
            for p_m in received_m
        )
        return (progress_class(move, g), -score, angle_index(g))

    return min(candidates, key=key)


class Negotiation:
    def __init__(
        self,
        agents: Sequence[AgentSpec],
        mode: Mode,
        ws: WorldSet,
        alpha: Optional[int] = None,
        max_beats: Optional[int] = None,
        provider: Optional[DecisionProvider] = None,
    ):
        agents = list(agents)
        if mode is Mode.BILATERAL:
            if len(agents) != 2:
                raise BadArityError(f"bilateral negotiation needs exactly 2 agents, got {len(agents)}")
            if alpha is not None and alpha != 2:
                raise BadAlphaError("bilateral negotiation has no sharing degree")
        else:
            if len(agents) < 3:
                raise BadArityError(f"auction negotiation needs at least 3 agents, got {len(agents)}")
            if alpha is None or not 1 <= alpha <= len(agents):
                raise BadAlphaError(f"alpha must be in 1..{len(agents)}, got {alpha}")
        seen = set()
        for a in agents:
            if a.id in seen:
                raise BadArityError(f"duplicate agent id {a.id!r}")
            seen.add(a.id)
            a.validate(ws)
        self.agents = agents
        self.mode = mode
        self.ws = ws
        self.alpha = alpha if mode is Mode.AUCTION else 2
        self.max_beats = max_beats if max_beats is not None else derived_beat_bound(agents)
        self.provider = provider or DecisionProvider()
        self.runtimes = {a.id: _Runtime(a, CafState.initial(a)) for a in agents}
        self.trace: list[TraceEvent] = []
        self.phase = Phase.INIT
        self.beat = 0
        self._final_outcome: Optional[Formula] = None
        self._agreeing: set[str] = set()

    # -- helpers ----------------------------------------------------------

    def _emit(self, **kw) -> TraceEvent:
        ev = TraceEvent(beat=self.beat, **kw)
        self.trace.append(ev)
        return ev

    def _acceptable(self, rt: _Runtime, proposal: Formula) -> bool:
        if not entails(proposal, stub_formula(rt.spec), self.ws):
            return False
        return any(entails(g, proposal, self.ws) for g in rt.spec.all_angles())

    def _classify_for(self, rt: _Runtime, caf: Formula, proposal: Formula,
                      role: Role) -> RelationLabel:
        return classify_models(
            models(stub_formula(rt.spec), self.ws),
            models(caf, self.ws),
            models(proposal, self.ws),
            role,
        )

    def _adopt(self, rt: _Runtime, translated: Formula) -> None:
        rt.caf.advance("Ag", translated)

    def _apply_move(self, rt: _Runtime, move: Move, g: Formula) -> None:
        # Re-validate guards so scripted and replayed moves cannot cheat.
        inferred = infer_move(rt.caf.current, g, self.ws)
        if inferred is not move:
            raise IllegalMoveError(
                f"{rt.spec.id}: move {move.value} does not match guard {inferred.value}"
            )
        if move is not Move.S and not any(
            equivalent(g, angle, self.ws) for angle in rt.spec.all_angles()
        ):
            raise IllegalMoveError(f"{rt.spec.id}: proposal is not a declared angle")
        if move is not Move.S:
            rt.caf.advance(move.value, g)

    def _terminate(self, phase: Phase, rule: str, speaker: str = "system",
                   outcome: Optional[Formula] = None,
                   agreeing: Iterable[str] = ()) -> None:
        self.phase = phase
        self._final_outcome = outcome
        self._agreeing = set(agreeing)
        self._emit(speaker=speaker, kind="system", rule=rule,
                   formula=outcome, label=None, target=None)

    def _result(self) -> Outcome:
        return Outcome(
            phase=self.phase,
            outcome=self._final_outcome,
            agreeing=tuple(sorted(self._agreeing)),
            beats=self.beat,
            trace=self.trace,
        )

    # -- bilateral --------------------------------------------------------

    def run(self) -> Outcome:
        if self.mode is Mode.BILATERAL:
            return self._run_bilateral()
        return self._run_auction()

    def _run_bilateral(self) -> Outcome:
        first, second = self.agents
        proposer, responder = self.runtimes[first.id], self.runtimes[second.id]
        self.beat = 0
        self._emit(speaker=proposer.spec.id, kind="proposal", rule="init",
                   formula=proposer.caf.current)
        pending = proposer.caf.current
        pending_label: Optional[RelationLabel] = None
        second_turn = True
        reinitiated = False

        while True:
            self.beat += 1
            if self.beat > self.max_beats:
                raise BeatLimitError(f"exceeded {self.max_beats} beats")
            if second_turn:
                action = self._second_proposer_step(responder, proposer, pending)
                second_turn = False
            else:
                action = self._following_step(responder, proposer, pending, pending_label)
            if action[0] == "end":
                return self._result()
            if action[0] == "reinitiate":
                if reinitiated:
                    raise NoLegalRuleError("repeated re-initiation; protocol bug")
                reinitiated = True
                second_turn = True
                pending, pending_label = action[1], None
            else:
                asserted_label, counter = action[1], action[2]
                if asserted_label is RelationLabel.AGREE:
                    self._terminate(
                        Phase.AGREEMENT, "A",
                        outcome=pending,
                        agreeing=(proposer.spec.id, responder.spec.id),
                    )
                    return self._result()
                both_stub = all(
                    equivalent(rt.caf.current, stub_formula(rt.spec), self.ws)
                    for rt in (proposer, responder)
                )
                if both_stub:
                    self._terminate(Phase.DISAGREEMENT, "D")
                    return self._result()
                self.phase = Phase.NEGOTIATE
                self._emit(speaker="system", kind="system", rule="N")
                pending, pending_label = counter, asserted_label
            proposer, responder = responder, proposer

    def _second_proposer_step(self, rt: _Runtime, sender: _Runtime, proposal: Formula):
        """First response of a negotiation: single-label rules, plus the
        call-away and too-restrictive screens."""
        translated = translate(rt.spec, sender.spec.id, proposal)
        label = self._classify_for(rt, rt.caf.current, translated, Role.SECOND)

        if label is RelationLabel.CALL_AWAY:
            self._terminate(Phase.DISAGREEMENT, "CallAway", speaker=rt.spec.id)
            return ("end",)
        if label is RelationLabel.RESTRICTIVE:
            if self.mode is Mode.AUCTION:
                label = RelationLabel.COMP  # no re-initiation inside an auction
            else:
                self._emit(speaker=rt.spec.id, kind="proposal", rule="I",
                           formula=rt.caf.current, target=sender.spec.id)
                return ("reinitiate", rt.caf.current)

        acceptable = self._acceptable(rt, translated)
        if label in (RelationLabel.AGREE, RelationLabel.REL_DIS) and acceptable:
            # Covers straight equivalence and the reason there is no RD rule
            # for the second proposer: a strictly more general, acceptable
            # first proposal is simply accepted.
            self._adopt(rt, translated)
            self._emit(speaker=rt.spec.id, kind="evaluation", rule="Ag",
                       label=RelationLabel.AGREE, formula=translated,
                       target=sender.spec.id)
            return ("assert", RelationLabel.AGREE, translated)
        if label is RelationLabel.REL_DIS:
            # More general than the initial angle but overshooting the stub:
            # not acceptable, not assertable (no RD rule here); counter under
            # the compatibility rule and keep negotiating.
            label = RelationLabel.COMP

        decision = self.provider.decide(rt, translated, label, acceptable=False, ws=self.ws)
        if decision == "agree":
            self._adopt(rt, translated)
            self._emit(speaker=rt.spec.id, kind="evaluation", rule="Ag",
                       label=RelationLabel.AGREE, formula=translated,
                       target=sender.spec.id)
            return ("assert", RelationLabel.AGREE, translated)
        move, g = decision
        self._apply_move(rt, move, g)
        rule = LABEL_SYM[label]
        self._emit(speaker=rt.spec.id, kind="evaluation", rule=rule,
                   move=move.value, label=label, formula=rt.caf.current,
                   target=sender.spec.id)
        return ("assert", label, rt.caf.current)

    def _following_step(self, rt: _Runtime, sender: _Runtime, proposal: Formula,
                        received_label: Optional[RelationLabel],
                        auctioneer: bool = False):
        translated = translate(rt.spec, sender.spec.id, proposal)
        stub = stub_formula(rt.spec)
        if entails(stub, translated, self.ws) and not entails(translated, stub, self.ws):
            self._terminate(Phase.DISAGREEMENT, "CallAway", speaker=rt.spec.id)
            return ("end",)

        x_sym = LABEL_SYM[received_label]
        if received_label is RelationLabel.REL_DIS and not auctioneer:
            # Forced acceptance: the opponent's counterproposal is strictly
            # below my own previous proposal, hence inside my stub.
            self._adopt(rt, translated)
            self._emit(speaker=rt.spec.id, kind="evaluation", rule="RD-Ag",
                       label=RelationLabel.AGREE, formula=translated,
                       target=sender.spec.id)
            return ("assert", RelationLabel.AGREE, translated)

        if equivalent(translated, rt.caf.current, self.ws):
            # Already standing on the proposal (typical after an earlier
            # adoption that the opponent replicated back): the only honest
            # reply is agree, no move needed.
            rule = pair_rule(x_sym, "Ag")
            if not legal_pair(x_sym, "Ag", auctioneer):
                raise NoLegalRuleError(f"rule {rule} not permitted for this role")
            self._emit(speaker=rt.spec.id, kind="evaluation", rule=rule,
                       label=RelationLabel.AGREE, formula=translated,
                       target=sender.spec.id,
                       violation=violation_flag(x_sym, "Ag", auctioneer))
            return ("assert", RelationLabel.AGREE, translated)

        acceptable = self._acceptable(rt, translated)
        decision = self.provider.decide(rt, translated, received_label,
                                        acceptable, self.ws)
        if decision == "agree":
            rule = pair_rule(x_sym, "Ag")
            if not legal_pair(x_sym, "Ag", auctioneer):
                raise NoLegalRuleError(f"rule {rule} not permitted for this role")
            self._adopt(rt, translated)
            self._emit(speaker=rt.spec.id, kind="evaluation", rule=rule,
                       label=RelationLabel.AGREE, formula=translated,
                       target=sender.spec.id,
                       violation=violation_flag(x_sym, "Ag", auctioneer))
            return ("assert", RelationLabel.AGREE, translated)

        move, g = decision
        self._apply_move(rt, move, g)
        label = self._classify_for(rt, rt.caf.current, translated, Role.FOLLOWING)
        if label is RelationLabel.AGREE:
            # Landed exactly on the proposal; asserting agree is the only
            # honest option and equivalence makes it acceptable.
            self._adopt(rt, translated)
            rule = pair_rule(x_sym, "Ag")
            self._emit(speaker=rt.spec.id, kind="evaluation", rule=rule,
                       label=RelationLabel.AGREE, formula=translated,
                       target=sender.spec.id,
                       violation=violation_flag(x_sym, "Ag", auctioneer))
            return ("assert", RelationLabel.AGREE, translated)
        y_sym = LABEL_SYM[label]
        rule = pair_rule(x_sym, y_sym)
        if not legal_pair(x_sym, y_sym, auctioneer):
            raise NoLegalRuleError(f"rule {rule} not permitted for this role")
        self._emit(speaker=rt.spec.id, kind="evaluation", rule=rule,
                   move=move.value, label=label, formula=rt.caf.current,
                   target=sender.spec.id,
                   violation=violation_flag(x_sym, y_sym, auctioneer))
        return ("assert", label, rt.caf.current)

    # -- auction ----------------------------------------------------------

    def _run_auction(self) -> Outcome:
        auctioneer = self.runtimes[self.agents[0].id]
        participants = [self.runtimes[a.id] for a in self.agents[1:]]

        self.beat = 1
        self._emit(speaker=auctioneer.spec.id, kind="proposal", rule="init",
                   formula=auctioneer.caf.current)
        current_proposal = auctioneer.caf.current
        # label each participant last asserted toward the auctioneer, plus
        # her latest counterproposal
        responses: list[tuple[str, RelationLabel, Formula]] = []
        first_beat = True
        # what the auctioneer asserted to each participant this beat
        out_labels: dict[str, RelationLabel] = {}
        seen_states: set = set()

        while True:
            if self.beat > self.max_beats:
                raise BeatLimitError(f"exceeded {self.max_beats} beats")
            if not first_beat:
                step = self._auctioneer_step(auctioneer, participants, responses)
                if step[0] == "end":
                    return self._result()
                current_proposal, out_labels = step[1], step[2]

            new_responses = []
            agreed = {auctioneer.spec.id}
            for rt in participants:
                if first_beat:
                    action = self._second_proposer_step(rt, auctioneer, current_proposal)
                else:
                    action = self._following_step(
                        rt, auctioneer, current_proposal, out_labels[rt.spec.id]
                    )
                if action[0] == "end":
                    return self._result()
                label, counter = action[1], action[2]
                if label is RelationLabel.AGREE:
                    agreed.add(rt.spec.id)
                new_responses.append((rt.spec.id, label, counter))
            responses = new_responses
            first_beat = False

            if len(agreed) >= self.alpha:
                self._terminate(Phase.AGREEMENT, "AA", outcome=current_proposal,
                                agreeing=agreed)
                return self._result()
            all_stub = all(
                equivalent(rt.caf.current, stub_formula(rt.spec), self.ws)
                for rt in self.runtimes.values()
            )
            if all_stub:
                self._terminate(Phase.DISAGREEMENT, "DD")
                return self._result()
            # Fixed-point exit: the run is deterministic, so once the full
            # state recurs without scripted choices left, no later beat can
            # differ and the sharing degree is unreachable.  The all-stubborn
            # case above is the special case where everyone stalls at her
            # stub; mixed stalls (some agents settled on an adopted angle)
            # end the same way.
            signature = (
                tuple(
                    (
                        aid,
                        frozenset(models(rt.caf.current, self.ws)),
                        frozenset(
                            frozenset(models(f, self.ws))
                            for f in rt.caf.held_formulas()
                        ),
                    )
                    for aid, rt in sorted(self.runtimes.items())
                ),
                tuple(
                    (pid, label, frozenset(models(f, self.ws)))
                    for pid, label, f in responses
                ),
                frozenset(agreed),
            )
            if signature in seen_states and not self.provider.has_pending():
                self._terminate(Phase.DISAGREEMENT, "DD")
                return self._result()
            seen_states.add(signature)
            self.phase = Phase.NEGOTIATE
            self._emit(speaker="system", kind="system", rule="NN")
            self.beat += 1

    def _auctioneer_step(self, rt: _Runtime, participants: list[_Runtime],
                         responses: list[tuple[str, RelationLabel, Formula]]):
        translated = {}
        for pid, _, counter in responses:
            t = translate(rt.spec, pid, counter)
            stub = stub_formula(rt.spec)
            if entails(stub, t, self.ws) and not entails(t, stub, self.ws):
                self._terminate(Phase.DISAGREEMENT, "CallAway", speaker=rt.spec.id)
                return ("end",)
            translated[pid] = t

        translated_list = [translated[pid] for pid, _, _ in responses]
        acceptable = [
            (i, translated[pid]) for i, (pid, _, _) in enumerate(responses)
            if self._acceptable(rt, translated[pid])
        ]
        decision = self.provider.decide_auctioneer(
            rt, responses, translated_list, acceptable, self.ws
        )
        if decision[0] == "adopt":
            src_pid = responses[decision[1]][0]
            new_caf = translated[src_pid]
            self._adopt(rt, new_caf)
            move = None
        else:
            move, g = decision
            self._apply_move(rt, move, g)
            new_caf = rt.caf.current

        out_labels: dict[str, RelationLabel] = {}
        for pid, their_label, _ in responses:
            x_sym = LABEL_SYM[their_label]
            label = self._classify_for(rt, new_caf, translated[pid], Role.FOLLOWING)
            y_sym = LABEL_SYM[label]
            rule = pair_rule(x_sym, y_sym)
            if not legal_pair(x_sym, y_sym, auctioneer=True):
                raise NoLegalRuleError(f"rule {rule} not permitted for this role")
            self._emit(speaker=rt.spec.id, kind="evaluation", rule=rule,
                       move=move.value if move else None, label=label,
                       formula=new_caf, target=pid,
                       violation=violation_flag(x_sym, y_sym, auctioneer=True))
            out_labels[pid] = label
        return ("proposed", new_caf, out_labels)


def run(
    agents: Sequence[AgentSpec],
    mode: Mode,
    ws: WorldSet,
    alpha: Optional[int] = None,
    max_beats: Optional[int] = None,
    scripts: Optional[dict[str, list]] = None,
) -> Outcome:
    provider = DecisionProvider(scripts)
    return Negotiation(agents, mode, ws, alpha=alpha, max_beats=max_beats,
                       provider=provider).run()
