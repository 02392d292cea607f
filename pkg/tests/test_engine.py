import json
import random

import pytest

from mnd.agents import AgentSpec, Attitude, stub_formula
from mnd.corpus import gen_scenario
from mnd.engine import (
    AUCTIONEER_PAIRS,
    PARTICIPANT_PAIRS,
    BadAlphaError,
    BadArityError,
    BeatLimitError,
    DecisionProvider,
    IllegalMoveError,
    Mode,
    Negotiation,
    Phase,
    derived_beat_bound,
    run,
    violation_flag,
)
from mnd.cli import trace_jsonl
from mnd.logic import Signature, WorldSet, equivalent, parse_formula
from mnd.relations import RelationLabel
from mnd.scenario import load


def _agents(sig, ws, *rows):
    out = []
    for agent_id, stub_texts, angle_texts in rows:
        spec = AgentSpec(
            id=agent_id,
            sig=sig,
            stubborn=tuple(parse_formula(t, sig) for t in stub_texts),
            angles=tuple(parse_formula(t, sig) for t in angle_texts),
        )
        spec.validate(ws)
        out.append(spec)
    return out


def test_init_arity_and_alpha_checks():
    sig = Signature.of(["a"])
    ws = WorldSet.full(sig)
    agents = _agents(sig, ws, ("x", ["a"], ["a"]), ("y", ["a"], ["a"]),
                     ("z", ["a"], ["a"]))
    with pytest.raises(BadArityError):
        Negotiation(agents[:1], Mode.BILATERAL, ws)
    with pytest.raises(BadArityError):
        Negotiation(agents[:2], Mode.AUCTION, ws, alpha=2)
    with pytest.raises(BadAlphaError):
        Negotiation(agents, Mode.AUCTION, ws, alpha=4)
    with pytest.raises(BadAlphaError):
        Negotiation(agents, Mode.AUCTION, ws, alpha=0)


def test_call_away_ends_in_disagreement():
    sig = Signature.of(["a", "b"])
    ws = WorldSet.full(sig)
    # the first proposal strictly generalizes the receiver's stub
    agents = _agents(sig, ws, ("x", ["a"], ["a"]), ("y", ["a & b"], ["a & b"]))
    out = run(agents, Mode.BILATERAL, ws)
    assert out.phase is Phase.DISAGREEMENT
    assert out.trace[-1].rule == "CallAway"


def test_restrictive_reinitiation():
    sig = Signature.of(["a", "b"])
    ws = WorldSet.full(sig)
    # first proposal strictly stricter than the receiver's initial angle:
    # the receiver re-initiates, after which the original bidder may accept
    agents = _agents(sig, ws, ("x", ["a"], ["a & b"]), ("y", ["a"], ["a"]))
    out = run(agents, Mode.BILATERAL, ws)
    rules = [ev.rule for ev in out.trace]
    assert "I" in rules
    assert out.phase is Phase.AGREEMENT
    assert equivalent(out.outcome, parse_formula("a", sig), ws)


def test_second_proposer_accepts_more_general_acceptable_proposal():
    sig = Signature.of(["a", "b"])
    ws = WorldSet.full(sig)
    # receiver's initial angle strictly entails the proposal and the proposal
    # stays within her stub: accepted outright, no relDis rule needed
    agents = _agents(sig, ws, ("x", ["a"], ["a"]), ("y", ["a | b"], ["a & b"]))
    out = run(agents, Mode.BILATERAL, ws)
    assert [ev.rule for ev in out.trace][1] == "Ag"
    assert out.phase is Phase.AGREEMENT
    assert equivalent(out.outcome, parse_formula("a", sig), ws)


def test_second_proposer_overshoot_counters_under_comp():
    sig = Signature.of(["a", "b", "c"])
    ws = WorldSet.full(sig)
    # proposal strictly generalizes the receiver's angle but overshoots her
    # stub: not acceptable, no relDis rule in the first-response table, so
    # the receiver counters under the compatibility rule
    agents = _agents(
        sig, ws,
        ("x", ["(a & b) | (!a & c)"], ["(a & b) | (!a & c)"]),
        ("y", ["a"], ["a & b"]),
    )
    out = run(agents, Mode.BILATERAL, ws)
    second = out.trace[1]
    assert second.speaker == "y"
    assert second.rule == "Co"
    assert second.label is RelationLabel.COMP


def test_beat_limit():
    sig = Signature.of(["a", "b"])
    ws = WorldSet.full(sig)
    agents = _agents(sig, ws, ("x", ["a"], ["a & b", "a & !b"]),
                     ("y", ["b"], ["b & !a", "a & b"]))
    with pytest.raises(BeatLimitError):
        run(agents, Mode.BILATERAL, ws, max_beats=1)


def test_scripted_illegal_move_rejected(scenarios_dir):
    sc = load(scenarios_dir / "eggyolk-pp.json")
    # bob weakens from b0 to b1, then the script demands b0 again: strictly
    # stricter than the current angle, which no proposal rule allows
    scripts = dict(sc.scripts)
    scripts["bob"] = [1, 0]
    with pytest.raises(IllegalMoveError):
        run(sc.agents, sc.mode, sc.ws, scripts=scripts)


def test_rule_tables():
    assert ("RD", "Ag") in PARTICIPANT_PAIRS
    assert ("RD", "ED") not in PARTICIPANT_PAIRS
    assert ("RD", "ED") in AUCTIONEER_PAIRS
    assert ("Ag", "Co") in AUCTIONEER_PAIRS and ("Ag", "Co") not in PARTICIPANT_PAIRS
    # violation flags
    assert violation_flag("ED", "AD", auctioneer=False)
    assert violation_flag("ED", "Co", auctioneer=True)
    assert violation_flag("Co", "AD", auctioneer=False)
    assert violation_flag("Ag", "Co", auctioneer=True)
    assert violation_flag("Ag", "Ag", auctioneer=True)
    assert not violation_flag("Ag", "Ag", auctioneer=False)
    assert not violation_flag("Co", "RD", auctioneer=False)
    assert not violation_flag("RD", "Ag", auctioneer=True)


def test_violation_flags_on_traces(corpus500):
    always = {("ED", "AD"), ("ED", "Co"), ("Co", "AD")}
    for sc in corpus500[:120]:
        auctioneer_id = sc.agents[0].id if sc.mode is Mode.AUCTION else None
        out = run(sc.agents, sc.mode, sc.ws, alpha=sc.alpha)
        for ev in out.trace:
            if ev.kind != "evaluation" or "-" not in ev.rule:
                assert not ev.violation or ev.rule in ("",)
                continue
            x, y = ev.rule.split("-")
            expected = violation_flag(x, y, ev.speaker == auctioneer_id)
            assert ev.violation == expected, (ev.rule, ev.speaker)
            if (x, y) in always:
                assert ev.violation


def test_run_is_deterministic(scenarios_dir):
    sc1 = load(scenarios_dir / "vehicle-auction.json")
    sc2 = load(scenarios_dir / "vehicle-auction.json")
    out1 = run(sc1.agents, sc1.mode, sc1.ws, alpha=sc1.alpha, scripts=sc1.scripts)
    out2 = run(sc2.agents, sc2.mode, sc2.ws, alpha=sc2.alpha, scripts=sc2.scripts)
    assert trace_jsonl(out1) == trace_jsonl(out2)


def test_monotone_alpha(corpus500):
    auctions = [sc for sc in corpus500 if sc.mode is Mode.AUCTION][:60]
    for sc in auctions:
        outcomes = {}
        for alpha in range(1, len(sc.agents) + 1):
            outcomes[alpha] = run(sc.agents, sc.mode, sc.ws, alpha=alpha)
        for alpha in range(2, len(sc.agents) + 1):
            if outcomes[alpha].phase is Phase.AGREEMENT:
                for lower in range(1, alpha):
                    assert outcomes[lower].phase is Phase.AGREEMENT
                    assert outcomes[lower].beats <= outcomes[alpha].beats


def test_every_caf_entails_stub(corpus500):
    for sc in corpus500[:80]:
        negotiation = Negotiation(sc.agents, sc.mode, sc.ws, alpha=sc.alpha,
                                  provider=DecisionProvider())
        negotiation.run()
        for rt in negotiation.runtimes.values():
            for _, formula in rt.caf.history:
                assert equivalent(formula, formula, sc.ws)  # parseable guard
                from mnd.logic import entails

                assert entails(formula, stub_formula(rt.spec), sc.ws)


def test_derived_beat_bound_formula():
    sig = Signature.of(["a"])
    ws = WorldSet.full(sig)
    agents = _agents(sig, ws, ("x", ["a"], ["a"]), ("y", ["a"], ["a"]))
    assert derived_beat_bound(agents) == 2 + (2 + 2) * 2
