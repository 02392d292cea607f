"""Acceptance suite: one test per acceptance criterion, each printing a
pass line (run with `pytest tests/test_acceptance.py -v -s`)."""

import json
import random
import time

import pytest

from mnd.agents import Attitude, stub_formula
from mnd.cli import trace_jsonl
from mnd.corpus import (
    gen_disjoint_stub_scenario,
    gen_scenario,
    search_common_angle,
)
from mnd.dot import config_paths, to_dot
from mnd.engine import (
    DecisionProvider,
    Mode,
    Negotiation,
    Phase,
    derived_beat_bound,
    run,
)
from mnd.logic import Signature, WorldSet, entails, equivalent, models, parse_formula
from mnd.relations import (
    CONFIG_GROUPS,
    CONFIG_QUADRUPLES,
    EggYolkConfig,
    RelationLabel,
    Role,
    classify_models,
    relation_of_config,
)
from mnd.scenario import load
from mnd.verify import TraceVerificationError, verify_trace


def _report(n, text):
    print(f"ACCEPTANCE {n} {text}: PASS")


def _run_scenario_file(scenarios_dir, name, alpha=None):
    sc = load(scenarios_dir / name)
    negotiation = Negotiation(
        sc.agents, sc.mode, sc.ws,
        alpha=alpha if alpha is not None else sc.alpha,
        max_beats=sc.max_beats,
        provider=DecisionProvider(sc.scripts),
    )
    return sc, negotiation.run()


def test_criterion_1_example4_golden_trace(scenarios_dir):
    start = time.monotonic()
    sc, out = _run_scenario_file(scenarios_dir, "vehicle-bilateral.json")
    elapsed = time.monotonic() - start

    rules = [ev.rule for ev in out.trace]
    assert rules[0] == "init"
    assert rules[1:] == ["Co", "N", "Co-RD", "N", "RD-Ag", "A"]
    messages = [ev for ev in out.trace if ev.kind in ("proposal", "evaluation")]
    assert len(messages) == 4
    assert out.phase is Phase.AGREEMENT
    alice = next(a for a in sc.agents if a.id == "alice")
    assert equivalent(out.outcome, alice.angles[1], sc.ws)
    assert elapsed < 1.0
    _report(1, "example-4 golden trace")


def test_criterion_2_example5_golden_traces(scenarios_dir):
    start = time.monotonic()
    sc, out3 = _run_scenario_file(scenarios_dir, "vehicle-auction.json", alpha=3)
    assert out3.phase is Phase.DISAGREEMENT
    assert out3.trace[-1].rule == "DD"
    # at the end every agent's angle is equivalent to her stubborn theory
    last_held = {a.id: a.angles[0] for a in sc.agents}
    for ev in out3.trace:
        if ev.formula is not None and ev.speaker in last_held:
            last_held[ev.speaker] = ev.formula
    for a in sc.agents:
        assert equivalent(last_held[a.id], stub_formula(a), sc.ws)
    assert time.monotonic() - start < 1.0

    start = time.monotonic()
    sc, out2 = _run_scenario_file(scenarios_dir, "vehicle-auction.json", alpha=2)
    assert out2.phase is Phase.AGREEMENT
    assert out2.trace[-1].rule == "AA"
    alice = next(a for a in sc.agents if a.id == "alice")
    flex1_a = alice.angles[1]
    assert equivalent(out2.outcome, flex1_a, sc.ws)
    # the closing beat is the beat in which alice put that angle on the table
    proposal_beats = {
        ev.beat for ev in out2.trace
        if ev.speaker == "alice" and ev.formula is not None
        and equivalent(ev.formula, flex1_a, sc.ws)
    }
    assert out2.trace[-1].beat in proposal_beats
    assert time.monotonic() - start < 1.0
    _report(2, "example-5 golden traces (alpha 3 and 2)")


def test_criterion_3_example3_semantics():
    from tests.test_agents import (
        CAF,
        CHANGED,
        STUB_ALICE,
        VEHICLE_ATOMS,
        VEHICLE_WORLDS,
        WEAKENED,
    )

    sig = Signature.of(VEHICLE_ATOMS)
    ws = WorldSet.named(sig, VEHICLE_WORLDS)
    stub = parse_formula(" & ".join(f"({t})" for t in STUB_ALICE), sig)
    assert models(stub, ws) == {
        "bicycle", "tandem", "motorbike", "scooter",
        "truck", "car", "trailer", "chariot",
    }
    caf = parse_formula(CAF, sig)
    weakened = parse_formula(WEAKENED, sig)
    changed = parse_formula(CHANGED, sig)
    assert models(caf, ws) == {"car", "truck"}
    assert models(weakened, ws) == {"motorbike", "scooter", "car", "truck"}
    assert models(weakened, ws) >= models(caf, ws)
    assert models(changed, ws) == {"truck", "trailer"}
    assert not models(changed, ws) <= models(caf, ws)
    assert not models(caf, ws) <= models(changed, ws)
    _report(3, "example-3 interpretation sets")


# Configurations whose figure group is agreement although the offer is
# strictly stricter than the receiver's current angle: the cascade leaves
# adopting such an offer to the engine's agreement rules and reports
# compatibility (or, for a second proposer, the too-restrictive screen).
STRICTER_OFFER_AGREEMENT = {"17", "21", "23", "29", "33", "36", "38", "42d"}


def test_criterion_4_figure_taxonomy_cross_check():
    from tests.eggyolk_search import realizable_quadruples

    witnesses = realizable_quadruples()
    assert len(witnesses) == 46
    checked = 0
    for number, quad in CONFIG_QUADRUPLES.items():
        egg_i, yolk_i, egg_j, yolk_j = witnesses[quad]
        cfg = EggYolkConfig(*quad, paper_number=number)
        group = CONFIG_GROUPS[number]
        assert relation_of_config(cfg) is group

        label = classify_models(egg_i, yolk_i, yolk_j, Role.FOLLOWING)
        if number in STRICTER_OFFER_AGREEMENT:
            assert group is RelationLabel.AGREE
            assert label is RelationLabel.COMP
            assert classify_models(egg_i, yolk_i, yolk_j, Role.SECOND) is \
                RelationLabel.RESTRICTIVE
        else:
            assert label is group, (number, label, group)
        checked += 1
    assert checked == 46
    _report(4, "figure taxonomy vs classifier on all 46 configurations")


def test_criterion_5_consistency_theorem(corpus500):
    start = time.monotonic()
    violations = 0
    for sc in corpus500:
        out = run(sc.agents, sc.mode, sc.ws, alpha=sc.alpha)
        if out.phase is not Phase.AGREEMENT:
            continue
        held = {a.id: [a.angles[0]] for a in sc.agents}
        for ev in out.trace:
            if ev.formula is not None and ev.speaker in held:
                held[ev.speaker].append(ev.formula)
        for a in sc.agents:
            if a.id not in out.agreeing:
                continue
            if not entails(out.outcome, stub_formula(a), sc.ws):
                violations += 1
            if not any(entails(g, out.outcome, sc.ws) for g in held[a.id]):
                violations += 1
    elapsed = time.monotonic() - start
    assert violations == 0
    assert elapsed < 30.0
    _report(5, f"consistency over {len(corpus500)} runs in {elapsed:.1f}s")


def test_criterion_6_adequacy_against_search(corpus500):
    mismatches = 0
    for sc in corpus500:
        collaborative = sc.with_attitude(Attitude.COLLABORATIVE)
        out = run(collaborative.agents, collaborative.mode, collaborative.ws,
                  alpha=collaborative.alpha)
        found = search_common_angle(collaborative)
        if (out.phase is Phase.AGREEMENT) != (found is not None):
            mismatches += 1
    assert mismatches == 0
    _report(6, f"adequacy vs exhaustive search over {len(corpus500)} runs")


def test_criterion_7_termination_and_config1(corpus500):
    for sc in corpus500:
        out = run(sc.agents, sc.mode, sc.ws, alpha=sc.alpha)
        assert out.beats <= derived_beat_bound(sc.agents)
    rng = random.Random(424242)
    for _ in range(60):
        sc = gen_disjoint_stub_scenario(rng)
        out = run(sc.agents, sc.mode, sc.ws, alpha=sc.alpha)
        assert out.beats <= derived_beat_bound(sc.agents)
        assert out.phase is Phase.DISAGREEMENT
        labels = {ev.label for ev in out.trace if ev.label is not None}
        assert labels <= {RelationLabel.ABS_DIS}
    _report(7, "termination bound and disjoint-stub runs")


EXPECTED_PATHS = {
    "eggyolk-pp.json": ["8", "13", "20", "27", "32", "41"],
    "eggyolk-eq.json": ["42a", "42a", "42b", "42e"],
    "eggyolk-po.json": ["2", "4", "9", "10", "16", "17", "39"],
}


def test_criterion_8_configuration_paths(scenarios_dir):
    for name, expected in EXPECTED_PATHS.items():
        sc, out = _run_scenario_file(scenarios_dir, name)
        paths = config_paths(sc, out)
        (pair, path), = paths.items()
        labels = [label for _, label in path]
        assert labels == expected, (name, labels)
        dot = to_dot(sc, out)
        for label in expected:
            assert f'[label="{label}"]' in dot
    _report(8, "walkthrough configuration paths match node for node")


def _mutations(events, terminal):
    """Ten corrupted variants of a (bilateral, auction) trace pair; each is
    (description, scenario-name, events, terminal)."""
    out = []

    def clone(evs, term):
        return json.loads(json.dumps(evs)), json.loads(json.dumps(term))

    bilateral, auction = events
    b_term, a_term = terminal

    evs, term = clone(bilateral, b_term)
    evs[1]["rule"] = "ED"
    out.append(("wrong rule tag on first response", "bilateral", evs, term))

    evs, term = clone(bilateral, b_term)
    evs[1]["label"] = "essDis"
    out.append(("false label", "bilateral", evs, term))

    evs, term = clone(bilateral, b_term)
    evs[3]["rule"] = "RD-ED"
    evs[3]["label"] = "essDis"
    out.append(("role-illegal rule for a participant", "bilateral", evs, term))

    evs, term = clone(bilateral, b_term)
    evs[3]["violation"] = True
    out.append(("violation flag flipped on", "bilateral", evs, term))

    evs, term = clone(bilateral, b_term)
    evs[1]["formula"] = "has3wheels"
    out.append(("counterproposal outside the declared angles", "bilateral", evs, term))

    evs, term = clone(bilateral, b_term)
    evs[1]["speaker"] = "alice"
    out.append(("wrong speaker", "bilateral", evs, term))

    evs, term = clone(bilateral, b_term)
    evs[-1]["rule"] = "D"
    out.append(("agreement flipped to disagreement", "bilateral", evs, term))

    evs, term = clone(bilateral, b_term)
    evs[5]["formula"] = "has2wheels & hasHandlebar & has2bicyclePedals"
    out.append(("adopted formula corrupted", "bilateral", evs, term))

    evs, term = clone(bilateral, b_term)
    term["phase"] = "disagreement"
    del term["outcome"]
    out.append(("terminal phase flipped", "bilateral", evs, term))

    evs, term = clone(auction, a_term)
    evs[5]["violation"] = False
    out.append(("auction violation flag cleared", "auction", evs, term))

    return out


def test_criterion_9_verify_round_trip(scenarios_dir, corpus500):
    # every engine-produced trace verifies
    for sc in corpus500[:150]:
        out = run(sc.agents, sc.mode, sc.ws, alpha=sc.alpha)
        lines = trace_jsonl(out).splitlines()
        records = [json.loads(line) for line in lines]
        events, terminal = records[:-1], records[-1]

        class _Wrapper:
            pass

        wrapper = _Wrapper()
        wrapper.sig = sc.sig
        wrapper.ws = sc.ws
        wrapper.agents = sc.agents
        wrapper.mode = sc.mode
        wrapper.alpha = sc.alpha
        wrapper.max_beats = None
        verify_trace(wrapper, events, terminal)

    goldens = {}
    for name in ("vehicle-bilateral.json", "vehicle-auction.json"):
        sc = load(scenarios_dir / name)
        negotiation = Negotiation(sc.agents, sc.mode, sc.ws, alpha=sc.alpha,
                                  provider=DecisionProvider(sc.scripts))
        out = negotiation.run()
        records = [json.loads(line) for line in trace_jsonl(out).splitlines()]
        goldens[name] = (sc, records[:-1], records[-1])
        verify_trace(sc, records[:-1], records[-1])

    b_sc, b_events, b_term = goldens["vehicle-bilateral.json"]
    a_sc, a_events, a_term = goldens["vehicle-auction.json"]
    # sanity: the auction mutation target is the (ED-Co) violation event
    assert a_events[5]["rule"] == "ED-Co" and a_events[5]["violation"]

    rejected = 0
    for desc, which, events, terminal in _mutations(
        (b_events, a_events), (b_term, a_term)
    ):
        sc = b_sc if which == "bilateral" else a_sc
        with pytest.raises(TraceVerificationError) as err:
            verify_trace(sc, events, terminal)
        assert err.value.index >= 0, desc
        rejected += 1
    assert rejected == 10
    _report(9, "verification accepts the corpus and rejects 10 mutations")
