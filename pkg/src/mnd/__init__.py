"""Meaning negotiation as deduction: agents with stubborn and flexible
propositional theories exchange proposals under bilateral-bargaining or
English-auction protocols until a shared angle is inferred or disagreement
is certified."""

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
from .engine import Mode, Negotiation, Outcome, Phase, TraceEvent, run
from .logic import (
    And,
    Atom,
    AtomRef,
    Formula,
    Implies,
    Not,
    Or,
    Signature,
    World,
    WorldSet,
    conjoin,
    consistent,
    entails,
    equivalent,
    models,
    parse_formula,
    pretty,
    satisfiable,
)
from .relations import (
    RCC5,
    EggYolkConfig,
    RelationLabel,
    Role,
    classify,
    classify_models,
    egg_yolk_config,
    rcc5,
    relation_of_config,
)

__all__ = [
    "AgentSpec", "Attitude", "CafState", "Move", "choose_next",
    "legal_successors", "stub_formula", "translate",
    "Mode", "Negotiation", "Outcome", "Phase", "TraceEvent", "run",
    "And", "Atom", "AtomRef", "Formula", "Implies", "Not", "Or", "Signature",
    "World", "WorldSet", "conjoin", "consistent", "entails", "equivalent",
    "models", "parse_formula", "pretty", "satisfiable",
    "RCC5", "EggYolkConfig", "RelationLabel", "Role", "classify",
    "classify_models", "egg_yolk_config", "rcc5", "relation_of_config",
]
